"""Exact and log-domain probabilities for burst decoding experiments,
and the seeded Monte Carlo harness that checks them empirically.

All probabilities are carried as exact big-integer rationals; floating
point appears only at the reporting boundary.  Tail magnitudes like
10^-1223 are far outside double range, so the log path runs on 256-bit
mpmath reals fed by exact rationals.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from statistics import NormalDist

import mpmath

from .codecore import LinearCode, ReedSolomonCode
from .galois import FiniteField, get_field, is_prime
from .interleaved import (
    STATUS_MISCORRECTION_DETECTED,
    InterleavedWord,
    mk_decode,
    sample_burst_error,
)
from .irs import decode_lrc_via_supercode, decode_rows_independently, irs_decode
from .lrc import TamoBargCode, tamo_barg_code
from .pmds import count_admissible_sets, pmds_random_search
from .seeds import derive_seed

DEFAULT_LOG_PRECISION_BITS = 256

try:
    from importlib.metadata import version as _pkg_version

    ARTIFACT_VERSION = _pkg_version("ilrc")
except Exception:  # pragma: no cover - not installed
    ARTIFACT_VERSION = "0.1.0"


# ----------------------------------------------------------------------
# closed forms
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class LogProbability:
    """A probability as sign plus high-precision log10 magnitude.

    ``exact`` carries the companion rational when one exists; the two
    representations round-trip to well over 30 significant digits.
    """

    sign: str  # "zero" | "positive"
    log10: mpmath.mpf
    exact: Fraction | None = None

    @classmethod
    def from_fraction(
        cls, value: Fraction, prec: int = DEFAULT_LOG_PRECISION_BITS
    ) -> "LogProbability":
        if value < 0:
            raise ValueError("probabilities cannot be negative")
        if value == 0:
            return cls("zero", mpmath.mpf("-inf"), Fraction(0))
        with mpmath.workprec(prec):
            lg = mpmath.log10(mpmath.mpf(value.numerator)) - mpmath.log10(
                mpmath.mpf(value.denominator)
            )
        return cls("positive", lg, value)

    def to_float(self) -> float:
        if self.sign == "zero":
            return 0.0
        with mpmath.workprec(DEFAULT_LOG_PRECISION_BITS):
            return float(mpmath.power(10, self.log10))


def full_rank_fraction(q: int, ell: int, t: int) -> Fraction:
    """Fraction of ell x t matrices over GF(q) with full column rank t.

    prod_{j<t} (q^ell - q^j) / q^(ell t); 1 at t = 0, 0 beyond t = ell.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if t == 0:
        return Fraction(1)
    if t > ell:
        return Fraction(0)
    qell = q**ell
    num = 1
    for j in range(t):
        num *= qell - q**j
    return Fraction(num, qell**t)


def full_rank_log(q: int, ell: int, t: int, prec: int = DEFAULT_LOG_PRECISION_BITS) -> LogProbability:
    return LogProbability.from_fraction(full_rank_fraction(q, ell, t), prec)


def _log10_fraction(value: Fraction) -> mpmath.mpf:
    return mpmath.log10(mpmath.mpf(value.numerator)) - mpmath.log10(
        mpmath.mpf(value.denominator)
    )


def rank_deficiency_tail_log10(
    q: int, ell: int, t: int, prec: int = DEFAULT_LOG_PRECISION_BITS
) -> float:
    """log10 of 1 - full_rank_fraction(q, ell, t), safe for extreme tails.

    The complement 1 - prod(1 - x_j) with x_j = q^(j-ell) is the union
    probability of independent events, so the Bonferroni inequalities
    bracket it between the partial sums of elementary symmetric terms:
    e1 - e2 <= tail <= e1 - e2 + e3.  All three terms are exact
    rationals, which sidesteps catastrophic cancellation entirely.  The
    second-order truncation is used when the bracket proves it accurate
    (always the case in the extreme-tail regime); otherwise the fully
    exact complement is evaluated, and wherever both paths run they are
    asserted to agree to 12 significant digits.
    """
    if not 0 <= t <= ell:
        raise ValueError(f"need 0 <= t <= ell, got t={t}, ell={ell}")
    if t == 0:
        return float("-inf")
    qell = q**ell
    e1 = Fraction(sum(q**j for j in range(t)), qell)
    e2_num = sum(q ** (i + j) for i in range(t) for j in range(i + 1, t))
    e2 = Fraction(e2_num, qell**2)
    e3_num = sum(
        q ** (i + j + l)
        for i in range(t)
        for j in range(i + 1, t)
        for l in range(j + 1, t)
    )
    e3 = Fraction(e3_num, qell**3)
    series = e1 - e2
    series_is_tight = e3 < series * Fraction(1, 10**14)
    with mpmath.workprec(prec):
        if series_is_tight:
            result = _log10_fraction(series)
            if t <= 16:
                exact_log = _log10_fraction(1 - full_rank_fraction(q, ell, t))
                if abs(result - exact_log) > mpmath.mpf("1e-12") * max(1, abs(exact_log)):
                    raise AssertionError(
                        f"series and exact tails disagree: {result} vs {exact_log}"
                    )
        else:
            result = _log10_fraction(1 - full_rank_fraction(q, ell, t))
        return float(result)


@dataclass(frozen=True)
class SuccessProbability:
    """Closed-form success probability of generalized burst decoding on a
    verified single-parity-group partial-MDS code at t = n-k-1.

    ``value`` is the product of the two independent event probabilities:
    the error values have full column rank, and the support is locatable
    (its complement is admissible).  ``difference`` reports the
    alternative rank-minus-support reading for comparison; the product
    is the quantity that matches both simulation and the worked example
    values, and is the primary output.
    """

    value: Fraction
    rank_factor: Fraction
    support_factor: Fraction
    difference: Fraction


def pmds_success_probability(
    n: int, k: int, r: int, rho: int, q: int, ell: int, t: int | None = None
) -> SuccessProbability:
    if rho != 2:
        raise ValueError("closed form requires single-parity groups (rho = 2)")
    if t is None:
        t = n - k - 1
    if t != n - k - 1:
        raise ValueError(f"closed form holds at t = n-k-1 = {n - k - 1}, got t={t}")
    support = count_admissible_sets(n, r, rho, k + 1).ratio
    rank = full_rank_fraction(q, ell, t)
    return SuccessProbability(rank * support, rank, support, rank - support)


def wilson_interval(successes: int, trials: int, confidence: float = 0.99) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0 <= successes <= trials:
        raise ValueError("successes must lie in [0, trials]")
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * ((phat * (1 - phat) / trials + z * z / (4 * trials * trials)) ** 0.5) / denom
    return (max(0.0, center - half), min(1.0, center + half))


# ----------------------------------------------------------------------
# experiment configuration and code construction
# ----------------------------------------------------------------------

def field_from_spec(spec: dict) -> FiniteField:
    """Build a field from {"q": ...} or {"p": ..., "m": ..., "poly": ...}."""
    if "p" in spec:
        return get_field(spec["p"], spec.get("m", 1), spec.get("poly"))
    q = spec["q"]
    if q >= 2 and q & (q - 1) == 0:
        return get_field(2, q.bit_length() - 1, spec.get("poly"))
    if is_prime(q):
        return get_field(q)
    raise ValueError(f"field order {q} is neither a power of two nor prime")


def default_rs_points(field: FiniteField, n: int) -> list[int]:
    """1..n when they fit among the nonzero elements, else 0..n-1."""
    if n <= field.q - 1:
        return list(range(1, n + 1))
    return list(range(n))


@dataclass
class CodeBundle:
    """A constructed code plus the views the different decoders need."""

    kind: str
    encode_code: LinearCode
    rs: ReedSolomonCode | None
    tb: TamoBargCode | None
    params: dict
    verified: bool = False

    @property
    def field(self) -> FiniteField:
        return self.encode_code.field

    @property
    def n(self) -> int:
        return self.encode_code.n


def build_code(spec: dict) -> CodeBundle:
    """Construct the code described by a plain-dict spec.

    Kinds: "rs" (points, k), "tamo-barg" (n, k, r, rho), "pmds-random"
    (n, k, r, rho, seed, max_attempts).  Construction is deterministic
    for a fixed spec, which keeps multi-process simulation reproducible.
    """
    kind = spec.get("kind")
    field = field_from_spec(spec)
    n, k = spec["n"], spec["k"]
    if kind == "rs":
        points = spec.get("points") or default_rs_points(field, n)
        rs = ReedSolomonCode(field, points, k)
        return CodeBundle("rs", rs, rs, None, dict(spec))
    if kind == "tamo-barg":
        tb = tamo_barg_code(field, n, k, spec["r"], spec["rho"])
        return CodeBundle("tamo-barg", tb, tb.supercode, tb, dict(spec))
    if kind == "pmds-random":
        inst = pmds_random_search(
            field,
            n,
            k,
            spec["r"],
            spec["rho"],
            max_attempts=spec.get("max_attempts", 50),
            seed=spec.get("seed", 0),
        )
        return CodeBundle("pmds-random", inst.code, None, None, dict(spec), inst.verified)
    raise ValueError(f"unknown code kind {kind!r}")


DECODERS = ("mk", "irs", "lrc-supercode", "bmd-per-row")


@dataclass
class ExperimentConfig:
    """One encode -> corrupt -> decode experiment, fully determined by its
    fields plus the seed: identical configs reproduce identical reports."""

    code: dict
    ell: int
    t: int
    decoder: str = "mk"
    support_mode: str = "uniform"  # "uniform" | "fixed"
    value_mode: str = "uniform"  # "uniform" | "full-rank"
    support: list[int] | None = None
    trials: int = 1000
    seed: int = 0
    trial_offset: int = 0

    def validate(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.ell < 1:
            raise ValueError("ell must be >= 1")
        if self.decoder not in DECODERS:
            raise ValueError(f"unknown decoder {self.decoder!r}; choose from {DECODERS}")
        if self.support_mode not in ("uniform", "fixed"):
            raise ValueError(f"unknown support mode {self.support_mode!r}")
        if self.value_mode not in ("uniform", "full-rank"):
            raise ValueError(f"unknown value mode {self.value_mode!r}")
        if self.support_mode == "fixed" and self.support is None:
            raise ValueError("fixed support mode needs a support list")
        if self.trial_offset < 0:
            raise ValueError("trial offset must be >= 0")

    def to_json(self) -> dict:
        obj = {
            "code": self.code,
            "ell": self.ell,
            "t": self.t,
            "decoder": self.decoder,
            "support_mode": self.support_mode,
            "value_mode": self.value_mode,
            "trials": self.trials,
            "seed": self.seed,
            "trial_offset": self.trial_offset,
        }
        if self.support is not None:
            obj["support"] = list(self.support)
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "ExperimentConfig":
        return cls(
            code=obj["code"],
            ell=obj["ell"],
            t=obj["t"],
            decoder=obj.get("decoder", "mk"),
            support_mode=obj.get("support_mode", "uniform"),
            value_mode=obj.get("value_mode", "uniform"),
            support=obj.get("support"),
            trials=obj.get("trials", 1000),
            seed=obj.get("seed", 0),
            trial_offset=obj.get("trial_offset", 0),
        )


@dataclass
class SimulationReport:
    config: ExperimentConfig
    counts: dict
    rate: float
    wilson_99: tuple[float, float]
    closed_form: Fraction | None
    parity_violations: int
    wall_clock_s: float
    version: str = ARTIFACT_VERSION

    @property
    def trials(self) -> int:
        return sum(self.counts[key] for key in ("success", "failure", "miscorrection"))

    def body_json(self) -> dict:
        """The deterministic part of the report (no timing, no version)."""
        closed = None
        if self.closed_form is not None:
            closed = {
                "value": float(self.closed_form),
                "exact": f"{self.closed_form.numerator}/{self.closed_form.denominator}",
            }
        return {
            "config": self.config.to_json(),
            "results": {
                "trials": self.trials,
                "counts": dict(self.counts),
                "rate": self.rate,
                "wilson_99": list(self.wilson_99),
                "parity_violations": self.parity_violations,
                "closed_form": closed,
            },
        }

    def to_json(self) -> dict:
        obj = self.body_json()
        obj["meta"] = {"wall_clock_s": self.wall_clock_s, "version": self.version}
        return obj


def _decode_dispatch(bundle: CodeBundle, decoder: str):
    if decoder == "mk":
        code = bundle.encode_code
        return lambda received: mk_decode(code, received)
    if decoder == "irs":
        if bundle.rs is None or bundle.kind != "rs":
            raise ValueError("the joint key-equation decoder needs an rs code")
        rs = bundle.rs
        return lambda received: irs_decode(rs, received)
    if decoder == "lrc-supercode":
        if bundle.tb is None:
            raise ValueError("supercode decoding needs a tamo-barg code")
        tb = bundle.tb
        return lambda received: decode_lrc_via_supercode(tb, received)
    if decoder == "bmd-per-row":
        if bundle.rs is None or bundle.kind != "rs":
            raise ValueError("per-row decoding needs an rs code")
        rs = bundle.rs
        return lambda received: decode_rows_independently(rs, received)
    raise ValueError(f"unknown decoder {decoder!r}")


def closed_form_reference(config: ExperimentConfig, bundle: CodeBundle) -> Fraction | None:
    """Exact success probability for configurations where one is known.

    Covers the generalized burst decoder on a verified single-parity
    partial-MDS code: support factor 1 below the guaranteed radius d-2,
    the admissible ratio at t = n-k-1; times the full-rank fraction for
    uniform error values.
    """
    if config.decoder != "mk" or bundle.kind != "pmds-random" or not bundle.verified:
        return None
    spec = bundle.params
    if spec["rho"] != 2:
        return None
    n, k, r = spec["n"], spec["k"], spec["r"]
    t = config.t
    d = bundle.encode_code.min_distance_rank_search()
    if t <= d - 2:
        support = Fraction(1)
    elif t == n - k - 1:
        support = count_admissible_sets(n, r, 2, k + 1).ratio
    else:
        return None
    if config.value_mode == "full-rank":
        rank = Fraction(1)
    else:
        rank = full_rank_fraction(bundle.field.q, config.ell, t)
    return rank * support


def run_trial(bundle: CodeBundle, config: ExperimentConfig, trial_index: int) -> dict:
    """One seeded encode -> corrupt -> decode trial; returns outcome labels."""
    rng = random.Random(derive_seed(config.seed, trial_index))
    code = bundle.encode_code
    word = InterleavedWord.random(code, config.ell, rng)
    support = config.support if config.support_mode == "fixed" else "uniform"
    error = sample_burst_error(
        bundle.field,
        config.ell,
        code.n,
        config.t,
        rng=rng,
        support=support,
        values=config.value_mode,
    )
    received = word.matrix + error.matrix
    outcome = _decode_dispatch(bundle, config.decoder)(received)
    if outcome.success:
        label = "success" if outcome.codeword == word.matrix else "miscorrection"
    else:
        label = "failure"
    parity_ok = True
    if outcome.success:
        parity_ok = all(code.is_codeword(row) for row in outcome.codeword.data)
    return {
        "label": label,
        "detected_miscorrection": outcome.status == STATUS_MISCORRECTION_DETECTED,
        "parity_ok": parity_ok,
    }


def monte_carlo_estimate(
    config: ExperimentConfig,
    bundle: CodeBundle | None = None,
    trials: int | None = None,
    start_index: int | None = None,
) -> SimulationReport:
    """Run the configured experiment and tally outcome counts.

    success = decoder output equals the transmitted word; miscorrection =
    decoder reported success with a different (still valid) word; failure
    covers everything else, including detected miscorrections.  Counts are
    mergeable: running [offset, offset+N) in pieces gives identical totals
    in any order.
    """
    config.validate()
    if bundle is None:
        bundle = build_code(config.code)
    if trials is None:
        trials = config.trials
    if start_index is None:
        start_index = config.trial_offset
    t0 = time.perf_counter()
    counts = {"success": 0, "failure": 0, "miscorrection": 0, "miscorrection_detected": 0}
    parity_violations = 0
    for i in range(start_index, start_index + trials):
        result = run_trial(bundle, config, i)
        counts[result["label"]] += 1
        if result["detected_miscorrection"]:
            counts["miscorrection_detected"] += 1
        if not result["parity_ok"]:
            parity_violations += 1
    rate = counts["success"] / trials
    report_config = replace(config, trials=trials, trial_offset=start_index)
    return SimulationReport(
        config=report_config,
        counts=counts,
        rate=rate,
        wilson_99=wilson_interval(counts["success"], trials),
        closed_form=closed_form_reference(config, bundle),
        parity_violations=parity_violations,
        wall_clock_s=time.perf_counter() - t0,
    )


def merge_reports(parts: list[SimulationReport]) -> SimulationReport:
    """Combine disjoint trial ranges of the same experiment."""
    if not parts:
        raise ValueError("nothing to merge")
    base = parts[0]
    counts = {key: sum(p.counts[key] for p in parts) for key in base.counts}
    trials = sum(p.trials for p in parts)
    offset = min(p.config.trial_offset for p in parts)
    config = replace(base.config, trials=trials, trial_offset=offset)
    return SimulationReport(
        config=config,
        counts=counts,
        rate=counts["success"] / trials,
        wilson_99=wilson_interval(counts["success"], trials),
        closed_form=base.closed_form,
        parity_violations=sum(p.parity_violations for p in parts),
        wall_clock_s=sum(p.wall_clock_s for p in parts),
    )


CSV_FIELDS = (
    "n",
    "k",
    "r",
    "rho",
    "q_log2",
    "ell",
    "t",
    "trials",
    "success",
    "failure",
    "miscor",
    "rate",
    "ci_lo",
    "ci_hi",
    "closed_form",
)


def report_csv_row(report: SimulationReport) -> dict:
    """Flatten a report into the canonical CSV columns."""
    spec = report.config.code
    field = field_from_spec(spec)
    q_log2 = field.m if field.p == 2 else round(math.log2(field.q), 6)
    return {
        "n": spec["n"],
        "k": spec["k"],
        "r": spec.get("r", ""),
        "rho": spec.get("rho", ""),
        "q_log2": q_log2,
        "ell": report.config.ell,
        "t": report.config.t,
        "trials": report.trials,
        "success": report.counts["success"],
        "failure": report.counts["failure"],
        "miscor": report.counts["miscorrection"],
        "rate": repr(report.rate),
        "ci_lo": repr(report.wilson_99[0]),
        "ci_hi": repr(report.wilson_99[1]),
        "closed_form": repr(float(report.closed_form)) if report.closed_form is not None else "",
    }
