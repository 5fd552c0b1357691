"""Command-line reproducibility harness.

Subcommands: construct | encode | corrupt | decode | simulate | sweep |
bounds | verify-pmds | count-sets.  Artifacts are JSON (codes, words,
outcomes, reports) and CSV (sweep and bounds tables); everything is
seeded and byte-reproducible apart from wall-clock metadata.

Exit codes: 0 on success, 1 when a single-shot decode does not return
the success status, 2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .codecore import ReedSolomonCode
from .galois import FiniteField
from .gfmatrix import GFMatrix
from .interleaved import InterleavedWord, mk_decode, sample_burst_error
from .irs import decode_lrc_via_supercode, decode_rows_independently, irs_decode, t_max
from .lrc import TamoBargCode, lrc_singleton_bound, tamo_barg_code
from .pmds import (
    PmdsCode,
    admissible_ratio_lower_bound,
    asymptotic_conditions,
    count_admissible_sets,
    pmds_random_search,
    verify_pmds,
)
from .probability import (
    CSV_FIELDS,
    ExperimentConfig,
    SimulationReport,
    build_code,
    field_from_spec,
    merge_reports,
    monte_carlo_estimate,
    rank_deficiency_tail_log10,
    report_csv_row,
)


# ----------------------------------------------------------------------
# artifact I/O
# ----------------------------------------------------------------------

def _write_json(path: str | None, obj: dict) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _read_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def load_code_file(path: str):
    """Reconstruct a code object from a construct artifact."""
    obj = _read_json(path)
    kind = obj.get("kind")
    if kind == "rs":
        return ReedSolomonCode.from_json(obj)
    if kind == "tamo-barg":
        field = FiniteField.from_json(obj["field"])
        code = tamo_barg_code(field, obj["n"], obj["k"], obj["r"], obj["rho"])
        if code.G.to_json() != obj["generator"]:
            raise ValueError(f"stored generator in {path} does not match its parameters")
        return code
    if kind == "pmds":
        return PmdsCode.from_json(obj)
    raise ValueError(f"unknown code kind {kind!r} in {path}")


def _decode_target(code_obj):
    return code_obj.code if isinstance(code_obj, PmdsCode) else code_obj


def save_word_file(path: str | None, matrix: GFMatrix) -> None:
    _write_json(
        path,
        {"field": matrix.field.to_json(), "ell": matrix.nrows, "matrix": matrix.to_json()},
    )


def load_word_file(path: str) -> GFMatrix:
    obj = _read_json(path)
    field = FiniteField.from_json(obj["field"])
    return GFMatrix.from_json(field, obj["matrix"])


def _write_csv(path: str | None, fieldnames, rows) -> None:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    if path is None or path == "-":
        sys.stdout.write(buf.getvalue())
    else:
        with open(path, "w") as fh:
            fh.write(buf.getvalue())


def _fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def _code_spec_from_args(args) -> dict:
    spec = {"kind": args.kind, "q": args.q, "n": args.n, "k": args.k}
    if args.kind in ("tamo-barg", "pmds-random"):
        if args.r is None or args.rho is None:
            raise ValueError(f"--r and --rho are required for kind {args.kind}")
        spec["r"] = args.r
        spec["rho"] = args.rho
    if args.kind == "pmds-random":
        spec["seed"] = args.seed
        spec["max_attempts"] = args.attempts
    return spec


def cmd_construct(args) -> int:
    spec = _code_spec_from_args(args)
    if spec["kind"] == "pmds-random":
        inst = pmds_random_search(
            field_from_spec(spec),
            spec["n"],
            spec["k"],
            spec["r"],
            spec["rho"],
            max_attempts=spec["max_attempts"],
            seed=spec["seed"],
        )
        inst.code.min_distance_rank_search()
        obj = inst.to_json()
    else:
        obj = build_code(spec).encode_code.to_json()
    _write_json(args.out, obj)
    return 0


def cmd_encode(args) -> int:
    code = _decode_target(load_code_file(args.code))
    rng = random.Random(args.seed)
    word = InterleavedWord.random(code, args.ell, rng)
    save_word_file(args.out, word.matrix)
    return 0


def cmd_corrupt(args) -> int:
    word = load_word_file(args.word)
    support = "uniform" if args.support is None else [int(s) for s in args.support.split(",")]
    error = sample_burst_error(
        word.field,
        word.nrows,
        word.ncols,
        args.t,
        rng=random.Random(args.seed),
        support=support,
        values=args.value_mode,
    )
    save_word_file(args.out, word + error.matrix)
    if args.error_out:
        _write_json(
            args.error_out,
            {
                "field": word.field.to_json(),
                "support": list(error.support),
                "matrix": error.matrix.to_json(),
            },
        )
    return 0


def cmd_decode(args) -> int:
    code_obj = load_code_file(args.code)
    code = _decode_target(code_obj)
    received = load_word_file(args.word)
    if args.decoder == "mk":
        outcome = mk_decode(code, received)
    elif args.decoder == "irs":
        if not isinstance(code, ReedSolomonCode):
            raise ValueError("decoder 'irs' needs an rs code file")
        outcome = irs_decode(code, received)
    elif args.decoder == "lrc-supercode":
        if not isinstance(code, TamoBargCode):
            raise ValueError("decoder 'lrc-supercode' needs a tamo-barg code file")
        outcome = decode_lrc_via_supercode(code, received)
    elif args.decoder == "bmd-per-row":
        if not isinstance(code, ReedSolomonCode):
            raise ValueError("decoder 'bmd-per-row' needs an rs code file")
        outcome = decode_rows_independently(code, received)
    else:
        raise ValueError(f"unknown decoder {args.decoder!r}")
    _write_json(args.out, outcome.to_json())
    return 0 if outcome.success else 1


def _experiment_config(args) -> ExperimentConfig:
    if args.config:
        obj = _read_json(args.config)
        config = ExperimentConfig.from_json(obj)
    else:
        if args.kind is None:
            raise ValueError("either --config or --kind (with code parameters) is required")
        config = ExperimentConfig(code=_code_spec_from_args(args), ell=1, t=0)
    for name in ("ell", "t", "decoder", "value_mode", "support_mode"):
        flag = getattr(args, name.replace("-", "_"), None)
        if flag is not None:
            setattr(config, name, flag)
    if args.trials is not None:
        config.trials = args.trials
    if args.sim_seed is not None:
        config.seed = args.sim_seed
    if getattr(args, "trial_offset", None) is not None:
        config.trial_offset = args.trial_offset
    return config


def _simulate_chunk(config_json: dict, trials: int, start: int) -> dict:
    config = ExperimentConfig.from_json(config_json)
    report = monte_carlo_estimate(config, trials=trials, start_index=start)
    return report.body_json() | {"wall_clock_s": report.wall_clock_s}


def _run_simulation(config: ExperimentConfig, threads: int):
    config.validate()
    if threads <= 1:
        return monte_carlo_estimate(config)
    chunk = (config.trials + threads - 1) // threads
    jobs = []
    start = config.trial_offset
    remaining = config.trials
    while remaining > 0:
        size = min(chunk, remaining)
        jobs.append((config.to_json(), size, start))
        start += size
        remaining -= size
    with ProcessPoolExecutor(max_workers=threads) as pool:
        bodies = list(pool.map(_simulate_chunk, *zip(*jobs)))
    # reassemble piece reports, then merge deterministically
    parts = []
    for body in bodies:
        cfg = ExperimentConfig.from_json(body["config"])
        res = body["results"]
        closed = res["closed_form"]
        closed_frac = None
        if closed is not None:
            num, den = closed["exact"].split("/")
            closed_frac = Fraction(int(num), int(den))
        parts.append(
            SimulationReport(
                config=cfg,
                counts=res["counts"],
                rate=res["rate"],
                wilson_99=tuple(res["wilson_99"]),
                closed_form=closed_frac,
                parity_violations=res["parity_violations"],
                wall_clock_s=body["wall_clock_s"],
            )
        )
    return merge_reports(parts)


def cmd_simulate(args) -> int:
    config = _experiment_config(args)
    report = _run_simulation(config, args.threads)
    if args.out:
        _write_json(args.out + ".json", report.to_json())
        _write_csv(args.out + ".csv", CSV_FIELDS, [report_csv_row(report)])
    else:
        _write_json(None, report.to_json())
    counts = report.counts
    print(
        f"trials={report.trials} success={counts['success']} failure={counts['failure']} "
        f"miscorrection={counts['miscorrection']} rate={report.rate:.6f}",
        file=sys.stderr,
    )
    return 0


def cmd_sweep(args) -> int:
    obj = _read_json(args.config)
    base = {
        "code": obj["code"],
        "trials": obj.get("trials", 1000),
        "seed": obj.get("seed", 0),
        "support_mode": obj.get("support_mode", "uniform"),
        "value_mode": obj.get("value_mode", "uniform"),
        "trial_offset": obj.get("trial_offset", 0),
    }
    if args.trials is not None:
        base["trials"] = args.trials
    if args.sim_seed is not None:
        base["seed"] = args.sim_seed

    def as_list(value):
        return value if isinstance(value, list) else [value]

    ts = as_list(obj["t"])
    ells = as_list(obj["ell"])
    decoders = as_list(obj.get("decoder", "mk"))
    bundle = build_code(obj["code"])
    rows = []
    for decoder in decoders:
        for ell in ells:
            for t in ts:
                config = ExperimentConfig.from_json(
                    base | {"t": t, "ell": ell, "decoder": decoder}
                )
                config.validate()
                report = monte_carlo_estimate(config, bundle=bundle)
                row = report_csv_row(report)
                row["decoder"] = decoder
                rows.append(row)
    _write_csv(args.out, ("decoder",) + CSV_FIELDS, rows)
    return 0


def _parse_param_point(text: str) -> dict:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (4, 5, 6):
        raise ValueError(f"expected n,k,r,rho[,ell[,q]] but got {text!r}")
    point = {
        "n": int(parts[0]),
        "k": int(parts[1]),
        "r": int(parts[2]),
        "rho": int(parts[3]),
        "ell": int(parts[4]) if len(parts) > 4 else 1,
        "q": int(parts[5]) if len(parts) > 5 else None,
    }
    return point


BOUNDS_FIELDS = (
    "n",
    "k",
    "r",
    "rho",
    "ell",
    "q",
    "d_bound",
    "t_max",
    "xi",
    "ratio_lower_bound",
    "ratio_exact",
    "rate_condition",
    "group_condition",
    "local_rate_condition",
    "tail_log10",
)


def cmd_bounds(args) -> int:
    rows = []
    for text in args.params:
        point = _parse_param_point(text)
        n, k, r, rho = point["n"], point["k"], point["r"], point["rho"]
        ell = point["ell"]
        d_bound = lrc_singleton_bound(n, k, r, rho)
        radius = t_max(ell, d_bound)
        bound = admissible_ratio_lower_bound(n, k, r, rho)
        conditions = asymptotic_conditions(n, k, r, rho, args.c1, args.c2)
        ratio_exact = ""
        if n % (r + rho - 1) == 0:
            ratio_exact = _fraction_str(count_admissible_sets(n, r, rho, k + 1).ratio)
        tail = ""
        if point["q"]:
            tail = repr(rank_deficiency_tail_log10(point["q"], ell, min(radius, ell)))
        rows.append(
            {
                "n": n,
                "k": k,
                "r": r,
                "rho": rho,
                "ell": ell,
                "q": point["q"] or "",
                "d_bound": d_bound,
                "t_max": radius,
                "xi": conditions.xi,
                "ratio_lower_bound": _fraction_str(bound),
                "ratio_exact": ratio_exact,
                "rate_condition": conditions.rate_condition,
                "group_condition": conditions.group_condition,
                "local_rate_condition": conditions.local_rate_condition,
                "tail_log10": tail,
            }
        )
    _write_csv(args.out, BOUNDS_FIELDS, rows)
    return 0


def cmd_verify_pmds(args) -> int:
    code_obj = load_code_file(args.code)
    code = _decode_target(code_obj)
    result = verify_pmds(code)
    _write_json(
        args.out,
        {
            "ok": result.ok,
            "witness": result.witness,
            "punctured_distance": result.punctured_distance,
            "patterns_checked": result.patterns_checked,
            "rank_checks": result.rank_checks,
        },
    )
    return 0 if result.ok else 1


def _parse_mu_range(text: str, n: int) -> list[int]:
    if text == "all":
        return list(range(n + 1))
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


COUNT_FIELDS = ("n", "r", "rho", "mu", "count", "total", "ratio_num", "ratio_den", "ratio_lower_bound")


def cmd_count_sets(args) -> int:
    rows = []
    for mu in _parse_mu_range(args.mu, args.n):
        counted = count_admissible_sets(args.n, args.r, args.rho, mu)
        bound = ""
        if mu >= 1 and args.rho >= 2:
            bound = repr(float(admissible_ratio_lower_bound(args.n, mu - 1, args.r, args.rho)))
        rows.append(
            {
                "n": args.n,
                "r": args.r,
                "rho": args.rho,
                "mu": mu,
                "count": counted.count,
                "total": counted.total,
                "ratio_num": counted.ratio.numerator,
                "ratio_den": counted.ratio.denominator,
                "ratio_lower_bound": bound,
            }
        )
    _write_csv(args.out, COUNT_FIELDS, rows)
    return 0


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ilrc",
        description="Construct, corrupt, decode, and measure locally repairable and partial-MDS codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_code_params(p, kind_required: bool):
        p.add_argument("--kind", choices=("rs", "tamo-barg", "pmds-random"), required=kind_required)
        p.add_argument("--q", type=int, help="field order (power of two or prime)")
        p.add_argument("--n", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--r", type=int)
        p.add_argument("--rho", type=int)
        p.add_argument("--attempts", type=int, default=50, help="random-search attempt budget")

    p = sub.add_parser("construct", help="build a code and write it as JSON")
    add_code_params(p, kind_required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("encode", help="encode random messages into an interleaved word")
    p.add_argument("--code", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("corrupt", help="add a weight-t column burst to a word")
    p.add_argument("--word", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--support", default=None, help="comma-separated columns (default: uniform)")
    p.add_argument("--value-mode", choices=("uniform", "full-rank"), default="uniform")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--error-out", default=None)
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("decode", help="decode a received word file")
    p.add_argument("--code", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--decoder", choices=("mk", "irs", "lrc-supercode", "bmd-per-row"), default="mk")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="run a seeded encode/corrupt/decode experiment")
    add_code_params(p, kind_required=False)
    p.add_argument("--config", default=None, help="experiment config JSON")
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--decoder", choices=("mk", "irs", "lrc-supercode", "bmd-per-row"), default=None)
    p.add_argument("--value-mode", dest="value_mode", choices=("uniform", "full-rank"), default=None)
    p.add_argument("--support-mode", dest="support_mode", choices=("uniform", "fixed"), default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", dest="sim_seed", type=int, default=None)
    p.add_argument("--code-seed", dest="seed", type=int, default=0)
    p.add_argument("--trial-offset", dest="trial_offset", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None, help="prefix for .json/.csv reports")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="cartesian sweep over t / ell / decoder")
    p.add_argument("--config", required=True)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", dest="sim_seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bounds", help="distance/radius/ratio bound table")
    p.add_argument("--params", action="append", required=True, help="n,k,r,rho[,ell[,q]]")
    p.add_argument("--c1", type=float, default=1.5)
    p.add_argument("--c2", type=float, default=1.1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify-pmds", help="exhaustively verify the partial-MDS property")
    p.add_argument("--code", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify_pmds)

    p = sub.add_parser("count-sets", help="admissible set counts and ratios")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--rho", type=int, required=True)
    p.add_argument("--mu", required=True, help="integer, range a..b, or 'all'")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_count_sets)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
