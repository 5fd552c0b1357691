"""Partial-MDS (maximally recoverable) codes: verification, construction
by seeded random search, and the repair-group set-family combinatorics
that governs how many error supports a generic interleaved decoder can
locate.

A code with equal-size [r+rho-1, r, rho] MDS repair groups is partial
MDS when puncturing any rho-1 positions out of every group leaves an
MDS code.  Verification here is exact and witness-producing: rather
than enumerating codeword weights, every k-subset of the punctured
generator columns is rank-checked (with results memoized across
puncture patterns, since the union of all those subsets is exactly the
family of "admissible" sets counted below).

Admissible sets: the mu-subsets of positions meeting every repair group
in at most r positions.  Their count is computed two independent ways
(per-group generating polynomial, and direct enumeration when the
search space is small) and all ratios are carried as exact rationals.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .codecore import LinearCode
from .galois import FiniteField
from .gfmatrix import GFMatrix
from .lrc import LocalityPartition
from .seeds import derive_seed


class PmdsSearchError(RuntimeError):
    """Random search exhausted its attempt budget without a verified code."""


class VerificationBudgetError(RuntimeError):
    """The puncture-pattern space exceeds the configured budget.

    Raised instead of silently sampling; callers may raise the budget.
    """


# ----------------------------------------------------------------------
# admissible-set counting
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class AdmissibleSetCount:
    """Count of mu-subsets meeting every repair group in <= r positions."""

    n: int
    r: int
    rho: int
    mu: int
    count: int
    total: int

    @property
    def ratio(self) -> Fraction:
        if self.total == 0:
            return Fraction(1)
        return Fraction(self.count, self.total)


def _check_group_shape(n: int, r: int, rho: int) -> int:
    s = r + rho - 1
    if r < 1 or rho < 1:
        raise ValueError("need r >= 1 and rho >= 1")
    if n % s:
        raise ValueError(f"group size r+rho-1 = {s} does not divide n = {n}")
    return s


def count_admissible_by_polynomial(n: int, r: int, rho: int, mu: int) -> int:
    """Coefficient of x^mu in (sum_{a<=r} C(r+rho-1, a) x^a)^(n/(r+rho-1)).

    Each factor enumerates how many positions one group contributes.
    """
    s = _check_group_shape(n, r, rho)
    per_group = [math.comb(s, a) for a in range(min(r, s) + 1)]
    poly = [1]
    for _ in range(n // s):
        out = [0] * (len(poly) + len(per_group) - 1)
        for i, a in enumerate(poly):
            if a:
                for j, b in enumerate(per_group):
                    out[i + j] += a * b
        poly = out
    return poly[mu] if 0 <= mu < len(poly) else 0


def count_admissible_by_enumeration(n: int, r: int, rho: int, mu: int) -> int:
    """Brute-force count over all C(n, mu) subsets (contiguous groups)."""
    s = _check_group_shape(n, r, rho)
    if not 0 <= mu <= n:
        return 0
    count = 0
    for subset in combinations(range(n), mu):
        per_group = [0] * (n // s)
        ok = True
        for i in subset:
            g = i // s
            per_group[g] += 1
            if per_group[g] > r:
                ok = False
                break
        if ok:
            count += 1
    return count


def count_admissible_sets(
    n: int, r: int, rho: int, mu: int, cross_check_limit: int = 10**6
) -> AdmissibleSetCount:
    """Exact admissible-set count, cross-checked by enumeration when feasible."""
    if not 0 <= mu <= n:
        raise ValueError(f"mu must lie in [0, {n}], got {mu}")
    count = count_admissible_by_polynomial(n, r, rho, mu)
    total = math.comb(n, mu)
    if total <= cross_check_limit:
        enum = count_admissible_by_enumeration(n, r, rho, mu)
        if enum != count:
            raise AssertionError(
                f"count mismatch for (n={n}, r={r}, rho={rho}, mu={mu}): "
                f"polynomial={count}, enumeration={enum}"
            )
    return AdmissibleSetCount(n, r, rho, mu, count, total)


def count_sets_covering_a_group(n: int, r: int, mu: int) -> int:
    """Inclusion-exclusion count of mu-subsets containing a full repair group,
    for single-parity groups (rho = 2, group size r + 1).

    This is the complement of the admissible count:
    ``comb(n, mu) - count_admissible_sets(n, r, 2, mu).count``.
    """
    s = r + 1
    if n % s:
        raise ValueError(f"group size r+1 = {s} does not divide n = {n}")
    g = n // s
    total = 0
    for j in range(1, mu // s + 1):
        term = math.comb(g, j) * math.comb(n - j * s, mu - j * s)
        total += term if j % 2 else -term
    return total


def admissible_ratio_lower_bound(n: int, k: int, r: int, rho: int) -> Fraction:
    """Closed-form lower bound on the admissible fraction at mu = k + 1.

    Evaluates 1 - n * C(r+rho-1, xi) * ((k+1)/n)^(r+1) with
    xi = min(rho-2, floor((r+rho-1)/2)), exactly as a rational.  May be
    negative (vacuous) for small parameters.
    """
    if rho < 2:
        raise ValueError("rho must be >= 2")
    s = r + rho - 1
    xi = min(rho - 2, s // 2)
    return 1 - n * math.comb(s, xi) * Fraction(k + 1, n) ** (r + 1)


@dataclass(frozen=True)
class FeasibilityConditions:
    """Finite-n evaluation of the conditions under which the admissible
    fraction tends to one along a growing code family."""

    xi: int
    rate_condition: bool
    group_condition: bool
    local_rate_condition: bool


def asymptotic_conditions(
    n: int, k: int, r: int, rho: int, c1: float, c2: float
) -> FeasibilityConditions:
    """Check the two growth conditions for constants c1, c2 > 1.

    rate:  C(r+rho-1, xi)^(-1/(r+1)) > c1 (k+1)/n   (exact comparison)
    group: r+1 >= c2 log2(n) / log2(c1)
    Also reports the looser local-rate reading
    ((r+1)/(e (r+rho-1)))^(rho-2) > c1 (k+1)/n used for quick sizing.
    """
    if c1 <= 1 or c2 <= 1:
        raise ValueError("need c1 > 1 and c2 > 1")
    if rho < 2:
        raise ValueError("rho must be >= 2")
    s = r + rho - 1
    xi = min(rho - 2, s // 2)
    # binom^(-1/(r+1)) > c1 (k+1)/n  <=>  n^(r+1) > binom * (c1 (k+1))^(r+1)
    c1_frac = Fraction(c1)
    rate = Fraction(n) ** (r + 1) > math.comb(s, xi) * (c1_frac * (k + 1)) ** (r + 1)
    group = (r + 1) >= c2 * math.log2(n) / math.log2(c1)
    local_rate = ((r + 1) / (math.e * s)) ** (rho - 2) > c1 * (k + 1) / n
    return FeasibilityConditions(xi, rate, group, local_rate)


# ----------------------------------------------------------------------
# verification
# ----------------------------------------------------------------------

@dataclass
class PmdsVerification:
    ok: bool
    witness: dict | None
    punctured_distance: int
    patterns_checked: int
    rank_checks: int


def verify_pmds(
    code: LinearCode,
    partition: LocalityPartition | None = None,
    max_patterns: int = 200_000,
) -> PmdsVerification:
    """Exhaustively verify the partial-MDS property.

    Checks, in order: every repair group restricts to an [r+rho-1, r, rho]
    MDS code; then, for every way of puncturing rho-1 positions from each
    group, every k columns of the punctured generator are independent
    (so the punctured code is MDS with distance n' - k + 1).  Rank checks
    are memoized on the original column indices, which de-duplicates the
    heavy work across patterns.  The first violation is returned as a
    witness.
    """
    if partition is None:
        partition = code.locality
    if partition is None:
        raise ValueError("code has no locality partition and none was given")
    partition.validate_for_length(code.n)
    r, rho = partition.r, partition.rho
    s = r + rho - 1
    sizes = {len(g) for g in partition.groups}
    if sizes != {s}:
        raise ValueError(f"groups must all have size r+rho-1 = {s}, got sizes {sorted(sizes)}")
    n, k = code.n, code.k
    mu = len(partition.groups)
    d_punctured = n - mu * (rho - 1) - k + 1

    rank_checks = 0

    # local structure: each group restriction must be [s, r, rho] MDS,
    # i.e. have dimension r with every r columns of its generator independent
    # (vacuous at rho = 1, where there are no local parities at all)
    local_groups = partition.groups if rho > 1 else ()
    for j, group in enumerate(local_groups):
        sub_g = code.G.column_select(group).row_space_basis()
        if sub_g.nrows != r:
            return PmdsVerification(
                False,
                {"kind": "local-dimension", "group": j, "dimension": sub_g.nrows},
                d_punctured,
                0,
                rank_checks,
            )
        for cols in combinations(range(s), r):
            rank_checks += 1
            if sub_g.column_select(cols).rank() != r:
                return PmdsVerification(
                    False,
                    {"kind": "local-not-mds", "group": j, "columns": [group[c] for c in cols]},
                    d_punctured,
                    0,
                    rank_checks,
                )

    pattern_count = math.comb(s, rho - 1) ** mu
    if pattern_count > max_patterns:
        raise VerificationBudgetError(
            f"{pattern_count} puncture patterns exceed the budget of {max_patterns}"
        )

    g = code.G
    memo: dict[tuple[int, ...], bool] = {}
    patterns_checked = 0
    per_group_choices = [list(combinations(group, rho - 1)) for group in partition.groups]
    for picks in product(*per_group_choices):
        patterns_checked += 1
        punctured = {i for pick in picks for i in pick}
        kept = [j for j in range(n) if j not in punctured]
        for cols in combinations(kept, k):
            good = memo.get(cols)
            if good is None:
                rank_checks += 1
                good = g.column_select(cols).rank() == k
                memo[cols] = good
            if not good:
                return PmdsVerification(
                    False,
                    {
                        "kind": "punctured-not-mds",
                        "pattern": sorted(punctured),
                        "columns": list(cols),
                    },
                    d_punctured,
                    patterns_checked,
                    rank_checks,
                )
    return PmdsVerification(True, None, d_punctured, patterns_checked, rank_checks)


# ----------------------------------------------------------------------
# construction by verified random search
# ----------------------------------------------------------------------

@dataclass
class PmdsCode:
    """A verified partial-MDS instance plus its construction provenance."""

    code: LinearCode
    verified: bool
    seed: int
    attempts: int

    @property
    def distance(self) -> int:
        return self.code.min_distance_rank_search()

    def to_json(self) -> dict:
        obj = self.code.to_json()
        obj["kind"] = "pmds"
        obj["verified"] = self.verified
        obj["seed"] = self.seed
        obj["attempts"] = self.attempts
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "PmdsCode":
        code = LinearCode.from_json(obj)
        return cls(code, obj.get("verified", False), obj.get("seed", 0), obj.get("attempts", 0))


def _local_parity_rows(field: FiniteField, n: int, groups, rho: int) -> list[list[int]]:
    """Block-diagonal MDS parities: rho-1 Vandermonde rows per group."""
    rows = []
    for group in groups:
        points = list(range(len(group)))  # any distinct elements work
        for e in range(rho - 1):
            row = [0] * n
            for x, pos in zip(points, group):
                row[pos] = field.pow(x, e)
            rows.append(row)
    return rows


def pmds_random_search(
    field: FiniteField,
    n: int,
    k: int,
    r: int,
    rho: int,
    max_attempts: int = 50,
    seed: int = 0,
) -> PmdsCode:
    """Search for a verified partial-MDS code with uniformly random global parities.

    The candidate parity-check stacks per-group MDS parities with
    n - k - (rho-1) n/(r+rho-1) fully random rows; each candidate is run
    through :func:`verify_pmds` and the first verified one is returned
    together with the seed, making the construction reproducible.  Works
    with high probability over large fields (q >= 2^16 for short codes);
    raises :class:`PmdsSearchError` when the attempt budget runs out.
    """
    s = _check_group_shape(n, r, rho)
    mu = n // s
    global_rows = n - k - mu * (rho - 1)
    if global_rows < 0:
        raise ValueError(
            f"k = {k} too large: local parities alone leave dimension {n - mu * (rho - 1)}"
        )
    if field.q < s:
        raise ValueError(f"field size {field.q} too small for group size {s}")
    partition = LocalityPartition.contiguous(n, s, r, rho)
    local_rows = _local_parity_rows(field, n, partition.groups, rho)

    for attempt in range(max_attempts):
        rng = random.Random(derive_seed(seed, attempt))
        rows = [row[:] for row in local_rows]
        rows.extend(
            [field.random_element(rng) for _ in range(n)] for _ in range(global_rows)
        )
        h = GFMatrix(field, rows, n)
        if h.rank() != n - k:
            continue
        code = LinearCode.from_parity_check(field, h, locality=partition)
        try:
            result = verify_pmds(code, partition)
        except VerificationBudgetError:
            raise
        if result.ok:
            return PmdsCode(code, True, seed, attempt + 1)
    raise PmdsSearchError(
        f"no verified partial-MDS code in {max_attempts} attempts "
        f"(n={n}, k={k}, r={r}, rho={rho}, q={field.q})"
    )
