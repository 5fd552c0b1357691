import math
import random
from fractions import Fraction
from itertools import combinations

import pytest

from ilrc.codecore import LinearCode, ReedSolomonCode
from ilrc.galois import get_field
from ilrc.gfmatrix import GFMatrix
from ilrc.interleaved import InterleavedWord, is_t_plus_1_independent, mk_decode, sample_burst_error
from ilrc.lrc import LocalityPartition, local_repair
from ilrc.pmds import (
    PmdsCode,
    PmdsSearchError,
    admissible_ratio_lower_bound,
    asymptotic_conditions,
    count_admissible_by_enumeration,
    count_admissible_by_polynomial,
    count_admissible_sets,
    count_sets_covering_a_group,
    pmds_random_search,
    verify_pmds,
    VerificationBudgetError,
)

F2_16 = get_field(2, 16)
F16 = get_field(2, 4)


# ----------------------------------------------------------------------
# admissible-set counting
# ----------------------------------------------------------------------

def test_reference_count_both_paths():
    assert count_admissible_by_polynomial(15, 4, 2, 9) == 4375
    assert count_admissible_by_enumeration(15, 4, 2, 9) == 4375
    counted = count_admissible_sets(15, 4, 2, 9)
    assert counted.total == 5005
    assert counted.ratio == Fraction(125, 143)


def test_count_vacuous_below_r():
    for mu in range(5):
        counted = count_admissible_sets(15, 4, 2, mu)
        assert counted.count == math.comb(15, mu)
        assert counted.ratio == 1


def test_counting_paths_agree_on_sweep():
    for rho in (1, 2, 3):
        for r in (1, 2, 3):
            s = r + rho - 1
            for groups in (2, 3):
                n = s * groups
                if n > 12:
                    continue
                for mu in range(n + 1):
                    assert count_admissible_by_polynomial(n, r, rho, mu) == \
                        count_admissible_by_enumeration(n, r, rho, mu)


def test_inclusion_exclusion_counts_the_complement():
    # the alternating sum counts mu-sets swallowing at least one full group,
    # i.e. exactly the non-admissible sets for single-parity groups
    assert count_sets_covering_a_group(15, 4, 9) == 630
    assert 630 == math.comb(15, 9) - 4375
    for r, groups in ((1, 3), (2, 3), (3, 2)):
        n = (r + 1) * groups
        for mu in range(n + 1):
            covering = count_sets_covering_a_group(n, r, mu)
            admissible = count_admissible_by_polynomial(n, r, 2, mu)
            assert covering == math.comb(n, mu) - admissible


def test_count_validation():
    with pytest.raises(ValueError, match="divide"):
        count_admissible_sets(15, 3, 2, 5)
    with pytest.raises(ValueError):
        count_admissible_sets(15, 4, 2, 16)


# ----------------------------------------------------------------------
# ratio lower bound and growth conditions
# ----------------------------------------------------------------------

def test_ratio_lower_bound_values():
    assert admissible_ratio_lower_bound(15, 8, 4, 2) == Fraction(-104, 625)
    assert float(admissible_ratio_lower_bound(15, 8, 4, 2)) == -0.1664
    bound60 = admissible_ratio_lower_bound(60, 8, 4, 2)
    assert bound60 == Fraction(159271, 160000)
    assert abs(float(bound60) - 0.99544) < 1e-4


def test_ratio_lower_bound_specializes_at_rho2():
    # xi = 0 makes the binomial factor disappear
    for n, k, r in ((15, 8, 4), (20, 9, 4), (12, 5, 2)):
        expected = 1 - n * Fraction(k + 1, n) ** (r + 1)
        assert admissible_ratio_lower_bound(n, k, r, 2) == expected


def test_ratio_lower_bound_sound_on_grid():
    points = 0
    for rho in (2, 3, 4):
        for r in range(1, 9):
            s = r + rho - 1
            for n in range(s, 25, s):
                for k in range(1, n):
                    if k + 1 > n:
                        continue
                    bound = admissible_ratio_lower_bound(n, k, r, rho)
                    exact = count_admissible_sets(n, r, rho, k + 1, cross_check_limit=0).ratio
                    assert bound <= exact, (n, k, r, rho)
                    points += 1
    assert points >= 50


def test_growth_conditions_example():
    fc = asymptotic_conditions(15, 8, 4, 2, 1.5, 1.1)
    assert fc.xi == 0
    assert fc.rate_condition is True
    assert fc.group_condition is False


def test_growth_conditions_rho2_reduction():
    # at rho = 2 the rate condition collapses to n > c1 (k+1)
    for n, k, r, c1 in ((15, 8, 4, 1.5), (20, 9, 4, 2.0), (24, 7, 3, 3.0)):
        fc = asymptotic_conditions(n, k, r, 2, c1, 1.1)
        assert fc.rate_condition == (n > c1 * (k + 1))


def test_growth_conditions_c1_near_one():
    fc = asymptotic_conditions(15, 8, 4, 2, 1.0001, 1.1)
    assert fc.group_condition is False  # log2(c1) in the denominator blows up
    with pytest.raises(ValueError):
        asymptotic_conditions(15, 8, 4, 2, 1.0, 1.1)
    with pytest.raises(ValueError):
        asymptotic_conditions(15, 8, 4, 2, 1.5, 0.5)


def test_ratio_climbs_along_conforming_family():
    # fixed local rate r/(r+rho-1) = 1/2, growing length, conditions satisfied
    last = None
    for r in (14, 21, 28):
        n, k, rho = 14 * r, 2 * r - 1, r + 1
        fc = asymptotic_conditions(n, k, r, rho, 1.5, 1.1)
        assert fc.rate_condition and fc.group_condition
        ratio = count_admissible_sets(n, r, rho, k + 1, cross_check_limit=0).ratio
        if last is not None:
            assert ratio >= last
        last = ratio
    assert 1 - last < Fraction(1, 10**12)


# ----------------------------------------------------------------------
# verification
# ----------------------------------------------------------------------

def test_verify_small_instance(pmds6):
    assert pmds6.verified
    result = verify_pmds(pmds6.code)
    assert result.ok and result.witness is None
    assert result.patterns_checked == 9  # 3 choices per group, two groups
    assert result.punctured_distance == 2


def test_verify_trivial_single_group_mds():
    rs = ReedSolomonCode(F16, [1, 2, 3, 4, 5, 6], 3)
    part = LocalityPartition(((0, 1, 2, 3, 4, 5),), r=6, rho=1)
    code = LinearCode(F16, rs.G, locality=part)
    result = verify_pmds(code)
    assert result.ok and result.patterns_checked == 1


def test_verify_rejects_group_supported_global_parity():
    rows = [[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1], [1, 2, 5, 0, 0, 0]]
    h = GFMatrix(F2_16, rows, 6)
    code = LinearCode.from_parity_check(F2_16, h, locality=LocalityPartition.contiguous(6, 3, 2, 2))
    result = verify_pmds(code)
    assert not result.ok
    assert result.witness["kind"] == "local-dimension"


def test_verify_produces_punctured_witness():
    # crafted so the local structure is fine but columns {1,2,3} are dependent
    rows = [[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1], [1, 2, 3, 1, 5, 5]]
    h = GFMatrix(F2_16, rows, 6)
    code = LinearCode.from_parity_check(F2_16, h, locality=LocalityPartition.contiguous(6, 3, 2, 2))
    result = verify_pmds(code)
    assert not result.ok
    assert result.witness["kind"] == "punctured-not-mds"
    cols = result.witness["columns"]
    assert code.G.column_select(cols).rank() < code.k


def test_verify_budget_guard(pmds6):
    with pytest.raises(VerificationBudgetError):
        verify_pmds(pmds6.code, max_patterns=8)


def test_verify_requires_equal_groups():
    rs = ReedSolomonCode(F16, [1, 2, 3, 4, 5, 6], 3)
    part = LocalityPartition(((0, 1, 2, 3), (4, 5)), r=3, rho=2)
    code = LinearCode(F16, rs.G, locality=part)
    with pytest.raises(ValueError, match="size"):
        verify_pmds(code)


# ----------------------------------------------------------------------
# random search
# ----------------------------------------------------------------------

def test_search_small_instance(pmds6):
    assert pmds6.verified and pmds6.seed == 1 and pmds6.attempts >= 1
    assert pmds6.distance == 3
    part = pmds6.code.locality
    assert part.r == 2 and part.rho == 2


def test_search_reproducible(pmds6):
    again = pmds_random_search(F2_16, 6, 3, 2, 2, seed=1)
    assert again.code.G == pmds6.code.G


def test_search_local_parities_only():
    inst = pmds_random_search(F2_16, 6, 4, 2, 2, seed=0)
    assert inst.verified
    assert inst.code.k == 4


def test_search_exhausts_over_tiny_field():
    f4 = get_field(2, 2)
    with pytest.raises(PmdsSearchError):
        pmds_random_search(f4, 12, 6, 3, 2, max_attempts=3, seed=0)


def test_search_parameter_validation():
    with pytest.raises(ValueError, match="too large"):
        pmds_random_search(F2_16, 6, 5, 2, 2)
    with pytest.raises(ValueError, match="too small"):
        pmds_random_search(get_field(2, 2), 10, 4, 3, 3)


def test_pmds_code_serialization(pmds6):
    blob = pmds6.to_json()
    assert blob["kind"] == "pmds" and blob["verified"] is True
    restored = PmdsCode.from_json(blob)
    assert restored.code.G == pmds6.code.G
    assert restored.code.locality == pmds6.code.locality
    assert restored.verified and restored.seed == 1


# ----------------------------------------------------------------------
# structural facts on verified instances
# ----------------------------------------------------------------------

def test_big_instance_distance_and_punctured_distance(pmds15):
    code = pmds15.code
    assert pmds15.verified
    assert code.min_distance_rank_search() == 7
    # puncturing one position per group leaves a [12, 8] MDS code
    punctured = code.puncture([0, 5, 10])
    assert (punctured.n, punctured.k) == (12, 8)
    assert punctured.min_distance_rank_search() == 5


def test_local_repair_on_verified_instance(pmds15):
    # one erased symbol comes back from its [5, 4, 2] group alone
    code = pmds15.code
    rng = random.Random(20)
    for _ in range(20):
        cw = code.random_codeword(rng)
        pos = rng.randrange(15)
        mangled = list(cw)
        mangled[pos] = rng.randrange(code.field.q)
        assert local_repair(code, mangled, [pos]) == cw


def test_search_and_decode_with_two_local_parities():
    # rho = 3 instance: groups of four with two parities each
    inst = pmds_random_search(F2_16, 12, 5, 2, 3, seed=0)
    assert inst.verified
    code = inst.code
    d = code.min_distance_rank_search()
    assert d == 12 - 5 + 1 - (3 - 1) * (3 - 1) == 4
    rng = random.Random(21)
    for _ in range(50):
        w = InterleavedWord.random(code, 6, rng)
        e = sample_burst_error(F2_16, 6, 12, d - 2, rng=rng, values="full-rank")
        out = mk_decode(code, w.matrix + e.matrix)
        assert out.success and out.codeword == w.matrix


def test_information_sets_are_admissible_sets(pmds15):
    # exhaustive over all C(15, 8) = 6435 candidate sets
    code = pmds15.code
    g = code.G
    for positions in combinations(range(15), 8):
        per_group = [0, 0, 0]
        for i in positions:
            per_group[i // 5] += 1
        admissible = all(c <= 4 for c in per_group)
        independent = g.column_select(positions).rank() == 8
        assert independent == admissible, positions


def test_locatability_matches_admissible_complements(pmds6):
    # exhaustive over supports at t = n-k-1 = 2: the complement must be
    # an admissible (k+1)-set
    code = pmds6.code
    h = code.H
    independent_count = 0
    for support in combinations(range(6), 2):
        comp = [i for i in range(6) if i not in support]
        per_group = [0, 0]
        for i in comp:
            per_group[i // 3] += 1
        admissible = all(c <= 2 for c in per_group)
        independent = is_t_plus_1_independent(h, support)
        assert independent == admissible
        independent_count += independent
    assert independent_count == count_admissible_by_enumeration(6, 2, 2, 4)


def test_locatable_fraction_dominates_admissible_ratio(pmds6):
    # for every weight t up to n-k-1, the fraction of locatable supports
    # is at least |admissible (k+1)-sets| / C(n, k+1)
    code = pmds6.code
    h = code.H
    floor_ratio = count_admissible_sets(6, 2, 2, 4).ratio
    for t in (0, 1, 2):
        supports = list(combinations(range(6), t))
        good = sum(1 for s in supports if is_t_plus_1_independent(h, s))
        assert Fraction(good, len(supports)) >= floor_ratio
