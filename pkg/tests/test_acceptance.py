"""Acceptance suite: one test per release criterion, each printing a
pass line with its runtime and enforcing the stated budget.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.
"""

import random
import time
from fractions import Fraction
from itertools import combinations

from ilrc.galois import get_field
from ilrc.gfmatrix import GFMatrix, solve
from ilrc.interleaved import InterleavedWord, is_t_plus_1_independent, mk_decode, sample_burst_error
from ilrc.irs import decode_lrc_via_supercode, decode_rows_independently, irs_decode, t_max
from ilrc.lrc import lrc_singleton_bound
from ilrc.pmds import (
    admissible_ratio_lower_bound,
    count_admissible_by_enumeration,
    count_admissible_by_polynomial,
    count_admissible_sets,
)
from ilrc.probability import (
    CodeBundle,
    ExperimentConfig,
    full_rank_fraction,
    monte_carlo_estimate,
    rank_deficiency_tail_log10,
)
from ilrc.seeds import derive_seed
from helpers import count_full_rank_enumerated

PMDS15_SPEC = {"kind": "pmds-random", "q": 65536, "n": 15, "k": 8, "r": 4, "rho": 2, "seed": 1}


class Budget:
    def __init__(self, name: str, seconds: float):
        self.name = name
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is None:
            print(f"[ACCEPTANCE] {self.name}: PASS ({elapsed:.1f}s, budget {self.seconds:.0f}s)")
            assert elapsed < self.seconds, f"{self.name} exceeded its runtime budget"
        else:
            print(f"[ACCEPTANCE] {self.name}: FAIL ({elapsed:.1f}s)")
        return False


def test_criterion_1_set_family_exactness():
    with Budget("1 set-family exactness", 1.0):
        by_poly = count_admissible_by_polynomial(15, 4, 2, 9)
        by_enum = count_admissible_by_enumeration(15, 4, 2, 9)
        assert by_poly == by_enum == 4375
        counted = count_admissible_sets(15, 4, 2, 9)
        assert counted.total == 5005
        assert counted.ratio == Fraction(125, 143)


def test_criterion_2_end_to_end_success_probability(pmds15):
    bundle = CodeBundle("pmds-random", pmds15.code, None, None, PMDS15_SPEC, True)
    with Budget("2 end-to-end success probability", 300.0):
        closed_uniform = full_rank_fraction(2**16, 6, 6) * Fraction(125, 143)
        config = ExperimentConfig(
            code=PMDS15_SPEC, ell=6, t=6, decoder="mk",
            value_mode="uniform", trials=20_000, seed=22,
        )
        report = monte_carlo_estimate(config, bundle=bundle)
        assert report.closed_form == closed_uniform
        lo, hi = report.wilson_99
        assert lo <= float(closed_uniform) <= hi, (report.rate, float(closed_uniform))

        config = ExperimentConfig(
            code=PMDS15_SPEC, ell=6, t=6, decoder="mk",
            value_mode="full-rank", trials=20_000, seed=21,
        )
        report = monte_carlo_estimate(config, bundle=bundle)
        target = Fraction(125, 143)
        assert abs(float(target) - 0.8741) < 1e-4
        lo, hi = report.wilson_99
        assert lo <= float(target) <= hi, (report.rate, float(target))


def test_criterion_3_decoder_guarantees(pmds15):
    code = pmds15.code
    bundle = CodeBundle("pmds-random", code, None, None, PMDS15_SPEC, True)
    with Budget("3 decoder guarantees", 600.0):
        # guaranteed regime: t = d - 2 = 5 with full-rank errors
        config = ExperimentConfig(
            code=PMDS15_SPEC, ell=6, t=5, decoder="mk",
            value_mode="full-rank", trials=10_000, seed=30,
        )
        report = monte_carlo_estimate(config, bundle=bundle)
        assert report.counts["success"] == 10_000

        # boundary weight t = 6: exhaustive over all C(15,6) = 5005 supports,
        # one full-rank value matrix each; success must occur exactly on the
        # supports whose complements are admissible 9-sets
        field = code.field
        successes = 0
        for index, support in enumerate(combinations(range(15), 6)):
            rng = random.Random(derive_seed(31, index))
            word = InterleavedWord.random(code, 6, rng)
            error = sample_burst_error(
                field, 6, 15, 6, rng=rng, support=support, values="full-rank"
            )
            outcome = mk_decode(code, word.matrix + error.matrix)
            decoded_exactly = outcome.success and outcome.codeword == word.matrix
            per_group = [0, 0, 0]
            for i in support:
                per_group[i // 5] += 1
            complement_admissible = all(5 - c <= 4 for c in per_group)
            locatable = is_t_plus_1_independent(code.H, support)
            assert decoded_exactly == locatable == complement_admissible, support
            successes += decoded_exactly
        assert successes == 4375


def test_criterion_4_radius_arithmetic(tb15):
    with Budget("4 radius arithmetic", 60.0):
        assert t_max(512, 7) == 5
        assert lrc_singleton_bound(15, 8, 4, 2) == 7
        assert tb15.min_distance_rank_search(recompute=True) == 7


def test_criterion_5_extreme_tail():
    with Budget("5 extreme tail", 1.0):
        tail = rank_deficiency_tail_log10(256, 512, 5)
        assert -1224 <= tail <= -1222


def test_criterion_6_full_rank_fraction_by_enumeration():
    with Budget("6 full-rank fraction enumeration", 60.0):
        fields = {2: get_field(2), 3: get_field(3), 4: get_field(2, 2)}
        checked = 0
        for q, field in fields.items():
            for ell in range(1, 5):
                for t in range(0, 5):
                    if q ** (ell * t) > 2**24:
                        continue
                    count, total = count_full_rank_enumerated(field, ell, t)
                    assert Fraction(count, total) == full_rank_fraction(q, ell, t), (q, ell, t)
                    checked += 1
        assert checked == 58


def test_criterion_7_bound_soundness():
    with Budget("7 bound soundness", 300.0):
        points = 0
        for rho in (2, 3, 4):
            for r in range(1, 9):
                group = r + rho - 1
                for n in range(group, 25, group):
                    for k in range(1, n):
                        bound = admissible_ratio_lower_bound(n, k, r, rho)
                        exact = count_admissible_sets(
                            n, r, rho, k + 1, cross_check_limit=0
                        ).ratio
                        assert bound <= exact, (n, k, r, rho)
                        points += 1
        assert points >= 50


def test_criterion_8_joint_rs_decoding(rs15_9, tb15):
    field = get_field(2, 4)
    with Budget("8 joint RS decoding", 300.0):
        # (a) weights up to the per-word radius: identical to row-by-row
        rng = random.Random(80)
        for _ in range(1000):
            word = InterleavedWord.random(rs15_9, 3, rng)
            weight = rng.randrange(0, 4)
            error = sample_burst_error(field, 3, 15, weight, rng=rng)
            received = word.matrix + error.matrix
            joint = irs_decode(rs15_9, received)
            per_row = decode_rows_independently(rs15_9, received)
            assert joint.success and per_row.success
            assert joint.codeword == word.matrix == per_row.codeword

        # (b) weight 4 (beyond per-word radius 3, within t_max = 4)
        rng = random.Random(81)
        exact = 0
        for _ in range(10_000):
            word = InterleavedWord.random(rs15_9, 3, rng)
            error = sample_burst_error(field, 3, 15, 4, rng=rng)
            outcome = irs_decode(rs15_9, word.matrix + error.matrix)
            if outcome.success:
                assert all(rs15_9.is_codeword(row) for row in outcome.codeword.data)
                if outcome.codeword == word.matrix:
                    exact += 1
        assert exact / 10_000 >= 0.95

        # (c) supercode decoding never hands back a word outside the subcode
        rng = random.Random(82)
        for _ in range(1000):
            word = InterleavedWord.random(tb15, 4, rng)
            error = sample_burst_error(field, 4, 15, 4, rng=rng)
            outcome = decode_lrc_via_supercode(tb15, word.matrix + error.matrix)
            if outcome.success:
                assert all(tb15.is_codeword(row) for row in outcome.codeword.data)


def test_criterion_9_substrate_property_suites():
    with Budget("9 substrate property suites", 60.0):
        # field axioms, 10^4 random triples per field
        for field in (get_field(2, 16), get_field(7)):
            rng = random.Random(90)
            for _ in range(10_000):
                a, b, c = (rng.randrange(field.q) for _ in range(3))
                assert field.mul(a, b) == field.mul(b, a)
                assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
                assert field.mul(a, field.add(b, c)) == field.add(
                    field.mul(a, b), field.mul(a, c)
                )
                if a:
                    assert field.mul(a, field.inv(a)) == 1

        # Frobenius additivity in characteristic 2
        f256 = get_field(2, 8)
        rng = random.Random(91)
        for _ in range(10_000):
            a, b = rng.randrange(256), rng.randrange(256)
            assert f256.pow(f256.add(a, b), 2) == f256.add(f256.pow(a, 2), f256.pow(b, 2))

        # rank-nullity on random 6x8 matrices over GF(4)
        f4 = get_field(2, 2)
        rng = random.Random(92)
        for _ in range(10_000):
            m = GFMatrix.random(f4, 6, 8, rng)
            kernel = m.kernel_basis()
            assert kernel.nrows == 8 - m.rank()

        # solve round-trip on random consistent systems
        f2_16 = get_field(2, 16)
        rng = random.Random(93)
        for _ in range(10_000):
            a = GFMatrix.random(f2_16, 5, 4, rng)
            x = GFMatrix.random(f2_16, 4, 2, rng)
            b = a @ x
            sol = solve(a, b)
            assert sol.consistent
            assert (a @ sol.x) == b
