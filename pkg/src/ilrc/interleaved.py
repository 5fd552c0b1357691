"""Interleaved words, column-burst errors, and the generic high-order
interleaved decoder of Metzner and Kapturowski.

An interleaved word stacks ell codewords of the same [n, k] code as the
rows of an ell x n matrix; a burst error corrupts whole columns.  The
decoder needs no structure from the code beyond a parity-check matrix:

    1. syndrome S = H R^T, an (n-k) x ell matrix;
    2. the candidate error support is every column of H lying in the
       column space of S;
    3. error values follow from one linear solve, and the corrected
       rows are re-verified against H.

When the true support E is "(t+1)-independent" (appending any other
parity-check column to H_E raises the rank to t+1) and the nonzero
error columns are linearly independent, recovery is exact -- in
particular for any t <= d-2 with a full-rank error.  Everything outside
that regime surfaces as a failure status with diagnostics, never as an
exception or a silently wrong answer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dataclass_field
from typing import Sequence

from .codecore import LinearCode
from .galois import FiniteField
from .gfmatrix import ColumnSpace, GFMatrix, solve

STATUS_SUCCESS = "success"
STATUS_FAILURE = "failure"
STATUS_MISCORRECTION_DETECTED = "miscorrection-detected"


@dataclass
class BurstError:
    """An ell x n error matrix with column support semantics."""

    matrix: GFMatrix
    support: tuple[int, ...]

    def __post_init__(self):
        actual = tuple(
            j for j in range(self.matrix.ncols) if any(row[j] for row in self.matrix.data)
        )
        if actual != tuple(sorted(self.support)):
            raise ValueError(f"declared support {self.support} != actual {actual}")

    @classmethod
    def from_matrix(cls, matrix: GFMatrix) -> "BurstError":
        support = tuple(
            j for j in range(matrix.ncols) if any(row[j] for row in matrix.data)
        )
        return cls(matrix, support)

    @property
    def weight(self) -> int:
        return len(self.support)

    def values(self) -> GFMatrix:
        """The nonzero columns, as an ell x t matrix."""
        return self.matrix.column_select(self.support)

    def rank(self) -> int:
        if not self.support:
            return 0
        return self.values().rank()


def sample_burst_error(
    field: FiniteField,
    ell: int,
    n: int,
    t: int,
    rng=None,
    seed: int | None = None,
    support: str | Sequence[int] = "uniform",
    values: str = "uniform",
) -> BurstError:
    """Draw a weight-t burst error: exactly t nonzero columns.

    support: "uniform" picks the t columns uniformly at random; a
    sequence fixes them.  values: "uniform" draws each nonzero column
    uniformly from the nonzero vectors of F_q^ell; "full-rank" redraws
    until the t columns are linearly independent (requires t <= ell).
    Deterministic for a given rng state or seed.
    """
    if not 0 <= t <= n:
        raise ValueError(f"weight t={t} outside [0, {n}]")
    if values not in ("uniform", "full-rank"):
        raise ValueError(f"unknown value mode {values!r}")
    if values == "full-rank" and t > ell:
        raise ValueError(f"full-rank errors need t <= ell, got t={t}, ell={ell}")
    if rng is None:
        rng = random.Random(seed)
    if isinstance(support, str):
        if support != "uniform":
            raise ValueError(f"unknown support mode {support!r}")
        positions = sorted(rng.sample(range(n), t))
    else:
        positions = sorted(support)
        if len(positions) != t or len(set(positions)) != t:
            raise ValueError("fixed support must contain exactly t distinct positions")
        for p in positions:
            if not 0 <= p < n:
                raise IndexError(f"support position {p} out of range")
    q = field.q
    while True:
        cols = []
        for _ in range(t):
            while True:
                col = [rng.randrange(q) for _ in range(ell)]
                if any(col):
                    break
            cols.append(col)
        matrix = GFMatrix.zeros(field, ell, n)
        for j, col in zip(positions, cols):
            for i in range(ell):
                matrix.data[i][j] = col[i]
        if values == "uniform":
            break
        if t == 0 or GFMatrix(field, [list(c) for c in zip(*cols)], t).rank() == t:
            break
    return BurstError(matrix, tuple(positions))


@dataclass
class InterleavedWord:
    """ell codewords of the same code, stacked as matrix rows."""

    code: LinearCode
    matrix: GFMatrix

    @property
    def ell(self) -> int:
        return self.matrix.nrows

    @classmethod
    def encode(cls, code: LinearCode, messages: Sequence[Sequence[int]]) -> "InterleavedWord":
        rows = [code.encode(m) for m in messages]
        return cls(code, GFMatrix(code.field, rows, code.n))

    @classmethod
    def random(cls, code: LinearCode, ell: int, rng) -> "InterleavedWord":
        q = code.field.q
        return cls.encode(code, [[rng.randrange(q) for _ in range(code.k)] for _ in range(ell)])

    def is_valid(self) -> bool:
        return all(self.code.is_codeword(row) for row in self.matrix.data)


@dataclass
class DecodeOutcome:
    status: str
    codeword: GFMatrix | None = None
    error: BurstError | None = None
    diagnostics: dict = dataclass_field(default_factory=dict)

    @property
    def success(self) -> bool:
        return self.status == STATUS_SUCCESS

    def to_json(self) -> dict:
        obj = {"status": self.status}
        obj.update(
            {k: v for k, v in self.diagnostics.items() if isinstance(v, (int, float, str, bool))}
        )
        if self.error is not None:
            obj["support"] = list(self.error.support)
        elif "support_estimate" in self.diagnostics:
            obj["support"] = list(self.diagnostics["support_estimate"])
        if self.codeword is not None:
            obj["codeword"] = self.codeword.to_json()
        if self.error is not None:
            obj["error"] = self.error.matrix.to_json()
        return obj


def is_t_plus_1_independent(parity_check: GFMatrix, positions: Sequence[int]) -> bool:
    """True iff appending any column outside ``positions`` to H_positions
    always yields rank t+1.

    Equivalent formulation used here: H_positions has full column rank t
    and no outside column lies in its span.  Any set with t <= d-2 passes;
    no set with t >= n-k can.
    """
    positions = sorted(set(positions))
    t = len(positions)
    n = parity_check.ncols
    if t + 1 > parity_check.nrows:
        # rank can never reach t+1 beyond n-k
        return False
    he = parity_check.column_select(positions)
    space = ColumnSpace(he)
    if space.dimension < t:
        return False
    inside = set(positions)
    for j in range(n):
        if j in inside:
            continue
        if space.contains(parity_check.col(j)):
            return False
    return True


def mk_decode(code: LinearCode, received: GFMatrix, subcode: LinearCode | None = None) -> DecodeOutcome:
    """Decode an interleaved word with the Metzner-Kapturowski algorithm.

    Exact whenever the true support is (t+1)-independent and the error
    matrix has full column rank (so in particular for t <= d-2 full-rank
    bursts).  A support estimate whose size disagrees with the syndrome
    rank, or exceeds n-k-1, is declared a failure outright: outside the
    guarantee there is no uniqueness to exploit.  With ``subcode`` given,
    rows of a successful result must also be subcode members; a violation
    downgrades the outcome to a detected miscorrection.
    """
    if received.field != code.field:
        raise ValueError("received word field does not match the code")
    if received.ncols != code.n:
        raise ValueError(f"received word has {received.ncols} columns, expected {code.n}")
    h = code.H
    n, k = code.n, code.k
    syndrome = h @ received.transpose()  # (n-k) x ell
    diagnostics: dict = {"decoder": "mk"}
    if syndrome.is_zero():
        outcome = DecodeOutcome(
            STATUS_SUCCESS,
            received.copy(),
            BurstError.from_matrix(GFMatrix.zeros(code.field, received.nrows, n)),
            {**diagnostics, "syndrome_rank": 0, "support_size": 0},
        )
        return _check_subcode(outcome, subcode)

    space = ColumnSpace(syndrome)
    s = space.dimension
    support = [j for j in range(n) if space.contains(h.col(j))]
    diagnostics["syndrome_rank"] = s
    diagnostics["support_size"] = len(support)
    diagnostics["support_estimate"] = tuple(support)
    if len(support) != s:
        diagnostics["reason"] = "support size does not match syndrome rank"
        return DecodeOutcome(STATUS_FAILURE, diagnostics=diagnostics)
    if len(support) > n - k - 1:
        diagnostics["reason"] = "support estimate exceeds n-k-1"
        return DecodeOutcome(STATUS_FAILURE, diagnostics=diagnostics)

    he = h.column_select(support)
    sol = solve(he, syndrome)
    if not sol.unique:
        diagnostics["reason"] = f"error values not uniquely determined ({sol.status})"
        return DecodeOutcome(STATUS_FAILURE, diagnostics=diagnostics)

    values = sol.x.transpose()  # ell x t
    if any(all(row[j] == 0 for row in values.data) for j in range(len(support))):
        diagnostics["reason"] = "solved error values vanish on part of the support"
        return DecodeOutcome(STATUS_FAILURE, diagnostics=diagnostics)
    error = GFMatrix.zeros(code.field, received.nrows, n)
    for jj, j in enumerate(support):
        for i in range(received.nrows):
            error.data[i][j] = values.data[i][jj]
    corrected = received - error
    if not (h @ corrected.transpose()).is_zero():
        diagnostics["reason"] = "corrected rows fail the parity checks"
        return DecodeOutcome(STATUS_FAILURE, diagnostics=diagnostics)
    outcome = DecodeOutcome(
        STATUS_SUCCESS, corrected, BurstError(error, tuple(support)), diagnostics
    )
    return _check_subcode(outcome, subcode)


def _check_subcode(outcome: DecodeOutcome, subcode: LinearCode | None) -> DecodeOutcome:
    if subcode is None or not outcome.success:
        return outcome
    for row in outcome.codeword.data:
        if not subcode.is_codeword(row):
            diagnostics = dict(outcome.diagnostics)
            diagnostics["reason"] = "result valid in the decoding code but not in the subcode"
            return DecodeOutcome(STATUS_MISCORRECTION_DETECTED, diagnostics=diagnostics)
    return outcome


def colspace_of_syndrome_equals_h_columns(parity_check: GFMatrix, error: GFMatrix) -> bool:
    """Diagnostic oracle: does colspace(H E^T) equal colspace(H_E)?

    True whenever the nonzero error columns are linearly independent;
    a rank-deficient error strictly shrinks the syndrome space.
    """
    burst = BurstError.from_matrix(error)
    syndrome = parity_check @ error.transpose()
    he = parity_check.column_select(burst.support)
    rank_syndrome = syndrome.rank()
    rank_he = he.rank() if burst.support else 0
    if rank_syndrome != rank_he:
        return False
    stacked = syndrome.hstack(he) if burst.support else syndrome
    return stacked.rank() == rank_syndrome
