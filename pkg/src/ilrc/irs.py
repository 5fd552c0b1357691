"""Collaborative decoding of interleaved Reed-Solomon words, and
supercode decoding of interleaved Tamo-Barg codes.

All ell rows of a burst-corrupted interleaved RS word share one set of
error positions, so their key equations can be stacked and solved for a
single monic error-locator polynomial

    L(x) = prod_{j in E} (x - a_j),

whose coefficients satisfy, for every row and every shift s,

    sum_{m=0}^{t} L_m T_{s+m} = 0,

where T_s are the weighted power-sum syndromes of that row (weights are
the dual column multipliers, so codewords have all-zero syndromes; the
monic form keeps the equations valid even when 0 is an evaluation
point).  The joint system has ell(n-k-t) equations for t unknowns,
which pushes the decoding radius from floor((d-1)/2) up to

    t_max = floor(ell (d-1) / (ell+1)).

The search ascends t = 1..t_max and accepts the first t whose system
has a unique solution with exactly t roots among the evaluation points
and erasure-consistent rows; no such t is a decoding failure.  Beyond
half the minimum distance a returned codeword can still differ from
the transmitted one (miscorrection); callers measure that, the decoder
does not pretend to prevent it.
"""

from __future__ import annotations

from .codecore import LinearCode, ReedSolomonCode
from .gfmatrix import GFMatrix, solve
from .interleaved import (
    STATUS_FAILURE,
    STATUS_SUCCESS,
    BurstError,
    DecodeOutcome,
    _check_subcode,
)
from .lrc import TamoBargCode


def t_max(ell: int, d: int) -> int:
    """Joint decoding radius floor(ell (d-1) / (ell+1))."""
    if ell < 1:
        raise ValueError("interleaving order must be >= 1")
    if d < 1:
        raise ValueError("distance must be >= 1")
    return ell * (d - 1) // (ell + 1)


def joint_key_equation_system(
    code: ReedSolomonCode, syndromes: list[list[int]], t: int
) -> tuple[GFMatrix, GFMatrix]:
    """Stack every row's key equations for a degree-t monic locator.

    Returns (A, b) with one equation per row and shift:
    A[(row, s), m] = T_{s+m} and b = -T_{s+t}, so A x = b is solved for
    the low-order locator coefficients.  ell (n - k - t) equations in t
    unknowns; the overdetermination is what makes joint decoding beat
    the per-word radius.
    """
    field = code.field
    rows = []
    rhs = []
    shifts = code.n - code.k - t
    for srow in syndromes:
        for s in range(shifts):
            rows.append(srow[s : s + t])
            rhs.append([field.neg(srow[s + t])])
    return GFMatrix(field, rows, t), GFMatrix(field, rhs, 1)


def rs_syndromes(code: ReedSolomonCode, word) -> list[int]:
    """Weighted power sums T_s = sum_j w_j u_j a_j^s for s < n - k.

    Zero for every codeword; depends only on the error for corrupted ones.
    """
    field = code.field
    mul = field.mul
    add = field.add
    u = code.dual_column_multipliers()
    weighted = [mul(w, uj) for w, uj in zip(word, u)]
    out = []
    powers = [1] * code.n
    points = code.points
    for _ in range(code.n - code.k):
        acc = 0
        for wv, pw in zip(weighted, powers):
            if wv and pw:
                acc = add(acc, mul(wv, pw))
        out.append(acc)
        powers = [mul(p, a) for p, a in zip(powers, points)]
    return out


def irs_decode(
    code: ReedSolomonCode,
    received: GFMatrix,
    max_errors: int | None = None,
    subcode: LinearCode | None = None,
) -> DecodeOutcome:
    """Joint unique decoding of an ell x n received matrix.

    Decodes up to ``max_errors`` (default: the joint radius for the
    received interleaving order).  For weights up to floor((d-1)/2) the
    output provably coincides with row-by-row bounded-distance decoding.
    With ``subcode`` set, successful rows must additionally be subcode
    members, otherwise the outcome is a detected miscorrection.
    """
    if received.field != code.field:
        raise ValueError("received word field does not match the code")
    if received.ncols != code.n:
        raise ValueError(f"received word has {received.ncols} columns, expected {code.n}")
    ell = received.nrows
    d = code.distance
    limit = t_max(ell, d) if max_errors is None else max_errors
    field = code.field
    n, k = code.n, code.k
    diagnostics: dict = {"decoder": "irs", "t_max": limit}

    synd = [rs_syndromes(code, row) for row in received.data]
    if all(v == 0 for row in synd for v in row):
        zero = GFMatrix.zeros(field, ell, n)
        outcome = DecodeOutcome(
            STATUS_SUCCESS, received.copy(), BurstError.from_matrix(zero), {**diagnostics, "t": 0}
        )
        return _check_subcode(outcome, subcode)

    for t in range(1, limit + 1):
        if n - k - t <= 0:
            break
        system, rhs = joint_key_equation_system(code, synd, t)
        sol = solve(system, rhs)
        if not sol.unique:
            continue
        locator = [sol.x.data[m][0] for m in range(t)] + [1]  # monic, low degree first
        positions = [j for j, a in enumerate(code.points) if field.poly_eval(locator, a) == 0]
        if len(positions) != t:
            continue
        corrected_rows = []
        for row in received.data:
            res = code.erasure_decode(row, positions)
            if not res.ok:
                break
            corrected_rows.append(res.codeword)
        else:
            corrected = GFMatrix(field, corrected_rows, n)
            error = BurstError.from_matrix(received - corrected)
            outcome = DecodeOutcome(
                STATUS_SUCCESS, corrected, error, {**diagnostics, "t": t}
            )
            return _check_subcode(outcome, subcode)
    diagnostics["reason"] = "no error weight admits a unique consistent locator"
    return DecodeOutcome(STATUS_FAILURE, diagnostics=diagnostics)


def bmd_decode(code: ReedSolomonCode, word) -> DecodeOutcome:
    """Bounded-minimum-distance decoding of a single word: the ell = 1
    special case capped at floor((d-1)/2)."""
    row = GFMatrix(code.field, [list(word)], code.n)
    return irs_decode(code, row, max_errors=(code.distance - 1) // 2)


def decode_rows_independently(
    code: ReedSolomonCode,
    received: GFMatrix,
    subcode: LinearCode | None = None,
) -> DecodeOutcome:
    """Row-by-row bounded-distance decoding of an interleaved word.

    Succeeds only when every row decodes; the burst structure is ignored,
    so this is the baseline the joint decoder is measured against.
    """
    corrected_rows = []
    for i, row in enumerate(received.data):
        out = bmd_decode(code, row)
        if not out.success:
            return DecodeOutcome(
                STATUS_FAILURE,
                diagnostics={"decoder": "bmd-per-row", "reason": f"row {i} failed", "row": i},
            )
        corrected_rows.append(out.codeword.data[0])
    corrected = GFMatrix(code.field, corrected_rows, code.n)
    error = BurstError.from_matrix(received - corrected)
    outcome = DecodeOutcome(
        STATUS_SUCCESS, corrected, error, {"decoder": "bmd-per-row"}
    )
    return _check_subcode(outcome, subcode)


def decode_lrc_via_supercode(code: TamoBargCode, received: GFMatrix) -> DecodeOutcome:
    """Decode an interleaved Tamo-Barg word with the supercode's joint decoder.

    The supercode has the same minimum distance, so the full joint radius
    applies; any successful result that leaves the subcode is reported as
    a detected miscorrection, moving probability mass from undetected
    errors to failures without changing their sum.
    """
    return irs_decode(code.supercode, received, subcode=code)
