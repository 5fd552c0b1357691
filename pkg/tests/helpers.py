"""Independent oracles used by the test suite.

Everything here deliberately avoids the implementation paths it checks:
polynomial arithmetic is done on coefficient lists instead of bit
masks, and matrix ranks come from a vectorized elimination over an
explicit enumeration of all matrices.
"""

from __future__ import annotations

import numpy as np


def poly_from_mask(mask: int) -> list[int]:
    return [(mask >> i) & 1 for i in range(mask.bit_length())]


def naive_gf2m_mul(a: int, b: int, poly_mask: int) -> int:
    """GF(2^m) product via coefficient-list convolution and long division."""
    pa = poly_from_mask(a) if a else [0]
    pb = poly_from_mask(b) if b else [0]
    conv = [0] * (len(pa) + len(pb) - 1)
    for i, ca in enumerate(pa):
        for j, cb in enumerate(pb):
            conv[i + j] ^= ca & cb
    mod = poly_from_mask(poly_mask)
    deg_mod = len(mod) - 1
    while len(conv) - 1 >= deg_mod and any(conv):
        while conv and conv[-1] == 0:
            conv.pop()
        if len(conv) - 1 < deg_mod:
            break
        shift = len(conv) - 1 - deg_mod
        for i, c in enumerate(mod):
            conv[shift + i] ^= c
    out = 0
    for i, c in enumerate(conv):
        out |= c << i
    return out


def naive_reducible(poly_mask: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg-1."""
    deg = poly_mask.bit_length() - 1
    if deg <= 1:
        return False
    for d in range(1, deg):
        for low in range(1 << d):
            divisor = (1 << d) | low
            rem = poly_mask
            while rem.bit_length() - 1 >= d and rem:
                rem ^= divisor << (rem.bit_length() - 1 - d)
            if rem == 0:
                return True
    return False


def _field_tables(field):
    q = field.q
    mul = np.zeros((q, q), dtype=np.uint8)
    sub = np.zeros((q, q), dtype=np.uint8)
    inv = np.zeros(q, dtype=np.uint8)
    for a in range(q):
        for b in range(q):
            mul[a, b] = field.mul(a, b)
            sub[a, b] = field.sub(a, b)
        if a:
            inv[a] = field.inv(a)
    return mul, sub, inv


def _batch_rank(mats: np.ndarray, mul, sub, inv) -> np.ndarray:
    """Ranks of a (B, r, c) stack of matrices by vectorized elimination."""
    a = mats.copy()
    nmat, nrows, ncols = a.shape
    rank = np.zeros(nmat, dtype=np.int64)
    row_index = np.arange(nrows)
    for col in range(ncols):
        active = row_index[None, :] >= rank[:, None]
        nz = (a[:, :, col] != 0) & active
        has = nz.any(axis=1)
        bidx = np.nonzero(has)[0]
        if bidx.size == 0:
            continue
        piv = np.argmax(nz[bidx], axis=1)
        target = rank[bidx]
        tmp = a[bidx, piv, :].copy()
        a[bidx, piv, :] = a[bidx, target, :]
        a[bidx, target, :] = tmp
        pivot_elem = a[bidx, target, col]
        a[bidx, target, :] = mul[a[bidx, target, :], inv[pivot_elem][:, None]]
        pivot_rows = a[bidx, target, :].copy()
        for rr in range(1, nrows):
            below = rr > target
            if not below.any():
                continue
            sel = bidx[below]
            factors = a[sel, rr, col]
            hit = factors != 0
            if not hit.any():
                continue
            sel = sel[hit]
            factors = factors[hit]
            a[sel, rr, :] = sub[a[sel, rr, :], mul[factors[:, None], pivot_rows[below][hit]]]
        rank[bidx] += 1
    return rank


def count_full_rank_enumerated(field, ell: int, t: int, chunk: int = 1 << 20) -> tuple[int, int]:
    """(full-rank count, total) over ALL ell x t matrices, by enumeration.

    Every one of the q^(ell t) matrices is materialized and eliminated;
    nothing is shared with the closed-form product this verifies.
    """
    q = field.q
    cells = ell * t
    total = q**cells
    if t == 0:
        return 1, 1
    if t > ell:
        return 0, total
    mul, sub, inv = _field_tables(field)
    count = 0
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        digits = np.empty((stop - start, cells), dtype=np.uint8)
        scale = 1
        for j in range(cells):
            digits[:, j] = (idx // scale) % q
            scale *= q
        mats = digits.reshape(-1, ell, t)
        ranks = _batch_rank(mats, mul, sub, inv)
        count += int((ranks == t).sum())
    return count, total
