"""Linear codes and Reed-Solomon codes over finite fields.

A :class:`LinearCode` is an [n, k] code given by a generator matrix G
(k x n) and parity-check matrix H ((n-k) x n) with G H^T = 0.  Parity
checks are always derived as a kernel basis of the generator (and vice
versa) rather than assumed systematic, because puncturing and
restriction destroy systematic form.

Minimum distances come in three flavours:

* exhaustive codeword enumeration, exact when q^k fits the budget;
* a sampled weight bound, clearly flagged as not exact;
* an exact rank-witness search over zero-sets, independent of codeword
  enumeration and feasible for short codes even over large fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .galois import FiniteField
from .gfmatrix import GFMatrix, solve

DEFAULT_DISTANCE_BUDGET = 2_000_000


@dataclass
class MinDistance:
    """A minimum-distance value; ``exact=False`` marks a sampled bound.

    A sampled value is the smallest weight observed among random nonzero
    codewords, hence an upper bound on the true minimum distance.
    """

    value: int
    exact: bool


@dataclass
class ErasureDecodeResult:
    status: str  # "unique" | "ambiguous" | "inconsistent"
    codeword: list[int] | None

    @property
    def ok(self) -> bool:
        return self.status == "unique"


class LinearCode:
    """An [n, k] linear code with optional locality partition."""

    def __init__(
        self,
        field: FiniteField,
        generator: GFMatrix,
        parity_check: GFMatrix | None = None,
        locality=None,
    ):
        if generator.field != field:
            raise ValueError("generator field does not match")
        self.field = field
        self.n = generator.ncols
        self.k = generator.nrows
        if generator.rank() != self.k:
            raise ValueError("generator rows are linearly dependent")
        self.G = generator
        self.H = parity_check if parity_check is not None else generator.kernel_basis()
        if self.H.ncols != self.n or self.H.nrows != self.n - self.k:
            raise ValueError("parity-check matrix has wrong shape")
        if self.n > self.k:
            if self.H.rank() != self.n - self.k:
                raise ValueError("parity-check rows are linearly dependent")
        if not (self.G @ self.H.transpose()).is_zero():
            raise ValueError("generator and parity-check are not orthogonal")
        self.locality = locality
        self._d: int | None = None

    # -- basics -----------------------------------------------------------

    @classmethod
    def from_parity_check(cls, field: FiniteField, parity_check: GFMatrix, locality=None) -> "LinearCode":
        return cls(field, parity_check.kernel_basis(), parity_check, locality)

    @property
    def distance(self) -> int | None:
        """Cached exact minimum distance, if one has been established."""
        return self._d

    def encode(self, message: Sequence[int]) -> list[int]:
        if len(message) != self.k:
            raise ValueError(f"message length {len(message)} != k={self.k}")
        field = self.field
        mul = field.mul
        add = field.add
        out = [0] * self.n
        for m, grow in zip(message, self.G.data):
            if m == 0:
                continue
            out = [add(o, mul(m, g)) for o, g in zip(out, grow)]
        return out

    def syndrome(self, word: Sequence[int]) -> list[int]:
        if len(word) != self.n:
            raise ValueError(f"word length {len(word)} != n={self.n}")
        return self.H.mul_vector(list(word))

    def is_codeword(self, word: Sequence[int]) -> bool:
        return all(v == 0 for v in self.syndrome(word))

    def random_codeword(self, rng) -> list[int]:
        return self.encode([rng.randrange(self.field.q) for _ in range(self.k)])

    def codewords(self) -> Iterator[list[int]]:
        """All codewords, message-lexicographic.  Only for small q^k."""
        q = self.field.q
        msg = [0] * self.k
        while True:
            yield self.encode(msg)
            i = self.k - 1
            while i >= 0:
                msg[i] += 1
                if msg[i] < q:
                    break
                msg[i] = 0
                i -= 1
            if i < 0:
                return

    def systematic_form(self) -> tuple[GFMatrix, tuple[int, ...]]:
        """Row-equivalent generator in RREF and its information positions."""
        r, pivots = self.G.rref()
        return r, pivots

    # -- distance ----------------------------------------------------------

    def min_distance_exhaustive(
        self,
        budget: int = DEFAULT_DISTANCE_BUDGET,
        rng=None,
        samples: int = 20_000,
    ) -> MinDistance:
        """Exact minimum weight when q^k <= budget, else a flagged sample bound."""
        if self.k == 0:
            return MinDistance(self.n + 1, True)
        if self.field.q ** self.k <= budget:
            best = self.n + 1
            for cw in self.codewords():
                w = sum(1 for v in cw if v)
                if 0 < w < best:
                    best = w
            self._d = best
            return MinDistance(best, True)
        if rng is None:
            import random

            rng = random.Random(0)
        best = self.n + 1
        q = self.field.q
        for _ in range(samples):
            msg = [rng.randrange(q) for _ in range(self.k)]
            if all(v == 0 for v in msg):
                msg[rng.randrange(self.k)] = rng.randrange(1, q)
            w = sum(1 for v in self.encode(msg) if v)
            best = min(best, w)
        return MinDistance(best, False)

    def min_distance_rank_search(self, recompute: bool = False) -> int:
        """Exact minimum distance via zero-set rank witnesses.

        A nonzero codeword of weight <= w exists iff some (n-w)-subset of
        generator columns has rank < k, so the distance is the smallest w
        with such a witness.  Never enumerates codewords; practical for
        short codes over arbitrary fields.  ``recompute`` ignores any
        cached value and re-derives it from scratch.
        """
        if self._d is not None and not recompute:
            return self._d
        if self.k == 0:
            return self.n + 1
        n, k = self.n, self.k
        g = self.G
        for w in range(1, n - k + 2):
            size = n - w
            if size < k:
                self._d = w
                return w
            for zeros in combinations(range(n), size):
                if g.column_select(zeros).rank() < k:
                    self._d = w
                    return w
        raise AssertionError("distance search failed to terminate")

    # -- derived codes -------------------------------------------------------

    def restrict(self, positions: Sequence[int]) -> "LinearCode":
        """The code seen through the given positions (in the given order).

        Dimension is recomputed: restriction can collapse generator rows.
        """
        sub = self.G.column_select(positions)
        basis = sub.row_space_basis()
        return LinearCode(self.field, basis)

    def puncture(self, positions: Sequence[int]) -> "LinearCode":
        pos = set(positions)
        for p in pos:
            if not 0 <= p < self.n:
                raise IndexError(f"position {p} out of range")
        if not pos:
            return LinearCode(self.field, self.G.copy(), self.H.copy(), self.locality)
        keep = [j for j in range(self.n) if j not in pos]
        return self.restrict(keep)

    def shorten(self, positions: Sequence[int]) -> "LinearCode":
        """Codewords vanishing on ``positions``, with those columns removed."""
        pos = sorted(set(positions))
        for p in pos:
            if not 0 <= p < self.n:
                raise IndexError(f"position {p} out of range")
        if not pos:
            return LinearCode(self.field, self.G.copy(), self.H.copy(), self.locality)
        gp = self.G.column_select(pos)
        left = gp.transpose().kernel_basis()  # messages whose codewords vanish on pos
        if left.nrows == 0:
            raise ValueError("shortening leaves only the zero code")
        keep = [j for j in range(self.n) if j not in set(pos)]
        newg = (left @ self.G).column_select(keep)
        return LinearCode(self.field, newg.row_space_basis())

    # -- erasures and information sets ----------------------------------------

    def erasure_decode(self, word: Sequence[int], erased: Sequence[int]) -> ErasureDecodeResult:
        """Fill in erased positions; entries of ``word`` at erased positions are ignored.

        Unique exactly when the parity-check columns at the erasures have
        full column rank.  Ambiguity (several fills) and inconsistency
        (no fill) are distinct statuses; both are reported, not raised.
        """
        erased = sorted(set(erased))
        for e in erased:
            if not 0 <= e < self.n:
                raise IndexError(f"erasure {e} out of range")
        w0 = list(word)
        for e in erased:
            w0[e] = 0
        synd = self.syndrome(w0)
        if not erased:
            if all(v == 0 for v in synd):
                return ErasureDecodeResult("unique", w0)
            return ErasureDecodeResult("inconsistent", None)
        he = self.H.column_select(erased)
        sol = solve(he, GFMatrix.column_vector(self.field, synd))
        if not sol.consistent:
            return ErasureDecodeResult("inconsistent", None)
        values = [sol.x.data[i][0] for i in range(len(erased))]
        cw = w0[:]
        for e, v in zip(erased, values):
            cw[e] = self.field.neg(v)
        if not sol.unique:
            return ErasureDecodeResult("ambiguous", cw)
        return ErasureDecodeResult("unique", cw)

    def is_information_set(self, positions: Sequence[int]) -> bool:
        positions = list(positions)
        if len(positions) != self.k:
            raise ValueError(f"expected {self.k} positions, got {len(positions)}")
        return self.G.column_select(positions).rank() == self.k

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        obj = {
            "field": self.field.to_json(),
            "n": self.n,
            "k": self.k,
            "generator": self.G.to_json(),
        }
        if self.locality is not None:
            obj["locality"] = self.locality.to_json()
        if self._d is not None:
            obj["distance"] = self._d
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "LinearCode":
        from .lrc import LocalityPartition

        field = FiniteField.from_json(obj["field"])
        g = GFMatrix.from_json(field, obj["generator"])
        locality = None
        if obj.get("locality"):
            locality = LocalityPartition.from_json(obj["locality"])
        code = cls(field, g, locality=locality)
        if "distance" in obj:
            code._d = obj["distance"]
        return code

    def __repr__(self) -> str:
        return f"LinearCode[{self.n},{self.k}] over {self.field!r}"


class ReedSolomonCode(LinearCode):
    """Evaluation-style Reed-Solomon code on distinct points.

    Codewords are evaluations of polynomials of degree < k; the message
    vector holds the coefficients, lowest degree first.  MDS by
    construction: d = n - k + 1.
    """

    def __init__(self, field: FiniteField, points: Sequence[int], k: int):
        points = list(points)
        n = len(points)
        if len(set(points)) != n:
            raise ValueError("evaluation points must be distinct")
        if not 1 <= k <= n:
            raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
        if n > field.q:
            raise ValueError(f"n={n} exceeds field size {field.q}")
        for x in points:
            if not 0 <= x < field.q:
                raise ValueError(f"point {x} outside field")
        g = GFMatrix(
            field,
            [[field.pow(x, i) for x in points] for i in range(k)],
            n,
        )
        super().__init__(field, g)
        self.points = points
        self._d = n - k + 1
        self._dual_multipliers: list[int] | None = None

    def dual_column_multipliers(self) -> list[int]:
        """Column multipliers u_j = prod_{i != j} (a_j - a_i)^(-1).

        The weighted power sums sum_j w_j u_j a_j^s (s < n-k) vanish on
        every codeword, which is the syndrome map used by the joint
        key-equation decoder.
        """
        if self._dual_multipliers is None:
            field = self.field
            out = []
            for j, aj in enumerate(self.points):
                prod = 1
                for i, ai in enumerate(self.points):
                    if i != j:
                        prod = field.mul(prod, field.sub(aj, ai))
                out.append(field.inv(prod))
            self._dual_multipliers = out
        return self._dual_multipliers

    def to_json(self) -> dict:
        obj = super().to_json()
        obj["kind"] = "rs"
        obj["points"] = list(self.points)
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "ReedSolomonCode":
        field = FiniteField.from_json(obj["field"])
        return cls(field, obj["points"], obj["k"])

    def __repr__(self) -> str:
        return f"ReedSolomonCode[{self.n},{self.k},{self._d}] over {self.field!r}"


def exhaustive_weight_distribution(code: LinearCode) -> list[int]:
    """Counts of codewords by Hamming weight; only for small q^k."""
    dist = [0] * (code.n + 1)
    for cw in code.codewords():
        dist[sum(1 for v in cw if v)] += 1
    return dist
