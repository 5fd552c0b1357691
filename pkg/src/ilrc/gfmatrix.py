"""Dense exact linear algebra over finite fields.

Matrices are lists of row lists holding canonical integer
representatives.  Gaussian elimination uses first-nonzero pivoting;
there are no numerical concerns in an exact field, and a fixed pivot
rule keeps every result deterministic.  Cost is O(r * c * min(r, c)),
which is what the decoders built on top of this module advertise.

Matrices are value types: operations return fresh objects and never
mutate their inputs, so concurrent reads are safe.
"""

from __future__ import annotations

from dataclasses import dataclass

from .galois import FiniteField


class GFMatrix:
    __slots__ = ("field", "nrows", "ncols", "data")

    def __init__(self, field: FiniteField, data: list[list[int]], ncols: int | None = None):
        """Build from a list of rows; ``ncols`` is required when there are no rows."""
        self.field = field
        self.nrows = len(data)
        if self.nrows == 0:
            if ncols is None:
                raise ValueError("ncols is required for a matrix with zero rows")
            self.ncols = ncols
        else:
            self.ncols = len(data[0])
            if ncols is not None and ncols != self.ncols:
                raise ValueError("ncols disagrees with row length")
        q = field.q
        for row in data:
            if len(row) != self.ncols:
                raise ValueError("ragged rows")
            for v in row:
                if not 0 <= v < q:
                    raise ValueError(f"entry {v} outside [0, {q})")
        self.data = data

    # -- constructors ----------------------------------------------------

    @classmethod
    def zeros(cls, field: FiniteField, nrows: int, ncols: int) -> "GFMatrix":
        return cls(field, [[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> "GFMatrix":
        data = [[0] * n for _ in range(n)]
        for i in range(n):
            data[i][i] = 1
        return cls(field, data)

    @classmethod
    def from_rows(cls, field: FiniteField, rows: list[list[int]], ncols: int | None = None) -> "GFMatrix":
        return cls(field, [list(r) for r in rows], ncols)

    @classmethod
    def column_vector(cls, field: FiniteField, entries: list[int]) -> "GFMatrix":
        return cls(field, [[v] for v in entries], 1)

    @classmethod
    def random(cls, field: FiniteField, nrows: int, ncols: int, rng) -> "GFMatrix":
        q = field.q
        return cls(field, [[rng.randrange(q) for _ in range(ncols)] for _ in range(nrows)], ncols)

    def copy(self) -> "GFMatrix":
        return GFMatrix(self.field, [row[:] for row in self.data], self.ncols)

    # -- basic access ----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def at(self, i: int, j: int) -> int:
        return self.data[i][j]

    def row(self, i: int) -> list[int]:
        return list(self.data[i])

    def col(self, j: int) -> list[int]:
        return [row[j] for row in self.data]

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.data for v in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GFMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, tuple(tuple(r) for r in self.data)))

    def __repr__(self) -> str:
        return f"GFMatrix({self.field!r}, {self.nrows}x{self.ncols})"

    # -- structural operations --------------------------------------------

    def transpose(self) -> "GFMatrix":
        return GFMatrix(
            self.field,
            [[self.data[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
        )

    def hstack(self, other: "GFMatrix") -> "GFMatrix":
        self._check_field(other)
        if self.nrows != other.nrows:
            raise ValueError(f"row mismatch: {self.nrows} vs {other.nrows}")
        return GFMatrix(
            self.field,
            [self.data[i] + other.data[i] for i in range(self.nrows)],
            self.ncols + other.ncols,
        )

    def vstack(self, other: "GFMatrix") -> "GFMatrix":
        self._check_field(other)
        if self.ncols != other.ncols:
            raise ValueError(f"column mismatch: {self.ncols} vs {other.ncols}")
        return GFMatrix(self.field, [r[:] for r in self.data] + [r[:] for r in other.data], self.ncols)

    def column_select(self, indices) -> "GFMatrix":
        indices = list(indices)
        for j in indices:
            if not 0 <= j < self.ncols:
                raise IndexError(f"column {j} out of range")
        return GFMatrix(self.field, [[row[j] for j in indices] for row in self.data], len(indices))

    def row_select(self, indices) -> "GFMatrix":
        indices = list(indices)
        for i in indices:
            if not 0 <= i < self.nrows:
                raise IndexError(f"row {i} out of range")
        return GFMatrix(self.field, [list(self.data[i]) for i in indices], self.ncols)

    # -- arithmetic --------------------------------------------------------

    def _check_field(self, other: "GFMatrix") -> None:
        if self.field != other.field:
            raise ValueError(f"mixed fields: {self.field} and {other.field}")

    def __add__(self, other: "GFMatrix") -> "GFMatrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        add = self.field.add
        return GFMatrix(
            self.field,
            [[add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)],
            self.ncols,
        )

    def __sub__(self, other: "GFMatrix") -> "GFMatrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        sub = self.field.sub
        return GFMatrix(
            self.field,
            [[sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)],
            self.ncols,
        )

    def scale(self, c: int) -> "GFMatrix":
        mul = self.field.mul
        return GFMatrix(self.field, [[mul(c, v) for v in row] for row in self.data], self.ncols)

    def __matmul__(self, other: "GFMatrix") -> "GFMatrix":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise ValueError(f"inner dimension mismatch: {self.ncols} vs {other.nrows}")
        field = self.field
        mul = field.mul
        add = field.add
        bdata = other.data
        out = []
        for arow in self.data:
            acc = [0] * other.ncols
            for kk, a in enumerate(arow):
                if a == 0:
                    continue
                brow = bdata[kk]
                acc = [add(x, mul(a, b)) for x, b in zip(acc, brow)]
            out.append(acc)
        return GFMatrix(field, out, other.ncols)

    def mul_vector(self, vec: list[int]) -> list[int]:
        """Matrix times column vector, returned as a flat list."""
        if len(vec) != self.ncols:
            raise ValueError(f"vector length {len(vec)} != {self.ncols}")
        field = self.field
        mul = field.mul
        add = field.add
        out = []
        for row in self.data:
            acc = 0
            for a, v in zip(row, vec):
                if a and v:
                    acc = add(acc, mul(a, v))
            out.append(acc)
        return out

    # -- elimination -------------------------------------------------------

    def _eliminate(self, reduced: bool) -> tuple[list[list[int]], list[int]]:
        """Shared elimination core; returns (rows, pivot column indices)."""
        field = self.field
        mul = field.mul
        sub = field.sub
        inv = field.inv
        a = [row[:] for row in self.data]
        nrows, ncols = self.nrows, self.ncols
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            pr = None
            for i in range(r, nrows):
                if a[i][c] != 0:
                    pr = i
                    break
            if pr is None:
                continue
            a[r], a[pr] = a[pr], a[r]
            pv = a[r][c]
            if pv != 1:
                pinv = inv(pv)
                arow = a[r]
                for j in range(c, ncols):
                    if arow[j]:
                        arow[j] = mul(arow[j], pinv)
            prow = a[r]
            rng = range(nrows) if reduced else range(r + 1, nrows)
            for i in rng:
                if i == r:
                    continue
                f = a[i][c]
                if f:
                    irow = a[i]
                    for j in range(c, ncols):
                        if prow[j]:
                            irow[j] = sub(irow[j], mul(f, prow[j]))
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        return a, pivots

    def rank(self) -> int:
        _, pivots = self._eliminate(reduced=False)
        return len(pivots)

    def rref(self) -> tuple["GFMatrix", tuple[int, ...]]:
        """Reduced row echelon form and its pivot columns."""
        a, pivots = self._eliminate(reduced=True)
        return GFMatrix(self.field, a, self.ncols), tuple(pivots)

    def row_space_basis(self) -> "GFMatrix":
        """Nonzero rows of the RREF, a canonical basis of the row space."""
        r, pivots = self.rref()
        return GFMatrix(self.field, r.data[: len(pivots)], self.ncols)

    def kernel_basis(self) -> "GFMatrix":
        """Rows span the right null space {x : self @ x^T = 0}."""
        field = self.field
        r, pivots = self.rref()
        pivot_set = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivot_set]
        rows = []
        for f in free:
            vec = [0] * self.ncols
            vec[f] = 1
            for i, p in enumerate(pivots):
                vec[p] = field.neg(r.data[i][f])
            rows.append(vec)
        return GFMatrix(field, rows, self.ncols)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "data": [v for row in self.data for v in row],
        }

    @classmethod
    def from_json(cls, field: FiniteField, obj: dict) -> "GFMatrix":
        r, c = obj["rows"], obj["cols"]
        flat = obj["data"]
        if len(flat) != r * c:
            raise ValueError("matrix payload length does not match rows*cols")
        return cls(field, [list(flat[i * c : (i + 1) * c]) for i in range(r)], c)


@dataclass
class Solution:
    """Result of a linear solve; inconsistency is a value, not a fault."""

    status: str  # "unique" | "multiple" | "inconsistent"
    x: GFMatrix | None

    @property
    def consistent(self) -> bool:
        return self.status != "inconsistent"

    @property
    def unique(self) -> bool:
        return self.status == "unique"


def solve(a: GFMatrix, b: GFMatrix) -> Solution:
    """Solve a @ X = b; returns a particular solution and uniqueness status.

    The solution is unique exactly when ``a`` has full column rank.  With
    free columns the returned X sets them to zero.
    """
    a._check_field(b)
    if a.nrows != b.nrows:
        raise ValueError(f"row mismatch: {a.nrows} vs {b.nrows}")
    aug = a.hstack(b)
    r, pivots = aug.rref()
    na = a.ncols
    for p in pivots:
        if p >= na:
            return Solution("inconsistent", None)
    x = [[0] * b.ncols for _ in range(na)]
    for i, p in enumerate(pivots):
        x[p] = r.data[i][na:]
    status = "unique" if len(pivots) == na else "multiple"
    return Solution(status, GFMatrix(a.field, x, b.ncols))


class ColumnSpace:
    """Cached reduced basis of a matrix's column space.

    Built once, then queried many times: the generalized burst decoder
    probes all n parity-check columns against the same syndrome space,
    and each probe here is a single reduction pass instead of a fresh
    rank computation.
    """

    def __init__(self, m: GFMatrix):
        self.field = m.field
        basis, pivots = m.transpose().rref()
        self._basis = basis.data[: len(pivots)]
        self._pivots = pivots

    @property
    def dimension(self) -> int:
        return len(self._basis)

    def reduce(self, vec: list[int]) -> list[int]:
        """Residual of ``vec`` after elimination against the basis."""
        field = self.field
        mul = field.mul
        sub = field.sub
        w = list(vec)
        for brow, p in zip(self._basis, self._pivots):
            f = w[p]
            if f:
                w = [sub(x, mul(f, bx)) for x, bx in zip(w, brow)]
        return w

    def contains(self, vec: list[int]) -> bool:
        return all(v == 0 for v in self.reduce(vec))


def in_column_space(m: GFMatrix, vec: list[int]) -> bool:
    """True iff vec lies in the span of m's columns.

    Equivalent to rank([m | vec]) == rank(m).
    """
    if len(vec) != m.nrows:
        raise ValueError(f"vector length {len(vec)} != {m.nrows} rows")
    return ColumnSpace(m).contains(vec)
