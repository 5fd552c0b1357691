"""Exact finite field arithmetic for GF(p) and GF(2^m).

Elements are plain Python integers in ``[0, q)``.  For prime fields the
integer is the residue mod p; for binary extension fields its bits are
the coefficients of a polynomial over GF(2), reduced modulo an
irreducible polynomial of degree m (also encoded as an integer bit
mask, little-endian: bit i is the coefficient of x^i).

Multiplication in GF(2^m) is shift-and-xor with on-the-fly reduction.
For m <= 16 log/antilog tables are built once per field and used as an
accelerator; the table path is bit-identical to the shift-xor path.

Default reduction polynomials (re-verified irreducible whenever a field
is constructed; all are primitive, so x generates the multiplicative
group, though table construction searches for a generator and works
with any irreducible polynomial):

    m=1  : x                      (placeholder; GF(2) is a prime field)
    m=2  : x^2+x+1                -> 0b111
    m=3  : x^3+x+1                -> 0b1011
    m=4  : x^4+x+1                -> 0x13
    m=5  : x^5+x^2+1              -> 0x25
    m=6  : x^6+x+1                -> 0x43
    m=7  : x^7+x^3+1              -> 0x89
    m=8  : x^8+x^4+x^3+x^2+1      -> 0x11D
    m=9  : x^9+x^4+1              -> 0x211
    m=10 : x^10+x^3+1             -> 0x409
    m=11 : x^11+x^2+1             -> 0x805
    m=12 : x^12+x^6+x^4+x+1       -> 0x1053
    m=13 : x^13+x^4+x^3+x+1       -> 0x201B
    m=14 : x^14+x^5+x^3+x+1       -> 0x402B
    m=15 : x^15+x+1               -> 0x8003
    m=16 : x^16+x^12+x^3+x+1      -> 0x1100B
    m=32 : x^32+x^22+x^2+x+1      -> 0x100400007
    m=64 : x^64+x^4+x^3+x+1       -> 0x1000000000000001B

Fixing the table makes serialized data portable across runs.
"""

from __future__ import annotations

from typing import Iterator

DEFAULT_GF2_POLYS: dict[int, int] = {
    1: 0b10,
    2: 0b111,
    3: 0b1011,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x89,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x402B,
    15: 0x8003,
    16: 0x1100B,
    32: 0x100400007,
    64: 0x1000000000000001B,
}

#: largest extension degree for which log/antilog tables are built
TABLE_MAX_DEGREE = 16

#: largest supported extension degree over GF(2)
MAX_DEGREE = 64

#: prime fields are restricted to p below this bound
MAX_PRIME = 1 << 31

# degree at or below which irreducibility is checked by exhaustive trial
# division; above it the deterministic Rabin test is used instead
_TRIAL_DIVISION_MAX_DEGREE = 20

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ----------------------------------------------------------------------
# polynomial-over-GF(2) helpers on integer bit masks
# ----------------------------------------------------------------------

def gf2_poly_degree(mask: int) -> int:
    return mask.bit_length() - 1


def gf2_poly_mul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def gf2_poly_mod(a: int, mod: int) -> int:
    dm = gf2_poly_degree(mod)
    da = gf2_poly_degree(a)
    while da >= dm:
        a ^= mod << (da - dm)
        da = gf2_poly_degree(a)
    return a


def gf2_poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, gf2_poly_mod(a, b)
    return a


def _gf2_poly_mulmod(a: int, b: int, mod: int) -> int:
    return gf2_poly_mod(gf2_poly_mul(a, b), mod)


def _rabin_irreducible(poly: int) -> bool:
    # poly is irreducible of degree m over GF(2) iff x^(2^m) = x mod poly
    # and gcd(x^(2^(m/p)) - x, poly) = 1 for every prime p dividing m
    m = gf2_poly_degree(poly)
    if poly & 1 == 0:  # divisible by x
        return m == 1
    prime_divisors = []
    mm, d = m, 2
    while d * d <= mm:
        if mm % d == 0:
            prime_divisors.append(d)
            while mm % d == 0:
                mm //= d
        d += 1
    if mm > 1:
        prime_divisors.append(mm)
    checkpoints = {m // p for p in prime_divisors}
    h = 2  # the polynomial x
    for i in range(1, m + 1):
        h = _gf2_poly_mulmod(h, h, poly)
        if i in checkpoints:
            if gf2_poly_gcd(h ^ 2, poly) != 1:
                return False
    return h == 2


def is_irreducible_gf2(poly: int) -> bool:
    """Exact irreducibility test for a GF(2)[x] polynomial bit mask.

    Trial division against every monic polynomial of degree <= m/2 for
    small degrees; the deterministic Rabin criterion for larger ones
    (trial division at m=64 would need 2^32 candidate divisors).
    """
    deg = gf2_poly_degree(poly)
    if deg <= 0:
        return False
    if deg == 1:
        return True
    if deg > _TRIAL_DIVISION_MAX_DEGREE:
        return _rabin_irreducible(poly)
    for d in range(1, deg // 2 + 1):
        for low in range(1 << d):
            divisor = (1 << d) | low
            if gf2_poly_mod(poly, divisor) == 0:
                return False
    return True


# ----------------------------------------------------------------------
# fields
# ----------------------------------------------------------------------

class FiniteField:
    """Arithmetic context for GF(p) (p < 2^31) or GF(2^m) (m <= 64).

    Immutable after construction; all operations are pure functions on
    canonical integer representatives, so instances can be shared freely
    across threads.
    """

    def __init__(self, p: int, m: int = 1, poly: int | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        if m == 1:
            if p >= MAX_PRIME:
                raise ValueError(f"prime field size {p} exceeds 2^31")
            poly = DEFAULT_GF2_POLYS[1] if p == 2 else None
        else:
            if p != 2:
                raise ValueError("extension fields are supported only in characteristic 2")
            if m > MAX_DEGREE:
                raise ValueError(f"extension degree {m} exceeds {MAX_DEGREE}")
            if poly is None:
                if m not in DEFAULT_GF2_POLYS:
                    raise ValueError(
                        f"no default reduction polynomial for m={m}; pass one explicitly"
                    )
                poly = DEFAULT_GF2_POLYS[m]
            if gf2_poly_degree(poly) != m:
                raise ValueError(
                    f"reduction polynomial has degree {gf2_poly_degree(poly)}, expected {m}"
                )
            if not is_irreducible_gf2(poly):
                raise ValueError(f"reduction polynomial {poly:#x} is reducible over GF(2)")
        self.p = p
        self.m = m
        self.poly = poly
        self.q = p ** m
        self._top_bit = 1 << m
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if p == 2 and 1 < m <= TABLE_MAX_DEGREE:
            self._build_tables()

    # -- construction helpers ------------------------------------------

    def _build_tables(self) -> None:
        q = self.q
        g = self.generator()
        exp = [0] * (2 * q - 2)
        log = [0] * q
        val = 1
        for i in range(q - 1):
            exp[i] = val
            exp[i + q - 1] = val
            log[val] = i
            val = self._mul_raw(val, g)
        if val != 1:
            raise AssertionError("generator did not cycle back to 1")
        self._exp = exp
        self._log = log

    def generator(self) -> int:
        """Smallest element generating the multiplicative group."""
        if self.q == 2:
            return 1
        factors = _factorize(self.q - 1)
        for g in range(2, self.q):
            if all(self.pow(g, (self.q - 1) // f) != 1 for f in factors):
                return g
        raise AssertionError("no generator found; field construction is broken")

    # -- scalar arithmetic ---------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return (-a) % self.p

    def _mul_raw(self, a: int, b: int) -> int:
        """Shift-xor multiplication, independent of the log tables."""
        if self.m == 1:
            return a * b % self.p
        poly = self.poly
        top = self._top_bit
        result = 0
        while b:
            if b & 1:
                result ^= a
            a <<= 1
            if a & top:
                a ^= poly
            b >>= 1
        return result

    def mul(self, a: int, b: int) -> int:
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        if self._exp is not None:
            return self._exp[self.q - 1 - self._log[a]]
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero has no multiplicative inverse")
            return 1 if e == 0 else 0
        e %= self.q - 1
        if self._exp is not None:
            return self._exp[self._log[a] * e % (self.q - 1)]
        if self.m == 1:
            return pow(a, e, self.p)
        result = 1
        base = a
        while e:
            if e & 1:
                result = self._mul_raw(result, base)
            base = self._mul_raw(base, base)
            e >>= 1
        return result

    def poly_eval(self, coeffs: list[int], x: int) -> int:
        """Evaluate sum(coeffs[i] * x^i) by Horner's rule."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    # -- elements -------------------------------------------------------

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    def nonzero_elements(self) -> Iterator[int]:
        return iter(range(1, self.q))

    def random_element(self, rng) -> int:
        return rng.randrange(self.q)

    def random_nonzero(self, rng) -> int:
        return rng.randrange(1, self.q)

    # -- identity and serialization --------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteField):
            return NotImplemented
        return (self.p, self.m, self.poly) == (other.p, other.m, other.poly)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.poly))

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "poly": self.poly}

    @staticmethod
    def from_json(obj: dict) -> "FiniteField":
        return get_field(obj["p"], obj["m"], obj.get("poly"))


_FIELD_CACHE: dict[tuple, FiniteField] = {}


def get_field(p: int, m: int = 1, poly: int | None = None) -> FiniteField:
    """Shared, cached field instances (table construction is not free)."""
    key = (p, m, poly)
    field = _FIELD_CACHE.get(key)
    if field is None:
        field = FiniteField(p, m, poly)
        _FIELD_CACHE[key] = field
        _FIELD_CACHE.setdefault((p, m, field.poly), field)
    return field


def _factorize(n: int) -> list[int]:
    """Distinct prime factors by trial division (n up to 2^64 - 1)."""
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append(n)
    return factors


class FieldElement:
    """A field element bound to its owning field.

    Thin operator-overloading wrapper around the integer representation;
    bulk code (matrices, codes) works on raw integers for speed.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        if not 0 <= value < field.q:
            raise ValueError(f"value {value} outside [0, {field.q})")
        self.field = field
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"mixed fields: {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return other % self.field.q if self.field.m == 1 else other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(v, self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.value, v))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(v, self.value))

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __bool__(self) -> bool:
        return bool(self.value)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value}"
