"""Exact arithmetic in GF(p^n).

Elements are coefficient vectors of polynomials of degree < n over Z_p,
stored in ascending degree, and reduced modulo a fixed monic irreducible
polynomial.  Fields are built by :func:`make_field`, which always picks the
same modulus for a given ``(p, n)`` so that every run labels elements the
same way.

Textual forms: prime-field elements print as integers (``"2"``), extension
field elements as polynomials in the generator ``t`` (``"t+1"``).  A field
prints as ``"GF(p^n)/modulus"`` with the modulus written in ``x``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

MAX_PRIME = 100


class FieldError(ValueError):
    """Bad field parameters or mixing elements of different fields."""


class NotPrimeError(FieldError):
    pass


def is_prime(p: int) -> bool:
    """Trial division; fine for the small characteristics used here."""
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# --- polynomials over Z_p as coefficient tuples, ascending degree ----------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mod(a, m, p):
    """Remainder of ``a`` divided by the monic polynomial ``m`` over Z_p."""
    a = [x % p for x in a]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        f = a[i]
        if f:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - f * m[j]) % p
    return _trim(a[:dm]) if dm else ()


def poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def monic_polys(p: int, d: int):
    """All monic polynomials of degree ``d``; lower coefficients vary lexicographically."""
    for low in itertools.product(range(p), repeat=d):
        yield tuple(low) + (1,)


def is_irreducible(poly, p: int) -> bool:
    """Decide irreducibility of a monic polynomial over Z_p by trial division.

    ``poly`` is a coefficient sequence in ascending degree.  Every monic
    candidate factor of degree 1..deg/2 is tried.
    """
    poly = _trim(int(c) % p for c in poly)
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    deg = len(poly) - 1
    if deg < 1:
        raise FieldError("irreducibility needs degree >= 1")
    if poly[-1] != 1:
        raise FieldError("polynomial must be monic")
    for d in range(1, deg // 2 + 1):
        for f in monic_polys(p, d):
            if not poly_mod(poly, f, p):
                return False
    return True


def format_poly(c, var: str = "x") -> str:
    c = _trim(c)
    if not c:
        return "0"
    terms = []
    for k in range(len(c) - 1, -1, -1):
        a = c[k]
        if not a:
            continue
        if k == 0:
            terms.append(str(a))
            continue
        mono = var if k == 1 else f"{var}^{k}"
        terms.append(mono if a == 1 else f"{a}{mono}")
    return "+".join(terms)


_TERM = re.compile(r"^(\d*)(?:([a-z])(?:\^(\d+))?)?$")


def parse_poly(text: str, p: int):
    """Inverse of :func:`format_poly` (any single-letter variable)."""
    text = text.replace(" ", "")
    if not text:
        raise FieldError("empty polynomial")
    coeffs: dict[int, int] = {}
    for term in text.split("+"):
        m = _TERM.match(term)
        if not m or term == "":
            raise FieldError(f"cannot parse term {term!r}")
        num, var, exp = m.groups()
        if var is None:
            k, a = 0, int(num)
        else:
            k = int(exp) if exp else 1
            a = int(num) if num else 1
        coeffs[k] = (coeffs.get(k, 0) + a) % p
    deg = max(coeffs)
    return _trim(coeffs.get(k, 0) for k in range(deg + 1))


# --- fields ----------------------------------------------------------------

@dataclass(frozen=True)
class FieldParams:
    """The field GF(p^n) = Z_p[t] / (modulus)."""

    p: int
    n: int
    modulus: tuple  # monic, ascending degree, length n + 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrimeError(f"{self.p} is not prime")
        if self.n < 1:
            raise FieldError("extension degree must be >= 1")
        m = tuple(self.modulus)
        if len(m) != self.n + 1 or m[-1] != 1 or not is_irreducible(m, self.p):
            raise FieldError(f"modulus {m} is not monic irreducible of degree {self.n}")

    @property
    def q(self) -> int:
        return self.p ** self.n

    @property
    def is_prime_field(self) -> bool:
        return self.n == 1

    def __str__(self) -> str:
        return f"GF({self.p}^{self.n})/{format_poly(self.modulus)}"

    def __repr__(self) -> str:
        return f"FieldParams({self})"

    # element constructors

    def __call__(self, value) -> FieldElement:
        """Coerce an int (index or prime-field residue), string or coefficient list."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, str):
            if self.n == 1:
                return self.from_index(int(value.strip()) % self.p)
            c = parse_poly(value, self.p)
            if len(c) > self.n:
                raise FieldError(f"{value!r} has degree >= {self.n}")
            return self.from_coeffs(c)
        if isinstance(value, int):
            if self.n == 1:
                return self.from_index(value % self.p)
            return self.from_index(value)
        return self.from_coeffs(value)

    def from_coeffs(self, coeffs) -> FieldElement:
        c = [int(x) % self.p for x in coeffs]
        if len(c) > self.n:
            raise FieldError("too many coefficients")
        return FieldElement(tuple(c + [0] * (self.n - len(c))), self)

    def from_index(self, k: int) -> FieldElement:
        """Element whose base-p digits (least significant first) are its coefficients."""
        if not 0 <= k < self.q:
            raise FieldError(f"index {k} out of range for q={self.q}")
        c = []
        for _ in range(self.n):
            k, r = divmod(k, self.p)
            c.append(r)
        return FieldElement(tuple(c), self)

    @property
    def zero(self) -> FieldElement:
        return self.from_index(0)

    @property
    def one(self) -> FieldElement:
        return self.from_index(1)

    @cached_property
    def elements(self) -> tuple:
        return tuple(self.from_index(k) for k in range(self.q))

    @cached_property
    def nonzero(self) -> tuple:
        return self.elements[1:]


@lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> FieldParams:
    """GF(p^n) with the smallest monic irreducible modulus.

    Candidates are compared by their coefficient lists, lowest degree first.
    For n = 1 the modulus is ``x`` and arithmetic is plain mod-p.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p > MAX_PRIME:
        raise FieldError(f"characteristic {p} exceeds supported bound {MAX_PRIME}")
    if not isinstance(n, int) or n < 1:
        raise FieldError("extension degree must be a positive integer")
    for m in monic_polys(p, n):
        if is_irreducible(m, p):
            return FieldParams(p, n, m)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def enumerate_elements(field: FieldParams) -> list:
    """All q elements, zero first, ordered by index (base-p digits, high degree most significant)."""
    return list(field.elements)


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple
    field: FieldParams

    def _check(self, other) -> FieldElement:
        if isinstance(other, int):
            return self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise FieldError("elements from different fields")
        return other

    @property
    def index(self) -> int:
        k = 0
        for c in reversed(self.coeffs):
            k = k * self.field.p + c
        return k

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __lt__(self, other: FieldElement) -> bool:
        return self.index < other.index

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)), self.field)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(tuple((-a) % p for a in self.coeffs), self.field)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        f = self.field
        return f.from_index(_mul_table(f)[self.index][other.index])

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if not self:
            raise ZeroDivisionError("zero has no inverse in a field")
        f = self.field
        return f.from_index(_inv_table(f)[self.index])

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one
        for _ in range(e):
            out = out * self
        return out

    def __hash__(self) -> int:
        return hash((self.coeffs, self.field.p))

    def __str__(self) -> str:
        if self.field.n == 1:
            return str(self.coeffs[0])
        return format_poly(self.coeffs, "t")

    def __repr__(self) -> str:
        return f"<{self} in GF({self.field.q})>"


@lru_cache(maxsize=None)
def _mul_table(field: FieldParams):
    # built from the polynomial product, then reused
    els = [e.coeffs for e in field.elements]
    table = []
    for a in els:
        row = []
        for b in els:
            r = poly_mod(poly_mul(_trim(a), _trim(b), field.p), field.modulus, field.p)
            row.append(field.from_coeffs(r).index)
        table.append(tuple(row))
    return tuple(table)


@lru_cache(maxsize=None)
def _inv_table(field: FieldParams):
    mt = _mul_table(field)
    inv = [None] * field.q
    for a in range(1, field.q):
        for b in range(1, field.q):
            if mt[a][b] == 1:
                inv[a] = b
                break
    return tuple(inv)


# --- functional surface ----------------------------------------------------

def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def neg(a: FieldElement) -> FieldElement:
    return -a


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def abs_val(a: FieldElement) -> int:
    """0 for the zero element, 1 for everything else (multiplicative)."""
    return 1 if a else 0


def primitive_element(field: FieldParams) -> FieldElement:
    """Smallest-index generator of the multiplicative group."""
    order = field.q - 1
    for g in field.nonzero:
        x, k = g, 1
        while x != field.one:
            x, k = x * g, k + 1
        if k == order:
            return g
    raise AssertionError("multiplicative group is cyclic")  # unreachable
