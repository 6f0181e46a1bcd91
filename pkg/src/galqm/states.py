"""States (kets), outcomes (bras) and the projective space PG(N-1, q).

There is no inner product on K^N, so kets and bras are unrelated types: a
bra is never obtained from a ket by conjugation, only paired with one via
:func:`bracket`.  Vectors differing by a nonzero scalar give identical
outcome statistics and are identified; the canonical representative has its
first nonzero coordinate equal to 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .gf import FieldElement, FieldError, FieldParams


class ZeroVectorError(ValueError):
    """A physical state or outcome cannot be the zero vector."""


@dataclass(frozen=True)
class _Vector:
    coords: tuple

    def __post_init__(self):
        coords = tuple(self.coords)
        if not coords:
            raise ValueError("empty vector")
        f = coords[0].field
        if any(c.field != f for c in coords):
            raise FieldError("coordinates from different fields")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "_hash", hash((type(self).__name__, coords)))

    def __hash__(self) -> int:
        return self._hash

    @classmethod
    def of(cls, field: FieldParams, values):
        return cls(tuple(field(v) for v in values))

    @property
    def field(self) -> FieldParams:
        return self.coords[0].field

    @property
    def N(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _same_space(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.N != self.N or other.field != self.field:
            raise FieldError("dimension or field mismatch")

    def __add__(self, other):
        self._same_space(other)
        return type(self)(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same_space(other)
        return type(self)(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return type(self)(tuple(-a for a in self.coords))

    def scale(self, k) -> _Vector:
        k = self.field(k)
        return type(self)(tuple(k * a for a in self.coords))

    def __rmul__(self, k):
        if isinstance(k, (FieldElement, int)):
            return self.scale(k)
        return NotImplemented

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return self.N

    def __getitem__(self, i):
        return self.coords[i]

    def key(self) -> tuple:
        """Sort key: coordinate indices."""
        return tuple(c.index for c in self.coords)

    def labels(self) -> list:
        return [str(c) for c in self.coords]

    def __str__(self) -> str:
        return "[" + " ".join(self.labels()) + "]"


class Ket(_Vector):
    """Column vector |psi> in V = K^N."""

    def __repr__(self) -> str:
        return f"Ket{self}"


class Bra(_Vector):
    """Row vector <x| in the dual space V*."""

    def __repr__(self) -> str:
        return f"Bra{self}"


def bracket(x: Bra, psi: Ket) -> FieldElement:
    """<x|psi> = sum_i x_i psi_i, computed in K."""
    if not isinstance(x, Bra) or not isinstance(psi, Ket):
        raise TypeError("bracket pairs a Bra with a Ket")
    if x.N != psi.N or x.field != psi.field:
        raise FieldError("dimension or field mismatch")
    total = x.field.zero
    for a, b in zip(x.coords, psi.coords):
        total = total + a * b
    return total


def canonicalize(v):
    """Return the scalar multiple of ``v`` whose first nonzero coordinate is 1."""
    for c in v.coords:
        if c:
            return v.scale(c.inverse())
    raise ZeroVectorError("the zero vector has no projective class")


def same_ray(u, v) -> bool:
    """True iff u = k v for some nonzero k."""
    if u.is_zero() or v.is_zero():
        raise ZeroVectorError("zero vector")
    u._same_space(v)
    return canonicalize(u) == canonicalize(v)


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of PG(N-1, q), stored by its canonical representative."""

    representative: _Vector

    def __post_init__(self):
        object.__setattr__(self, "representative", canonicalize(self.representative))

    @property
    def field(self) -> FieldParams:
        return self.representative.field

    @property
    def N(self) -> int:
        return self.representative.N

    def __str__(self) -> str:
        return str(self.representative)


def canonical_vectors(field: FieldParams, N: int, kind=Ket) -> list:
    """Canonical representatives of PG(N-1, q) ordered by coordinate indices."""
    if N < 1:
        raise ValueError("dimension must be >= 1")
    out = []
    for flat in itertools.product(field.elements, repeat=N):
        first = next((c for c in flat if c), None)
        if first is not None and first == field.one:
            out.append(kind(flat))
    return out


def projective_points(field: FieldParams, N: int, kind=Ket) -> list:
    """All (q^N - 1)/(q - 1) points of PG(N-1, q), in deterministic order."""
    return [ProjectivePoint(v) for v in canonical_vectors(field, N, kind)]


def nonzero_vectors(field: FieldParams, N: int, kind=Ket) -> list:
    return [kind(flat) for flat in itertools.product(field.elements, repeat=N) if any(flat)]


# Names used for GF(2), N = 2.  Brackets satisfy <r~|s> = 0 iff r == s.
GF2_KET_COORDS = {"a": (1, 0), "b": (0, 1), "c": (1, 1)}
GF2_BRA_COORDS = {"a": (0, 1), "b": (1, 0), "c": (1, 1)}


def _require_gf2(field: FieldParams):
    if field.q != 2:
        raise ValueError("named states a, b, c exist only over GF(2)")


def gf2_ket(field: FieldParams, name: str) -> Ket:
    _require_gf2(field)
    return Ket.of(field, GF2_KET_COORDS[name])


def gf2_bra(field: FieldParams, name: str) -> Bra:
    _require_gf2(field)
    return Bra.of(field, GF2_BRA_COORDS[name])
