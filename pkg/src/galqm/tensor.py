"""Two-particle states on V (x) V, product observables and joint tables.

Coordinates of a two-party state are stored flat with index ``i*N + j``
for the basis vector e_i (x) e_j, so the state is equally an N x N matrix M
with M[i][j] = coordinate i*N + j.  Product states are exactly the rank-1
matrices, and a local map (g1, g2) acts as M -> g1 M g2^T.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .gf import FieldParams
from .linalg import det, gl_generators, general_linear_group, identity, rank
from .observables import Observable, is_basis, outcome_probabilities
from .states import (
    Bra,
    Ket,
    ZeroVectorError,
    canonical_vectors,
    canonicalize,
    gf2_ket,
    nonzero_vectors,
)

OUTCOME_LABELS = ((1, 1), (1, -1), (-1, 1), (-1, -1))
OUTCOME_NAMES = ("++", "+-", "-+", "--")


@dataclass(frozen=True)
class TwoPartyState:
    ket: Ket
    n: int = 2  # dimension of each factor

    def __post_init__(self):
        if self.ket.N != self.n * self.n:
            raise ValueError(f"two-party ket must have {self.n * self.n} coordinates")

    @classmethod
    def of(cls, field: FieldParams, values, n: int = 2) -> TwoPartyState:
        return cls(Ket.of(field, values), n)

    @classmethod
    def from_matrix(cls, rows) -> TwoPartyState:
        rows = [tuple(r) for r in rows]
        return cls(Ket(tuple(x for r in rows for x in r)), len(rows))

    @property
    def field(self) -> FieldParams:
        return self.ket.field

    @property
    def matrix(self) -> tuple:
        c, n = self.ket.coords, self.n
        return tuple(tuple(c[i * n:(i + 1) * n]) for i in range(n))

    def is_zero(self) -> bool:
        return self.ket.is_zero()

    def __add__(self, other: TwoPartyState) -> TwoPartyState:
        if other.n != self.n:
            raise ValueError("factor dimension mismatch")
        return TwoPartyState(self.ket + other.ket, self.n)

    def __sub__(self, other: TwoPartyState) -> TwoPartyState:
        return self + other.scale(-self.field.one)

    def scale(self, k) -> TwoPartyState:
        return TwoPartyState(self.ket.scale(k), self.n)

    def canonical(self) -> TwoPartyState:
        return TwoPartyState(canonicalize(self.ket), self.n)

    def key(self) -> tuple:
        return self.ket.key()

    def __str__(self) -> str:
        return str(self.ket)


def tensor_ket(u: Ket, v: Ket) -> TwoPartyState:
    """|u> (x) |v>, coordinate (i, j) at flat index i*N + j."""
    if u.N != v.N or u.field != v.field:
        raise ValueError("factors must share field and dimension")
    return TwoPartyState(Ket(tuple(a * b for a in u.coords for b in v.coords)), u.N)


def tensor_bra(x: Bra, y: Bra) -> Bra:
    if x.N != y.N or x.field != y.field:
        raise ValueError("factors must share field and dimension")
    return Bra(tuple(a * b for a in x.coords for b in y.coords))


def product_factors(s: TwoPartyState):
    """(u, v) with s = u (x) v when the coefficient matrix has rank 1, else None."""
    if s.is_zero():
        raise ZeroVectorError("the zero vector is not a state")
    M = s.matrix
    if rank(M) != 1:
        return None
    i0 = next(i for i, row in enumerate(M) if any(row))
    j0 = next(j for j, x in enumerate(M[i0]) if x)
    pivot_inv = M[i0][j0].inverse()
    u = Ket(tuple(M[i][j0] for i in range(s.n)))
    v = Ket(tuple(x * pivot_inv for x in M[i0]))
    return canonicalize(u), canonicalize(v)


def is_product(s: TwoPartyState) -> bool:
    return product_factors(s) is not None


def two_party_states(field: FieldParams, n: int = 2) -> list:
    """Canonical representatives of every projective two-party state."""
    return [TwoPartyState(k, n) for k in canonical_vectors(field, n * n, Ket)]


def enumerate_entangled(field: FieldParams, n: int = 2, projective: bool = False) -> list:
    """Entangled two-party states: every nonzero vector, or one per ray if ``projective``."""
    if projective:
        return [s for s in two_party_states(field, n) if not is_product(s)]
    vecs = nonzero_vectors(field, n * n, Ket)
    return [s for s in (TwoPartyState(v, n) for v in vecs) if not is_product(s)]


def enumerate_product(field: FieldParams, n: int = 2) -> list:
    return [s for s in two_party_states(field, n) if is_product(s)]


def singlet(field: FieldParams) -> TwoPartyState:
    """|a>|b> - |b>|a>, i.e. coordinates [0, 1, -1, 0].

    Over GF(2) this is the state sum_r |r>(x)|r> = [0 1 1 0].
    """
    return TwoPartyState.of(field, [0, 1, field.p - 1, 0])


# Entangled GF(2) states by name, each as a sum of three |r>(x)|s> terms.
GF2_ENTANGLED_TERMS = {
    "S": (("a", "a"), ("b", "b"), ("c", "c")),
    "ab": (("a", "b"), ("b", "a"), ("c", "c")),
    "bc": (("a", "a"), ("b", "c"), ("c", "b")),
    "ca": (("a", "c"), ("b", "b"), ("c", "a")),
    "abc": (("a", "b"), ("b", "c"), ("c", "a")),
    "acb": (("a", "c"), ("c", "b"), ("b", "a")),
}


def gf2_named_state(field: FieldParams, name: str) -> TwoPartyState:
    terms = GF2_ENTANGLED_TERMS[name]
    out = None
    for r, s in terms:
        t = tensor_ket(gf2_ket(field, r), gf2_ket(field, s))
        out = t if out is None else out + t
    return out


def gf2_state_name(s: TwoPartyState) -> str | None:
    if s.field.q != 2 or s.n != 2:
        return None
    for name in GF2_ENTANGLED_TERMS:
        if gf2_named_state(s.field, name).ket == s.ket:
            return name
    return None


@dataclass(frozen=True)
class ProductObservable:
    """Four tensor bras for outcomes ++, +-, -+, -- of A (x) B."""

    bras: tuple
    factors: tuple
    labels: tuple = OUTCOME_LABELS

    def __post_init__(self):
        if len(self.bras) != 4 or not is_basis(self.bras):
            raise ValueError("product outcomes must form a basis of (V (x) V)*")

    def as_observable(self) -> Observable:
        return Observable(self.bras, tuple(a * b for a, b in self.labels))


def product_observable(A: Observable, B: Observable) -> ProductObservable:
    if not (A.is_spin and B.is_spin):
        raise ValueError("product observables need two spin-like factors")
    (r, s), (t, u) = A.outcomes, B.outcomes
    bras = (tensor_bra(r, t), tensor_bra(r, u), tensor_bra(s, t), tensor_bra(s, u))
    return ProductObservable(bras, (A, B))


@dataclass(frozen=True)
class JointTable:
    pp: Fraction
    pm: Fraction
    mp: Fraction
    mm: Fraction

    def __post_init__(self):
        for name in ("pp", "pm", "mp", "mm"):
            v = Fraction(getattr(self, name))
            if not 0 <= v <= 1:
                raise ValueError(f"probability {v} outside [0, 1]")
            object.__setattr__(self, name, v)
        if self.pp + self.pm + self.mp + self.mm != 1:
            raise ValueError("joint table does not sum to 1")

    @property
    def probs(self) -> tuple:
        return (self.pp, self.pm, self.mp, self.mm)

    @property
    def ev(self) -> Fraction:
        return self.pp - self.pm - self.mp + self.mm

    def marginals(self) -> tuple:
        return (self.pp + self.pm, self.pp + self.mp)


@lru_cache(maxsize=1 << 16)
def joint_table(s: TwoPartyState, A: Observable, B: Observable) -> JointTable:
    """Probabilities of the four outcomes of A (x) B on s, via the general probability rule."""
    if s.is_zero():
        raise ZeroVectorError("the zero vector is not a state")
    dist = outcome_probabilities(product_observable(A, B).as_observable(), s.ket)
    table = JointTable(*dist.probs)
    if table.ev != dist.expectation():
        raise AssertionError("signed sum disagrees with expectation")
    return table


# --- local basis transformations --------------------------------------------

@dataclass(frozen=True)
class LocalMap:
    g1: tuple
    g2: tuple

    def __post_init__(self):
        g1 = tuple(map(tuple, self.g1))
        g2 = tuple(map(tuple, self.g2))
        if not det(g1) or not det(g2):
            raise ValueError("local maps must be invertible")
        object.__setattr__(self, "g1", g1)
        object.__setattr__(self, "g2", g2)


def _matmul(a, b):
    zero = a[0][0].field.zero
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(len(b))), zero) for j in range(len(b[0])))
        for i in range(len(a))
    )


def _transpose(a):
    return tuple(zip(*a))


def apply_local(m: LocalMap, s: TwoPartyState) -> TwoPartyState:
    """(g1 (x) g2)|s>, i.e. M -> g1 M g2^T."""
    if len(m.g1) != s.n or len(m.g2) != s.n:
        raise ValueError("map dimension mismatch")
    return TwoPartyState.from_matrix(_matmul(_matmul(m.g1, s.matrix), _transpose(m.g2)))


def local_maps(field: FieldParams, n: int = 2) -> list:
    """Every pair (g1, g2) in GL(n, q) x GL(n, q)."""
    group = general_linear_group(field, n)
    return [LocalMap(a, b) for a, b in itertools.product(group, repeat=2)]


def local_generators(field: FieldParams, n: int = 2) -> list:
    one = identity(field, n)
    gens = gl_generators(field, n)
    return [LocalMap(g, one) for g in gens] + [LocalMap(one, g) for g in gens]


def local_orbits(field: FieldParams, n: int = 2, exhaustive: bool = False) -> list:
    """Partition projective two-party states into orbits under local maps.

    Breadth-first closure over generators of GL(n, q) in each slot; with
    ``exhaustive=True`` every pair of group elements is applied instead.
    Orbits are lists of canonical states sorted by coordinates, and the
    orbits themselves are ordered by their first member.
    """
    maps = local_maps(field, n) if exhaustive else local_generators(field, n)
    remaining = {s.key(): s for s in two_party_states(field, n)}
    orbits = []
    for key in sorted(remaining):
        if key not in remaining:
            continue
        start = remaining.pop(key)
        orbit = {key: start}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for m in maps:
                img = apply_local(m, cur).canonical()
                k = img.key()
                if k not in orbit:
                    orbit[k] = img
                    remaining.pop(k, None)
                    queue.append(img)
        orbits.append([orbit[k] for k in sorted(orbit)])
    return orbits


def find_local_map(source: TwoPartyState, target: TwoPartyState):
    """Some local map sending ``source`` onto the ray of ``target``, or None."""
    goal = target.canonical().key()
    for m in local_maps(source.field, source.n):
        if apply_local(m, source).canonical().key() == goal:
            return m
    return None
