"""Observables as ordered bases of V* and the probability rule.

The probability of outcome <x| on state |psi> is

    P(x | psi) = |<x|psi>|^2 / sum_y |<y|psi>|^2

with |k| = 0 for k = 0 and 1 otherwise.  Since |k|^2 = |k|, every outcome
with a nonzero bracket is equally likely.  All probabilities are exact
``Fraction`` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field
from fractions import Fraction
from functools import lru_cache

from .gf import FieldParams, abs_val
from .linalg import rank
from .states import (
    Bra,
    Ket,
    ProjectivePoint,
    ZeroVectorError,
    bracket,
    canonical_vectors,
    gf2_bra,
)

SPIN_VALUES = (Fraction(1), Fraction(-1))


def is_basis(bras) -> bool:
    """True iff the bras are N linearly independent vectors of V*."""
    bras = list(bras)
    if not bras:
        return False
    N = bras[0].N
    if any(b.N != N for b in bras):
        raise ValueError("dimension mismatch")
    if len(bras) != N:
        return False
    return _full_rank(tuple(bras))


@lru_cache(maxsize=1 << 14)
def _full_rank(bras: tuple) -> bool:
    return rank([b.coords for b in bras]) == len(bras)


@dataclass(frozen=True)
class Observable:
    outcomes: tuple  # Bras, one per outcome
    values: tuple  # Fractions, same length
    name: str | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        if len(self.outcomes) != len(self.values):
            raise ValueError("one value per outcome required")
        if not all(isinstance(b, Bra) for b in self.outcomes):
            raise TypeError("outcomes must be Bras")
        if not is_basis(self.outcomes):
            raise ValueError("outcome bras do not form a basis of V*")
        object.__setattr__(self, "_hash", hash((self.outcomes, self.values)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def field(self) -> FieldParams:
        return self.outcomes[0].field

    @property
    def N(self) -> int:
        return len(self.outcomes)

    @property
    def is_spin(self) -> bool:
        return self.N == 2 and self.values == SPIN_VALUES

    def __neg__(self) -> Observable:
        # A_sr = -A_rs: swap which bra carries +1
        if not self.is_spin:
            return Observable(self.outcomes, tuple(-v for v in self.values), _negate_name(self.name))
        return Observable(self.outcomes[::-1], self.values, _negate_name(self.name))

    def label(self) -> str:
        return self.name or "{" + ", ".join(str(b) for b in self.outcomes) + "}"

    def __str__(self) -> str:
        return self.label()


def _negate_name(name):
    if name is None:
        return None
    return name[1:] if name.startswith("-") else "-" + name


def _as_bra(x) -> Bra:
    if isinstance(x, ProjectivePoint):
        x = x.representative
    if not isinstance(x, Bra):
        raise TypeError("expected a Bra or a dual projective point")
    return x


def make_spin_observable(r, s, name: str | None = None) -> Observable:
    """A_rs = {<r|, <s|} with outcome +1 on <r| and -1 on <s|."""
    r, s = _as_bra(r), _as_bra(s)
    if r.N != 2 or s.N != 2:
        raise ValueError("spin-like observables live in N = 2")
    if not is_basis([r, s]):
        raise ValueError("A_rs needs r != s")
    return Observable((r, s), SPIN_VALUES, name)


@dataclass(frozen=True)
class OutcomeDistribution:
    probs: tuple
    observable: Observable
    state: Ket

    def expectation(self) -> Fraction:
        return sum((v * p for v, p in zip(self.observable.values, self.probs)), Fraction(0))


def outcome_probabilities(obs: Observable, psi: Ket) -> OutcomeDistribution:
    if not isinstance(psi, Ket):
        raise TypeError("state must be a Ket")
    if psi.is_zero():
        raise ZeroVectorError("the zero vector is not a state")
    weights = [abs_val(bracket(x, psi)) for x in obs.outcomes]
    total = sum(weights)
    # a basis cannot annihilate a nonzero vector
    assert total > 0
    return OutcomeDistribution(tuple(Fraction(w, total) for w in weights), obs, psi)


def expectation(obs: Observable, psi: Ket) -> Fraction:
    return outcome_probabilities(obs, psi).expectation()


def all_spin_observables(field: FieldParams) -> list:
    """A_rs for every ordered pair of distinct dual points r, s (point order)."""
    pts = canonical_vectors(field, 2, Bra)
    return [make_spin_observable(r, s) for r in pts for s in pts if r != s]


def unsigned_spin_observables(field: FieldParams) -> list:
    """One of each +-pair: A_rs with r before s in point order."""
    pts = canonical_vectors(field, 2, Bra)
    return [make_spin_observable(r, s) for i, r in enumerate(pts) for s in pts[i + 1:]]


def pauli_like(field: FieldParams) -> dict:
    """Z = A_ab, X = A_bc, Y = A_ca over GF(2)."""
    bar = {k: gf2_bra(field, k) for k in "abc"}
    return {
        "Z": make_spin_observable(bar["a"], bar["b"], "Z"),
        "X": make_spin_observable(bar["b"], bar["c"], "X"),
        "Y": make_spin_observable(bar["c"], bar["a"], "Y"),
    }
