"""The CHSH combination <A,a;B,b> = <AB> + <Ab> + <aB> - <ab> and exhaustive sweeps.

:func:`chsh_correlator` evaluates one quad through the general joint-table
machinery.  :func:`chsh_sweep` evaluates every quad at once: for a state it
tabulates which tensor bras <r|(x)<t| annihilate it, turns that into an
integer matrix of 12 * <A B> over all ordered spin observables (every
expectation has denominator 1, 2, 3 or 4), and broadcasts the four-term sum
over all quads.  Results stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .gf import FieldParams, abs_val
from .observables import Observable, all_spin_observables, unsigned_spin_observables
from .states import Bra, ZeroVectorError, canonical_vectors
from .tensor import TwoPartyState, enumerate_entangled, joint_table, singlet, two_party_states

EV_SCALE = 12  # lcm(1, 2, 3, 4)
MODES = ("singlet", "entangled", "all")


@dataclass(frozen=True)
class ChshQuad:
    A: Observable
    a: Observable
    B: Observable
    b: Observable

    def __post_init__(self):
        obs = (self.A, self.a, self.B, self.b)
        if not all(o.is_spin for o in obs):
            raise ValueError("CHSH needs four spin-like observables")
        if len({o.field for o in obs}) != 1:
            raise ValueError("observables from different fields")

    def labels(self) -> tuple:
        return tuple(o.label() for o in (self.A, self.a, self.B, self.b))


def chsh_correlator(s: TwoPartyState, quad: ChshQuad) -> Fraction:
    if s.is_zero():
        raise ZeroVectorError("the zero vector is not a state")

    def ev(x, y):
        return joint_table(s, x, y).ev

    return ev(quad.A, quad.B) + ev(quad.A, quad.b) + ev(quad.a, quad.B) - ev(quad.a, quad.b)


def symmetry_forms(s: TwoPartyState, quad: ChshQuad) -> list:
    """The five equal expressions of the correlator under relabeling and negation."""
    A, a, B, b = quad.A, quad.a, quad.B, quad.b
    return [
        chsh_correlator(s, ChshQuad(A, a, B, b)),
        chsh_correlator(s, ChshQuad(A, -a, b, B)),
        -chsh_correlator(s, ChshQuad(-A, a, b, B)),
        chsh_correlator(s, ChshQuad(a, A, B, -b)),
        -chsh_correlator(s, ChshQuad(a, A, -B, b)),
    ]


def verify_symmetry_identities(s: TwoPartyState, quad: ChshQuad) -> bool:
    forms = symmetry_forms(s, quad)
    return all(f == forms[0] for f in forms)


# --- sweep ---------------------------------------------------------------

def _spin_index_pairs(field: FieldParams, signed: bool) -> tuple:
    pts = canonical_vectors(field, 2, Bra)
    idx = {p: i for i, p in enumerate(pts)}
    obs = all_spin_observables(field) if signed else unsigned_spin_observables(field)
    pairs = np.array([(idx[o.outcomes[0]], idx[o.outcomes[1]]) for o in obs], dtype=np.intp)
    return pts, obs, pairs


def annihilation_pattern(s: TwoPartyState, pts) -> np.ndarray:
    """z[r, t] = |<r|(x)<t| s>| over dual points r, t."""
    M = s.matrix
    n = s.n
    z = np.zeros((len(pts), len(pts)), dtype=np.int64)
    for i, r in enumerate(pts):
        # row vector r^T M
        rm = [sum((r[k] * M[k][j] for k in range(n)), s.field.zero) for j in range(n)]
        for j, t in enumerate(pts):
            val = sum((rm[k] * t[k] for k in range(n)), s.field.zero)
            z[i, j] = abs_val(val)
    return z


def scaled_ev_matrix(z: np.ndarray, pairs: np.ndarray) -> np.ndarray:
    """EV_SCALE * <A B> for every pair of spin observables given as (r, s) index pairs."""
    r, s = pairs[:, 0], pairs[:, 1]
    zrt = z[np.ix_(r, r)]
    zru = z[np.ix_(r, s)]
    zst = z[np.ix_(s, r)]
    zsu = z[np.ix_(s, s)]
    num = zrt - zru - zst + zsu
    den = zrt + zru + zst + zsu
    if (den == 0).any():
        raise AssertionError("product basis annihilated a nonzero state")
    scaled = num * EV_SCALE
    if (scaled % den).any():
        raise AssertionError("expectation denominator does not divide 12")
    return scaled // den


def scaled_correlators(E: np.ndarray) -> np.ndarray:
    """C[A, a, B, b] = E[A,B] + E[A,b] + E[a,B] - E[a,b]."""
    return (
        E[:, None, :, None] + E[:, None, None, :] + E[None, :, :, None] - E[None, :, None, :]
    )


@dataclass
class SweepResult:
    field: FieldParams
    mode: str
    signed: bool
    max_abs: Fraction
    witness_count: int
    witnesses: list = field(default_factory=list)  # (state, ChshQuad), capped
    states_swept: int = 0
    quads_swept: int = 0
    per_state_max: list = field(default_factory=list)  # (state, max |corr|)


def sweep_states(field: FieldParams, mode: str) -> list:
    if mode == "singlet":
        return [singlet(field).canonical()]
    if mode == "entangled":
        return enumerate_entangled(field, projective=True)
    if mode == "all":
        return two_party_states(field)
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def chsh_sweep(field: FieldParams, mode: str = "entangled", signed: bool = True,
               max_witnesses: int = 100, states=None) -> SweepResult:
    """Maximize |<A,a;B,b>| over states and every ordered quad of spin observables.

    ``signed=False`` restricts to one observable from each +- pair.
    Witnesses are ordered by state coordinates, then by quad indices; only
    the first ``max_witnesses`` are kept, ``witness_count`` counts all.
    """
    if states is None:
        states = sweep_states(field, mode)
    pts, obs, pairs = _spin_index_pairs(field, signed)
    best = -1
    hits = []  # (state, index array)
    per_state = []
    for s in states:
        C = np.abs(scaled_correlators(scaled_ev_matrix(annihilation_pattern(s, pts), pairs)))
        m = int(C.max())
        per_state.append((s, Fraction(m, EV_SCALE)))
        if m > best:
            best, hits = m, []
        if m == best:
            hits.append((s, C))
    count = 0
    witnesses = []
    for s, C in hits:
        idx = np.argwhere(C == best)
        count += len(idx)
        for A, a, B, b in idx[: max(0, max_witnesses - len(witnesses))]:
            witnesses.append((s, ChshQuad(obs[A], obs[a], obs[B], obs[b])))
    return SweepResult(
        field=field,
        mode=mode,
        signed=signed,
        max_abs=Fraction(best, EV_SCALE),
        witness_count=count,
        witnesses=witnesses,
        states_swept=len(states),
        quads_swept=len(obs) ** 4,
        per_state_max=per_state,
    )
