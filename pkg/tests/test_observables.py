from fractions import Fraction

import pytest

from galqm.gf import make_field
from galqm.observables import (
    Observable,
    all_spin_observables,
    expectation,
    is_basis,
    make_spin_observable,
    outcome_probabilities,
    pauli_like,
    unsigned_spin_observables,
)
from galqm.states import Bra, Ket, ZeroVectorError, gf2_bra, gf2_ket, nonzero_vectors, projective_points
from galqm.tensor import tensor_bra

F1 = Fraction(1)
HALF = Fraction(1, 2)

# (XYZ) -> (YZX) together with (abc) -> (bca)
CYCLE_OBS = {"Z": "X", "X": "Y", "Y": "Z"}
CYCLE_STATE = {"a": "b", "b": "c", "c": "a"}


def test_spin_observable_z(gf2):
    Z = make_spin_observable(gf2_bra(gf2, "a"), gf2_bra(gf2, "b"))
    assert Z == pauli_like(gf2)["Z"]
    assert Z.values == (1, -1)


def test_spin_observable_accepts_projective_points(gf2):
    pts = projective_points(gf2, 2, Bra)
    A = make_spin_observable(pts[0], pts[1])
    assert A.outcomes == (pts[0].representative, pts[1].representative)


def test_swapped_spin_observable_is_negation(gf2):
    a, b = gf2_bra(gf2, "a"), gf2_bra(gf2, "b")
    Z, mZ = make_spin_observable(a, b), make_spin_observable(b, a)
    assert mZ == -Z
    for psi in nonzero_vectors(gf2, 2):
        assert expectation(mZ, psi) == -expectation(Z, psi)


def test_spin_observable_rejects_equal_pair(gf2):
    a = gf2_bra(gf2, "a")
    with pytest.raises(ValueError):
        make_spin_observable(a, a)


def test_single_particle_fixtures(gf2):
    P = pauli_like(gf2)
    ket = {k: gf2_ket(gf2, k) for k in "abc"}
    Z = P["Z"]
    assert outcome_probabilities(Z, ket["a"]).probs == (0, 1)
    assert outcome_probabilities(Z, ket["b"]).probs == (1, 0)
    assert outcome_probabilities(Z, ket["c"]).probs == (HALF, HALF)
    assert [expectation(Z, ket[k]) for k in "abc"] == [-1, 1, 0]
    assert outcome_probabilities(P["X"], ket["b"]).probs == (0, 1)
    assert expectation(P["Y"], ket["b"]) == 0


def test_cyclic_images_of_fixtures(gf2):
    P = pauli_like(gf2)
    ket = {k: gf2_ket(gf2, k) for k in "abc"}
    base = {("Z", s): outcome_probabilities(P["Z"], ket[s]).probs for s in "abc"}
    obs, table = "Z", base
    for _ in range(2):
        obs = CYCLE_OBS[obs]
        table = {(CYCLE_OBS[o], CYCLE_STATE[s]): v for (o, s), v in table.items()}
        for (o, s), probs in table.items():
            assert outcome_probabilities(P[o], ket[s]).probs == probs


def test_two_eigenstates_per_spin(gf2):
    for A in all_spin_observables(gf2):
        evs = sorted(expectation(A, p.representative) for p in projective_points(gf2, 2))
        assert evs == [-1, 0, 1]


def test_all_spin_observables_counts(gf2, gf3):
    obs = all_spin_observables(gf2)
    assert len(obs) == 6
    assert len(unsigned_spin_observables(gf2)) == 3
    P = pauli_like(gf2)
    assert {frozenset({o, -o}) for o in obs} == {frozenset({P[k], -P[k]}) for k in "XYZ"}
    assert len(all_spin_observables(gf3)) == 12
    assert all(is_basis(o.outcomes) for o in all_spin_observables(gf3))


def test_is_basis(gf2):
    a, b = gf2_bra(gf2, "a"), gf2_bra(gf2, "b")
    assert is_basis([a, b])
    assert not is_basis([a, a])
    P = pauli_like(gf2)
    for A in P.values():
        for B in P.values():
            (r, s), (t, u) = A.outcomes, B.outcomes
            assert is_basis([tensor_bra(r, t), tensor_bra(r, u), tensor_bra(s, t), tensor_bra(s, u)])
    with pytest.raises(ValueError):
        is_basis([a, Bra.of(gf2, [1, 0, 0])])


def test_observable_requires_basis(gf2):
    a = gf2_bra(gf2, "a")
    with pytest.raises(ValueError):
        Observable((a, a), (1, -1))


def test_zero_state_rejected(gf2):
    with pytest.raises(ZeroVectorError):
        outcome_probabilities(pauli_like(gf2)["Z"], Ket.of(gf2, [0, 0]))


def _general_observables(F):
    """Spin observables plus a few three-outcome observables on K^3."""
    out = list(all_spin_observables(F))
    e = [Bra.of(F, v) for v in ([1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1])]
    out.append(Observable((e[0], e[1], e[2]), (1, 0, -1)))
    out.append(Observable((e[3], e[4], e[2]), (2, Fraction(1, 2), -3)))
    return out


@pytest.mark.parametrize("p", [2, 3])
def test_normalization_and_scalar_invariance(p):
    F = make_field(p)
    for A in _general_observables(F):
        for psi in nonzero_vectors(F, A.N):
            dist = outcome_probabilities(A, psi)
            assert sum(dist.probs) == 1
            m = sum(1 for x in dist.probs if x)
            assert 1 <= m <= A.N
            assert all(x in (0, Fraction(1, m)) for x in dist.probs)
            for k in F.nonzero:
                assert outcome_probabilities(A, psi.scale(k)).probs == dist.probs
