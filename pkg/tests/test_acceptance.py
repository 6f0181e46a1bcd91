"""Exit criteria.  Every check is exact rational equality; runtimes are bounded where stated."""

import itertools
import time
from fractions import Fraction
from pathlib import Path

from galqm.chsh import ChshQuad, chsh_sweep, verify_symmetry_identities
from galqm.cli import main
from galqm.gf import abs_val, make_field
from galqm.hidden import (
    chsh_classical_bound,
    hv_feasible,
    instance_from_state,
    xyz_menus,
    verify_mixture,
    zero_cell_filter,
)
from galqm.observables import all_spin_observables, expectation, outcome_probabilities, pauli_like
from galqm.states import Ket, gf2_ket, nonzero_vectors
from galqm.tensor import (
    LocalMap,
    TwoPartyState,
    apply_local,
    enumerate_entangled,
    enumerate_product,
    gf2_named_state,
    is_product,
    joint_table,
    local_maps,
    local_orbits,
    two_party_states,
)

from .conftest import SMALL_FIELDS

GOLDEN = Path(__file__).parent / "golden" / "singlet_S_p2.csv"
T, H = Fraction(1, 3), Fraction(1, 2)
SINGLET_ROWS = [
    (("X1X2", "Y1Y2", "Z1Z2"), (0, H, H, 0), -1),
    (("X1Y2", "Y1Z2", "Z1X2"), (T, T, 0, T), T),
    (("X1Z2", "Z1Y2", "Y1X2"), (T, 0, T, T), T),
]
ENTANGLED_GF2 = [[0, 1, 1, 0], [1, 0, 0, 1], [1, 1, 1, 0], [0, 1, 1, 1], [1, 1, 0, 1], [1, 0, 1, 1]]


def test_criterion_1_singlet_tables(report, capsys):
    start = time.perf_counter()
    code = main(["table", "--state", "S", "--p", "2", "--format", "csv"])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    parsed = {}
    for line in out.splitlines()[1:]:
        name, *cells = line.split(",")
        parsed[name] = tuple(Fraction(c) for c in cells)
    expected = {name: tuple(Fraction(x) for x in probs) + (Fraction(ev),)
                for names, probs, ev in SINGLET_ROWS for name in names}
    ok = code == 0 and parsed == expected and out == GOLDEN.read_text() and elapsed < 1.0
    assert report(1, "GF(2) singlet joint tables reproduced exactly", ok, f"{elapsed:.3f}s")


def test_criterion_2_single_particle(report):
    F = make_field(2)
    P = pauli_like(F)
    ket = {k: gf2_ket(F, k) for k in "abc"}
    ok = True
    # Z on a, b, c and its two cyclic images (XYZ)(abc)
    for obs, (s_down, s_up, s_mid) in (("Z", "abc"), ("X", "bca"), ("Y", "cab")):
        A = P[obs]
        ok &= outcome_probabilities(A, ket[s_down]).probs == (0, 1)
        ok &= outcome_probabilities(A, ket[s_up]).probs == (1, 0)
        ok &= outcome_probabilities(A, ket[s_mid]).probs == (H, H)
        ok &= [expectation(A, ket[s]) for s in (s_down, s_up, s_mid)] == [-1, 1, 0]
    assert report(2, "single-particle probabilities and expectations", ok)


def test_criterion_3_counting(report):
    F = make_field(2)
    nz = nonzero_vectors(F, 4)
    prod = [v for v in nz if is_product(TwoPartyState(v))]
    ent = enumerate_entangled(F)
    ok = (len(nz), len(prod), len(ent)) == (15, 9, 6)
    ok &= [s.ket for s in ent] == sorted((Ket.of(F, v) for v in ENTANGLED_GF2), key=lambda k: k.key())
    ok &= all(gf2_named_state(F, n).ket == Ket.of(F, v)
              for n, v in zip(("S", "ab", "bc", "ca", "abc", "acb"), ENTANGLED_GF2))
    assert report(3, "15 nonzero = 9 product + 6 entangled", ok)


def test_criterion_4_chsh_bound(report):
    details, ok = [], True
    for p, n in [(2, 1), (3, 1), (2, 2), (5, 1)]:
        F = make_field(p, n)
        start = time.perf_counter()
        res = chsh_sweep(F, "all")
        elapsed = time.perf_counter() - start
        ok &= res.max_abs == 2
        ok &= res.states_swept == (F.q ** 4 - 1) // (F.q - 1)
        if F.q <= 3:
            ok &= elapsed < 10
        else:
            ok &= elapsed < 300
        details.append(f"q={F.q}: {res.max_abs} in {elapsed:.2f}s")
    assert report(4, "CHSH maximum is 2 for q = 2, 3, 4, 5", ok, "; ".join(details))


def test_criterion_5_no_go(report):
    F = make_field(2)
    menus = xyz_menus(F)
    inst = instance_from_state(gf2_named_state(F, "S"), *menus)
    survivors = zero_cell_filter(inst)
    verdict = hv_feasible(inst)
    ok = not verdict.feasible and survivors == [] and verdict.farkas is not None
    products = enumerate_product(F)
    for s in products:
        inst = instance_from_state(s, *menus)
        v = hv_feasible(inst)
        ok &= v.feasible and verify_mixture(inst, v.mixture)
    assert report(5, "singlet has no hidden-variable model; product states do", ok,
                  f"{len(survivors)} of 64 survive, {len(products)} product states feasible")


def test_criterion_6_orbit(report):
    F = make_field(2)
    maps = local_maps(F)
    S = gf2_named_state(F, "S")
    orbits = local_orbits(F, exhaustive=True)
    ent = [o for o in orbits if not is_product(o[0])]
    ok = len(maps) == 36 and len(ent) == 1 and len(ent[0]) == 6
    for s in enumerate_entangled(F, projective=True):
        ok &= any(apply_local(m, s).canonical().ket == S.ket for m in maps)
    ok &= isinstance(maps[0], LocalMap)
    assert report(6, "all 6 entangled GF(2) states form one local orbit", ok)


def test_criterion_7_properties(report):
    ok = True
    # field axioms and abs multiplicativity, every q <= 9
    for p, n in SMALL_FIELDS:
        F = make_field(p, n)
        els = F.elements
        for a, b in itertools.product(els, repeat=2):
            ok &= a + b == b + a and a * b == b * a
            ok &= abs_val(a * b) == abs_val(a) * abs_val(b)
        for a, b, c in itertools.product(els, repeat=3):
            ok &= (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
            ok &= a * (b + c) == a * b + a * c
        ok &= all(a * a.inverse() == F.one for a in F.nonzero)
    # normalization and scalar invariance, single and two particles, q <= 3
    for p in (2, 3):
        F = make_field(p)
        obs = all_spin_observables(F)
        for A in obs:
            for psi in nonzero_vectors(F, 2):
                d = outcome_probabilities(A, psi).probs
                ok &= sum(d) == 1
                ok &= all(outcome_probabilities(A, psi.scale(k)).probs == d for k in F.nonzero)
        for s in two_party_states(F):
            for A, B in itertools.product(obs, repeat=2):
                t = joint_table(s, A, B)
                ok &= sum(t.probs) == 1
                ok &= all(joint_table(s.scale(k), A, B) == t for k in F.nonzero)
    # symmetry identities of the correlator, every state and quad over GF(2)
    F = make_field(2)
    obs = all_spin_observables(F)
    for s in two_party_states(F):
        for quad in itertools.product(obs, repeat=4):
            ok &= verify_symmetry_identities(s, ChshQuad(*quad))
    assert report(7, "property suites", ok)


def test_criterion_8_classical_bound(report):
    F = make_field(2)
    m1, m2 = xyz_menus(F)
    value = chsh_classical_bound(list(m1), list(m2))
    assert report(8, "classical CHSH bound over the X/Y/Z menus", value == 2, f"value {value}")
