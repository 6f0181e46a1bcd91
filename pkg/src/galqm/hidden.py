"""Local hidden-variable realizability of joint tables.

A local hidden-variable model for two menus of +-1 observables is a
probability mixture of deterministic strategies, each fixing one value per
observable on each side.  A set of joint tables is realizable iff a mixture
reproduces every cell, which is decided here as an exact LP feasibility
problem.  The zero-cell filter is the fast, human-readable route: a
strategy that would produce an outcome of probability zero cannot carry
weight, so if no strategy survives the tables are not realizable.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from dataclasses import field as dc_field
from fractions import Fraction

from .gf import FieldParams
from .lp import check_farkas, check_solution, feasible_point
from .observables import pauli_like
from .tensor import OUTCOME_LABELS, OUTCOME_NAMES, JointTable, TwoPartyState, joint_table

SCHEMA = "galqm/1"


class HvInstanceError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class DeterministicStrategy:
    values1: tuple  # +-1 per observable in menu 1
    values2: tuple

    def outcome(self, i: int, j: int) -> int:
        """Index of the cell (++, +-, -+, --) this strategy produces for pair (i, j)."""
        return OUTCOME_LABELS.index((self.values1[i], self.values2[j]))

    def label(self, menu1, menu2) -> str:
        sgn = {1: "+", -1: "-"}
        return " ".join(f"{m}{sgn[v]}" for m, v in zip(list(menu1) + list(menu2),
                                                          self.values1 + self.values2))


@dataclass
class HvInstance:
    menu1: tuple  # observable labels
    menu2: tuple
    tables: dict  # (i, j) -> JointTable

    def __post_init__(self):
        self.menu1 = tuple(self.menu1)
        self.menu2 = tuple(self.menu2)
        want = set(itertools.product(range(len(self.menu1)), range(len(self.menu2))))
        if set(self.tables) != want:
            raise HvInstanceError("need exactly one joint table per (menu1, menu2) pair")
        for t in self.tables.values():
            if not isinstance(t, JointTable):
                raise HvInstanceError("tables must be JointTable values")

    def cells(self):
        for i, j in sorted(self.tables):
            for k in range(4):
                yield i, j, k

    def prob(self, i: int, j: int, k: int) -> Fraction:
        return self.tables[(i, j)].probs[k]

    def cell_label(self, i: int, j: int, k: int) -> str:
        return f"{self.menu1[i]}{self.menu2[j]}:{OUTCOME_NAMES[k]}"


@dataclass
class HvVerdict:
    feasible: bool
    strategies: list
    mixture: dict | None = None  # strategy -> weight, positive weights only
    farkas: dict | None = None  # cell label -> multiplier ("norm" for the sum row)
    zero_cells: list = dc_field(default_factory=list)  # cell labels with probability 0
    refutations: dict | None = None  # strategy -> first zero cell it hits
    survivors: int = 0


def enumerate_strategies(menu1, menu2) -> list:
    n1, n2 = len(menu1), len(menu2)
    return [DeterministicStrategy(tuple(v[:n1]), tuple(v[n1:]))
            for v in itertools.product((1, -1), repeat=n1 + n2)]


def zero_cell_refutations(inst: HvInstance) -> dict:
    """For each strategy, the first zero-probability cell it would produce (or None)."""
    out = {}
    for lam in enumerate_strategies(inst.menu1, inst.menu2):
        hit = None
        for i, j in sorted(inst.tables):
            k = lam.outcome(i, j)
            if inst.prob(i, j, k) == 0:
                hit = (i, j, k)
                break
        out[lam] = hit
    return out


def zero_cell_filter(inst: HvInstance) -> list:
    """Strategies that never land on a probability-zero cell."""
    return [lam for lam, hit in zero_cell_refutations(inst).items() if hit is None]


def mixture_tables(inst: HvInstance, mixture: dict) -> dict:
    """Joint probabilities produced by a mixture of strategies."""
    out = {key: [Fraction(0)] * 4 for key in inst.tables}
    for lam, w in mixture.items():
        for i, j in inst.tables:
            out[(i, j)][lam.outcome(i, j)] += w
    return out


def verify_mixture(inst: HvInstance, mixture: dict) -> bool:
    if any(w < 0 for w in mixture.values()) or sum(mixture.values()) != 1:
        return False
    got = mixture_tables(inst, mixture)
    return all(tuple(got[key]) == inst.tables[key].probs for key in inst.tables)


def _lp_system(inst: HvInstance, strategies: list):
    rows, rhs, names = [], [], []
    for i, j, k in inst.cells():
        rows.append([Fraction(int(lam.outcome(i, j) == k)) for lam in strategies])
        rhs.append(inst.prob(i, j, k))
        names.append(inst.cell_label(i, j, k))
    rows.append([Fraction(1)] * len(strategies))
    rhs.append(Fraction(1))
    names.append("norm")
    return rows, rhs, names


def hv_feasible(inst: HvInstance) -> HvVerdict:
    """Decide exactly whether a mixture of deterministic strategies reproduces ``inst``.

    Both certificates are checked by direct arithmetic before returning.
    """
    strategies = enumerate_strategies(inst.menu1, inst.menu2)
    refutations = zero_cell_refutations(inst)
    survivors = sum(1 for hit in refutations.values() if hit is None)
    zero_cells = [inst.cell_label(*c) for c in inst.cells() if inst.prob(*c) == 0]

    A, b, names = _lp_system(inst, strategies)
    res = feasible_point(A, b)
    verdict = HvVerdict(res.feasible, strategies, zero_cells=zero_cells, survivors=survivors)
    if res.feasible:
        if not check_solution(A, b, res.x):
            raise AssertionError("LP solution fails re-verification")
        verdict.mixture = {lam: w for lam, w in zip(strategies, res.x) if w}
        if not verify_mixture(inst, verdict.mixture):
            raise AssertionError("mixture does not reproduce the tables")
    else:
        if not check_farkas(A, b, res.farkas):
            raise AssertionError("Farkas certificate fails re-verification")
        verdict.farkas = {nm: y for nm, y in zip(names, res.farkas) if y}
        if survivors == 0:
            verdict.refutations = {lam: inst.cell_label(*hit) for lam, hit in refutations.items()}
    if survivors == 0 and res.feasible:
        raise AssertionError("zero-cell filter excluded every strategy but LP is feasible")
    return verdict


def chsh_classical_bound(menu1, menu2) -> Fraction:
    """max |AB + Ab + aB - ab| over deterministic strategies and quads drawn from the menus."""
    if not menu1 or not menu2:
        raise ValueError("menus must be nonempty")
    best = 0
    n1, n2 = range(len(menu1)), range(len(menu2))
    for lam in enumerate_strategies(menu1, menu2):
        v, w = lam.values1, lam.values2
        for A, a in itertools.product(n1, repeat=2):
            for B, b_ in itertools.product(n2, repeat=2):
                val = abs(v[A] * w[B] + v[A] * w[b_] + v[a] * w[B] - v[a] * w[b_])
                best = max(best, val)
    return Fraction(best)


# --- instance construction and JSON -----------------------------------------

def instance_from_state(s: TwoPartyState, menu1: dict, menu2: dict) -> HvInstance:
    """Joint tables of ``s`` for every pair from two {label: Observable} menus."""
    obs1, obs2 = list(menu1.values()), list(menu2.values())
    tables = {(i, j): joint_table(s, A, B)
              for i, A in enumerate(obs1) for j, B in enumerate(obs2)}
    return HvInstance(tuple(menu1), tuple(menu2), tables)


def xyz_menus(field: FieldParams) -> tuple:
    """X1, Y1, Z1 and X2, Y2, Z2 over GF(2)."""
    P = pauli_like(field)
    return ({f"{k}1": P[k] for k in "XYZ"}, {f"{k}2": P[k] for k in "XYZ"})


def uniform_instance(menu1=("X1", "Y1", "Z1"), menu2=("X2", "Y2", "Z2")) -> HvInstance:
    q = Fraction(1, 4)
    tables = {(i, j): JointTable(q, q, q, q) for i in range(len(menu1)) for j in range(len(menu2))}
    return HvInstance(tuple(menu1), tuple(menu2), tables)


def instance_to_dict(inst: HvInstance) -> dict:
    return {
        "schema": SCHEMA,
        "menu1": list(inst.menu1),
        "menu2": list(inst.menu2),
        "tables": [
            {"A": inst.menu1[i], "B": inst.menu2[j],
             "probs": [str(p) for p in inst.tables[(i, j)].probs]}
            for i, j in sorted(inst.tables)
        ],
    }


def instance_from_dict(data: dict) -> HvInstance:
    try:
        menu1, menu2 = list(data["menu1"]), list(data["menu2"])
        tables = {}
        for entry in data["tables"]:
            key = (menu1.index(entry["A"]), menu2.index(entry["B"]))
            if key in tables:
                raise HvInstanceError(f"duplicate table for {entry['A']}{entry['B']}")
            probs = [Fraction(str(p)) for p in entry["probs"]]
            if len(probs) != 4:
                raise HvInstanceError("each table needs four probabilities")
            tables[key] = JointTable(*probs)
    except HvInstanceError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise HvInstanceError(f"malformed instance: {exc}") from exc
    return HvInstance(tuple(menu1), tuple(menu2), tables)


def load_instance(path) -> HvInstance:
    with open(path) as fh:
        return instance_from_dict(json.load(fh))


def verdict_to_dict(inst: HvInstance, v: HvVerdict) -> dict:
    out = {
        "schema": SCHEMA,
        "feasible": v.feasible,
        "strategies": len(v.strategies),
        "zero_cell_survivors": v.survivors,
        "zero_cells": v.zero_cells,
    }
    if v.mixture is not None:
        out["mixture"] = [
            {"strategy": lam.label(inst.menu1, inst.menu2), "weight": str(w)}
            for lam, w in sorted(v.mixture.items(), reverse=True)
        ]
    if v.farkas is not None:
        out["farkas"] = {k: str(y) for k, y in v.farkas.items()}
    if v.refutations is not None:
        out["refutations"] = {
            lam.label(inst.menu1, inst.menu2): cell
            for lam, cell in sorted(v.refutations.items(), reverse=True)
        }
    return out
