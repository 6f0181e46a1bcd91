"""Batch command-line front end.

Subcommands: field, states, table, chsh, hv, orbits.  Every subcommand
accepts the global flags --p, --n, --N, --format, --out and --force.
Rationals are always written as strings such as "1/3".

Exit codes: 0 success, 2 bad input, 3 refused by a scale guard,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .chsh import MODES, chsh_sweep
from .gf import FieldError, FieldParams, format_poly, make_field
from .hidden import (
    SCHEMA,
    HvInstanceError,
    hv_feasible,
    instance_from_state,
    instance_to_dict,
    load_instance,
    xyz_menus,
    uniform_instance,
    verdict_to_dict,
)
from .observables import Observable, pauli_like, unsigned_spin_observables
from .states import Ket, canonical_vectors
from .tensor import (
    GF2_ENTANGLED_TERMS,
    OUTCOME_NAMES,
    TwoPartyState,
    gf2_named_state,
    gf2_state_name,
    is_product,
    joint_table,
    local_orbits,
    product_factors,
    singlet,
    two_party_states,
)

EXIT_OK, EXIT_INPUT, EXIT_SCALE, EXIT_INTERNAL = 0, 2, 3, 4

MAX_SWEEP_Q = 5
MAX_TENSOR_VECTORS = 20_000  # q^(N^2) guard for two-party enumeration
MAX_HV_STRATEGIES = 1 << 12
MAX_EXHAUSTIVE_ORBIT_Q = 3
TABLE1_ORDER = ("XX", "YY", "ZZ", "XY", "YZ", "ZX", "XZ", "ZY", "YX")


class InputError(Exception):
    pass


class ScaleError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    p: int
    n: int
    N: int
    fmt: str
    out: str | None
    force: bool
    field: FieldParams


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


def _vec(v) -> list:
    return [str(c) for c in v]


# --- labels ----------------------------------------------------------------

def observable_label(obs: Observable) -> str:
    if obs.field.q == 2:
        for name, P in pauli_like(obs.field).items():
            if obs == P:
                return name
            if obs == -P:
                return "-" + name
    r, s = obs.outcomes
    return "A[" + ",".join(r.labels()) + ";" + ",".join(s.labels()) + "]"


def state_label(s: TwoPartyState) -> str:
    name = gf2_state_name(s)
    return name if name is not None else ",".join(s.ket.labels())


# --- config -----------------------------------------------------------------

def make_config(args) -> RunConfig:
    try:
        field = make_field(args.p, args.n)
    except FieldError as exc:
        raise InputError(str(exc)) from exc
    if args.N < 1:
        raise InputError("--N must be >= 1")
    return RunConfig(args.command, args.p, args.n, args.N, args.format, args.out, args.force, field)


def _require_two_level(cfg: RunConfig):
    if cfg.N != 2:
        raise InputError(f"'{cfg.command}' needs --N 2 (spin-like observables)")


def _tensor_guard(cfg: RunConfig):
    size = cfg.field.q ** (cfg.N * cfg.N)
    if size > MAX_TENSOR_VECTORS and not cfg.force:
        raise ScaleError(f"q^(N^2) = {size} vectors exceeds {MAX_TENSOR_VECTORS}; pass --force")


def resolve_state(cfg: RunConfig, name: str | None, coords: str | None) -> TwoPartyState:
    F = cfg.field
    if (name is None) == (coords is None):
        raise InputError("give exactly one of --state or --coords")
    if coords is not None:
        parts = [c.strip() for c in coords.split(",")]
        if len(parts) != cfg.N * cfg.N:
            raise InputError(f"--coords needs {cfg.N * cfg.N} entries")
        try:
            s = TwoPartyState(Ket(tuple(F(c) for c in parts)), cfg.N)
        except (FieldError, ValueError) as exc:
            raise InputError(f"bad coordinates: {exc}") from exc
        if s.is_zero():
            raise InputError("the zero vector is not a state")
        return s
    if name == "singlet":
        return singlet(F)
    if name in GF2_ENTANGLED_TERMS:
        if (cfg.p, cfg.n) != (2, 1):
            raise InputError(f"state name {name!r} is defined only for --p 2 --n 1")
        return gf2_named_state(F, name)
    raise InputError(f"unknown state {name!r}; known: singlet, {', '.join(GF2_ENTANGLED_TERMS)}")


def observable_menu(F: FieldParams, side: int) -> dict:
    """Menus X, Y, Z over GF(2); one observable per +- pair otherwise."""
    if F.q == 2:
        P = pauli_like(F)
        return {f"{k}{side}": P[k] for k in "XYZ"}
    return {f"{observable_label(o)}{side}": o for o in unsigned_spin_observables(F)}


# --- rendering ---------------------------------------------------------------

def render(cfg: RunConfig, payload: dict, rows: list | None = None, text: str | None = None) -> str:
    if cfg.fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if cfg.fmt == "csv":
        if rows is None:
            raise InputError(f"'{cfg.command}' has no CSV form")
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    if text is None:
        return json.dumps(payload, indent=2) + "\n"
    return text


def _grid(label_row, rows) -> str:
    cells = [list(map(str, label_row))] + [list(map(str, r)) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(cells[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells) + "\n"


# --- subcommands -------------------------------------------------------------

def cmd_field(cfg: RunConfig, args) -> str:
    F = cfg.field
    els = list(F.elements)
    names = [str(e) for e in els]
    payload = {
        "schema": SCHEMA,
        "field": str(F),
        "p": F.p,
        "n": F.n,
        "q": F.q,
        "modulus": format_poly(F.modulus),
        "elements": names,
    }
    rows = [["op", ""] + names]
    text = f"{F}\nq = {F.q}\nelements: {' '.join(names)}\n"
    if F.q <= 16:
        add = [[str(a + b) for b in els] for a in els]
        mul = [[str(a * b) for b in els] for a in els]
        payload["add"], payload["mul"] = add, mul
        rows += [["+", a] + r for a, r in zip(names, add)]
        rows += [["*", a] + r for a, r in zip(names, mul)]
        text += "\naddition\n" + _grid(["+"] + names, [[a] + r for a, r in zip(names, add)])
        text += "\nmultiplication\n" + _grid(["*"] + names, [[a] + r for a, r in zip(names, mul)])
    return render(cfg, payload, rows, text)


def cmd_states(cfg: RunConfig, args) -> str:
    F = cfg.field
    points = canonical_vectors(F, cfg.N, Ket)
    payload = {"schema": SCHEMA, "field": str(F), "N": cfg.N,
               "points": [_vec(v) for v in points]}
    rows = [["kind", "coords", "class", "factor1", "factor2", "alias"]]
    rows += [["point", " ".join(v.labels()), "", "", "", ""] for v in points]
    if cfg.N == 2:
        _tensor_guard(cfg)
        two = []
        for s in two_party_states(F):
            f = product_factors(s)
            entry = {"coords": s.ket.labels(), "product": f is not None}
            if f is not None:
                entry["factors"] = [_vec(f[0]), _vec(f[1])]
            alias = gf2_state_name(s)
            if alias:
                entry["alias"] = alias
            two.append(entry)
            rows.append(["two-party", " ".join(s.ket.labels()),
                         "product" if f else "entangled",
                         " ".join(f[0].labels()) if f else "",
                         " ".join(f[1].labels()) if f else "", alias or ""])
        payload["two_party"] = two
        payload["counts"] = {
            "nonzero_vectors": F.q ** 4 - 1,
            "rays": len(two),
            "product_rays": sum(e["product"] for e in two),
            "entangled_rays": sum(not e["product"] for e in two),
        }
    return render(cfg, payload, rows, _grid(rows[0], rows[1:]))


def joint_table_rows(s: TwoPartyState) -> list:
    """(label, JointTable) for every measured pair; XX, YY, ZZ, XY, ... order over GF(2)."""
    F = s.field
    if F.q == 2:
        P = pauli_like(F)
        return [(f"{x}1{y}2", joint_table(s, P[x], P[y])) for x, y in TABLE1_ORDER]
    obs = unsigned_spin_observables(F)
    return [(f"{observable_label(A)}1 {observable_label(B)}2", joint_table(s, A, B))
            for A in obs for B in obs]


def cmd_table(cfg: RunConfig, args) -> str:
    _require_two_level(cfg)
    s = resolve_state(cfg, args.state, args.coords)
    entries = joint_table_rows(s)
    header = ["observable", *OUTCOME_NAMES, "EV"]
    rows = [header] + [[lab, *(_frac(p) for p in t.probs), _frac(t.ev)] for lab, t in entries]
    payload = {
        "schema": SCHEMA,
        "field": str(cfg.field),
        "state": state_label(s),
        "coords": s.ket.labels(),
        "product": is_product(s),
        "tables": [{"observable": lab, "probs": dict(zip(OUTCOME_NAMES, map(_frac, t.probs))),
                    "ev": _frac(t.ev)} for lab, t in entries],
    }
    return render(cfg, payload, rows, _grid(header, rows[1:]))


def cmd_chsh(cfg: RunConfig, args) -> str:
    _require_two_level(cfg)
    if cfg.field.q > MAX_SWEEP_Q and not cfg.force:
        raise ScaleError(f"CHSH sweep over q = {cfg.field.q} > {MAX_SWEEP_Q} needs --force")
    if args.mode != "singlet":
        _tensor_guard(cfg)
    res = chsh_sweep(cfg.field, args.mode, signed=not args.unsigned,
                     max_witnesses=args.max_witnesses)
    witnesses = [
        {"state": state_label(s), "coords": s.ket.labels(),
         **dict(zip(("A", "a", "B", "b"), map(observable_label, (q.A, q.a, q.B, q.b))))}
        for s, q in res.witnesses
    ]
    payload = {
        "schema": SCHEMA,
        "field": str(cfg.field),
        "mode": res.mode,
        "signed": res.signed,
        "max_abs": _frac(res.max_abs),
        "witness_count": res.witness_count,
        "states_swept": res.states_swept,
        "quads_swept": res.quads_swept,
        "witnesses": witnesses,
    }
    rows = [["state", "A", "a", "B", "b"]] + [
        [w["state"], w["A"], w["a"], w["B"], w["b"]] for w in witnesses]
    text = (f"{cfg.field} mode={res.mode} signed={res.signed}\n"
            f"max |<A,a;B,b>| = {_frac(res.max_abs)} "
            f"({res.witness_count} witnesses, {res.states_swept} states x {res.quads_swept} quads)\n")
    return render(cfg, payload, rows, text)


def cmd_hv(cfg: RunConfig, args) -> str:
    sources = [args.state is not None or args.coords is not None, args.uniform,
               args.instance is not None]
    if sum(sources) != 1:
        raise InputError("give exactly one of --state/--coords, --uniform, --instance")
    try:
        if args.instance is not None:
            inst = load_instance(args.instance)
        elif args.uniform:
            inst = uniform_instance()
        else:
            _require_two_level(cfg)
            s = resolve_state(cfg, args.state, args.coords)
            if cfg.field.q == 2:
                m1, m2 = xyz_menus(cfg.field)
            else:
                m1, m2 = observable_menu(cfg.field, 1), observable_menu(cfg.field, 2)
            inst = instance_from_state(s, m1, m2)
    except (OSError, json.JSONDecodeError, HvInstanceError) as exc:
        raise InputError(str(exc)) from exc
    n_strat = 2 ** (len(inst.menu1) + len(inst.menu2))
    if args.emit_instance:
        return json.dumps(instance_to_dict(inst), indent=2) + "\n"
    if n_strat > MAX_HV_STRATEGIES and not cfg.force:
        raise ScaleError(f"{n_strat} strategies exceeds {MAX_HV_STRATEGIES}; pass --force")
    verdict = hv_feasible(inst)
    payload = verdict_to_dict(inst, verdict)
    text = (f"feasible: {verdict.feasible}\n"
            f"strategies surviving zero-cell filter: {verdict.survivors} of {n_strat}\n")
    return render(cfg, payload, None, text)


def cmd_orbits(cfg: RunConfig, args) -> str:
    _require_two_level(cfg)
    _tensor_guard(cfg)
    if args.exhaustive and cfg.field.q > MAX_EXHAUSTIVE_ORBIT_Q and not cfg.force:
        raise ScaleError("exhaustive orbit enumeration beyond q = 3 needs --force")
    orbits = local_orbits(cfg.field, exhaustive=args.exhaustive)
    out = []
    for orb in orbits:
        out.append({
            "size": len(orb),
            "kind": "product" if is_product(orb[0]) else "entangled",
            "members": [state_label(s) for s in orb],
        })
    payload = {"schema": SCHEMA, "field": str(cfg.field), "orbit_count": len(out), "orbits": out}
    rows = [["orbit", "kind", "size", "member"]]
    for k, o in enumerate(out):
        rows += [[k, o["kind"], o["size"], m] for m in o["members"]]
    text = "".join(f"orbit {k}: {o['kind']}, size {o['size']}\n" for k, o in enumerate(out))
    return render(cfg, payload, rows, text)


COMMANDS = {
    "field": cmd_field,
    "states": cmd_states,
    "table": cmd_table,
    "chsh": cmd_chsh,
    "hv": cmd_hv,
    "orbits": cmd_orbits,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="field characteristic (prime)")
    common.add_argument("--n", type=int, default=1, help="extension degree")
    common.add_argument("--N", type=int, default=2, help="single-particle dimension")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--force", action="store_true", help="override scale guards")

    parser = argparse.ArgumentParser(prog="galqm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("field", parents=[common], help="field construction and tables")
    sub.add_parser("states", parents=[common], help="projective points and two-party states")

    t = sub.add_parser("table", parents=[common], help="joint probability tables of a state")
    t.add_argument("--state", help="singlet, or S/ab/bc/ca/abc/acb over GF(2)")
    t.add_argument("--coords", help="comma-separated two-party coordinates")

    c = sub.add_parser("chsh", parents=[common], help="exhaustive CHSH sweep")
    c.add_argument("--mode", choices=MODES, default="entangled")
    c.add_argument("--unsigned", action="store_true", help="one observable per +- pair")
    c.add_argument("--max-witnesses", type=int, default=20)

    h = sub.add_parser("hv", parents=[common], help="local hidden-variable feasibility")
    h.add_argument("--state")
    h.add_argument("--coords")
    h.add_argument("--uniform", action="store_true", help="all cells 1/4, X/Y/Z menus")
    h.add_argument("--instance", help="instance JSON file")
    h.add_argument("--emit-instance", action="store_true",
                   help="print the instance JSON instead of solving it")

    o = sub.add_parser("orbits", parents=[common], help="orbits under local basis changes")
    o.add_argument("--exhaustive", action="store_true",
                   help="apply every pair of group elements instead of generators")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
        output = COMMANDS[args.command](cfg, args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ScaleError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except AssertionError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
