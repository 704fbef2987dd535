"""Command-line harness: every engine query as a subcommand printing ``key = value`` lines.

Exit status is 0 for a definite answer, 2 for a budget- or depth-limited one
(Unknown, OpenUpToDepth, DepthCapped, an obstructed greedy construction) and
1 for input errors or failed checks.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .closed import BudgetExceeded, SafetyAutomaton, cb_derivative, default_budget, perfect_kernel
from .corpus import battery
from .decomposition import DecompositionStatus, kernel_decompose
from .finite_map import FiniteStageMap, TableError, table_check_nowhere_open, table_check_open
from .hset import (
    ConstructionObstructed,
    DConstruction,
    HFamily,
    check_h_conditions,
    construct_d,
    format_index,
    generate_h,
    verify_d,
)
from .omega import SizeLimitError, closure
from .oracle import DepthTooLarge, compare_all_depths
from .resolvability import Status, check_resolvable
from .spec_format import ParseError, SemanticError, bundled_model, parse_spec
from .transducers import (
    DomainViolation,
    OpenStatus,
    Transducer,
    check_nowhere_open,
    check_open,
    image_closed,
    is_injective,
    preimage_closed,
)

OK, FAIL, LIMITED = 0, 1, 2


def compact(f: SafetyAutomaton) -> str:
    """One-line rendering, e.g. ``q0[0:q0,1:q1] q1[0:q0]``."""
    if f.is_empty():
        return "empty"
    parts = []
    for q, row in enumerate(f.trans):
        moves = ",".join(f"{a}:q{r}" for a, r in zip("01", row) if r is not None)
        parts.append(f"q{q}[{moves}]")
    return " ".join(parts)


def emit(**pairs) -> None:
    for key, value in pairs.items():
        if isinstance(value, bool):
            value = str(value).lower()
        elif value is None:
            value = "-"
        print(f"{key} = {value}")


def _model(args):
    model = bundled_model()
    for path in args.spec or []:
        model = model.merge(parse_spec(Path(path).read_text()))
    return model


def _table_z(m: FiniteStageMap, z: SafetyAutomaton | None):
    if z is None:
        return None
    return frozenset(v for v in m.domain if z.has_prefix(v))


# -- commands -------------------------------------------------------------------------


def cmd_resolvable(args, model) -> int:
    e = model.eval_set(args.set)
    ambient = model.closed_set(args.ambient) if args.ambient else None
    v = check_resolvable(e, ambient, args.budget)
    emit(status=v.status.value, steps=v.steps, witness=compact(v.witness) if v.witness is not None else None)
    return LIMITED if v.status == Status.UNKNOWN else OK


def cmd_closure(args, model) -> int:
    f = closure(model.eval_set(args.set))
    emit(states=f.num_states, closure=compact(f))
    if args.emit:
        print(f.to_text("closure"))
    return OK


def cmd_cbderiv(args, model) -> int:
    f = model.closed_set(args.closed)
    g = cb_derivative(f)
    emit(states=g.num_states, derivative=compact(g), unchanged=g == f)
    return OK


def cmd_kernel(args, model) -> int:
    f = model.closed_set(args.closed)
    try:
        kernel, rank, countable = perfect_kernel(f, args.budget)
    except BudgetExceeded:
        emit(status="Unknown", budget=args.budget or default_budget(64))
        return LIMITED
    emit(status="Stable", rank=rank, countable=countable, kernel=compact(kernel))
    return OK


def cmd_image(args, model) -> int:
    t = _transducer(model, args.map)
    f = model.closed_set(args.closed) if args.closed else None
    g = image_closed(t, f)
    emit(states=g.num_states, image=compact(g))
    if args.emit:
        print(g.to_text("image"))
    return OK


def cmd_preimage(args, model) -> int:
    t = _transducer(model, args.map)
    g = preimage_closed(t, model.closed_set(args.closed))
    emit(states=g.num_states, preimage=compact(g))
    return OK


def cmd_injective(args, model) -> int:
    f = model.map(args.map)
    if isinstance(f, FiniteStageMap):
        emit(status="Injective" if f.is_injective() else "NotInjective")
        return OK
    v = is_injective(f, args.budget)
    wit = None if v.witness is None else f"{v.witness[0]} {v.witness[1]}"
    emit(status=v.status, depth=v.depth, witness=wit)
    return OK


def cmd_open_check(args, model) -> int:
    f = model.map(args.map)
    v = table_check_open(f) if isinstance(f, FiniteStageMap) else check_open(f, args.depth_cap)
    emit(status=v.status.value, witness=v.witness, depth=v.depth)
    return LIMITED if v.status == OpenStatus.OPEN_UP_TO_DEPTH else OK


def cmd_nowhere_open(args, model) -> int:
    f = model.map(args.map)
    z = model.closed_set(args.closed) if args.closed else None
    if isinstance(f, FiniteStageMap):
        v = table_check_nowhere_open(f, _table_z(f, z))
    else:
        v = check_nowhere_open(f, f.domain if z is None else z, args.depth_cap)
    emit(status=v.status.value, depth=v.depth, witness=v.witness, saturated=v.saturated)
    return OK


def cmd_decompose(args, model) -> int:
    f = model.map(args.map)
    r = kernel_decompose(f, args.budget_depth, args.budget_rounds, args.depth_cap)
    emit(status=r.status.value, rounds=len(r.trace), pieces=len(r.pieces))
    for n, (stem, piece) in enumerate(r.pieces):
        shown = compact(piece) if isinstance(piece, SafetyAutomaton) else f"{len(piece)} leaves"
        emit(**{f"piece.{n}.stem": stem or "eps", f"piece.{n}.set": shown})
    residual = compact(r.residual) if isinstance(r.residual, SafetyAutomaton) else f"{len(r.residual)} leaves"
    emit(
        residual=residual,
        nowhere=None if r.nowhere is None else r.nowhere.status.value,
        injective=r.injective,
        piecewise_homeomorphism=r.piecewise_homeomorphism,
    )
    return LIMITED if r.status == DecompositionStatus.DEPTH_CAPPED else OK


def cmd_gen_h(args, model) -> int:
    print(generate_h(args.k, args.i).to_text())
    return OK


def cmd_check_h(args, model) -> int:
    h = HFamily.parse(sys.stdin.read())
    r = check_h_conditions(h)
    emit(points=r.points, a=r.a, a_printed=r.a_printed, b=r.b, c=r.c, no_isolated=r.no_isolated, ok=r.ok)
    return OK if r.ok else FAIL


def cmd_d_construct(args, model) -> int:
    f = model.map(args.map)
    z = model.closed_set(args.closed) if args.closed else None
    if isinstance(f, FiniteStageMap):
        z = _table_z(f, z)
    try:
        c = construct_d(f, z, args.N, args.d, args.max_stem)
    except ConstructionObstructed as exc:
        emit(status="Obstructed", index=format_index(exc.index), reason=exc.reason)
        return LIMITED
    print(c.to_text())
    return OK


def cmd_verify_d(args, model) -> int:
    c = DConstruction.parse(sys.stdin.read())
    f = model.map(args.map) if args.map else None
    z = model.closed_set(args.closed) if args.closed else None
    if isinstance(f, FiniteStageMap):
        z = _table_z(f, z)
    r = verify_d(c, f, z)
    emit(
        points=len(c.d_points),
        discrete=r.discrete,
        dense=r.dense,
        codense=r.codense,
        images_ok=r.images_ok,
        image_match=r.image_match,
        ok=r.ok,
    )
    return OK if r.ok else FAIL


def cmd_oracle_check(args, model) -> int:
    if args.kind is None:
        jobs = battery(model)
    else:
        inputs = {}
        if args.set:
            inputs["e"] = model.eval_set(args.set)
        if args.closed:
            inputs["f"] = model.closed_set(args.closed)
        if args.ambient:
            inputs["ambient"] = model.closed_set(args.ambient)
        if args.map:
            inputs["t"] = _transducer(model, args.map)
        if args.y:
            inputs["y"] = model.closed_set(args.y)
        if args.i:
            inputs["i"] = model.closed_set(args.i)
        jobs = [(args.kind, args.kind, inputs)]
    failed = 0
    for label, kind, inputs in jobs:
        try:
            reports = compare_all_depths(kind, args.max_depth, args.lookahead, **inputs)
        except KeyError as exc:
            raise SemanticError(f"query {kind!r} needs input {exc.args[0]!r}") from None
        bad = [r.depth for r in reports if not r.agree]
        failed += bool(bad)
        emit(**{label: "agree" if not bad else "disagree@" + ",".join(map(str, bad))})
    emit(queries=len(jobs), failed=failed)
    return FAIL if failed else OK


def _transducer(model, ref: str) -> Transducer:
    f = model.map(ref)
    if not isinstance(f, Transducer):
        raise SemanticError(f"{ref!r} is a table; this query needs a transducer")
    return f


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cantortopo", description=__doc__.splitlines()[0])
    p.add_argument("--spec", action="append", help="extra definition file (repeatable); the bundled corpus is always loaded")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("resolvable", cmd_resolvable, "decide resolvability of a regular set")
    sp.add_argument("--set", required=True, help="set expression, e.g. regset:Efin1 or inter(regset:Efin1,cyl(11))")
    sp.add_argument("--ambient", help="closed set X (default: the closure of the set)")
    sp.add_argument("--budget", type=int, help="derivative budget (default ENGINE_BUDGET or 50)")

    sp = add("closure", cmd_closure, "topological closure of a regular set")
    sp.add_argument("--set", required=True)
    sp.add_argument("--emit", action="store_true", help="also print the automaton block")

    sp = add("cbderiv", cmd_cbderiv, "one Cantor-Bendixson derivative")
    sp.add_argument("--closed", required=True)

    sp = add("kernel", cmd_kernel, "perfect kernel and Cantor-Bendixson rank")
    sp.add_argument("--closed", required=True)
    sp.add_argument("--budget", type=int)

    for name, fn, text in (("image", cmd_image, "image of a closed set"), ("preimage", cmd_preimage, "preimage of a closed set")):
        sp = add(name, fn, text)
        sp.add_argument("--map", required=True)
        sp.add_argument("--closed", required=(name == "preimage"))
        if name == "image":
            sp.add_argument("--emit", action="store_true")

    sp = add("injective", cmd_injective, "injectivity with a witness pair")
    sp.add_argument("--map", required=True)
    sp.add_argument("--budget", type=int, default=16)

    sp = add("open-check", cmd_open_check, "is the map open onto its image")
    sp.add_argument("--map", required=True)
    sp.add_argument("--depth-cap", type=int, default=12)

    sp = add("nowhere-open", cmd_nowhere_open, "is the restriction to Z nowhere open")
    sp.add_argument("--map", required=True)
    sp.add_argument("--closed", help="Z (default: the whole domain)")
    sp.add_argument("--depth-cap", type=int, default=12)

    sp = add("decompose", cmd_decompose, "strip open clopen pieces down to a nowhere-open kernel")
    sp.add_argument("--map", required=True)
    sp.add_argument("--budget-depth", type=int, default=10)
    sp.add_argument("--budget-rounds", type=int, default=32)
    sp.add_argument("--depth-cap", type=int, default=12)

    sp = add("gen-h", cmd_gen_h, "print the finite stage of the H family")
    sp.add_argument("--k", type=int, default=4, help="maximum index length")
    sp.add_argument("--i", type=int, default=6, help="maximum index entry")

    add("check-h", cmd_check_h, "check an H family read from stdin")

    sp = add("d-construct", cmd_d_construct, "greedy finite-stage construction of D")
    sp.add_argument("--map", required=True)
    sp.add_argument("--closed", help="Z (default: the whole domain)")
    sp.add_argument("--N", type=int, default=2)
    sp.add_argument("--d", type=int, default=3)
    sp.add_argument("--max-stem", type=int, default=16)

    sp = add("verify-d", cmd_verify_d, "verify a construction read from stdin")
    sp.add_argument("--map")
    sp.add_argument("--closed")

    sp = add("oracle-check", cmd_oracle_check, "compare engine and brute-force oracle up to a depth")
    sp.add_argument("--kind", choices=["closure", "empty", "image", "derivative", "rel_open"], help="default: the corpus battery")
    sp.add_argument("--set")
    sp.add_argument("--closed")
    sp.add_argument("--ambient")
    sp.add_argument("--map")
    sp.add_argument("--y")
    sp.add_argument("--i")
    sp.add_argument("--max-depth", type=int, default=8)
    sp.add_argument("--lookahead", type=int, default=4)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        model = _model(args)
        return args.fn(args, model)
    except (
        ParseError,
        SemanticError,
        TableError,
        DomainViolation,
        DepthTooLarge,
        SizeLimitError,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL
