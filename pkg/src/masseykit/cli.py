"""Batch front-end: load complexes, algebras and rings, run computations,
emit machine-readable reports.

Reports are JSON (schema 1) with sorted keys and exact scalars rendered as
strings; scan subcommands stream one JSON object per line.  Exit codes:
0 success, 2 bad input, 3 cap exceeded, 1 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded, InvalidInput, MasseyKitError
from .fields import Field, QQ
from .facerings import (generator_class, golod_test, mainlemma_check,
                        rk_cohomology, triple_massey_scan, zk_massey)
from .generators import anr, cube, dodecahedron_nerve, multiwedge, polygon, qn
from .lie import GradedLie, ce_window, goncharova_table
from .massey import MasseyEngine
from .monomial import (MonomialQuotient, golod_series_check,
                       minimal_resolution_betti, serre_bound, koszul_homology)
from .simplicial import SimplicialComplex, hochster_table

SCHEMA = 1


@dataclass
class RunConfig:
    field: Field = QQ
    w_max: int = 12
    q_max: int = 3
    order_cap: int = 5
    budget: int = 8
    seed: int = 0
    fmt: str = "json"


def _scalar_str(x) -> str:
    from .fields import Fp

    if isinstance(x, Fp):
        return str(x.v)
    return str(Fraction(x))


def _read_input(path: str | None):
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(payload, out_path: str | None, stream=None):
    text = json.dumps(payload, sort_keys=True, indent=2) \
        if not isinstance(payload, str) else payload
    if out_path in (None, "-"):
        (stream or sys.stdout).write(text + "\n")
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _parse_supports(text: str) -> list:
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        out.append(tuple(int(v) for v in part.replace(",", " ").split()))
    return out


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("MASSEY_THREADS", "1")))
    except ValueError:
        return 1


def _outcome_json(outcome) -> dict:
    data = {
        "status": outcome.status,
        "n": outcome.n,
        "triviality": outcome.triviality,
        "complete": outcome.complete,
        "inconclusive": outcome.inconclusive,
    }
    if outcome.status == "affine":
        data["indeterminacy_dim"] = len(outcome.indeterminacy)
        data["strict"] = not outcome.indeterminacy
    if outcome.status == "strict":
        data["strict"] = True
    rep = outcome.representative
    if rep is not None:
        terms = []
        for mono, c in sorted(rep.rep.items(), key=lambda kv: repr(kv[0])):
            if isinstance(mono, tuple) and len(mono) == 2 and \
                    isinstance(mono[0], tuple):
                terms.append({"v": list(mono[0]), "u": list(mono[1]),
                              "c": _scalar_str(c)})
            else:
                terms.append({"mono": list(mono), "c": _scalar_str(c)})
        data["representative"] = terms
    return data


# ---- subcommand implementations ---------------------------------------------

def cmd_goncharova(args) -> int:
    table = goncharova_table(args.qmax, args.wmax, args.field)
    entries = [{"q": q, "w": w, "dim": d}
               for (q, w), d in sorted(table.items()) if d]
    _emit({"schema": SCHEMA, "command": "goncharova", "qmax": args.qmax,
           "wmax": args.wmax, "field": args.field.tag, "entries": entries},
          args.out)
    return 0


def cmd_cohomology(args) -> int:
    lie = GradedLie.from_json(_read_input(getattr(args, "infile", None)))
    dga = ce_window(lie, args.qmax, args.wmax, args.field)
    entries = []
    for q in range(1, args.qmax + 1):
        for w in range(1, args.wmax + 1):
            d = dga.cohomology_basis(dga.deg(q, w)).dim
            if d:
                entries.append({"q": q, "w": w, "dim": d})
    _emit({"schema": SCHEMA, "command": "cohomology", "name": lie.name,
           "field": args.field.tag, "entries": entries}, args.out)
    return 0


def cmd_betti(args) -> int:
    K = SimplicialComplex.from_json(_read_input(args.infile))
    table = _hochster_parallel(K, args.field)
    if K.m <= 7:
        rk_table, _cls = rk_cohomology(K, args.field)
        if rk_table.entries != table.entries:
            raise AssertionError("model tables disagree")
    if args.format == "csv":
        _emit(table.to_csv().rstrip("\n"), args.out)
    else:
        payload = table.to_json()
        payload.update({"schema": SCHEMA, "command": "betti",
                        "m": K.m, "total": {str(k): v for k, v in
                                            sorted(table.total().items())}})
        _emit(payload, args.out)
    return 0


def _hochster_parallel(K, field):
    threads = _threads()
    if threads <= 1 or K.m < 8:
        return hochster_table(K, field)
    import itertools
    from concurrent.futures import ProcessPoolExecutor

    from .simplicial import BettiTable
    subsets = [I for r in range(K.m + 1)
               for I in itertools.combinations(range(1, K.m + 1), r)]
    table = BettiTable(field.tag)
    jobs = [(K.m, K.minimal_nonfaces, I, field.tag) for I in subsets]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for entries in pool.map(_hochster_worker, jobs, chunksize=16):
            table.entries.update({(i, tuple(I)): d for i, I, d in entries})
    return table


def _hochster_worker(job):
    m, nonfaces, I, field_tag = job
    from .simplicial import ReducedCohomology
    K = SimplicialComplex(m, nonfaces)
    rc = ReducedCohomology(K, I, Field.from_tag(field_tag))
    out = []
    for q in range(-1, len(I)):
        d = rc.dim(q)
        if d:
            out.append((len(I) - q - 1, list(I), d))
    return out


def cmd_massey(args) -> int:
    K = SimplicialComplex.from_json(_read_input(args.infile))
    supports = _parse_supports(args.supports)
    dims = [int(v) for v in args.dims.split(";")] if args.dims else None
    classes = []
    for idx, I in enumerate(supports):
        q = dims[idx] if dims else None
        classes.append(generator_class(K, I, args.field, q=q))
    outcome = zk_massey(K, classes, args.field, budget=args.budget)
    payload = _outcome_json(outcome)
    payload.update({"schema": SCHEMA, "command": "massey",
                    "supports": [list(I) for I in supports],
                    "field": args.field.tag, "seed": args.seed})
    _emit(payload, args.out)
    return 0


def cmd_kstep(args) -> int:
    lie_data = json.loads(_read_input(getattr(args, "infile", None))) \
        if args.lie is None else json.loads(args.lie)
    lie = GradedLie.from_json(lie_data)
    scalars = [tuple(Fraction(v) for v in part.split(","))
               for part in args.classes.split(";") if part.strip()]
    n = len(scalars)
    w_max = max(2 * n + 4, args.wmax)
    dga = ce_window(GradedLie.from_json({"name": lie.name, "W": w_max})
                    if lie.name in ("m0", "witt_plus") else lie,
                    3, w_max, args.field)
    from .lie import one_dim_classes
    classes = one_dim_classes(
        dga, [(args.field.of(a), args.field.of(b)) for a, b in scalars])
    engine = MasseyEngine(dga, budget=args.budget, homogeneous_aux=False)
    out = engine.k_step(classes, args.k)
    payload = {
        "schema": SCHEMA, "command": "kstep", "k": args.k, "n": n,
        "defined": out.defined, "triviality": out.triviality,
        "field": args.field.tag, "seed": args.seed,
        "classes": [[_scalar_str(a), _scalar_str(b)] for a, b in scalars],
    }
    if out.defined:
        payload["tuple"] = [
            [{"mono": list(m), "c": _scalar_str(c)}
             for m, c in sorted(cls.rep.items())] for cls in out.classes]
    _emit(payload, args.out)
    return 0


def cmd_golod(args) -> int:
    K = SimplicialComplex.from_json(_read_input(args.infile))
    verdict = golod_test(K, args.field, order_cap=args.order_cap,
                         budget=args.budget)
    payload = {
        "schema": SCHEMA, "command": "golod", "m": K.m,
        "field": args.field.tag, "status": verdict.status,
        "order_cap": verdict.order_cap,
        "multiplication_trivial": verdict.multiplication_trivial,
        "massey_trivial_up_to_cap": verdict.massey_trivial_up_to_cap,
    }
    if verdict.witness is not None:
        kind = verdict.witness[0]
        payload["witness_kind"] = kind
        if kind == "product":
            payload["witness_supports"] = [list(verdict.witness[1].I),
                                           list(verdict.witness[2].I)]
        else:
            payload["witness_supports"] = [list(c.I)
                                           for c in verdict.witness[1]]
    _emit(payload, args.out)
    return 0


def cmd_triple_scan(args) -> int:
    K = SimplicialComplex.from_json(_read_input(args.infile))
    stream = sys.stdout if args.out in (None, "-") else \
        open(args.out, "w", encoding="utf-8")
    try:
        for (e1, e2, e3, outcome) in triple_massey_scan(
                K, args.field, budget=args.budget):
            line = _outcome_json(outcome)
            line.update({"schema": SCHEMA, "supports":
                         [list(e1), list(e2), list(e3)]})
            stream.write(json.dumps(line, sort_keys=True) + "\n")
    finally:
        if stream is not sys.stdout:
            stream.close()
    return 0


def cmd_mainlemma(args) -> int:
    K = SimplicialComplex.from_json(_read_input(args.infile))
    supports = _parse_supports(args.supports)
    dims = [int(v) for v in args.dims.split(";")] if args.dims \
        else [0] * len(supports)
    res = mainlemma_check(K, supports, dims, args.field)
    payload = {"schema": SCHEMA, "command": "mainlemma",
               "supports": [list(I) for I in supports], "dims": dims,
               "field": args.field.tag,
               "cond1": res["cond1"], "cond2": res["cond2"]}
    _emit(payload, args.out)
    return 0


def cmd_poincare(args) -> int:
    ring = MonomialQuotient.from_json(_read_input(args.infile))
    _alg, betti = koszul_homology(ring, args.field)
    tor = minimal_resolution_betti(ring, args.order, args.field)
    bound = serre_bound(ring.n_vars, betti, args.order)
    payload = {
        "schema": SCHEMA, "command": "poincare", "n": ring.n_vars,
        "field": args.field.tag, "order": args.order,
        "koszul_betti": {str(i): b for i, b in sorted(betti.items())},
        "tor_dims": tor,
        "serre_bound": [_scalar_str(c) for c in bound.coeffs],
        "golod_equality": golod_series_check(ring, args.order, args.field),
    }
    _emit(payload, args.out)
    return 0


def cmd_generate(args) -> int:
    kind = args.kind
    if kind == "cube":
        obj = cube(args.n)
    elif kind == "qn":
        obj = qn(args.n)
    elif kind == "polygon":
        obj = polygon(args.m)
    elif kind == "dodecahedron-nerve":
        obj = dodecahedron_nerve()
    elif kind == "anr":
        obj = anr(args.n, args.r)
    elif kind == "multiwedge":
        base = SimplicialComplex.from_json(_read_input(args.infile))
        J = [int(v) for v in args.j.replace(",", " ").split()]
        obj = multiwedge(base, J)
    else:
        raise InvalidInput(f"unknown generator {kind!r}")
    _emit(json.loads(obj.to_json()), args.out)
    return 0


# ---- argument wiring ---------------------------------------------------------

def _field_arg(text: str) -> Field:
    try:
        return Field.from_tag(text)
    except MasseyKitError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="masseykit",
        description="exact cohomology and Massey product computations")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, infile=True):
        p.add_argument("--field", type=_field_arg, default=QQ,
                       help="q or fp:<prime>")
        p.add_argument("--out", default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=8)
        if infile:
            p.add_argument("--in", dest="infile", default=None,
                           help="input path (default: stdin)")

    p = sub.add_parser("goncharova", help="dim H^q_w of the positive Witt algebra")
    common(p, infile=False)
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--wmax", type=int, required=True)
    p.set_defaults(func=cmd_goncharova)

    p = sub.add_parser("cohomology", help="CE cohomology of a Lie presentation")
    common(p)
    p.add_argument("--qmax", type=int, default=3)
    p.add_argument("--wmax", type=int, default=12)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("betti", help="per-subset Betti table of a complex")
    common(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("massey", help="Massey product of face-ring classes")
    common(p)
    p.add_argument("--supports", required=True,
                   help='e.g. "1,4;2,5;3,6"')
    p.add_argument("--dims", default=None, help='e.g. "0;0;0"')
    p.set_defaults(func=cmd_massey)

    p = sub.add_parser("kstep", help="k-step product of 1-classes over a Lie algebra")
    common(p)
    p.add_argument("--lie", default=None,
                   help='e.g. {"name":"m0","W":12} (default: stdin)')
    p.add_argument("--classes", required=True,
                   help='alpha,beta pairs: "1,0;0,1;1,2"')
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--wmax", type=int, default=12)
    p.set_defaults(func=cmd_kstep)

    p = sub.add_parser("golod", help="Golod certification up to an order cap")
    common(p)
    p.add_argument("--order-cap", dest="order_cap", type=int, default=None)
    p.set_defaults(func=cmd_golod)

    p = sub.add_parser("triple-scan",
                       help="scan ordered triples of disjoint missing edges")
    common(p)
    p.set_defaults(func=cmd_triple_scan)

    p = sub.add_parser("mainlemma", help="definedness/strictness conditions")
    common(p)
    p.add_argument("--supports", required=True)
    p.add_argument("--dims", default=None)
    p.set_defaults(func=cmd_mainlemma)

    p = sub.add_parser("poincare", help="resolution dims against the Serre bound")
    common(p)
    p.add_argument("--order", type=int, default=6)
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("generate", help="built-in complexes and rings")
    common(p)
    p.add_argument("kind", choices=("cube", "qn", "multiwedge", "anr",
                                    "polygon", "dodecahedron-nerve"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--j", default=None, help="copy counts for multiwedge")
    p.set_defaults(func=cmd_generate)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (InvalidInput, json.JSONDecodeError, KeyError, TypeError,
            ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MasseyKitError, AssertionError) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
