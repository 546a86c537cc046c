"""Command line front end producing reproducible JSON or text reports.

Exit codes: 0 success, 2 malformed input (schema), 3 mathematical
precondition failed, 4 configured cap exceeded.  Reports are
deterministic: stable orderings everywhere, randomness only through a
recorded seed, and worker-pool fan-out never reorders results.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import catalog, serialize
from .algebras import (
    EquivariantAlgebra,
    functions_on_group,
    is_cover,
    is_torsor,
    section_ranks,
)
from .errors import (
    CapExceeded,
    ComputationError,
    HypothesisUnmet,
    MissingRootOfUnity,
    NonInvertibleOrder,
    NonSplitFiber,
    NotAssociative,
    NotGoodSet,
    SchemaError,
)
from .induction import ind_algebra, omega_of_induced_check
from .ramification import (
    CoverOverDVR,
    fiber_regularity,
    kummer_builder,
    tame_check,
    trace_decomposition_check,
    trace_package,
)
from .reps import IrrepSet
from .scalars import PolyRing
from .witnesses import build_witness

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_PRECONDITION = 3
EXIT_CAP = 4


def _pmap(fn, items, jobs: int) -> list:
    """Apply fn to each item, optionally on a pool, keeping input order."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _json_val(v):
    if v is math.inf:
        return None
    return v


# ---------------------------------------------------------------------------
# Input helpers


def _load_algebra(path: str) -> EquivariantAlgebra:
    return serialize.algebra_from_json(serialize.load_document(path, "algebra"))


def _load_basis_for(alg: EquivariantAlgebra, path: str | None) -> IrrepSet:
    if path is None:
        ring = alg.ring
        field = ring.field if isinstance(ring, PolyRing) else ring
        return IrrepSet.compute(alg.group, field)
    basis = serialize.irrepset_from_json(serialize.load_document(path, "irreps"))
    if basis.group.mul != alg.group.mul:
        raise SchemaError("irreducible list belongs to a different group")
    ring = alg.ring
    field = ring.field if isinstance(ring, PolyRing) else ring
    if basis.field != field:
        raise SchemaError("irreducible list is over a different field")
    return basis


def _parse_subgroup(raw: str) -> tuple:
    try:
        elements = tuple(sorted(int(x) for x in raw.split(",")))
    except ValueError as exc:
        raise SchemaError(f"bad subgroup element list {raw!r}") from exc
    if not elements:
        raise SchemaError("empty subgroup element list")
    return elements


# ---------------------------------------------------------------------------
# Commands


def _cmd_irreps(args) -> tuple[dict, list[str]]:
    group = catalog.parse_group(args.group)
    field = (
        serialize.field_from_spec(args.field)
        if args.field
        else catalog.default_field(group)
    )
    basis = IrrepSet.compute(group, field)
    doc = serialize.irrepset_to_json(basis)
    lines = [f"group order {group.n}, field {serialize.field_to_spec(field)}"]
    for i, rep in enumerate(basis):
        lines.append(f"irreducible {i}: dimension {rep.dim}")
    lines.append(f"sum of squares: {sum(d * d for d in basis.degrees)}")
    return doc, lines


def _cmd_omega(args) -> tuple[dict, list[str]]:
    alg = _load_algebra(args.algebra)
    basis = _load_basis_for(alg, args.irreps)
    ranks = section_ranks(alg, basis)
    cover = all(r == rep.dim for r, rep in zip(ranks, basis))
    doc = {
        "dim": alg.dim,
        "degrees": list(basis.degrees),
        "ranks": list(ranks),
        "is_cover": cover,
    }
    lines = [
        f"ranks {tuple(ranks)} against degrees {basis.degrees}",
        f"cover: {'yes' if cover else 'no'}",
    ]
    return doc, lines


def _cmd_build_algebra(args) -> tuple[dict, list[str]]:
    from .algebras import functor_to_algebra

    data = serialize.functor_from_json(
        serialize.load_document(args.functor, "functor")
    )
    alg = functor_to_algebra(data)
    doc = serialize.algebra_to_json(alg)
    lines = [f"built algebra of dimension {alg.dim} over group order {alg.group.n}"]
    return doc, lines


def _cmd_is_cover(args) -> tuple[dict, list[str]]:
    alg = _load_algebra(args.algebra)
    basis = _load_basis_for(alg, args.irreps)
    verdict = is_cover(alg, basis)
    ranks = section_ranks(alg, basis)
    doc = {"is_cover": verdict, "ranks": list(ranks), "degrees": list(basis.degrees)}
    return doc, [f"cover: {'yes' if verdict else 'no'}"]


def _cmd_is_torsor(args) -> tuple[dict, list[str]]:
    alg = _load_algebra(args.algebra)
    verdict = is_torsor(alg)
    doc = {"is_torsor": verdict, "dim": alg.dim, "group_order": alg.group.n}
    return doc, [f"torsor: {'yes' if verdict else 'no'}"]


def _cmd_induce(args) -> tuple[dict, list[str]]:
    group = catalog.parse_group(args.group)
    elements = _parse_subgroup(args.subgroup)
    base = _load_algebra(args.algebra)
    model = ind_algebra(group, elements, base)
    doc = serialize.algebra_to_json(model.algebra)
    lines = [
        f"induced dimension {model.algebra.dim} "
        f"= index {len(model.reps)} x base {base.dim}"
    ]
    return doc, lines


def _cmd_split(args) -> tuple[dict, list[str]]:
    from .induction import split_as_induced

    alg = _load_algebra(args.algebra)
    res = split_as_induced(alg)
    doc = {"connected": res["connected"], "subgroup": list(res["subgroup"])}
    lines = []
    if res["connected"]:
        lines.append("connected: the algebra is not a proper induction")
    else:
        crit = res["criterion"]
        doc["disjoint"] = crit["disjoint"]
        doc["covers"] = crit["covers"]
        doc["verified"] = crit["verified"]
        doc["base_algebra"] = serialize.algebra_to_json(crit["model"].base)
        doc["isomorphism"] = serialize._matrix_to_json(crit["iso"])
        lines.append(
            f"induced from the subgroup {res['subgroup']} "
            f"(verified: {crit['verified']})"
        )
    return doc, lines


def _cmd_witness(args) -> tuple[dict, list[str]]:
    group = catalog.parse_group(args.group)
    field = serialize.field_from_spec(args.field) if args.field else None
    report = build_witness(group, field)
    doc = {
        "group": serialize.group_to_json(report.group),
        "field": serialize.field_to_spec(report.field),
        "descent_chain": [list(step) for step in report.chain],
        "subgroup": list(report.subgroup_elements),
        "normal_subgroup": list(report.normal_elements),
        "prime": report.prime,
        "conjugation_generator": report.conj_generator,
        "character_permutation": list(report.char_perm),
        "character_orbits": [list(o) for o in report.orbits],
        "ranks": list(report.ranks),
        "first_irregular_index": report.delta,
        "verdicts": dict(report.verdicts),
        "characters": serialize.irrepset_to_json(report.characters),
        "base_algebra": serialize.algebra_to_json(report.base_algebra),
        "induced_algebra": serialize.algebra_to_json(report.algebra),
    }
    lines = [
        f"subgroup of order {len(report.subgroup_elements)}, "
        f"normal part of order {len(report.normal_elements)}, prime {report.prime}",
        f"rank vector {report.ranks}, first irregular index {report.delta}",
        f"verdicts: {report.verdicts}",
    ]
    return doc, lines


def _cmd_ramify(args) -> tuple[dict, list[str]]:
    if args.kummer:
        try:
            n, m = (int(x) for x in args.kummer.split(","))
        except ValueError as exc:
            raise SchemaError(f"bad exponent pair {args.kummer!r}") from exc
        if args.field:
            field = serialize.field_from_spec(args.field)
        else:
            field = (
                serialize.field_from_spec("Q")
                if n <= 2
                else serialize.field_from_spec(f"Qzeta:{n}")
            )
        cover = kummer_builder(n, m, field)
    elif args.algebra:
        alg = _load_algebra(args.algebra)
        if not isinstance(alg.ring, PolyRing):
            raise SchemaError(
                "ramification needs polynomial entries; set \"poly\": true"
            )
        cover = CoverOverDVR(alg)
    else:
        raise SchemaError("pass either --algebra or --kummer")
    basis = None
    if args.irreps:
        basis = serialize.irrepset_from_json(
            serialize.load_document(args.irreps, "irreps")
        )
        if basis.group.mul != cover.group.mul:
            raise SchemaError("irreducible list belongs to a different group")
        if basis.field != cover.field:
            raise SchemaError("irreducible list is over a different field")
    else:
        char = cover.field.characteristic
        if not (char and cover.group.n % char == 0):
            try:
                basis = IrrepSet.compute(cover.group, cover.field)
            except (MissingRootOfUnity, NotGoodSet, NonInvertibleOrder):
                basis = None
    pkg = trace_package(cover)
    doc = {
        "dim": cover.dim,
        "group_order": cover.group.n,
        "field": serialize.field_to_spec(cover.field),
        "disc_valuation": _json_val(pkg.disc_valuation),
        "gram_divisor_valuations": [
            _json_val(p.valuation()) for p in pkg.gram_divisors
        ],
    }
    lines = [f"discriminant valuation: {pkg.disc_valuation}"]
    verdict = tame_check(cover, basis)
    doc["tame"] = {k: _json_val(v) for k, v in verdict.items()}
    lines.append(
        "conditions: "
        + ", ".join(
            f"{k}={verdict[k]}" for k in ("cond2", "cond4", "cond5", "consistent")
        )
    )
    if basis is not None:
        try:
            full = trace_package(cover, basis)
            doc["fixed_ranks"] = list(full.fixed_ranks)
            doc["section_valuations"] = [
                _json_val(v) for v in full.section_valuations
            ]
            lines.append(f"section valuations: {full.section_valuations}")
        except ComputationError as exc:
            doc["section_valuations"] = None
            doc["sections_error"] = f"{type(exc).__name__}: {exc}"
        try:
            identity_report = trace_decomposition_check(cover, basis)
            doc["trace_identity"] = {
                k: (
                    [_json_val(x) for x in v]
                    if isinstance(v, tuple)
                    else _json_val(v)
                )
                for k, v in identity_report.items()
            }
            lines.append(f"trace factorization holds: {identity_report['ok']}")
        except HypothesisUnmet as exc:
            doc["trace_identity"] = {"skipped": str(exc)}
    try:
        fib = fiber_regularity(cover)
        doc["fiber"] = {
            "all_regular": fib["all_regular"],
            "all_tame": fib["all_tame"],
            "points": [
                {
                    "idempotent": [
                        serialize.scalar_to_json(c) for c in p["idempotent"]
                    ],
                    "cotangent_dim": p["cotangent_dim"],
                    "regular": p["regular"],
                    "ramification_index": p["ramification_index"],
                    "tame": p["tame"],
                }
                for p in fib["points"]
            ],
        }
        lines.append(
            f"fiber points: {len(fib['points'])}, "
            f"all regular: {fib['all_regular']}, all tame: {fib['all_tame']}"
        )
    except NonSplitFiber as exc:
        doc["fiber"] = {"error": str(exc)}
        lines.append(f"fiber does not split: {exc}")
    return doc, lines


# ---------------------------------------------------------------------------
# Self test


def _suite_irreps(seed: int, jobs: int) -> list[tuple[str, bool]]:
    def one(item):
        name, group = item
        basis = IrrepSet.compute(group, catalog.default_field(group))
        ok = sum(d * d for d in basis.degrees) == group.n
        return (name, ok)

    return _pmap(one, catalog.catalog_groups(), jobs)


def _suite_roundtrip(seed: int, jobs: int) -> list[tuple[str, bool]]:
    from .algebras import verify_roundtrip

    def one(item):
        name, group = item
        field = catalog.default_field(group)
        basis = IrrepSet.compute(group, field)
        cases = [("torsor", functions_on_group(group, field))]
        cases += catalog.roundtrip_instances(group, field, seed + group.n, count=2)
        ok = True
        for _, alg in cases:
            report = verify_roundtrip(alg, basis)
            if not all(report.values()):
                ok = False
        return (name, ok)

    return _pmap(one, catalog.catalog_groups(), jobs)


def _suite_induction(seed: int, jobs: int) -> list[tuple[str, bool]]:
    pairs = [
        (name, group, sub)
        for name, group, sub in catalog.catalog_pairs()
        if name in ("S3", "D4")
    ]

    def one(item):
        name, group, sub = item
        field = catalog.default_field(group)
        sub_group, embed = group.subgroup_as_group(sub)
        base = functions_on_group(sub_group, field)
        model = ind_algebra(group, sub, base)
        index = group.n // len(sub)
        ok = model.algebra.dim == index * base.dim
        g_basis = IrrepSet.compute(group, field)
        h_basis = IrrepSet.compute(sub_group, field)
        ok = ok and omega_of_induced_check(group, sub, base, g_basis, h_basis)["ok"]
        return (f"{name}<-{len(sub)}", ok)

    return _pmap(one, pairs, jobs)


def _suite_witness(seed: int, jobs: int) -> list[tuple[str, bool]]:
    targets = [
        (name, group)
        for name, group in catalog.catalog_groups()
        if name in ("S3", "D4", "Q8", "A4")
    ]

    def one(item):
        name, group = item
        report = build_witness(group)
        v = report.verdicts
        ok = (
            v.get("induced_is_cover") is True
            and v.get("restriction_law") is True
            and v.get("base_has_regular_ranks") is False
        )
        return (name, ok)

    return _pmap(one, targets, jobs)


def _suite_ramify(seed: int, jobs: int) -> list[tuple[str, bool]]:
    def one(entry):
        cover = entry["cover"]
        basis = None
        if entry["equivariant"]:
            basis = IrrepSet.compute(cover.group, entry["field"])
        pkg = trace_package(cover)
        ok = pkg.disc_valuation == entry["disc_valuation"]
        verdict = tame_check(cover, basis)
        ok = ok and verdict["consistent"]
        return (entry["name"], ok)

    return _pmap(one, catalog.ramify_battery(), jobs)


def _suite_negative_control(seed: int, jobs: int) -> list[tuple[str, bool]]:
    alg = catalog.scaled_line_counterexample()
    mult = alg.mult.copy()
    one = alg.ring.one()
    mult[1, 2, 0] = one
    mult[2, 1, 0] = one
    try:
        EquivariantAlgebra(alg.group, alg.ring, mult, alg.unit, list(alg.action))
        return [("flip", False)]
    except NotAssociative:
        return [("flip", True)]


_SUITES = [
    ("irreps", _suite_irreps),
    ("roundtrip", _suite_roundtrip),
    ("induction", _suite_induction),
    ("witness", _suite_witness),
    ("ramify", _suite_ramify),
    ("negative-control", _suite_negative_control),
]


def _cmd_selftest(args) -> tuple[dict, list[str]]:
    doc = {"seed": args.seed, "jobs": args.jobs, "suites": {}, "timings": {}}
    lines = []
    all_ok = True
    for name, fn in _SUITES:
        started = time.perf_counter()
        cases = fn(args.seed, args.jobs)
        elapsed = time.perf_counter() - started
        ok = all(flag for _, flag in cases)
        all_ok = all_ok and ok
        doc["suites"][name] = {
            "ok": ok,
            "cases": [{"name": c, "ok": flag} for c, flag in cases],
        }
        doc["timings"][name] = round(elapsed, 3)
        lines.append(f"suite {name}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f} s)")
    doc["ok"] = all_ok
    lines.append(f"overall: {'PASS' if all_ok else 'FAIL'}")
    return doc, lines


# ---------------------------------------------------------------------------
# Wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equicover",
        description="exact computations with equivariant finite algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, algebra=False, irreps=False, group=False, field=False):
        p.add_argument("--out", help="write the JSON report to this file")
        p.add_argument(
            "--format",
            choices=("json", "text"),
            default="json",
            help="stdout format (default json)",
        )
        if algebra:
            p.add_argument("--algebra", help="path to an algebra document")
        if irreps:
            p.add_argument("--irreps", help="path to an irreducible list document")
        if group:
            p.add_argument("--group", required=True, help="group spec, e.g. S3")
        if field:
            p.add_argument("--field", help="field spec: Q, Qzeta:N or Fp:p")

    p = sub.add_parser("irreps", help="irreducible list for a named group")
    common(p, group=True, field=True)
    p.set_defaults(fn=_cmd_irreps)

    p = sub.add_parser("omega", help="section ranks of an algebra")
    common(p, algebra=True, irreps=True)
    p.set_defaults(fn=_cmd_omega)

    p = sub.add_parser("build-algebra", help="rebuild an algebra from functor data")
    common(p)
    p.add_argument("--functor", required=True, help="path to a functor document")
    p.set_defaults(fn=_cmd_build_algebra)

    p = sub.add_parser("is-cover", help="rank equals dimension test")
    common(p, algebra=True, irreps=True)
    p.set_defaults(fn=_cmd_is_cover)

    p = sub.add_parser("is-torsor", help="free transitive test")
    common(p, algebra=True)
    p.set_defaults(fn=_cmd_is_torsor)

    p = sub.add_parser("induce", help="induce a subgroup algebra upward")
    common(p, algebra=True, group=True)
    p.add_argument(
        "--subgroup",
        required=True,
        help="comma separated element indices, e.g. 0,3,4",
    )
    p.set_defaults(fn=_cmd_induce)

    p = sub.add_parser("split", help="recognize an algebra as induced")
    common(p, algebra=True)
    p.set_defaults(fn=_cmd_split)

    p = sub.add_parser("witness", help="build a reducibility witness")
    common(p, group=True, field=True)
    p.set_defaults(fn=_cmd_witness)

    p = sub.add_parser("ramify", help="trace form and tameness over k[t]")
    common(p, algebra=True, irreps=True, field=True)
    p.add_argument("--kummer", help="build the cover x^n = t^m, pass n,m")
    p.add_argument(
        "--report",
        dest="format",
        choices=("json", "text"),
        help="alias for --format",
    )
    p.set_defaults(fn=_cmd_ramify)

    p = sub.add_parser("selftest", help="run the built-in acceptance suites")
    common(p)
    p.add_argument("--jobs", type=int, default=1, help="worker pool size")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized cases")
    p.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, lines = args.fn(args)
    except CapExceeded as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CAP
    except SchemaError as exc:
        print(f"SchemaError: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except ComputationError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ValueError, ArithmeticError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.out:
        serialize.dump_document(args.out, doc)
    if args.format == "text":
        for line in lines:
            print(line)
    elif not args.out:
        json.dump(doc, sys.stdout, indent=1, sort_keys=True)
        print()
    if args.command == "selftest" and not doc["ok"]:
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
