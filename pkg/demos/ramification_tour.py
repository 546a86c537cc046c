"""Trace forms, discriminants and tameness over the ring k[t].

Walks the stock battery of covers and prints what each criterion sees.
Run with: python3 demos/ramification_tour.py
"""

from equicover.catalog import ramify_battery
from equicover.ramification import (
    fiber_regularity,
    tame_check,
    trace_decomposition_check,
    trace_package,
)
from equicover.errors import HypothesisUnmet, NonSplitFiber
from equicover.reps import IrrepSet


def main():
    for entry in ramify_battery():
        cover = entry["cover"]
        name = entry["name"]
        basis = None
        if entry["equivariant"]:
            basis = IrrepSet.compute(cover.group, entry["field"])
        pkg = trace_package(cover, basis)
        print(f"{name}: dim {cover.dim} over a group of order {cover.group.n}")
        print(f"  discriminant valuation: {pkg.disc_valuation}")
        if basis is not None:
            print(f"  per-irreducible section valuations: {pkg.section_valuations}")
        verdict = tame_check(cover, basis)
        print(
            "  conditions: "
            + ", ".join(
                f"{k}={verdict[k]}"
                for k in ("cond2", "cond4", "cond5", "consistent")
            )
        )
        if basis is not None:
            try:
                rep = trace_decomposition_check(cover, basis)
                print(f"  trace factorization holds: {rep['ok']}")
            except HypothesisUnmet as exc:
                print(f"  trace factorization skipped: {exc}")
        try:
            fib = fiber_regularity(cover)
            indices = [p["ramification_index"] for p in fib["points"]]
            print(
                f"  special fiber: {len(fib['points'])} point(s), "
                f"ramification indices {indices}, all tame: {fib['all_tame']}"
            )
        except NonSplitFiber as exc:
            print(f"  special fiber does not split here: {exc}")
        print()


if __name__ == "__main__":
    main()
