"""Built-in groups, example algebras, and the ramification battery.

Everything the CLI and the acceptance suite iterate over lives here, so
the set of worked examples is one list instead of many copies.  All
randomness is routed through explicit seeds.
"""

from __future__ import annotations

import random

import numpy as np

from .algebras import (
    EquivariantAlgebra,
    functions_on_group,
    functions_on_gset,
    product_algebra,
    trivial_algebra,
)
from .errors import DivisionByZero, OrderCapExceeded, SchemaError
from .groups import FiniteGroup, max_group_order
from .linalg import inverse, zeros
from .ramification import (
    CoverOverDVR,
    kummer_builder,
    product_cover,
    torsor_cover,
    univariate_cover,
)
from .scalars import QQ, PolyRing, cyclotomic_field, prime_field
from .witnesses import default_witness_field


# ---------------------------------------------------------------------------
# Group specs


def parse_group(spec: str) -> FiniteGroup:
    """Build a group from a CLI spec string such as "S3" or "CnxCm:2,4".

    Unknown names raise SchemaError; orders beyond the configured cap
    raise OrderCapExceeded.
    """
    spec = spec.strip()
    builders = {
        "Q8": FiniteGroup.quaternion,
        "V4": lambda: FiniteGroup.direct_product(
            FiniteGroup.cyclic(2), FiniteGroup.cyclic(2)
        ),
    }
    group = None
    if spec in builders:
        group = builders[spec]()
    elif spec.startswith("CnxCm:"):
        try:
            n, m = (int(x) for x in spec.split(":", 1)[1].split(","))
        except ValueError as exc:
            raise SchemaError(f"bad product spec {spec!r}") from exc
        if n < 1 or m < 1:
            raise SchemaError(f"bad product spec {spec!r}")
        group = FiniteGroup.direct_product(
            FiniteGroup.cyclic(n), FiniteGroup.cyclic(m)
        )
    elif len(spec) >= 2 and spec[0] in "CSAD" and spec[1:].isdigit():
        n = int(spec[1:])
        kind = spec[0]
        if kind == "C" and n >= 1:
            group = FiniteGroup.cyclic(n)
        elif kind == "S" and n >= 1:
            group = FiniteGroup.symmetric(n)
        elif kind == "A" and n >= 3:
            group = FiniteGroup.alternating(n)
        elif kind == "D" and n >= 2:
            group = FiniteGroup.dihedral(n)
    if group is None:
        raise SchemaError(f"unrecognized group spec {spec!r}")
    cap = max_group_order()
    if group.n > cap:
        raise OrderCapExceeded(f"group order {group.n} exceeds the cap {cap}")
    return group


def default_field(group: FiniteGroup):
    """Smallest stock field with good representation theory for the group."""
    return default_witness_field(group)


def catalog_groups() -> list[tuple[str, FiniteGroup]]:
    """The standard battery, ordered smallest first."""
    return [
        ("C2", FiniteGroup.cyclic(2)),
        ("C3", FiniteGroup.cyclic(3)),
        ("C4", FiniteGroup.cyclic(4)),
        (
            "C2xC2",
            FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2)),
        ),
        ("S3", FiniteGroup.symmetric(3)),
        ("D4", FiniteGroup.dihedral(4)),
        ("Q8", FiniteGroup.quaternion()),
        ("A4", FiniteGroup.alternating(4)),
    ]


def catalog_pairs() -> list[tuple[str, FiniteGroup, tuple[int, ...]]]:
    """Every (group, subgroup) pair of the catalog, subgroups sorted."""
    out = []
    for name, group in catalog_groups():
        for sub in group.all_subgroups():
            out.append((name, group, sub))
    return out


# ---------------------------------------------------------------------------
# Example algebras


def coset_algebra(group: FiniteGroup, elements, ring) -> EquivariantAlgebra:
    """Functions on the right coset space of the given subgroup."""
    reps = group.right_cosets(elements)
    lookup = group.coset_lookup(elements, reps)
    rep_index = {r: c for c, r in enumerate(reps)}
    table = [
        [rep_index[lookup[group.mul[r][g]][1]] for g in range(group.n)]
        for r in reps
    ]
    return functions_on_gset(group, ring, table)


def scaled_line_counterexample(field=None) -> EquivariantAlgebra:
    """The three dimensional square-zero algebra over the order three group.

    One unit direction and a two dimensional square-zero part on which
    the generator acts by the same nontrivial weight twice.  Its rank
    vector is (1, 2, 0), so it has full dimension but is not a cover.
    """
    if field is None:
        field = cyclotomic_field(3)
    group = FiniteGroup.cyclic(3)
    z = field.zeta(1)
    ring = field
    mult = np.empty((3, 3, 3), dtype=object)
    zero, one = ring.zero(), ring.one()
    for i in range(3):
        for j in range(3):
            for k in range(3):
                mult[i, j, k] = zero
    for i in range(3):
        mult[0, i, i] = one
        mult[i, 0, i] = one
    unit = np.array([one, zero, zero], dtype=object)
    action = []
    for g in range(3):
        m = zeros(3, 3, ring)
        m[0, 0] = one
        w = (z * z) ** g
        m[1, 1] = w
        m[2, 2] = w
        action.append(m)
    return EquivariantAlgebra(group, ring, mult, unit, action)


def random_equivariant_change(algebra: EquivariantAlgebra, rng: random.Random):
    """The same algebra under a random equivariant change of basis.

    Averages a random integer matrix over the group action so the
    transition commutes with every action matrix, retrying until the
    average is invertible.
    """
    d = algebra.dim
    ring = algebra.ring
    for _ in range(16):
        t = zeros(d, d, ring)
        for i in range(d):
            for j in range(d):
                t[i, j] = ring.scalar(rng.randint(-2, 2))
        avg = zeros(d, d, ring)
        for g in range(algebra.group.n):
            avg = avg + np.dot(
                np.dot(algebra.action[g], t),
                algebra.action[algebra.group.inv[g]],
            )
        try:
            inverse(avg)
        except DivisionByZero:
            continue
        return algebra.change_of_basis(avg)
    raise ArithmeticError("no invertible equivariant change found")


def roundtrip_instances(group: FiniteGroup, field, seed: int, count: int = 20):
    """Seeded list of (label, algebra) pairs for the reconstruction check.

    Mixes the torsor, coset algebras of every subgroup, a product, and
    random equivariant basis changes of each, count instances in all.
    """
    rng = random.Random(seed)
    subs = group.all_subgroups()
    stock = [("torsor", functions_on_group(group, field))]
    for sub in subs:
        if len(sub) == group.n:
            continue
        stock.append((f"cosets{len(sub)}", coset_algebra(group, sub, field)))
    smallest = min((alg for _, alg in stock), key=lambda a: a.dim)
    stock.append(("product", product_algebra(smallest, smallest)))
    out = []
    i = 0
    while len(out) < count:
        label, base = stock[i % len(stock)]
        i += 1
        moved = random_equivariant_change(base, rng)
        out.append((f"{label}#{i}", moved))
    return out


# ---------------------------------------------------------------------------
# Ramification battery


def ramify_battery() -> list[dict]:
    """The fixed list of covers the tameness criteria are exercised on.

    Each entry records the cover, whether the equivariant refinement
    applies, and the frozen discriminant valuation.  Entries with a
    defining polynomial carry its coefficients for the external
    resultant cross-check, lowest t-degree first per x-power.
    """
    out = []
    for n in (2, 3, 4, 5, 6):
        field = QQ if n == 2 else cyclotomic_field(n)
        cover = kummer_builder(n, 1, field)
        # x^n - t as integer coefficient rows: coeff of x^k is a poly in t
        poly = [[0, -1]] + [[0]] * (n - 1) + [[1]]
        out.append(
            {
                "name": f"x^{n}-t",
                "cover": cover,
                "field": field,
                "equivariant": True,
                "disc_valuation": n - 1,
                "int_poly": poly,
            }
        )
    for m, val in ((2, 2), (3, 3)):
        out.append(
            {
                "name": f"x^2-t^{m}",
                "cover": kummer_builder(2, m, QQ),
                "field": QQ,
                "equivariant": True,
                "disc_valuation": val,
                "int_poly": [[0] * m + [-1], [0], [1]],
            }
        )
    c2 = FiniteGroup.cyclic(2)
    c3 = FiniteGroup.cyclic(3)
    f3 = cyclotomic_field(3)
    out.append(
        {
            "name": "(x^2-t)*torsor",
            "cover": product_cover(kummer_builder(2, 1, QQ), torsor_cover(c2, QQ)),
            "field": QQ,
            "equivariant": False,
            "disc_valuation": 1,
            "int_poly": None,
        }
    )
    out.append(
        {
            "name": "(x^3-t)*torsor",
            "cover": product_cover(
                kummer_builder(3, 1, f3), torsor_cover(c3, f3)
            ),
            "field": f3,
            "equivariant": False,
            "disc_valuation": 2,
            "int_poly": None,
        }
    )
    f2 = prime_field(2)
    ring2 = PolyRing(f2)
    t, one = ring2.gen(), ring2.one()
    out.append(
        {
            "name": "x^2+x+t",
            "cover": univariate_cover(f2, [t, one], [one, one], 2),
            "field": f2,
            "equivariant": False,
            "disc_valuation": 0,
            "int_poly": None,
        }
    )
    out.append(
        {
            "name": "x^2+tx+t",
            "cover": univariate_cover(f2, [t, t], [t, one], 2),
            "field": f2,
            "equivariant": False,
            "disc_valuation": 2,
            "int_poly": None,
        }
    )
    return out
