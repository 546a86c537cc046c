"""Tour of the algebra <-> functor-data dictionary on a small group.

Run with: python3 demos/roundtrip_tour.py
"""

from equicover.algebras import (
    algebra_to_functor,
    functions_on_group,
    functor_to_algebra,
    is_cover,
    section_ranks,
    verify_roundtrip,
)
from equicover.catalog import coset_algebra, scaled_line_counterexample
from equicover.groups import FiniteGroup
from equicover.reps import IrrepSet
from equicover.scalars import cyclotomic_field


def main():
    group = FiniteGroup.symmetric(3)
    field = cyclotomic_field(3)
    basis = IrrepSet.compute(group, field)
    print(f"group of order {group.n}, irreducible degrees {basis.degrees}")

    # functions on the group itself: the free transitive case
    torsor = functions_on_group(group, field)
    ranks = section_ranks(torsor, basis)
    print(f"torsor section ranks {ranks} (equal to the degrees: cover)")

    data = algebra_to_functor(torsor, basis)
    rebuilt = functor_to_algebra(data)
    report = verify_roundtrip(torsor, basis)
    print(f"rebuilt dimension {rebuilt.dim}, roundtrip verdicts: {report}")

    # functions on a coset space have smaller ranks and are not covers
    cosets = coset_algebra(group, (0, 3, 4), field)
    print(
        f"coset algebra: dim {cosets.dim}, "
        f"ranks {section_ranks(cosets, basis)}, cover: {is_cover(cosets, basis)}"
    )

    # the square-zero example: right dimension, wrong ranks
    bad = scaled_line_counterexample()
    bad_basis = IrrepSet.compute(bad.group, bad.ring)
    print(
        f"square-zero example: dim {bad.dim}, "
        f"ranks {section_ranks(bad, bad_basis)}, cover: {is_cover(bad, bad_basis)}"
    )


if __name__ == "__main__":
    main()
