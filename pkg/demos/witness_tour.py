"""Build a reducibility witness for each nonabelian stock group.

The witness is an honest cover whose section ranks differ from the
irreducible degrees, produced by inducing a carefully chosen character
algebra up from a subgroup.  Run with: python3 demos/witness_tour.py
"""

from equicover.catalog import parse_group
from equicover.witnesses import build_witness


def main():
    for name in ("S3", "D4", "Q8", "A4"):
        group = parse_group(name)
        report = build_witness(group)
        print(f"{name}:")
        print(f"  field: {report.field.kind}")
        print(
            f"  subgroup order {len(report.subgroup_elements)}, "
            f"normal part order {len(report.normal_elements)}, "
            f"prime {report.prime}"
        )
        print(f"  character orbit ranks: {report.ranks}")
        print(f"  induced algebra dimension: {report.algebra.dim}")
        print(f"  verdicts: {report.verdicts}")
        degrees = report.characters.degrees
        off = [i for i, (r, d) in enumerate(zip(report.ranks, degrees)) if r != d]
        print(f"  indices where rank differs from degree: {off}")
        print()


if __name__ == "__main__":
    main()
