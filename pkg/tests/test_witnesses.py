"""The reducibility construction: descent, orbit ranks, verified covers."""

import pytest

from equicover.errors import AbelianInput, NonInvertibleOrder
from equicover.groups import FiniteGroup
from equicover.reps import IrrepSet
from equicover.scalars import CyclotomicField, PrimeField
from equicover.witnesses import (
    build_witness,
    default_witness_field,
    verify_restriction_law,
)


def _f20():
    c5, c4 = FiniteGroup.cyclic(5), FiniteGroup.cyclic(4)
    mul2 = [0, 2, 4, 1, 3]
    mul4 = [0, 4, 3, 2, 1]
    mul3 = [0, 3, 1, 4, 2]
    return FiniteGroup.semidirect_product(
        c5, c4, [list(range(5)), mul2, mul4, mul3]
    )


def _c3_by_c4():
    c3, c4 = FiniteGroup.cyclic(3), FiniteGroup.cyclic(4)
    inv3 = [0, 2, 1]
    return FiniteGroup.semidirect_product(
        c3, c4, [list(range(3)), inv3, list(range(3)), inv3]
    )


def test_abelian_refused():
    with pytest.raises(AbelianInput):
        build_witness(FiniteGroup.cyclic(6))


def test_bad_characteristic_refused():
    with pytest.raises(NonInvertibleOrder):
        build_witness(FiniteGroup.symmetric(3), PrimeField(3))


def test_s3_report():
    rep = build_witness(FiniteGroup.symmetric(3))
    assert rep.chain == (tuple(range(6)),)
    assert rep.normal_elements == (0, 3, 4)
    assert rep.prime == 2
    assert rep.orbits == ((0,), (1, 2))
    assert rep.ranks == (1, 2, 0)
    assert rep.delta == 1
    assert rep.base_algebra.dim == 3
    assert rep.algebra.dim == 6
    assert rep.verdicts == {
        "induced_is_cover": True,
        "base_has_regular_ranks": False,
        "restriction_law": True,
    }


def test_q8_report():
    rep = build_witness(FiniteGroup.quaternion())
    assert rep.normal_elements == (0, 1, 2, 3)
    assert rep.prime == 2
    assert rep.ranks == (1, 2, 1, 0)
    assert rep.delta == 1
    assert rep.base_algebra.dim == 4
    assert rep.algebra.dim == 8
    assert rep.verdicts["induced_is_cover"]
    assert not rep.verdicts["base_has_regular_ranks"]


def test_d4_report():
    rep = build_witness(FiniteGroup.dihedral(4))
    assert rep.prime == 2
    assert sum(rep.ranks) * 2 == rep.algebra.dim
    assert rep.verdicts["induced_is_cover"]
    assert not rep.verdicts["base_has_regular_ranks"]


def test_a4_report():
    rep = build_witness(FiniteGroup.alternating(4))
    assert rep.normal_elements == (0, 3, 8, 11)
    assert rep.prime == 3
    assert rep.ranks == (1, 3, 0, 0)
    assert rep.base_algebra.dim == 4
    assert rep.algebra.dim == 12
    assert rep.verdicts["induced_is_cover"]


def test_frobenius20_descends_to_smaller_subgroup():
    rep = build_witness(_f20())
    assert len(rep.chain) == 2
    assert len(rep.subgroup_elements) == 10
    assert len(rep.normal_elements) == 5
    assert rep.prime == 2
    assert rep.ranks == (1, 2, 2, 0, 0)
    assert rep.base_algebra.dim == 5
    assert rep.algebra.dim == 10
    assert rep.verdicts["induced_is_cover"]


def test_order12_semidirect_is_its_own_witness_stage():
    rep = build_witness(_c3_by_c4())
    assert rep.chain == (tuple(range(12)),)
    assert rep.prime == 2
    assert len(rep.normal_elements) == 6
    assert sum(rep.ranks) == 6
    assert rep.algebra.dim == 12
    assert rep.verdicts["induced_is_cover"]


def test_symmetric4_descends_to_six_elements():
    # sits above the stock battery; the minimal nonabelian subgroup takes over
    rep = build_witness(FiniteGroup.symmetric(4))
    assert [len(s) for s in rep.chain] == [24, 6]
    assert len(rep.normal_elements) == 3
    assert rep.prime == 2
    assert rep.ranks == (1, 2, 0)
    assert rep.algebra.dim == 6
    assert rep.verdicts["induced_is_cover"]


def test_restriction_law_details():
    rep = build_witness(FiniteGroup.symmetric(3))
    basis = IrrepSet.compute(rep.sub_group, rep.field)
    law = verify_restriction_law(rep, basis)
    assert law["ok"]
    # each pair is (dimension, recomputed rank sum)
    assert law["details"] == [(1, 1), (1, 1), (2, 2)]
    with pytest.raises(ValueError):
        verify_restriction_law(
            rep, IrrepSet.compute(FiniteGroup.cyclic(2), CyclotomicField(4))
        )


def test_default_field_choice():
    assert default_witness_field(FiniteGroup.cyclic(2)).kind == "rational"
    f = default_witness_field(FiniteGroup.symmetric(3))
    assert f.kind == "cyclotomic" and f.n == 3
    f4 = default_witness_field(FiniteGroup.quaternion())
    assert f4.kind == "cyclotomic" and f4.n == 4


def test_explicit_field_is_respected():
    f = CyclotomicField(12)
    rep = build_witness(FiniteGroup.symmetric(3), f)
    assert rep.field is f
    assert rep.ranks == (1, 2, 0)
