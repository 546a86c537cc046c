"""Equivariant algebras, the functor correspondence, and decompositions."""

import dataclasses

import numpy as np
import pytest

from equicover.algebras import (
    EquivariantAlgebra,
    RankFunction,
    algebra_to_functor,
    component_decompose,
    functions_on_gset,
    functions_on_group,
    functor_to_algebra,
    invariant_vectors,
    is_cover,
    is_torsor,
    product_algebra,
    section_ranks,
    split_idempotents_mod_p,
    trivial_algebra,
    verify_roundtrip,
)
from equicover.errors import (
    HypothesisUnmet,
    NoUnit,
    NonSplitAlgebra,
    NotCommutative,
)
from equicover.groups import FiniteGroup
from equicover.linalg import mat_eq, zero_vector
from equicover.reps import IrrepSet
from equicover.scalars import QQ, CyclotomicField, PrimeField


def _all_true(report):
    return all(report[k] for k in report)


def test_trivial_and_torsor_basics():
    c1 = FiniteGroup.cyclic(1)
    assert is_torsor(trivial_algebra(c1, QQ))
    c2 = FiniteGroup.cyclic(2)
    fg = functions_on_group(c2, QQ)
    fg.validate()
    assert is_torsor(fg)
    s3 = FiniteGroup.symmetric(3)
    assert not is_torsor(trivial_algebra(s3, QQ))


def test_functions_on_gset_validation():
    c2 = FiniteGroup.cyclic(2)
    with pytest.raises(ValueError):
        functions_on_gset(c2, QQ, [[0, 1]])
    with pytest.raises(ValueError):
        functions_on_gset(c2, QQ, [[0], [1]])
    # identity column must fix every point
    with pytest.raises(ValueError):
        functions_on_gset(c2, QQ, [[1, 0], [0, 1]])
    # valid: the swap action
    alg = functions_on_gset(c2, QQ, [[0, 1], [1, 0]])
    alg.validate()
    assert alg.dim == 2


@pytest.mark.parametrize(
    "group,field",
    [
        (FiniteGroup.cyclic(2), QQ),
        (FiniteGroup.cyclic(3), CyclotomicField(3)),
        (FiniteGroup.symmetric(3), CyclotomicField(3)),
        (FiniteGroup.dihedral(4), CyclotomicField(4)),
    ],
)
def test_torsor_roundtrip(group, field):
    basis = IrrepSet.compute(group, field)
    alg = functions_on_group(group, field)
    report = verify_roundtrip(alg, basis)
    assert _all_true(report)
    assert is_cover(alg, basis)
    assert is_torsor(alg)
    assert section_ranks(alg, basis) == tuple(r.dim for r in basis)


def test_torsor_prime_field():
    s3 = FiniteGroup.symmetric(3)
    f13 = PrimeField(13)
    basis = IrrepSet.compute(s3, f13)
    alg = functions_on_group(s3, f13)
    report = verify_roundtrip(alg, basis)
    assert _all_true(report)
    assert is_torsor(alg)


def test_coset_algebra_ranks():
    s3 = FiniteGroup.symmetric(3)
    f = CyclotomicField(3)
    basis = IrrepSet.compute(s3, f)
    reps = s3.right_cosets((0, 3, 4))
    lookup = s3.coset_lookup((0, 3, 4), reps)
    index = {r: i for i, r in enumerate(reps)}
    table = [
        [index[lookup[s3.mul[r][g]][1]] for g in range(6)] for r in reps
    ]
    alg = functions_on_gset(s3, f, table)
    assert section_ranks(alg, basis) == (1, 1, 0)
    assert not is_cover(alg, basis)
    assert not is_torsor(alg)
    assert _all_true(verify_roundtrip(alg, basis))


def _scaling_counterexample(field):
    """Dimension 3 with square-zero part scaled by a cube root of unity.

    Ranks come out (1, 2, 0): correspondence holds, cover fails.
    """
    c3 = FiniteGroup.cyclic(3)
    z = field.zeta(1)
    d = 3
    mult = np.empty((d, d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            mult[i, j, :] = zero_vector(d, field)
    for i in range(d):
        mult[0, i, i] = field.one()
        mult[i, 0, i] = field.one()
    mult[0, 0, 0] = field.one()
    unit = zero_vector(d, field)
    unit[0] = field.one()
    action = []
    for g in range(3):
        m = np.empty((d, d), dtype=object)
        for i in range(d):
            for j in range(d):
                m[i, j] = field.zero()
        m[0, 0] = field.one()
        m[1, 1] = (z * z) ** g
        m[2, 2] = (z * z) ** g
        action.append(m)
    return EquivariantAlgebra(c3, field, mult, unit, action)


def test_scaling_counterexample():
    f = CyclotomicField(3)
    alg = _scaling_counterexample(f)
    basis = IrrepSet.compute(FiniteGroup.cyclic(3), f)
    assert section_ranks(alg, basis) == (1, 2, 0)
    assert not is_cover(alg, basis)
    assert not is_torsor(alg)
    assert _all_true(verify_roundtrip(alg, basis))


def test_rank_function():
    s3 = FiniteGroup.symmetric(3)
    f = CyclotomicField(3)
    basis = IrrepSet.compute(s3, f)
    data = algebra_to_functor(functions_on_group(s3, f), basis)
    rf = RankFunction.from_functor(data)
    assert tuple(rf.of_irreducible(i) for i in range(3)) == (1, 1, 2)
    from equicover.reps import Representation

    reg = Representation.regular(s3, f)
    # the regular character sums rank times dimension
    assert rf.of_rep(reg) == 1 * 1 + 1 * 1 + 2 * 2
    two = basis.irreps[2]
    assert rf.of_rep(two.direct_sum(two)) == 2 * rf.of_rep(two)


def test_functor_rejects_corruption():
    s3 = FiniteGroup.symmetric(3)
    f = CyclotomicField(3)
    basis = IrrepSet.compute(s3, f)
    data = algebra_to_functor(functions_on_group(s3, f), basis)
    bad_unit = data.unit.copy()
    bad_unit[0] = bad_unit[0] * f.scalar(2)
    with pytest.raises(NoUnit):
        functor_to_algebra(dataclasses.replace(data, unit=bad_unit, sections=None))
    prods = {k: [m.copy() for m in v] for k, v in data.products.items()}
    m0 = prods[(0, 1, 1)][0]
    for idx, c in enumerate(m0.flat):
        if bool(c):
            m0.flat[idx] = c * f.scalar(2)
            break
    with pytest.raises(NotCommutative):
        functor_to_algebra(dataclasses.replace(data, products=prods, sections=None))


def test_component_decompose_coset_algebra():
    s3 = FiniteGroup.symmetric(3)
    f = CyclotomicField(3)
    reps = s3.right_cosets((0, 3, 4))
    lookup = s3.coset_lookup((0, 3, 4), reps)
    index = {r: i for i, r in enumerate(reps)}
    table = [
        [index[lookup[s3.mul[r][g]][1]] for g in range(6)] for r in reps
    ]
    alg = functions_on_gset(s3, f, table)
    dec = component_decompose(alg)
    assert dec.component_count() == 2
    assert dec.dims == [1, 1]
    assert dec.orbits == [(0, 1)]
    assert dec.stabilizers == [(0, 3, 4), (0, 3, 4)]
    total = dec.idempotents[0] + dec.idempotents[1]
    assert mat_eq(total.reshape(2, 1), alg.unit.reshape(2, 1))


def test_component_decompose_torsor():
    s3 = FiniteGroup.symmetric(3)
    f = CyclotomicField(3)
    alg = functions_on_group(s3, f)
    dec = component_decompose(alg)
    assert dec.component_count() == 6
    assert dec.dims == [1] * 6
    assert dec.orbits == [tuple(range(6))]
    assert dec.stabilizers == [(0,)] * 6
    for e in dec.idempotents:
        sq = alg.multiply(e, e)
        assert mat_eq(sq.reshape(6, 1), e.reshape(6, 1))


def test_component_decompose_with_nilpotents():
    f = CyclotomicField(3)
    alg = _scaling_counterexample(f)
    dec = component_decompose(alg)
    # connected: the square-zero part is all nilpotent
    assert dec.component_count() == 1
    assert dec.dims == [3]
    assert dec.stabilizers == [(0, 1, 2)]


def test_component_nonsplit():
    c1 = FiniteGroup.cyclic(1)
    d = 2
    mult = np.empty((d, d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            mult[i, j, :] = zero_vector(d, QQ)
    mult[0, 0, 0] = QQ.one()
    mult[0, 1, 1] = QQ.one()
    mult[1, 0, 1] = QQ.one()
    mult[1, 1, 0] = QQ.scalar(-1)
    unit = zero_vector(d, QQ)
    unit[0] = QQ.one()
    alg = EquivariantAlgebra(c1, QQ, mult, unit, [np.array([[QQ.one(), QQ.zero()], [QQ.zero(), QQ.one()]], dtype=object)])
    with pytest.raises(NonSplitAlgebra) as exc:
        component_decompose(alg)
    assert exc.value.witness.degree == 2


def test_component_small_characteristic_gate():
    c2 = FiniteGroup.cyclic(2)
    f2 = PrimeField(2)
    alg = functions_on_group(c2, f2)
    with pytest.raises(HypothesisUnmet):
        component_decompose(alg)


def test_split_idempotents_mod_p():
    f7 = PrimeField(7)
    # x*x = 2, which is a square mod 7, so the algebra splits into two lines
    d = 2
    mult = np.empty((d, d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            mult[i, j, :] = zero_vector(d, f7)
    mult[0, 0, 0] = f7.one()
    mult[0, 1, 1] = f7.one()
    mult[1, 0, 1] = f7.one()
    mult[1, 1, 0] = f7.scalar(2)
    idems = split_idempotents_mod_p(f7, mult)
    assert len(idems) == 2
    unit = zero_vector(d, f7)
    unit[0] = f7.one()
    alg = EquivariantAlgebra(
        FiniteGroup.cyclic(1),
        f7,
        mult,
        unit,
        [np.array([[f7.one(), f7.zero()], [f7.zero(), f7.one()]], dtype=object)],
    )
    total = idems[0] + idems[1]
    assert mat_eq(total.reshape(d, 1), unit.reshape(d, 1))
    for e in idems:
        assert mat_eq(alg.multiply(e, e).reshape(d, 1), e.reshape(d, 1))
    cross = alg.multiply(idems[0], idems[1])
    assert not any(bool(c) for c in cross)
    # x*x = 3 is not a square mod 7: a field extension, no splitting
    mult[1, 1, 0] = f7.scalar(3)
    assert len(split_idempotents_mod_p(f7, mult)) == 1


def test_change_of_basis_invariance():
    f = CyclotomicField(3)
    alg = _scaling_counterexample(f)
    basis = IrrepSet.compute(FiniteGroup.cyclic(3), f)
    t = np.array(
        [
            [f.one(), f.one(), f.zero()],
            [f.zero(), f.one(), f.one()],
            [f.zero(), f.zero(), f.one()],
        ],
        dtype=object,
    )
    moved = alg.change_of_basis(t)
    moved.validate()
    assert section_ranks(moved, basis) == (1, 2, 0)
    assert not is_cover(moved, basis)
    assert _all_true(verify_roundtrip(moved, basis))


def test_product_algebra_invariants():
    c2 = FiniteGroup.cyclic(2)
    fg = functions_on_group(c2, QQ)
    prod = product_algebra(fg, fg)
    prod.validate()
    assert prod.dim == 4
    assert not is_torsor(prod)
    assert invariant_vectors(prod).shape[0] == 2
