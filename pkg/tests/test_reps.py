"""Irreducibles, character data, induction and good-set validation."""

import numpy as np
import pytest

from equicover.errors import (
    MissingRootOfUnity,
    NonInvertibleOrder,
    NotGoodSet,
)
from equicover.groups import FiniteGroup
from equicover.linalg import mat_eq, mat_mul
from equicover.reps import (
    IrrepSet,
    Representation,
    character_inner,
    character_table,
    check_field_for_group,
    hom_g_basis,
    induce_rep,
    irreps,
    validate_good_set,
)
from equicover.scalars import QQ, cyclotomic_field, prime_field


def rational_rotation(field):
    m = np.empty((2, 2), dtype=object)
    m[0, 0] = field.zero()
    m[0, 1] = -field.one()
    m[1, 0] = field.one()
    m[1, 1] = -field.one()
    return m


def test_field_admissibility():
    c3 = FiniteGroup.cyclic(3)
    with pytest.raises(MissingRootOfUnity):
        check_field_for_group(c3, QQ)
    with pytest.raises(NonInvertibleOrder):
        check_field_for_group(c3, prime_field(3))
    with pytest.raises(MissingRootOfUnity):
        check_field_for_group(c3, prime_field(5))
    check_field_for_group(c3, prime_field(7))
    check_field_for_group(c3, cyclotomic_field(3))
    # exponent 6 works over Q(zeta_3) because -zeta is a sixth root
    check_field_for_group(FiniteGroup.symmetric(3), cyclotomic_field(3))


def test_cyclic_character_order():
    f = cyclotomic_field(4)
    c4 = FiniteGroup.cyclic(4)
    classes, class_of, rows = character_table(c4, f)
    assert [d for d, _ in rows] == [1, 1, 1, 1]
    z = f.zeta(1)
    # natural power order: chi_j(g) = zeta^j on the generator's class
    gen_class = class_of[1]
    for j, (_, values) in enumerate(rows):
        assert values[gen_class] == z ** j


def test_s3_table():
    f = cyclotomic_field(3)
    s3 = FiniteGroup.symmetric(3)
    _, class_of, rows = character_table(s3, f)
    assert sorted(d for d, _ in rows) == [1, 1, 2]
    assert [d for d, _ in rows][0] == 1
    sign = rows[1][1]
    two = rows[2][1]
    transposition = next(g for g in range(6) if s3.element_order(g) == 2)
    assert sign[class_of[transposition]] == -f.one()
    assert two[class_of[transposition]] == f.zero()
    assert two[class_of[s3.identity]] == f.scalar(2)


def test_irreps_catalog_degrees():
    f12 = cyclotomic_field(12)
    expected = {
        "C2": (FiniteGroup.cyclic(2), (1, 1)),
        "C3": (FiniteGroup.cyclic(3), (1, 1, 1)),
        "C4": (FiniteGroup.cyclic(4), (1, 1, 1, 1)),
        "V4": (
            FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2)),
            (1, 1, 1, 1),
        ),
        "S3": (FiniteGroup.symmetric(3), (1, 1, 2)),
        "D4": (FiniteGroup.dihedral(4), (1, 1, 1, 1, 2)),
        "Q8": (FiniteGroup.quaternion(), (1, 1, 1, 1, 2)),
        "A4": (FiniteGroup.alternating(4), (1, 1, 1, 3)),
    }
    for name, (g, degs) in expected.items():
        got = irreps(g, f12)
        assert got.degrees == degs, name
        assert got.irreps[0].character() == tuple([f12.one()] * g.n)


def test_s4_irreps():
    f12 = cyclotomic_field(12)
    s4 = FiniteGroup.symmetric(4)
    got = irreps(s4, f12)
    assert got.degrees == (1, 1, 2, 3, 3)


def test_irreps_over_prime_field():
    f = prime_field(3)
    c2 = FiniteGroup.cyclic(2)
    got = irreps(c2, f)
    assert got.degrees == (1, 1)
    assert got.irreps[1].character()[1] == f.scalar(2)
    f13 = prime_field(13)
    s3 = FiniteGroup.symmetric(3)
    got13 = irreps(s3, f13)
    assert got13.degrees == (1, 1, 2)


def test_representation_validation_and_ops():
    f = cyclotomic_field(3)
    c3 = FiniteGroup.cyclic(3)
    reg = Representation.regular(c3, f)
    assert reg.dim == 3
    chi = reg.character()
    assert chi[0] == f.scalar(3) and chi[1] == f.zero()
    dual = reg.dual()
    for g in range(3):
        assert mat_eq(mat_mul(dual.matrices[g].T, reg.matrices[g]), _eye(f, 3))
    ts = reg.tensor(reg)
    assert ts.dim == 9
    ds = reg.direct_sum(reg)
    assert ds.dim == 6 and ds.character()[0] == f.scalar(6)


def _eye(field, n):
    from equicover.linalg import identity

    return identity(n, field)


def test_reynolds_and_fixed_space():
    f = cyclotomic_field(3)
    s3 = FiniteGroup.symmetric(3)
    perm = Representation.regular(s3, f)
    p = perm.reynolds()
    assert mat_eq(mat_mul(p, p), p)
    fixed = perm.fixed_subspace()
    assert fixed.shape[0] == 1  # one invariant line in the regular rep
    with pytest.raises(NonInvertibleOrder):
        Representation.regular(FiniteGroup.cyclic(2), prime_field(2)).reynolds()


def test_schur_via_hom_bases():
    f = cyclotomic_field(12)
    q8 = FiniteGroup.quaternion()
    reps = irreps(q8, f)
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            d = len(hom_g_basis(a, b))
            assert d == (1 if i == j else 0)


def test_character_inner_orthogonality():
    f = cyclotomic_field(12)
    a4 = FiniteGroup.alternating(4)
    chars = irreps(a4, f).characters()
    for i, x in enumerate(chars):
        for j, y in enumerate(chars):
            val = character_inner(a4, x, y)
            assert val == (f.one() if i == j else f.zero())


def test_induce_rep_standard():
    f = cyclotomic_field(3)
    s3 = FiniteGroup.symmetric(3)
    a3 = next(s for s in s3.all_subgroups() if len(s) == 3)
    sub, embed = s3.subgroup_as_group(a3)
    chi1 = irreps(sub, f).irreps[1]
    ind = induce_rep(s3, embed, chi1)
    assert ind.dim == 2
    std = next(r for r in irreps(s3, f) if r.dim == 2)
    assert ind.character() == std.character()


def test_induce_rep_frobenius_reciprocity():
    f = cyclotomic_field(12)
    d4 = FiniteGroup.dihedral(4)
    for elems in d4.all_subgroups():
        if len(elems) in (1, 8):
            continue
        sub, embed = d4.subgroup_as_group(elems)
        for v in irreps(sub, f):
            ind = induce_rep(d4, embed, v)
            assert ind.dim == v.dim * (d4.n // sub.n)
            for w in irreps(d4, f):
                lhs = len(hom_g_basis(ind, w))
                rhs = len(hom_g_basis(v, w.restrict(sub, embed)))
                assert lhs == rhs


def test_induce_from_trivial_subgroup_is_regular():
    f = cyclotomic_field(4)
    c4 = FiniteGroup.cyclic(4)
    sub, embed = c4.subgroup_as_group((0,))
    ind = induce_rep(c4, embed, Representation.trivial(sub, f))
    assert ind.character() == Representation.regular(c4, f).character()


def test_validate_good_set_reports():
    f = cyclotomic_field(3)
    c3 = FiniteGroup.cyclic(3)
    rot = Representation.from_generators(c3, QQ, {1: rational_rotation(QQ)})
    report = validate_good_set(c3, QQ, [Representation.trivial(c3, QQ), rot])
    assert report["good"] is False
    assert any("endomorphism" in msg for msg in report["failures"])
    assert any("squared dimensions" in msg for msg in report["failures"])
    good = validate_good_set(c3, f, list(irreps(c3, f)))
    assert good == {"good": True, "failures": []}
    # duplicate entry: homomorphisms between distinct slots
    dup = list(irreps(c3, f)) + [irreps(c3, f).irreps[1]]
    rep2 = validate_good_set(c3, f, dup)
    assert not rep2["good"]
    assert any("homomorphism" in msg for msg in rep2["failures"])


def test_irrepset_strict_validation():
    f = cyclotomic_field(3)
    c3 = FiniteGroup.cyclic(3)
    full = irreps(c3, f)
    with pytest.raises(NotGoodSet):
        IrrepSet(c3, f, full.irreps[:2], check=True)
    with pytest.raises(NotGoodSet):
        IrrepSet(c3, f, (full.irreps[1],) + full.irreps[1:], check=True)


def test_multiplicity_decomposes_regular():
    f = cyclotomic_field(12)
    s4 = FiniteGroup.symmetric(4)
    basis = irreps(s4, f)
    reg = Representation.regular(s4, f)
    mults = [basis.multiplicity(reg, i) for i in range(len(basis))]
    assert mults == [1, 1, 2, 3, 3]


def test_dual_index():
    f = cyclotomic_field(4)
    c4 = FiniteGroup.cyclic(4)
    basis = irreps(c4, f)
    assert basis.dual_index(0) == 0
    assert basis.dual_index(1) == 3
    assert basis.dual_index(2) == 2
