import math
import random

import numpy as np
import pytest

from equicover.errors import (
    HypothesisUnmet,
    MissingRootOfUnity,
    NotSquare,
)
from equicover.groups import FiniteGroup
from equicover.ramification import (
    CoverOverDVR,
    change_basis,
    fiber_regularity,
    kernel_module_basis,
    kummer_builder,
    poly_det,
    poly_inverse_unimodular,
    product_cover,
    tame_check,
    torsor_cover,
    trace_decomposition_check,
    trace_package,
    univariate_cover,
)
from equicover.reps import IrrepSet
from equicover.scalars import QQ, CyclotomicField, Poly, PolyRing, PrimeField


def _rand_poly(ring, rng, deg=2):
    return Poly(
        ring.field, [ring.field.scalar(rng.randint(-3, 3)) for _ in range(deg + 1)]
    )


def test_poly_det_matches_permanent_expansion():
    ring = PolyRing(QQ)
    rng = random.Random(11)
    for _ in range(5):
        m = np.empty((3, 3), dtype=object)
        for i in range(3):
            for j in range(3):
                m[i, j] = _rand_poly(ring, rng)
        # cofactor expansion along the first row
        expect = ring.zero()
        for j in range(3):
            a, b = (j + 1) % 3, (j + 2) % 3
            minor = m[1, a] * m[2, b] - m[1, b] * m[2, a]
            term = m[0, j] * minor
            if (a - j) % 3 != 1:
                term = -term
            expect = expect + term
        got = poly_det(m)
        assert got == expect


def test_poly_inverse_unimodular_roundtrip():
    ring = PolyRing(QQ)
    t = ring.gen()
    m = np.empty((2, 2), dtype=object)
    m[0, 0] = ring.one()
    m[0, 1] = t * t
    m[1, 0] = ring.zero()
    m[1, 1] = ring.scalar(QQ.scalar(-2))
    inv = poly_inverse_unimodular(m)
    prod = np.dot(m, inv)
    assert prod[0, 0] == ring.one() and prod[1, 1] == ring.one()
    assert prod[0, 1].is_zero() and prod[1, 0].is_zero()
    sing = np.empty((2, 2), dtype=object)
    sing[0, 0] = t
    sing[0, 1] = ring.zero()
    sing[1, 0] = ring.zero()
    sing[1, 1] = ring.one()
    with pytest.raises(ArithmeticError):
        poly_inverse_unimodular(sing)


def test_kernel_module_basis_is_saturated():
    ring = PolyRing(QQ)
    t = ring.gen()
    # kernel of (t, -1) is spanned by (1, t), not by a multiple of it
    rows = [[t, ring.scalar(QQ.scalar(-1))]]
    basis = kernel_module_basis(rows)
    assert len(basis) == 1
    vec = basis[0]
    combined = vec[0] * t - vec[1]
    assert combined.is_zero()
    assert min(p.valuation() for p in vec if not p.is_zero()) == 0


def test_square_root_cover():
    cov = kummer_builder(2, 1, QQ)
    irr = IrrepSet.compute(cov.group, QQ)
    pkg = trace_package(cov, irr)
    assert str(pkg.gram[0, 0]) == "(2)"
    assert pkg.gram[0, 1].is_zero()
    assert pkg.disc_valuation == 1
    assert pkg.fixed_ranks == (1, 1)
    assert pkg.section_valuations == (0, 1)
    verdict = tame_check(cov, irr)
    assert verdict["cond2"] is True
    assert verdict["cond4"] is True
    assert verdict["cond5"] is True
    assert verdict["consistent"]


@pytest.mark.parametrize(
    "n,field",
    [
        (2, QQ),
        (3, CyclotomicField(3)),
        (4, CyclotomicField(4)),
        (5, CyclotomicField(5)),
        (6, CyclotomicField(3)),
    ],
)
def test_root_cover_family_valuations(n, field):
    cov = kummer_builder(n, 1, field)
    irr = IrrepSet.compute(cov.group, field)
    pkg = trace_package(cov, irr)
    assert pkg.disc_valuation == n - 1
    assert sum(pkg.section_valuations) == n - 1
    verdict = tame_check(cov, irr)
    assert verdict["cond2"] and verdict["cond4"] and verdict["cond5"]
    assert verdict["consistent"]
    report = trace_decomposition_check(cov, irr)
    assert report["ok"]
    assert report["kernel_matches"]


def test_split_degenerate_cover_fails_everything():
    cov = kummer_builder(2, 2, QQ)
    irr = IrrepSet.compute(cov.group, QQ)
    pkg = trace_package(cov, irr)
    assert pkg.disc_valuation == 2
    assert pkg.section_valuations == (0, 2)
    verdict = tame_check(cov, irr)
    assert verdict["cond2"] is False
    assert verdict["cond4"] is False
    assert verdict["cond5"] is False
    assert verdict["consistent"]
    # the valuation factorization still holds even though the cover is bad
    report = trace_decomposition_check(cov, irr)
    assert report["valuation_identity"]
    fib = fiber_regularity(cov)
    point = fib["points"][0]
    assert point["cotangent_dim"] == 2
    assert point["regular"] is False
    assert point["tame"] == "undetermined"


def test_cusp_cover_not_regular():
    cov = kummer_builder(2, 3, QQ)
    irr = IrrepSet.compute(cov.group, QQ)
    pkg = trace_package(cov, irr)
    assert pkg.disc_valuation == 3
    fib = fiber_regularity(cov)
    assert fib["points"][0]["regular"] is False


def test_ramification_indices_of_root_covers():
    for n, field in ((2, QQ), (3, CyclotomicField(3)), (4, CyclotomicField(4))):
        cov = kummer_builder(n, 1, field)
        fib = fiber_regularity(cov)
        assert len(fib["points"]) == 1
        point = fib["points"][0]
        assert point["regular"]
        assert point["ramification_index"] == n
        assert point["tame"] is True
        assert fib["all_tame"]


def test_missing_root_of_unity():
    with pytest.raises(MissingRootOfUnity):
        kummer_builder(3, 1, QQ)


def test_torsor_cover_is_etale():
    group = FiniteGroup.symmetric(3)
    field = CyclotomicField(3)
    cov = torsor_cover(group, field)
    irr = IrrepSet.compute(group, field)
    pkg = trace_package(cov, irr)
    assert pkg.disc_valuation == 0
    assert pkg.section_valuations == (0, 0, 0)
    verdict = tame_check(cov, irr)
    assert verdict["cond2"] and verdict["cond4"] and verdict["cond5"]
    report = trace_decomposition_check(cov, irr)
    assert report["ok"]
    fib = fiber_regularity(cov)
    assert len(fib["points"]) == 6
    assert all(p["ramification_index"] == 1 for p in fib["points"])
    assert fib["all_regular"] and fib["all_tame"]


def test_wrong_characteristic_cover_over_prime_field():
    field = PrimeField(2)
    ring = PolyRing(field)
    t, one = ring.gen(), ring.one()
    etale = univariate_cover(field, [t, one], [one, one], 2)
    pkg = trace_package(etale)
    assert str(pkg.gram[0, 1]) == "(1)"
    assert pkg.disc_valuation == 0
    verdict = tame_check(etale)
    assert verdict["cond2"] is True
    assert verdict["cond4"] is None and verdict["cond5"] is None
    assert "characteristic" in verdict["unavailable"]
    fib = fiber_regularity(etale)
    assert len(fib["points"]) == 2
    assert all(p["ramification_index"] == 1 for p in fib["points"])
    assert fib["all_tame"]


def test_wild_cover_regular_but_not_tame():
    field = PrimeField(2)
    ring = PolyRing(field)
    t, one = ring.gen(), ring.one()
    cov = univariate_cover(field, [t, t], [t, one], 2)
    pkg = trace_package(cov)
    assert pkg.disc_valuation == 2
    verdict = tame_check(cov)
    assert verdict["cond2"] is False
    fib = fiber_regularity(cov)
    point = fib["points"][0]
    assert point["cotangent_dim"] == 1
    assert point["regular"] is True
    assert point["ramification_index"] == 2
    assert point["tame"] is False
    assert not fib["all_tame"]


def test_univariate_rejects_wrong_order_image():
    field = PrimeField(3)
    ring = PolyRing(field)
    t, one = ring.gen(), ring.one()
    with pytest.raises(ValueError):
        univariate_cover(field, [t, one], [one, one], 2)


def test_product_cover_points_and_exclusions():
    c2 = FiniteGroup.cyclic(2)
    cov = product_cover(kummer_builder(2, 1, QQ), torsor_cover(c2, QQ))
    irr = IrrepSet.compute(c2, QQ)
    pkg = trace_package(cov)
    assert pkg.disc_valuation == 1
    verdict = tame_check(cov, irr)
    assert verdict["cond2"] is True
    assert verdict["cond4"] is None
    assert "rank" in verdict["unavailable"]
    with pytest.raises(HypothesisUnmet):
        trace_decomposition_check(cov, irr)
    fib = fiber_regularity(cov)
    assert sorted(p["ramification_index"] for p in fib["points"]) == [1, 1, 2]
    assert fib["all_regular"] and fib["all_tame"]


def test_invariants_hypothesis_guard():
    # same group, but invariants of the product have rank two
    c2 = FiniteGroup.cyclic(2)
    cov = product_cover(kummer_builder(2, 1, QQ), kummer_builder(2, 1, QQ))
    fixed = cov.fixed_module(None)
    assert fixed.shape[0] == 2
    irr = IrrepSet.compute(c2, QQ)
    with pytest.raises(HypothesisUnmet):
        trace_decomposition_check(cov, irr)


def test_cover_requires_polynomial_entries():
    from equicover.algebras import functions_on_group

    group = FiniteGroup.cyclic(2)
    with pytest.raises(ValueError):
        CoverOverDVR(functions_on_group(group, QQ))


def _random_unimodular(ring, dim, rng):
    m = np.empty((dim, dim), dtype=object)
    for i in range(dim):
        for j in range(dim):
            m[i, j] = ring.one() if i == j else ring.zero()
    for _ in range(2 * dim):
        i, j = rng.sample(range(dim), 2)
        p = Poly(
            ring.field,
            [ring.field.scalar(rng.randint(-2, 2)) for _ in range(rng.randint(1, 3))],
        )
        for r in range(dim):
            m[r, j] = m[r, j] + m[r, i] * p
    return m


@pytest.mark.parametrize("seed", [5, 6, 7, 8])
def test_valuations_survive_unimodular_changes(seed):
    rng = random.Random(seed)
    field = CyclotomicField(3)
    cov = kummer_builder(3, 1, field)
    irr = IrrepSet.compute(cov.group, field)
    before = trace_package(cov, irr)
    m = _random_unimodular(PolyRing(field), 3, rng)
    moved = change_basis(cov, m)
    after = trace_package(moved, irr)
    assert after.disc_valuation == before.disc_valuation
    assert after.section_valuations == before.section_valuations
    assert [p.valuation() for p in after.gram_divisors] == [
        p.valuation() for p in before.gram_divisors
    ]
    assert tame_check(moved, irr) == tame_check(cov, irr)


def test_zero_discriminant_reports_infinite_valuation():
    # square-zero part forces a totally degenerate trace form
    field = QQ
    ring = PolyRing(field)
    group = FiniteGroup.cyclic(1)
    mult = np.empty((2, 2, 2), dtype=object)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                mult[i, j, k] = ring.zero()
    mult[0, 0, 0] = ring.one()
    mult[0, 1, 1] = ring.one()
    mult[1, 0, 1] = ring.one()
    unit = np.array([ring.one(), ring.zero()], dtype=object)
    from equicover.algebras import EquivariantAlgebra
    from equicover.linalg import identity

    alg = EquivariantAlgebra(group, ring, mult, unit, [identity(2, ring)])
    cov = CoverOverDVR(alg)
    pkg = trace_package(cov)
    assert pkg.disc.is_zero()
    assert pkg.disc_valuation == math.inf
    verdict = tame_check(cov)
    assert verdict["cond2"] is False
