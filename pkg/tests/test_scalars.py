"""Field, polynomial and Smith-form arithmetic."""

import pytest

from equicover.errors import DivisionByZero, FieldMismatch
from equicover.scalars import (
    Poly,
    PolyRing,
    QQ,
    Scalar,
    cyclotomic_field,
    embed_scalar,
    factor_poly,
    factor_squarefree,
    poly_gcd,
    poly_xgcd,
    prime_field,
    primitive_root_of_unity,
    smith_normal_form,
)


def test_rational_arithmetic():
    a = QQ.scalar(3) / QQ.scalar(4)
    b = QQ.scalar(-2) / QQ.scalar(5)
    assert a + b == QQ.scalar(7) / QQ.scalar(20)
    assert a * b == QQ.scalar(-3) / QQ.scalar(10)
    assert (a - a) == QQ.zero()
    assert a.inverse() * a == QQ.one()
    with pytest.raises(DivisionByZero):
        QQ.zero().inverse()


def test_cyclotomic_reduction_degree():
    # Phi_12 has degree 4, so zeta^4 must re-express in lower powers
    f = cyclotomic_field(12)
    z = f.zeta(1)
    assert len((z ** 4).v) == 4
    assert z ** 12 == f.one()
    assert z ** 6 == -f.one()
    total = sum((z ** (k * 12 // 3) for k in range(1, 3)), f.one())
    assert total == f.zero()  # 1 + zeta_3 + zeta_3^2


def test_cyclotomic_inverse_roundtrip():
    f = cyclotomic_field(5)
    x = f.zeta(1) + f.scalar(2)
    assert x * x.inverse() == f.one()
    y = f.zeta(3) - f.zeta(2) + f.scalar(7) / f.scalar(3)
    assert y * y.inverse() == f.one()


def test_prime_field_ops():
    f = prime_field(7)
    assert f.scalar(3) + f.scalar(5) == f.scalar(1)
    assert f.scalar(3).inverse() == f.scalar(5)
    assert (f.scalar(6) * f.scalar(6)) == f.scalar(1)
    with pytest.raises(DivisionByZero):
        f.zero().inverse()


def test_no_cross_field_mixing():
    with pytest.raises(FieldMismatch):
        cyclotomic_field(3).one() + cyclotomic_field(4).one()
    with pytest.raises(FieldMismatch):
        prime_field(3).one() + prime_field(5).one()
    with pytest.raises(FieldMismatch):
        QQ.one() + prime_field(5).one()


def test_rational_lifts_into_cyclotomic():
    # the one allowed implicit coercion
    f = cyclotomic_field(4)
    assert QQ.scalar(2) + f.zeta(1) == f.scalar(2) + f.zeta(1)
    assert f.zeta(1) * QQ.scalar(3) == f.zeta(1) * f.scalar(3)


def test_primitive_roots():
    assert primitive_root_of_unity(QQ, 2) == QQ.scalar(-1)
    with pytest.raises(ValueError):
        primitive_root_of_unity(QQ, 3)
    f = cyclotomic_field(8)
    r = primitive_root_of_unity(f, 4)
    assert r ** 4 == f.one() and r ** 2 != f.one()
    # odd-level fields still contain the doubled roots
    f3 = cyclotomic_field(3)
    r6 = primitive_root_of_unity(f3, 6)
    assert r6 ** 6 == f3.one()
    assert r6 ** 2 != f3.one() and r6 ** 3 != f3.one()
    f13 = prime_field(13)
    r3 = primitive_root_of_unity(f13, 3)
    assert r3 ** 3 == f13.one() and r3 != f13.one()
    with pytest.raises(ValueError):
        primitive_root_of_unity(f13, 5)


def test_embed_scalar():
    f3, f6 = cyclotomic_field(3), cyclotomic_field(6)
    x = f3.zeta(1) + f3.scalar(4)
    y = embed_scalar(x, f6)
    assert y.field is f6
    # zeta_3 = zeta_6^2
    assert y == f6.zeta(2) + f6.scalar(4)
    assert embed_scalar(QQ.scalar(5), prime_field(7)) == prime_field(7).scalar(5)
    with pytest.raises(FieldMismatch):
        embed_scalar(QQ.scalar(1) / QQ.scalar(7), prime_field(7))
    with pytest.raises(FieldMismatch):
        embed_scalar(f6.zeta(1), f3)


def test_poly_basic():
    t = Poly.gen(QQ)
    p = t ** 3 - QQ.scalar(2) * t + Poly.constant(QQ.scalar(1))
    q = t - Poly.constant(QQ.scalar(1))
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert p(QQ.scalar(1)) == QQ.zero()
    assert rem == Poly.zero(QQ)
    assert (t ** 2).valuation() == 2
    import math

    assert Poly.zero(QQ).valuation() == math.inf


def test_poly_gcd_and_xgcd():
    t = Poly.gen(QQ)
    a = (t - Poly.constant(QQ.one())) * (t + Poly.constant(QQ.scalar(2)))
    b = (t - Poly.constant(QQ.one())) * (t + Poly.constant(QQ.scalar(5)))
    g = poly_gcd(a, b)
    assert g == t - Poly.constant(QQ.one())
    g2, u, v = poly_xgcd(a, b)
    assert u * a + v * b == g2
    assert g2 == g


def test_factor_poly_remultiplies():
    t = Poly.gen(QQ)
    p = (t ** 2 + Poly.one(QQ)) * (t - Poly.constant(QQ.scalar(3))) ** 2
    unit, factors = factor_poly(p)
    acc = Poly.constant(unit)
    for q, mult in factors:
        assert q.monic() == q
        acc = acc * q ** mult
    assert acc == p
    # over Q(zeta_4) the quadratic splits
    f = cyclotomic_field(4)
    t4 = Poly.gen(f)
    p4 = t4 ** 2 + Poly.one(f)
    _, factors4 = factor_poly(p4)
    assert len(factors4) == 2
    assert all(q.degree == 1 for q, _ in factors4)


def test_factor_squarefree():
    f = prime_field(5)
    t = Poly.gen(f)
    p = (t ** 2 - Poly.constant(f.scalar(2))) * (t - Poly.one(f))
    unit, parts = factor_squarefree(p)
    prod = Poly.constant(unit)
    for q in parts:
        prod = prod * q
    assert prod == p
    with pytest.raises(ValueError):
        factor_squarefree((t - Poly.one(f)) ** 2)


def test_smith_normal_form_properties():
    t = Poly.gen(QQ)
    one = Poly.one(QQ)
    rows = [
        [t ** 2 - one, t + one, Poly.zero(QQ)],
        [t - one, one, t],
        [Poly.zero(QQ), t ** 3, t ** 2 + t],
    ]
    snf = smith_normal_form(rows)
    # D = U A V with unimodular transforms
    import numpy as np

    a = np.array(rows, dtype=object)
    u = np.array(snf.u, dtype=object)
    v = np.array(snf.v, dtype=object)
    d = np.dot(np.dot(u, a), v)
    for i in range(3):
        for j in range(3):
            expect = snf.divisors[i] if i == j and i < len(snf.divisors) else Poly.zero(QQ)
            assert d[i, j] == expect
    # divisibility chain, monic
    for i in range(len(snf.divisors) - 1):
        _, rem = divmod(snf.divisors[i + 1], snf.divisors[i])
        assert rem == Poly.zero(QQ)
    for p in snf.divisors:
        assert p.monic() == p


def test_poly_ring_shim():
    ring = PolyRing(QQ)
    assert ring.one() == Poly.one(QQ)
    assert ring.zero() == Poly.zero(QQ)
    assert ring.gen() == Poly.gen(QQ)
    assert ring.scalar(3) == Poly.constant(QQ.scalar(3))
    assert ring.scalar(Poly.gen(QQ)) == Poly.gen(QQ)
    assert ring.characteristic == 0


def test_scalar_sort_keys_are_total():
    f = cyclotomic_field(4)
    vals = [f.zeta(1), f.one(), -f.one(), f.zeta(3), f.scalar(2)]
    keys = [v.sort_key() for v in vals]
    assert len(set(keys)) == len(keys)
    ordered = sorted(vals, key=lambda s: s.sort_key())
    assert ordered[0] == f.one()  # zeta^0 sorts before other powers
