"""Exact scalar arithmetic and univariate polynomials.

Three base fields are supported: the rationals, cyclotomic fields Q(zeta_n)
represented as Q[z]/Phi_n(z), and prime fields F_p.  Scalars are immutable
and exact; there is no floating point anywhere.  On top of the scalars sit
dense univariate polynomials (used both as elements of k[t] for the
discrete-valuation base and as plain polynomials to factor), a Smith normal
form over k[t], and a factorization routine for squarefree polynomials.

Arithmetic between scalars requires matching fields.  The single implicit
lift is rational -> cyclotomic (and plain int -> anything); everything else
raises FieldMismatch.
"""

from __future__ import annotations

import math
import os
from functools import lru_cache

try:
    from gmpy2 import mpq
except ImportError:  # pragma: no cover
    from fractions import Fraction as mpq

from .errors import (
    DegreeBoundExceeded,
    DivisionByZero,
    FieldMismatch,
)

_MPQ_ZERO = mpq(0)
_MPQ_ONE = mpq(1)

DEFAULT_MAX_DEGREE = 32


def max_factor_degree() -> int:
    """Degree cap for factorization, overridable via EQUICOVER_MAX_DEGREE."""
    raw = os.environ.get("EQUICOVER_MAX_DEGREE")
    return int(raw) if raw else DEFAULT_MAX_DEGREE


def _cyclotomic_int_coeffs(n: int) -> list[int]:
    # Phi_n by exact integer division of x^n - 1 by the Phi_d for proper d | n.
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d:
            continue
        phi_d = _cyclotomic_int_coeffs(d)
        # divide poly by phi_d (both monic up to content, division is exact)
        out = [0] * (len(poly) - len(phi_d) + 1)
        rem = list(poly)
        for k in range(len(out) - 1, -1, -1):
            c = rem[k + len(phi_d) - 1]
            out[k] = c
            if c:
                for i, a in enumerate(phi_d):
                    rem[k + i] -= c * a
        assert not any(rem[: len(phi_d) - 1]), "cyclotomic division not exact"
        poly = out
    return poly


class RationalField:
    """The field Q.  A single shared instance is exposed as QQ."""

    kind = "rational"
    characteristic = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def scalar(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field == self:
                return value
            raise FieldMismatch(f"cannot read {value!r} as a rational")
        return Scalar(self, mpq(value))

    def zero(self) -> "Scalar":
        return Scalar(self, _MPQ_ZERO)

    def one(self) -> "Scalar":
        return Scalar(self, _MPQ_ONE)


class CyclotomicField:
    """Q(zeta_n) with elements stored on the power basis 1, z, ..., z^(phi-1)."""

    kind = "cyclotomic"
    characteristic = 0

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("cyclotomic level must be positive")
        self.n = n
        ints = _cyclotomic_int_coeffs(n)
        self.phi = len(ints) - 1
        self.modulus_ints = tuple(ints)
        self._build_tables()

    def _build_tables(self):
        phi = self.phi
        # z^phi = -(c_0 + c_1 z + ... + c_(phi-1) z^(phi-1)), then iterate up.
        reductions = {}
        top = [mpq(-c) for c in self.modulus_ints[:phi]]
        reductions[phi] = tuple(top)
        for k in range(phi + 1, 2 * phi):
            prev = reductions[k - 1]
            shifted = [_MPQ_ZERO] + list(prev[: phi - 1])
            lead = prev[phi - 1]
            if lead:
                shifted = [a + lead * b for a, b in zip(shifted, reductions[phi])]
            reductions[k] = tuple(shifted)
        self._reductions = reductions
        # all n powers of zeta, for root-of-unity recognition and ordering
        powers = []
        vec = tuple([_MPQ_ONE] + [_MPQ_ZERO] * (phi - 1))
        for _ in range(self.n):
            powers.append(vec)
            vec = self.mul_raw(vec, self.zeta_raw(1))
        self._zeta_powers = powers
        self._root_lookup = {v: a for a, v in enumerate(powers)}

    def zeta_raw(self, a: int):
        a %= self.n
        if hasattr(self, "_zeta_powers"):
            return self._zeta_powers[a]
        phi = self.phi
        if a < phi:
            vec = [_MPQ_ZERO] * phi
            vec[a] = _MPQ_ONE
            return tuple(vec)
        return self._reductions[a]

    def mul_raw(self, a, b):
        phi = self.phi
        if phi == 1:
            return (a[0] * b[0],)
        conv = [_MPQ_ZERO] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = conv[:phi]
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                red = self._reductions[k]
                for i in range(phi):
                    if red[i]:
                        out[i] += c * red[i]
        return tuple(out)

    def __repr__(self):
        return f"QQ(zeta_{self.n})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.n == self.n

    def __hash__(self):
        return hash(("cyclotomic", self.n))

    def scalar(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field == self:
                return value
            if value.field == QQ:
                return self.from_rational(value.v)
            raise FieldMismatch(f"cannot read {value!r} in {self!r}")
        return self.from_rational(mpq(value))

    def from_rational(self, q) -> "Scalar":
        vec = [_MPQ_ZERO] * self.phi
        vec[0] = mpq(q)
        return Scalar(self, tuple(vec))

    def from_coeffs(self, coeffs) -> "Scalar":
        vals = [mpq(c) for c in coeffs]
        if len(vals) > self.phi:
            raise ValueError("coefficient vector longer than the field degree")
        vals += [_MPQ_ZERO] * (self.phi - len(vals))
        return Scalar(self, tuple(vals))

    def zeta(self, a: int = 1) -> "Scalar":
        return Scalar(self, self.zeta_raw(a))

    def zero(self) -> "Scalar":
        return Scalar(self, tuple([_MPQ_ZERO] * self.phi))

    def one(self) -> "Scalar":
        return self.zeta(0)

    def root_exponent(self, scalar: "Scalar"):
        """Return a with scalar == zeta^a, or None."""
        return self._root_lookup.get(scalar.v)


class PrimeField:
    """F_p for a prime p, elements stored as ints in [0, p)."""

    kind = "prime"

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(math.isqrt(p)) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __repr__(self):
        return f"FF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def scalar(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field == self:
                return value
            raise FieldMismatch(f"cannot read {value!r} in {self!r}")
        return Scalar(self, int(value) % self.p)

    def zero(self) -> "Scalar":
        return Scalar(self, 0)

    def one(self) -> "Scalar":
        return Scalar(self, 1)


QQ = RationalField()


@lru_cache(maxsize=None)
def cyclotomic_field(n: int) -> CyclotomicField:
    return CyclotomicField(n)


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


class Scalar:
    """An element of one of the supported fields.  Immutable."""

    __slots__ = ("field", "v")

    def __init__(self, field, v):
        self.field = field
        self.v = v

    def _pair(self, other):
        # Returns (field, self_payload, other_payload) with the implicit
        # QQ -> cyclotomic lift applied, or raises FieldMismatch.
        if isinstance(other, int):
            return self.field, self.v, self.field.scalar(other).v
        if not isinstance(other, Scalar):
            return NotImplemented
        f, g = self.field, other.field
        if f is g or f == g:
            return f, self.v, other.v
        if isinstance(f, CyclotomicField) and g == QQ:
            return f, self.v, f.from_rational(other.v).v
        if f == QQ and isinstance(g, CyclotomicField):
            return g, g.from_rational(self.v).v, other.v
        raise FieldMismatch(f"cannot combine {f!r} and {g!r}")

    def __add__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return NotImplemented
        f, a, b = p
        if f.kind == "rational":
            return Scalar(f, a + b)
        if f.kind == "prime":
            return Scalar(f, (a + b) % f.p)
        return Scalar(f, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.kind == "rational":
            return Scalar(f, -self.v)
        if f.kind == "prime":
            return Scalar(f, (-self.v) % f.p)
        return Scalar(f, tuple(-x for x in self.v))

    def __sub__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return NotImplemented
        f, a, b = p
        if f.kind == "rational":
            return Scalar(f, a - b)
        if f.kind == "prime":
            return Scalar(f, (a - b) % f.p)
        return Scalar(f, tuple(x - y for x, y in zip(a, b)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return NotImplemented
        f, a, b = p
        if f.kind == "rational":
            return Scalar(f, a * b)
        if f.kind == "prime":
            return Scalar(f, (a * b) % f.p)
        return Scalar(f, f.mul_raw(a, b))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        f = self.field
        if not self:
            raise DivisionByZero(f"inverting zero in {f!r}")
        if f.kind == "rational":
            return Scalar(f, 1 / self.v)
        if f.kind == "prime":
            return Scalar(f, pow(self.v, f.p - 2, f.p))
        inv = _cyclotomic_inverse(f, self.v)
        return Scalar(f, inv)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.field.scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field.scalar(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self):
        if self.field.kind == "cyclotomic":
            return any(self.v)
        return bool(self.v)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        try:
            f, a, b = self._pair(other)
        except FieldMismatch:
            return False
        return a == b

    def __hash__(self):
        return hash((self.field, self.v))

    def sort_key(self):
        """Deterministic comparison key, usable within a single field.

        Root-of-unity values sort first, ordered by exponent; everything
        else follows, ordered by coefficient vector.
        """
        f = self.field
        if f.kind == "rational":
            return (1, (self.v,))
        if f.kind == "prime":
            return (1, (self.v,))
        a = f.root_exponent(self)
        if a is not None:
            return (0, (a,))
        return (1, tuple(self.v))

    def __repr__(self):
        f = self.field
        if f.kind == "cyclotomic":
            parts = []
            for i, c in enumerate(self.v):
                if c:
                    parts.append(f"{c}" if i == 0 else f"{c}*z^{i}")
            return "+".join(parts) if parts else "0"
        return str(self.v)


def _poly_divmod_q(num, den):
    # dense lists of mpq, lowest degree first, den nonzero
    num = list(num)
    dn = len(den) - 1
    while den[dn] == 0:
        dn -= 1
    q = [_MPQ_ZERO] * max(len(num) - dn, 1)
    inv_lead = 1 / den[dn]
    for k in range(len(num) - dn - 1, -1, -1):
        c = num[k + dn] * inv_lead
        q[k] = c
        if c:
            for i in range(dn + 1):
                num[k + i] -= c * den[i]
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return q, num


def _cyclotomic_inverse(field: CyclotomicField, vec):
    # extended euclid against the minimal polynomial, over Q
    mod = [mpq(c) for c in field.modulus_ints]
    r0, r1 = mod, list(vec) + [_MPQ_ZERO]
    while len(r1) > 1 and r1[-1] == 0:
        r1.pop()
    s0, s1 = [_MPQ_ZERO], [_MPQ_ONE]
    while any(c != 0 for c in r1):
        q, r = _poly_divmod_q(r0, r1)
        # s_new = s0 - q * s1
        prod = [_MPQ_ZERO] * (len(q) + len(s1) - 1)
        for i, a in enumerate(q):
            if a:
                for j, b in enumerate(s1):
                    if b:
                        prod[i + j] += a * b
        s_new = [_MPQ_ZERO] * max(len(s0), len(prod))
        for i, a in enumerate(s0):
            s_new[i] += a
        for i, a in enumerate(prod):
            s_new[i] -= a
        r0, r1, s0, s1 = r1, r, s1, s_new
        while len(r1) > 1 and r1[-1] == 0:
            r1.pop()
    if len(r0) != 1 or r0[0] == 0:
        raise DivisionByZero("element is a zero divisor modulo the minimal polynomial")
    c = 1 / r0[0]
    out = [a * c for a in s0[: field.phi]]
    out += [_MPQ_ZERO] * (field.phi - len(out))
    # reduce any overflow (cannot happen when deg s0 < phi, which euclid ensures)
    return tuple(out)


class Poly:
    """Dense univariate polynomial over one of the scalar fields.

    Coefficients are stored lowest degree first with no trailing zeros.
    Used both for elements of the valuation base k[t] and as polynomials
    handed to the factorizer.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        trimmed = list(coeffs)
        while trimmed and not trimmed[-1]:
            trimmed.pop()
        self.field = field
        self.coeffs = tuple(trimmed)

    @classmethod
    def from_ints(cls, field, ints) -> "Poly":
        return cls(field, [field.scalar(c) for c in ints])

    @classmethod
    def constant(cls, value: Scalar) -> "Poly":
        return cls(value.field, [value])

    @classmethod
    def zero(cls, field) -> "Poly":
        return cls(field, [])

    @classmethod
    def one(cls, field) -> "Poly":
        return cls(field, [field.one()])

    @classmethod
    def gen(cls, field) -> "Poly":
        """The variable itself."""
        return cls(field, [field.zero(), field.one()])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def valuation(self):
        """Order of vanishing at 0; math.inf for the zero polynomial."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def leading(self) -> Scalar:
        if not self.coeffs:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field == self.field:
                return other
            raise FieldMismatch("polynomials over different fields")
        if isinstance(other, Scalar) or isinstance(other, int):
            return Poly(self.field, [self.field.scalar(other)])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.field)
        zero = self.field.zero()
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, k: int) -> "Poly":
        """Multiply by t^k."""
        if not self.coeffs:
            return self
        zero = self.field.zero()
        return Poly(self.field, [zero] * k + list(self.coeffs))

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dn = other.degree
        if len(rem) <= dn:
            return Poly.zero(self.field), self
        inv_lead = other.leading().inverse()
        zero = self.field.zero()
        q = [zero] * (len(rem) - dn)
        for k in range(len(rem) - dn - 1, -1, -1):
            c = rem[k + dn] * inv_lead
            q[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] = rem[k + i] - c * b
        return Poly(self.field, q), Poly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.leading().inverse()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly(
            self.field,
            [self.field.scalar(i) * c for i, c in enumerate(self.coeffs)][1:],
        )

    def __call__(self, x: Scalar) -> Scalar:
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Scalar)):
            other = self._coerce(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def sort_key(self):
        return (self.degree, tuple(c.sort_key() for c in self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"({c!r})" if i == 0 else f"({c!r})*t^{i}")
        return " + ".join(parts)


class PolyRing:
    """The ring k[t] of a coefficient field, quacking like a field descriptor.

    Lets matrix and structure-constant code run unchanged over polynomial
    entries: zero/one/scalar produce Poly values.  Division stays out of
    reach, which is the point.
    """

    kind = "poly_ring"

    def __init__(self, field):
        self.field = field
        self.characteristic = field.characteristic

    def zero(self) -> Poly:
        return Poly.zero(self.field)

    def one(self) -> Poly:
        return Poly.one(self.field)

    def scalar(self, value) -> Poly:
        if isinstance(value, Poly):
            if value.field == self.field:
                return value
            raise FieldMismatch("polynomial over a different field")
        return Poly(self.field, [self.field.scalar(value)])

    def gen(self) -> Poly:
        return Poly.gen(self.field)

    def __repr__(self):
        return f"{self.field!r}[t]"

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.field == self.field

    def __hash__(self):
        return hash(("poly_ring", self.field))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, u, v) with u*a + v*b = g, g monic (or zero)."""
    field = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(field), Poly.zero(field)
    t0, t1 = Poly.zero(field), Poly.one(field)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    c = r0.leading().inverse()
    return r0.monic(), s0 * c, t0 * c


# ---------------------------------------------------------------------------
# Smith normal form over k[t]


class SmithForm:
    """Result of a Smith normal form computation: u @ m @ v == diagonal(d)."""

    __slots__ = ("divisors", "u", "v", "rank")

    def __init__(self, divisors, u, v):
        self.divisors = divisors
        self.u = u
        self.v = v
        self.rank = sum(1 for d in divisors if not d.is_zero())


def smith_normal_form(rows: list[list[Poly]]) -> SmithForm:
    """Smith normal form of a matrix over k[t].

    Returns monic diagonal divisors with d_i | d_(i+1) and the recorded
    unimodular row and column transforms (built from elementary operations,
    so their determinants are nonzero constants by construction).
    """
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    if nr == 0 or nc == 0:
        return SmithForm([], [], [])
    field = m[0][0].field
    zero, one = Poly.zero(field), Poly.one(field)
    u = [[one if i == j else zero for j in range(nr)] for i in range(nr)]
    v = [[one if i == j else zero for j in range(nc)] for i in range(nc)]

    def row_op(i, j, q):  # row_i -= q * row_j
        for c in range(nc):
            m[i][c] = m[i][c] - q * m[j][c]
        for c in range(nr):
            u[i][c] = u[i][c] - q * u[j][c]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(nr):
            m[r][i] = m[r][i] - q * m[r][j]
        for r in range(nc):
            v[r][i] = v[r][i] - q * v[r][j]

    def row_swap(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in range(nr):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        for r in range(nc):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    for k in range(min(nr, nc)):
        while True:
            pivot = None
            best = None
            for i in range(k, nr):
                for j in range(k, nc):
                    if m[i][j]:
                        d = m[i][j].degree
                        if best is None or d < best:
                            best, pivot = d, (i, j)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != k:
                row_swap(k, pi)
            if pj != k:
                col_swap(k, pj)
            dirty = False
            for i in range(k + 1, nr):
                if m[i][k]:
                    q = m[i][k] // m[k][k]
                    row_op(i, k, q)
                    if m[i][k]:
                        dirty = True
            for j in range(k + 1, nc):
                if m[k][j]:
                    q = m[k][j] // m[k][k]
                    col_op(j, k, q)
                    if m[k][j]:
                        dirty = True
            if dirty:
                continue
            # pivot now alone in its row and column; enforce divisibility

            offender = None
            for i in range(k + 1, nr):
                for j in range(k + 1, nc):
                    if m[i][j] and not (m[i][j] % m[k][k]).is_zero():
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            # fold the offending row into the pivot row and restart the cycle
            for c in range(nc):
                m[k][c] = m[k][c] + m[offender][c]
            for c in range(nr):
                u[k][c] = u[k][c] + u[offender][c]
        if m[k][k]:
            lead = m[k][k].leading()
            if lead != field.one():
                inv = lead.inverse()
                for c in range(nc):
                    m[k][c] = m[k][c] * inv
                for c in range(nr):
                    u[k][c] = u[k][c] * inv
    divisors = [m[i][i] for i in range(min(nr, nc))]
    return SmithForm(divisors, u, v)


# ---------------------------------------------------------------------------
# Factorization (sympy-backed kernel behind an exact interface)


@lru_cache(maxsize=None)
def _sympy_domain(field):
    import sympy

    if field == QQ:
        return sympy.QQ
    if isinstance(field, CyclotomicField):
        zeta = sympy.exp(2 * sympy.pi * sympy.I / field.n)
        return sympy.QQ.algebraic_field(zeta)
    if isinstance(field, PrimeField):
        return sympy.GF(field.p)
    raise FieldMismatch(f"no factorization domain for {field!r}")


def _to_sympy_coeff(field, dom, c: Scalar):
    if field == QQ:
        return dom.convert(c.v)
    if field.kind == "prime":
        return dom(int(c.v))
    rev = list(reversed(c.v))
    while rev and rev[0] == 0:
        rev.pop(0)
    return dom(rev) if rev else dom.zero


def _as_mpq(c):
    try:
        return mpq(c)
    except TypeError:
        return mpq(str(c))


def _from_sympy_coeff(field, dom, e) -> Scalar:
    if field == QQ:
        return Scalar(QQ, _as_mpq(e))
    if field.kind == "prime":
        return field.scalar(int(e))
    rep = getattr(e, "rep", e)
    to_list = getattr(rep, "to_list", None)
    coeffs = list(to_list()) if to_list is not None else list(rep)
    coeffs.reverse()  # sympy stores highest degree first
    return field.from_coeffs([_as_mpq(c) for c in coeffs])


def factor_poly(p: Poly, max_degree: int | None = None):
    """Factor into monic irreducibles over the coefficient field.

    Returns (unit, [(factor, multiplicity), ...]) with the factor list
    sorted by (degree, coefficient key).  Degrees above the cap raise
    DegreeBoundExceeded.
    """
    from sympy.polys.factortools import dup_factor_list

    cap = max_degree if max_degree is not None else max_factor_degree()
    if p.degree > cap:
        raise DegreeBoundExceeded(
            f"degree {p.degree} exceeds the factorization cap {cap}"
        )
    if p.is_zero():
        raise DivisionByZero("cannot factor the zero polynomial")
    field = p.field
    dom = _sympy_domain(field)
    dup = [_to_sympy_coeff(field, dom, c) for c in reversed(p.coeffs)]
    lead, factors = dup_factor_list(dup, dom)
    unit = _from_sympy_coeff(field, dom, lead)
    out = []
    for fac, mult in factors:
        coeffs = [_from_sympy_coeff(field, dom, c) for c in reversed(fac)]
        q = Poly(field, coeffs).monic()
        out.append((q, mult))
    out.sort(key=lambda fm: fm[0].sort_key())
    # unit check: product of factors with multiplicity times unit == p
    prod = Poly.constant(unit)
    for q, mult in out:
        for _ in range(mult):
            prod = prod * q
    if prod != p:
        raise ArithmeticError("factorization backend returned an inconsistent result")
    return unit, out


def factor_squarefree(p: Poly, max_degree: int | None = None):
    """Factor a squarefree polynomial into distinct monic irreducibles.

    The squarefree requirement is checked through gcd with the derivative.
    Returns (unit, [factor, ...]).
    """
    if p.is_zero():
        raise DivisionByZero("cannot factor the zero polynomial")
    if p.degree >= 1:
        g = poly_gcd(p, p.derivative())
        if g.degree != 0:
            raise ValueError(f"input is not squarefree (repeated part {g!r})")
    unit, factors = factor_poly(p, max_degree=max_degree)
    assert all(m == 1 for _, m in factors)
    return unit, [q for q, _ in factors]


def primitive_root_of_unity(field, m: int) -> Scalar:
    """The canonical primitive m-th root of unity in the field.

    Rationals carry one only for m <= 2.  Q(zeta_n) has roots of every
    order dividing n, and when n is odd also of order dividing 2n since
    -zeta is then a primitive 2n-th root.  In F_p it is the smallest
    generator of the order-m subgroup of F_p^*, requiring m | p - 1.
    Raises ValueError when the field has none.
    """
    if m < 1:
        raise ValueError("root order must be positive")
    if field.kind == "rational":
        if m == 1:
            return field.one()
        if m == 2:
            return field.scalar(-1)
        raise ValueError(f"the rationals contain no primitive root of order {m}")
    if field.kind == "cyclotomic":
        n = field.n
        if n % m == 0:
            return field.zeta(n // m)
        if n % 2 == 1 and (2 * n) % m == 0:
            # -zeta^((n+1)/2) squares to zeta, so it has order 2n
            root_2n = -field.zeta((n + 1) // 2)
            return root_2n ** ((2 * n) // m)
        raise ValueError(f"Q(zeta_{n}) contains no root of order {m}")
    p = field.p
    if (p - 1) % m:
        raise ValueError(f"F_{p} contains no root of order {m}")
    prime_parts = _prime_divisors(m)
    for x in range(1, p):
        if pow(x, m, p) != 1:
            continue
        if all(pow(x, m // q, p) != 1 for q in prime_parts):
            return Scalar(field, x)
    raise ValueError(f"no order-{m} element found in F_{p}")  # pragma: no cover


def _prime_divisors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def embed_scalar(x: Scalar, field) -> Scalar:
    """Move a scalar into a larger (or equal) field.

    Beyond the implicit rational -> cyclotomic lift this also handles
    Q(zeta_m) -> Q(zeta_n) for m | n, and rational -> F_p when the
    denominator is prime to p.  Anything else raises FieldMismatch.
    """
    if x.field == field:
        return x
    if x.field == QQ:
        if field.kind == "cyclotomic":
            return field.from_rational(x.v)
        if field.kind == "prime":
            num, den = x.v.numerator, x.v.denominator
            if den % field.p == 0:
                raise FieldMismatch(f"denominator of {x!r} vanishes in F_{field.p}")
            return Scalar(field, int(num) * pow(int(den), -1, field.p) % field.p)
        raise FieldMismatch(f"cannot embed {x!r} into {field!r}")
    if x.field.kind == "cyclotomic" and field.kind == "cyclotomic":
        m, n = x.field.n, field.n
        if n % m:
            raise FieldMismatch(f"Q(zeta_{m}) does not embed in Q(zeta_{n})")
        step = n // m
        out = field.zero()
        for k, c in enumerate(x.v):
            if c:
                out = out + Scalar(field, tuple(a * c for a in field.zeta_raw(k * step)))
        return out
    raise FieldMismatch(f"cannot embed {x!r} into {field!r}")
