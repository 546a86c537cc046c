"""Trace forms and ramification of equivariant covers over k[t].

The base is the polynomial ring with its t-adic valuation, standing in
for the local ring at a regular codimension-one point.  Everything here
is exact: discriminants are Bareiss determinants, fixed modules come
from Smith normal forms, and the three tameness conditions are decided
with zero tolerance and cross-checked against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebras import EquivariantAlgebra, split_idempotents_mod_p
from .errors import (
    HypothesisUnmet,
    MissingRootOfUnity,
    NonInvertibleOrder,
    NonSplitAlgebra,
    NonSplitFiber,
    NotSquare,
)
from .groups import FiniteGroup
from .linalg import identity, kernel, mat_eq, rank, row_space_basis, zeros
from .reps import IrrepSet, Representation
from .scalars import Poly, PolyRing, primitive_root_of_unity, smith_normal_form


# ---------------------------------------------------------------------------
# Exact linear algebra over the polynomial base


def poly_det(mat: np.ndarray) -> Poly:
    """Fraction-free determinant of a square matrix of polynomials."""
    n = mat.shape[0]
    if mat.shape[1] != n:
        raise NotSquare(f"determinant of a {mat.shape[0]}x{mat.shape[1]} matrix")
    if n == 0:
        raise NotSquare("determinant of an empty matrix")
    fld = mat[0, 0].field
    a = [[mat[i, j] for j in range(n)] for i in range(n)]
    sign = 1
    prev = Poly.one(fld)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next(
                (i for i in range(k + 1, n) if not a[i][k].is_zero()), None
            )
            if swap is None:
                return Poly.zero(fld)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q, r = divmod(num, prev)
                if not r.is_zero():
                    raise ArithmeticError("fraction-free elimination left a remainder")
                a[i][j] = q
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def poly_inverse_unimodular(mat: np.ndarray) -> np.ndarray:
    """Inverse of a polynomial matrix whose determinant is a nonzero constant."""
    n = mat.shape[0]
    det = poly_det(mat)
    if det.is_zero() or det.degree != 0:
        raise ArithmeticError(
            "matrix is not unimodular over the polynomial base"
        )
    fld = mat[0, 0].field
    dinv = det.coeffs[0].inverse()
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            minor = np.empty((n - 1, n - 1), dtype=object)
            for r in range(n - 1):
                for c in range(n - 1):
                    minor[r, c] = mat[r + (r >= j), c + (c >= i)]
            cof = poly_det(minor) if n > 1 else Poly.one(fld)
            if (i + j) % 2:
                cof = -cof
            out[i, j] = cof * Poly(fld, [dinv])
    return out


def kernel_module_basis(rows) -> list:
    """Basis of the right kernel over k[t], one list of Poly per basis vector.

    Columns of the Smith column transform past the rank span the kernel
    saturatedly, so the result is a basis of the kernel as a free module.
    """
    sf = smith_normal_form(rows)
    n = len(rows[0]) if rows else 0
    return [[sf.v[r][c] for r in range(n)] for c in range(sf.rank, n)]


def _const(p: Poly):
    return p.coeffs[0] if p.coeffs else p.field.zero()


def _valuation(p: Poly):
    return p.valuation()


# ---------------------------------------------------------------------------
# Covers over the valuation base


class CoverOverDVR:
    """An equivariant algebra with polynomial entries over k[t].

    Checks that every structure constant, unit coordinate and action
    entry is a polynomial and that the action matrices stay invertible
    at t = 0 (constant nonzero determinant up to units: valuation zero).
    """

    def __init__(self, algebra: EquivariantAlgebra):
        ring = algebra.ring
        if not isinstance(ring, PolyRing):
            raise ValueError("the algebra must have polynomial entries")
        self.algebra = algebra
        self.ring = ring
        self.field = ring.field
        self.group = algebra.group
        self.dim = algebra.dim
        for g in range(self.group.n):
            det = poly_det(algebra.action[g])
            if det.is_zero() or _valuation(det) != 0:
                raise ValueError(
                    f"action of element {g} degenerates at t = 0"
                )
        self._fiber = None
        self._fixed = []

    def fiber_algebra(self) -> EquivariantAlgebra:
        """The special fiber at t = 0, an algebra over the residue field."""
        if self._fiber is None:
            d = self.dim
            mult = np.empty((d, d, d), dtype=object)
            for i in range(d):
                for j in range(d):
                    for k in range(d):
                        mult[i, j, k] = _const(self.algebra.mult[i, j, k])
            unit = np.empty((d,), dtype=object)
            for i in range(d):
                unit[i] = _const(self.algebra.unit[i])
            action = []
            for g in range(self.group.n):
                m = np.empty((d, d), dtype=object)
                src = self.algebra.action[g]
                for i in range(d):
                    for j in range(d):
                        m[i, j] = _const(src[i, j])
                action.append(m)
            self._fiber = EquivariantAlgebra(
                self.group, self.field, mult, unit, action, check=False
            )
        return self._fiber

    def fixed_module(self, rep: Representation | None = None):
        """Basis rows over k[t] of the invariants of the algebra tensor rep."""
        # cache pairs keep the representation alive, identity keyed
        for cached, module in self._fixed:
            if cached is rep:
                return module
        d = self.dim
        ring = self.ring
        action = self.algebra.action
        if rep is None:
            size = d
            mats = {g: action[g] for g in self.group.generators()}
        else:
            dv = rep.dim
            size = d * dv
            mats = {}
            for g in self.group.generators():
                big = np.empty((size, size), dtype=object)
                for p in range(d):
                    for q in range(dv):
                        for p2 in range(d):
                            for q2 in range(dv):
                                big[p * dv + q, p2 * dv + q2] = action[g][
                                    p, p2
                                ] * ring.scalar(rep.matrices[g][q, q2])
                mats[g] = big
        one = ring.one()
        rows = []
        for g, m in mats.items():
            for i in range(size):
                row = [m[i, j] for j in range(size)]
                row[i] = row[i] - one
                rows.append(row)
        basis = kernel_module_basis(rows)
        out = np.empty((len(basis), size), dtype=object)
        for i, vec in enumerate(basis):
            out[i, :] = vec
        self._fixed.append((rep, out))
        return out

    def __repr__(self):
        return f"CoverOverDVR(dim={self.dim}, group order {self.group.n})"


# ---------------------------------------------------------------------------
# The trace package


@dataclass
class TracePackage:
    """Trace data of a cover, with the equivariant refinement when asked.

    The discriminant and the per-irreducible sections are determinants,
    so they are only well defined up to units; the valuations are exact
    and basis independent, which is what the checks consume.
    """

    trace: np.ndarray
    gram: np.ndarray
    disc: Poly
    disc_valuation: object
    gram_divisors: list
    irreps: IrrepSet | None = None
    fixed_ranks: tuple | None = None
    xi: dict | None = dc_field(default=None, repr=False)
    sections: dict | None = None
    section_valuations: tuple | None = None
    xi_divisors: dict | None = None


def trace_package(cover: CoverOverDVR, irreps: IrrepSet | None = None) -> TracePackage:
    """Trace vector, Gram matrix and discriminant; per-irrep sections on demand.

    The equivariant part needs the group order invertible (NonInvertibleOrder
    otherwise) and every pairing matrix square (NotSquare otherwise, which
    already convicts the generic fiber of not being a cover).
    """
    alg = cover.algebra
    tr = alg.trace_vector()
    gram = alg.trace_gram()
    disc = poly_det(gram)
    divisors = smith_normal_form(
        [[gram[i, j] for j in range(cover.dim)] for i in range(cover.dim)]
    ).divisors
    pkg = TracePackage(
        trace=tr,
        gram=gram,
        disc=disc,
        disc_valuation=_valuation(disc),
        gram_divisors=divisors,
    )
    if irreps is None:
        return pkg
    char = cover.field.characteristic
    if char and cover.group.n % char == 0:
        raise NonInvertibleOrder(
            f"characteristic {char} divides the group order {cover.group.n}"
        )
    if irreps.group != cover.group:
        raise ValueError("irreducible list is over the wrong group")
    d = cover.dim
    xi = {}
    sections = {}
    vals = []
    ranks = []
    xi_divisors = {}
    for idx, rep in enumerate(irreps):
        dv = rep.dim
        w = cover.fixed_module(rep)
        wd = cover.fixed_module(rep.dual())
        ranks.append(w.shape[0])
        m = np.empty((wd.shape[0], w.shape[0]), dtype=object)
        for a in range(wd.shape[0]):
            for b in range(w.shape[0]):
                acc = cover.ring.zero()
                for q in range(dv):
                    left = [wd[a, p * dv + q] for p in range(d)]
                    right = [w[b, p * dv + q] for p in range(d)]
                    for p1 in range(d):
                        if left[p1].is_zero():
                            continue
                        for p2 in range(d):
                            if right[p2].is_zero():
                                continue
                            acc = acc + left[p1] * right[p2] * gram[p1, p2]
                m[a, b] = acc
        xi[idx] = m
        if m.shape[0] != m.shape[1]:
            raise NotSquare(
                f"pairing for irreducible {idx} is {m.shape[0]}x{m.shape[1]}: "
                "the generic fiber is not a cover"
            )
        sec = poly_det(m) if m.shape[0] else Poly.one(cover.field)
        sections[idx] = sec
        vals.append(_valuation(sec))
        xi_divisors[idx] = smith_normal_form(
            [[m[i, j] for j in range(m.shape[1])] for i in range(m.shape[0])]
        ).divisors
    pkg.irreps = irreps
    pkg.fixed_ranks = tuple(ranks)
    pkg.xi = xi
    pkg.sections = sections
    pkg.section_valuations = tuple(vals)
    pkg.xi_divisors = xi_divisors
    return pkg


# ---------------------------------------------------------------------------
# Tameness conditions


def tame_check(cover: CoverOverDVR, irreps: IrrepSet | None = None) -> dict:
    """The three computable tameness conditions, with their agreement.

    The discriminant bound is always available.  The per-irreducible
    bound and the cokernel bound additionally need an invertible group
    order, rank equal to the group order, and a generic fiber that is a
    cover; when a hypothesis fails those verdicts come back None with
    the reason reported instead of raised.
    """
    d = cover.dim
    n = cover.group.n
    char = cover.field.characteristic
    base_pkg = trace_package(cover)
    v_disc = base_pkg.disc_valuation
    cond2 = v_disc < d
    unavailable = {}
    cond4 = cond5 = None
    full = None
    if char and n % char == 0:
        unavailable["reason"] = (
            f"characteristic {char} divides the group order {n}"
        )
    elif d != n:
        unavailable["reason"] = (
            f"algebra rank {d} differs from the group order {n}"
        )
    elif irreps is None:
        unavailable["reason"] = "no irreducible list supplied"
    else:
        try:
            full = trace_package(cover, irreps)
        except NotSquare as exc:
            unavailable["reason"] = str(exc)
        else:
            if full.fixed_ranks != irreps.degrees:
                unavailable["reason"] = (
                    f"generic fiber ranks {full.fixed_ranks} are not the "
                    f"dimensions {irreps.degrees}"
                )
                full = None
    if full is not None:
        cond4 = True
        for idx, rep in enumerate(irreps):
            fixed_dim = rank(rep.reynolds())
            bound = rep.dim - fixed_dim
            if not full.section_valuations[idx] <= bound:
                cond4 = False
        cond5 = all(
            _valuation(dv) <= 1 for dv in base_pkg.gram_divisors
        )
    defined = [cond2] + [c for c in (cond4, cond5) if c is not None]
    verdict = {
        "cond2": cond2,
        "cond4": cond4,
        "cond5": cond5,
        "consistent": len(set(defined)) <= 1,
        "disc_valuation": v_disc,
    }
    if unavailable:
        verdict["unavailable"] = unavailable["reason"]
    return verdict


# ---------------------------------------------------------------------------
# The trace decomposition identity


def trace_decomposition_check(cover: CoverOverDVR, irreps: IrrepSet) -> dict:
    """Kernel-of-trace isotypic identity plus the valuation factorization.

    Needs an invertible group order, rank equal to the group order and
    invariants reduced to the base line; violations raise HypothesisUnmet.
    The report carries each sub-verdict separately.
    """
    d = cover.dim
    n = cover.group.n
    char = cover.field.characteristic
    if char and n % char == 0:
        raise HypothesisUnmet(
            f"characteristic {char} divides the group order {n}"
        )
    if d != n:
        raise HypothesisUnmet(f"algebra rank {d} differs from the group order {n}")
    fixed = cover.fixed_module(None)
    if fixed.shape[0] != 1:
        raise HypothesisUnmet(
            f"invariants form a rank {fixed.shape[0]} module, not the base line"
        )
    vec = fixed[0]
    piv = next(j for j in range(d) if not vec[j].is_zero())
    q, r = divmod(cover.algebra.unit[piv], vec[piv])
    if not r.is_zero() or q.is_zero() or q.degree != 0:
        raise HypothesisUnmet("invariants are larger than the unit line")
    first = irreps.irreps[0]
    if first.dim != 1 or any(c != cover.field.one() for c in first.character()):
        raise ValueError("the irreducible list must start with the trivial one")
    ring = cover.ring
    field = cover.field
    order_inv = field.scalar(n).inverse()
    projectors = []
    for rep in irreps:
        dim_scalar = field.scalar(rep.dim)
        chi = rep.character()
        p = zeros(d, d, ring)
        for g in range(n):
            coef = dim_scalar * order_inv * chi[cover.group.inv[g]]
            mat = cover.algebra.action[g]
            cp = ring.scalar(coef)
            for i in range(d):
                for j in range(d):
                    if not mat[i, j].is_zero():
                        p[i, j] = p[i, j] + cp * mat[i, j]
        projectors.append(p)
    total = zeros(d, d, ring)
    for p in projectors:
        total = total + p
    complete = mat_eq(total, identity(d, ring))
    tr = cover.algebra.trace_vector()
    kills = True
    for idx in range(1, len(projectors)):
        p = projectors[idx]
        for j in range(d):
            acc = ring.zero()
            for i in range(d):
                acc = acc + tr[i] * p[i, j]
            if not acc.is_zero():
                kills = False
    stacked = []
    for idx in range(1, len(projectors)):
        p = projectors[idx]
        for j in range(d):
            stacked.append([p[i, j] for i in range(d)])
    iso_rank = smith_normal_form(stacked).rank if stacked else 0
    rank_matches = iso_rank == d - 1
    kernel_matches = complete and kills and rank_matches
    full = trace_package(cover, irreps)
    v_disc = full.disc_valuation
    weighted = 0
    finite = True
    for idx, rep in enumerate(irreps):
        v = full.section_valuations[idx]
        if v == math.inf:
            finite = False
        else:
            weighted += rep.dim * v
    if v_disc == math.inf or not finite:
        identity_holds = v_disc == math.inf and not finite
    else:
        identity_holds = v_disc == weighted
    return {
        "projectors_complete": complete,
        "trace_kills_nontrivial": kills,
        "kernel_rank_matches": rank_matches,
        "kernel_matches": kernel_matches,
        "disc_valuation": v_disc,
        "section_valuations": full.section_valuations,
        "valuation_identity": identity_holds,
        "ok": kernel_matches and identity_holds,
    }


# ---------------------------------------------------------------------------
# Fiber points: splitting, regularity, ramification indices


def _frobenius_nilpotents(field, fib: EquivariantAlgebra, rows, piv):
    """Nilpotent subspace of a slice of a prime characteristic fiber."""
    from .linalg import coords_in_rref_basis

    p = field.characteristic
    c = rows.shape[0]
    frob = np.empty((c, c), dtype=object)
    for j in range(c):
        v = rows[j]
        # v^p by square and multiply on the exponent bits
        acc = v
        for b in bin(p)[3:]:
            acc = fib.multiply(acc, acc)
            if b == "1":
                acc = fib.multiply(acc, v)
        frob[:, j] = coords_in_rref_basis(rows, piv, acc)
    k_steps = 1
    size = p
    while size < c:
        size *= p
        k_steps += 1
    power_mat = frob
    for _ in range(k_steps - 1):
        power_mat = np.dot(power_mat, frob)
    return kernel(power_mat)


def _char_zero_nilpotents(field, fib, rows, piv):
    """Nilpotents of a slice via the degenerate directions of its trace form."""
    from .linalg import coords_in_rref_basis

    c = rows.shape[0]
    mats = []
    for j in range(c):
        m = zeros(c, c, field)
        for i in range(c):
            prod = fib.multiply(rows[j], rows[i])
            m[:, i] = coords_in_rref_basis(rows, piv, prod)
        mats.append(m)
    gram = zeros(c, c, field)
    for i in range(c):
        for j in range(c):
            acc = field.zero()
            prod = np.dot(mats[i], mats[j])
            for k in range(c):
                acc = acc + prod[k, k]
            gram[i, j] = acc
    return kernel(gram)


def _fiber_points(cover: CoverOverDVR):
    """Primitive idempotents of the special fiber with their local data.

    Returns a list of (idempotent, slice_rows, slice_pivots, nilpotent_rows)
    and raises NonSplitFiber when some residue field is bigger than the
    coefficient field.
    """
    from .reps import _pivots

    fib = cover.fiber_algebra()
    field = cover.field
    d = cover.dim
    char = field.characteristic
    if char:
        idems = split_idempotents_mod_p(field, fib.mult)
    else:
        trivial = FiniteGroup.cyclic(1)
        plain = EquivariantAlgebra(
            trivial,
            field,
            fib.mult,
            fib.unit,
            [identity(d, field)],
            check=False,
        )
        from .algebras import component_decompose

        try:
            dec = component_decompose(plain)
        except NonSplitAlgebra as exc:
            raise NonSplitFiber(
                f"special fiber has a component with residue extension: {exc}"
            ) from exc
        idems = dec.idempotents
    points = []
    for e in idems:
        le = fib.left_matrix_of(e)
        rows = row_space_basis(le.T)
        piv = _pivots(rows)
        if char:
            nil = _frobenius_nilpotents(field, fib, rows, piv)
        else:
            nil = _char_zero_nilpotents(field, fib, rows, piv)
        residue_dim = rows.shape[0] - nil.shape[0]
        if residue_dim != 1:
            raise NonSplitFiber(
                f"point has residue degree {residue_dim} over the base field"
            )
        points.append((e, rows, piv, nil))
    return points


class _Truncation:
    """The finite algebra A/(t^K A), with vectors indexed by (t-power, basis)."""

    def __init__(self, cover: CoverOverDVR, depth: int):
        self.cover = cover
        self.depth = depth
        self.d = cover.dim
        self.field = cover.field
        self.size = depth * cover.dim

    def embed(self, vec, shift: int = 0) -> np.ndarray:
        """A fiber vector (field entries) as a truncation vector at t^shift."""
        out = np.empty((self.size,), dtype=object)
        zero = self.field.zero()
        for i in range(self.size):
            out[i] = zero
        for i, c in enumerate(vec):
            if shift < self.depth:
                out[shift * self.d + i] = c
        return out

    def embed_poly_vec(self, vec, shift: int = 0) -> np.ndarray:
        """A k[t]-vector of the cover reduced into the truncation."""
        out = np.empty((self.size,), dtype=object)
        zero = self.field.zero()
        for i in range(self.size):
            out[i] = zero
        for i, p in enumerate(vec):
            for s, c in enumerate(p.coeffs):
                if s + shift < self.depth:
                    out[(s + shift) * self.d + i] = out[(s + shift) * self.d + i] + c
        return out

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        mult = self.cover.algebra.mult
        out = np.empty((self.size,), dtype=object)
        zero = self.field.zero()
        for i in range(self.size):
            out[i] = zero
        for xi in range(self.size):
            cx = x[xi]
            if not cx:
                continue
            sx, bx = divmod(xi, self.d)
            for yi in range(self.size):
                cy = y[yi]
                if not cy:
                    continue
                sy, by = divmod(yi, self.d)
                base_shift = sx + sy
                if base_shift >= self.depth:
                    continue
                cxy = cx * cy
                for k in range(self.d):
                    p = mult[bx, by, k]
                    for s, c in enumerate(p.coeffs):
                        tot = base_shift + s
                        if tot < self.depth and c:
                            out[tot * self.d + k] = out[tot * self.d + k] + cxy * c
        return out

    def lift_idempotent(self, e_fiber) -> np.ndarray:
        """Hensel lift of a fiber idempotent through the t-nilpotents."""
        e = self.embed(e_fiber)
        steps = 0
        while True:
            sq = self.multiply(e, e)
            if mat_eq(sq.reshape(-1, 1), e.reshape(-1, 1)):
                return e
            steps += 1
            if steps > self.depth + 4:
                raise ArithmeticError("idempotent lift did not stabilize")
            cube = self.multiply(sq, e)
            three = self.field.scalar(3)
            two = self.field.scalar(2)
            e = np.array(
                [three * sq[i] - two * cube[i] for i in range(self.size)],
                dtype=object,
            )


def _span_rows(field, vectors):
    if not vectors:
        return np.empty((0, 0), dtype=object)
    m = np.empty((len(vectors), vectors[0].shape[0]), dtype=object)
    for i, v in enumerate(vectors):
        m[i, :] = v
    return row_space_basis(m)


def fiber_regularity(cover: CoverOverDVR) -> dict:
    """Regularity and tameness of every point of the special fiber.

    Each point gets the dimension of its cotangent space; at regular
    points the ramification index is the largest power of the maximal
    ideal containing t, and tameness is its coprimality with the
    characteristic.  Non-regular points report tame as "undetermined".
    """
    points = _fiber_points(cover)
    fib = cover.fiber_algebra()
    d = cover.dim
    field = cover.field
    char = field.characteristic
    depth = d + 2
    trunc = _Truncation(cover, depth)
    one = field.one()
    reports = []
    for e, rows, piv, nil in points:
        # the maximal ideal at the point, inside the two-step truncation:
        # nilpotents of the slice, the complementary components, and t
        m_fiber = []
        for i in range(nil.shape[0]):
            m_fiber.append(np.dot(nil[i], rows))
        comp = _sub(fib.unit, e)
        lcomp = fib.left_matrix_of(comp)
        comp_rows = row_space_basis(lcomp.T)
        for i in range(comp_rows.shape[0]):
            m_fiber.append(comp_rows[i])
        small = _Truncation(cover, 2)
        m_small = [small.embed(v) for v in m_fiber]
        for i in range(d):
            basis_vec = np.array(
                [one if j == i else field.zero() for j in range(d)], dtype=object
            )
            m_small.append(small.embed(basis_vec, shift=1))
        m_rows = _span_rows(field, m_small)
        prods = []
        for i in range(m_rows.shape[0]):
            for j in range(i, m_rows.shape[0]):
                prods.append(small.multiply(m_rows[i], m_rows[j]))
        sq_rows = _span_rows(field, prods)
        cotangent = m_rows.shape[0] - sq_rows.shape[0]
        regular = cotangent == 1
        ram = None
        tame = "undetermined"
        if regular:
            e_lift = trunc.lift_idempotent(e)
            local_m = []
            for v in m_fiber:
                local_m.append(trunc.multiply(e_lift, trunc.embed(v)))
            for i in range(d):
                basis_vec = np.array(
                    [one if j == i else field.zero() for j in range(d)],
                    dtype=object,
                )
                for s in range(1, depth):
                    local_m.append(
                        trunc.multiply(e_lift, trunc.embed(basis_vec, shift=s))
                    )
            m1 = _span_rows(field, local_m)
            t_class = trunc.multiply(
                e_lift, trunc.embed_poly_vec(cover.algebra.unit, shift=1)
            )
            power = m1
            ram = 0
            for j in range(1, depth):
                if _in_span(field, power, t_class):
                    ram = j
                else:
                    break
                nxt = []
                for i in range(power.shape[0]):
                    for jj in range(m1.shape[0]):
                        nxt.append(trunc.multiply(power[i], m1[jj]))
                power = _span_rows(field, nxt)
            if ram == 0:
                raise ArithmeticError("t escaped the maximal ideal at a fiber point")
            tame = (char == 0) or (ram % char != 0)
        reports.append(
            {
                "idempotent": e,
                "cotangent_dim": cotangent,
                "regular": regular,
                "ramification_index": ram,
                "tame": tame,
            }
        )
    return {
        "points": reports,
        "all_regular": all(r["regular"] for r in reports),
        "all_tame": all(r["tame"] is True for r in reports),
    }


def _sub(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.array([x - y for x, y in zip(a, b)], dtype=object)


def _in_span(field, rows: np.ndarray, vec: np.ndarray) -> bool:
    if rows.shape[0] == 0:
        return not any(bool(c) for c in vec)
    stacked = np.empty((rows.shape[0] + 1, rows.shape[1]), dtype=object)
    stacked[: rows.shape[0], :] = rows
    stacked[rows.shape[0], :] = vec
    return row_space_basis(stacked).shape[0] == rows.shape[0]


# ---------------------------------------------------------------------------
# Builders for the example battery


def kummer_builder(n: int, m: int, field) -> CoverOverDVR:
    """The cyclic cover x^n = t^m with the root-of-unity scaling action."""
    if n < 1 or m < 1:
        raise ValueError("the degree and the exponent must be positive")
    try:
        zeta = primitive_root_of_unity(field, n)
    except ValueError as exc:
        raise MissingRootOfUnity(str(exc)) from exc
    group = FiniteGroup.cyclic(n)
    ring = PolyRing(field)
    t_m = Poly(field, [field.zero()] * m + [field.one()])
    mult = np.empty((n, n, n), dtype=object)
    zero = ring.zero()
    for i in range(n):
        for j in range(n):
            for k in range(n):
                mult[i, j, k] = zero
    for i in range(n):
        for j in range(n):
            if i + j < n:
                mult[i, j, i + j] = ring.one()
            else:
                mult[i, j, i + j - n] = t_m
    unit = np.empty((n,), dtype=object)
    unit[0] = ring.one()
    for i in range(1, n):
        unit[i] = zero
    action = []
    for g in range(n):
        mat = zeros(n, n, ring)
        for i in range(n):
            mat[i, i] = ring.scalar(zeta ** ((g * i) % n) if n > 1 else field.one())
        action.append(mat)
    alg = EquivariantAlgebra(group, ring, mult, unit, action)
    return CoverOverDVR(alg)


def univariate_cover(field, rel_coeffs, gen_image, order: int) -> CoverOverDVR:
    """A cyclic cover k[t][x]/(x^deg - rel(x)) with the generator sending
    x to the given polynomial image.

    rel_coeffs lists the lower-degree coefficients of x^deg as Poly
    values, lowest first; gen_image likewise gives the image of x.  The
    action is validated, so a wrong image raises from the constructor.
    """
    deg = len(rel_coeffs)
    ring = PolyRing(field)

    def reduce_power(k: int):
        # x^k as a vector over the basis 1, x, ..., x^(deg-1)
        vec = [ring.zero()] * deg
        if k < deg:
            vec[k] = ring.one()
            return vec
        prev = reduce_power(k - 1)
        carry = prev[deg - 1]
        out = [ring.zero()] + prev[: deg - 1]
        if not carry.is_zero():
            for i in range(deg):
                out[i] = out[i] + carry * rel_coeffs[i]
        return out

    mult = np.empty((deg, deg, deg), dtype=object)
    for i in range(deg):
        for j in range(deg):
            vec = reduce_power(i + j)
            for k in range(deg):
                mult[i, j, k] = vec[k]
    unit = np.empty((deg,), dtype=object)
    unit[0] = ring.one()
    for i in range(1, deg):
        unit[i] = ring.zero()

    def poly_multiply(a, b):
        # product of two reduced vectors
        out = [ring.zero()] * deg
        for i in range(deg):
            if a[i].is_zero():
                continue
            for j in range(deg):
                if b[j].is_zero():
                    continue
                for k in range(deg):
                    out[k] = out[k] + a[i] * b[j] * mult[i, j, k]
        return out

    image = list(gen_image) + [ring.zero()] * (deg - len(gen_image))
    gen_mat = zeros(deg, deg, ring)
    power = [ring.one()] + [ring.zero()] * (deg - 1)
    for j in range(deg):
        for i in range(deg):
            gen_mat[i, j] = power[i]
        power = poly_multiply(power, image)
    group = FiniteGroup.cyclic(order)
    action = [identity(deg, ring)]
    cur = gen_mat
    for _ in range(1, order):
        action.append(cur)
        cur = np.dot(gen_mat, cur)
    if not mat_eq(cur, identity(deg, ring)):
        raise ValueError("the generator image does not have the right order")
    alg = EquivariantAlgebra(group, ring, mult, unit, action)
    return CoverOverDVR(alg)


def torsor_cover(group: FiniteGroup, field) -> CoverOverDVR:
    """Functions on the group with polynomial coefficients: the étale torsor."""
    from .algebras import functions_on_group

    return CoverOverDVR(functions_on_group(group, PolyRing(field)))


def product_cover(a: CoverOverDVR, b: CoverOverDVR) -> CoverOverDVR:
    """Componentwise product of two covers of the same group."""
    from .algebras import product_algebra

    return CoverOverDVR(product_algebra(a.algebra, b.algebra))


def change_basis(cover: CoverOverDVR, mat: np.ndarray) -> CoverOverDVR:
    """The same cover written in a new basis, for invariance testing.

    The transition matrix must be unimodular over k[t] so the result is
    again a polynomial algebra with a polynomial inverse change.
    """
    inv = poly_inverse_unimodular(mat)
    alg = cover.algebra
    d = cover.dim
    new_mult = np.empty((d, d, d), dtype=object)
    cols = [np.array([mat[i, j] for i in range(d)], dtype=object) for j in range(d)]
    for i in range(d):
        for j in range(d):
            prod = alg.multiply(cols[i], cols[j])
            coords = np.dot(inv, prod.reshape(d, 1)).reshape(d)
            new_mult[i, j, :] = coords
    new_unit = np.dot(inv, alg.unit.reshape(d, 1)).reshape(d)
    new_action = [
        np.dot(np.dot(inv, alg.action[g]), mat) for g in range(cover.group.n)
    ]
    new_alg = EquivariantAlgebra(
        cover.group, cover.ring, new_mult, new_unit, new_action
    )
    return CoverOverDVR(new_alg)
