"""Finite commutative algebras with a group action, and the rank functor.

The central objects are EquivariantAlgebra (structure constants, unit and
one invertible action matrix per group element) and FunctorData (per
irreducible: a multiplicity rank, plus the product blocks that say how
pairs of sections multiply through each intertwiner channel).  The two
directions between them are algebra_to_functor and functor_to_algebra,
and roundtrip_matrix produces the canonical isomorphism witnessing that
the constructions invert each other.

Everything is exact.  Algebras can live over one of the scalar fields or
over k[t] (polynomial entries); the functor directions require a field
whose characteristic does not divide the group order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    HypothesisUnmet,
    NoUnit,
    NonInvertibleOrder,
    NonSplitAlgebra,
    NotAssociative,
    NotCommutative,
)
from .groups import FiniteGroup
from .linalg import (
    coords_in_rref_basis,
    identity,
    inverse,
    kernel,
    mat_eq,
    rank,
    restrict_operator,
    row_space_basis,
    solve,
    zero_vector,
    zeros,
)
from .reps import IrrepSet, Representation, _pivots
from .scalars import Poly, factor_poly


def _as_int(value) -> int:
    # exact scalar known to be a nonnegative integer
    f = value.field
    if f.kind == "prime":
        return int(value.v)
    if f.kind == "rational":
        q = value.v
    else:
        if any(c for c in value.v[1:]):
            raise ArithmeticError("expected a rational value")
        q = value.v[0]
    if q.denominator != 1:
        raise ArithmeticError("expected an integer value")
    return int(q.numerator)


class EquivariantAlgebra:
    """Commutative unital algebra with a compatible group action.

    mult[i][j][k] is the coefficient of basis vector k in the product of
    basis vectors i and j.  action[g] is the matrix of g acting on the
    underlying space; each action matrix must be an algebra automorphism
    and g -> action[g] a homomorphism.  perm_action, when present, lists
    for each g the permutation sigma with action[g] e_x = e_{sigma[x]};
    it unlocks fast paths and survives the constructions that preserve a
    monomial basis.
    """

    def __init__(
        self,
        group: FiniteGroup,
        ring,
        mult: np.ndarray,
        unit: np.ndarray,
        action,
        perm_action=None,
        check: bool = True,
    ):
        self.group = group
        self.ring = ring
        self.mult = mult
        self.unit = unit
        self.action = list(action)
        if perm_action is not None:
            perm_action = tuple(tuple(sigma) for sigma in perm_action)
        self.perm_action = perm_action
        self.dim = int(mult.shape[0])
        self._left = None
        if check:
            self.validate()

    # -- basic structure ---------------------------------------------------

    def left_matrices(self):
        """Left multiplication matrices, one per basis vector, cached."""
        if self._left is None:
            # (e_i x)_k = sum_j mult[i][j][k] x_j
            self._left = [self.mult[i].T for i in range(self.dim)]
        return self._left

    def left_matrix_of(self, vec: np.ndarray) -> np.ndarray:
        out = zeros(self.dim, self.dim, self.ring)
        left = self.left_matrices()
        for i in range(self.dim):
            if vec[i]:
                out = out + vec[i] * left[i]
        return out

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        out = zero_vector(self.dim, self.ring)
        left = self.left_matrices()
        for i in range(self.dim):
            if x[i]:
                out = out + x[i] * np.dot(left[i], y)
        return out

    def act(self, g: int, x: np.ndarray) -> np.ndarray:
        if self.perm_action is not None:
            out = zero_vector(self.dim, self.ring)
            sigma = self.perm_action[g]
            for i in range(self.dim):
                out[sigma[i]] = x[i]
            return out
        return np.dot(self.action[g], x)

    def trace_vector(self) -> np.ndarray:
        """Traces of the left multiplication matrices."""
        out = zero_vector(self.dim, self.ring)
        left = self.left_matrices()
        for i in range(self.dim):
            acc = self.ring.zero()
            for j in range(self.dim):
                acc = acc + left[i][j, j]
            out[i] = acc
        return out

    def trace_gram(self) -> np.ndarray:
        """Gram matrix of the trace form (e_i, e_j) -> trace(L_{e_i e_j})."""
        tr = self.trace_vector()
        out = zeros(self.dim, self.dim, self.ring)
        for i in range(self.dim):
            for j in range(i, self.dim):
                acc = self.ring.zero()
                row = self.mult[i][j]
                for k in range(self.dim):
                    if row[k]:
                        acc = acc + row[k] * tr[k]
                out[i, j] = acc
                out[j, i] = acc
        return out

    def character(self):
        """Trace of each action matrix."""
        vals = []
        for g in range(self.group.n):
            if self.perm_action is not None:
                fixed = sum(1 for i, s in enumerate(self.perm_action[g]) if s == i)
                vals.append(self.ring.scalar(fixed))
            else:
                m = self.action[g]
                acc = self.ring.zero()
                for i in range(self.dim):
                    acc = acc + m[i, i]
                vals.append(acc)
        return tuple(vals)

    # -- validation --------------------------------------------------------

    def validate(self):
        d = self.dim
        n = self.group.n
        if self.mult.shape != (d, d, d):
            raise ValueError("structure constant tensor has the wrong shape")
        if self.unit.shape != (d,):
            raise ValueError("unit vector has the wrong length")
        if len(self.action) != n:
            raise ValueError("need one action matrix per group element")
        for m in self.action:
            if m.shape != (d, d):
                raise ValueError("action matrix has the wrong shape")
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(d):
                    if self.mult[i, j, k] != self.mult[j, i, k]:
                        raise NotCommutative(
                            f"products of basis vectors {i} and {j} disagree"
                        )
        left = self.left_matrices()
        lu = self.left_matrix_of(self.unit)
        if not mat_eq(lu, identity(d, self.ring)):
            raise NoUnit("the designated unit does not act as identity")
        flat_a = self.mult.reshape(d * d, d)
        flat_b = self.mult.reshape(d, d * d)
        t1 = np.dot(flat_a, flat_b)  # ((i j) k)_l indexed [(i,j),(k,l)]
        for i in range(d):
            # t2[(j,k), l] = sum_m mult[j,k,m] mult[i,m,l] = (i (j k))_l
            t2 = np.dot(flat_a, self.mult[i])
            lhs = t1[i * d : (i + 1) * d].reshape(d, d, d)
            rhs = t2.reshape(d, d, d)
            if not mat_eq(lhs.reshape(d, d * d), rhs.reshape(d, d * d)):
                raise NotAssociative(
                    f"products through basis vector {i} fail associativity"
                )
        ident = self.group.identity
        if not mat_eq(self.action[ident], identity(d, self.ring)):
            raise ValueError("the identity element must act trivially")
        if self.perm_action is not None:
            if len(self.perm_action) != n:
                raise ValueError("need one permutation per group element")
            for g in range(n):
                sigma = self.perm_action[g]
                m = self.action[g]
                for x in range(d):
                    for y in range(d):
                        expect = (
                            self.ring.one() if sigma[x] == y else self.ring.zero()
                        )
                        if m[y, x] != expect:
                            raise ValueError(
                                "permutation data disagrees with action matrices"
                            )
        gens = self.group.generators()
        for s in gens:
            ms = self.action[s]
            for g in range(n):
                if not mat_eq(
                    np.dot(ms, self.action[g]), self.action[self.group.mul[s][g]]
                ):
                    raise ValueError("action is not a group homomorphism")
        one = self.ring.one()
        for s in gens:
            ms = self.action[s]
            if not mat_eq(
                np.dot(ms, self.unit.reshape(d, 1)), self.unit.reshape(d, 1)
            ):
                raise ValueError("action does not preserve the unit")
            if self.perm_action is not None:
                sigma = self.perm_action[s]
                for i in range(d):
                    for j in range(d):
                        lhs = np.dot(ms, self.mult[i, j])
                        rhs = self.mult[sigma[i], sigma[j]]
                        if not mat_eq(lhs.reshape(d, 1), rhs.reshape(d, 1)):
                            raise ValueError("action is not multiplicative")
            else:
                cols = [ms[:, i] for i in range(d)]
                lcols = [self.left_matrix_of(c) for c in cols]
                for i in range(d):
                    for j in range(d):
                        lhs = np.dot(ms, self.mult[i, j])
                        rhs = np.dot(lcols[i], cols[j])
                        if not mat_eq(lhs.reshape(d, 1), rhs.reshape(d, 1)):
                            raise ValueError("action is not multiplicative")

    # -- constructions -----------------------------------------------------

    def change_of_basis(self, t: np.ndarray) -> "EquivariantAlgebra":
        """Same algebra written in the basis given by the columns of t."""
        d = self.dim
        t_inv = inverse(t)
        new_mult = np.empty((d, d, d), dtype=object)
        cols = [t[:, a].copy() for a in range(d)]
        lcols = [self.left_matrix_of(c) for c in cols]
        for a in range(d):
            for b in range(d):
                prod = np.dot(lcols[a], cols[b])
                new_mult[a, b, :] = np.dot(t_inv, prod)
        new_unit = np.dot(t_inv, self.unit)
        new_action = [np.dot(np.dot(t_inv, m), t) for m in self.action]
        return EquivariantAlgebra(
            self.group, self.ring, new_mult, new_unit, new_action, check=False
        )

    def __repr__(self):
        return f"EquivariantAlgebra(dim={self.dim}, group_order={self.group.n})"


def trivial_algebra(group: FiniteGroup, ring) -> EquivariantAlgebra:
    """The base ring itself, with the trivial action."""
    mult = np.empty((1, 1, 1), dtype=object)
    mult[0, 0, 0] = ring.one()
    unit = np.empty((1,), dtype=object)
    unit[0] = ring.one()
    action = [identity(1, ring) for _ in range(group.n)]
    return EquivariantAlgebra(
        group,
        ring,
        mult,
        unit,
        action,
        perm_action=[[0]] * group.n,
        check=False,
    )


def functions_on_gset(group: FiniteGroup, ring, act_table) -> EquivariantAlgebra:
    """Pointwise function algebra on a finite right G-set.

    act_table[x][g] is x acted on by g.  The action on functions is
    (g f)(x) = f(x g), so on indicator functions g sends the indicator of
    x to the indicator of x g^{-1}.
    """
    size = len(act_table)
    n = group.n
    for x in range(size):
        if len(act_table[x]) != n:
            raise ValueError("action table has the wrong shape")
        for g in range(n):
            y = act_table[x][g]
            if not isinstance(y, int) or not 0 <= y < size:
                raise ValueError("action table entry out of range")
        if act_table[x][group.identity] != x:
            raise ValueError("identity must act trivially")
    for x in range(size):
        for g in range(n):
            for h in range(n):
                if act_table[act_table[x][g]][h] != act_table[x][group.mul[g][h]]:
                    raise ValueError("table is not a right action")
    mult = np.empty((size, size, size), dtype=object)
    zero, one = ring.zero(), ring.one()
    for i in range(size):
        for j in range(size):
            for k in range(size):
                mult[i, j, k] = one if i == j == k else zero
    unit = np.empty((size,), dtype=object)
    for i in range(size):
        unit[i] = one
    perms = []
    action = []
    for g in range(n):
        ginv = group.inv[g]
        sigma = [act_table[x][ginv] for x in range(size)]
        m = zeros(size, size, ring)
        for x in range(size):
            m[sigma[x], x] = one
        perms.append(sigma)
        action.append(m)
    return EquivariantAlgebra(
        group, ring, mult, unit, action, perm_action=perms, check=False
    )


def functions_on_group(group: FiniteGroup, ring) -> EquivariantAlgebra:
    """Functions on the group itself under right translation: the torsor."""
    table = [[group.mul[x][g] for g in range(group.n)] for x in range(group.n)]
    return functions_on_gset(group, ring, table)


def product_algebra(
    a: EquivariantAlgebra, b: EquivariantAlgebra
) -> EquivariantAlgebra:
    """Direct product with the diagonal action."""
    if a.group != b.group or a.ring != b.ring:
        raise ValueError("factors must share the group and the ring")
    da, db = a.dim, b.dim
    d = da + db
    ring = a.ring
    mult = np.empty((d, d, d), dtype=object)
    zero = ring.zero()
    for i in range(d):
        for j in range(d):
            for k in range(d):
                mult[i, j, k] = zero
    mult[:da, :da, :da] = a.mult
    mult[da:, da:, da:] = b.mult
    unit = np.empty((d,), dtype=object)
    unit[:da] = a.unit
    unit[da:] = b.unit
    action = []
    for g in range(a.group.n):
        m = zeros(d, d, ring)
        m[:da, :da] = a.action[g]
        m[da:, da:] = b.action[g]
        action.append(m)
    perms = None
    if a.perm_action is not None and b.perm_action is not None:
        perms = [
            list(a.perm_action[g]) + [da + x for x in b.perm_action[g]]
            for g in range(a.group.n)
        ]
    return EquivariantAlgebra(
        a.group, ring, mult, unit, action, perm_action=perms, check=False
    )


# ---------------------------------------------------------------------------
# The functor direction: algebra -> per-irreducible section data


@dataclass
class FunctorData:
    """Monoidal data indexed by a fixed list of irreducibles.

    ranks[v] is the section rank at irreducible v.  unit lives in the
    rank space of the trivial entry.  products[(v, w, u)] is one block
    per canonical intertwiner into the tensor square: a ranks[u] by
    ranks[v] * ranks[w] matrix.  sections carries the concrete invariant
    bases when the data came from an algebra; it is not compared.
    """

    group: FiniteGroup
    field: object
    basis: IrrepSet
    ranks: tuple
    unit: np.ndarray
    products: dict
    sections: dict = dc_field(default=None, repr=False, compare=False)

    def __eq__(self, other):
        if not isinstance(other, FunctorData):
            return NotImplemented
        if (
            self.group != other.group
            or self.field != other.field
            or self.ranks != other.ranks
        ):
            return False
        if self.unit.shape != other.unit.shape or not mat_eq(
            self.unit.reshape(-1, 1), other.unit.reshape(-1, 1)
        ):
            return False
        if set(self.products) != set(other.products):
            return False
        for key, mats in self.products.items():
            mats2 = other.products[key]
            if len(mats) != len(mats2):
                return False
            for m1, m2 in zip(mats, mats2):
                if m1.shape != m2.shape:
                    return False
                if m1.size and not mat_eq(m1, m2):
                    return False
        return True

    def total_dim(self) -> int:
        return sum(
            rep.dim * r for rep, r in zip(self.basis.irreps, self.ranks)
        )


def _fixed_tensor_basis(algebra: EquivariantAlgebra, rep: Representation):
    """Canonical echelon basis of the invariants of (algebra tensor rep).

    Works by applying the averaging projector to every product basis
    vector and reducing; the permutation fast path writes one entry per
    group element instead of a full column.
    """
    da, dv = algebra.dim, rep.dim
    n = algebra.group.n
    field = algebra.ring
    inv_n = field.scalar(n).inverse()
    total = da * dv
    image = zeros(total, total, field)
    if algebra.perm_action is not None:
        for p in range(da):
            for q in range(dv):
                row = image[p * dv + q]
                for g in range(n):
                    tp = algebra.perm_action[g][p]
                    col = rep.matrices[g][:, q]
                    for qq in range(dv):
                        if col[qq]:
                            row[tp * dv + qq] = row[tp * dv + qq] + col[qq]
        image = image * inv_n
    else:
        for p in range(da):
            for q in range(dv):
                row = image[p * dv + q]
                for g in range(n):
                    acol = algebra.action[g][:, p]
                    vcol = rep.matrices[g][:, q]
                    for pp in range(da):
                        if acol[pp]:
                            base = pp * dv
                            for qq in range(dv):
                                if vcol[qq]:
                                    row[base + qq] = row[base + qq] + acol[pp] * vcol[qq]
        image = image * inv_n
    rows = row_space_basis(image)
    return rows, _pivots(rows)


def section_ranks(algebra: EquivariantAlgebra, basis: IrrepSet) -> tuple:
    """Invariant section rank at each irreducible, cheapest route."""
    _require_functor_setting(algebra, basis)
    out = []
    for rep in basis:
        rows, _ = _fixed_tensor_basis(algebra, rep)
        out.append(rows.shape[0])
    return tuple(out)


def _require_functor_setting(algebra: EquivariantAlgebra, basis: IrrepSet):
    if getattr(algebra.ring, "kind", None) == "poly_ring":
        raise ValueError("functor directions need a field, not k[t]")
    if algebra.group != basis.group:
        raise ValueError("algebra and irreducible list disagree on the group")
    if algebra.ring != basis.field:
        raise ValueError("algebra and irreducible list disagree on the field")
    p = algebra.ring.characteristic
    if p and algebra.group.n % p == 0:
        raise NonInvertibleOrder(
            f"group order {algebra.group.n} is not invertible in characteristic {p}"
        )


def algebra_to_functor(algebra: EquivariantAlgebra, basis: IrrepSet) -> FunctorData:
    """Invariant sections of the algebra against each irreducible.

    Ranks come with canonical echelon section bases; the product blocks
    record, for every pair of irreducibles and every intertwiner channel
    into their tensor product, how section products decompose.
    """
    _require_functor_setting(algebra, basis)
    field = algebra.ring
    da = algebra.dim
    sections = {}
    for idx, rep in enumerate(basis):
        sections[idx] = _fixed_tensor_basis(algebra, rep)
    ranks = tuple(sections[i][0].shape[0] for i in range(len(basis)))
    triv_rows, triv_pivots = sections[0]
    unit = coords_in_rref_basis(triv_rows, triv_pivots, algebra.unit)
    products = {}
    for i, vrep in enumerate(basis):
        dv = vrep.dim
        rows_v = sections[i][0]
        xs = [rows_v[a].reshape(da, dv) for a in range(ranks[i])]
        # left multiplication by each column of each section, cached
        lx = [
            [algebra.left_matrix_of(x[:, q]) for q in range(dv)] for x in xs
        ]
        for j, wrep in enumerate(basis):
            dw = wrep.dim
            rows_w = sections[j][0]
            ys = [rows_w[b].reshape(da, dw) for b in range(ranks[j])]
            prods = {}
            for a in range(ranks[i]):
                for b in range(ranks[j]):
                    z = np.empty((da, dv * dw), dtype=object)
                    for q in range(dv):
                        block = np.dot(lx[a][q], ys[b])
                        for qq in range(dw):
                            z[:, q * dw + qq] = block[:, qq]
                    prods[(a, b)] = z
            for u in range(len(basis)):
                intertwiners = basis.hom_into_tensor(u, i, j)
                if not intertwiners:
                    continue
                du = basis.irreps[u].dim
                hom_dim = len(intertwiners)
                duals = _dual_intertwiners(basis, u, i, j)
                # each composition is a scalar matrix, read off corner (0, 0)
                pairing = zeros(hom_dim, hom_dim, field)
                for aa in range(hom_dim):
                    for bb in range(hom_dim):
                        comp = np.dot(duals[aa], intertwiners[bb])
                        pairing[aa, bb] = comp[0, 0]
                pair_inv = inverse(pairing)
                rows_u, pivots_u = sections[u]
                mats = [
                    zeros(ranks[u], ranks[i] * ranks[j], field)
                    for _ in range(hom_dim)
                ]
                for (a, b), z in prods.items():
                    applied = [
                        np.dot(z, duals[aa].T).reshape(da * du)
                        for aa in range(hom_dim)
                    ]
                    for s_idx in range(hom_dim):
                        zeta = zero_vector(da * du, field)
                        for aa in range(hom_dim):
                            c = pair_inv[s_idx, aa]
                            if c:
                                zeta = zeta + c * applied[aa]
                        coords = coords_in_rref_basis(rows_u, pivots_u, zeta)
                        mats[s_idx][:, a * ranks[j] + b] = coords
                products[(i, j, u)] = mats
    return FunctorData(
        group=algebra.group,
        field=field,
        basis=basis,
        ranks=ranks,
        unit=unit,
        products=products,
        sections=sections,
    )


def _dual_intertwiners(basis: IrrepSet, u: int, i: int, j: int):
    """Maps from the tensor product onto irreducible u, canonical order."""
    from .reps import hom_g_basis

    key = ("dual", u, i, j)
    cache = basis._hom_cache
    if key not in cache:
        tensor = basis.irreps[i].tensor(basis.irreps[j])
        cache[key] = hom_g_basis(tensor, basis.irreps[u])
    return cache[key]


# ---------------------------------------------------------------------------
# The algebra direction: section data -> algebra on dual isotypic blocks


def functor_to_algebra(data: FunctorData) -> EquivariantAlgebra:
    """Build the algebra carried by the section data and validate it.

    The underlying space stacks, per irreducible, the dual space tensor
    the rank space.  Invalid data surfaces as NotAssociative,
    NotCommutative or NoUnit from the validation pass.
    """
    basis = data.basis
    field = data.field
    group = data.group
    dims = [rep.dim for rep in basis]
    ranks = list(data.ranks)
    offsets = []
    total = 0
    for dv, r in zip(dims, ranks):
        offsets.append(total)
        total += dv * r
    if ranks[0] != data.unit.shape[0]:
        raise ValueError("unit length disagrees with the trivial rank")
    mult = np.empty((total, total, total), dtype=object)
    zero = field.zero()
    for i in range(total):
        for j in range(total):
            for k in range(total):
                mult[i, j, k] = zero
    for (i, j, u), mats in data.products.items():
        dv, dw, du = dims[i], dims[j], dims[u]
        rv, rw, ru = ranks[i], ranks[j], ranks[u]
        if rv == 0 or rw == 0 or ru == 0:
            continue
        intertwiners = basis.hom_into_tensor(u, i, j)
        for s_idx, s in enumerate(intertwiners):
            mu = mats[s_idx]
            for vi in range(dv):
                for wj in range(dw):
                    srow = s[vi * dw + wj]
                    for m in range(du):
                        coeff = srow[m]
                        if not coeff:
                            continue
                        for a in range(rv):
                            arow = offsets[i] + vi * rv + a
                            for b in range(rw):
                                brow = offsets[j] + wj * rw + b
                                target = mu[:, a * rw + b]
                                for c in range(ru):
                                    if target[c]:
                                        k = offsets[u] + m * ru + c
                                        mult[arow, brow, k] = (
                                            mult[arow, brow, k]
                                            + coeff * target[c]
                                        )
    unit = zero_vector(total, field)
    for c in range(ranks[0]):
        unit[offsets[0] + c] = data.unit[c]
    duals = [rep.dual() for rep in basis]
    action = []
    for g in range(group.n):
        m = zeros(total, total, field)
        for v, (dv, r) in enumerate(zip(dims, ranks)):
            if r == 0:
                continue
            block = duals[v].matrices[g]
            off = offsets[v]
            for a in range(dv):
                for b in range(dv):
                    coeff = block[a, b]
                    if coeff:
                        for x in range(r):
                            m[off + a * r + x, off + b * r + x] = coeff
        action.append(m)
    return EquivariantAlgebra(group, field, mult, unit, action, check=True)


def roundtrip_matrix(
    algebra: EquivariantAlgebra, basis: IrrepSet, data: FunctorData = None
) -> np.ndarray:
    """Canonical isomorphism from the rebuilt algebra back onto the input.

    Column (v, i, a) holds section a of irreducible v evaluated at
    coordinate i; the result is a square matrix over the base field
    mapping the block algebra onto the original one.
    """
    if data is None:
        data = algebra_to_functor(algebra, basis)
    if data.sections is None:
        raise ValueError("need section bases; pass data produced from the algebra")
    da = algebra.dim
    total = data.total_dim()
    if total != da:
        raise ArithmeticError(
            f"section dimensions sum to {total}, algebra has dimension {da}"
        )
    out = zeros(da, total, algebra.ring)
    col = 0
    for v, rep in enumerate(basis):
        dv = rep.dim
        rows = data.sections[v][0]
        r = data.ranks[v]
        mats = [rows[a].reshape(da, dv) for a in range(r)]
        for i in range(dv):
            for a in range(r):
                out[:, col] = mats[a][:, i]
                col += 1
    return out


def verify_roundtrip(algebra: EquivariantAlgebra, basis: IrrepSet) -> dict:
    """Exact checks that the two directions invert each other.

    Returns a report of booleans; every entry must be True for a valid
    pair.  Also confirms that pushing the rebuilt algebra through the
    functor again reproduces the section data bit for bit.
    """
    data = algebra_to_functor(algebra, basis)
    rebuilt = functor_to_algebra(data)
    phi = roundtrip_matrix(algebra, basis, data)
    d = algebra.dim
    report = {}
    try:
        inverse(phi)
        report["invertible"] = True
    except ArithmeticError:
        report["invertible"] = False
        return report
    report["unit"] = mat_eq(
        np.dot(phi, rebuilt.unit.reshape(d, 1)), algebra.unit.reshape(d, 1)
    )
    ok = True
    for g in algebra.group.generators():
        lhs = np.dot(algebra.action[g], phi)
        rhs = np.dot(phi, rebuilt.action[g])
        if not mat_eq(lhs, rhs):
            ok = False
            break
    report["equivariant"] = ok
    ok = True
    cols = [phi[:, i].copy() for i in range(d)]
    lcols = [algebra.left_matrix_of(c) for c in cols]
    for i in range(d):
        for j in range(d):
            expect = np.dot(lcols[i], cols[j])
            got = np.dot(phi, rebuilt.mult[i, j])
            if not mat_eq(expect.reshape(d, 1), got.reshape(d, 1)):
                ok = False
                break
        if not ok:
            break
    report["multiplicative"] = ok
    report["functor_side_exact"] = algebra_to_functor(rebuilt, basis) == data
    report["ok"] = all(report.values())
    return report


# ---------------------------------------------------------------------------
# Predicates


def is_cover(algebra: EquivariantAlgebra, basis: IrrepSet) -> bool:
    """Section rank equals dimension at every irreducible.

    The irreducible list must pass its own completeness validation
    first; NotGoodSet propagates if it does not.
    """
    basis.validate_good()
    ranks = section_ranks(algebra, basis)
    return all(r == rep.dim for r, rep in zip(ranks, basis))


def invariant_vectors(algebra: EquivariantAlgebra) -> np.ndarray:
    """Echelon basis of the fixed vectors, valid in any characteristic."""
    d = algebra.dim
    gens = algebra.group.generators()
    if not gens:
        return row_space_basis(identity(d, algebra.ring))
    blocks = []
    for s in gens:
        blocks.append(algebra.action[s] - identity(d, algebra.ring))
    return kernel(np.vstack(blocks))


def is_torsor(algebra: EquivariantAlgebra) -> bool:
    """Free transitive shape: dimension matches the group order, the
    trace form is nondegenerate, and the only invariants are multiples
    of the unit.  No characteristic restriction."""
    if getattr(algebra.ring, "kind", None) == "poly_ring":
        raise ValueError("torsor test expects an algebra over a field")
    if algebra.dim != algebra.group.n:
        return False
    if rank(algebra.trace_gram()) != algebra.dim:
        return False
    fixed = invariant_vectors(algebra)
    if fixed.shape[0] != 1:
        return False
    return any(bool(c) for c in algebra.unit)


# ---------------------------------------------------------------------------
# Component decomposition


@dataclass
class ComponentDecomposition:
    """Primitive idempotents with the induced group combinatorics."""

    idempotents: list
    dims: list
    action: list  # per group element, the permutation of idempotent indices
    orbits: list
    stabilizers: list

    def component_count(self) -> int:
        return len(self.idempotents)


def _scalar_key(value):
    return value.sort_key()


def _vector_key(vec):
    lead = next((i for i in range(len(vec)) if vec[i]), len(vec))
    return (lead, tuple(_scalar_key(c) for c in vec))


def _refine_to_lines(field, mult, label="algebra"):
    """Split a commutative semisimple split algebra into its lines.

    mult is the structure tensor of an algebra expected to be a finite
    product of copies of the base field.  Returns the one-dimensional
    component subspaces as vectors; an irreducible minimal polynomial
    factor of degree above one aborts with NonSplitAlgebra carrying that
    factor as the witness.
    """
    d = mult.shape[0]
    components = [identity(d, field)]  # row bases
    for x in range(d):
        lx = mult[x].T
        refined = []
        for rows in components:
            if rows.shape[0] == 1:
                refined.append(rows)
                continue
            piv = _pivots(rows)
            op = restrict_operator(rows, piv, lx)
            minpoly = _operator_min_poly(field, op)
            _, factors = factor_poly(minpoly)
            for fac, multiplicity in factors:
                if fac.degree > 1:
                    raise NonSplitAlgebra(
                        f"{label} has a residue extension cut out by a degree "
                        f"{fac.degree} factor",
                        witness=fac,
                    )
                if multiplicity != 1:
                    raise ArithmeticError(
                        "repeated factor inside a supposedly semisimple part"
                    )
                lam = -fac.coeffs[0]
                shifted = op - lam * identity(rows.shape[0], field)
                ker = kernel(shifted)
                # back to ambient coordinates
                piece = np.dot(ker, rows)
                refined.append(row_space_basis(piece))
        components = refined
    for rows in components:
        if rows.shape[0] != 1:
            raise ArithmeticError("refinement failed to reach lines")
    return [rows[0] for rows in components]


def _operator_min_poly(field, op):
    """Minimal polynomial of a square matrix, monic."""
    d = op.shape[0]
    powers = [identity(d, field)]
    while True:
        powers.append(np.dot(powers[-1], op))
        k = len(powers) - 1
        stacked = zeros(d * d, k, field)
        for idx in range(k):
            stacked[:, idx] = powers[idx].reshape(d * d)
        target = powers[k].reshape(d * d)
        sol = solve(stacked, target)
        if sol is not None:
            coeffs = [-sol[i] for i in range(k)] + [field.one()]
            return Poly(field, coeffs)
        if k > d:
            raise ArithmeticError("minimal polynomial search ran away")


def component_decompose(algebra: EquivariantAlgebra) -> ComponentDecomposition:
    """Split off the connected components and how the group permutes them.

    Requires characteristic zero or characteristic larger than the
    algebra dimension, so that the radical of the trace form is exactly
    the nilradical; outside that range HypothesisUnmet is raised.  The
    semisimple quotient must split into base field lines, else
    NonSplitAlgebra reports a witness polynomial.
    """
    field = algebra.ring
    if getattr(field, "kind", None) == "poly_ring":
        raise ValueError("component decomposition expects an algebra over a field")
    d = algebra.dim
    p = field.characteristic
    if p and p <= d:
        raise HypothesisUnmet(
            f"characteristic {p} is not zero and not above the dimension {d}",
            hypothesis="char k = 0 or char k > dim",
        )
    gram = algebra.trace_gram()
    rad_rows = kernel(gram)
    nil_dim = rad_rows.shape[0]
    q_dim = d - nil_dim
    # complement spanned by the standard vectors away from radical pivots
    rad_pivots = set(_pivots(rad_rows))
    comp_idx = [i for i in range(d) if i not in rad_pivots]
    assert len(comp_idx) == q_dim
    seam = zeros(d, d, field)
    for r in range(nil_dim):
        seam[:, r] = rad_rows[r]
    for c, idx in enumerate(comp_idx):
        seam[idx, nil_dim + c] = field.one()
    seam_inv = inverse(seam)

    def project(vec):
        return np.dot(seam_inv, vec)[nil_dim:]

    qmult = np.empty((q_dim, q_dim, q_dim), dtype=object)
    basis_vecs = []
    for idx in comp_idx:
        v = zero_vector(d, field)
        v[idx] = field.one()
        basis_vecs.append(v)
    lefts = [algebra.left_matrix_of(v) for v in basis_vecs]
    for i in range(q_dim):
        for j in range(q_dim):
            qmult[i, j, :] = project(np.dot(lefts[i], basis_vecs[j]))
    lines = _refine_to_lines(field, qmult)
    idempotents = []
    for line in lines:
        # normalize the line against its own square, then lift
        amb = zero_vector(d, field)
        for c, idx in enumerate(comp_idx):
            amb[idx] = line[c]
        sq = project(algebra.multiply(amb, amb))
        ratio = None
        for c in range(q_dim):
            if line[c]:
                ratio = sq[c] / line[c]
                break
        if not ratio:
            raise ArithmeticError("component line squared to zero")
        e = amb * ratio.inverse()
        # lifting iteration: stable once the square returns the element
        for _ in range(2 * d + 4):
            esq = algebra.multiply(e, e)
            if mat_eq(esq.reshape(d, 1), e.reshape(d, 1)):
                break
            ecube = algebra.multiply(esq, e)
            e = (esq * field.scalar(3)) - (ecube * field.scalar(2))
        else:
            raise ArithmeticError("idempotent lifting did not converge")
        idempotents.append(e)
    idempotents.sort(key=_vector_key)
    dims = [rank(algebra.left_matrix_of(e)) for e in idempotents]
    perms = []
    for g in range(algebra.group.n):
        row = []
        for e in idempotents:
            moved = algebra.act(g, e)
            found = None
            for k, other in enumerate(idempotents):
                if mat_eq(moved.reshape(d, 1), other.reshape(d, 1)):
                    found = k
                    break
            if found is None:
                raise ArithmeticError("action does not permute the idempotents")
            row.append(found)
        perms.append(row)
    seen = set()
    orbits = []
    for start in range(len(idempotents)):
        if start in seen:
            continue
        orbit = sorted({perms[g][start] for g in range(algebra.group.n)})
        seen.update(orbit)
        orbits.append(tuple(orbit))
    stabilizers = [
        tuple(g for g in range(algebra.group.n) if perms[g][k] == k)
        for k in range(len(idempotents))
    ]
    return ComponentDecomposition(
        idempotents=idempotents,
        dims=dims,
        action=perms,
        orbits=orbits,
        stabilizers=stabilizers,
    )


# ---------------------------------------------------------------------------
# Prime characteristic splitting, used for special fibers


def split_idempotents_mod_p(field, mult):
    """Primitive idempotents of a commutative algebra over a prime field.

    Valid in any characteristic p, without semisimplicity: the fixed
    space of the p-power map is linear over the prime field and has one
    dimension per connected component, and its own structure always
    splits into lines because every element satisfies X^p = X.
    """
    d = mult.shape[0]
    frob = zeros(d, d, field)
    p = field.characteristic
    lefts = [mult[i].T for i in range(d)]

    def power_p(vec):
        out = vec
        # repeated squaring on the exponent p
        bits = bin(p)[3:]
        for bit in bits:
            nxt = zero_vector(d, field)
            for i in range(d):
                if out[i]:
                    nxt = nxt + out[i] * np.dot(lefts[i], out)
            out = nxt
            if bit == "1":
                nxt = zero_vector(d, field)
                for i in range(d):
                    if out[i]:
                        nxt = nxt + out[i] * np.dot(lefts[i], vec)
                out = nxt
        return out

    for j in range(d):
        v = zero_vector(d, field)
        v[j] = field.one()
        frob[:, j] = power_p(v)
    fixed = kernel(frob - identity(d, field))
    # structure constants of the fixed subalgebra
    r = fixed.shape[0]
    piv = _pivots(fixed)
    smult = np.empty((r, r, r), dtype=object)
    for i in range(r):
        for j in range(r):
            prod = zero_vector(d, field)
            xi = fixed[i]
            for k in range(d):
                if xi[k]:
                    prod = prod + xi[k] * np.dot(lefts[k], fixed[j])
            smult[i, j, :] = coords_in_rref_basis(fixed, piv, prod)
    lines = _refine_to_lines(field, smult, label="fixed subalgebra")
    out = []
    for line in lines:
        amb = zero_vector(d, field)
        for c in range(r):
            if line[c]:
                amb = amb + line[c] * fixed[c]
        sq = zero_vector(d, field)
        for k in range(d):
            if amb[k]:
                sq = sq + amb[k] * np.dot(lefts[k], amb)
        ratio = None
        for k in range(d):
            if amb[k]:
                ratio = sq[k] / amb[k]
                break
        if not ratio:
            raise ArithmeticError("candidate line squared to zero")
        e = amb * ratio.inverse()
        out.append(e)
    out.sort(key=_vector_key)
    return out


# ---------------------------------------------------------------------------
# Rank functions


class RankFunction:
    """Integer weight per irreducible, extended additively to any module."""

    def __init__(self, basis: IrrepSet, values):
        values = tuple(int(v) for v in values)
        if len(values) != len(basis):
            raise ValueError("need one value per irreducible")
        self.basis = basis
        self.values = values

    @classmethod
    def from_functor(cls, data: FunctorData) -> "RankFunction":
        return cls(data.basis, data.ranks)

    def of_irreducible(self, i: int) -> int:
        return self.values[i]

    def of_rep(self, rep: Representation) -> int:
        total = 0
        for i in range(len(self.basis)):
            total += self.basis.multiplicity(rep, i) * self.values[i]
        return total

    def __eq__(self, other):
        return (
            isinstance(other, RankFunction)
            and self.basis is other.basis
            and self.values == other.values
        )

    def __repr__(self):
        return f"RankFunction{self.values}"
