"""Exact representations of finite groups.

A representation stores one invertible matrix per group element over one of
the exact coefficient fields.  Characters are computed by a modular
class-algebra method: eigenvectors of the class multiplication matrices are
found over a large auxiliary prime and the values are lifted to exact sums
of roots of unity, then verified against the orthogonality relations.
Irreducible subrepresentations are cut out of the regular representation by
isotypic projection followed by splitting off a single copy.

Field admissibility for a group G: the group order must be invertible and
the field must contain a primitive root of unity of order exp(G).  Over the
rationals that limits exp(G) to at most 2; cyclotomic fields Q(zeta_N) need
exp(G) | N; prime fields F_p need p coprime to |G| and exp(G) | p - 1.
"""

from __future__ import annotations

import random

import numpy as np

from .errors import (
    MissingRootOfUnity,
    NonInvertibleOrder,
    NotGoodSet,
    SplittingFailure,
)
from .groups import FiniteGroup
from .linalg import (
    identity,
    kernel,
    kron,
    mat_eq,
    restrict_operator,
    row_space_basis,
    scale,
    solve_many,
    zeros,
)
from .scalars import (
    QQ,
    Poly,
    Scalar,
    factor_poly,
    primitive_root_of_unity,
)
from .scalars import prime_field as _prime_field


def check_field_for_group(group: FiniteGroup, field) -> None:
    """Raise unless the field admits a full irreducible theory for the group."""
    e = group.exponent()
    if field.kind == "prime":
        if group.n % field.p == 0:
            raise NonInvertibleOrder(
                f"group order {group.n} is not invertible in F_{field.p}"
            )
        if (field.p - 1) % e:
            raise MissingRootOfUnity(
                f"F_{field.p} has no primitive root of unity of order {e}"
            )
    elif field.kind == "rational":
        if e > 2:
            raise MissingRootOfUnity(
                f"the rationals have no primitive root of unity of order {e}"
            )
    else:
        try:
            primitive_root_of_unity(field, e)
        except ValueError:
            raise MissingRootOfUnity(
                f"Q(zeta_{field.n}) has no primitive root of unity of order {e}"
            ) from None


def element_scan_order(group: FiniteGroup) -> list[int]:
    """Elements ordered by descending order, then ascending index.

    This is the canonical scan used whenever per-element data has to be
    compared or searched deterministically.
    """
    return sorted(range(group.n), key=lambda g: (-group.element_order(g), g))


class Representation:
    """A group homomorphism into invertible matrices, stored elementwise."""

    def __init__(self, group: FiniteGroup, field, matrices, check: bool = True):
        self.group = group
        self.field = field
        self.matrices = tuple(matrices)
        self.dim = int(self.matrices[0].shape[0]) if self.matrices else 0
        if check:
            self._validate()

    def _validate(self):
        g = self.group
        if len(self.matrices) != g.n:
            raise ValueError("need one matrix per group element")
        if not mat_eq(self.matrices[g.identity], identity(self.dim, self.field)):
            raise ValueError("identity element must act as the identity matrix")
        # homomorphism on generators x everything extends by induction
        for s in g.generators():
            ms = self.matrices[s]
            for h in range(g.n):
                if not mat_eq(
                    np.dot(ms, self.matrices[h]), self.matrices[g.mul[s][h]]
                ):
                    raise ValueError(f"matrices break the product at ({s},{h})")

    # -- constructors ------------------------------------------------------

    @classmethod
    def trivial(cls, group: FiniteGroup, field) -> "Representation":
        one = identity(1, field)
        return cls(group, field, [one.copy() for _ in range(group.n)], check=False)

    @classmethod
    def from_generators(cls, group: FiniteGroup, field, gen_matrices: dict):
        """Fill in all element matrices from generator matrices by word products."""
        mats: list = [None] * group.n
        mats[group.identity] = identity(
            next(iter(gen_matrices.values())).shape[0], field
        )
        frontier = [group.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s, ms in gen_matrices.items():
                    y = group.mul[s][x]
                    if mats[y] is None:
                        mats[y] = np.dot(ms, mats[x])
                        nxt.append(y)
            frontier = nxt
        if any(m is None for m in mats):
            raise ValueError("the given elements do not generate the group")
        return cls(group, field, mats, check=True)

    @classmethod
    def permutation(cls, group: FiniteGroup, field, action) -> "Representation":
        """Linearize a left action; action[g][x] = g.x on a finite set.

        The action axioms are checked on integers, which is much cheaper
        than validating the matrices.
        """
        n = len(action[0])
        ident = action[group.identity]
        if tuple(ident) != tuple(range(n)):
            raise ValueError("identity must act trivially")
        for s in group.generators():
            for h in range(group.n):
                composed = tuple(action[s][action[h][x]] for x in range(n))
                if composed != tuple(action[group.mul[s][h]]):
                    raise ValueError(f"not a left action at ({s},{h})")
        mats = []
        zero, one = field.zero(), field.one()
        for g in range(group.n):
            m = zeros(n, n, field)
            for x in range(n):
                m[action[g][x], x] = one
            mats.append(m)
        return cls(group, field, mats, check=False)

    @classmethod
    def regular(cls, group: FiniteGroup, field) -> "Representation":
        action = [tuple(group.mul[g][h] for h in range(group.n)) for g in range(group.n)]
        return cls.permutation(group, field, action)

    # -- structure ---------------------------------------------------------

    def matrix(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def character(self) -> tuple:
        cached = getattr(self, "_character", None)
        if cached is None:
            cached = tuple(
                sum((m[i, i] for i in range(self.dim)), self.field.zero())
                for m in self.matrices
            )
            self._character = cached
        return cached

    def dual(self) -> "Representation":
        g = self.group
        mats = [self.matrices[g.inv[h]].T.copy() for h in range(g.n)]
        return Representation(g, self.field, mats, check=False)

    def tensor(self, other: "Representation") -> "Representation":
        mats = [kron(a, b) for a, b in zip(self.matrices, other.matrices)]
        return Representation(self.group, self.field, mats, check=False)

    def direct_sum(self, other: "Representation") -> "Representation":
        da, db = self.dim, other.dim
        mats = []
        for a, b in zip(self.matrices, other.matrices):
            m = zeros(da + db, da + db, self.field)
            m[:da, :da] = a
            m[da:, da:] = b
            mats.append(m)
        return Representation(self.group, self.field, mats, check=False)

    def restrict(self, subgroup: FiniteGroup, embed) -> "Representation":
        """Restriction along a subgroup re-indexing (from subgroup_as_group)."""
        mats = [self.matrices[embed[i]] for i in range(subgroup.n)]
        return Representation(subgroup, self.field, mats, check=False)

    def reynolds(self) -> np.ndarray:
        """The averaging projector onto the fixed subspace."""
        p = self.field.characteristic
        if p and self.group.n % p == 0:
            raise NonInvertibleOrder(
                f"group order {self.group.n} is not invertible in characteristic {p}"
            )
        acc = zeros(self.dim, self.dim, self.field)
        for m in self.matrices:
            acc = acc + m
        return scale(acc, self.field.scalar(self.group.n).inverse())

    def fixed_subspace(self) -> np.ndarray:
        """Canonical row basis of the invariant vectors."""
        p = self.reynolds()
        return row_space_basis(p.T)

    def __repr__(self):
        return f"Representation(dim={self.dim}, group_order={self.group.n})"


def character_inner(group: FiniteGroup, chi_a, chi_b) -> Scalar:
    """(1/|G|) sum over g of chi_a(g) chi_b(g^{-1}), the standard pairing."""
    field = chi_a[0].field
    total = field.zero()
    for g in range(group.n):
        total = total + chi_a[g] * chi_b[group.inv[g]]
    return total * field.scalar(group.n).inverse()


def hom_g_basis(rho: Representation, sigma: Representation) -> list[np.ndarray]:
    """Canonical basis of the intertwiners X with X rho(g) = sigma(g) X.

    Matrices are sigma.dim x rho.dim.  The basis comes from the reduced
    echelon kernel of the commutation system, so it is reproducible.
    """
    field = rho.field
    dr, ds = rho.dim, sigma.dim
    blocks = []
    for s in rho.group.generators():
        a = kron(identity(ds, field), rho.matrices[s].T)
        b = kron(sigma.matrices[s], identity(dr, field))
        blocks.append(a - b)
    if not blocks:
        # trivial group
        blocks.append(zeros(ds * dr, ds * dr, field))
    stacked = np.vstack(blocks)
    null = kernel(stacked)
    out = []
    for i in range(null.shape[0]):
        out.append(null[i].reshape(ds, dr))
    return out


def induce_rep(group: FiniteGroup, embed, rep: Representation) -> Representation:
    """Induce a subgroup representation up to the full group.

    embed maps the subgroup's own element indices to parent indices, as
    produced by subgroup_as_group.  The induced space carries one copy of
    the subgroup module per right coset; writing r g = h rbar against the
    chosen representatives, the block of g in coset row r is the matrix of
    h placed in column rbar.  Dimension is the index times rep.dim.
    """
    elems = tuple(embed)
    if rep.group.n != len(elems):
        raise ValueError("embed does not match the representation's group")
    local = {g: i for i, g in enumerate(elems)}
    reps_r = group.right_cosets(elems)
    lookup = group.coset_lookup(elems, reps_r)
    coset_index = {r: i for i, r in enumerate(reps_r)}
    d = rep.dim
    m = len(reps_r)
    field = rep.field
    mats = []
    for g in range(group.n):
        mat = zeros(m * d, m * d, field)
        for ci, r in enumerate(reps_r):
            h, rbar = lookup[group.mul[r][g]]
            cj = coset_index[rbar]
            mat[ci * d : (ci + 1) * d, cj * d : (cj + 1) * d] = rep.matrices[
                local[h]
            ]
        mats.append(mat)
    return Representation(group, field, mats)


def validate_good_set(group: FiniteGroup, field, reps) -> dict:
    """Report whether a list of representations can serve as a good set.

    Checks, in order: the first entry is trivial, every endomorphism
    algebra is one-dimensional, distinct entries admit no nonzero
    homomorphism, and the squared dimensions sum to the group order.
    Returns {"good": bool, "failures": [messages]} rather than raising,
    so a caller sees every reason at once.
    """
    failures = []
    reps = list(reps)
    if not reps:
        return {"good": False, "failures": ["empty list"]}
    for idx, rep in enumerate(reps):
        if rep.group != group or rep.field != field:
            failures.append(f"entry {idx} is over the wrong group or field")
    if failures:
        return {"good": False, "failures": failures}
    one = field.one()
    if any(v != one for v in reps[0].character()):
        failures.append("the first entry must be the trivial representation")
    for idx, rep in enumerate(reps):
        dim_end = len(hom_g_basis(rep, rep))
        if dim_end != 1:
            failures.append(
                f"entry {idx} has a {dim_end}-dimensional endomorphism algebra"
            )
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            dij = len(hom_g_basis(reps[i], reps[j]))
            dji = len(hom_g_basis(reps[j], reps[i]))
            if dij or dji:
                failures.append(
                    f"entries {i} and {j} admit a nonzero homomorphism"
                )
    total = sum(rep.dim * rep.dim for rep in reps)
    if total != group.n:
        failures.append(
            f"squared dimensions sum to {total}, not the group order {group.n}"
        )
    return {"good": not failures, "failures": failures}


def _pivots(rows: np.ndarray) -> list[int]:
    # first nonzero column of each row of an rref basis
    piv = []
    for i in range(rows.shape[0]):
        for j in range(rows.shape[1]):
            if rows[i, j]:
                piv.append(j)
                break
    return piv


def _minimal_polynomial(m: np.ndarray, field) -> Poly:
    """Monic minimal polynomial of a square matrix, by flattened powers."""
    k = m.shape[0]
    power = identity(k, field)
    flats = []
    while True:
        flats.append(power.reshape(-1))
        cols = np.empty((k * k, len(flats)), dtype=object)
        for j, f in enumerate(flats):
            cols[:, j] = f
        nxt = np.dot(power, m)
        target = nxt.reshape(-1, 1)
        sol = solve_many(cols, target)
        if sol is not None:
            coeffs = [-sol[i, 0] for i in range(len(flats))] + [field.one()]
            return Poly(field, coeffs)
        power = nxt
        if len(flats) > k * k:  # pragma: no cover
            raise ArithmeticError("minimal polynomial search did not terminate")


def _matrix_poly(p: Poly, m: np.ndarray, field) -> np.ndarray:
    k = m.shape[0]
    acc = zeros(k, k, field)
    for c in reversed(p.coeffs):
        acc = np.dot(acc, m) + scale(identity(k, field), c)
    return acc


# -- modular character table ----------------------------------------------


def _dixon_prime(order: int, exponent: int) -> int:
    p = exponent + 1
    while True:
        from .groups import _is_prime

        if p * p > 4 * order and _is_prime(p):
            return p
        p += exponent


def _class_matrices(group: FiniteGroup, classes, class_of, fp):
    """Multiplication matrices of the class sums over the auxiliary prime."""
    r = len(classes)
    sizes = [len(c) for c in classes]
    mats = []
    for i in range(r):
        counts = [[0] * r for _ in range(r)]
        for x in classes[i]:
            row = group.mul[x]
            for y in range(group.n):
                counts[class_of[row[y]]][class_of[y]] += 1
        m = zeros(r, r, fp)
        for k in range(r):
            for j in range(r):
                c, rem = divmod(counts[k][j], sizes[k])
                assert rem == 0
                m[k, j] = fp.scalar(c)
        mats.append(m)
    return mats


def _modular_characters(group: FiniteGroup):
    """Degrees and class values of all irreducible characters mod a big prime.

    Returns (classes, class_of, inv_class, p, rows) where each row is
    (degree:int, values: list of ints per class).
    """
    n = group.n
    classes = group.conjugacy_classes()
    r = len(classes)
    class_of = [0] * n
    for idx, c in enumerate(classes):
        for g in c:
            class_of[g] = idx
    inv_class = [class_of[group.inv[c[0]]] for c in classes]
    e = group.exponent()
    p = _dixon_prime(n, e)
    fp = _prime_field(p)
    mats = _class_matrices(group, classes, class_of, fp)

    # refine common eigenspaces; big classes first tends to split fastest
    spaces = [(identity(r, fp), list(range(r)))]
    order_hint = sorted(range(r), key=lambda i: (-len(classes[i]), i))
    for i in order_hint:
        if all(b.shape[0] == 1 for b, _ in spaces):
            break
        if len(classes[i]) == 1 and classes[i][0] == group.identity:
            continue
        refined = []
        for basis, piv in spaces:
            if basis.shape[0] == 1:
                refined.append((basis, piv))
                continue
            t = restrict_operator(basis, piv, mats[i])
            mp = _minimal_polynomial(t, fp)
            _, facs = factor_poly(mp)
            if len(facs) == 1 and facs[0][0].degree == 1 and facs[0][1] == 1:
                refined.append((basis, piv))
                continue
            for fac, _mult in facs:
                assert fac.degree == 1, "class algebra failed to split linearly"
                lam = -fac.coeffs[0]
                piece = kernel(t - scale(identity(t.shape[0], fp), lam))
                lifted = row_space_basis(np.dot(piece, basis))
                refined.append((lifted, _pivots(lifted)))
        spaces = refined
    assert all(b.shape[0] == 1 for b, _ in spaces), "eigenspace refinement stalled"

    sizes = [len(c) for c in classes]
    rows = []
    for basis, _piv in spaces:
        v = basis[0]
        t = next(j for j in range(r) if v[j])
        vt_inv = v[t].inverse()
        omega = []
        for i in range(r):
            image = np.dot(mats[i], v)
            omega.append(image[t] * vt_inv)
        denom = fp.zero()
        for i in range(r):
            denom = denom + omega[i] * omega[inv_class[i]] * fp.scalar(sizes[i]).inverse()
        d_sq = fp.scalar(n) * denom.inverse()
        d = next(
            s for s in range(1, p) if 2 * s < p and fp.scalar(s * s) == d_sq
        )
        values = []
        for i in range(r):
            values.append((d * omega[i].v * pow(sizes[i], -1, p)) % p)
        rows.append((d, values))
    assert sum(d * d for d, _ in rows) == n, "degrees do not sum to the group order"
    assert len(rows) == r
    return classes, class_of, inv_class, p, rows


def character_table(group: FiniteGroup, field):
    """All irreducible characters over the field, exactly.

    Returns (classes, class_of, rows) with rows = [(degree, values)] where
    values are Scalars indexed by class.  Rows are sorted with the trivial
    character first, then by degree and canonical value keys.
    """
    check_field_for_group(group, field)
    classes = group.conjugacy_classes()
    if group.n == 1:
        return classes, [0], [(1, (field.one(),))]
    classes, class_of, inv_class, p, modrows = _modular_characters(group)
    e = group.exponent()
    r = len(classes)
    zbar = primitive_root_of_unity(_prime_field(p), e).v
    zbar_inv = pow(zbar, p - 2, p)
    e_inv = pow(e, -1, p)
    zk = primitive_root_of_unity(field, e)
    zk_pows = [field.one()]
    for _ in range(e - 1):
        zk_pows.append(zk_pows[-1] * zk)
    # class index of each power of each class representative
    power_class = []
    for c in classes:
        g = c[0]
        idxs = []
        acc = group.identity
        for _ in range(e):
            idxs.append(class_of[acc])
            acc = group.mul[acc][g]
        power_class.append(idxs)

    rows = []
    for d, chibar in modrows:
        values = []
        for k in range(r):
            mults = []
            for j in range(e):
                s = 0
                zpow = pow(zbar_inv, j, p)
                acc = 1
                for l in range(e):
                    s += chibar[power_class[k][l]] * acc
                    acc = acc * zpow % p
                m = s * e_inv % p
                assert m <= d, "character multiplicity failed to lift"
                mults.append(m)
            assert sum(mults) == d, "root multiplicities do not sum to the degree"
            val = field.zero()
            for j, m in enumerate(mults):
                if m:
                    val = val + zk_pows[j] * m
            values.append(val)
        rows.append((d, tuple(values)))

    # exact first and second orthogonality guard against any lifting slip
    n_scalar = field.scalar(group.n)
    sizes = [len(c) for c in classes]
    for a, (da, va) in enumerate(rows):
        for b, (db, vb) in enumerate(rows):
            total = field.zero()
            for k in range(r):
                total = total + va[k] * vb[inv_class[k]] * sizes[k]
            expected = n_scalar if a == b else field.zero()
            if total != expected:
                raise ArithmeticError("character table failed orthogonality")

    scan = element_scan_order(group)

    def sort_key(row):
        d, values = row
        trivial = all(v == field.one() for v in values)
        value_key = tuple(values[class_of[g]].sort_key() for g in scan)
        return (0 if trivial else 1, d, value_key)

    rows.sort(key=sort_key)
    return classes, class_of, rows


# -- irreducible subrepresentations ---------------------------------------


def _left_matrix(group: FiniteGroup, field, g: int) -> np.ndarray:
    m = zeros(group.n, group.n, field)
    one = field.one()
    for b in range(group.n):
        m[group.mul[g][b], b] = one
    return m


def _right_matrix(group: FiniteGroup, field, g: int) -> np.ndarray:
    m = zeros(group.n, group.n, field)
    one = field.one()
    for b in range(group.n):
        m[group.mul[b][g], b] = one
    return m


def _isotypic_rows(group: FiniteGroup, field, class_of, degree, values) -> np.ndarray:
    """Canonical row basis of the isotypic block of the regular representation."""
    n = group.n
    p = zeros(n, n, field)
    coeff = field.scalar(degree) * field.scalar(n).inverse()
    for g in range(n):
        c = values[class_of[group.inv[g]]] * coeff
        if not c:
            continue
        row = group.mul[g]
        for b in range(n):
            p[row[b], b] = p[row[b], b] + c
    rows = row_space_basis(p.T)
    if rows.shape[0] != degree * degree:
        raise ArithmeticError("isotypic block has the wrong dimension")
    return rows


def _compression(op: np.ndarray, part: np.ndarray, complement: np.ndarray):
    """Compress an operator to a summand along a stored complement."""
    a = part.shape[0]
    stacked = np.vstack([part, complement])
    images = np.dot(op, part.T)
    coords = solve_many(stacked.T, images)
    assert coords is not None, "compression target is not a basis"
    return coords[:a, :]


def _split_single_copy(group, field, s_rows, degree):
    """Cut one irreducible copy out of an isotypic block.

    First pass: eigenspaces of right translations, which works whenever
    some group element acts on the dual copy with a multiplicity-one
    eigenvalue.  Fallback: compress right translations to the current
    summand and split along coprime factors of their minimal polynomials.
    A bounded seeded search keeps the fallback deterministic.
    """
    n = group.n
    piv = _pivots(s_rows)
    scan = [g for g in element_scan_order(group) if g != group.identity]
    right_ops = {}

    for sigma in scan:
        o = group.element_order(sigma)
        t = restrict_operator(s_rows, piv, _right_matrix(group, field, sigma))
        right_ops[sigma] = t
        root = primitive_root_of_unity(field, o)
        lam = field.one()
        for _j in range(o):
            ker = kernel(t - scale(identity(t.shape[0], field), lam))
            if ker.shape[0] == degree:
                return row_space_basis(np.dot(ker, s_rows))
            lam = lam * root

    # fallback: recursive summand splitting inside the block
    k = s_rows.shape[0]
    ops = [right_ops[g] for g in scan]

    def candidates():
        for t in ops:
            yield t
        rng = random.Random(20240501)
        for _ in range(200):
            acc = zeros(k, k, field)
            for t in ops:
                acc = acc + scale(t, field.scalar(rng.randrange(5)))
            yield acc

    def split(part, complement, copies):
        if copies == 1:
            return row_space_basis(np.dot(part, s_rows))
        for t in candidates():
            tc = _compression(t, part, complement)
            mp = _minimal_polynomial(tc, field)
            _, facs = factor_poly(mp)
            if len(facs) < 2:
                continue
            pieces = []
            for fac, mult in facs:
                op = _matrix_poly(fac ** mult, tc, field)
                ker = kernel(op)
                assert ker.shape[0] % degree == 0
                pieces.append(row_space_basis(np.dot(ker, part)))
            first = pieces[0]
            rest = [complement] + [np.asarray(pc) for pc in pieces[1:]]
            new_comp = np.vstack([m for m in rest if m.shape[0]])
            return split(first, new_comp, first.shape[0] // degree)
        raise SplittingFailure(
            f"could not separate a single {degree}-dimensional copy"
        )

    empty = np.empty((0, k), dtype=object)
    coords = split(identity(k, field), empty, k // degree)
    return coords


def irrep_from_character(group: FiniteGroup, field, class_of, degree, values):
    """Build one irreducible representation with the given character."""
    rows = _isotypic_rows(group, field, class_of, degree, values)
    if degree == 1:
        copy = rows
    else:
        copy = _split_single_copy(group, field, rows, degree)
    piv = _pivots(copy)
    gen_mats = {
        s: restrict_operator(copy, piv, _left_matrix(group, field, s))
        for s in group.generators()
    }
    if not gen_mats:
        rep = Representation.trivial(group, field)
    else:
        rep = Representation.from_generators(group, field, gen_mats)
    chi = rep.character()
    for g in range(group.n):
        if chi[g] != values[class_of[g]]:
            raise ArithmeticError("extracted copy has the wrong character")
    return rep


class IrrepSet:
    """A complete ordered list of pairwise distinct irreducibles.

    Index 0 is always the trivial representation; the rest are sorted by
    degree and then by canonical character keys, so two runs on the same
    group and field produce identical data.
    """

    def __init__(self, group: FiniteGroup, field, irreps, check: bool = True):
        self.group = group
        self.field = field
        self.irreps = tuple(irreps)
        if check:
            self.validate_good()
        self._hom_cache = {}
        self._dual_cache = {}

    @classmethod
    def compute(cls, group: FiniteGroup, field) -> "IrrepSet":
        classes, class_of, rows = character_table(group, field)
        irreps = [
            irrep_from_character(group, field, class_of, d, values)
            for d, values in rows
        ]
        return cls(group, field, irreps, check=True)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(rep.dim for rep in self.irreps)

    def characters(self) -> tuple:
        return tuple(rep.character() for rep in self.irreps)

    def __len__(self):
        return len(self.irreps)

    def __iter__(self):
        return iter(self.irreps)

    def validate_good(self):
        """Check completeness, irreducibility and distinctness.

        Raises NotGoodSet with an explanation when the list cannot serve
        as a full set of irreducibles over its field.
        """
        g, field = self.group, self.field
        try:
            check_field_for_group(g, field)
        except (MissingRootOfUnity, NonInvertibleOrder) as exc:
            raise NotGoodSet(str(exc)) from exc
        if not self.irreps:
            raise NotGoodSet("empty list")
        for rep in self.irreps:
            if rep.group is not g and rep.group != g:
                raise NotGoodSet("representation of a different group")
            if rep.field != field:
                raise NotGoodSet("representation over a different field")
        one = field.one()
        chars = [rep.character() for rep in self.irreps]
        triv = chars[0]
        if any(v != one for v in triv):
            raise NotGoodSet("the first entry must be the trivial representation")
        for i, chi in enumerate(chars):
            norm = character_inner(g, chi, chi)
            if norm != one:
                raise NotGoodSet(f"entry {i} is not irreducible")
        for i in range(len(chars)):
            for j in range(i + 1, len(chars)):
                if character_inner(g, chars[i], chars[j]) != field.zero():
                    raise NotGoodSet(f"entries {i} and {j} are isomorphic")
        if sum(rep.dim * rep.dim for rep in self.irreps) != g.n:
            raise NotGoodSet("the list does not exhaust the regular representation")

    def dual_index(self, i: int) -> int:
        """Index of the irreducible isomorphic to the dual of entry i."""
        if i in self._dual_cache:
            return self._dual_cache[i]
        g = self.group
        chi = self.irreps[i].character()
        dual_chi = tuple(chi[g.inv[h]] for h in range(g.n))
        for j, rep in enumerate(self.irreps):
            if rep.character() == dual_chi:
                self._dual_cache[i] = j
                return j
        raise NotGoodSet("dual character missing from the list")  # pragma: no cover

    def multiplicity(self, rep: Representation, i: int) -> int:
        """Multiplicity of irreducible i inside an arbitrary representation."""
        g = self.group
        val = character_inner(g, rep.character(), self.irreps[i].character())
        if val.field.kind == "prime":
            return int(val.v)
        if val.field.kind == "rational":
            q = val.v
        else:
            if any(c for c in val.v[1:]):
                raise ArithmeticError("multiplicity came out non-rational")
            q = val.v[0]
        assert q.denominator == 1
        return int(q.numerator)

    def hom_into_tensor(self, u: int, i: int, j: int) -> list[np.ndarray]:
        """Canonical intertwiner basis Hom(V_u, V_i tensor V_j), cached."""
        key = (u, i, j)
        if key not in self._hom_cache:
            tensor = self.irreps[i].tensor(self.irreps[j])
            self._hom_cache[key] = hom_g_basis(self.irreps[u], tensor)
        return self._hom_cache[key]


_IRREPS_CACHE: dict = {}


def irreps(group: FiniteGroup, field) -> IrrepSet:
    """The canonical full set of irreducibles, cached per group and field."""
    key = (group, field)
    if key not in _IRREPS_CACHE:
        _IRREPS_CACHE[key] = IrrepSet.compute(group, field)
    return _IRREPS_CACHE[key]
