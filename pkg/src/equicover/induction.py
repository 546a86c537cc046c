"""Induced equivariant algebras along a subgroup, and their recognition.

The coset model: an algebra for a subgroup H becomes one for the whole
group on functions from the right coset representatives into the base,
with the action twisted by the recorded cocycle r g = h(r, g) rbar.
The other direction is a recognition criterion: a slice idempotent whose
translates are disjoint and covering identifies an algebra as induced,
with the isomorphism constructed and checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebras import (
    EquivariantAlgebra,
    invariant_vectors,
    is_torsor,
    section_ranks,
)
from .errors import NotTransitive
from .groups import FiniteGroup
from .linalg import (
    coords_in_rref_basis,
    inverse,
    mat_eq,
    restrict_operator,
    row_space_basis,
    zero_vector,
    zeros,
)
from .reps import IrrepSet, _pivots


def coset_action(group: FiniteGroup, elements):
    """Right action table of the group on the cosets of a subgroup."""
    elems = group.check_subgroup(elements)
    reps = group.right_cosets(elems)
    lookup = group.coset_lookup(elems, reps)
    index = {r: i for i, r in enumerate(reps)}
    return [
        [index[lookup[group.mul[r][g]][1]] for g in range(group.n)] for r in reps
    ]


@dataclass
class InducedModel:
    """An induced algebra together with the data used to build it.

    cocycle[(c, g)] = (h_local, c_next) records r_c g = h rbar with h in
    the subgroup's own indexing and rbar the representative at position
    c_next.  The identity coset sits at position 0, and evaluation there
    is a subgroup-equivariant projection onto the base.
    """

    group: FiniteGroup
    elements: tuple
    subgroup: FiniteGroup
    embed: tuple
    reps: tuple
    cocycle: dict
    base: EquivariantAlgebra
    algebra: EquivariantAlgebra

    def projection_at_identity(self) -> np.ndarray:
        db = self.base.dim
        out = zeros(db, self.algebra.dim, self.base.ring)
        for i in range(db):
            out[i, i] = self.base.ring.one()
        return out


def ind_algebra(group: FiniteGroup, elements, base: EquivariantAlgebra) -> InducedModel:
    """Induce a subgroup algebra up to the full group along right cosets.

    The base must be an algebra for the subgroup re-indexed as its own
    group (subgroup_as_group order).  Works over any coefficient ring;
    a permutation basis on the base survives induction.
    """
    sub, embed = group.subgroup_as_group(elements)
    if base.group != sub:
        raise ValueError("base algebra is not over the given subgroup")
    local = {g: i for i, g in enumerate(embed)}
    reps = tuple(group.right_cosets(embed))
    lookup = group.coset_lookup(embed, reps)
    index = {r: i for i, r in enumerate(reps)}
    assert reps[0] == group.identity
    cocycle = {}
    for c, r in enumerate(reps):
        for g in range(group.n):
            h, rbar = lookup[group.mul[r][g]]
            cocycle[(c, g)] = (local[h], index[rbar])
    db = base.dim
    m = len(reps)
    d = m * db
    ring = base.ring
    zero = ring.zero()
    mult = np.empty((d, d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            for k in range(d):
                mult[i, j, k] = zero
    for c in range(m):
        off = c * db
        mult[off : off + db, off : off + db, off : off + db] = base.mult
    unit = zero_vector(d, ring)
    for c in range(m):
        unit[c * db : (c + 1) * db] = base.unit
    action = []
    for g in range(group.n):
        mat = zeros(d, d, ring)
        for c in range(m):
            h, cn = cocycle[(c, g)]
            mat[c * db : (c + 1) * db, cn * db : (cn + 1) * db] = base.action[h]
        action.append(mat)
    perms = None
    if base.perm_action is not None:
        perms = []
        for g in range(group.n):
            sigma = [0] * d
            for c in range(m):
                h, cn = cocycle[(c, g)]
                sub_sigma = base.perm_action[h]
                for j in range(db):
                    sigma[cn * db + j] = c * db + sub_sigma[j]
            perms.append(sigma)
    algebra = EquivariantAlgebra(
        group, ring, mult, unit, action, perm_action=perms, check=False
    )
    return InducedModel(
        group=group,
        elements=tuple(embed),
        subgroup=sub,
        embed=tuple(embed),
        reps=reps,
        cocycle=cocycle,
        base=base,
        algebra=algebra,
    )


def omega_of_induced_check(
    group: FiniteGroup,
    elements,
    base: EquivariantAlgebra,
    g_basis: IrrepSet,
    h_basis: IrrepSet,
) -> dict:
    """Compare section ranks of an induced algebra with the predicted ones.

    Prediction: the rank at an irreducible of the big group is the rank
    of the base summed over the restriction's irreducible constituents.
    """
    model = ind_algebra(group, elements, base)
    sub, embed = model.subgroup, model.embed
    if h_basis.group != sub:
        raise ValueError("subgroup irreducible list is over the wrong group")
    got = section_ranks(model.algebra, g_basis)
    base_ranks = section_ranks(base, h_basis)
    expected = []
    for rep in g_basis:
        res = rep.restrict(sub, embed)
        total = 0
        for w in range(len(h_basis)):
            total += h_basis.multiplicity(res, w) * base_ranks[w]
        expected.append(total)
    expected = tuple(expected)
    return {
        "ranks": got,
        "expected": expected,
        "base_ranks": base_ranks,
        "ok": got == expected,
        "model": model,
    }


def _slice_algebra(algebra: EquivariantAlgebra, idem: np.ndarray, elements):
    """The corner cut out by an idempotent, as an algebra for the subgroup.

    Basis rows are the echelon basis of the image of multiplication by
    the idempotent; the subgroup must stabilize the idempotent.
    """
    sub, embed = algebra.group.subgroup_as_group(elements)
    le = algebra.left_matrix_of(idem)
    rows = row_space_basis(le.T)
    piv = _pivots(rows)
    r = rows.shape[0]
    ring = algebra.ring
    mult = np.empty((r, r, r), dtype=object)
    lifts = [rows[i] for i in range(r)]
    lefts = [algebra.left_matrix_of(v) for v in lifts]
    for i in range(r):
        for j in range(r):
            prod = np.dot(lefts[i], lifts[j])
            mult[i, j, :] = coords_in_rref_basis(rows, piv, prod)
    unit = coords_in_rref_basis(rows, piv, idem)
    action = [
        restrict_operator(rows, piv, algebra.action[embed[h]])
        for h in range(sub.n)
    ]
    slice_alg = EquivariantAlgebra(sub, ring, mult, unit, action, check=False)
    return slice_alg, rows, piv


def check_ind_criterion(
    algebra: EquivariantAlgebra, idem: np.ndarray, elements
) -> dict:
    """Recognize an algebra as induced from a slice idempotent.

    The idempotent must be nonzero, idempotent and stable under the
    subgroup (violations raise ValueError).  The criterion itself is the
    pair of conditions: translates from outside the subgroup meet the
    slice in zero, and translates over coset representatives sum to the
    unit.  When both hold the induced model on the slice is built and an
    explicit isomorphism is verified; the report carries it.
    """
    d = algebra.dim
    group = algebra.group
    elems = group.check_subgroup(elements)
    sq = algebra.multiply(idem, idem)
    if not mat_eq(sq.reshape(d, 1), idem.reshape(d, 1)):
        raise ValueError("slice vector is not idempotent")
    if not any(bool(c) for c in idem):
        raise ValueError("slice idempotent is zero")
    for h in elems:
        if not mat_eq(
            algebra.act(h, idem).reshape(d, 1), idem.reshape(d, 1)
        ):
            raise ValueError("subgroup does not stabilize the slice")
    elem_set = set(elems)
    disjoint = True
    for g in range(group.n):
        if g in elem_set:
            continue
        moved = algebra.act(g, idem)
        prod = algebra.multiply(idem, moved)
        if any(bool(c) for c in prod):
            disjoint = False
            break
    reps = group.right_cosets(elems)
    total = zero_vector(d, algebra.ring)
    for r in reps:
        # translates are indexed by left cosets, hence the inverses
        total = total + algebra.act(group.inv[r], idem)
    covers = mat_eq(total.reshape(d, 1), algebra.unit.reshape(d, 1))
    report = {
        "disjoint": disjoint,
        "covers": covers,
        "ok": disjoint and covers,
        "model": None,
        "iso": None,
        "verified": False,
    }
    if not report["ok"]:
        return report
    slice_alg, rows, piv = _slice_algebra(algebra, idem, elems)
    model = ind_algebra(group, elems, slice_alg)
    report["model"] = model
    db = slice_alg.dim
    phi = zeros(model.algebra.dim, d, algebra.ring)
    for j in range(d):
        basis_vec = zero_vector(d, algebra.ring)
        basis_vec[j] = algebra.ring.one()
        for c, r in enumerate(model.reps):
            moved = algebra.act(r, basis_vec)
            cut = algebra.multiply(idem, moved)
            phi[c * db : (c + 1) * db, j] = coords_in_rref_basis(rows, piv, cut)
    report["iso"] = phi
    report["verified"] = _verify_algebra_iso(algebra, model.algebra, phi)
    return report


def _verify_algebra_iso(
    src: EquivariantAlgebra, dst: EquivariantAlgebra, phi: np.ndarray
) -> bool:
    """phi maps src onto dst: invertible, unital, equivariant, multiplicative."""
    d = src.dim
    if dst.dim != d:
        return False
    try:
        inverse(phi)
    except ArithmeticError:
        return False
    if not mat_eq(
        np.dot(phi, src.unit.reshape(d, 1)), dst.unit.reshape(d, 1)
    ):
        return False
    for s in src.group.generators():
        if not mat_eq(np.dot(phi, src.action[s]), np.dot(dst.action[s], phi)):
            return False
    cols = [phi[:, i].copy() for i in range(d)]
    lcols = [dst.left_matrix_of(c) for c in cols]
    for i in range(d):
        for j in range(d):
            expect = np.dot(lcols[i], cols[j])
            got = np.dot(phi, src.mult[i, j])
            if not mat_eq(expect.reshape(d, 1), got.reshape(d, 1)):
                return False
    return True


def split_as_induced(algebra: EquivariantAlgebra) -> dict:
    """Write a transitive algebra as induced from a component stabilizer.

    Requires the invariants to be exactly the unit line (NotTransitive
    otherwise).  A connected algebra reports itself as such; else the
    canonical first component is the slice, its stabilizer the subgroup,
    and the recognition criterion supplies the verified isomorphism.
    """
    from .algebras import component_decompose

    fixed = invariant_vectors(algebra)
    if fixed.shape[0] != 1:
        raise NotTransitive(
            f"invariants have dimension {fixed.shape[0]}, expected the unit line"
        )
    dec = component_decompose(algebra)
    if dec.component_count() == 1:
        return {
            "connected": True,
            "subgroup": tuple(range(algebra.group.n)),
            "decomposition": dec,
            "criterion": None,
        }
    idem = dec.idempotents[0]
    stab = dec.stabilizers[0]
    crit = check_ind_criterion(algebra, idem, stab)
    return {
        "connected": False,
        "subgroup": stab,
        "idempotent": idem,
        "decomposition": dec,
        "criterion": crit,
    }


def torsor_transfer_check(
    group: FiniteGroup, elements, base: EquivariantAlgebra
) -> dict:
    """Induction preserves and reflects the torsor property."""
    model = ind_algebra(group, elements, base)
    before = is_torsor(base)
    after = is_torsor(model.algebra)
    return {"base": before, "induced": after, "agree": before == after}


def iterated_induction_check(
    group: FiniteGroup, h_elements, t_elements, c_algebra: EquivariantAlgebra
) -> dict:
    """Induction in two stages agrees with induction in one.

    Given nested subgroups T inside H, the algebra induced H-first and
    then up to the whole group is matched against the direct induction
    from T through an explicit reindexing-with-twist isomorphism, which
    is verified exactly.
    """
    h_elems = group.check_subgroup(h_elements)
    t_elems = group.check_subgroup(t_elements)
    if not set(t_elems) <= set(h_elems):
        raise ValueError("the inner subgroup must sit inside the outer one")
    h_sub, h_embed = group.subgroup_as_group(h_elems)
    h_local = {g: i for i, g in enumerate(h_embed)}
    t_in_h = tuple(sorted(h_local[t] for t in t_elems))
    inner = ind_algebra(h_sub, t_in_h, c_algebra)
    outer = ind_algebra(group, h_elems, inner.algebra)
    direct = ind_algebra(group, t_elems, c_algebra)
    a1, a2 = outer.algebra, direct.algebra
    if a1.dim != a2.dim:
        return {"ok": False, "reason": "dimension mismatch"}
    dc = c_algebra.dim
    db = inner.algebra.dim
    t_sub = direct.subgroup
    t_local = {g: i for i, g in enumerate(direct.embed)}
    phi = zeros(a2.dim, a1.dim, c_algebra.ring)
    lookup_outer = group.coset_lookup(h_elems, outer.reps)
    lookup_inner = h_sub.coset_lookup(t_in_h, inner.reps)
    outer_index = {r: i for i, r in enumerate(outer.reps)}
    inner_index = {r: i for i, r in enumerate(inner.reps)}
    # each direct representative factors as (element of T)(inner rep)(outer rep)
    for cu, u in enumerate(direct.reps):
        h_elt, r_out = lookup_outer[u]
        cH = outer_index[r_out]
        tau, r_in = lookup_inner[h_local[h_elt]]
        cT = inner_index[r_in]
        twist = c_algebra.action[t_local[h_embed[tau]]]
        col_off = cH * db + cT * dc
        row_off = cu * dc
        phi[row_off : row_off + dc, col_off : col_off + dc] = twist
    ok = _verify_algebra_iso(a1, a2, phi)
    return {
        "ok": ok,
        "two_stage": outer,
        "direct": direct,
        "iso": phi,
    }
