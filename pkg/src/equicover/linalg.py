"""Dense exact linear algebra over the scalar fields.

Matrices are numpy object arrays of Scalar entries.  Vectors are 1-D object
arrays and act as columns: an operator M sends v to M @ v.  Subspaces are
represented by matrices whose rows form a basis, and every basis returned by
this module is in reduced row echelon form, so equal subspaces always get
equal bases.  That canonicalization is what makes the higher level
reconstruction maps reproducible.
"""

from __future__ import annotations

import numpy as np

from .errors import DivisionByZero
from .scalars import Scalar


def as_matrix(rows, field=None) -> np.ndarray:
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    out = np.empty((nr, nc), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = x if isinstance(x, Scalar) else field.scalar(x)
    return out


def zeros(nr: int, nc: int, field) -> np.ndarray:
    out = np.empty((nr, nc), dtype=object)
    out[:] = field.zero()
    return out


def zero_vector(n: int, field) -> np.ndarray:
    out = np.empty(n, dtype=object)
    out[:] = field.zero()
    return out


def identity(n: int, field) -> np.ndarray:
    out = zeros(n, n, field)
    one = field.one()
    for i in range(n):
        out[i, i] = one
    return out


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.dot(a, b)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # np.kron keeps the object dtype, so entry products stay exact
    return np.kron(a, b)


def scale(a: np.ndarray, c: Scalar) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    flat_in, flat_out = a.reshape(-1), out.reshape(-1)
    for i, x in enumerate(flat_in):
        flat_out[i] = x * c
    return out


def mat_eq(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    for x, y in zip(a.reshape(-1), b.reshape(-1)):
        if x != y:
            return False
    return True


def is_zero_matrix(a: np.ndarray) -> bool:
    return not any(bool(x) for x in a.reshape(-1))


def rref(a: np.ndarray):
    """Reduced row echelon form.  Returns (r, pivots); r has the same shape."""
    nr, nc = a.shape
    m = [list(a[i]) for i in range(nr)]
    pivots = []
    r = 0
    for c in range(nc):
        sel = None
        for i in range(r, nr):
            if m[i][c]:
                sel = i
                break
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                mi, mr = m[i], m[r]
                m[i] = [x - f * y for x, y in zip(mi, mr)]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    out = np.empty((nr, nc), dtype=object)
    for i in range(nr):
        out[i] = m[i]
    return out, pivots


def row_space_basis(a: np.ndarray) -> np.ndarray:
    """Canonical (rref) basis of the row space, zero rows dropped."""
    r, pivots = rref(a)
    return r[: len(pivots)]


def rank(a: np.ndarray) -> int:
    return len(rref(a)[1])


def kernel(a: np.ndarray) -> np.ndarray:
    """Canonical basis (rows) of the right kernel {v : a v = 0}."""
    nr, nc = a.shape
    if nc == 0:
        return np.empty((0, 0), dtype=object)
    field = a[0, 0].field if nr else None
    if nr == 0:
        return identity(nc, field)
    field = a[0, 0].field
    r, pivots = rref(a)
    free = [c for c in range(nc) if c not in pivots]
    vecs = []
    zero, one = field.zero(), field.one()
    for j in free:
        v = [zero] * nc
        v[j] = one
        for i, p in enumerate(pivots):
            v[p] = -r[i, j]
        vecs.append(v)
    if not vecs:
        return np.empty((0, nc), dtype=object)
    basis = np.empty((len(vecs), nc), dtype=object)
    for i, v in enumerate(vecs):
        basis[i] = v
    return row_space_basis(basis)


def solve(a: np.ndarray, b: np.ndarray):
    """One exact solution of a x = b, or None if inconsistent."""
    x = solve_many(a, b.reshape(-1, 1))
    return None if x is None else x[:, 0]


def solve_many(a: np.ndarray, b: np.ndarray):
    """Solve a X = B column by column; None if any column is inconsistent."""
    nr, nc = a.shape
    k = b.shape[1]
    aug = np.empty((nr, nc + k), dtype=object)
    aug[:, :nc] = a
    aug[:, nc:] = b
    r, pivots = rref(aug)
    for p in pivots:
        if p >= nc:
            return None
    field = a[0, 0].field if nr and nc else b[0, 0].field
    x = zeros(nc, k, field) if nc else np.empty((0, k), dtype=object)
    for i, p in enumerate(pivots):
        x[p, :] = r[i, nc:]
    return x


def inverse(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if a.shape[1] != n:
        raise DivisionByZero("only square matrices invert")
    field = a[0, 0].field
    x = solve_many(a, identity(n, field))
    if x is None or rank(a) != n:
        raise DivisionByZero("matrix is singular")
    return x


def det(a: np.ndarray) -> Scalar:
    n = a.shape[0]
    field = a[0, 0].field if n else None
    if n == 0:
        raise DivisionByZero("empty determinant")
    m = [list(a[i]) for i in range(n)]
    acc = field.one()
    for c in range(n):
        sel = None
        for i in range(c, n):
            if m[i][c]:
                sel = i
                break
        if sel is None:
            return field.zero()
        if sel != c:
            m[c], m[sel] = m[sel], m[c]
            acc = -acc
        acc = acc * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return acc


def coords_in_rref_basis(basis: np.ndarray, pivots, vec: np.ndarray) -> np.ndarray:
    """Coordinates of vec in an rref basis; exact membership is asserted."""
    coords = np.empty(len(pivots), dtype=object)
    for i, p in enumerate(pivots):
        coords[i] = vec[p]
    if len(pivots):
        recon = np.dot(coords, basis)
    else:
        recon = zero_vector(len(vec), vec[0].field)
    for x, y in zip(recon, vec):
        if x != y:
            raise ArithmeticError("vector left the subspace it was claimed to lie in")
    return coords


def restrict_operator(basis: np.ndarray, pivots, op: np.ndarray) -> np.ndarray:
    """Matrix of an operator on the subspace spanned by an rref basis.

    The subspace must be invariant; violations surface as membership errors.
    """
    k = basis.shape[0]
    field = op[0, 0].field
    out = zeros(k, k, field)
    for i in range(k):
        image = np.dot(op, basis[i])
        out[:, i] = coords_in_rref_basis(basis, pivots, image)
    return out
