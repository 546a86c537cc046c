"""Exact kernel for equivariant finite algebras over small fields.

Subpackage map: scalars (fields, polynomials, Smith forms), linalg (dense
exact matrices), groups (multiplication-table groups), reps (irreducibles
and induction), algebras (equivariant algebras and the rank functor),
induction (coset-model induced algebras), witnesses (rank obstruction
builders), ramification (covers over k[t] and tameness checks).
"""

__version__ = "0.1.0"
