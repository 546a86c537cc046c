"""Error types shared across the package.

Every mathematical failure mode raises a subclass of ComputationError so
callers (and the command line front end) can tell preconditions apart from
bugs.  Cap violations get their own branch of the hierarchy because they map
to a distinct process exit code.
"""

from __future__ import annotations


class ComputationError(Exception):
    """Base class for every expected failure raised by this package."""


class CapExceeded(ComputationError):
    """A configurable size cap was exceeded (distinct exit code in the CLI)."""


class DegreeBoundExceeded(CapExceeded):
    """Polynomial degree above the factorization cap."""


class OrderCapExceeded(CapExceeded):
    """Group order above the configured cap."""


class DivisionByZero(ComputationError, ZeroDivisionError):
    """Division or inversion of a zero scalar or polynomial."""


class FieldMismatch(ComputationError):
    """Arithmetic between scalars of different fields or cyclotomic levels."""


class InvalidTable(ComputationError):
    """A multiplication table is not a group table."""


class NotSubgroup(ComputationError):
    """An element subset is not closed under the group operation."""


class NotNormal(ComputationError):
    """Quotient construction attempted along a non-normal subgroup."""


class AbelianInput(ComputationError):
    """A nonabelian group was required."""


class NonInvertibleOrder(ComputationError):
    """The group order is not invertible in the base field, so averaging fails."""


class SplittingFailure(ComputationError):
    """Irreducible decomposition of a representation did not complete."""


class NotGoodSet(ComputationError):
    """A proposed irreducible collection fails the pairwise Hom/End checks."""


class NotAssociative(ComputationError):
    """Reconstructed multiplication fails associativity."""


class NotCommutative(ComputationError):
    """Reconstructed multiplication fails commutativity."""


class NoUnit(ComputationError):
    """Reconstructed multiplication has no unit for the declared unit vector."""


class NonSplitAlgebra(ComputationError):
    """A component has a residue field larger than the base field.

    Carries the offending irreducible minimal polynomial so the caller can
    enlarge the base field and retry.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonSplitFiber(NonSplitAlgebra):
    """Special fiber fails to split over the residue field."""


class NotTransitive(ComputationError):
    """The action does not permute the components transitively."""


class MissingRootOfUnity(ComputationError):
    """The base field lacks the root of unity a construction needs."""


class HypothesisUnmet(ComputationError):
    """A criterion's standing hypothesis fails, so the verdict is undefined."""

    def __init__(self, message, hypothesis=None):
        super().__init__(message)
        self.hypothesis = hypothesis


class NotSquare(ComputationError):
    """A pairing matrix is not square, ruling out the cover hypothesis."""


class SchemaError(ComputationError):
    """Serialized input violates the published JSON schema."""
