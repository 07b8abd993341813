"""Exception hierarchy shared by all skewex modules.

Every error that carries a mathematical witness stores it on the instance so
callers (and the CLI report writer) can serialize it for replay.
"""


class SkewexError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(SkewexError):
    """Operands live in spaces of incompatible dimension."""


class NotAssociative(SkewexError):
    """A structure-constant tensor violates associativity.

    Carries the offending basis triple (i, j, k).
    """

    def __init__(self, i, j, k):
        super().__init__(f"associativity fails on basis triple ({i}, {j}, {k})")
        self.triple = (i, j, k)


class UnitFails(SkewexError):
    """The designated unit vector is not a two-sided identity."""

    def __init__(self, index):
        super().__init__(f"unit fails against basis element {index}")
        self.index = index


class NotAnIdeal(SkewexError):
    """A subspace handed to quotient() is not a two-sided ideal."""


class ImproperIdeal(SkewexError):
    """quotient() was asked to divide by the whole algebra."""


class NotDerivation(SkewexError):
    """A matrix fails the product rule; carries the basis-pair witness."""

    def __init__(self, pair):
        super().__init__(f"product rule fails on basis pair {pair}")
        self.pair = pair


class NotEndomorphism(SkewexError):
    """A matrix is not multiplicative (or not unital when required)."""

    def __init__(self, pair, reason="multiplicativity"):
        super().__init__(f"{reason} fails on basis pair {pair}")
        self.pair = pair


class NotAutomorphism(SkewexError):
    """An endomorphism is not invertible where invertibility is required."""


class NotInvertible(SkewexError):
    """An algebra element has no two-sided inverse."""


class NotLocallyNilpotent(SkewexError):
    """A map required to be nilpotent is not."""


class NotInKernelChain(SkewexError):
    """No power of the endomorphism kills the given element."""


class PhibarNotSurjective(SkewexError):
    """The induced map on the kernel-chain quotient is not surjective."""


class NotMonic(SkewexError):
    """A polynomial required to be monic is not."""


class AnnihilatorFails(SkewexError):
    """p does not annihilate the twisting map; carries a witness vector."""

    def __init__(self, basis_index, image):
        super().__init__(
            f"polynomial does not annihilate the map: basis vector {basis_index} "
            f"maps to {image}"
        )
        self.basis_index = basis_index
        self.image = image


class ConstantTermZero(SkewexError):
    """The invertible-witness construction needs p(0) != 0."""


class AssociativityFails(SkewexError):
    """The extension's consistency certificate failed.

    Raised when the rewrite-generated multiplication table is inconsistent,
    which happens exactly when the construction's precondition was bypassed.
    """

    def __init__(self, detail):
        super().__init__(f"extension consistency certificate failed: {detail}")
        self.detail = detail


class NotCommutative(SkewexError):
    """Idempotent enumeration only runs on commutative algebras."""


class NotIdempotent(SkewexError):
    """An element claimed to be idempotent satisfies e*e != e."""


class CapExceeded(SkewexError):
    """The idempotent count would exceed the configured cap."""


class ParseError(SkewexError):
    """A definition file is malformed; message carries the location."""


class ValidationError(SkewexError):
    """A parsed object failed its mathematical validation."""


class UnknownSuite(SkewexError):
    """A requested check-suite name is not in the registry."""
