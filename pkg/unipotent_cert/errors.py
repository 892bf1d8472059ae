"""Exception hierarchy shared by every module."""


class UnipotentCertError(Exception):
    """Base class for all errors raised by unipotent_cert."""


class DivisionByZero(UnipotentCertError, ZeroDivisionError):
    """Division by an exact zero (or a series that is zero within its window)."""


class PrecisionExceeded(UnipotentCertError):
    """A requested coefficient lies outside what the inputs can support."""


class LiteralSyntaxError(UnipotentCertError, ValueError):
    """A literal expression does not match the grammar."""


class FieldMismatch(UnipotentCertError, ValueError):
    """Operands live over different base fields."""


class InvalidField(UnipotentCertError, ValueError):
    """Field parameters are not a prime / irreducible modulus."""


class EmptyPolynomial(UnipotentCertError, ValueError):
    """An operation needs a nonzero p-polynomial."""


class ArityMismatch(UnipotentCertError, ValueError):
    """Number of values or expressions does not match the number of variables."""


class NotSeparable(UnipotentCertError, ValueError):
    """The p-polynomial has no monomial of degree 1."""


class HeightMismatch(UnipotentCertError, ValueError):
    """A diagonal form was expected to have equal heights."""


class EmptyForm(UnipotentCertError, ValueError):
    """A diagonal form with no variables."""


class PrincipalPartNotCertified(UnipotentCertError):
    """The principal part could not be certified anisotropic."""


class TargetValuationOutOfRange(UnipotentCertError, ValueError):
    """The target's t-adic valuation is outside the certified window."""


class NoLinearTerm(UnipotentCertError):
    """No variable carries a height-0 term."""


class SearchSpaceTooLarge(UnipotentCertError):
    """A bounded scan would exceed the configured candidate cap."""


class InvalidGroupTable(UnipotentCertError, ValueError):
    """A multiplication table does not define a group."""


class NotPGroup(UnipotentCertError, ValueError):
    """The group order is not a power of p."""


class TrivialGroup(UnipotentCertError, ValueError):
    """The operation needs a nontrivial group."""


class RankOutOfRange(UnipotentCertError, ValueError):
    """Elementary abelian rank must be at least 1."""


class InvalidInput(UnipotentCertError, ValueError):
    """A JSON document does not follow the expected schema."""


class DichotomyViolation(UnipotentCertError, AssertionError):
    """Both split and not-split evidence were produced for one input."""
