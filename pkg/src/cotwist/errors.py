"""Exception types shared across the package."""


class CotwistError(Exception):
    """Base class for all errors raised by this package."""


class ConductorMismatch(CotwistError):
    """Arithmetic between cyclotomic numbers with different conductors."""


class AlphabetMismatch(CotwistError):
    """Operation mixing polynomials over different generator alphabets."""


class ParseError(CotwistError):
    """Malformed scalar, relation or formula text."""


class ValidationError(CotwistError):
    """Input data violates a structural invariant (cocycle identity,
    action axioms, duality nondegeneracy, ...).  The message names the
    first failing check."""


class DegreeBoundExceeded(CotwistError):
    """A degree-truncated structure was asked about degrees above its bound."""


class FalsificationError(CotwistError):
    """An exhaustive verification search ran out of candidates.  This means
    a mathematical claim the tool is supposed to confirm failed to check out
    on the given input."""
