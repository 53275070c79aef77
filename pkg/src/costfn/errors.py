class CostFnError(Exception):
    """Base class for every error raised by costfn."""


class StructureError(CostFnError):
    """Tables of the wrong shape, unknown element names, bad indices."""


class LoadError(CostFnError):
    """A text file could not be parsed into a monoid or recogniser."""


class OracleScopeError(CostFnError):
    """The brute-force oracles refuse inputs beyond their size limit."""


class CapacityError(CostFnError):
    """A construction would exceed the 64-element cap."""


class AlphabetMismatch(CostFnError):
    pass


class FormulaError(CostFnError):
    """Ill-formed formula: bad syntax, negated cardinality atom, free variables."""
