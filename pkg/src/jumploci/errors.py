"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(EngineError):
    """Operands live in tori of different dimensions, or shapes disagree."""


class ComponentBudgetExceeded(EngineError):
    """An inclusion-exclusion sum over coset components would be too large."""


class CapExceeded(EngineError):
    """A brute-force enumeration would exceed the configured point cap."""


class MissingStratification(EngineError):
    """A fiber-dimension stratification is required but absent or incomplete."""


class MissingPluriData(EngineError):
    """Plurigenus data was requested from a model that does not carry it."""


class UnknownName(EngineError):
    """No catalog entry with the requested name."""


class BadParams(EngineError):
    """Catalog parameters outside their documented range."""


class ModelFormatError(EngineError):
    """A model file does not conform to the schema."""
