"""Exception hierarchy shared by all modules."""


class ZMWError(Exception):
    """Base class for library errors."""


class DomainError(ZMWError, ValueError):
    """An argument lies outside the domain of an operation."""


class ModelError(ZMWError, ValueError):
    """A group model or central function violates one of its invariants."""


class CapabilityError(ZMWError):
    """The model lacks data an operation needs (e.g. no Cayley table)."""


class ResourceBoundError(ZMWError):
    """A configured size bound would be exceeded."""


class ContractError(ZMWError):
    """A plug-in returned output that breaks its contract."""
