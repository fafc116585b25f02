"""Exception hierarchy. Everything derives from ValueError so callers can
catch bad input generically."""


class ParkGraphError(ValueError):
    pass


class DomainError(ParkGraphError):
    """Input outside its domain: malformed graph, preference out of range."""


class ContractError(ParkGraphError):
    """A documented precondition does not hold (e.g. m != n, non-parking input)."""


class StructureError(ParkGraphError):
    """Invalid tree surgery request."""


class SizeError(ParkGraphError):
    """Requested size exceeds an exhaustive-enumeration cap or budget."""
