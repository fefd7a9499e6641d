"""Exception types shared across rugscope modules."""


class RugscopeError(Exception):
    """Base class for all rugscope errors."""


class MalformedAddress(RugscopeError):
    """An address string is not a 0x-prefixed 40-digit hex identifier."""


class NonMonotonicPoolEvents(RugscopeError):
    """Events of one pool arrived with a decreasing (block, log_index) order key."""


class UnknownPoolReference(RugscopeError):
    """A pool event references a pool that is absent from the dataset."""


class MalformedData(RugscopeError):
    """Raw log data does not match the ABI layout of its event signature."""


class TransportError(RugscopeError):
    """A network request failed in a retryable way."""


class RateLimitedError(TransportError):
    """The remote endpoint rejected the request due to rate limiting."""


class InconsistentResponse(RugscopeError):
    """The API returned a structurally valid but semantically incomplete answer."""


class SchemaVersionMismatch(RugscopeError):
    """A dataset on disk uses a schema version this build does not understand."""


class CorruptLine(RugscopeError):
    """A dataset line failed to parse (strict mode only)."""

    def __init__(self, path: str, line_number: int, reason: str):
        super().__init__(f"{path}:{line_number}: {reason}")
        self.path = path
        self.line_number = line_number
        self.reason = reason


class InfeasibleSpec(RugscopeError):
    """A synthesizer plant spec asks for a structurally impossible instance."""


class ParseFailure(RugscopeError):
    """Contract source could not be parsed under the supported grammar subset."""


class InsufficientContracts(RugscopeError):
    """Fewer than two usable contract sources were available for a similarity average."""


class PoolNotInCluster(RugscopeError):
    """A pool's scammer roles are not all members of the supplied cluster."""
