"""Error taxonomy for the summary client."""


class ClientError(Exception):
    """Base class for everything this package raises on purpose."""


class ConfigError(ClientError):
    """A parameter is out of range or inconsistent."""


class InputError(ClientError):
    """The dialogue file is malformed."""


class ProtocolError(ClientError):
    """The endpoint broke the wire contract; retrying cannot help."""


class TransportError(ClientError):
    """The endpoint stayed unreachable or failing after all retries."""
