"""Client package for generating helper summary files over HTTP."""

from helper_client.client import (
    generate_summaries,
    read_dialogues,
    render_dialogue,
    stub_summarize,
)
from helper_client.errors import (
    ClientError,
    ConfigError,
    InputError,
    ProtocolError,
    TransportError,
)

__version__ = "0.1.0"

__all__ = [
    "ClientError",
    "ConfigError",
    "InputError",
    "ProtocolError",
    "TransportError",
    "generate_summaries",
    "read_dialogues",
    "render_dialogue",
    "stub_summarize",
]
