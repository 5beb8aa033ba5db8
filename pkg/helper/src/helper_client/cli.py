"""helper-gen: batch a dialogue corpus through a summarization endpoint."""

import argparse
import logging
import sys

from helper_client.client import generate_summaries
from helper_client.errors import ConfigError, InputError, ProtocolError, TransportError


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="helper-gen",
        description="generate a helper summary NDJSON file from a dialogue NDJSON file",
    )
    parser.add_argument("--input", required=True, help="dialogue NDJSON file")
    parser.add_argument("--endpoint", required=True, help="summarization service URL")
    parser.add_argument("--output", required=True, help="summary NDJSON output path")
    parser.add_argument("--batch-size", type=int, default=16, dest="batch_size")
    parser.add_argument("--retries", type=int, default=3)
    parser.add_argument("--max-length", type=int, default=None, dest="max_length",
                        help="token budget passed through to the service")
    parser.add_argument("--timeout", type=float, default=30.0, help="per-request seconds")
    parser.add_argument("--backoff", type=float, default=0.5,
                        help="first retry delay in seconds, doubled per retry")
    args = parser.parse_args(argv)

    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        generate_summaries(
            args.input,
            args.endpoint,
            args.output,
            batch_size=args.batch_size,
            retries=args.retries,
            max_length=args.max_length,
            backoff_seconds=args.backoff,
            timeout_seconds=args.timeout,
        )
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InputError, ProtocolError, TransportError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
