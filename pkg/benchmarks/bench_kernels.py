"""Compare the compiled and vectorized kernel backends on synthetic data.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--iterations N] [--seed S]

Imports both backend modules directly, so it works regardless of the
TURNGIST_BACKEND setting in the environment.
"""

import argparse
import time

import numpy as np

from turngist.kernels import _numba, _numpy


def time_calls(fn, calls, repeats):
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        for args in calls:
            fn(*args)
        best = min(best, time.perf_counter() - started)
    return best


def sequence_pairs(rng, count, low=40, high=200, vocab=60):
    pairs = []
    for _ in range(count):
        a = rng.integers(0, vocab, size=rng.integers(low, high)).astype(np.int64)
        b = rng.integers(0, vocab, size=rng.integers(low, high)).astype(np.int64)
        pairs.append((a, b))
    return pairs


def dialogue_arrays(rng, count, turns=12, tokens=12, vocab=80):
    out = []
    for _ in range(count):
        lens = rng.integers(max(tokens - 4, 1), tokens + 4, size=turns)
        offsets = np.zeros(turns + 1, dtype=np.int64)
        np.cumsum(lens, out=offsets[1:])
        ids = rng.integers(0, vocab, size=int(offsets[-1])).astype(np.int64)
        summary = rng.integers(0, vocab, size=tokens * 2).astype(np.int64)
        out.append((ids, offsets, summary, vocab))
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--iterations", type=int, default=300, help="calls per kernel")
    parser.add_argument("--repeats", type=int, default=3, help="timed passes, best kept")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    pairs = sequence_pairs(rng, args.iterations)
    dialogues = dialogue_arrays(rng, args.iterations)

    cases = [
        ("lcs_length", pairs),
        ("clipped_overlap", pairs),
        ("greedy_select", [(ids, off, summ, v, 3) for ids, off, summ, v in dialogues]),
        ("independent_scores", [(ids, off, v) for ids, off, _, v in dialogues]),
    ]

    # first calls trigger jit compilation; keep them out of the timings
    for name, calls in cases:
        getattr(_numba, name)(*calls[0])
        getattr(_numpy, name)(*calls[0])

    print(f"{'kernel':<20}{'numba ms':>12}{'numpy ms':>12}{'ratio':>8}")
    for name, calls in cases:
        t_nb = time_calls(getattr(_numba, name), calls, args.repeats) * 1000.0
        t_np = time_calls(getattr(_numpy, name), calls, args.repeats) * 1000.0
        ratio = t_np / t_nb if t_nb > 0 else float("inf")
        print(f"{name:<20}{t_nb:>12.2f}{t_np:>12.2f}{ratio:>7.1f}x")
    print(f"({args.iterations} calls per kernel, best of {args.repeats} passes)")


if __name__ == "__main__":
    main()
