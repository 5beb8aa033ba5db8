"""Command line interface.

Subcommands: build (corpus -> examples), rouge (summary evaluation), overlap
(contamination report), sweep (parameter sweep over build runs). Logs go to
stderr; stdout carries only reports and data. Exit codes: 0 success, 1
runtime/data failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from typing import Any

from .analysis import evaluate_summaries, overlap_report
from .errors import ConfigError, InputError
from .io import iter_ndjson, load_summary_map, parse_dialogue_obj, parse_example_obj, parse_summary_obj
from .metrics import join_turns
from .model import StrategyConfig
from .pipeline import compute_stats_report, run_pipeline

logger = logging.getLogger("turngist.cli")

_WORKERS_ENV = "DIONYSUS_WORKERS"

_BUILD_KEYS = {
    "input",
    "summaries",
    "output",
    "stats",
    "strategy",
    "selector",
    "compression_ratio",
    "copy_prob",
    "order",
    "max_tokens",
    "seed",
    "workers",
}


def _load_config_file(path: str | None, known: set[str]) -> dict[str, Any]:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    normalized = {str(key).replace("-", "_"): value for key, value in data.items()}
    unknown = sorted(set(normalized) - known)
    if unknown:
        raise ConfigError(f"{path}: unknown config key(s): {', '.join(unknown)}")
    return normalized


def _as_float(name: str, value: Any) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a number, got {value!r}") from None


def _as_int(name: str, value: Any) -> int:
    if isinstance(value, bool) or (not isinstance(value, int) and not str(value).lstrip("-").isdigit()):
        raise ConfigError(f"{name} must be an integer, got {value!r}")
    return int(value)


def _resolve_workers(flag_value: int | None, file_value: Any) -> int:
    if flag_value is not None:
        workers = flag_value
    elif file_value is not None:
        workers = _as_int("workers", file_value)
    else:
        env = os.environ.get(_WORKERS_ENV)
        if env is not None and env.strip():
            try:
                workers = int(env)
            except ValueError:
                raise ConfigError(f"{_WORKERS_ENV} must be a positive integer, got {env!r}") from None
        else:
            workers = os.cpu_count() or 1
    if workers < 1:
        raise ConfigError(f"workers must be >= 1, got {workers}")
    return workers


def _build_config(args: argparse.Namespace, file_cfg: dict[str, Any]) -> StrategyConfig:
    def pick(name: str, default: Any) -> Any:
        value = getattr(args, name)
        if value is not None:
            return value
        return file_cfg.get(name, default)

    return StrategyConfig.from_dict(
        {
            "strategy": pick("strategy", "better-rouge"),
            "selector": pick("selector", "gsg-plus"),
            "compression_ratio": _as_float("compression_ratio", pick("compression_ratio", 0.15)),
            "copy_probability": _as_float("copy_prob", pick("copy_prob", 0.15)),
            "principal_order": pick("order", "dialogue"),
            "max_tokens": _as_int("max_tokens", pick("max_tokens", 512)),
            "global_seed": _as_int("seed", pick("seed", 0)),
        }
    )


def _require_path(name: str, flag_value: str | None, file_cfg: dict[str, Any]) -> str:
    value = flag_value if flag_value is not None else file_cfg.get(name)
    if not value:
        raise ConfigError(f"missing required --{name.replace('_', '-')}")
    return str(value)


def cmd_build(args: argparse.Namespace) -> int:
    file_cfg = _load_config_file(args.config, _BUILD_KEYS)
    config = _build_config(args, file_cfg)
    dialogues = _require_path("input", args.input, file_cfg)
    output = _require_path("output", args.output, file_cfg)
    summaries = args.summaries if args.summaries is not None else file_cfg.get("summaries")
    stats_path = args.stats if args.stats is not None else file_cfg.get("stats")
    workers = _resolve_workers(args.workers, file_cfg.get("workers"))
    logger.info(
        "build: strategy=%s selector=%s workers=%d seed=%d",
        config.strategy.value,
        config.selector.value,
        workers,
        config.global_seed,
    )
    stats = run_pipeline(config, dialogues, output, summaries_path=summaries, workers=workers)
    if stats_path:
        with open(stats_path, "w", encoding="utf-8", newline="\n") as handle:
            json.dump(stats.to_dict(), handle, indent=2)
            handle.write("\n")
    print(compute_stats_report(stats))
    return 0


def cmd_rouge(args: argparse.Namespace) -> int:
    metrics = [m.strip() for m in args.metrics.split(",") if m.strip()]
    bad = sorted(set(metrics) - {"r1", "r2", "rl", "rlsum"})
    if bad or not metrics:
        raise ConfigError(f"--metrics must be a subset of r1,r2,rl,rlsum, got {args.metrics!r}")
    candidates = load_summary_map(args.candidates)
    references = load_summary_map(args.references)
    report = evaluate_summaries(candidates, references)
    filtered = {
        "per_pair": {
            record_id: {name: scores[name] for name in metrics}
            for record_id, scores in report["per_pair"].items()
        },
        "mean": {name: report["mean"][name] for name in metrics},
    }
    print(json.dumps(filtered, ensure_ascii=False, indent=2))
    return 0


def _document_text(obj: Any, where: str) -> str:
    if isinstance(obj, dict):
        if "turns" in obj:
            return join_turns(parse_dialogue_obj(obj, where).turns)
        if "summary" in obj:
            return parse_summary_obj(obj, where).text
        if "input" in obj and "target" in obj:
            example = parse_example_obj(obj, where)
            return example.input_text + "\n" + example.target_text
    raise InputError(f"{where}: unrecognized record schema (need turns, summary, or input/target)")


def _parse_float_list(name: str, raw: str) -> list[float]:
    values = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        values.append(_as_float(name, part))
    if not values:
        raise ConfigError(f"{name} must list at least one number, got {raw!r}")
    return values


def cmd_overlap(args: argparse.Namespace) -> int:
    thresholds = _parse_float_list("--thresholds", args.thresholds)
    targets = list(load_summary_map(args.targets).values())
    documents = [
        _document_text(obj, f"{args.docs}: line {line_no}")
        for line_no, obj in iter_ndjson(args.docs)
    ]
    report = overlap_report(
        targets,
        documents,
        thresholds=thresholds,
        sample_fraction=args.sample_fraction,
        seed=args.seed,
    )
    print(json.dumps(report.to_dict(), indent=2))
    return 0


_SWEEP_PARAMS = {
    "compression-ratio": "compression_ratio",
    "copy-prob": "copy_probability",
}


def cmd_sweep(args: argparse.Namespace) -> int:
    file_cfg = _load_config_file(args.config, _BUILD_KEYS)
    field = _SWEEP_PARAMS[args.param]
    values = _parse_float_list("--values", args.values)
    base_config = _build_config(args, file_cfg)
    dialogues = _require_path("input", args.input, file_cfg)
    summaries = args.summaries if args.summaries is not None else file_cfg.get("summaries")
    output = args.output if args.output is not None else file_cfg.get("output")
    workers = _resolve_workers(args.workers, file_cfg.get("workers"))
    rows = []
    for value in values:
        config = StrategyConfig.from_dict({**base_config.to_dict(), field: value})
        if output:
            root, ext = os.path.splitext(output)
            run_output = f"{root}.{value:g}{ext or '.jsonl'}"
            cleanup = False
        else:
            handle = tempfile.NamedTemporaryFile(suffix=".jsonl", delete=False)
            handle.close()
            run_output = handle.name
            cleanup = True
        try:
            logger.info("sweep: %s=%g -> %s", args.param, value, run_output)
            stats = run_pipeline(
                config, dialogues, run_output, summaries_path=summaries, workers=workers
            )
        finally:
            if cleanup and os.path.exists(run_output):
                os.remove(run_output)
        row = {"param": args.param, "value": value, **stats.to_dict()}
        rows.append(row)
        print(json.dumps(row, ensure_ascii=False, separators=(",", ":")), flush=True)
    if args.stats:
        with open(args.stats, "w", encoding="utf-8", newline="\n") as handle:
            json.dump(rows, handle, indent=2)
            handle.write("\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="turngist",
        description="Build and analyze self-supervised pre-training examples for dialogue summarization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_build_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", help="dialogue NDJSON file")
        p.add_argument("--summaries", help="helper summary NDJSON file")
        p.add_argument("--strategy", choices=["all-g", "all-p", "better-rouge"], default=None)
        p.add_argument("--selector", choices=["gsg-plus", "gsg-star"], default=None)
        p.add_argument("--compression-ratio", type=float, default=None, dest="compression_ratio")
        p.add_argument("--copy-prob", type=float, default=None, dest="copy_prob")
        p.add_argument("--order", choices=["dialogue", "score"], default=None)
        p.add_argument("--max-tokens", type=int, default=None, dest="max_tokens")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument(
            "--workers",
            type=int,
            default=None,
            help=f"worker processes (default: ${_WORKERS_ENV} or cpu count)",
        )
        p.add_argument("--config", help="JSON file of flag defaults; explicit flags win")

    build = sub.add_parser("build", help="build pre-training examples from a dialogue corpus")
    add_build_flags(build)
    build.add_argument("--output", help="example NDJSON output path")
    build.add_argument("--stats", help="write run stats JSON here")
    build.set_defaults(func=cmd_build)

    rouge = sub.add_parser("rouge", help="score candidate summaries against references")
    rouge.add_argument("--candidates", required=True, help="summary NDJSON file")
    rouge.add_argument("--references", required=True, help="summary NDJSON file")
    rouge.add_argument("--metrics", default="r1,r2,rl,rlsum", help="comma list of r1,r2,rl,rlsum")
    rouge.set_defaults(func=cmd_rouge)

    overlap = sub.add_parser("overlap", help="bigram-recall contamination report")
    overlap.add_argument("--targets", required=True, help="summary NDJSON file of test targets")
    overlap.add_argument(
        "--docs", required=True, help="NDJSON of dialogues, summaries, or examples"
    )
    overlap.add_argument("--thresholds", default="1.0,0.8,0.6,0.4")
    overlap.add_argument("--sample", type=float, default=1.0, dest="sample_fraction")
    overlap.add_argument("--seed", type=int, default=0)
    overlap.set_defaults(func=cmd_overlap)

    sweep = sub.add_parser("sweep", help="run the build once per parameter value")
    add_build_flags(sweep)
    sweep.add_argument("--param", choices=sorted(_SWEEP_PARAMS), required=True)
    sweep.add_argument("--values", required=True, help="comma list of values")
    sweep.add_argument("--output", help="per-run outputs written as OUTPUT.<value><ext>")
    sweep.add_argument("--stats", help="write all sweep rows as a JSON array here")
    sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
