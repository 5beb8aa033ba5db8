"""Self-supervised pre-training example builder for dialogue summarization.

The package turns dialogue corpora into input/target training pairs by
selecting principal turns with a summary-guided or self-contained greedy
objective, arbitrating between generated and principal targets, and applying
a stochastic copy mechanism. Hot scoring kernels run on numba with a numpy
fallback selected by the TURNGIST_BACKEND environment variable.
"""

from .analysis import DEFAULT_THRESHOLDS, OverlapReport, evaluate_summaries, overlap_report
from .errors import ConfigError, InputError
from .metrics import join_turns, rouge2_recall, rouge_l, rouge_l_sum, rouge_n, tokenize
from .model import (
    Dialogue,
    GeneratedSummary,
    PrincipalOrder,
    PrincipalSelection,
    RougeScore,
    Selector,
    Strategy,
    StrategyConfig,
    TrainingExample,
    Turn,
    summaries_required,
)
from .objective import SUMMARY_PREFIX, apply_copy_mechanism, better_rouge, build_example
from .pipeline import PipelineStats, clean_dialogue, clean_text, run_pipeline, truncate_example
from .rng import RandomStream, derive_example_rng, fnv1a64
from .selector import (
    compute_m,
    render_principal,
    select_principal_gsg_plus,
    select_principal_gsg_star,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "InputError",
    "Turn",
    "Dialogue",
    "GeneratedSummary",
    "RougeScore",
    "PrincipalSelection",
    "TrainingExample",
    "Strategy",
    "Selector",
    "PrincipalOrder",
    "StrategyConfig",
    "summaries_required",
    "tokenize",
    "join_turns",
    "rouge_n",
    "rouge_l",
    "rouge_l_sum",
    "rouge2_recall",
    "compute_m",
    "select_principal_gsg_plus",
    "select_principal_gsg_star",
    "render_principal",
    "SUMMARY_PREFIX",
    "better_rouge",
    "apply_copy_mechanism",
    "build_example",
    "clean_text",
    "clean_dialogue",
    "truncate_example",
    "run_pipeline",
    "PipelineStats",
    "overlap_report",
    "OverlapReport",
    "DEFAULT_THRESHOLDS",
    "evaluate_summaries",
    "fnv1a64",
    "RandomStream",
    "derive_example_rng",
    "__version__",
]
