"""Example construction: source arbitration, copy mechanism, assembly."""

from __future__ import annotations

from .errors import ConfigError, InputError
from .metrics import join_turns, rouge_n, tokenize
from .model import (
    Dialogue,
    GeneratedSummary,
    PrincipalSelection,
    Selector,
    Strategy,
    StrategyConfig,
    TrainingExample,
)
from .rng import RandomStream, derive_example_rng
from .selector import compute_m, render_principal, select_principal_gsg_plus, select_principal_gsg_star

SUMMARY_PREFIX = "[Summary]"

__all__ = [
    "SUMMARY_PREFIX",
    "better_rouge",
    "apply_copy_mechanism",
    "build_example",
]


def better_rouge(generated_text: str, principal_text: str, remainder_text: str) -> str:
    """Pick the target source: "G" iff the generated summary beats the
    extracted turns on unigram F1 against the rest of the dialogue, else "P".
    Equal scores keep "P".
    """
    remainder = tokenize(remainder_text)
    g_score = rouge_n(tokenize(generated_text), remainder, 1).f1
    p_score = rouge_n(tokenize(principal_text), remainder, 1).f1
    return "G" if g_score > p_score else "P"


def apply_copy_mechanism(
    selection: PrincipalSelection, copy_probability: float, rng: RandomStream
) -> tuple[int, ...]:
    """Keep each selected turn in the input with probability copy_probability.

    Exactly one uniform draw per selected turn, consumed in ascending index
    order, so retention is reproducible from the stream seed alone.
    """
    if not 0.0 <= copy_probability <= 1.0:
        raise ConfigError(f"copy_probability must be in [0, 1], got {copy_probability}")
    return tuple(i for i in selection.indices if rng.uniform() < copy_probability)


def _render_input(dialogue: Dialogue, keep: list[int] | None = None) -> str:
    turns = dialogue.turns if keep is None else [dialogue.turns[i] for i in keep]
    return SUMMARY_PREFIX + "\n" + join_turns(turns, with_speaker=True)


def build_example(
    dialogue: Dialogue, summary: GeneratedSummary | None, config: StrategyConfig
) -> TrainingExample:
    """Build one pre-training example from a cleaned dialogue.

    The input is "[Summary]" on its own line followed by one turn per line.
    With a generated target (source "G") the input keeps every turn. With an
    extracted target (source "P") the selected turns move to the target and
    only copy-retained ones also stay in the input, at their original
    positions. Scoring uses bare turn text; rendering includes speakers.
    """
    n = len(dialogue.turns)
    if n < 2:
        raise InputError(f"dialogue {dialogue.id!r} has {n} turn(s); need at least 2")
    if summary is not None and summary.dialogue_id != dialogue.id:
        raise InputError(
            f"summary is for {summary.dialogue_id!r}, dialogue is {dialogue.id!r}"
        )

    def require_summary(why: str) -> GeneratedSummary:
        if summary is None:
            raise InputError(f"dialogue {dialogue.id!r} has no helper summary; {why}")
        return summary

    if config.strategy is Strategy.ALL_G:
        generated = require_summary("strategy all-g targets it")
        return TrainingExample(dialogue.id, _render_input(dialogue), generated.text, "G", ())

    m = compute_m(n, config.compression_ratio)
    if config.selector is Selector.GSG_PLUS:
        selection = select_principal_gsg_plus(
            dialogue, require_summary("selector gsg-plus scores against it"), m
        )
    else:
        selection = select_principal_gsg_star(dialogue, m)

    if config.strategy is Strategy.BETTER_ROUGE:
        generated = require_summary("strategy better-rouge compares against it")
        chosen = set(selection.indices)
        principal_text = "\n".join(dialogue.turns[i].text for i in selection.indices)
        remainder_text = "\n".join(
            turn.text for i, turn in enumerate(dialogue.turns) if i not in chosen
        )
        source = better_rouge(generated.text, principal_text, remainder_text)
        if source == "G":
            return TrainingExample(dialogue.id, _render_input(dialogue), generated.text, "G", ())

    rng = derive_example_rng(config.global_seed, dialogue.id)
    copied = apply_copy_mechanism(selection, config.copy_probability, rng)
    chosen = set(selection.indices)
    retained = set(copied)
    keep = [i for i in range(n) if i not in chosen or i in retained]
    return TrainingExample(
        dialogue.id,
        _render_input(dialogue, keep),
        render_principal(dialogue, selection, config.principal_order),
        "P",
        copied,
    )
