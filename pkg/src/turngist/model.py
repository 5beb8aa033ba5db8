"""Core value types and the pipeline configuration."""

from __future__ import annotations

from dataclasses import dataclass, fields
from enum import Enum
from typing import Any

from .errors import ConfigError, InputError


class Strategy(str, Enum):
    """How the target side of an example is sourced.

    ALL_G: target is always the generated helper summary.
    ALL_P: target is always the extracted turn subset (the principal).
    BETTER_ROUGE: per dialogue, pick whichever of the two scores higher
    against the rest of the dialogue.
    """

    ALL_G = "all-g"
    ALL_P = "all-p"
    BETTER_ROUGE = "better-rouge"


class Selector(str, Enum):
    """How principal turns are chosen.

    GSG_PLUS: greedy, each step adds the turn that most improves unigram F1
    of the selection against the helper summary.
    GSG_STAR: each turn scored once independently against the rest of the
    dialogue; top-m kept. Needs no helper summary.
    """

    GSG_PLUS = "gsg-plus"
    GSG_STAR = "gsg-star"


class PrincipalOrder(str, Enum):
    """Turn order inside a principal target: original position or score-descending."""

    DIALOGUE = "dialogue"
    SCORE = "score"


@dataclass(frozen=True, slots=True)
class Turn:
    text: str
    speaker: str | None = None


@dataclass(frozen=True, slots=True)
class Dialogue:
    id: str
    turns: tuple[Turn, ...]


@dataclass(frozen=True, slots=True)
class GeneratedSummary:
    dialogue_id: str
    text: str


@dataclass(frozen=True, slots=True)
class RougeScore:
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_precision_recall(cls, precision: float, recall: float) -> "RougeScore":
        denom = precision + recall
        f1 = 2.0 * precision * recall / denom if denom > 0.0 else 0.0
        return cls(precision, recall, f1)


ZERO_SCORE = RougeScore(0.0, 0.0, 0.0)


@dataclass(frozen=True, slots=True)
class PrincipalSelection:
    """Result of turn selection.

    indices: selected turn indices, ascending.
    m: selection size (== len(indices)).
    trace: (chosen_index, winning_f1) per selection step, in choice order.
    """

    indices: tuple[int, ...]
    m: int
    trace: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        if self.m != len(self.indices):
            raise InputError(f"selection size m={self.m} != {len(self.indices)} indices")
        if len(self.trace) != self.m:
            raise InputError(f"trace has {len(self.trace)} entries for m={self.m}")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise InputError(f"selection indices not strictly ascending: {self.indices}")
        if sorted(i for i, _ in self.trace) != list(self.indices):
            raise InputError("trace indices do not match selection indices")


@dataclass(frozen=True, slots=True)
class TrainingExample:
    dialogue_id: str
    input_text: str
    target_text: str
    source: str  # "G" or "P"
    copied_turn_indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.source not in ("G", "P"):
            raise InputError(f"example source must be 'G' or 'P', got {self.source!r}")


@dataclass(frozen=True, slots=True)
class StrategyConfig:
    """Everything that shapes example construction. Immutable; validated on creation."""

    strategy: Strategy = Strategy.BETTER_ROUGE
    compression_ratio: float = 0.15
    copy_probability: float = 0.15
    selector: Selector = Selector.GSG_PLUS
    principal_order: PrincipalOrder = PrincipalOrder.DIALOGUE
    max_tokens: int = 512
    global_seed: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.strategy, Strategy):
            raise ConfigError(f"strategy must be one of {[s.value for s in Strategy]}")
        if not isinstance(self.selector, Selector):
            raise ConfigError(f"selector must be one of {[s.value for s in Selector]}")
        if not isinstance(self.principal_order, PrincipalOrder):
            raise ConfigError(f"principal_order must be one of {[o.value for o in PrincipalOrder]}")
        if not 0.0 < self.compression_ratio < 1.0:
            raise ConfigError(f"compression_ratio must be in (0, 1), got {self.compression_ratio}")
        if not 0.0 <= self.copy_probability <= 1.0:
            raise ConfigError(f"copy_probability must be in [0, 1], got {self.copy_probability}")
        if self.max_tokens < 1:
            raise ConfigError(f"max_tokens must be >= 1, got {self.max_tokens}")
        if not 0 <= self.global_seed < 1 << 64:
            raise ConfigError(f"global_seed must be an unsigned 64-bit int, got {self.global_seed}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "strategy": self.strategy.value,
            "compression_ratio": self.compression_ratio,
            "copy_probability": self.copy_probability,
            "selector": self.selector.value,
            "principal_order": self.principal_order.value,
            "max_tokens": self.max_tokens,
            "global_seed": self.global_seed,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "StrategyConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
        kwargs: dict[str, Any] = dict(data)
        for key, enum_cls in (
            ("strategy", Strategy),
            ("selector", Selector),
            ("principal_order", PrincipalOrder),
        ):
            if key in kwargs and not isinstance(kwargs[key], enum_cls):
                try:
                    kwargs[key] = enum_cls(kwargs[key])
                except ValueError:
                    raise ConfigError(
                        f"{key} must be one of {[e.value for e in enum_cls]}, got {kwargs[key]!r}"
                    ) from None
        return cls(**kwargs)


def summaries_required(config: StrategyConfig) -> bool:
    """Whether example construction needs a helper summary for every dialogue.

    ALL_G and BETTER_ROUGE consume the summary directly; the greedy selector
    needs it as the scoring reference. Only ALL_P with the independent
    selector runs without summaries.
    """
    if config.strategy in (Strategy.ALL_G, Strategy.BETTER_ROUGE):
        return True
    return config.selector is Selector.GSG_PLUS
