"""Turn selection: sizing rule, greedy and independent selectors, rendering."""

import random

import pytest

from turngist import (
    ConfigError,
    Dialogue,
    GeneratedSummary,
    InputError,
    PrincipalOrder,
    PrincipalSelection,
    Turn,
    compute_m,
    render_principal,
    rouge_n,
    select_principal_gsg_plus,
    select_principal_gsg_star,
    tokenize,
)
from corpus_helpers import make_dialogue

# ------------------------------------------------------------- compute_m


@pytest.mark.parametrize(
    "turns,ratio,expected",
    [
        (10, 0.15, 2),  # round half up on 1.5
        (20, 0.15, 3),
        (2, 0.15, 1),  # lower clamp
        (3, 0.9, 2),  # upper clamp to turns - 1
        (7, 0.5, 4),  # 3.5 rounds up
        (100, 0.15, 15),
    ],
)
def test_compute_m_cases(turns, ratio, expected):
    assert compute_m(turns, ratio) == expected


def test_compute_m_rejects_short_dialogue():
    with pytest.raises(InputError):
        compute_m(1, 0.15)


def test_compute_m_rejects_bad_ratio():
    with pytest.raises(ConfigError):
        compute_m(10, 0.0)
    with pytest.raises(ConfigError):
        compute_m(10, 1.0)


def test_compute_m_monotone_in_ratio():
    ratios = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6]
    for turns in range(2, 30):
        values = [compute_m(turns, ratio) for ratio in ratios]
        assert values == sorted(values)


# ---------------------------------------------------- greedy gsg+ selector


def greedy_oracle(turn_token_lists, summary_tokens, m):
    """Re-score every candidate set from scratch each iteration."""
    selected = []
    trace = []
    for _ in range(m):
        best_index = None
        best_f1 = -1.0
        for i in range(len(turn_token_lists)):
            if i in selected:
                continue
            pool = []
            for j in sorted(selected + [i]):
                pool.extend(turn_token_lists[j])
            f1 = rouge_n(pool, summary_tokens, 1).f1
            if f1 > best_f1:
                best_f1 = f1
                best_index = i
        selected.append(best_index)
        trace.append((best_index, best_f1))
    return sorted(selected), trace


def test_gsg_plus_single_pick(three_turn):
    dialogue, summary = three_turn
    selection = select_principal_gsg_plus(dialogue, summary, 1)
    assert selection.indices == (2,)
    assert selection.trace == ((2, 1.0),)


def test_gsg_plus_tie_breaks_to_lower_index(three_turn):
    dialogue, summary = three_turn
    selection = select_principal_gsg_plus(dialogue, summary, 2)
    assert selection.indices == (0, 2)
    # second step: adding turn 0 or 1 both reach f1 = 2*(3/5)*1/(3/5+1)
    p = 3 / 5
    expected_f1 = 2.0 * p * 1.0 / (p + 1.0)
    assert selection.trace == ((2, 1.0), (0, expected_f1))


def test_gsg_plus_empty_summary_cascades_lowest_indices(three_turn):
    dialogue, _ = three_turn
    summary = GeneratedSummary(dialogue_id="fx3", text="")
    selection = select_principal_gsg_plus(dialogue, summary, 2)
    assert selection.indices == (0, 1)
    assert selection.trace == ((0, 0.0), (1, 0.0))


def test_gsg_plus_rejects_id_mismatch(three_turn):
    dialogue, _ = three_turn
    with pytest.raises(InputError):
        select_principal_gsg_plus(dialogue, GeneratedSummary("other", "x"), 1)


def test_gsg_plus_rejects_m_out_of_range(three_turn):
    dialogue, summary = three_turn
    with pytest.raises(InputError):
        select_principal_gsg_plus(dialogue, summary, 0)
    with pytest.raises(InputError):
        select_principal_gsg_plus(dialogue, summary, 3)


def test_gsg_plus_matches_oracle_randomized():
    rng = random.Random(31)
    vocab = ["a", "b", "c", "d", "e"]
    for _ in range(150):
        n_turns = rng.randint(2, 6)
        texts = [
            " ".join(rng.choice(vocab) for _ in range(rng.randint(1, 5)))
            for _ in range(n_turns)
        ]
        dialogue = make_dialogue("dx", texts)
        summary_text = " ".join(rng.choice(vocab) for _ in range(rng.randint(0, 6)))
        summary = GeneratedSummary("dx", summary_text)
        m = rng.randint(1, min(3, n_turns - 1))
        selection = select_principal_gsg_plus(dialogue, summary, m)
        indices, trace = greedy_oracle([tokenize(t) for t in texts], tokenize(summary_text), m)
        assert list(selection.indices) == indices
        assert [i for i, _ in selection.trace] == [i for i, _ in trace]
        assert [f for _, f in selection.trace] == [f for _, f in trace]


def test_gsg_plus_token_order_within_turns_irrelevant(three_turn):
    dialogue, summary = three_turn
    shuffled = make_dialogue("fx3", ["beta alpha", "delta gamma", "gamma alpha beta"])
    original = select_principal_gsg_plus(dialogue, summary, 2)
    permuted = select_principal_gsg_plus(shuffled, summary, 2)
    assert original.indices == permuted.indices
    assert original.trace == permuted.trace


def test_gsg_plus_ignores_speaker_names():
    plain = make_dialogue("dx", ["alpha beta", "gamma delta", "alpha beta gamma"])
    spoken = make_dialogue(
        "dx",
        ["alpha beta", "gamma delta", "alpha beta gamma"],
        speakers=["alpha", "alpha", "zzz"],
    )
    summary = GeneratedSummary("dx", "alpha beta gamma")
    # scores must be identical too; speaker tokens would shift the f1 values
    assert (
        select_principal_gsg_plus(plain, summary, 1).trace
        == select_principal_gsg_plus(spoken, summary, 1).trace
    )


# ------------------------------------------------- independent gsg* selector


def test_gsg_star_duplicate_turns_tie_to_lowest():
    dialogue = make_dialogue("dx", ["a b", "a b", "z"])
    selection = select_principal_gsg_star(dialogue, 1)
    assert selection.indices == (0,)


def test_gsg_star_all_but_worst():
    # turn 2 shares nothing with the rest; m = n - 1 keeps everything else
    dialogue = make_dialogue("dx", ["a b", "b c", "z z z", "a c"])
    selection = select_principal_gsg_star(dialogue, 3)
    assert selection.indices == (0, 1, 3)


def test_gsg_star_scores_against_remainder():
    dialogue = make_dialogue("dx", ["a b", "c d", "a b c d"])
    selection = select_principal_gsg_star(dialogue, 1)
    # turn 2 overlaps perfectly with the union of the others
    assert selection.indices == (2,)
    p = 4 / 4
    r = 4 / 4
    assert selection.trace[0][1] == 2.0 * p * r / (p + r)


def test_gsg_star_oracle_randomized():
    rng = random.Random(32)
    vocab = ["a", "b", "c", "d"]
    for _ in range(150):
        n_turns = rng.randint(2, 6)
        texts = [
            " ".join(rng.choice(vocab) for _ in range(rng.randint(1, 5)))
            for _ in range(n_turns)
        ]
        dialogue = make_dialogue("dx", texts)
        token_lists = [tokenize(t) for t in texts]
        scores = []
        for i in range(n_turns):
            rest = [tok for j, lst in enumerate(token_lists) if j != i for tok in lst]
            scores.append(rouge_n(token_lists[i], rest, 1).f1)
        m = rng.randint(1, n_turns - 1)
        expected = sorted(sorted(range(n_turns), key=lambda i: (-scores[i], i))[:m])
        selection = select_principal_gsg_star(dialogue, m)
        assert list(selection.indices) == expected


def test_gsg_star_rejects_m_out_of_range():
    dialogue = make_dialogue("dx", ["a", "b"])
    with pytest.raises(InputError):
        select_principal_gsg_star(dialogue, 2)


# ------------------------------------------------------------------ render


def test_render_dialogue_order(three_turn):
    dialogue, summary = three_turn
    selection = select_principal_gsg_plus(dialogue, summary, 2)
    text = render_principal(dialogue, selection, PrincipalOrder.DIALOGUE)
    assert text == "alpha beta\nalpha beta gamma"


def test_render_score_order(three_turn):
    dialogue, summary = three_turn
    selection = select_principal_gsg_plus(dialogue, summary, 2)
    text = render_principal(dialogue, selection, PrincipalOrder.SCORE)
    assert text == "alpha beta gamma\nalpha beta"


def test_render_single_index_same_under_both_orders(three_turn):
    dialogue, summary = three_turn
    selection = select_principal_gsg_plus(dialogue, summary, 1)
    assert render_principal(dialogue, selection, PrincipalOrder.DIALOGUE) == render_principal(
        dialogue, selection, PrincipalOrder.SCORE
    )


def test_render_includes_speakers():
    dialogue = Dialogue(
        id="dx", turns=(Turn("hi", "A"), Turn("bye", "B"), Turn("later", "C"))
    )
    selection = PrincipalSelection(indices=(0, 2), m=2, trace=((0, 0.9), (2, 0.5)))
    assert render_principal(dialogue, selection, PrincipalOrder.DIALOGUE) == "A: hi\nC: later"


def test_render_score_order_tie_keeps_selection_order():
    dialogue = make_dialogue("dx", ["x", "y", "z"])
    selection = PrincipalSelection(indices=(0, 2), m=2, trace=((2, 0.5), (0, 0.5)))
    assert render_principal(dialogue, selection, PrincipalOrder.SCORE) == "z\nx"


def test_render_rejects_out_of_range_selection():
    dialogue = make_dialogue("dx", ["x", "y"])
    selection = PrincipalSelection(indices=(0, 5), m=2, trace=((0, 0.5), (5, 0.4)))
    with pytest.raises(InputError):
        render_principal(dialogue, selection, PrincipalOrder.DIALOGUE)
