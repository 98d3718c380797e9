"""Frequency-based extractive summarization.

Classic significant-word clustering: words that recur across the text
mark the important sentences, and a sentence's weight is the densest
cluster of such words it contains.  Output sentences are always verbatim
members of the input, in their original order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

# Function words that never count as significant, regardless of how often
# they appear.
DEFAULT_STOPWORDS = frozenset(
    """
    a about above after again against all am an and any are aren as at be
    because been before being below between both but by can cannot could
    couldn d did didn do does doesn doing don down during each few for from
    further had hadn has hasn have haven having he her here hers herself him
    himself his how i if in into is isn it its itself just ll m ma me might
    mightn more most must mustn my myself needn no nor not now o of off on
    once only or other our ours ourselves out over own re s same shan she
    should shouldn so some such t than that the their theirs them themselves
    then there these they this those through to too under until up ve very
    was wasn we were weren what when where which while who whom why will with
    won would wouldn y you your yours yourself yourselves
    """.split()
)

_TOKEN_CHARS = frozenset("abcdefghijklmnopqrstuvwxyz0123456789")


@dataclass(frozen=True)
class SummaryConfig:
    """Tuning knobs for the summarizer.

    min_sentences_to_summarize must exceed max_sentences: anything short
    enough to keep whole is passed through untouched.
    """

    max_sentences: int = 4
    min_sentences_to_summarize: int = 5
    min_word_frequency: int = 2
    significance_window: int = 4
    stopwords: frozenset[str] = field(default=DEFAULT_STOPWORDS)

    def __post_init__(self):
        if self.max_sentences < 1:
            raise ValueError(f"max_sentences must be >= 1, got {self.max_sentences}")
        if self.min_sentences_to_summarize <= self.max_sentences:
            raise ValueError(
                "min_sentences_to_summarize must exceed max_sentences "
                f"({self.min_sentences_to_summarize} <= {self.max_sentences})"
            )
        if self.min_word_frequency < 1:
            raise ValueError(f"min_word_frequency must be >= 1, got {self.min_word_frequency}")
        if self.significance_window < 0:
            raise ValueError(f"significance_window must be >= 0, got {self.significance_window}")


def tokenize(sentence: str) -> list[str]:
    """Lowercased alphanumeric runs, in order."""
    tokens = []
    current: list[str] = []
    for ch in sentence.lower():
        if ch in _TOKEN_CHARS:
            current.append(ch)
        elif current:
            tokens.append("".join(current))
            current = []
    if current:
        tokens.append("".join(current))
    return tokens


def _best_cluster_score(positions: Sequence[int], window: int) -> float:
    """Score the densest cluster of significant-token positions.

    Clusters are maximal chains where consecutive significant tokens sit
    at most `window` insignificant tokens apart; a cluster of n tokens
    spanning s positions scores n*n/s.
    """
    if not positions:
        return 0.0
    best = 0.0
    start = 0
    for i in range(1, len(positions) + 1):
        if i == len(positions) or positions[i] - positions[i - 1] > window + 1:
            count = i - start
            span = positions[i - 1] - positions[start] + 1
            best = max(best, count * count / span)
            start = i
    return best


def luhn_summarize(sentences: Sequence[str], config: SummaryConfig | None = None) -> list[str]:
    """Pick the most significant sentences, preserving input order.

    Inputs shorter than config.min_sentences_to_summarize come back
    unchanged.  Otherwise the top config.max_sentences by cluster score
    survive; equal scores favour earlier sentences.
    """
    config = config or SummaryConfig()
    sentences = list(sentences)
    if len(sentences) < config.min_sentences_to_summarize:
        return sentences
    token_lists = [tokenize(s) for s in sentences]
    frequency = Counter(
        token for tokens in token_lists for token in tokens if token not in config.stopwords
    )
    significant = {
        token for token, count in frequency.items() if count >= config.min_word_frequency
    }
    scored = []
    for index, tokens in enumerate(token_lists):
        positions = [i for i, token in enumerate(tokens) if token in significant]
        scored.append((_best_cluster_score(positions, config.significance_window), index))
    ranked = sorted(scored, key=lambda pair: (-pair[0], pair[1]))[: config.max_sentences]
    return [sentences[index] for _, index in sorted(ranked, key=lambda pair: pair[1])]
