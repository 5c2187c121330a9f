"""Every transition sequence used as ground truth, embedded verbatim."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CircuitCodeError, NoEntry
from .model import CircuitCode, has_spread, is_simple_cycle


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    code: CircuitCode
    source: str
    counterexample: bool = False


# 234 elements, transcribed in rows of 30 exactly as published.
RECORD_22_7 = (
    6, 12, 4, 3, 16, 8, 9, 18, 17, 13, 4, 12, 15, 16, 5, 19, 14, 13, 9, 1, 2, 10, 6, 18, 14, 5, 8, 9, 15, 7,
    6, 20, 2, 11, 12, 3, 16, 7, 15, 18, 1, 2, 8, 17, 16, 12, 4, 19, 5, 13, 9, 17, 8, 11, 12, 18, 1, 10, 9, 5,
    14, 15, 6, 21, 2, 10, 1, 4, 5, 11, 3, 18, 2, 15, 7, 8, 16, 12, 3, 19, 11, 14, 15, 4, 13, 12, 8, 18, 17, 1,
    9, 5, 13, 4, 7, 20, 8, 14, 6, 5, 1, 10, 11, 18, 2, 15, 6, 14, 17, 1, 7, 19, 16, 15, 11, 3, 22, 4, 12, 8,
    16, 7, 10, 11, 18, 17, 9, 8, 4, 13, 14, 5, 19, 1, 9, 17, 3, 4, 10, 2, 18, 1, 14, 6, 7, 15, 11, 2, 20, 10,
    13, 14, 3, 12, 11, 7, 18, 16, 17, 8, 4, 12, 3, 6, 19, 7, 13, 5, 4, 17, 9, 10, 18, 1, 14, 5, 13, 16, 17, 6,
    21, 15, 14, 10, 2, 3, 11, 7, 18, 15, 6, 9, 10, 16, 8, 7, 19, 3, 12, 13, 4, 17, 8, 16, 18, 2, 3, 9, 1, 17,
    13, 5, 20, 6, 14, 10, 1, 9, 12, 13, 18, 2, 11, 10, 6, 15, 16, 7, 19, 3, 11, 2, 5, 22,
)

_RAW = [
    ("fig1-(3,2,6)", 3, 2, (2, 1, 3, 2, 1, 3), "6-cycle in I(3), the smallest nontrivial snake"),
    ("fig1-(4,3,8)", 4, 3, (2, 1, 3, 4, 2, 1, 3, 4), "spread-raising construction applied to fig1-(3,2,6)"),
    ("lemma4-T6", 6, 3, (1, 5, 2, 6, 3, 5, 4, 6, 1, 5, 2, 6, 3, 5, 4, 6), "spread-3 ladder base, n = 0 mod 3"),
    (
        "lemma4-T7",
        7,
        3,
        (5, 2, 6, 1, 7, 2, 5, 3, 6, 2, 7, 4, 5, 2, 6, 1, 7, 2, 5, 3, 6, 2, 7, 4),
        "spread-3 ladder base, n = 1 mod 3",
    ),
    (
        "lemma4-T8",
        8,
        3,
        (5, 2, 6, 8, 1, 7, 2, 8, 5, 3, 6, 8, 2, 7, 4, 8, 5, 2, 6, 8, 1, 7, 2, 8, 5, 3, 6, 8, 2, 7, 4, 8),
        "spread-3 ladder base, n = 2 mod 3",
    ),
    (
        "appendixA-(6,2,24)",
        6,
        2,
        (1, 2, 6, 4, 5, 6, 1, 3, 5, 4, 6, 5, 1, 2, 6, 4, 5, 6, 1, 3, 5, 4, 6, 5),
        "Klee's (6,2) code; naive extension to spread 3 fails",
    ),
    ("appendixB-(22,7,234)", 22, 7, RECORD_22_7, "spread-raising construction applied to Paterson-Tuliani (17,6,204)"),
]


@lru_cache(maxsize=None)
def corpus() -> tuple[CorpusEntry, ...]:
    """All embedded codes, each checked for simplicity and its labelled spread."""
    entries = []
    for cid, n, k, seq, source in _RAW:
        code = CircuitCode(n, k, seq)
        if not is_simple_cycle(code.seq, n) or not has_spread(code, k):
            raise CircuitCodeError(f"embedded corpus code {cid} fails its own check")
        entries.append(CorpusEntry(cid, code, source))
    return tuple(entries)


def corpus_ids() -> list[str]:
    return [cid for cid, *_ in _RAW]


def lookup(cid: str) -> CorpusEntry:
    for entry in corpus():
        if entry.id == cid:
            return entry
    raise NoEntry(f"no corpus entry {cid!r}")
