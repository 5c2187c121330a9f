"""Sequence-level rewrites of circuit codes.

``construct7`` raises the spread by one by inserting new coordinates after
fixed-size segments in a ruler pattern.  ``klee_padding`` keeps the spread and
adds a single coordinate so the length becomes a multiple of ``2(k+1)``.
``naive_insertion`` builds the phase-shifted candidates that show why a
single new coordinate every ``k+1`` steps is not enough.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CircuitCodeError,
    InputNotVerified,
    OddLength,
    PostVerificationFailed,
    TooShort,
    WidthMismatch,
)
from .model import CircuitCode, TransitionSequence, Vertex, has_spread

__all__ = [
    "Segment",
    "ConstructionReport",
    "ceil_div",
    "ruler_level",
    "construct7_params",
    "closed_form_r",
    "split_segments",
    "construct7",
    "klee_padding_params",
    "klee_padding",
    "naive_insertion",
    "project_vertex",
    "strip_new_elements",
]


@dataclass(frozen=True)
class Segment:
    half: int  # 1 or 2
    index: int  # 1..q
    elements: tuple[int, ...]


@dataclass(frozen=True)
class ConstructionReport:
    output: CircuitCode
    q: int
    r: int
    insertions: tuple[tuple[int, int, int], ...]  # (half, segment index, new element)
    input_params: tuple[int, int, int]
    output_params: tuple[int, int, int]

    @property
    def total_insertions(self) -> int:
        return len(self.insertions)


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def ruler_level(j: int) -> int:
    """1 + the 2-adic valuation of ``j``: 1,2,1,3,1,2,1,4,..."""
    if j < 1:
        raise ValueError("ruler_level needs j >= 1")
    return (j & -j).bit_length()


def _ceil_log2(x: int) -> int:
    return (x - 1).bit_length() if x > 1 else 0


def closed_form_r(N: int, k: int) -> int:
    """``ceil(log2(N / (2(k+1)))) + 1`` in exact integer arithmetic."""
    m = 0
    while N > 2 * (k + 1) * (1 << m):
        m += 1
    return m + 1


def construct7_params(n: int, k: int, N: int) -> dict[str, int]:
    """Parameter arithmetic of the spread-raising construction, no sequence needed."""
    if N % 2:
        raise OddLength(f"length {N} is odd")
    if N < 2 * (k + 1):
        raise TooShort(f"need N >= 2(k+1) = {2 * (k + 1)}, got {N}")
    q = ceil_div(N, 2 * (k + 1))
    r = _ceil_log2(q) + 1
    # segment-level and closed-form r agree for every admissible N
    assert r == closed_form_r(N, k), (n, k, N)
    return {"n": n + r, "k": k + 1, "N": N + 2 * q, "q": q, "r": r}


def split_segments(seq: TransitionSequence | tuple[int, ...], k: int) -> list[list[Segment]]:
    """Split each half into q segments of k+1 elements, the last possibly shorter."""
    elems = tuple(seq)
    N = len(elems)
    if N % 2:
        raise OddLength(f"length {N} is odd")
    half = N // 2
    q = ceil_div(half, k + 1)
    out = []
    for h, part in enumerate((elems[:half], elems[half:]), start=1):
        out.append(
            [Segment(h, j + 1, part[j * (k + 1) : (j + 1) * (k + 1)]) for j in range(q)]
        )
    return out


def _require_verified(code: CircuitCode) -> None:
    verdict = has_spread(code, code.k)
    if not verdict:
        raise InputNotVerified(
            f"input does not have spread {code.k}: {verdict.describe()}"
        )


def _rebuild(halves, new_for_segment) -> tuple[list[int], list[tuple[int, int, int]]]:
    seq: list[int] = []
    insertions = []
    for segs in halves:
        for seg in segs:
            seq.extend(seg.elements)
            new = new_for_segment(seg)
            if new is not None:
                seq.append(new)
                insertions.append((seg.half, seg.index, new))
    return seq, insertions


def construct7(code: CircuitCode, verify: bool = True) -> ConstructionReport:
    """Build an (n+r, k+1) code of length N + 2q from an (n, k) code.

    New coordinate ``n + l`` goes after segment ``j < q`` of each half when
    ``2^(l-1)`` is the largest power of two dividing ``j``; the last segment
    of each half gets ``n + r``.  The output is always checked for spread
    k+1; ``verify`` only controls re-checking the input.
    """
    n, k, N = code.params
    params = construct7_params(n, k, N)
    if verify:
        _require_verified(code)
    q, r = params["q"], params["r"]

    def new_for(seg: Segment) -> int:
        level = r if seg.index == q else ruler_level(seg.index)
        return n + level

    seq, insertions = _rebuild(split_segments(code.seq, k), new_for)
    out = CircuitCode(params["n"], params["k"], TransitionSequence(seq))
    verdict = has_spread(out, out.k)
    if not verdict:
        raise PostVerificationFailed(verdict.describe())
    assert out.N == params["N"]
    return ConstructionReport(
        output=out,
        q=q,
        r=r,
        insertions=tuple(insertions),
        input_params=code.params,
        output_params=out.params,
    )


def klee_padding_params(n: int, k: int, N: int) -> dict[str, int]:
    """Dimension, length and padding count for the divisibility padding."""
    if N % 2:
        raise OddLength(f"length {N} is odd")
    if N <= 2 * (k + 1) ** 2:
        raise TooShort(f"padding needs N > 2(k+1)^2 = {2 * (k + 1) ** 2}, got {N}")
    q = ceil_div(N, 2 * (k + 1))
    p = (k + 1) * q - N // 2
    return {"n": n + 1, "k": k, "N": 2 * (k + 1) * q, "q": q, "p": p}


def klee_padding(code: CircuitCode, verify: bool = True) -> ConstructionReport:
    """Pad an (n, k) code to an (n+1, k) code whose length is divisible by k+1.

    Coordinate ``n + 1`` is appended to the first ``p`` segments of each half.
    """
    n, k, N = code.params
    params = klee_padding_params(n, k, N)
    if verify:
        _require_verified(code)
    q, p = params["q"], params["p"]
    t = n + 1
    seq, insertions = _rebuild(
        split_segments(code.seq, k), lambda seg: t if seg.index <= p else None
    )
    out = CircuitCode(n + 1, k, TransitionSequence(seq))
    verdict = has_spread(out, k)
    if not verdict:
        raise PostVerificationFailed(verdict.describe())
    assert out.N == params["N"] and out.N % (k + 1) == 0
    return ConstructionReport(
        output=out,
        q=q,
        r=1,
        insertions=tuple(insertions),
        input_params=code.params,
        output_params=out.params,
    )


NAIVE_SEGMENT = 3


def naive_insertion(code: CircuitCode, offset: int) -> TransitionSequence:
    """Insert coordinate n+1 after every 3 old elements, at phase ``offset``.

    Offset 0 puts the new element first, offset 1 after the first old element,
    offset 2 after the second.  No spread guarantee is made.
    """
    if offset not in (0, 1, 2):
        raise CircuitCodeError(f"offset must be 0, 1 or 2, got {offset}")
    t = code.n + 1
    out: list[int] = []
    for pos, e in enumerate(code.seq):
        if pos % NAIVE_SEGMENT == offset:
            out.append(t)
        out.append(e)
    return TransitionSequence(out)


def project_vertex(x: Vertex, m: int) -> Vertex:
    """First ``m`` coordinates of ``x``."""
    if not 0 <= m <= x.width:
        raise WidthMismatch(f"cannot project width {x.width} onto {m}")
    return Vertex(x.bits & ((1 << m) - 1), m)


def strip_new_elements(seq: TransitionSequence, n: int) -> TransitionSequence:
    """Drop every coordinate above ``n`` (inverse of both rewrites)."""
    return TransitionSequence(e for e in seq if e <= n)
