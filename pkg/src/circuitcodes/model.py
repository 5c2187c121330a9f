"""Circuit codes as transition sequences, plus the brute-force spread oracles.

Coordinates are 1-based everywhere in the public API: coordinate ``c`` of a
vertex is stored in bit ``c - 1`` of an integer and rendered as the ``c``-th
character from the left.  Vertex *positions* on a cycle are ordinary 0-based
Python indices, with ``vertices[0]`` the all-zeros vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import (
    ElementOutOfRange,
    IndexOutOfRange,
    InvalidSequence,
    LengthTooShort,
    NotClosed,
    VerificationError,
    WidthMismatch,
)

MAX_DIMENSION = 64


@dataclass(frozen=True)
class TransitionSequence:
    """Cyclic list of coordinate flips.

    Only positivity is checked here.  Range, parity and closure depend on the
    dimension and are checked by :func:`vertices_of` and :class:`CircuitCode`.
    """

    elements: tuple[int, ...]

    def __init__(self, elements: Iterable[int]):
        elems = tuple(int(e) for e in elements)
        if any(e < 1 for e in elems):
            raise InvalidSequence("transition elements must be positive integers")
        object.__setattr__(self, "elements", elems)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __getitem__(self, idx):
        return self.elements[idx]

    def max_element(self) -> int:
        return max(self.elements, default=0)


@dataclass(frozen=True)
class Vertex:
    """Fixed-width binary vector; ``bits`` holds coordinate c at bit c-1."""

    bits: int
    width: int

    def __post_init__(self):
        if not 0 <= self.width <= MAX_DIMENSION:
            raise WidthMismatch(f"width {self.width} outside 0..{MAX_DIMENSION}")
        if self.bits < 0 or self.bits >> self.width:
            raise WidthMismatch(f"bits {self.bits:#x} do not fit in width {self.width}")

    @classmethod
    def from_string(cls, s: str) -> "Vertex":
        s = s.strip()
        if any(ch not in "01" for ch in s):
            raise ValueError(f"not a binary string: {s!r}")
        bits = sum(1 << i for i, ch in enumerate(s) if ch == "1")
        return cls(bits, len(s))

    def coordinate(self, c: int) -> int:
        if not 1 <= c <= self.width:
            raise IndexOutOfRange(f"coordinate {c} outside 1..{self.width}")
        return (self.bits >> (c - 1)) & 1

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.width))


def hypercube_distance(x: Vertex, x2: Vertex) -> int:
    """Hamming distance between two vertices of the same width."""
    if x.width != x2.width:
        raise WidthMismatch(f"widths differ: {x.width} vs {x2.width}")
    return (x.bits ^ x2.bits).bit_count()


def _check_dimension(elements: Sequence[int], n: int) -> None:
    if not 1 <= n <= MAX_DIMENSION:
        raise ElementOutOfRange(f"dimension {n} outside 1..{MAX_DIMENSION}")
    for pos, e in enumerate(elements):
        if e > n:
            raise ElementOutOfRange(f"element {e} at position {pos} exceeds dimension {n}")


def _walk(elements: Sequence[int]) -> list[int]:
    """States x_1..x_N followed by the state reached after the last flip."""
    states = [0]
    x = 0
    for e in elements:
        x ^= 1 << (e - 1)
        states.append(x)
    return states


def vertices_of(seq: TransitionSequence | Sequence[int], n: int) -> list[Vertex]:
    """Vertex cycle generated by ``seq`` starting from all-zeros."""
    elements = tuple(seq)
    _check_dimension(elements, n)
    states = _walk(elements)
    if states[-1] != 0:
        raise NotClosed(f"sequence ends at {Vertex(states[-1], n)}, not all-zeros")
    return [Vertex(b, n) for b in states[:-1]]


@dataclass(frozen=True)
class Witness:
    """Pair of vertex positions (i < j) with both distances between them."""

    i: int
    j: int
    cycle_distance: int
    cube_distance: int


@dataclass(frozen=True)
class SpreadVerdict:
    holds: bool
    witness: Optional[Witness] = None
    condition: str = ""

    def __bool__(self) -> bool:
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return "HOLDS"
        w = self.witness
        return (
            f"VIOLATED ({self.condition}): vertices {w.i} and {w.j} have "
            f"cycle distance {w.cycle_distance}, cube distance {w.cube_distance}"
        )


def is_simple_cycle(seq: TransitionSequence | Sequence[int], n: int) -> SpreadVerdict:
    """Whether the walk visits N pairwise distinct vertices.

    A repeated vertex is reported before closure is checked, so an unclosed
    walk that revisits a vertex still yields a witness; an unclosed walk with
    distinct vertices raises :class:`NotClosed`.
    """
    elements = tuple(seq)
    _check_dimension(elements, n)
    states = _walk(elements)
    N = len(elements)
    first_seen: dict[int, int] = {}
    best = None
    for j, x in enumerate(states[:-1]):
        i = first_seen.setdefault(x, j)
        if i != j and (best is None or (i, j) < best):
            best = (i, j)
    if best is not None:
        i, j = best
        return SpreadVerdict(
            False, Witness(i, j, min(j - i, N - (j - i)), 0), "repeated vertex"
        )
    if states[-1] != 0:
        raise NotClosed(f"sequence ends at {Vertex(states[-1], n)}, not all-zeros")
    return SpreadVerdict(True, condition="simple cycle")


@dataclass(frozen=True)
class CircuitCode:
    """A closed walk in I(n) with a claimed spread ``k``.

    Construction checks element range, closure and minimum length; whether
    the walk is simple and whether the claimed spread holds are left to
    :func:`is_simple_cycle` and :func:`has_spread`.
    """

    n: int
    k: int
    seq: TransitionSequence
    vertices: tuple[Vertex, ...] = field(init=False, repr=False, compare=False)
    _bits: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.seq, TransitionSequence):
            object.__setattr__(self, "seq", TransitionSequence(self.seq))
        if self.k < 1:
            raise InvalidSequence(f"spread must be >= 1, got {self.k}")
        if len(self.seq) < 4:
            raise InvalidSequence(f"a hypercube cycle needs >= 4 transitions, got {len(self.seq)}")
        verts = vertices_of(self.seq, self.n)
        object.__setattr__(self, "vertices", tuple(verts))
        bits = np.fromiter((v.bits for v in verts), dtype=np.uint64, count=len(verts))
        bits.setflags(write=False)
        object.__setattr__(self, "_bits", bits)

    @property
    def N(self) -> int:
        return len(self.seq)

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.n, self.k, self.N)

    def with_spread(self, k: int) -> "CircuitCode":
        return CircuitCode(self.n, k, self.seq)

    def segment(self, i: int, j: int) -> tuple[int, ...]:
        """Transitions walked forward from vertex ``i`` to vertex ``j``."""
        if i <= j:
            return self.seq.elements[i:j]
        return self.seq.elements[i:] + self.seq.elements[:j]


def cycle_distance(code: CircuitCode, i: int, j: int) -> int:
    N = code.N
    for idx in (i, j):
        if not 0 <= idx < N:
            raise IndexOutOfRange(f"vertex index {idx} outside 0..{N - 1}")
    d = abs(i - j)
    return min(d, N - d)


def has_spread(code: CircuitCode, k: Optional[int] = None) -> SpreadVerdict:
    """All-pairs spread check with a deterministic witness.

    With ``N >= 2k`` this uses Klee's characterisation (cycle distance >= k
    forces cube distance >= k); shorter cycles are checked against the
    definition directly (cube distance < k forces equal cycle distance).  A
    repeated vertex always fails.  The witness is the lexicographically
    smallest violating pair.
    """
    k = code.k if k is None else k
    if k < 1:
        raise InvalidSequence(f"spread must be >= 1, got {k}")
    N = code.N
    bits = code._bits
    offsets = np.arange(N, dtype=np.int64)
    cyc = np.minimum(offsets, N - offsets)
    klee = N >= 2 * k
    for i in range(N - 1):
        dh = np.bitwise_count(bits[i + 1 :] ^ bits[i]).astype(np.int64)
        dc = cyc[1 : N - i]
        if klee:
            bad = (dh == 0) | ((dc >= k) & (dh < k))
        else:
            bad = (dh < k) & (dc != dh)
        if bad.any():
            off = int(np.argmax(bad))
            j = i + 1 + off
            cond = "repeated vertex" if dh[off] == 0 else (
                "far on cycle but close in cube" if klee else "cube distance below spread but cycle distance differs"
            )
            return SpreadVerdict(False, Witness(i, j, int(dc[off]), int(dh[off])), cond)
    return SpreadVerdict(True, condition=f"spread {k}")


def max_spread(code: CircuitCode) -> int:
    """Largest spread k <= N/2 that holds.

    Above N/2 only the definition applies and isometric cycles (such as the
    2n-cycle) satisfy it for every k, so the search stops at N/2.
    """
    if not has_spread(code, 1):
        raise VerificationError("not a simple cycle")
    best = 1
    for k in range(2, code.N // 2 + 1):
        if not has_spread(code, k):
            break
        best = k
    return best


def check_consecutive_distinct(code: CircuitCode, k: Optional[int] = None) -> SpreadVerdict:
    """Every k+1 cyclically consecutive transitions are pairwise distinct.

    A violation at transitions p < q (cyclically) is reported as the vertex
    pair it spans, i.e. positions p and q+1.
    """
    k = code.k if k is None else k
    N = code.N
    if N < 2 * (k + 1):
        raise LengthTooShort(f"window check needs N >= {2 * (k + 1)}, got N={N}")
    elems = code.seq.elements
    for a in range(N):
        seen: dict[int, int] = {}
        for step in range(k + 1):
            e = elems[(a + step) % N]
            if e in seen:
                p = (a + seen[e]) % N
                q1 = (a + step + 1) % N
                i, j = min(p, q1), max(p, q1)
                dh = hypercube_distance(code.vertices[i], code.vertices[j])
                return SpreadVerdict(
                    False,
                    Witness(i, j, cycle_distance(code, i, j), dh),
                    f"transition {e} repeats within a window of {k + 1}",
                )
            seen[e] = step
    return SpreadVerdict(True, condition=f"windows of {k + 1} distinct")
