"""Lower-bound table for K(n, k) with provenance and fixpoint propagation.

Entries are immutable snapshots.  A derived entry keeps references to the
parent snapshots it was computed from, so replaying a provenance tree always
reproduces the same value even after the table has moved on.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .constructions import ceil_div, construct7, construct7_params, klee_padding, klee_padding_params
from .corpus import CorpusEntry, corpus, lookup
from .errors import DomainError, InconsistentBound, NoEntry, RangeTooSmall, TooShort
from .model import CircuitCode, has_spread

log = logging.getLogger(__name__)

DEFAULT_N_RANGE = (2, 30)
DEFAULT_K_RANGE = (1, 10)

Params = tuple[int, int, int]


def even_ceil(x: int | Fraction) -> int:
    """Smallest even integer >= x; cycle lengths in a hypercube are even."""
    v = ceil_div(x.numerator, x.denominator) if isinstance(x, Fraction) else int(x)
    return v + (v % 2)


@dataclass(frozen=True)
class BoundEntry:
    n: int
    k: int
    value: int
    source: str
    parents: tuple["BoundEntry", ...] = ()
    exact: bool = False
    raw: Optional[Fraction] = None  # set only when rounding changed the value

    @property
    def params(self) -> Params:
        return (self.n, self.k, self.value)

    def leaves(self) -> Iterator["BoundEntry"]:
        if not self.parents:
            yield self
        for p in self.parents:
            yield from p.leaves()

    def sources(self) -> set[str]:
        out = {self.source}
        for p in self.parents:
            out |= p.sources()
        return out


# -- seeds -------------------------------------------------------------------


def seed_exact(n: int, k: int) -> Optional[BoundEntry]:
    """Known exact values of K(n, k), or None."""
    t = 3 * k // 2
    if n < t + 2:
        return BoundEntry(n, k, 2 * n, "exact:2n", exact=True)
    if n == t + 2:
        if k % 2 == 0:
            return BoundEntry(n, k, 4 * k + 6, "exact:4k+6", exact=True)
        return BoundEntry(n, k, 4 * k + 4, "exact:4k+4", exact=True)
    if n == t + 3 and k % 2 == 1 and k >= 9:
        return BoundEntry(n, k, 4 * k + 8, "exact:4k+8", exact=True)
    return None


def spread3_ladder(n: int) -> int:
    """Exact length of the spread-3 codes grown from the T6/T7/T8 bases by tripling."""
    if n < 6:
        raise DomainError("spread-3 ladder starts at n = 6")
    base = {0: (16, 6), 1: (24, 7), 2: (32, 8)}[n % 3]
    return base[0] * 3 ** ((n - base[1]) // 3)


def _formula_candidates(n: int, k: int) -> list[tuple[str, Fraction | int]]:
    out: list[tuple[str, Fraction | int]] = []
    if k == 1:
        out.append(("formula:gray", 2**n))
    if k == 2:
        out.append(("formula:snake-77/256", Fraction(77 * 2**n, 256)))
    if k == 3 and n >= 6:
        out.append(("formula:spread3-ladder", spread3_ladder(n)))
    if k % 2 == 1 and 2 * n // (k + 1) >= 2:
        out.append(("formula:odd-k", (k + 1) * 2 ** (2 * n // (k + 1) - 1)))
    return out


FORMULA_NAMES = ("formula:gray", "formula:snake-77/256", "formula:spread3-ladder", "formula:odd-k")


def seed_formula(n: int, k: int) -> Optional[BoundEntry]:
    """Best non-asymptotic closed-form lower bound, or None."""
    best = None
    for name, raw in _formula_candidates(n, k):
        value = even_ceil(raw)
        if best is None or value > best.value:
            best = BoundEntry(n, k, value, name, raw=Fraction(raw) if value != raw else None)
    return best


def corpus_seed(entry: CorpusEntry) -> BoundEntry:
    if not has_spread(entry.code, entry.code.k):
        raise InconsistentBound(f"corpus code {entry.id} fails its labelled spread")
    n, k, N = entry.code.params
    return BoundEntry(n, k, N, f"corpus:{entry.id}")


# -- transformations ---------------------------------------------------------


@dataclass(frozen=True)
class Transformation:
    """A length/dimension rule ``(n, k, N) -> (n', k', N')``.

    ``rule`` returns None when the rule does not apply.  Binary rules take two
    parameter triples.
    """

    id: str
    description: str
    arity: int
    rule: Callable[..., Optional[tuple[int, int, int | Fraction]]]

    def apply(self, *params: Params) -> Optional[tuple[int, int, int | Fraction]]:
        if len(params) != self.arity:
            raise TypeError(f"{self.id} takes {self.arity} parameter triples")
        return self.rule(*params)


def _c1(p):
    n, k, N = p
    return (n + 1, k, N + 2 * (N // (2 * k)))


def _c2(p):
    n, k, N = p
    if k < 3:
        return None
    return (n + 2, k, N + 4 * (N // (2 * (k - 1))))


def _c3(p):
    n, k, N = p
    if k < 3 or k % 2 == 0:
        return None
    return (n + (k + 1) // 2, k, N + (k + 1) * (N // (k + 1)))


def _c4(p):
    n, k, N = p
    if k < 2 or k % 2:
        return None
    return (n + (k + 2) // 2, k, N + (k + 2) * (N // (k + 1)))


def _c5(p):
    # input is an (n+1, k+1) code
    m, j, N = p
    if j < 2 or m < 2:
        return None
    return (m - 1, j - 1, N - N // m)


def _c6(p1, p2):
    # p1: (n1, k-1) code with N1 divisible by k; p2: (n2, k) code
    n1, k1, N1 = p1
    n2, k, N2 = p2
    if k % 2 or k1 != k - 1 or not 2 <= n1 <= n2:
        return None
    if N1 < 2 * k or N2 < 2 * k or N1 % k:
        return None
    if k == 2:
        return (n1 + n2, k, Fraction(N1 * N2, k))
    return (n1 + n2 + 1, k, Fraction(N1 * (N2 + 2), k))


def _c7(p):
    n, k, N = p
    try:
        out = construct7_params(n, k, N)
    except TooShort:
        return None
    return (out["n"], out["k"], out["N"])


def _demote(p):
    n, k, N = p
    if k < 2:
        return None
    return (n, k - 1, N)


def _pad(p):
    n, k, N = p
    try:
        out = klee_padding_params(n, k, N)
    except TooShort:
        return None
    return (out["n"], out["k"], out["N"])


TRANSFORMATIONS: tuple[Transformation, ...] = (
    Transformation("C1", "(n,k,N) -> (n+1, k, N + 2*floor(N/2k))", 1, _c1),
    Transformation("C2", "(n,k,N) -> (n+2, k, N + 4*floor(N/(2(k-1)))), k >= 3", 1, _c2),
    Transformation("C3", "(n,k,N) -> (n+(k+1)/2, k, N + (k+1)*floor(N/(k+1))), k >= 3 odd", 1, _c3),
    Transformation("C4", "(n,k,N) -> (n+(k+2)/2, k, N + (k+2)*floor(N/(k+1))), k >= 2 even", 1, _c4),
    Transformation("C5", "(n+1,k+1,N) -> (n, k, N - floor(N/(n+1)))", 1, _c5),
    Transformation(
        "C6",
        "(n1,k-1,N1), (n2,k,N2) -> (n1+n2+1, k, N1(N2+2)/k); k=2: (n1+n2, 2, N1*N2/2); "
        "k even, 2 <= n1 <= n2, N1,N2 >= 2k, k | N1",
        2,
        _c6,
    ),
    Transformation("C7", "(n,k,N) -> (n+r, k+1, N + 2*ceil(N/(2(k+1)))), N >= 2(k+1)", 1, _c7),
    Transformation("demotion", "(n,k,N) -> (n, k-1, N)", 1, _demote),
)

PADDING = Transformation("pad", "(n,k,N) -> (n+1, k, 2(k+1)*ceil(N/(2(k+1)))), N > 2(k+1)^2", 1, _pad)

_BY_ID = {t.id: t for t in TRANSFORMATIONS + (PADDING,)}


def transformations() -> list[Transformation]:
    return list(TRANSFORMATIONS)


def derive(t: Transformation, *parents: BoundEntry) -> Optional[BoundEntry]:
    out = t.apply(*(p.params for p in parents))
    if out is None:
        return None
    n, k, raw = out
    value = even_ceil(raw)
    return BoundEntry(
        n, k, value, t.id, tuple(parents), raw=Fraction(raw) if value != raw else None
    )


# -- table -------------------------------------------------------------------


@dataclass
class BoundTable:
    n_range: tuple[int, int] = DEFAULT_N_RANGE
    k_range: tuple[int, int] = DEFAULT_K_RANGE
    entries: dict[tuple[int, int], BoundEntry] = field(default_factory=dict)
    rounds: int = 0

    def in_range(self, n: int, k: int) -> bool:
        return (
            self.n_range[0] <= n <= self.n_range[1]
            and self.k_range[0] <= k <= self.k_range[1]
        )

    def get(self, n: int, k: int) -> Optional[BoundEntry]:
        return self.entries.get((n, k))

    def __getitem__(self, key: tuple[int, int]) -> BoundEntry:
        try:
            return self.entries[key]
        except KeyError:
            raise NoEntry(f"no entry for K{key}") from None

    def __contains__(self, key) -> bool:
        return key in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def value(self, n: int, k: int) -> Optional[int]:
        e = self.entries.get((n, k))
        return None if e is None else e.value

    def ordered(self) -> list[BoundEntry]:
        """Entries in (k, n) lexicographic order."""
        return [self.entries[key] for key in sorted(self.entries, key=lambda nk: (nk[1], nk[0]))]

    def copy(self) -> "BoundTable":
        return BoundTable(self.n_range, self.k_range, dict(self.entries), self.rounds)

    def offer(self, entry: BoundEntry) -> bool:
        """Store ``entry`` if in range and strictly better; return whether stored."""
        if not self.in_range(entry.n, entry.k):
            return False
        _check_sound(entry)
        current = self.entries.get((entry.n, entry.k))
        if current is not None and entry.value <= current.value:
            return False
        if current is not None and current.exact:
            raise InconsistentBound(
                f"K({entry.n},{entry.k}) >= {entry.value} exceeds exact value {current.value}"
            )
        self.entries[(entry.n, entry.k)] = entry
        return True


def _check_sound(entry: BoundEntry) -> None:
    if entry.value > 2**entry.n:
        raise InconsistentBound(f"K({entry.n},{entry.k}) >= {entry.value} exceeds 2^n")
    ex = seed_exact(entry.n, entry.k)
    if ex is not None and entry.value > ex.value:
        raise InconsistentBound(
            f"K({entry.n},{entry.k}) >= {entry.value} via {entry.source} exceeds exact {ex.value}"
        )


def _check_range(n_range, k_range) -> None:
    if n_range[0] > n_range[1] or k_range[0] > k_range[1]:
        raise RangeTooSmall(f"empty grid n={n_range}, k={k_range}")


def seed_table(
    n_range: tuple[int, int] = DEFAULT_N_RANGE,
    k_range: tuple[int, int] = DEFAULT_K_RANGE,
    *,
    exact: bool = True,
    formulas: bool = True,
    codes: bool | list[CorpusEntry] = True,
) -> BoundTable:
    """Seed from exact values, closed-form bounds and verified corpus codes.

    Exact values win outright; otherwise corpus codes win ties against formulas
    because their provenance can be materialized.
    """
    _check_range(n_range, k_range)
    table = BoundTable(n_range, k_range)
    if codes:
        for ce in corpus() if codes is True else codes:
            table.offer(corpus_seed(ce))
    if formulas:
        for n in range(n_range[0], n_range[1] + 1):
            for k in range(k_range[0], k_range[1] + 1):
                e = seed_formula(n, k)
                if e is not None:
                    table.offer(e)
    if exact:
        for n in range(n_range[0], n_range[1] + 1):
            for k in range(k_range[0], k_range[1] + 1):
                e = seed_exact(n, k)
                if e is not None:
                    # an exact value always replaces an equal-valued seed
                    table.entries[(n, k)] = e
    return table


def _c6_first_operand(entry: BoundEntry, k: int) -> Optional[BoundEntry]:
    """``entry`` as a spread-(k-1) operand with length divisible by k, padding if needed."""
    if entry.value % k == 0:
        return entry
    return derive(PADDING, entry)


def _candidates(table: BoundTable, entry: BoundEntry, t: Transformation) -> Iterator[BoundEntry]:
    if t.arity == 1:
        out = derive(t, entry)
        if out is not None:
            yield out
        return
    # C6: the entry may serve as either operand
    n, k, _ = entry.params
    if (k + 1) % 2 == 0:
        first = _c6_first_operand(entry, k + 1)
        if first is not None:
            for other in table.ordered():
                if other.k == k + 1:
                    out = derive(t, first, other)
                    if out is not None:
                        yield out
    if k % 2 == 0:
        for other in table.ordered():
            if other.k == k - 1:
                first = _c6_first_operand(other, k)
                if first is not None:
                    out = derive(t, first, entry)
                    if out is not None:
                        yield out


def propagate(table: BoundTable, max_rounds: int = 10_000) -> BoundTable:
    """Apply every transformation to every entry until nothing improves.

    Each round scans entries in (k, n) order and tries C1..C7 then demotion on
    each, updating the working table in place.  ``rounds`` on the result counts
    the rounds that improved something.
    """
    _check_range(table.n_range, table.k_range)
    work = table.copy()
    work.rounds = 0
    while True:
        changed = 0
        for key in sorted(work.entries, key=lambda nk: (nk[1], nk[0])):
            for t in TRANSFORMATIONS:
                entry = work.entries[key]
                for cand in _candidates(work, entry, t):
                    changed += work.offer(cand)
        if not changed:
            break
        work.rounds += 1
        log.debug("round %d: %d improvements", work.rounds, changed)
        if work.rounds >= max_rounds:
            raise RuntimeError(f"no fixpoint after {max_rounds} rounds")
    return work


# -- replay, explain, materialize -------------------------------------------


def replay(entry: BoundEntry) -> int:
    """Recompute ``entry.value`` from its provenance tree alone."""
    src = entry.source
    if src.startswith("exact:"):
        ex = seed_exact(entry.n, entry.k)
        if ex is None or ex.source != src:
            raise InconsistentBound(f"{src} does not apply at ({entry.n},{entry.k})")
        return ex.value
    if src.startswith("formula:"):
        for name, raw in _formula_candidates(entry.n, entry.k):
            if name == src:
                return even_ceil(raw)
        raise InconsistentBound(f"{src} does not apply at ({entry.n},{entry.k})")
    if src.startswith("corpus:"):
        code = lookup(src.split(":", 1)[1]).code
        if (code.n, code.k) != (entry.n, entry.k):
            raise InconsistentBound(f"{src} has parameters {code.params}")
        return code.N
    t = _BY_ID[src]
    parents = [BoundEntry(p.n, p.k, replay(p), p.source) for p in entry.parents]
    out = derive(t, *parents)
    if out is None or (out.n, out.k) != (entry.n, entry.k):
        raise InconsistentBound(f"{src} does not reproduce ({entry.n},{entry.k})")
    return out.value


def _leaf_label(entry: BoundEntry) -> str:
    kind, _, name = entry.source.partition(":")
    return f"{kind} {name}"


def explain(table: BoundTable | BoundEntry, n: Optional[int] = None, k: Optional[int] = None) -> str:
    """One-line derivation chain, e.g. ``C1 ← corpus appendixB-(22,7,234)``."""
    if isinstance(table, BoundTable):
        entry = table.get(n, k)
        if entry is None:
            raise NoEntry(f"no entry for K({n},{k})")
    else:
        entry = table

    def render(e: BoundEntry) -> str:
        if not e.parents:
            return _leaf_label(e)
        if len(e.parents) == 1:
            return f"{e.source} ← {render(e.parents[0])}"
        return f"{e.source} ← " + " + ".join(f"[{render(p)}]" for p in e.parents)

    return render(entry)


def explain_tree(entry: BoundEntry, indent: str = "") -> str:
    """Multi-line provenance tree with the parameters at every node."""
    head = f"{indent}K({entry.n},{entry.k}) >= {entry.value}  [{entry.source}]"
    if entry.raw is not None:
        head += f" (raw {entry.raw})"
    lines = [head]
    for p in entry.parents:
        lines.append(explain_tree(p, indent + "  "))
    return "\n".join(lines)


MATERIALIZABLE = {"C7", "pad", "demotion"}


def is_materializable(entry: BoundEntry) -> bool:
    if not entry.parents:
        return entry.source.startswith("corpus:")
    return entry.source in MATERIALIZABLE and all(is_materializable(p) for p in entry.parents)


def materialize(entry: BoundEntry) -> Optional[CircuitCode]:
    """Build an actual code for entries derived only from corpus codes and sequence rewrites."""
    if not is_materializable(entry):
        return None
    if not entry.parents:
        return lookup(entry.source.split(":", 1)[1]).code
    (parent,) = entry.parents
    base = materialize(parent)
    if entry.source == "demotion":
        return base.with_spread(entry.k)
    if entry.source == "C7":
        return construct7(base).output
    return klee_padding(base).output


# -- spread-4 bounds ---------------------------------------------------------


def _iroot_ceil(x: int, e: int) -> int:
    """Smallest integer v >= 0 with v**e >= x."""
    if x <= 0:
        return 0
    lo, hi = 0, 1
    while hi**e < x:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**e >= x:
            hi = mid
        else:
            lo = mid + 1
    return lo


def theorem2_bound(n: int) -> Optional[int]:
    """``40 * 3^((floor(0.6535 n) - 8) / 3)`` rounded up to even; None when the exponent is negative.

    Computed without floats: for exponent ``a + b/3`` the ceiling of
    ``40 * 3^a * 3^(b/3)`` is an exact integer cube root.
    """
    m = 6535 * n // 10000
    if m < 8:
        return None
    a, b = divmod(m - 8, 3)
    base = 40 * 3**a
    if b == 0:
        return even_ceil(base)
    return even_ceil(_iroot_ceil(base**3 * 3**b, 3))


def singleton_k4_baseline(n: int) -> int:
    """``6 * 2^(floor(2n/6) - 1)``, the bound inherited from spread 5."""
    e = 2 * n // 6
    if e < 2:
        raise DomainError(f"baseline needs floor(2n/6) >= 2, got n={n}")
    return 6 * 2 ** (e - 1)


def k4_crossover(limit: int = 200) -> Optional[int]:
    """Smallest n0 such that the new spread-4 bound beats the baseline for all n0 <= n <= limit."""
    n0 = None
    for n in range(limit, 5, -1):
        t = theorem2_bound(n)
        if t is None or t <= singleton_k4_baseline(n):
            break
        n0 = n
    return n0
