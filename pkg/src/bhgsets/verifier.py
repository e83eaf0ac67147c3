"""Brute-force representation counting for B_h[g] sets.

A representation of ``x`` is a multiset of ``h`` elements of the set (with
repetition allowed) summing to ``x``; order of summands does not matter.
The oracle enumerates every such multiset exactly, or refuses up front.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded
from .groups import BhgSet, GroupElement, GroupSpec, canonical_sum_key

DEFAULT_BUDGET = 10**8
CONVENTION = "multiset-repetition"

Representation = Tuple[GroupElement, ...]


@dataclass(frozen=True)
class RepProfile:
    spec: GroupSpec
    h: int
    counts: Dict[GroupElement, int]
    max_count: int
    # (sum, representations) for the smallest sum attaining max_count > 1
    witness: Optional[Tuple[GroupElement, Tuple[Representation, ...]]] = None

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class BhgCheck:
    ok: bool
    max_count: int
    g: int
    witness: Optional[Tuple[GroupElement, Tuple[Representation, ...]]] = None

    def __bool__(self) -> bool:
        return self.ok


def _summer(spec: GroupSpec):
    if spec.kind == "field":
        return lambda combo: canonical_sum_key(spec, combo)
    if spec.kind == "box":
        return lambda combo: tuple(map(sum, zip(*combo)))
    moduli = spec.moduli
    return lambda combo: tuple(t % m for t, m in zip(map(sum, zip(*combo)), moduli))


def _count_chunk(args) -> Counter:
    spec, elements, h, starts = args
    key = _summer(spec)
    counts: Counter = Counter()
    for i in starts:
        head = (elements[i],)
        for rest in itertools.combinations_with_replacement(elements[i:], h - 1):
            counts[key(head + rest)] += 1
    return counts


def multiset_count(n: int, h: int) -> int:
    """Number of size-h multisets from n elements: C(n + h - 1, h)."""
    return comb(n + h - 1, h) if n else 0


def representations(bset: BhgSet, h: int, target: GroupElement) -> List[Representation]:
    """All multisets (sorted tuples, colex-free canonical order) summing to ``target``."""
    key = _summer(bset.spec)
    return [c for c in itertools.combinations_with_replacement(bset.elements, h) if key(c) == target]


def rep_profile(bset: BhgSet, h: Optional[int] = None, budget: int = DEFAULT_BUDGET, threads: int = 1) -> RepProfile:
    """Count representations of every realized h-fold sum.

    Work is split by the smallest summand; with ``threads > 1`` the chunks
    run in worker processes and the partial tables are summed, which gives
    the same profile as a single-threaded run.
    """
    h = bset.h if h is None else h
    if h < 2:
        raise ValueError("h must be >= 2")
    elements = bset.elements
    required = multiset_count(len(elements), h)
    if required > budget:
        raise BudgetExceeded(required, budget)
    n = len(elements)
    if threads > 1 and n > 1:
        chunks = [(bset.spec, elements, h, range(t, n, threads)) for t in range(threads)]
        counts: Counter = Counter()
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_count_chunk, chunks):
                counts.update(part)
    else:
        counts = _count_chunk((bset.spec, elements, h, range(n)))
    max_count = max(counts.values(), default=0)
    witness = None
    if max_count > 1:
        target = min(s for s, c in counts.items() if c == max_count)
        witness = (target, tuple(representations(bset, h, target)))
    return RepProfile(bset.spec, h, dict(counts), max_count, witness)


def min_g(bset: BhgSet, h: Optional[int] = None, budget: int = DEFAULT_BUDGET, threads: int = 1) -> int:
    """Least g for which the set is B_h[g]."""
    return rep_profile(bset, h, budget, threads).max_count


def is_bhg(bset: BhgSet, h: Optional[int] = None, g: Optional[int] = None,
           budget: int = DEFAULT_BUDGET, threads: int = 1) -> BhgCheck:
    """Decide B_h[g]; on failure the witness holds g + 1 representations."""
    g = bset.g if g is None else g
    if g is None or g < 1:
        raise ValueError("a bound g >= 1 is required")
    prof = rep_profile(bset, h, budget, threads)
    if prof.max_count <= g:
        return BhgCheck(True, prof.max_count, g)
    target, reps = prof.witness
    return BhgCheck(False, prof.max_count, g, (target, reps[: g + 1]))


def format_representation(rep: Sequence[GroupElement], fmt=None) -> str:
    fmt = fmt or _format_plain
    return "+".join(fmt(x) for x in rep)


def _format_plain(x: GroupElement) -> str:
    return str(x[0]) if len(x) == 1 else "(" + ",".join(map(str, x)) + ")"
