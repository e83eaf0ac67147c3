"""Exact extremal search for B_h[g] sets and the greedy integer generator.

``exhaustive_max`` is a depth-first branch and bound over subsets in
canonical order.  Each node keeps, for t = 0..h, the table of t-fold
multiset sums of the partial set, so testing a candidate costs one pass over
the (h-j)-fold tables rather than a full re-enumeration.

Translations preserve the B_h[g] property, so the search only visits sets
whose smallest element is a translation-normal root: the identity for a
product (or field) group, and any element with first coordinate 0 for a box.

The tree is cut into top-level branches (the first two elements).  Every
branch starts from the same incumbent, the size of the first-fit greedy set,
and never sees results from other branches.  Branch outcomes are therefore
independent of scheduling, which makes ``best_size``, ``exhaustive`` and
``nodes_explored`` identical for any number of worker processes.
"""

from __future__ import annotations

import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Callable, Dict, List, Optional, Tuple

from .constructions import ConstructionCertificate, base_digits
from .groups import BhgSet, GroupElement, GroupSpec, group_add, group_scale
from .verifier import is_bhg

DEFAULT_NODE_BUDGET = 10**7
_ADD_TABLE_LIMIT = 1024

Tables = List[Dict]


@dataclass(frozen=True)
class SearchResult:
    spec: GroupSpec
    h: int
    g: int
    best_size: int
    witness: BhgSet
    exhaustive: bool
    nodes_explored: int
    elapsed: float
    size_bound: int

    def summary(self) -> dict:
        """Deterministic numeric content (timing excluded)."""
        return {
            "group": str(self.spec),
            "h": self.h,
            "g": self.g,
            "best_size": self.best_size,
            "exhaustive": self.exhaustive,
            "nodes_explored": self.nodes_explored,
            "size_bound": self.size_bound,
        }


class _Encoding:
    """Group elements as hashable codes with a fast addition."""

    def __init__(self, spec: GroupSpec, h: int):
        self.spec = spec
        self.elements = list(spec.elements())
        if spec.kind == "box":
            # digits of any h-fold sum stay below this radix, so integer
            # addition of the packed codes is exact and injective
            radix = h * (spec.side - 1) + 1
            self.codes = [_pack(x, radix) for x in self.elements]
            self.zero = 0
            self.add: Callable = int.__add__
            self.scale = lambda c, j: c * j
        elif spec.kind == "product" and len(self.elements) <= _ADD_TABLE_LIMIT:
            index = {x: i for i, x in enumerate(self.elements)}
            table = [[index[group_add(spec, x, y)] for y in self.elements] for x in self.elements]
            self.codes = list(range(len(self.elements)))
            self.zero = 0
            self.add = lambda a, b: table[a][b]
            self.scale = lambda c, j: index[group_scale(spec, self.elements[c], j)]
        else:
            self.codes = list(self.elements)
            self.zero = spec.zero()
            self.add = lambda a, b: group_add(spec, a, b)
            self.scale = lambda c, j: group_scale(spec, c, j)

    def roots(self) -> List[int]:
        """Positions allowed as the smallest element of a normalized set."""
        if self.spec.kind == "box":
            return [i for i, x in enumerate(self.elements) if x[0] == 0]
        return [0]


def _pack(x: GroupElement, radix: int) -> int:
    v = 0
    for c in x:
        v = v * radix + c
    return v


def sum_space_size(spec: GroupSpec, h: int) -> int:
    """Number of group elements an h-fold sum can land on."""
    if spec.kind == "box":
        return (h * (spec.side - 1) + 1) ** spec.dim
    return spec.order


def counting_bound(spec: GroupSpec, h: int, g: int) -> int:
    """Largest k with C(k + h - 1, h) <= g * (number of possible sums)."""
    limit = g * sum_space_size(spec, h)
    k = 0
    while k < spec.support_size and comb(k + h, h) <= limit:
        k += 1
    return k


class _Searcher:
    def __init__(self, spec: GroupSpec, h: int, g: int):
        self.enc = _Encoding(spec, h)
        self.h = h
        self.g = g
        codes = self.enc.codes
        self.multiples = [[None] + [self.enc.scale(c, j) for j in range(1, h + 1)] for c in codes]

    def empty(self) -> Tables:
        return [{self.enc.zero: 1}] + [{} for _ in range(self.h)]

    def feasible(self, i: int, tables: Tables) -> bool:
        h, g, add = self.h, self.g, self.enc.add
        top = tables[h]
        mult = self.multiples[i]
        delta: Dict = defaultdict(int)
        for j in range(1, h + 1):
            jx = mult[j]
            for s, c in tables[h - j].items():
                key = add(s, jx)
                delta[key] += c
                if top.get(key, 0) + delta[key] > g:
                    return False
        return True

    def extend(self, i: int, tables: Tables) -> Tables:
        add = self.enc.add
        mult = self.multiples[i]
        new = [dict(t) for t in tables]
        for t in range(1, self.h + 1):
            target = new[t]
            for j in range(1, t + 1):
                jx = mult[j]
                for s, c in tables[t - j].items():
                    key = add(s, jx)
                    target[key] = target.get(key, 0) + c
        return new

    def greedy(self) -> List[int]:
        """First-fit in canonical order."""
        chosen, tables = [], self.empty()
        for i in range(len(self.enc.codes)):
            if self.feasible(i, tables):
                chosen.append(i)
                tables = self.extend(i, tables)
        return chosen

    def branches(self) -> List[Tuple[int, int]]:
        out = []
        for r in self.enc.roots():
            tables = self.extend(r, self.empty())
            for e in range(r + 1, len(self.enc.codes)):
                if self.feasible(e, tables):
                    out.append((r, e))
        return out

    def run_branch(self, branch: Tuple[int, int], incumbent: int, cap: int, size_bound: int):
        """Search every set whose two smallest elements are ``branch``.

        Returns (best size found above ``incumbent`` or 0, witness positions,
        nodes, capped).
        """
        best = [incumbent]
        witness: List[Optional[List[int]]] = [None]
        nodes = [0]

        class _Capped(Exception):
            pass

        def dfs(chosen: List[int], tables: Tables, cands: List[int]) -> bool:
            nodes[0] += 1
            if nodes[0] > cap:
                raise _Capped
            k = len(chosen)
            if k > best[0]:
                best[0] = k
                witness[0] = list(chosen)
                if k >= size_bound:
                    return True
            feas = [c for c in cands if self.feasible(c, tables)]
            for idx, c in enumerate(feas):
                if k + len(feas) - idx <= best[0]:
                    break
                if dfs(chosen + [c], self.extend(c, tables), feas[idx + 1:]):
                    return True
            return False

        r, e = branch
        tables = self.extend(e, self.extend(r, self.empty()))
        capped = False
        try:
            dfs([r, e], tables, list(range(e + 1, len(self.enc.codes))))
        except _Capped:
            capped = True
        found = best[0] if witness[0] is not None else 0
        return found, witness[0], min(nodes[0], cap), capped


@lru_cache(maxsize=8)
def _searcher(spec: GroupSpec, h: int, g: int) -> _Searcher:
    return _Searcher(spec, h, g)


def _branch_worker(args):
    spec, h, g, branch, incumbent, cap, size_bound = args
    return _searcher(spec, h, g).run_branch(branch, incumbent, cap, size_bound)


def exhaustive_max(spec: GroupSpec, h: int = 2, g: int = 1, budget: int = DEFAULT_NODE_BUDGET,
                   threads: int = 1) -> SearchResult:
    """Largest B_h[g] set in ``spec`` (a box means F_h^d(N, g)).

    ``budget`` is a node limit, split evenly over the top-level branches.
    If any branch runs out, ``exhaustive`` is False and ``best_size`` is
    only a lower bound.
    """
    if h < 2 or g < 1:
        raise ValueError("need h >= 2 and g >= 1")
    start = time.perf_counter()
    searcher = _searcher(spec, h, g)
    size_bound = counting_bound(spec, h, g)
    seed = searcher.greedy()
    best, best_pos = len(seed), seed
    nodes, exhaustive = 0, True
    if best < size_bound:
        branches = searcher.branches()
        cap = max(1, -(-budget // max(1, len(branches))))
        jobs = [(spec, h, g, b, len(seed), cap, size_bound) for b in branches]
        if threads > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(_branch_worker, jobs, chunksize=max(1, len(jobs) // (4 * threads))))
        else:
            results = [searcher.run_branch(b, len(seed), cap, size_bound) for b in branches]
        for found, pos, n, capped in results:
            nodes += n
            exhaustive &= not capped
            if found > best:
                best, best_pos = found, pos
    elements = searcher.enc.elements
    cert = ConstructionCertificate(
        "exhaustive_max",
        {"exhaustive": int(exhaustive), "nodes": nodes},
        guaranteed_h=h,
        guaranteed_g=g,
    )
    witness = BhgSet(spec, tuple(elements[i] for i in best_pos), h=h, g=g, certificate=cert)
    return SearchResult(spec, h, g, best, witness, exhaustive, nodes, time.perf_counter() - start, size_bound)


def greedy_bhg(h: int, g: int, count: int) -> BhgSet:
    """First ``count`` terms of the greedy B_h[g] sequence starting at 1."""
    if count < 1:
        raise ValueError("count must be >= 1")
    values: List[int] = []
    tables: Tables = [{0: 1}] + [{} for _ in range(h)]
    x = 0
    while len(values) < count:
        x += 1
        if _int_feasible(x, tables, h, g):
            values.append(x)
            tables = _int_extend(x, tables, h)
    cert = ConstructionCertificate("greedy", {"count": count}, guaranteed_h=h, guaranteed_g=g)
    return BhgSet.integers(values, h=h, g=g, certificate=cert)


def _int_feasible(x: int, tables: Tables, h: int, g: int) -> bool:
    top = tables[h]
    delta: Dict[int, int] = defaultdict(int)
    for j in range(1, h + 1):
        for s, c in tables[h - j].items():
            key = s + j * x
            delta[key] += c
            if top.get(key, 0) + delta[key] > g:
                return False
    return True


def _int_extend(x: int, tables: Tables, h: int) -> Tables:
    new = [dict(t) for t in tables]
    for t in range(1, h + 1):
        for j in range(1, t + 1):
            for s, c in tables[t - j].items():
                new[t][s + j * x] = new[t].get(s + j * x, 0) + c
    return new


@dataclass(frozen=True)
class GapReport:
    side: int
    dim: int
    h: int
    g: int
    one_dim: SearchResult
    lifted: BhgSet
    multi_dim: SearchResult

    @property
    def gap(self) -> int:
        return self.multi_dim.best_size - self.one_dim.best_size

    @property
    def holds(self) -> bool:
        return self.one_dim.best_size <= self.multi_dim.best_size

    def summary(self) -> dict:
        return {
            "N": self.side,
            "d": self.dim,
            "h": self.h,
            "g": self.g,
            "F_1d": self.one_dim.best_size,
            "F_dd": self.multi_dim.best_size,
            "gap": self.gap,
            "exhaustive": self.one_dim.exhaustive and self.multi_dim.exhaustive,
            "holds": self.holds,
        }


def bound_gap_report(side: int, dim: int, h: int = 2, g: int = 1,
                     budget: int = DEFAULT_NODE_BUDGET, threads: int = 1) -> GapReport:
    """Compare the 1-d maximum in [0, N^d - 1] with the d-dim box maximum.

    The 1-d witness is lifted to base-N digits and re-verified in the box.
    """
    one = exhaustive_max(GroupSpec.box(1, side**dim), h, g, budget, threads)
    lifted = base_digits(one.witness, side, dim)
    if not is_bhg(lifted, h, g):
        raise AssertionError("lifted witness is not B_h[g]; digit lifting is broken")
    multi = exhaustive_max(GroupSpec.box(dim, side), h, g, budget, threads)
    report = GapReport(side, dim, h, g, one, lifted, multi)
    if one.exhaustive and multi.exhaustive and not report.holds:
        raise AssertionError(f"F_h(N^d) = {one.best_size} exceeds F_h^d(N) = {multi.best_size}")
    return report
