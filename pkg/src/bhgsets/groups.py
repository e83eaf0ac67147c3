"""Ambient groups for B_h[g] sets.

Three kinds of group are supported:

* ``product``: Z_{m_1} x ... x Z_{m_d}, sums reduced componentwise;
* ``box``: elements drawn from [0, N-1]^d but added in Z^d without reduction;
* ``field``: (F^d, +) for a finite field F, elements are d-tuples of
  ``FieldElement`` (the un-vectorized moment-curve ambient group).

Elements are plain tuples.  Sets are stored sorted and duplicate-free.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import reduce
from typing import Any, Iterable, Iterator, Optional, Sequence, Tuple

from .finite_field import FieldSpec, format_modulus

GroupElement = Tuple[Any, ...]


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    moduli: Tuple[int, ...] = ()
    dim: int = 0
    side: int = 0
    field: Optional[FieldSpec] = None

    def __post_init__(self) -> None:
        if self.kind == "product":
            if not self.moduli or any(m < 2 for m in self.moduli):
                raise ValueError("product moduli must be >= 2 and nonempty")
            object.__setattr__(self, "dim", len(self.moduli))
        elif self.kind == "box":
            if self.dim < 1 or self.side < 2:
                raise ValueError("box needs dimension >= 1 and side >= 2")
        elif self.kind == "field":
            if self.field is None or self.dim < 1:
                raise ValueError("field group needs a FieldSpec and dimension >= 1")
        else:
            raise ValueError(f"unknown group kind {self.kind!r}")

    @classmethod
    def product(cls, *moduli: int) -> "GroupSpec":
        return cls("product", moduli=tuple(int(m) for m in moduli))

    @classmethod
    def box(cls, dim: int, side: int) -> "GroupSpec":
        return cls("box", dim=int(dim), side=int(side))

    @classmethod
    def field_power(cls, spec: FieldSpec, dim: int) -> "GroupSpec":
        return cls("field", dim=int(dim), field=spec)

    @property
    def d(self) -> int:
        return self.dim

    @property
    def order(self) -> Optional[int]:
        """Group order; ``None`` for a box (sums live in Z^d)."""
        if self.kind == "product":
            return reduce(lambda a, b: a * b, self.moduli, 1)
        if self.kind == "field":
            return self.field.q**self.dim
        return None

    @property
    def support_size(self) -> int:
        """Number of candidate elements (the box volume for a box)."""
        if self.kind == "box":
            return self.side**self.dim
        return self.order

    def elements(self) -> Iterator[GroupElement]:
        """Candidate elements in canonical (lexicographic) order."""
        if self.kind == "product":
            return itertools.product(*(range(m) for m in self.moduli))
        if self.kind == "box":
            return itertools.product(range(self.side), repeat=self.dim)
        return itertools.product(list(self.field.elements()), repeat=self.dim)

    def zero(self) -> GroupElement:
        if self.kind == "field":
            return (self.field.zero(),) * self.dim
        return (0,) * self.dim

    def contains(self, x: GroupElement) -> bool:
        if not isinstance(x, tuple) or len(x) != self.dim:
            return False
        if self.kind == "product":
            return all(isinstance(c, int) and 0 <= c < m for c, m in zip(x, self.moduli))
        if self.kind == "box":
            return all(isinstance(c, int) and 0 <= c < self.side for c in x)
        try:
            for c in x:
                self.field.check(c)
        except (ValueError, AttributeError, TypeError):
            return False
        return True

    def __str__(self) -> str:
        if self.kind == "product":
            return "product:" + ",".join(map(str, self.moduli))
        if self.kind == "box":
            return f"box:{self.dim},{self.side}"
        f = self.field
        tail = ",".join(map(str, f.modulus))
        return f"field:p={f.p};n={f.n};modulus={tail};dim={self.dim}"

    def describe(self) -> str:
        """Human-readable name, e.g. ``Z_16 x Z_16``."""
        if self.kind == "product":
            return " x ".join(f"Z_{m}" for m in self.moduli)
        if self.kind == "box":
            return f"[0,{self.side - 1}]^{self.dim} in Z^{self.dim}"
        return f"({self.field})^{self.dim} mod {format_modulus(self.field.modulus)}"

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Inverse of ``str``: ``product:8,8``, ``box:2,6`` or ``field:p=..;..``."""
        kind, _, rest = text.strip().partition(":")
        try:
            if kind == "product":
                return cls.product(*(int(v) for v in rest.split(",")))
            if kind == "box":
                d, n = (int(v) for v in rest.split(","))
                return cls.box(d, n)
            if kind == "field":
                kv = dict(item.split("=", 1) for item in rest.split(";"))
                tail = tuple(int(v) for v in kv["modulus"].split(",")) if kv.get("modulus") else ()
                spec = FieldSpec(int(kv["p"]), int(kv.get("n", 1)), tail)
                return cls.field_power(spec, int(kv["dim"]))
        except (KeyError, ValueError) as exc:
            raise ValueError(f"bad group descriptor {text!r}: {exc}") from None
        raise ValueError(f"bad group descriptor {text!r}")


def _check_dims(spec: GroupSpec, *xs: GroupElement) -> None:
    for x in xs:
        if len(x) != spec.dim:
            raise ValueError(f"element {x} has dimension {len(x)}, group has {spec.dim}")


def group_add(spec: GroupSpec, x: GroupElement, y: GroupElement) -> GroupElement:
    """Product: componentwise mod m_i.  Box: plain integer sum, unreduced."""
    _check_dims(spec, x, y)
    if spec.kind == "product":
        return tuple((a + b) % m for a, b, m in zip(x, y, spec.moduli))
    if spec.kind == "box":
        return tuple(a + b for a, b in zip(x, y))
    f = spec.field
    return tuple(f.add(a, b) for a, b in zip(x, y))


def group_neg(spec: GroupSpec, x: GroupElement) -> GroupElement:
    if spec.kind == "product":
        return tuple(-a % m for a, m in zip(x, spec.moduli))
    if spec.kind == "box":
        return tuple(-a for a in x)
    return tuple(spec.field.neg(a) for a in x)


def group_scale(spec: GroupSpec, x: GroupElement, k: int) -> GroupElement:
    """``x`` added to itself ``k`` times (``k >= 0``)."""
    if spec.kind == "product":
        return tuple(a * k % m for a, m in zip(x, spec.moduli))
    if spec.kind == "box":
        return tuple(a * k for a in x)
    f = spec.field
    return tuple(f.mul(f.scalar(k), a) for a in x)


def canonical_sum_key(spec: GroupSpec, summands: Sequence[GroupElement]) -> GroupElement:
    """Sum of a multiset of group elements; the counting key of the oracle."""
    if not summands:
        raise ValueError("empty multiset has no sum key")
    _check_dims(spec, *summands)
    if spec.kind == "field":
        return reduce(lambda a, b: group_add(spec, a, b), summands)
    totals = tuple(map(sum, zip(*summands)))
    if spec.kind == "product":
        return tuple(t % m for t, m in zip(totals, spec.moduli))
    return totals


@dataclass(frozen=True)
class BhgSet:
    """A finite subset of a group with its summand count and claimed g.

    ``g`` is ``None`` when no bound is claimed.  ``certificate`` records the
    construction that produced the set, if any.
    """

    spec: GroupSpec
    elements: Tuple[GroupElement, ...]
    h: int = 2
    g: Optional[int] = None
    certificate: Any = dc_field(default=None)

    def __post_init__(self) -> None:
        elems = tuple(sorted(set(tuple(x) for x in self.elements)))
        for x in elems:
            if not self.spec.contains(x):
                raise ValueError(f"element {x} is not valid for {self.spec}")
        if self.h < 2:
            raise ValueError("h must be >= 2")
        if self.g is not None and self.g < 1:
            raise ValueError("g must be >= 1")
        object.__setattr__(self, "elements", elems)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in set(self.elements)

    @classmethod
    def integers(cls, values: Iterable[int], spec: Optional[GroupSpec] = None, **kw: Any) -> "BhgSet":
        """One-dimensional set; the default ambient group is the smallest box."""
        vals = sorted(set(int(v) for v in values))
        if spec is None:
            spec = GroupSpec.box(1, max(2, (vals[-1] + 1) if vals else 2))
        return cls(spec, tuple((v,) for v in vals), **kw)

    def ints(self) -> Tuple[int, ...]:
        """Elements of a one-dimensional integer set as bare ints."""
        if self.spec.dim != 1 or self.spec.kind == "field":
            raise ValueError("not a one-dimensional integer set")
        return tuple(x[0] for x in self.elements)
