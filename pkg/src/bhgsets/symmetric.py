"""Power sums, elementary symmetric values and root-multiset recovery.

Together these show why the moment curve is a B_h set: the power sums of a
multiset of size h determine its elementary symmetric values (Newton), and
those determine the multiset as the roots of one monic polynomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import List, Optional, Sequence, Tuple

from .errors import CharacteristicError
from .finite_field import FieldElement, FieldSpec


@dataclass(frozen=True)
class SymmetricProfile:
    spec: FieldSpec
    sigma: Tuple[FieldElement, ...]
    power: Tuple[FieldElement, ...]

    @property
    def k(self) -> int:
        return len(self.sigma)


def power_sums(spec: FieldSpec, values: Sequence[FieldElement], k: int) -> Tuple[FieldElement, ...]:
    """``(p_1, ..., p_k)`` with ``p_j = sum(x**j for x in values)``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not values:
        raise ValueError("values must be nonempty")
    out = []
    powers = list(values)
    for _ in range(k):
        out.append(reduce(spec.add, powers, spec.zero()))
        powers = [spec.mul(a, x) for a, x in zip(powers, values)]
    return tuple(out)


def elementary_symmetric(spec: FieldSpec, values: Sequence[FieldElement], k: int) -> Tuple[FieldElement, ...]:
    """``(sigma_1, ..., sigma_k)`` expanded directly over index subsets."""
    out = []
    for j in range(1, k + 1):
        total = spec.zero()
        for combo in itertools.combinations(values, j):
            total = spec.add(total, reduce(spec.mul, combo, spec.one()))
        out.append(total)
    return tuple(out)


def sigma_from_power_sums(spec: FieldSpec, power: Sequence[FieldElement]) -> Tuple[FieldElement, ...]:
    """Newton's identities, solved for sigma_k one step at a time.

    Raises ``CharacteristicError`` as soon as some ``k <= len(power)`` is zero
    in the field, i.e. when the characteristic does not exceed ``len(power)``.
    """
    sigma: List[FieldElement] = [spec.one()]
    for k in range(1, len(power) + 1):
        if k % spec.p == 0:
            raise CharacteristicError(
                f"cannot divide by {k} in characteristic {spec.p}; need p > {len(power)}"
            )
        acc = spec.zero()
        for i in range(1, k + 1):
            term = spec.mul(sigma[k - i], power[i - 1])
            acc = spec.add(acc, term) if i % 2 else spec.sub(acc, term)
        sigma.append(spec.mul(acc, spec.inv(spec.scalar(k))))
    return tuple(sigma[1:])


def symmetric_profile(spec: FieldSpec, values: Sequence[FieldElement], k: int) -> SymmetricProfile:
    power = power_sums(spec, values, k)
    return SymmetricProfile(spec, sigma_from_power_sums(spec, power), power)


def polynomial_from_sigma(spec: FieldSpec, sigma: Sequence[FieldElement]) -> List[FieldElement]:
    """High-to-low coefficients of prod(lambda - x_j): 1, -s1, s2, -s3, ..."""
    coeffs = [spec.one()]
    for k, s in enumerate(sigma, start=1):
        coeffs.append(spec.neg(s) if k % 2 else s)
    return coeffs


def _divide_linear(spec: FieldSpec, coeffs: List[FieldElement], r: FieldElement):
    """Synthetic division by (lambda - r); returns (quotient, remainder)."""
    out = [coeffs[0]]
    for c in coeffs[1:]:
        out.append(spec.add(c, spec.mul(out[-1], r)))
    return out[:-1], out[-1]


def roots_from_sigma(spec: FieldSpec, sigma: Sequence[FieldElement]) -> Optional[Tuple[FieldElement, ...]]:
    """Root multiset (sorted) of the monic polynomial with these sigma values.

    Returns ``None`` when the polynomial does not split over the field.
    """
    if not sigma:
        raise ValueError("need at least one symmetric value")
    poly = polynomial_from_sigma(spec, sigma)
    zero = spec.zero()
    roots: List[FieldElement] = []
    for r in spec.elements():
        while len(poly) > 1:
            quotient, rem = _divide_linear(spec, poly, r)
            if rem != zero:
                break
            roots.append(r)
            poly = quotient
    if len(roots) != len(sigma):
        return None
    return tuple(roots)


def power_sum_collision(spec: FieldSpec, size: int) -> Optional[Tuple[Tuple[FieldElement, ...], Tuple[FieldElement, ...]]]:
    """Two distinct multisets of ``size`` elements with equal power sums
    ``p_1..p_size``, or ``None`` if the power-sum map is injective."""
    seen = {}
    for ms in itertools.combinations_with_replacement(list(spec.elements()), size):
        key = power_sums(spec, ms, size)
        if key in seen:
            return seen[key], ms
        seen[key] = ms
    return None
