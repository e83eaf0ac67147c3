"""Exact arithmetic in GF(p) and GF(p^n) for desk-scale fields.

Elements are coefficient tuples over Z_p stored high-to-low, so the tuple
``(a_{n-1}, ..., a_1, a_0)`` stands for ``a_0 + a_1 t + ... + a_{n-1} t^{n-1}``
where ``t`` is a root of the defining modulus.  The modulus is monic of
degree ``n`` and is stored as its tail ``(c_{n-1}, ..., c_0)``.

Reading a coefficient tuple as a base-p integer gives the canonical element
order used everywhere (``index``/``from_index``).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple, Union

from .errors import BudgetExceeded

DEFAULT_FIELD_BUDGET = 10**6

Coeffs = Tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> List[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> Tuple[int, int]:
    """Split ``q = p^n`` into ``(p, n)``; raise ``ValueError`` otherwise."""
    factors = prime_factors(q) if q > 1 else []
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = factors[0]
    n = 0
    while q > 1:
        q //= p
        n += 1
    return p, n


# -- polynomial helpers over Z_p, coefficient lists low-to-high -------------

def _poly_mod(num: List[int], den: List[int], p: int) -> List[int]:
    """Remainder of ``num`` by monic ``den`` (both low-to-high)."""
    num = list(num)
    dd = len(den) - 1
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k] % p
        if c:
            for i in range(dd + 1):
                num[k - dd + i] = (num[k - dd + i] - c * den[i]) % p
    return [c % p for c in num[:dd]]


def _monic_polys(p: int, degree: int) -> Iterator[List[int]]:
    """All monic polynomials of ``degree`` (low-to-high lists)."""
    for tail in itertools.product(range(p), repeat=degree):
        yield list(reversed(tail)) + [1]


def is_irreducible(p: int, tail: Sequence[int]) -> bool:
    """Full factor scan: no monic factor of degree 1..n//2."""
    n = len(tail)
    poly = list(reversed(tail)) + [1]
    for k in range(1, n // 2 + 1):
        for fac in _monic_polys(p, k):
            if not any(_poly_mod(poly, fac, p)):
                return False
    return True


def find_irreducible(p: int, n: int, budget: int = DEFAULT_FIELD_BUDGET) -> Coeffs:
    """Lexicographically smallest monic irreducible tail ``(c_{n-1}, ..., c_0)``.

    ``n = 1`` returns ``(0,)``, the polynomial ``x``.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if n < 1:
        raise ValueError("degree must be >= 1")
    if p**n > budget:
        raise BudgetExceeded(p**n, budget, what="field size")
    for tail in itertools.product(range(p), repeat=n):
        if is_irreducible(p, tail):
            return tuple(tail)
    raise AssertionError("no irreducible polynomial found")  # impossible


@dataclass(frozen=True, order=True)
class FieldElement:
    coeffs: Coeffs

    def __repr__(self) -> str:
        return f"FieldElement({format_coeffs(self.coeffs)})"


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^n) defined by a monic irreducible modulus.

    ``modulus`` is the tail ``(c_{n-1}, ..., c_0)``; the full monic form
    ``(1, c_{n-1}, ..., c_0)`` is also accepted.  Empty means the smallest
    irreducible polynomial.
    """

    p: int
    n: int = 1
    modulus: Coeffs = ()

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.n < 1:
            raise ValueError("degree must be >= 1")
        mod = tuple(int(c) for c in self.modulus)
        if not mod:
            mod = find_irreducible(self.p, self.n)
        elif len(mod) == self.n + 1 and mod[0] == 1:
            # full monic polynomial given; keep the tail
            mod = mod[1:]
        elif len(mod) == self.n + 1:
            raise ValueError("modulus must be monic")
        if len(mod) != self.n:
            raise ValueError(f"modulus tail must have {self.n} coefficients, got {len(mod)}")
        if any(not 0 <= c < self.p for c in mod):
            raise ValueError(f"modulus coefficients must lie in [0, {self.p - 1}]")
        if self.n > 1 and not is_irreducible(self.p, mod):
            raise ValueError(f"modulus {format_modulus(mod)} is reducible over Z_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @classmethod
    def of_order(cls, q: int, modulus: Sequence[int] = ()) -> "FieldSpec":
        p, n = prime_power(q)
        return cls(p, n, tuple(modulus))

    @property
    def q(self) -> int:
        return self.p**self.n

    def __str__(self) -> str:
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n}) mod {format_modulus(self.modulus)}"

    # -- construction and canonical order ------------------------------------

    def element(self, value: Union[int, Sequence[int], FieldElement]) -> FieldElement:
        """Coerce an int or coefficient tuple into a validated element.

        An int is reduced mod p when ``n == 1`` and read as a canonical index
        otherwise.
        """
        if isinstance(value, FieldElement):
            self.check(value)
            return value
        if isinstance(value, int):
            if self.n == 1:
                return FieldElement((value % self.p,))
            return self.from_index(value)
        coeffs = tuple(int(c) for c in value)
        x = FieldElement(coeffs)
        self.check(x)
        return x

    def check(self, x: FieldElement) -> None:
        if len(x.coeffs) != self.n or any(not 0 <= c < self.p for c in x.coeffs):
            raise ValueError(f"{x!r} is not an element of {self}")

    def from_index(self, idx: int) -> FieldElement:
        if not 0 <= idx < self.q:
            raise ValueError(f"index {idx} out of range for {self}")
        digits = []
        for _ in range(self.n):
            idx, r = divmod(idx, self.p)
            digits.append(r)
        return FieldElement(tuple(reversed(digits)))

    def index(self, x: FieldElement) -> int:
        v = 0
        for c in x.coeffs:
            v = v * self.p + c
        return v

    def elements(self) -> Iterator[FieldElement]:
        for coeffs in itertools.product(range(self.p), repeat=self.n):
            yield FieldElement(coeffs)

    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.n)

    def one(self) -> FieldElement:
        return FieldElement((0,) * (self.n - 1) + (1,))

    def scalar(self, k: int) -> FieldElement:
        """Image of the integer ``k`` in the prime subfield."""
        return FieldElement((0,) * (self.n - 1) + (k % self.p,))

    # -- arithmetic ---------------------------------------------------------

    def add(self, x: FieldElement, y: FieldElement) -> FieldElement:
        p = self.p
        return FieldElement(tuple((a + b) % p for a, b in zip(x.coeffs, y.coeffs)))

    def neg(self, x: FieldElement) -> FieldElement:
        p = self.p
        return FieldElement(tuple(-a % p for a in x.coeffs))

    def sub(self, x: FieldElement, y: FieldElement) -> FieldElement:
        p = self.p
        return FieldElement(tuple((a - b) % p for a, b in zip(x.coeffs, y.coeffs)))

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        p, n = self.p, self.n
        if n == 1:
            return FieldElement((x.coeffs[0] * y.coeffs[0] % p,))
        a = x.coeffs[::-1]
        b = y.coeffs[::-1]
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        low = _poly_mod(prod, list(self.modulus[::-1]) + [1], p)
        return FieldElement(tuple(reversed(low)))

    def pow(self, x: FieldElement, e: int) -> FieldElement:
        if e < 0:
            return self.pow(self.inv(x), -e)
        result = self.one()
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, x: FieldElement) -> FieldElement:
        if not any(x.coeffs):
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(x, self.q - 2)

    # -- multiplicative structure -------------------------------------------

    def order(self, x: FieldElement) -> int:
        """Multiplicative order of a nonzero element."""
        if not any(x.coeffs):
            raise ValueError("zero has no multiplicative order")
        e = self.q - 1
        for r in prime_factors(self.q - 1):
            while e % r == 0 and self.pow(x, e // r) == self.one():
                e //= r
        return e

    def is_primitive(self, x: FieldElement) -> bool:
        if not any(x.coeffs):
            return False
        one = self.one()
        return all(self.pow(x, (self.q - 1) // r) != one for r in prime_factors(self.q - 1))


# -- module-level operations ------------------------------------------------

def _same(spec: FieldSpec, *xs: FieldElement) -> None:
    for x in xs:
        spec.check(x)


def field_add(spec: FieldSpec, x: FieldElement, y: FieldElement) -> FieldElement:
    _same(spec, x, y)
    return spec.add(x, y)


def field_neg(spec: FieldSpec, x: FieldElement) -> FieldElement:
    _same(spec, x)
    return spec.neg(x)


def field_mul(spec: FieldSpec, x: FieldElement, y: FieldElement) -> FieldElement:
    _same(spec, x, y)
    return spec.mul(x, y)


def field_pow(spec: FieldSpec, x: FieldElement, e: int) -> FieldElement:
    _same(spec, x)
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    return spec.pow(x, e)


def find_primitive(spec: FieldSpec, budget: int = DEFAULT_FIELD_BUDGET) -> FieldElement:
    """Smallest primitive element in canonical order."""
    if spec.q > budget:
        raise BudgetExceeded(spec.q, budget, what="field size")
    for idx in range(1, spec.q):
        x = spec.from_index(idx)
        if spec.is_primitive(x):
            return x
    raise AssertionError("finite field without a primitive element")  # impossible


def primitive_elements(spec: FieldSpec) -> List[FieldElement]:
    return [x for x in itertools.islice(spec.elements(), 1, None) if spec.is_primitive(x)]


@lru_cache(maxsize=256)
def _dlog_table(spec: FieldSpec, base: FieldElement) -> Dict[FieldElement, int]:
    table = {}
    x = spec.one()
    for e in range(spec.q - 1):
        table[x] = e
        x = spec.mul(x, base)
    return table


def dlog_table(spec: FieldSpec, base: FieldElement) -> Dict[FieldElement, int]:
    """Full table ``x -> e`` with ``base^e = x`` and ``e`` in ``[0, q-2]``."""
    _same(spec, base)
    if not spec.is_primitive(base):
        raise ValueError(f"{format_element(base)} is not primitive in {spec}")
    return _dlog_table(spec, base)


def dlog(spec: FieldSpec, base: FieldElement, x: FieldElement) -> int:
    _same(spec, x)
    if not any(x.coeffs):
        raise ValueError("discrete log of zero is undefined")
    return dlog_table(spec, base)[x]


def vectorize(spec: FieldSpec, x: FieldElement) -> Coeffs:
    _same(spec, x)
    return x.coeffs


def devectorize(spec: FieldSpec, v: Sequence[int]) -> FieldElement:
    if len(v) != spec.n:
        raise ValueError(f"expected {spec.n} coordinates, got {len(v)}")
    return spec.element(tuple(v))


# -- text forms ---------------------------------------------------------------

def format_coeffs(coeffs: Sequence[int], var: str = "t") -> str:
    """Render high-to-low coefficients as a polynomial, e.g. ``2t+1``."""
    n = len(coeffs)
    terms = []
    for i, c in enumerate(coeffs):
        deg = n - 1 - i
        if c == 0:
            continue
        if deg == 0:
            terms.append(str(c))
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


def format_element(x: FieldElement) -> str:
    return format_coeffs(x.coeffs)


def format_modulus(tail: Sequence[int]) -> str:
    return format_coeffs((1,) + tuple(tail), var="x")


_TERM = re.compile(r"^(\d*)(?:t(?:\^(\d+))?)?$")


def parse_element(spec: FieldSpec, text: str) -> FieldElement:
    """Inverse of ``format_element``; also accepts a bare integer when n = 1."""
    coeffs = [0] * spec.n
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty field element")
    for term in text.split("+"):
        m = _TERM.match(term)
        if not term or not m:
            raise ValueError(f"bad field element term {term!r}")
        has_var = "t" in term
        c = int(m.group(1)) if m.group(1) else 1
        deg = (int(m.group(2)) if m.group(2) else 1) if has_var else 0
        if deg >= spec.n:
            raise ValueError(f"degree {deg} too large for {spec}")
        coeffs[spec.n - 1 - deg] += c
    if spec.n == 1:
        return FieldElement((coeffs[0] % spec.p,))
    if any(c >= spec.p for c in coeffs):
        raise ValueError(f"coefficient out of range in {text!r}")
    return FieldElement(tuple(coeffs))
