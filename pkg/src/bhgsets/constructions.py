"""Constructions of B_h[g] sets, each tagged with the (h, g) it guarantees.

* ``moment_curve`` / ``moment_curve_vectorized``: {(x, x^2, ..., x^h)} over
  a field of characteristic p > h is a B_h set in F^h, and stays one after
  expanding every coordinate into its coefficient vector.
* ``base_digits``: writing each element of an integer B_h[g] set inside
  [0, N^d - 1] as d base-N digits gives a B_h[g] set in [0, N-1]^d.
* ``translate_union``: A u (A + c1 m) u ... for a set A in Z_m (no bound
  is guaranteed; measure it with the verifier).
* ``modular_reduce``: reducing coordinate i modulo m_i / g_i turns a B_h[g]
  set into a B_h[g * g_1 * ... * g_d] set, because the reduction map has a
  kernel of size g_1 * ... * g_d.
* ``golomb_set``: {(i, log_beta(a - alpha^i))} is a Sidon set in
  Z_{q-1} x Z_{q-1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Any, Dict, Iterable, Optional, Sequence, Union

from .finite_field import (
    FieldElement,
    FieldSpec,
    dlog_table,
    format_element,
    vectorize,
)
from .groups import BhgSet, GroupSpec

IntSource = Union[BhgSet, Iterable[int]]


@dataclass(frozen=True)
class ConstructionCertificate:
    """How a set was built and the multiplicity bound the construction proves.

    ``guaranteed_g`` is ``None`` for constructions that prove nothing.
    Parameter values are ints, strings or tuples of ints.
    """

    name: str
    params: Dict[str, Any] = field(default_factory=dict, hash=False)
    guaranteed_h: int = 2
    guaranteed_g: Optional[int] = None
    source: Optional[str] = None

    def __post_init__(self) -> None:
        clean = {k: tuple(v) if isinstance(v, (list, tuple)) else v for k, v in self.params.items()}
        object.__setattr__(self, "params", clean)

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "params": {k: list(v) if isinstance(v, tuple) else v for k, v in self.params.items()},
            "h": self.guaranteed_h,
            "g": self.guaranteed_g,
            "source": self.source,
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ConstructionCertificate":
        return cls(
            name=data["name"],
            params=dict(data.get("params", {})),
            guaranteed_h=int(data["h"]),
            guaranteed_g=data.get("g"),
            source=data.get("source"),
        )


def _as_int_set(src: IntSource, h: int = 2) -> BhgSet:
    if isinstance(src, BhgSet):
        src.ints()
        return src
    return BhgSet.integers(src, h=h)


def _source_name(src: BhgSet) -> str:
    if src.certificate is not None:
        return src.certificate.name
    return f"input on {src.spec}"


def moment_curve(spec: FieldSpec, h: int) -> BhgSet:
    """{(x, x^2, ..., x^h) : x in F} on (F^h, +).

    Over a prime field the coordinates are plain ints and the ambient group
    is Z_p^h; over GF(p^n), n > 1, the coordinates stay field elements.
    """
    if h < 2:
        raise ValueError("h must be >= 2")
    if spec.p <= h:
        raise ValueError(f"moment curve needs characteristic p > h, got p={spec.p}, h={h}")
    rows = []
    for x in spec.elements():
        coords = [x]
        for _ in range(h - 1):
            coords.append(spec.mul(coords[-1], x))
        rows.append(tuple(coords))
    cert = ConstructionCertificate(
        "moment_curve",
        {"p": spec.p, "n": spec.n, "modulus": spec.modulus, "h": h},
        guaranteed_h=h,
        guaranteed_g=1,
    )
    if spec.n == 1:
        group = GroupSpec.product(*([spec.p] * h))
        rows = [tuple(c.coeffs[0] for c in r) for r in rows]
    else:
        group = GroupSpec.field_power(spec, h)
    return BhgSet(group, tuple(rows), h=h, g=1, certificate=cert)


def moment_curve_vectorized(p: int, n: int, h: int, modulus: Sequence[int] = ()) -> BhgSet:
    """Moment curve over GF(p^n) with every coordinate expanded into Z_p^n."""
    spec = FieldSpec(p, n, tuple(modulus))
    curve = moment_curve(spec, h)
    if n == 1:
        rows = curve.elements
    else:
        rows = [sum((vectorize(spec, c) for c in row), ()) for row in curve.elements]
    cert = ConstructionCertificate(
        "moment_curve_vectorized",
        {"p": p, "n": n, "modulus": spec.modulus, "h": h},
        guaranteed_h=h,
        guaranteed_g=1,
        source="moment_curve",
    )
    return BhgSet(GroupSpec.product(*([p] * (h * n))), tuple(rows), h=h, g=1, certificate=cert)


def to_digits(a: int, base: int, width: int) -> tuple:
    """Exactly ``width`` base-``base`` digits of ``a``, most significant first."""
    if not 0 <= a < base**width:
        raise ValueError(f"{a} does not fit in {width} base-{base} digits")
    out = []
    for _ in range(width):
        a, r = divmod(a, base)
        out.append(r)
    return tuple(reversed(out))


def from_digits(digits: Sequence[int], base: int) -> int:
    v = 0
    for c in digits:
        v = v * base + c
    return v


def base_digits(src: IntSource, base: int, dim: int, h: int = 2) -> BhgSet:
    """Lift an integer set in [0, base^dim - 1] into the box [0, base-1]^dim."""
    if base < 2:
        raise ValueError("base must be >= 2")
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    s = _as_int_set(src, h)
    limit = base**dim
    bad = [a for a in s.ints() if not 0 <= a < limit]
    if bad:
        raise ValueError(f"elements {bad} lie outside [0, {limit - 1}]")
    rows = tuple(to_digits(a, base, dim) for a in s.ints())
    cert = ConstructionCertificate(
        "base_digits",
        {"base": base, "dim": dim},
        guaranteed_h=s.h,
        guaranteed_g=s.g,
        source=_source_name(s),
    )
    return BhgSet(GroupSpec.box(dim, base), rows, h=s.h, g=s.g, certificate=cert)


def translate_union(src: IntSource, m: int, coeffs: Iterable[int], h: int = 2) -> BhgSet:
    """Union of the translates A + c*m over ``coeffs``, as integers.

    The result carries no claimed g.
    """
    cs = sorted(set(int(c) for c in coeffs))
    if not cs:
        raise ValueError("need at least one translate multiplier")
    if cs[0] < 0:
        raise ValueError("multipliers must be nonnegative")
    s = _as_int_set(src, h)
    bad = [a for a in s.ints() if not 0 <= a < m]
    if bad:
        raise ValueError(f"elements {bad} lie outside [0, {m - 1}]")
    values = sorted(a + c * m for c in cs for a in s.ints())
    cert = ConstructionCertificate(
        "translate_union",
        {"m": m, "coeffs": tuple(cs)},
        guaranteed_h=s.h,
        guaranteed_g=None,
        source=_source_name(s),
    )
    group = GroupSpec.box(1, (cs[-1] + 1) * m)
    return BhgSet(group, tuple((v,) for v in values), h=s.h, certificate=cert)


def reduce_element(x: Sequence[int], targets: Sequence[int]) -> tuple:
    return tuple(c % t for c, t in zip(x, targets))


def modular_reduce(src: BhgSet, divisors: Sequence[int]) -> BhgSet:
    """Reduce coordinate i modulo m_i / g_i.

    The claimed g is multiplied by prod(g_i).  The certificate records how
    many input elements collapsed onto an already-present image
    (``params["collisions"]``).
    """
    spec = src.spec
    if spec.kind != "product":
        raise ValueError("modular reduction needs a product of cyclic groups")
    divisors = tuple(int(g) for g in divisors)
    if len(divisors) != spec.dim:
        raise ValueError(f"need {spec.dim} divisors, got {len(divisors)}")
    for m, g in zip(spec.moduli, divisors):
        if g < 1 or m % g:
            raise ValueError(f"{g} does not divide {m}")
    targets = tuple(m // g for m, g in zip(spec.moduli, divisors))
    rows = {reduce_element(x, targets) for x in src.elements}
    kernel = prod(divisors)
    g_out = src.g * kernel if src.g is not None else None
    cert = ConstructionCertificate(
        "modular_reduce",
        {"divisors": divisors, "kernel": kernel, "collisions": len(src) - len(rows)},
        guaranteed_h=src.h,
        guaranteed_g=g_out,
        source=_source_name(src),
    )
    return BhgSet(GroupSpec.product(*targets), tuple(rows), h=src.h, g=g_out, certificate=cert)


def golomb_set(spec: FieldSpec, alpha: FieldElement, beta: FieldElement, a: FieldElement) -> BhgSet:
    """{(i, log_beta(a - alpha^i)) : 1 <= i <= q-1, alpha^i != a} in Z_{q-1}^2.

    The exponent i = q-1 is stored as 0.
    """
    q = spec.q
    if q < 3:
        raise ValueError("need q >= 3")
    for name, x in (("alpha", alpha), ("beta", beta), ("a", a)):
        spec.check(x)
    if not spec.is_primitive(alpha):
        raise ValueError(f"alpha = {format_element(alpha)} is not primitive")
    if a == spec.zero():
        raise ValueError("a must be nonzero")
    logs = dlog_table(spec, beta)
    rows = []
    x = spec.one()
    for i in range(1, q):
        x = spec.mul(x, alpha)
        if x == a:
            continue
        rows.append((i % (q - 1), logs[spec.sub(a, x)]))
    cert = ConstructionCertificate(
        "golomb",
        {
            "p": spec.p,
            "n": spec.n,
            "modulus": spec.modulus,
            "alpha": format_element(alpha),
            "beta": format_element(beta),
            "a": format_element(a),
        },
        guaranteed_h=2,
        guaranteed_g=1,
    )
    return BhgSet(GroupSpec.product(q - 1, q - 1), tuple(rows), h=2, g=1, certificate=cert)
