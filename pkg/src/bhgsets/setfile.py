"""Line-oriented text format for B_h[g] sets.

Example::

    # bhgsets set file
    format=1
    group=product:8
    h=2
    g=1
    convention=multiset-repetition
    1
    2
    7

``#`` lines are comments, ``key=value`` lines form the header, every other
line is one element with comma-separated coordinates.  Field coordinates are
written as polynomials in ``t`` (``2t+1``).  An optional ``construction=``
header holds the certificate as one line of JSON.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import List, Optional, Union

from .constructions import ConstructionCertificate
from .finite_field import format_element, parse_element
from .groups import BhgSet, GroupElement, GroupSpec
from .verifier import CONVENTION

FORMAT_VERSION = 1


class SetFileError(ValueError):
    pass


def format_coord(spec: GroupSpec, x: GroupElement) -> str:
    if spec.kind == "field":
        return ",".join(format_element(c) for c in x)
    return ",".join(str(c) for c in x)


def format_compact(spec: GroupSpec, x: GroupElement) -> str:
    """Single element for inline display: ``7`` or ``(1,14)``."""
    body = format_coord(spec, x)
    return body if len(x) == 1 else f"({body})"


def render(bset: BhgSet) -> str:
    lines = [
        "# bhgsets set file",
        f"format={FORMAT_VERSION}",
        f"group={bset.spec}",
        f"h={bset.h}",
        f"g={'none' if bset.g is None else bset.g}",
    ]
    if bset.certificate is not None:
        lines.append("construction=" + json.dumps(bset.certificate.to_json(), sort_keys=True))
    lines.append(f"convention={CONVENTION}")
    lines.extend(format_coord(bset.spec, x) for x in bset.elements)
    return "\n".join(lines) + "\n"


def _parse_element(spec: GroupSpec, line: str) -> GroupElement:
    parts = [p.strip() for p in line.split(",")]
    if len(parts) != spec.dim:
        raise SetFileError(f"element {line!r} has {len(parts)} coordinates, group has {spec.dim}")
    try:
        if spec.kind == "field":
            x = tuple(parse_element(spec.field, p) for p in parts)
        else:
            x = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise SetFileError(f"bad element {line!r}: {exc}") from None
    if not spec.contains(x):
        raise SetFileError(f"element {line!r} is out of range for {spec}")
    return x


def parse(text: str) -> BhgSet:
    header = {}
    body: List[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" in line and not body:
            key, _, value = line.partition("=")
            header[key.strip()] = value.strip()
        else:
            body.append(line)
    if "group" not in header:
        raise SetFileError("missing group= header")
    version = header.get("format", str(FORMAT_VERSION))
    if version != str(FORMAT_VERSION):
        raise SetFileError(f"unsupported format version {version}")
    convention = header.get("convention", CONVENTION)
    if convention != CONVENTION:
        raise SetFileError(f"unsupported counting convention {convention!r}")
    try:
        spec = GroupSpec.parse(header["group"])
        h = int(header.get("h", 2))
        g_text = header.get("g", "none")
        g = None if g_text in ("", "none") else int(g_text)
        cert = None
        if "construction" in header:
            cert = ConstructionCertificate.from_json(json.loads(header["construction"]))
    except (ValueError, KeyError) as exc:
        raise SetFileError(f"bad header: {exc}") from None
    elements = tuple(_parse_element(spec, line) for line in body)
    try:
        return BhgSet(spec, elements, h=h, g=g, certificate=cert)
    except ValueError as exc:
        raise SetFileError(str(exc)) from None


def read(path: Union[str, Path]) -> BhgSet:
    return parse(Path(path).read_text(encoding="utf-8"))


def write(bset: BhgSet, path: Optional[Union[str, Path]]) -> None:
    Path(path).write_text(render(bset), encoding="utf-8", newline="\n")
