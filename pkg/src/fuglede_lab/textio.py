"""Text forms for groups, elements and subsets.

* group: ``"p,n,m"``
* element: ``"(d1,d2)"``
* subset: ``"(0,0);(1,0)"``, or a hex mask ``"0x..."`` whose bit ``i`` is the
  element with index ``i``, or a file path with one element per line.

When a group was given with ``n < m`` the factors are stored swapped; these
helpers translate element coordinates back and forth.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .group_core import Elem, FugledeError, GroupParams, SubsetMask

_ELEM_RE = re.compile(r"^\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")


def parse_group(text: str) -> GroupParams:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 3 or not all(s.lstrip("-").isdigit() for s in parts):
        raise FugledeError(f"bad group descriptor {text!r}; expected 'p,n,m'")
    p, n, m = (int(s) for s in parts)
    return GroupParams(p, n, m)


def parse_elem(text: str, G: GroupParams) -> Elem:
    match = _ELEM_RE.match(text.strip())
    if not match:
        raise FugledeError(f"bad element {text!r}; expected '(d1,d2)'")
    a, b = int(match.group(1)), int(match.group(2))
    if G.swapped:
        a, b = b, a
    if not (0 <= a < G.q1 and 0 <= b < G.q2):
        raise FugledeError(f"element {text.strip()} is not reduced for group {format_group(G)}")
    return Elem(a, b)


def format_elem(e: Elem, G: GroupParams) -> str:
    a, b = (e[1], e[0]) if G.swapped else (e[0], e[1])
    return f"({a},{b})"


def format_group(G: GroupParams) -> str:
    n, m = (G.m, G.n) if G.swapped else (G.n, G.m)
    return f"{G.p},{n},{m}"


def parse_subset(text: str, G: GroupParams) -> SubsetMask:
    s = text.strip()
    if s.lower().startswith("0x"):
        try:
            bits = int(s, 16)
        except ValueError:
            raise FugledeError(f"bad hex mask {text!r}") from None
        return SubsetMask(G, bits)
    if not s:
        return SubsetMask.empty(G)
    items = [part for part in s.split(";") if part.strip()]
    return SubsetMask.from_elements(G, (parse_elem(part, G) for part in items))


def read_subset_file(path: str | Path, G: GroupParams) -> SubsetMask:
    lines = Path(path).read_text().splitlines()
    elems = [parse_elem(line, G) for line in lines if line.strip() and not line.startswith("#")]
    return SubsetMask.from_elements(G, elems)


def format_subset(A: SubsetMask) -> str:
    return ";".join(format_elem(e, A.group) for e in A)


def subset_json(A: SubsetMask) -> list[str]:
    """JSON-ready list of element strings sorted by element index."""
    return [format_elem(e, A.group) for e in A]


def subset_hex(A: SubsetMask) -> str:
    return hex(A.bits)


def dumps(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
