"""
Notation module for affine-weyl.
Reads and writes elements in labelled cycle notation and JSON, and class
descriptors in compact text and JSON.
"""

import re
import logging
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError

from .conjugacy import SPLIT_FIELDS, ClassDescriptor
from .core import AffineElement, FamilyTag, GroupFamily, SignedPermutation
from .errors import AffineWeylError, NotationError

logger = logging.getLogger(__name__)

# One cycle: sign, one or two points, optional ^label.
CYCLE_PATTERN = re.compile(
    r"\(\s*([+-])\s*(\d+)(?:\s+(\d+))?\s*\)(?:\s*\^\s*([+-]?\d+))?"
)
IDENTITY_WORDS = ("1", "id", "e")

SPLIT_SHORT_NAMES = {
    "f_mod4": "f",
    "f_plus_minus_mod4": "fpm",
    "minus_mod4": "minus",
    "lambda_mod2": "lambda",
}

DESCRIPTOR_PATTERN = re.compile(
    r"^\s*(\w+)\s*:\s*n\s*=\s*(\d+)\s*:\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)"
    r"((?:\s*:\s*\w+\s*=\s*\d+)*)\s*$"
)


# =============================================================================
# 1. ELEMENT TEXT
# =============================================================================


def _normalise(text: str) -> str:
    return text.replace("−", "-")


def parse_element(text: str, n: Optional[int] = None) -> AffineElement:
    """
    Parse labelled cycle notation such as ``(+1 2)^1 (-3 4)^3 (-5)^2``.

    The label of a transposition belongs to the first point written. Points
    not mentioned are fixed. ``1`` alone is the identity when n is given.

    Args:
        text: Cycle notation
        n: Rank; defaults to the largest point mentioned

    Raises:
        NotationError: With the 1-based column of the first problem
    """
    text = _normalise(text)
    stripped = text.strip()
    if stripped in IDENTITY_WORDS:
        if n is None:
            raise NotationError("identity needs an explicit rank", 1)
        return AffineElement.identity(n)

    cycles: List[Tuple[int, str, Tuple[int, ...], int]] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = CYCLE_PATTERN.match(text, pos)
        if match is None:
            raise NotationError(f"unexpected '{text[pos]}'", pos + 1)
        sign, a, b, label = match.groups()
        points = (int(a),) if b is None else (int(a), int(b))
        cycles.append((pos + 1, sign, points, int(label or 0)))
        pos = match.end()
    if not cycles:
        raise NotationError("no cycles given", 1)

    largest = max(p for _, _, points, _ in cycles for p in points)
    rank = n if n is not None else largest
    targets = list(range(rank))
    signs = [1] * rank
    v = [0] * rank
    seen = set()
    for column, sign, points, label in cycles:
        for p in points:
            if p < 1 or p > rank:
                raise NotationError(f"point {p} outside 1..{rank}", column)
            if p in seen:
                raise NotationError(f"point {p} appears twice", column)
            seen.add(p)
        s = 1 if sign == "+" else -1
        if len(points) == 1:
            i = points[0] - 1
            signs[i] = s
            v[i] = label
        else:
            a, b = (p - 1 for p in points)
            if a == b:
                raise NotationError("a transposition needs two points", column)
            targets[a], targets[b] = b, a
            signs[a] = signs[b] = s
            v[a] = label
            v[b] = -s * label
    try:
        return AffineElement(SignedPermutation(tuple(targets), tuple(signs)), tuple(v))
    except OverflowError as exc:
        raise NotationError(str(exc), 1) from exc


def format_element(x: AffineElement, show_fixed: bool = True) -> str:
    """
    Print x in cycle notation, smaller point first.

    Raises:
        NotationError: If x has a cycle longer than two or mismatched labels
    """
    sigma = x.sigma
    parts = []
    for i, j in enumerate(sigma.targets):
        s = sigma.signs[i]
        mark = "+" if s == 1 else "-"
        if j == i:
            if s == 1 and x.v[i] == 0 and not show_fixed:
                continue
            parts.append(f"({mark}{i + 1})^{x.v[i]}")
        elif j > i:
            if sigma.targets[j] != i or sigma.signs[j] != s or x.v[j] != -s * x.v[i]:
                raise NotationError("element has no labelled cycle notation")
            parts.append(f"({mark}{i + 1} {j + 1})^{x.v[i]}")
        elif sigma.targets[j] != i:
            raise NotationError("element has no labelled cycle notation")
    return " ".join(parts) if parts else "1"


# =============================================================================
# 2. ELEMENT JSON
# =============================================================================


class ElementPayload(BaseModel):
    """JSON form of an element: 1-indexed [target, sign] pairs and labels."""

    n: int = Field(..., ge=1, description="Rank")
    sigma: List[Tuple[int, int]] = Field(..., description="[target, sign] per point")
    v: List[int] = Field(..., description="Translation vector")

    def to_element(self) -> AffineElement:
        if len(self.sigma) != self.n or len(self.v) != self.n:
            raise NotationError(f"sigma and v must both have length {self.n}")
        try:
            return AffineElement(SignedPermutation.from_image(self.sigma), tuple(self.v))
        except (AffineWeylError, OverflowError):
            raise
        except ValueError as exc:
            raise NotationError(str(exc)) from exc

    @classmethod
    def from_element(cls, x: AffineElement) -> "ElementPayload":
        return cls(n=x.n, sigma=x.sigma.image(), v=list(x.v))


def element_from_json(text: str) -> AffineElement:
    """Parse ``{"n":..,"sigma":[[target,sign],..],"v":[..]}``."""
    try:
        payload = ElementPayload.model_validate_json(text)
    except ValidationError as exc:
        raise NotationError(f"invalid element JSON: {exc.errors()[0]['msg']}") from exc
    return payload.to_element()


def element_to_json(x: AffineElement) -> str:
    return ElementPayload.from_element(x).model_dump_json()


def read_element(text: str, n: Optional[int] = None) -> AffineElement:
    """Accept either notation, telling them apart by the first character."""
    if text.lstrip().startswith("{"):
        x = element_from_json(text)
        if n is not None and x.n != n:
            raise NotationError(f"element has rank {x.n}, expected {n}")
        return x
    return parse_element(text, n)


# =============================================================================
# 3. DESCRIPTORS
# =============================================================================


class DescriptorPayload(BaseModel):
    family: str = Field(..., description="Family tag, e.g. AffineB")
    n: int = Field(..., description="Rank")
    type: Tuple[int, int, int, int] = Field(..., description="(m, k_e, k_o, l)")
    split: Dict[str, int] = Field(default_factory=dict, description="Residues")

    def to_descriptor(self) -> ClassDescriptor:
        family = GroupFamily.of(self.family, self.n)
        return ClassDescriptor(
            family=family, cycle_type=self.type, **_split_names(self.split)
        )

    @classmethod
    def from_descriptor(cls, d: ClassDescriptor) -> "DescriptorPayload":
        return cls(family=d.tag.value, n=d.n, type=d.cycle_type, split=d.split)


def _split_names(raw: Dict[str, int]) -> Dict[str, int]:
    long_names = {short: name for name, short in SPLIT_SHORT_NAMES.items()}
    out = {}
    for key, value in raw.items():
        name = long_names.get(key, key)
        if name not in SPLIT_FIELDS:
            raise NotationError(f"unknown residue '{key}'")
        out[name] = value
    return out


def format_descriptor(d: ClassDescriptor) -> str:
    """Compact text, e.g. ``B:n=6:(2,2,0,0):f=0``."""
    text = f"{d.tag.short}:n={d.n}:({','.join(str(c) for c in d.cycle_type)})"
    for name, value in d.split.items():
        text += f":{SPLIT_SHORT_NAMES[name]}={value}"
    return text


def parse_descriptor(text: str) -> ClassDescriptor:
    """
    Read a descriptor from compact text or JSON.

    Raises:
        NotationError: If the text matches neither form
        InvalidFamilyError: For an unknown family or a bad rank
    """
    if text.lstrip().startswith("{"):
        try:
            payload = DescriptorPayload.model_validate_json(text)
        except ValidationError as exc:
            raise NotationError(
                f"invalid descriptor JSON: {exc.errors()[0]['msg']}"
            ) from exc
        return payload.to_descriptor()
    match = DESCRIPTOR_PATTERN.match(_normalise(text))
    if match is None:
        raise NotationError("descriptor must look like B:n=6:(2,2,0,0):f=0", 1)
    tag = FamilyTag.parse(match.group(1))
    n = int(match.group(2))
    cycle_type = tuple(int(match.group(i)) for i in range(3, 7))
    residues = {}
    for item in filter(None, (s.strip() for s in match.group(7).split(":"))):
        key, value = (s.strip() for s in item.split("="))
        residues[key] = int(value)
    return ClassDescriptor(
        family=GroupFamily.of(tag, n), cycle_type=cycle_type, **_split_names(residues)
    )


def descriptor_to_json(d: ClassDescriptor) -> str:
    return DescriptorPayload.from_descriptor(d).model_dump_json()
