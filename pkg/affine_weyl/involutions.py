"""
Involutions module for affine-weyl.
Handles involution detection, labelled cycle forms, the invariants
sum, sum_plus, minus and f, and the graph automorphism omega.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .core import (
    AffineElement,
    FamilyTag,
    GroupFamily,
    SignedPermutation,
    invert,
    member_of,
    multiply,
)
from .errors import NotAnInvolutionError, VerificationError

logger = logging.getLogger(__name__)


class CycleKind(str, Enum):
    POS = "PosTransposition"
    NEG = "NegTransposition"
    ONE = "NegOneCycle"
    FIXED = "FixedPoint"


@dataclass(frozen=True)
class LabelledCycle:
    """
    One cycle of an involution with the label written above it.

    Points are 1-indexed and increasing; a transposition's label is the
    translation coordinate at its smaller point.
    """

    kind: CycleKind
    points: Tuple[int, ...]
    label: int = 0

    def __post_init__(self):
        size = 2 if self.kind in (CycleKind.POS, CycleKind.NEG) else 1
        if len(self.points) != size:
            raise ValueError(f"{self.kind.value} needs {size} point(s)")
        if size == 2 and not self.points[0] < self.points[1]:
            raise ValueError("transposition points must be increasing")
        if self.kind is CycleKind.FIXED and self.label != 0:
            raise ValueError("a fixed point carries label 0")

    @property
    def sign(self) -> int:
        return 1 if self.kind in (CycleKind.POS, CycleKind.FIXED) else -1

    @property
    def is_transposition(self) -> bool:
        return len(self.points) == 2

    def values(self) -> Tuple[int, ...]:
        """Translation coordinates at each point, in point order."""
        if self.kind is CycleKind.POS:
            return (self.label, -self.label)
        if self.kind is CycleKind.NEG:
            return (self.label, self.label)
        return (self.label,)


@dataclass(frozen=True)
class LabelledCycleType:
    """The counts (m, k_e, k_o, l)."""

    m: int
    k_e: int
    k_o: int
    l: int  # noqa: E741

    def __post_init__(self):
        if min(self.m, self.k_e, self.k_o, self.l) < 0:
            raise ValueError("cycle type counts are non-negative")

    @property
    def n(self) -> int:
        return 2 * self.m + self.k_e + self.k_o + self.l

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.m, self.k_e, self.k_o, self.l)

    def __str__(self) -> str:
        return "({},{},{},{})".format(*self.as_tuple())


@dataclass(frozen=True)
class LabelledCycleForm:
    """An involution as labelled cycles covering every point once."""

    n: int
    cycles: Tuple[LabelledCycle, ...]

    def __post_init__(self):
        seen = sorted(p for c in self.cycles for p in c.points)
        if seen != list(range(1, self.n + 1)):
            raise ValueError("cycles must partition the points 1..n")

    @property
    def transpositions(self) -> List[LabelledCycle]:
        return [c for c in self.cycles if c.is_transposition]

    @property
    def t(self) -> int:
        return sum(1 for c in self.cycles if c.kind is CycleKind.POS)

    @property
    def m(self) -> int:
        return sum(1 for c in self.cycles if c.is_transposition)

    @property
    def k_e(self) -> int:
        return sum(
            1 for c in self.cycles if c.kind is CycleKind.ONE and c.label % 2 == 0
        )

    @property
    def k_o(self) -> int:
        return sum(
            1 for c in self.cycles if c.kind is CycleKind.ONE and c.label % 2 == 1
        )

    @property
    def l(self) -> int:  # noqa: E743
        return sum(1 for c in self.cycles if c.kind is CycleKind.FIXED)

    @property
    def cycle_type(self) -> LabelledCycleType:
        return LabelledCycleType(self.m, self.k_e, self.k_o, self.l)

    def cycle_at(self, point: int) -> LabelledCycle:
        for c in self.cycles:
            if point in c.points:
                return c
        raise KeyError(point)

    def labels(self) -> List[int]:
        return [c.label for c in self.cycles]

    def to_element(self) -> AffineElement:
        return element_from_cycles(self.n, self.cycles)


class Invariants(NamedTuple):
    sum: int
    sum_plus: int
    minus: int
    f: Optional[int]


def element_from_cycles(n: int, cycles: Sequence[LabelledCycle]) -> AffineElement:
    """Assemble (sigma, v) from labelled cycles; uncovered points stay fixed."""
    targets = list(range(n))
    signs = [1] * n
    v = [0] * n
    for c in cycles:
        idx = [p - 1 for p in c.points]
        for i, value in zip(idx, c.values()):
            signs[i] = c.sign
            v[i] = value
        if len(idx) == 2:
            a, b = idx
            targets[a], targets[b] = b, a
    return AffineElement(SignedPermutation(tuple(targets), tuple(signs)), tuple(v))


def structurally_involutive(x: AffineElement) -> bool:
    """Cycles of length at most two with the label rules of an involution."""
    sigma = x.sigma
    for i, j in enumerate(sigma.targets):
        s, vi = sigma.signs[i], x.v[i]
        if j == i:
            if s == 1 and vi != 0:
                return False
            continue
        if sigma.targets[j] != i or sigma.signs[j] != s:
            return False
        if x.v[j] != -s * vi:
            return False
    return True


def is_involution(x: AffineElement) -> bool:
    """
    Check x != 1 and x^2 = 1.

    The multiplicative test is cross-checked against the structural one:
    cycles of length at most two, v_b = -v_a over positive transpositions,
    v_b = v_a over negative ones and v_d = 0 at fixed points.

    Raises:
        VerificationError: If the two criteria disagree
    """
    if x.is_identity():
        return False
    squared = multiply(x, x).is_identity()
    if squared != structurally_involutive(x):
        raise VerificationError(f"involution criteria disagree on {x}")
    return squared


def labelled_cycle_form(x: AffineElement) -> LabelledCycleForm:
    """
    Decompose an involution into labelled cycles.

    Raises:
        NotAnInvolutionError: If x is not an involution
    """
    if not is_involution(x):
        raise NotAnInvolutionError()
    sigma = x.sigma
    cycles = []
    for i, j in enumerate(sigma.targets):
        if j < i:
            continue
        s = sigma.signs[i]
        if j == i:
            kind = CycleKind.FIXED if s == 1 else CycleKind.ONE
            cycles.append(LabelledCycle(kind, (i + 1,), x.v[i]))
        else:
            kind = CycleKind.POS if s == 1 else CycleKind.NEG
            cycles.append(LabelledCycle(kind, (i + 1, j + 1), x.v[i]))
    return LabelledCycleForm(x.n, tuple(cycles))


def labelled_cycle_type(x: AffineElement) -> LabelledCycleType:
    return labelled_cycle_form(x).cycle_type


def f_value(form: LabelledCycleForm) -> int:
    """2 * (labels over transpositions) + (labels over negative 1-cycles)."""
    total = 0
    for c in form.cycles:
        if c.is_transposition:
            total += 2 * c.label
        elif c.kind is CycleKind.ONE:
            total += c.label
    return total


def invariants(x: AffineElement) -> Invariants:
    """
    The invariants of an element.

    Returns:
        Invariants: sum, sum_plus and minus for any element; f only when x is
        an involution (None otherwise)
    """
    f = f_value(labelled_cycle_form(x)) if is_involution(x) else None
    return Invariants(
        sum=sum(x.v),
        sum_plus=sum(abs(a) for a in x.v),
        minus=x.sigma.minus(),
        f=f,
    )


def orientation_variants(form: LabelledCycleForm) -> List[int]:
    """f under every choice of which transposition point carries the label."""
    ones = sum(c.label for c in form.cycles if c.kind is CycleKind.ONE)
    choices = [set(c.values()) for c in form.transpositions]
    return sorted(
        ones + 2 * sum(picked) for picked in itertools.product(*choices)
    )


def omega(x: AffineElement) -> AffineElement:
    """
    Apply the automorphism induced by the Coxeter graph symmetry.

    This is conjugation of affine maps by u -> c - rho(u), where c is the
    all-halves vector and rho reverses the coordinates. The permutation part
    becomes rho sigma rho and the coordinate at k becomes
    [sigma sends some e_i to -e_rho(k)] - v_rho(k).
    """
    n = x.n
    sigma = x.sigma
    back = invert(sigma)
    targets = []
    signs = []
    v = []
    for k in range(n):
        r = n - 1 - k
        targets.append(n - 1 - sigma.targets[r])
        signs.append(sigma.signs[r])
        flipped = 1 if back.signs[r] == -1 else 0
        v.append(flipped - x.v[r])
    return AffineElement(SignedPermutation(tuple(targets), tuple(signs)), tuple(v))


def _matchings(points: Tuple[int, ...]) -> Iterator[List[Tuple[int, ...]]]:
    """Every partition of ``points`` into singletons and pairs."""
    if not points:
        yield []
        return
    head, rest = points[0], points[1:]
    for tail in _matchings(rest):
        yield [(head,)] + tail
    for i, partner in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for tail in _matchings(remaining):
            yield [(head, partner)] + tail


def _cycle_options(block: Tuple[int, ...], window: int, signed: bool):
    labels = range(-window, window + 1)
    if len(block) == 1:
        yield LabelledCycle(CycleKind.FIXED, block, 0)
        if signed:
            for label in labels:
                yield LabelledCycle(CycleKind.ONE, block, label)
        return
    kinds = (CycleKind.POS, CycleKind.NEG) if signed else (CycleKind.POS,)
    for kind in kinds:
        for label in labels:
            yield LabelledCycle(kind, block, label)


def iter_involutions(
    n: int, window: int, family: Optional[GroupFamily] = None
) -> Iterator[AffineElement]:
    """
    Every involution of rank n whose labels lie in [-window, window].

    Args:
        n: Number of points
        window: Label bound L
        family: Restrict to members of this group when given

    Yields:
        AffineElement: involutions in a fixed deterministic order
    """
    signed = family is None or family.tag is not FamilyTag.A
    points = tuple(range(1, n + 1))
    for blocks in _matchings(points):
        options = [list(_cycle_options(b, window, signed)) for b in blocks]
        for cycles in itertools.product(*options):
            x = element_from_cycles(n, cycles)
            if x.is_identity():
                continue
            if family is not None and not member_of(x, family):
                continue
            yield x


def random_involution(
    rng: np.random.Generator,
    n: int,
    window: int,
    family: Optional[GroupFamily] = None,
) -> AffineElement:
    """Draw a random involution with labels in [-window, window]."""
    signed = family is None or family.tag is not FamilyTag.A
    while True:
        order = [int(p) + 1 for p in rng.permutation(n)]
        cycles = []
        while order:
            a = order.pop()
            if order and rng.random() < 0.5:
                b = order.pop()
                kind = CycleKind.NEG if signed and rng.random() < 0.5 else CycleKind.POS
                label = int(rng.integers(-window, window + 1))
                cycles.append(LabelledCycle(kind, tuple(sorted((a, b))), label))
            elif signed and rng.random() < 0.7:
                label = int(rng.integers(-window, window + 1))
                cycles.append(LabelledCycle(CycleKind.ONE, (a,), label))
            else:
                cycles.append(LabelledCycle(CycleKind.FIXED, (a,), 0))
        x = element_from_cycles(n, cycles)
        if x.is_identity():
            continue
        if family is None or member_of(x, family):
            return x


def label_bound(x: AffineElement) -> int:
    """Largest label magnitude, which decides window membership."""
    return max((abs(a) for a in x.v), default=0)

