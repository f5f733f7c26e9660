"""
Conjugacy module for affine-weyl.
Classifies involutions up to conjugacy in the affine families and in the
finite groups A, B and D, builds canonical representatives and explicit
conjugators.
"""

import functools
import itertools
import logging
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .core import (
    AffineElement,
    FamilyTag,
    GroupFamily,
    SignedPermutation,
    compose,
    conjugate,
    member_of,
    multiply,
    reflection,
)
from .errors import (
    NotAMemberError,
    NotAnInvolutionError,
    UnrealizableDescriptorError,
    VerificationError,
)
from .involutions import (
    CycleKind,
    LabelledCycle,
    LabelledCycleType,
    element_from_cycles,
    is_involution,
    labelled_cycle_form,
)

logger = logging.getLogger(__name__)

SPLIT_FIELDS = ("f_mod4", "f_plus_minus_mod4", "minus_mod4", "lambda_mod2")

TypeTuple = Tuple[int, int, int, int]


class ClassDescriptor(BaseModel):
    """Canonical name of a conjugacy class of involutions."""

    model_config = ConfigDict(frozen=True)

    family: GroupFamily = Field(..., description="Group and rank")
    cycle_type: TypeTuple = Field(..., description="(m, k_e, k_o, l)")
    f_mod4: Optional[int] = Field(None, description="f mod 4 for split types")
    f_plus_minus_mod4: Optional[int] = Field(
        None, description="(f + minus) mod 4 for split types"
    )
    minus_mod4: Optional[int] = Field(None, description="minus mod 4 for split types")
    lambda_mod2: Optional[int] = Field(
        None, description="sum of transposition labels mod 2 (type A)"
    )

    @property
    def n(self) -> int:
        return self.family.n

    @property
    def tag(self) -> FamilyTag:
        return self.family.tag

    @property
    def type(self) -> LabelledCycleType:
        return LabelledCycleType(*self.cycle_type)

    @property
    def split(self) -> Dict[str, int]:
        return {
            name: getattr(self, name)
            for name in SPLIT_FIELDS
            if getattr(self, name) is not None
        }

    def key(self) -> Tuple:
        return (self.cycle_type, tuple(self.split.get(f) for f in SPLIT_FIELDS))


class FiniteFamily(str, Enum):
    A = "FiniteA"
    B = "FiniteB"
    D = "FiniteD"


class FiniteClassDescriptor(BaseModel):
    """Signed cycle type (m, k, l) of a finite involution class."""

    model_config = ConfigDict(frozen=True)

    family: FiniteFamily
    n: int
    signed_type: Tuple[int, int, int] = Field(..., description="(m, k, l)")
    minus_mod4: Optional[int] = None

    @property
    def m(self) -> int:
        return self.signed_type[0]

    @property
    def t(self) -> int:
        return max(self.signed_type[1], self.signed_type[2])


def split_fields(tag: FamilyTag, cycle_type: TypeTuple) -> Tuple[str, ...]:
    """Which residues separate classes sharing this labelled cycle type."""
    m, k_e, k_o, l = cycle_type
    if l > 0 or tag is FamilyTag.C:
        return ()
    if tag is FamilyTag.A:
        return ("lambda_mod2",)
    if tag is FamilyTag.B:
        return ("f_mod4",) if k_o == 0 else ()
    if tag is FamilyTag.BBAR:
        return ("f_plus_minus_mod4",) if k_e == 0 else ()
    if k_e == 0 and k_o == 0:
        return ("minus_mod4", "f_mod4")
    if k_o == 0:
        return ("f_mod4",)
    if k_e == 0:
        return ("f_plus_minus_mod4",)
    return ()


def _scan(x: AffineElement) -> Tuple[TypeTuple, int, int, int]:
    """Type, f, minus and the sum of transposition labels, in one pass."""
    sigma = x.sigma
    m = k_e = k_o = l = 0
    f = lam = 0
    for i, j in enumerate(sigma.targets):
        if j == i:
            if sigma.signs[i] == 1:
                l += 1
            elif x.v[i] % 2 == 0:
                k_e += 1
                f += x.v[i]
            else:
                k_o += 1
                f += x.v[i]
        elif i < j:
            m += 1
            f += 2 * x.v[i]
            lam += x.v[i]
    return (m, k_e, k_o, l), f, sigma.minus(), lam


def class_key(x: AffineElement, family: GroupFamily) -> Tuple:
    """Equality key of class_of(x, family) for an involution already in the group."""
    cycle_type, f, minus, lam = _scan(x)
    residues = {
        "f_mod4": f % 4,
        "f_plus_minus_mod4": (f + minus) % 4,
        "minus_mod4": minus % 4,
        "lambda_mod2": lam % 2,
    }
    fields = split_fields(family.tag, cycle_type)
    return (cycle_type, tuple(residues[n] if n in fields else None for n in SPLIT_FIELDS))


def class_of(x: AffineElement, family: GroupFamily) -> ClassDescriptor:
    """
    Name the conjugacy class of x in the family.

    Args:
        x: An involution
        family: The group, which must contain x

    Returns:
        ClassDescriptor: equal for two involutions exactly when they are
        conjugate in the group

    Raises:
        NotAnInvolutionError: If x is not an involution
        NotAMemberError: If x is not in the group
    """
    if not is_involution(x):
        raise NotAnInvolutionError()
    if not member_of(x, family):
        raise NotAMemberError(f"element is not in {family.tag.value}{family.n}")
    cycle_type, residues = class_key(x, family)
    split = {n: r for n, r in zip(SPLIT_FIELDS, residues) if r is not None}
    return ClassDescriptor(family=family, cycle_type=cycle_type, **split)


def check_realizable(d: ClassDescriptor) -> None:
    """
    Raise unless the descriptor names an actual class.

    Raises:
        UnrealizableDescriptorError: On rank, parity or residue violations
    """
    m, k_e, k_o, l = d.cycle_type
    tag = d.tag
    if 2 * m + k_e + k_o + l != d.n:
        raise UnrealizableDescriptorError(f"type {d.cycle_type} does not fill n={d.n}")
    if l == d.n:
        raise UnrealizableDescriptorError("the identity is not an involution")
    if tag is FamilyTag.A and (k_e or k_o):
        raise UnrealizableDescriptorError("AffineA has no negative 1-cycles")
    if tag in (FamilyTag.B, FamilyTag.D) and k_o % 2:
        raise UnrealizableDescriptorError(f"{tag.value} needs k_o even")
    if tag in (FamilyTag.BBAR, FamilyTag.D) and k_e % 2:
        raise UnrealizableDescriptorError(f"{tag.value} needs k_e even")
    wanted = set(split_fields(tag, d.cycle_type))
    given = set(d.split)
    if wanted != given:
        raise UnrealizableDescriptorError(
            f"residues {sorted(given)} do not match {sorted(wanted)} for this type"
        )
    allowed = (0, 1) if tag is FamilyTag.A else (0, 2)
    for name, value in d.split.items():
        if value not in allowed:
            raise UnrealizableDescriptorError(f"{name}={value} cannot occur")


def _normal_form(cycle_type: TypeTuple) -> List[LabelledCycle]:
    m, k_e, k_o, l = cycle_type
    cycles = [
        LabelledCycle(CycleKind.POS, (2 * i + 1, 2 * i + 2), 0) for i in range(m)
    ]
    point = 2 * m + 1
    for label, count in ((0, k_e), (1, k_o)):
        for _ in range(count):
            cycles.append(LabelledCycle(CycleKind.ONE, (point,), label))
            point += 1
    for _ in range(l):
        cycles.append(LabelledCycle(CycleKind.FIXED, (point,), 0))
        point += 1
    return cycles


def _first_one_cycle(cycles: List[LabelledCycle], parity: int) -> int:
    return next(
        i
        for i, c in enumerate(cycles)
        if c.kind is CycleKind.ONE and c.label % 2 == parity
    )


@functools.lru_cache(maxsize=1024)
def canonical_representative(d: ClassDescriptor) -> AffineElement:
    """
    The normal-form involution of a class.

    Transpositions (+2i-1 2i)^0 come first, then even and odd negative
    1-cycles labelled 0 and 1, then fixed points. Residue 2 of f moves the
    first transposition to (-1 2)^1. When f+minus differs from its value
    2 k_o in the normal form, the first transposition becomes (-1 2)^0. In
    the four-way split the last transposition becomes (-n-1 n)^1 when f is
    2 mod 4.

    Raises:
        UnrealizableDescriptorError: If the descriptor names no class
        VerificationError: If the result does not classify back to d
    """
    check_realizable(d)
    m, _, k_o, _ = d.cycle_type
    cycles = _normal_form(d.cycle_type)
    split = d.split
    if "minus_mod4" in split:
        minus, f = split["minus_mod4"], split["f_mod4"]
        if (minus + f) % 4 == 2:
            cycles[0] = LabelledCycle(CycleKind.NEG, (1, 2), 0)
        if f == 2:
            last = cycles[m - 1]
            cycles[m - 1] = LabelledCycle(CycleKind.NEG, last.points, 1)
    elif split.get("f_mod4") == 2:
        if m:
            cycles[0] = LabelledCycle(CycleKind.NEG, (1, 2), 1)
        else:
            i = _first_one_cycle(cycles, 0)
            cycles[i] = LabelledCycle(CycleKind.ONE, cycles[i].points, 2)
    elif split.get("f_plus_minus_mod4", 2 * k_o % 4) != 2 * k_o % 4:
        if m:
            cycles[0] = LabelledCycle(CycleKind.NEG, (1, 2), 0)
        else:
            i = _first_one_cycle(cycles, 1)
            cycles[i] = LabelledCycle(CycleKind.ONE, cycles[i].points, 3)
    elif split.get("lambda_mod2") == 1:
        cycles[0] = LabelledCycle(CycleKind.POS, (1, 2), 1)
    rep = element_from_cycles(d.n, cycles)
    if class_of(rep, d.family) != d:
        raise VerificationError(f"representative of {d} classifies elsewhere")
    return rep


def _ordered_cycles(x: AffineElement) -> List[List[LabelledCycle]]:
    form = labelled_cycle_form(x)
    groups: List[List[LabelledCycle]] = [[], [], [], []]
    for c in form.cycles:
        if c.is_transposition:
            groups[0].append(c)
        elif c.kind is CycleKind.ONE:
            groups[1 + c.label % 2].append(c)
        else:
            groups[3].append(c)
    return groups


def _aligning_permutation(x: AffineElement, y: AffineElement) -> AffineElement:
    """A signed permutation (h, 0) carrying the cycles of x onto those of y."""
    n = x.n
    targets = [0] * n
    signs = [1] * n
    for xs, ys in zip(_ordered_cycles(x), _ordered_cycles(y)):
        for cx, cy in zip(xs, ys):
            for p, q in zip(cx.points, cy.points):
                targets[p - 1] = q - 1
            if cx.is_transposition and cx.kind is not cy.kind:
                signs[cx.points[1] - 1] = -1
    h = SignedPermutation(tuple(targets), tuple(signs))
    return AffineElement(h, (0,) * n)


def _solve_translation(y: AffineElement, delta: List[int]) -> List[int]:
    """A vector w with w - w^sigma = delta, sigma the permutation part of y."""
    w = [0] * y.n
    for c in labelled_cycle_form(y).cycles:
        a = c.points[0] - 1
        if c.is_transposition:
            w[a] = delta[a]
        elif c.kind is CycleKind.ONE:
            w[a] = delta[a] // 2
    return w


def _centraliser_elements(x: AffineElement) -> List[AffineElement]:
    """A few elements commuting with x whose images in C/D are independent."""
    n = x.n
    picks: List[AffineElement] = []
    groups = _ordered_cycles(x)
    for group in (groups[1], groups[2]):
        if group:
            c = group[0]
            picks.append(reflection(n, c.points, -1, c.label))
    if groups[3]:
        d = groups[3][0].points[0]
        picks.append(reflection(n, (d,), -1, 0))
        picks.append(reflection(n, (d,), -1, 1))
        w = [0] * n
        w[d - 1] = 1
        picks.append(AffineElement.translation(w))
    products = []
    for r in range(len(picks) + 1):
        for combo in itertools.combinations(picks, r):
            g = AffineElement.identity(n)
            for c in combo:
                g = multiply(g, c)
            products.append(g)
    return products


def _conjugator_in_a(x: AffineElement, y: AffineElement) -> AffineElement:
    h = _aligning_permutation(x, y)
    moved = conjugate(x, h)
    delta = [b - a for a, b in zip(moved.v, y.v)]
    w = _solve_translation(y, delta)
    excess = sum(w)
    groups = _ordered_cycles(y)
    if groups[3]:
        w[groups[3][0].points[0] - 1] -= excess
    else:
        a, b = groups[0][0].points
        w[a - 1] -= excess // 2
        w[b - 1] -= excess // 2
    return multiply(h, AffineElement.translation(w))


def find_conjugator(
    x: AffineElement, y: AffineElement, family: GroupFamily
) -> Optional[AffineElement]:
    """
    Find g in the family with conjugate(x, g) = y.

    Stage one aligns the cycles of x with those of y by a signed permutation,
    stage two solves for a translation (1, w), and a centraliser element of x
    moves the product into the family when needed.

    Returns:
        Optional[AffineElement]: a verified conjugator, or None when x and y
        lie in different classes
    """
    if class_of(x, family) != class_of(y, family):
        return None
    if x == y:
        return AffineElement.identity(x.n)
    if family.tag is FamilyTag.A:
        candidates = [_conjugator_in_a(x, y)]
    else:
        h = _aligning_permutation(x, y)
        moved = conjugate(x, h)
        delta = [b - a for a, b in zip(moved.v, y.v)]
        g = multiply(h, AffineElement.translation(_solve_translation(y, delta)))
        candidates = [multiply(c, g) for c in _centraliser_elements(x)]
    for g in candidates:
        if member_of(g, family) and conjugate(x, g) == y:
            return g
    raise VerificationError("equal descriptors but no conjugator was found")


def random_member(
    rng: np.random.Generator, d: ClassDescriptor, window: int
) -> AffineElement:
    """
    Draw a class member with labels in [-window, window].

    Raises:
        UnrealizableDescriptorError: If the window cannot hold the class
    """
    check_realizable(d)
    m, k_e, k_o, l = d.cycle_type
    if k_o and window < 1:
        raise UnrealizableDescriptorError("odd labels need window >= 1")
    want = d.key()
    signed = d.tag is not FamilyTag.A
    evens = [a for a in range(-window, window + 1) if a % 2 == 0]
    odds = [a for a in range(-window, window + 1) if a % 2 == 1]
    for _ in range(10_000):
        points = [int(p) + 1 for p in rng.permutation(d.n)]
        cycles = []
        for i in range(m):
            a, b = sorted(points[2 * i: 2 * i + 2])
            kind = CycleKind.NEG if signed and rng.random() < 0.5 else CycleKind.POS
            label = int(rng.integers(-window, window + 1))
            cycles.append(LabelledCycle(kind, (a, b), label))
        rest = points[2 * m:]
        for p in rest[:k_e]:
            cycles.append(LabelledCycle(CycleKind.ONE, (p,), int(rng.choice(evens))))
        for p in rest[k_e: k_e + k_o]:
            cycles.append(LabelledCycle(CycleKind.ONE, (p,), int(rng.choice(odds))))
        x = element_from_cycles(d.n, cycles)
        if member_of(x, d.family) and class_key(x, d.family) == want:
            return x
    raise UnrealizableDescriptorError(f"no member of {d} found in window {window}")


def iter_type_members(
    n: int, cycle_type: TypeTuple, window: int, signed: bool = True
) -> Iterator[AffineElement]:
    """All involutions of one labelled cycle type with labels in the window."""
    labels = list(range(-window, window + 1))
    evens = [a for a in labels if a % 2 == 0]
    odds = [a for a in labels if a % 2 == 1]
    kinds = (CycleKind.POS, CycleKind.NEG) if signed else (CycleKind.POS,)

    def extend(free: Tuple[int, ...], budget: TypeTuple, acc: List[LabelledCycle]):
        if not free:
            yield element_from_cycles(n, acc)
            return
        m, k_e, k_o, l = budget
        p, rest = free[0], free[1:]
        if l:
            yield from extend(rest, (m, k_e, k_o, l - 1), acc + [
                LabelledCycle(CycleKind.FIXED, (p,), 0)
            ])
        for count, pool, nxt in (
            (k_e, evens, (m, k_e - 1, k_o, l)),
            (k_o, odds, (m, k_e, k_o - 1, l)),
        ):
            if count:
                for label in pool:
                    yield from extend(rest, nxt, acc + [
                        LabelledCycle(CycleKind.ONE, (p,), label)
                    ])
        if m:
            for i, q in enumerate(rest):
                remaining = rest[:i] + rest[i + 1:]
                for kind in kinds:
                    for label in labels:
                        yield from extend(remaining, (m - 1, k_e, k_o, l), acc + [
                            LabelledCycle(kind, (p, q), label)
                        ])

    yield from extend(tuple(range(1, n + 1)), cycle_type, [])


def iter_class(d: ClassDescriptor, window: int) -> Iterator[AffineElement]:
    """Members of the class with labels in [-window, window], lazily."""
    want = d.key()
    signed = d.tag is not FamilyTag.A
    for x in iter_type_members(d.n, d.cycle_type, window, signed):
        if member_of(x, d.family) and class_key(x, d.family) == want:
            yield x


def enumerate_class(d: ClassDescriptor, window: int) -> List[AffineElement]:
    """Every member of the class with labels in [-window, window]."""
    return list(iter_class(d, window))


def enumerate_descriptors(family: GroupFamily) -> List[ClassDescriptor]:
    """All realizable class descriptors of the family, in a fixed order."""
    n = family.n
    found = []
    for m in range(n // 2 + 1):
        for k_e in range(n - 2 * m + 1):
            for k_o in range(n - 2 * m - k_e + 1):
                cycle_type = (m, k_e, k_o, n - 2 * m - k_e - k_o)
                fields = split_fields(family.tag, cycle_type)
                values = (0, 1) if family.tag is FamilyTag.A else (0, 2)
                for residues in itertools.product(values, repeat=len(fields)):
                    d = ClassDescriptor(
                        family=family,
                        cycle_type=cycle_type,
                        **dict(zip(fields, residues)),
                    )
                    try:
                        check_realizable(d)
                    except UnrealizableDescriptorError:
                        continue
                    found.append(d)
    return found


def _finite_family_ok(s: SignedPermutation, family: FiniteFamily) -> bool:
    if family is FiniteFamily.A:
        return s.minus() == 0
    if family is FiniteFamily.D:
        return s.minus() % 2 == 0
    return True


def finite_class_of(s: SignedPermutation, family: FiniteFamily) -> FiniteClassDescriptor:
    """
    Signed cycle type of a finite involution.

    Raises:
        NotAnInvolutionError: If s is not an involution
        NotAMemberError: If s is outside the finite family
    """
    if s.is_identity() or not compose(s, s).is_identity():
        raise NotAnInvolutionError("signed permutation")
    if not _finite_family_ok(s, family):
        raise NotAMemberError(f"signed permutation is not in {family.value}")
    m = k = l = 0
    for i, j in enumerate(s.targets):
        if j > i:
            m += 1
        elif j == i:
            if s.signs[i] < 0:
                k += 1
            else:
                l += 1
    minus = None
    if family is FiniteFamily.D and k == 0 and l == 0:
        minus = s.minus() % 4
    return FiniteClassDescriptor(
        family=family, n=s.n, signed_type=(m, k, l), minus_mod4=minus
    )


def finite_family_for(tag: FamilyTag) -> FiniteFamily:
    """The finite Weyl group that the affine family projects onto."""
    if tag is FamilyTag.A:
        return FiniteFamily.A
    if tag is FamilyTag.D:
        return FiniteFamily.D
    return FiniteFamily.B


@functools.lru_cache(maxsize=64)
def finite_class_members(d: FiniteClassDescriptor) -> Tuple[SignedPermutation, ...]:
    """Every member of a finite involution class, sorted for determinism."""
    m, k, l = d.signed_type
    cycle_type = (m, k, 0, l)
    signed = d.family is not FiniteFamily.A
    members = []
    for x in iter_type_members(d.n, cycle_type, 0, signed):
        s = x.sigma
        if _finite_family_ok(s, d.family) and finite_class_of(s, d.family) == d:
            members.append(s)
    return tuple(members)
