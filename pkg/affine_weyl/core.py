"""
Core arithmetic module for affine-weyl.
Handles signed permutations, affine elements (sigma, v), group membership
and the Coxeter generators of each classical affine family.

Products read left to right: in (sigma, v)(tau, u) the left factor acts first.
Points are 1-indexed at the API boundary and 0-indexed inside the tuples.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import InvalidFamilyError, RankMismatchError

logger = logging.getLogger(__name__)

# Labels beyond this magnitude are refused rather than carried along.
LABEL_LIMIT = 2**62

Vector = Tuple[int, ...]


def _check_labels(v: Sequence[int]) -> None:
    for value in v:
        if value > LABEL_LIMIT or value < -LABEL_LIMIT:
            raise OverflowError(f"translation coordinate {value} out of range")


@dataclass(frozen=True)
class SignedPermutation:
    """
    A permutation of the points with a sign per point.

    ``targets[i]`` and ``signs[i]`` say that e_i is sent to
    ``signs[i] * e_targets[i]`` (0-indexed).
    """

    targets: Tuple[int, ...]
    signs: Tuple[int, ...]

    def __post_init__(self):
        n = len(self.targets)
        if len(self.signs) != n:
            raise RankMismatchError("targets and signs differ in length")
        if sorted(self.targets) != list(range(n)):
            raise ValueError(f"targets {self.targets} are not a bijection")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @property
    def n(self) -> int:
        return len(self.targets)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def from_image(cls, image: Iterable[Sequence[int]]) -> "SignedPermutation":
        """Build from 1-indexed ``[target, sign]`` pairs."""
        pairs = [tuple(p) for p in image]
        return cls(tuple(t - 1 for t, _ in pairs), tuple(s for _, s in pairs))

    def image(self) -> List[Tuple[int, int]]:
        """The 1-indexed ``(target, sign)`` pairs."""
        return [(t + 1, s) for t, s in zip(self.targets, self.signs)]

    def is_identity(self) -> bool:
        return all(t == i for i, t in enumerate(self.targets)) and all(
            s == 1 for s in self.signs
        )

    def minus(self) -> int:
        """Number of minus signs."""
        return sum(1 for s in self.signs if s < 0)


@dataclass(frozen=True)
class AffineElement:
    """The element (sigma, v) acting on Z^n as u -> sigma(u) + v."""

    sigma: SignedPermutation
    v: Vector

    def __post_init__(self):
        if len(self.v) != self.sigma.n:
            raise RankMismatchError(
                f"translation has length {len(self.v)}, expected {self.sigma.n}"
            )
        _check_labels(self.v)

    @property
    def n(self) -> int:
        return self.sigma.n

    @classmethod
    def identity(cls, n: int) -> "AffineElement":
        return cls(SignedPermutation.identity(n), (0,) * n)

    @classmethod
    def translation(cls, w: Sequence[int]) -> "AffineElement":
        return cls(SignedPermutation.identity(len(w)), tuple(w))

    def is_identity(self) -> bool:
        return self.sigma.is_identity() and not any(self.v)

    def apply(self, u: Sequence[int]) -> Vector:
        """Image of the lattice point u."""
        moved = acts_on_vector(self.sigma, u)
        return tuple(a + b for a, b in zip(moved, self.v))


class FamilyTag(str, Enum):
    """The five classical affine families."""

    A = "AffineA"
    B = "AffineB"
    BBAR = "AffineBbar"
    C = "AffineC"
    D = "AffineD"

    @classmethod
    def parse(cls, text: str) -> "FamilyTag":
        key = text.strip()
        for tag in cls:
            if key in (tag.value, tag.short):
                return tag
        raise InvalidFamilyError(f"unknown group family '{text}'")

    @property
    def short(self) -> str:
        return self.value[len("Affine"):]


MIN_RANK = {
    FamilyTag.A: 2,
    FamilyTag.B: 3,
    FamilyTag.BBAR: 3,
    FamilyTag.C: 2,
    FamilyTag.D: 4,
}


def _rank_message(tag: FamilyTag, n: int) -> str:
    return f"{tag.value} needs n >= {MIN_RANK[tag]}, got {n}"


class GroupFamily(BaseModel):
    """A family tag together with its rank n."""

    model_config = ConfigDict(frozen=True)

    tag: FamilyTag = Field(..., description="Affine family")
    n: int = Field(..., description="Rank; AffineA of rank n acts on n points")

    @model_validator(mode="after")
    def check_rank(self):
        if self.n < MIN_RANK[self.tag]:
            raise ValueError(_rank_message(self.tag, self.n))
        return self

    @classmethod
    def of(cls, tag, n: int) -> "GroupFamily":
        """Build a family from a tag or its short name, checking the rank."""
        if not isinstance(tag, FamilyTag):
            tag = FamilyTag.parse(str(tag))
        if n < MIN_RANK[tag]:
            raise InvalidFamilyError(_rank_message(tag, n))
        return cls(tag=tag, n=n)

    def __str__(self) -> str:
        return f"{self.tag.short}{self.n}"


def _same_rank(*ranks: int) -> int:
    if len(set(ranks)) != 1:
        raise RankMismatchError(f"rank mismatch: {ranks}")
    return ranks[0]


def compose(s: SignedPermutation, t: SignedPermutation) -> SignedPermutation:
    """The signed permutation st: apply s, then t."""
    _same_rank(s.n, t.n)
    targets = tuple(t.targets[j] for j in s.targets)
    signs = tuple(s.signs[i] * t.signs[j] for i, j in enumerate(s.targets))
    return SignedPermutation(targets, signs)


def invert(s: SignedPermutation) -> SignedPermutation:
    targets = [0] * s.n
    signs = [1] * s.n
    for i, (j, sign) in enumerate(zip(s.targets, s.signs)):
        targets[j] = i
        signs[j] = sign
    return SignedPermutation(tuple(targets), tuple(signs))


def acts_on_vector(s: SignedPermutation, w: Sequence[int]) -> Vector:
    """
    The vector w^s.

    Args:
        s: Signed permutation acting linearly
        w: Integer vector of length s.n

    Returns:
        Vector: sum of w_i * sign_i * e_target(i)

    Raises:
        RankMismatchError: If the lengths differ
    """
    _same_rank(s.n, len(w))
    out = [0] * s.n
    for i, value in enumerate(w):
        out[s.targets[i]] = s.signs[i] * value
    return tuple(out)


def multiply(x: AffineElement, y: AffineElement) -> AffineElement:
    """(sigma, v)(tau, u) = (sigma tau, v^tau + u)."""
    _same_rank(x.n, y.n)
    moved = acts_on_vector(y.sigma, x.v)
    return AffineElement(
        compose(x.sigma, y.sigma), tuple(a + b for a, b in zip(moved, y.v))
    )


def inverse(x: AffineElement) -> AffineElement:
    """(sigma, v)^-1 = (sigma^-1, -v^(sigma^-1))."""
    s = invert(x.sigma)
    return AffineElement(s, tuple(-a for a in acts_on_vector(s, x.v)))


def conjugate(x: AffineElement, g: AffineElement) -> AffineElement:
    """
    The conjugate x^g = g^-1 x g by its closed form.

    For x = (sigma, v) and g = (gamma, w) this is
    (gamma^-1 sigma gamma, v^gamma + w - w^(gamma^-1 sigma gamma)).

    Raises:
        RankMismatchError: If x and g differ in rank
    """
    _same_rank(x.n, g.n)
    sigma = compose(compose(invert(g.sigma), x.sigma), g.sigma)
    moved_v = acts_on_vector(g.sigma, x.v)
    moved_w = acts_on_vector(sigma, g.v)
    return AffineElement(
        sigma, tuple(a + b - c for a, b, c in zip(moved_v, g.v, moved_w))
    )


def word_product(gens: Sequence[AffineElement], word: Iterable[int]) -> AffineElement:
    """Product of generators picked by index, left to right."""
    if not gens:
        raise ValueError("empty generating set")
    result = AffineElement.identity(gens[0].n)
    for index in word:
        result = multiply(result, gens[index])
    return result


def coordinate_sum(v: Sequence[int]) -> int:
    return sum(v)


def member_of(x: AffineElement, family: GroupFamily) -> bool:
    """
    Decide whether x lies in the given affine group.

    AffineC holds everything; AffineB needs an even coordinate sum; AffineBbar
    needs the sum congruent to the number of minus signs; AffineD needs both;
    AffineA needs no minus signs and coordinate sum zero.
    """
    _same_rank(x.n, family.n)
    tag = family.tag
    if tag is FamilyTag.C:
        return True
    total = coordinate_sum(x.v)
    minus = x.sigma.minus()
    if tag is FamilyTag.A:
        return minus == 0 and total == 0
    in_b = total % 2 == 0
    in_bbar = (total - minus) % 2 == 0
    if tag is FamilyTag.B:
        return in_b
    if tag is FamilyTag.BBAR:
        return in_bbar
    return in_b and in_bbar


def reflection(n: int, points: Sequence[int], sign: int, label: int) -> AffineElement:
    """
    A single labelled cycle on 1-indexed points, the identity elsewhere.

    ``(a,)`` with sign -1 gives (-a)^label; ``(a, b)`` gives the transposition
    of that sign with ``label`` written over a.
    """
    targets = list(range(n))
    signs = [1] * n
    v = [0] * n
    if len(points) == 1:
        (a,) = points
        signs[a - 1] = sign
        v[a - 1] = label
    else:
        a, b = points
        targets[a - 1], targets[b - 1] = b - 1, a - 1
        signs[a - 1] = signs[b - 1] = sign
        v[a - 1] = label
        v[b - 1] = -sign * label
    return AffineElement(SignedPermutation(tuple(targets), tuple(signs)), tuple(v))


def generators(family: GroupFamily) -> List[AffineElement]:
    """
    The simple reflections of the family.

    C: r1=(-1)^0, ri=(+i-1 i)^0, r(n+1)=(-n)^1. B: r1..rn and
    s=(-n-1 n)^1. Bbar: t=(-1 2)^1 and r2..r(n+1). D: t, r2..rn, s.
    A: r2..rn and the affine reflection (+1 n)^1.
    """
    n = family.n
    r = [reflection(n, (1,), -1, 0)]
    r += [reflection(n, (i - 1, i), 1, 0) for i in range(2, n + 1)]
    r.append(reflection(n, (n,), -1, 1))
    s = reflection(n, (n - 1, n), -1, 1)
    t = reflection(n, (1, 2), -1, 1)
    tag = family.tag
    if tag is FamilyTag.C:
        return r
    if tag is FamilyTag.B:
        return r[:n] + [s]
    if tag is FamilyTag.BBAR:
        return [t] + r[1:]
    if tag is FamilyTag.D:
        return [t] + r[1:n] + [s]
    return r[1:n] + [reflection(n, (1, n), 1, 1)]
