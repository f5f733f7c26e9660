"""
Constructive module for affine-weyl.
Builds explicit bounded paths in the connected commuting involution graphs
of type (m,0,0,0), (1,k_e>2,0,0) and (m>1,k_e>=2,0,0), together with the
AffineBbar and AffineD classes that reduce to them.

Every class is first carried onto a fixed base element of its type: omega
moves AffineBbar into AffineB (and the odd AffineD classes onto even ones),
and conjugation by an element of AffineC lines the representative up with
the base. Both maps preserve commuting, so paths are built in that world and
mapped back vertex by vertex.
"""

import functools
import logging
import time
from typing import Callable, List, Optional, Sequence, Tuple

from .commuting import commutes_oracle, neighbors_in_class
from .config import settings
from .conjugacy import (
    ClassDescriptor,
    FiniteFamily,
    canonical_representative,
    class_of,
    find_conjugator,
)
from .core import (
    AffineElement,
    FamilyTag,
    GroupFamily,
    SignedPermutation,
    conjugate,
    inverse,
)
from .errors import (
    BudgetExceededError,
    NotAMemberError,
    UnsupportedCaseError,
    VerificationError,
)
from .graph import (
    CONSTRUCTIVE_CLAUSES,
    PathWitness,
    bidirectional_search,
    distance,
    finite_path,
    oriented_type,
    predict_connectivity,
)
from .involutions import (
    CycleKind,
    LabelledCycle,
    LabelledCycleForm,
    element_from_cycles,
    label_bound,
    labelled_cycle_form,
    omega,
)

logger = logging.getLogger(__name__)

Path = List[AffineElement]


class _RecipeMiss(Exception):
    """A recipe step found its precondition unmet."""


# =============================================================================
# CYCLE HELPERS
# =============================================================================


def _pos(a: int, b: int, label: int = 0) -> LabelledCycle:
    return LabelledCycle(CycleKind.POS, (a, b), label)


def _neg(a: int, b: int, label: int = 0) -> LabelledCycle:
    return LabelledCycle(CycleKind.NEG, (a, b), label)


def _one(a: int, label: int = 0) -> LabelledCycle:
    return LabelledCycle(CycleKind.ONE, (a,), label)


def _flip(kind: CycleKind) -> CycleKind:
    return CycleKind.NEG if kind is CycleKind.POS else CycleKind.POS


def _half(total: int) -> int:
    if total % 2:
        raise _RecipeMiss("odd 1-cycle labels cannot form a transposition")
    return total // 2


def _pairs_base(k: int, m: int) -> AffineElement:
    """(+1 2)^0 ... (+2m-1 2m)^0 followed by (-p)^0 on the remaining points."""
    cycles = [_pos(2 * i + 1, 2 * i + 2) for i in range(m)]
    cycles += [_one(p) for p in range(2 * m + 1, k + 1)]
    return element_from_cycles(k, cycles)


def _single_base(k: int) -> AffineElement:
    """(-1 2)^1 (-3)^0 ... (-k)^0."""
    return element_from_cycles(k, [_neg(1, 2, 1)] + [_one(p) for p in range(3, k + 1)])


def _one_cycle_points(form: LabelledCycleForm) -> List[int]:
    return [c.points[0] for c in form.cycles if c.kind is CycleKind.ONE]


def _release(form: LabelledCycleForm, t: LabelledCycle, c: int, d: int) -> AffineElement:
    """
    Open transposition t into 1-cycles and close the 1-cycles at c, d.

    (s a b)^lam becomes (-a)^(2 lam)(-b)^0 and (-c)^mu(-d)^nu becomes
    (-c d)^((mu+nu)/2); both swaps commute with the original cycles.
    """
    a, b = t.points
    merged = _neg(c, d, _half(form.cycle_at(c).label + form.cycle_at(d).label))
    cycles = [merged]
    for cycle in form.cycles:
        if cycle == t:
            cycles += [_one(a, 2 * t.label), _one(b)]
        elif cycle.points[0] not in (c, d):
            cycles.append(cycle)
    return element_from_cycles(form.n, cycles)


def _restrict(
    z: AffineElement, drop: Sequence[int]
) -> Tuple[AffineElement, Tuple[int, ...], Tuple[LabelledCycle, ...]]:
    """
    The element on the points outside drop, renumbered from 1.

    Returns:
        Tuple: the smaller element, the kept points in order, and the cycles
        on the dropped points
    """
    keep = tuple(p for p in range(1, z.n + 1) if p not in drop)
    index = {p: i + 1 for i, p in enumerate(keep)}
    inner = []
    outer = []
    for c in labelled_cycle_form(z).cycles:
        inside = [p in index for p in c.points]
        if all(inside):
            inner.append(LabelledCycle(c.kind, tuple(index[p] for p in c.points), c.label))
        elif any(inside):
            raise _RecipeMiss(f"cycle {c.points} straddles the dropped points")
        else:
            outer.append(c)
    return element_from_cycles(len(keep), inner), keep, tuple(outer)


def _extend(
    path: Path, keep: Tuple[int, ...], outer: Tuple[LabelledCycle, ...], n: int
) -> Path:
    out = []
    for y in path:
        cycles = [
            LabelledCycle(c.kind, tuple(keep[p - 1] for p in c.points), c.label)
            for c in labelled_cycle_form(y).cycles
        ]
        out.append(element_from_cycles(n, cycles + list(outer)))
    return out


def _via(z: AffineElement, c: AffineElement, recipe: Callable[[AffineElement], Path]) -> Path:
    """Run a recipe on z^c and conjugate the path back."""
    back = inverse(c)
    return [conjugate(y, back) for y in recipe(conjugate(z, c))]


def _reach(
    z: AffineElement, predicate: Callable[[AffineElement], bool], depth: int
) -> Path:
    """Breadth-first walk of at most depth steps to a vertex satisfying predicate."""
    if predicate(z):
        return [z]
    d = class_of(z, GroupFamily.of(FamilyTag.B, z.n))
    window = 2 * label_bound(z) + 2
    parent = {z: None}
    frontier = [z]
    for _ in range(depth):
        grown = []
        for u in frontier:
            for w in neighbors_in_class(u, d, window):
                if w in parent:
                    continue
                parent[w] = u
                if predicate(w):
                    chain = [w]
                    while parent[chain[-1]] is not None:
                        chain.append(parent[chain[-1]])
                    return chain[::-1]
                grown.append(w)
        frontier = grown
    raise _RecipeMiss(f"no suitable vertex within {depth} steps")


# =============================================================================
# (m,0,0,0): OPPOSITE PARTNER AND A FINITE BRIDGE
# =============================================================================


def _bridge(y: AffineElement, base: AffineElement, family: FiniteFamily) -> Path:
    """Path between two label-0 vertices through the finite class graph."""
    steps = finite_path(y.sigma, base.sigma, family)
    if steps is None:
        raise _RecipeMiss("finite projections are not connected")
    return [AffineElement(s, (0,) * s.n) for s in steps]


def _pairs_recipe(z: AffineElement, world: FamilyTag) -> Path:
    """
    Path from z to the all-positive base for fixed-point-free z without 1-cycles.

    In AffineB (and AffineD with m even) the partner with every kind flipped
    and labels 0 commutes with z and sits in the base class. AffineD with m
    odd first keeps one even-labelled pair and flips the rest, then flips
    that pair and restores one other, keeping minus at 0 mod 4.
    """
    form = labelled_cycle_form(z)
    m = form.m
    base = _pairs_base(z.n, m)
    if z == base:
        return [z]
    pairs = form.transpositions
    if world is FamilyTag.B or m % 2 == 0:
        y = element_from_cycles(z.n, [LabelledCycle(_flip(t.kind), t.points) for t in pairs])
        family = FiniteFamily.B if world is FamilyTag.B else FiniteFamily.D
        return [z] + _bridge(y, base, family)
    i = next((j for j, t in enumerate(pairs) if t.label % 2 == 0), None)
    if i is None:
        raise _RecipeMiss("no transposition with an even label")
    j = 0 if i else 1
    x1 = [t if h == i else LabelledCycle(_flip(t.kind), t.points) for h, t in enumerate(pairs)]
    y1 = [LabelledCycle(_flip(t.kind), t.points) for t in pairs]
    y1[j] = LabelledCycle(pairs[j].kind, pairs[j].points)
    x1_el = element_from_cycles(z.n, x1)
    y1_el = element_from_cycles(z.n, y1)
    return [z, x1_el] + _bridge(y1_el, base, FiniteFamily.D)


# =============================================================================
# (1,k_e>2,0,0): FIVE-POINT CHAINS AND POINT FREEING
# =============================================================================


def _even_halves(form: LabelledCycleForm, points: Sequence[int]) -> List[int]:
    return [_half(form.cycle_at(p).label) for p in points]


def _five_a(z: AffineElement) -> Path:
    """z = (+1 5)^lam (-2)^2p (-3)^2q (-4)^2r."""
    form = labelled_cycle_form(z)
    t = form.cycle_at(1)
    if t.kind is not CycleKind.POS or t.points != (1, 5):
        raise _RecipeMiss("expected (+1 5)")
    p, q, r = _even_halves(form, (2, 3, 4))
    x1 = element_from_cycles(
        5, [_neg(1, 5, 1 - p - q - r), _one(2, 2 * p), _one(3, 2 * q), _one(4, 2 * r)]
    )
    x2 = element_from_cycles(
        5, [_neg(2, 3, p + q), _one(1, 2 * (1 - p - q)), _one(4, 2 * r), _one(5, -2 * r)]
    )
    x3 = element_from_cycles(
        5, [_neg(4, 5, 0), _one(1, 2 * (1 - p - q)), _one(2, 2 * (p + q)), _one(3)]
    )
    return [z, x1, x2, x3, _single_base(5)]


def _five_b(z: AffineElement) -> Path:
    """z = (+3 4)^lam (-1)^2p (-2)^2q (-5)^2r."""
    form = labelled_cycle_form(z)
    t = form.cycle_at(3)
    if t.kind is not CycleKind.POS or t.points != (3, 4):
        raise _RecipeMiss("expected (+3 4)")
    p, q, r = _even_halves(form, (1, 2, 5))
    x = element_from_cycles(
        5, [_pos(1, 5, p - r), _one(2, 2 * q), _one(3, 2 * t.label), _one(4)]
    )
    return [z] + _five_a(x)


def _five_c(z: AffineElement) -> Path:
    """z = (s 1 2)^lam (-3)^2p (-4)^2q (-5)^2r."""
    form = labelled_cycle_form(z)
    t = form.cycle_at(1)
    p, q, r = _even_halves(form, (3, 4, 5))
    x = element_from_cycles(
        5, [_pos(3, 4, p - q), _one(1, 2 * t.label), _one(2), _one(5, 2 * r)]
    )
    return [z] + _five_b(x)


def _base_stabiliser(t: LabelledCycle, low: Sequence[int], high: Sequence[int]) -> AffineElement:
    """
    A signed permutation fixing (-1 2)^1(-3)^0(-4)^0(-5)^0.

    It sends the points of t in order to low (inside {1,2}) and high (inside
    {3,4,5}) and turns a negative t positive by a sign at its larger point.
    """
    a, b = t.points
    image = {}
    for group, wanted in (((1, 2), low), ((3, 4, 5), high)):
        sources = [p for p in (a, b) if p in group]
        rest = [p for p in group if p not in sources]
        others = [p for p in group if p not in wanted]
        for src, dst in zip(sources + rest, list(wanted) + others):
            image[src] = dst
    pairs = [[image[i], 1] for i in range(1, 6)]
    if t.kind is CycleKind.NEG:
        pairs[b - 1][1] = -1
    return AffineElement(SignedPermutation.from_image(pairs), (0,) * 5)


def _single_five(z: AffineElement) -> Path:
    base = _single_base(5)
    if z == base:
        return [z]
    t = labelled_cycle_form(z).transpositions[0]
    a, b = t.points
    if (a, b) == (1, 2):
        return _five_c(z)
    if a <= 2:
        c = _base_stabiliser(t, (1,), (5,))
        recipe = _five_a
    else:
        c = _base_stabiliser(t, (), (3, 4))
        recipe = _five_b
    if conjugate(base, c) != base:
        raise _RecipeMiss("stabiliser moves the base")
    return _via(z, c, recipe)


def _free_largest(form: LabelledCycleForm, t: LabelledCycle) -> AffineElement:
    points = sorted(p for p in _one_cycle_points(form))
    if len(points) < 2:
        raise _RecipeMiss("too few 1-cycles to close")
    c, d = points[-2:]
    return _release(form, t, c, d)


def _single_recipe(z: AffineElement) -> Path:
    """
    Path to (-1 2)^1(-3)^0...(-k)^0 for one transposition and k-2 even 1-cycles.

    Above rank five a hop opens the transposition, leaving (-b)^0 at its
    larger point b >= 3, and the rest is solved in rank k-1. A transposition
    on (1 2) is first moved onto the two largest 1-cycles.
    """
    k = z.n
    if k == 5:
        return _single_five(z)
    if z == _single_base(k):
        return [z]
    form = labelled_cycle_form(z)
    t = form.transpositions[0]
    head: Path = []
    if t.points == (1, 2):
        head.append(z)
        z = _free_largest(form, t)
        form = labelled_cycle_form(z)
        t = form.transpositions[0]
    y = _free_largest(form, t)
    sub, keep, outer = _restrict(y, (t.points[1],))
    return head + [z] + _extend(_single_recipe(sub), keep, outer, k)


# =============================================================================
# (m>1,k_e>=2,0,0): TAIL FREEING
# =============================================================================


def _has_cycle(points: Tuple[int, int], label: int) -> Callable[[AffineElement], bool]:
    def check(w: AffineElement) -> bool:
        c = labelled_cycle_form(w).cycle_at(points[1])
        return c.points == points and c.label == label

    return check


@functools.lru_cache(maxsize=4096)
def _rank_four_bridge(sub: AffineElement) -> Tuple[AffineElement, ...]:
    """Shortest path from a rank-4 (2,0,0,0) vertex to the all-positive base."""
    found = distance(
        sub, _pairs_base(4, 2), GroupFamily.of(FamilyTag.B, 4),
        max_window=max(label_bound(sub), 1) + 3,
    )
    if found is None:
        raise _RecipeMiss("no bridge in rank 4")
    return found.witness.vertices


def _many_recipe(z: AffineElement) -> Path:
    """
    Path to the all-positive base with 1-cycles (-p)^0 on the tail.

    While more than two 1-cycles remain, a transposition reaching the tail
    is opened and its tail point dropped; otherwise a tail 1-cycle labelled
    0 is dropped directly, or a hop moves a transposition onto the tail.
    With two 1-cycles left, a vertex carrying (k-1 k)^0 is reached, its
    transposition is swapped for the tail 1-cycles and the remaining
    (m,0,0,0) problem is solved on 2m points.
    """
    form = labelled_cycle_form(z)
    k, m, e = z.n, form.m, form.k_e
    if z == _pairs_base(k, m):
        return [z]
    if e > 2:
        tail = [t for t in form.transpositions if t.points[1] > 2 * m]
        if tail:
            t = tail[-1]
            y = _free_largest(form, t)
            sub, keep, outer = _restrict(y, (t.points[1],))
            return [z] + _extend(_many_recipe(sub), keep, outer, k)
        zeros = [p for p in _one_cycle_points(form) if p > 2 * m and form.cycle_at(p).label == 0]
        if zeros:
            sub, keep, outer = _restrict(z, (zeros[-1],))
            return _extend(_many_recipe(sub), keep, outer, k)
        tail_points = [p for p in _one_cycle_points(form) if p > 2 * m]
        c, d = tail_points[-2:]
        return [z] + _many_recipe(_release(form, form.transpositions[-1], c, d))
    head = _reach(z, _has_cycle((k - 1, k), 0), 2)
    y = head[-1]
    y_form = labelled_cycle_form(y)
    c, d = sorted(_one_cycle_points(y_form))
    y2 = _release(y_form, y_form.cycle_at(k), c, d)
    sub, keep, outer = _restrict(y2, (k - 1, k))
    if 2 * m == 4:
        tail_path = list(_rank_four_bridge(sub))
    else:
        tail_path = _pairs_recipe(sub, FamilyTag.B)
    return head + _extend(tail_path, keep, outer, k)


# =============================================================================
# SHORTCUTS, FALLBACK AND ENTRY POINT
# =============================================================================


def shortcut(path: Sequence[AffineElement]) -> Path:
    """
    Shorten a walk: drop repeated stretches and jump to the farthest later
    vertex commuting with the current one.
    """
    path = list(path)
    if not path:
        return path
    out = [path[0]]
    i = 0
    last = len(path) - 1
    while i < last:
        cur = path[i]
        i = max(j for j in range(i, last + 1) if path[j] == cur)
        if i == last:
            break
        i = max(
            j for j in range(i + 1, last + 1) if path[j] != cur and commutes_oracle(cur, path[j])
        )
        out.append(path[i])
    return out


def _search_within(
    x: AffineElement,
    a: AffineElement,
    d: ClassDescriptor,
    bound: int,
    max_nodes: Optional[int],
    max_seconds: Optional[float],
) -> Path:
    start = max(label_bound(x), label_bound(a))
    slack = settings.max_window_slack
    stop = start + (slack if slack is not None else bound)
    deadline = time.monotonic() + (max_seconds if max_seconds is not None else settings.max_seconds)
    for window in range(start, stop + 1):
        logger.debug("fallback search in window %d", window)
        path = bidirectional_search(
            x, a, lambda z, L=window: neighbors_in_class(z, d, L), max_nodes, deadline
        )
        if path is not None and len(path) - 1 <= bound:
            return path
    raise VerificationError(f"no path of length at most {bound} up to window {stop}")


def _world(d: ClassDescriptor) -> Tuple[bool, FamilyTag, str]:
    """Whether omega is applied, the family the recipe runs in, and which recipe."""
    m, e, o, l = oriented_type(d)
    use_omega = d.tag is FamilyTag.BBAR or (d.tag is FamilyTag.D and d.cycle_type[2] > 0)
    if e == 0:
        return use_omega, (FamilyTag.D if d.tag is FamilyTag.D else FamilyTag.B), "pairs"
    return use_omega, FamilyTag.B, ("single" if m == 1 else "many")


def _native(recipe: str, n: int, m: int) -> AffineElement:
    return _single_base(n) if recipe == "single" else _pairs_base(n, m)


@functools.lru_cache(maxsize=256)
def _carrier(d: ClassDescriptor) -> Tuple[AffineElement, AffineElement]:
    """Conjugator c taking the representative of d onto its base element, with c^-1."""
    use_omega, _, recipe = _world(d)
    a = canonical_representative(d)
    a0 = omega(a) if use_omega else a
    native = _native(recipe, d.n, d.cycle_type[0])
    c = find_conjugator(a0, native, GroupFamily.of(FamilyTag.C, d.n))
    if c is None:
        raise _RecipeMiss("representative is not conjugate to the base")
    return c, inverse(c)


def _run(recipe: str, z: AffineElement, world: FamilyTag) -> Path:
    if recipe == "pairs":
        return _pairs_recipe(z, world)
    if recipe == "single":
        return _single_recipe(z)
    return _many_recipe(z)


def constructive_path(
    x: AffineElement,
    d: ClassDescriptor,
    max_nodes: Optional[int] = None,
    max_seconds: Optional[float] = None,
) -> PathWitness:
    """
    A verified path from x to canonical_representative(d) within the proved bound.

    Args:
        x: A member of class d
        d: A class of type (m,0,0,0), (1,k_e>2,0,0) or (m>1,k_e>=2,0,0) up to omega

    Returns:
        PathWitness: validated walk whose length is at most the verdict bound

    Raises:
        UnsupportedCaseError: If d is outside the constructive cases
        NotAMemberError: If x is not in class d
        VerificationError: If neither the recipe nor the fallback meets the bound
    """
    verdict = predict_connectivity(d)
    if verdict.clause not in CONSTRUCTIVE_CLAUSES:
        raise UnsupportedCaseError(
            f"no explicit construction for type {d.cycle_type} in {d.tag.value}"
        )
    if class_of(x, d.family) != d:
        raise NotAMemberError("element is not in the requested class")
    a = canonical_representative(d)
    if x == a:
        return PathWitness((x,))
    bound = verdict.bound
    use_omega, world, recipe = _world(d)
    x0 = omega(x) if use_omega else x
    try:
        c, back = _carrier(d)
        walk = _run(recipe, conjugate(x0, c), world)
        vertices = [conjugate(y, back) for y in walk]
        if use_omega:
            vertices = [omega(y) for y in vertices]
        witness = PathWitness(tuple(shortcut(vertices))).validate(d)
        if witness.vertices[0] != x or witness.vertices[-1] != a:
            raise _RecipeMiss("walk does not join x to the representative")
        if witness.length <= bound:
            logger.debug("%s recipe gave length %d", recipe, witness.length)
            return witness
        logger.warning(
            "%s recipe gave length %d above bound %d; searching", recipe, witness.length, bound
        )
    except (_RecipeMiss, VerificationError) as exc:
        logger.warning("%s recipe failed (%s); searching", recipe, exc)
    except BudgetExceededError:
        logger.warning("%s recipe ran out of budget; searching", recipe)
    path = _search_within(x, a, d, bound, max_nodes, max_seconds)
    return PathWitness(tuple(path)).validate(d)
