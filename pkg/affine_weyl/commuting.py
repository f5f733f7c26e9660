"""
Commuting module for affine-weyl.
Decides whether two involutions commute, generates commuting neighbours
inside a conjugacy class and builds the per-clause commuting tables.
"""

import functools
import itertools
import logging
from typing import Callable, Dict, Iterator, List, Sequence, Set, Tuple

from .conjugacy import ClassDescriptor, class_key
from .core import (
    AffineElement,
    FamilyTag,
    acts_on_vector,
    compose,
    member_of,
    multiply,
)
from .errors import NotAnInvolutionError, RankMismatchError
from .involutions import (
    CycleKind,
    LabelledCycle,
    LabelledCycleForm,
    element_from_cycles,
    is_involution,
    labelled_cycle_form,
)
from .unionfind import UnionFind

logger = logging.getLogger(__name__)


def commutes_oracle(x: AffineElement, y: AffineElement) -> bool:
    """Ground truth: xy = yx by multiplication."""
    return multiply(x, y) == multiply(y, x)


def _orbits(x: AffineElement, y: AffineElement) -> List[List[int]]:
    uf: UnionFind[int] = UnionFind(range(x.n))
    for i in range(x.n):
        uf.union(i, x.sigma.targets[i])
        uf.union(i, y.sigma.targets[i])
    return uf.groups()


def _rejects(orbit: List[int], x: AffineElement, y: AffineElement) -> bool:
    """Rejection filters for the orbit shapes with a known commuting rule."""
    sx, sy = x.sigma, y.sigma
    if len(orbit) == 1:
        (a,) = orbit
        return sx.signs[a] == sy.signs[a] == -1 and x.v[a] != y.v[a]
    if len(orbit) == 2:
        a, b = orbit
        x_moves = sx.targets[a] == b
        y_moves = sy.targets[a] == b
        if x_moves and y_moves:
            return sx.signs[a] == sy.signs[a] and x.v[a] != y.v[a]
        mover, still = (x, y) if x_moves else (y, x)
        signs = (still.sigma.signs[a], still.sigma.signs[b])
        if signs[0] != signs[1]:
            return True
        if signs[0] == 1:
            return False
        lam = mover.v[a]
        mu, nu = still.v[a], still.v[b]
        if mover.sigma.signs[a] == 1:
            return mu - nu != 2 * lam
        return mu + nu != 2 * lam
    if len(orbit) == 3:
        return True
    if len(orbit) == 4:
        x_product = 1
        y_product = 1
        for i in orbit:
            if sx.targets[i] > i:
                x_product *= sx.signs[i]
            if sy.targets[i] > i:
                y_product *= sy.signs[i]
        return x_product != y_product
    return False


def commutes_fast(x: AffineElement, y: AffineElement) -> bool:
    """
    Structural commuting test for two involutions.

    Orbits of the points under the unsigned parts of x and y are built with a
    union-find. Orbits of size one and two are decided by the 1-cycle and
    transposition rules, orbits of size three never commute, and four-point
    orbits must have matching sign products. The surviving pairs are settled
    by sigma_x sigma_y = sigma_y sigma_x together with
    v_x^sigma_y + v_y = v_y^sigma_x + v_x.

    Raises:
        NotAnInvolutionError: If either argument is not an involution
        RankMismatchError: If the ranks differ
    """
    if x.n != y.n:
        raise RankMismatchError(f"rank mismatch: {x.n} and {y.n}")
    if not is_involution(x) or not is_involution(y):
        raise NotAnInvolutionError()
    for orbit in _orbits(x, y):
        if _rejects(orbit, x, y):
            return False
    if compose(x.sigma, y.sigma) != compose(y.sigma, x.sigma):
        return False
    left = acts_on_vector(y.sigma, x.v)
    right = acts_on_vector(x.sigma, y.v)
    return all(a + b == c + d for a, b, c, d in zip(left, y.v, right, x.v))


# =============================================================================
# NEIGHBOUR GENERATION
# =============================================================================


def _block_commutes(
    n: int, own: Sequence[LabelledCycle], other: Sequence[LabelledCycle]
) -> bool:
    return commutes_oracle(element_from_cycles(n, own), element_from_cycles(n, other))


@functools.lru_cache(maxsize=65536)
def _block_options(
    n: int, block: Tuple[LabelledCycle, ...], window: int, signed: bool
) -> Tuple[Tuple[LabelledCycle, ...], ...]:
    """
    Labelled cycles of a neighbour on the points of one or two x-cycles.

    A single x-cycle is mapped to itself by the neighbour's unsigned part;
    a pair of equal-sized x-cycles is swapped by it.
    """
    labels = range(-window, window + 1)
    kinds = (CycleKind.POS, CycleKind.NEG) if signed else (CycleKind.POS,)

    def one_point(p: int) -> List[LabelledCycle]:
        out = [LabelledCycle(CycleKind.FIXED, (p,), 0)]
        if signed:
            out += [LabelledCycle(CycleKind.ONE, (p,), a) for a in labels]
        return out

    def pair(a: int, b: int) -> List[LabelledCycle]:
        a, b = sorted((a, b))
        return [LabelledCycle(k, (a, b), lam) for k in kinds for lam in labels]

    if len(block) == 1:
        (c,) = block
        if not c.is_transposition:
            candidates = [(o,) for o in one_point(c.points[0])]
        else:
            a, b = c.points
            candidates = [(o,) for o in pair(a, b)]
            candidates += list(itertools.product(one_point(a), one_point(b)))
    else:
        c, d = block
        if not c.is_transposition:
            candidates = [(o,) for o in pair(c.points[0], d.points[0])]
        else:
            (a, b), (p, q) = c.points, d.points
            candidates = []
            for first, second in (((a, p), (b, q)), ((a, q), (b, p))):
                candidates += list(itertools.product(pair(*first), pair(*second)))
    return tuple(opt for opt in candidates if _block_commutes(n, block, opt))


def _type_of(cycles: Sequence[LabelledCycle]) -> Tuple[int, int, int, int]:
    m = k_e = k_o = l = 0
    for c in cycles:
        if c.is_transposition:
            m += 1
        elif c.kind is CycleKind.FIXED:
            l += 1
        elif c.label % 2 == 0:
            k_e += 1
        else:
            k_o += 1
    return (m, k_e, k_o, l)


def neighbors_in_class(
    x: AffineElement, d: ClassDescriptor, window: int
) -> Iterator[AffineElement]:
    """
    Every y != x in class d, labels within [-window, window], commuting with x.

    The unsigned part of y commutes with that of x, so it permutes the
    cycles of x: each x-cycle is kept or swapped with an x-cycle of the same
    size. Options are generated per block, combined under the cycle type of
    d, and kept when they land in the class.

    Yields:
        AffineElement: neighbours in a deterministic order without repeats
    """
    form: LabelledCycleForm = labelled_cycle_form(x)
    n = x.n
    target = d.cycle_type
    want = d.key()
    signed = d.tag is not FamilyTag.A
    def options(block: Tuple[LabelledCycle, ...]):
        return _block_options(n, block, window, signed)

    def fits(cycles: List[LabelledCycle]) -> bool:
        return all(a <= b for a, b in zip(_type_of(cycles), target))

    seen: Set[AffineElement] = set()

    def extend(todo: Tuple[LabelledCycle, ...], acc: List[LabelledCycle]):
        if not todo:
            if _type_of(acc) != target:
                return
            y = element_from_cycles(n, acc)
            if y == x or y in seen:
                return
            if member_of(y, d.family) and class_key(y, d.family) == want:
                seen.add(y)
                yield y
            return
        head, rest = todo[0], todo[1:]
        for opt in options((head,)):
            grown = acc + list(opt)
            if fits(grown):
                yield from extend(rest, grown)
        for i, partner in enumerate(rest):
            if len(partner.points) != len(head.points):
                continue
            remaining = rest[:i] + rest[i + 1:]
            for opt in options((head, partner)):
                grown = acc + list(opt)
                if fits(grown):
                    yield from extend(remaining, grown)

    yield from extend(form.cycles, [])


# =============================================================================
# COMMUTING TABLES
# =============================================================================

Clause = Tuple[AffineElement, AffineElement, bool]

CLAUSE_RANK = 4


def _pair(kind: CycleKind, a: int, b: int, label: int) -> LabelledCycle:
    return LabelledCycle(kind, (a, b), label)


def _one(a: int, label: int) -> LabelledCycle:
    return LabelledCycle(CycleKind.ONE, (a,), label)


def _kind(sign: int) -> CycleKind:
    return CycleKind.POS if sign == 1 else CycleKind.NEG


def _elements(x_cycles, y_cycles) -> Tuple[AffineElement, AffineElement]:
    return (
        element_from_cycles(CLAUSE_RANK, x_cycles),
        element_from_cycles(CLAUSE_RANK, y_cycles),
    )


def _one_cycle_labels(lam: int, mu: int) -> Clause:
    return (*_elements([_one(1, lam)], [_one(1, mu)]), lam == mu)


def _one_cycle_fixed(lam: int) -> Clause:
    return (*_elements([_one(1, lam), _one(2, 0)], [_one(2, 0)]), True)


def _same_kind(sign: int):
    def build(lam: int, mu: int) -> Clause:
        k = _kind(sign)
        return (*_elements([_pair(k, 1, 2, lam)], [_pair(k, 1, 2, mu)]), lam == mu)

    return build


def _opposite_kinds(lam: int, mu: int) -> Clause:
    x, y = _elements([_pair(CycleKind.POS, 1, 2, lam)], [_pair(CycleKind.NEG, 1, 2, mu)])
    return (x, y, True)


def _against_one_cycles(sign: int):
    def build(lam: int, mu: int, nu: int) -> Clause:
        x, y = _elements([_pair(_kind(sign), 1, 2, lam)], [_one(1, mu), _one(2, nu)])
        expected = (mu - nu if sign == 1 else mu + nu) == 2 * lam
        return (x, y, expected)

    return build


def _against_mixed(sign: int):
    def build(lam: int, mu: int) -> Clause:
        x, y = _elements([_pair(_kind(sign), 1, 2, lam)], [_one(1, mu)])
        return (x, y, False)

    return build


def _against_fixed(sign: int):
    def build(lam: int) -> Clause:
        x, y = _elements([_pair(_kind(sign), 1, 2, lam)], [_one(3, 0)])
        return (x, y, True)

    return build


def _overlapping(lam: int, mu: int) -> Clause:
    x, y = _elements(
        [_pair(CycleKind.POS, 1, 2, lam)], [_pair(CycleKind.POS, 2, 3, mu)]
    )
    return (x, y, False)


def _double(s1: int, s2: int, t1: int, t2: int):
    """x = (s1 1 2)(s2 3 4) against y = (t1 1 3)(t2 2 4)."""

    def build(l1: int, l2: int, m1: int, m2: int) -> Clause:
        x, y = _elements(
            [_pair(_kind(s1), 1, 2, l1), _pair(_kind(s2), 3, 4, l2)],
            [_pair(_kind(t1), 1, 3, m1), _pair(_kind(t2), 2, 4, m2)],
        )
        expected = s1 * s2 == t1 * t2 and m1 - l1 == s1 * m2 - t1 * l2
        return (x, y, expected)

    return build


def _sign_name(sign: int) -> str:
    return "pos" if sign == 1 else "neg"


def _build_clauses() -> Dict[str, Tuple[int, Callable[..., Clause]]]:
    table: Dict[str, Tuple[int, Callable[..., Clause]]] = {
        "one-cycle-labels": (2, _one_cycle_labels),
        "one-cycle-fixed": (1, _one_cycle_fixed),
        "opposite-transpositions": (2, _opposite_kinds),
        "overlapping-transpositions": (2, _overlapping),
    }
    for sign in (1, -1):
        name = _sign_name(sign)
        table[f"same-{name}-transpositions"] = (2, _same_kind(sign))
        table[f"{name}-transposition-one-cycles"] = (3, _against_one_cycles(sign))
        table[f"{name}-transposition-mixed"] = (2, _against_mixed(sign))
        table[f"{name}-transposition-fixed"] = (1, _against_fixed(sign))
    for s1, s2, t1, t2 in itertools.product((1, -1), repeat=4):
        name = "double-{}{}-{}{}".format(*(("+" if s > 0 else "-") for s in (s1, s2, t1, t2)))
        table[name] = (4, _double(s1, s2, t1, t2))
    return table


COMMUTING_CLAUSES = _build_clauses()


def commuting_clause(name: str, labels: Sequence[int]) -> Clause:
    """
    One instance of a commuting rule.

    Args:
        name: Key of COMMUTING_CLAUSES
        labels: One label per free parameter of the clause

    Returns:
        Clause: (x, y, whether the rule says they commute)
    """
    arity, build = COMMUTING_CLAUSES[name]
    if len(labels) != arity:
        raise ValueError(f"clause {name} takes {arity} labels, got {len(labels)}")
    return build(*labels)


def iter_clause_grid(name: str, window: int) -> Iterator[Tuple[Tuple[int, ...], Clause]]:
    arity, _ = COMMUTING_CLAUSES[name]
    for labels in itertools.product(range(-window, window + 1), repeat=arity):
        yield labels, commuting_clause(name, labels)
