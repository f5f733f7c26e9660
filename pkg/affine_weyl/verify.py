"""
Verification suites for affine-weyl.
Each suite re-derives a family of facts by brute force and compares them
with the library's closed forms, predictions and constructions.
"""

import itertools
import logging
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .commuting import COMMUTING_CLAUSES, commutes_fast, commutes_oracle, iter_clause_grid
from .config import settings
from .conjugacy import (
    ClassDescriptor,
    FiniteClassDescriptor,
    FiniteFamily,
    canonical_representative,
    class_of,
    enumerate_descriptors,
    find_conjugator,
    finite_class_members,
    random_member,
)
from .constructive import constructive_path
from .core import (
    MIN_RANK,
    AffineElement,
    FamilyTag,
    GroupFamily,
    SignedPermutation,
    conjugate,
    generators,
    member_of,
    multiply,
    word_product,
)
from .errors import (
    AffineWeylError,
    BudgetExceededError,
    UnrealizableDescriptorError,
    VerificationError,
)
from .graph import (
    CONSTRUCTIVE_CLAUSES,
    VerdictStatus,
    WindowSpec,
    distance,
    finite_diameter,
    obstruction,
    predict_connectivity,
    predict_finite_connectivity,
    window_graph,
)
from .involutions import (
    invariants,
    iter_involutions,
    label_bound,
    labelled_cycle_form,
    omega,
    orientation_variants,
    random_involution,
    structurally_involutive,
)
from .notation import format_descriptor, parse_element

logger = logging.getLogger(__name__)

WORKED_EXAMPLE = "(+1 2)^1 (-3 4)^3 (-5)^2 (-6)^4 (+7)^0"

# Largest number of classes sharing one labelled cycle type.
SPLIT_COUNTS = {
    FamilyTag.A: 2,
    FamilyTag.B: 2,
    FamilyTag.BBAR: 2,
    FamilyTag.C: 1,
    FamilyTag.D: 4,
}

# Seconds; overruns are logged, never reported.
LEMMA_BUDGET = 10.0
CONSTRUCTIVE_BUDGET = 300.0


@dataclass(frozen=True)
class SuiteOptions:
    """Sizes and caps for a verification run."""

    seed: int = 7
    window: int = 2
    lemma_window: int = 3
    involution_rank: int = 4
    involution_window: int = 2
    pair_window: int = 1
    conjugacy_rank: int = 5
    conjugacy_window: int = 2
    cross_pairs: int = 500
    conjugations: int = 10_000
    conjugation_rank: int = 8
    connectivity_window: int = 2
    sample_pairs: int = 200
    sample_members: int = 500
    finite_rank: int = 6
    max_nodes: int = 200_000
    max_seconds: float = 300.0
    ranks: Tuple[int, ...] = (4, 5, 6)

    @classmethod
    def from_settings(cls, seed: int, window: int, **overrides) -> "SuiteOptions":
        values = dict(
            seed=seed,
            window=window,
            sample_pairs=settings.sample_pairs,
            sample_members=settings.sample_members,
            max_nodes=settings.max_nodes,
            max_seconds=settings.max_seconds,
        )
        values.update(overrides)
        return cls(**values)


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: List[str] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, what: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(what)

    def record(self) -> Dict:
        return {
            "suite": self.name,
            "checks": self.checks,
            "failures": len(self.failures),
            "skipped": len(self.skipped),
            "passed": self.passed,
            "details": self.failures[:20],
        }


def _rng(opts: SuiteOptions, name: str) -> np.random.Generator:
    return np.random.default_rng([opts.seed, SUITE_NAMES.index(name)])


def _within_budget(name: str, started: float, budget: float) -> None:
    # Timings go to the log only; reports must stay byte-identical per seed.
    elapsed = time.perf_counter() - started
    if elapsed > budget:
        logger.warning("suite %s took %.1fs, budget %.0fs", name, elapsed, budget)
    else:
        logger.debug("suite %s took %.1fs", name, elapsed)


# =============================================================================
# SUITES
# =============================================================================


def suite_lemmas(opts: SuiteOptions) -> SuiteResult:
    """Every clause of the commuting tables over a label grid."""
    result = SuiteResult("lemmas")
    started = time.perf_counter()
    for name in COMMUTING_CLAUSES:
        for labels, (x, y, expected) in iter_clause_grid(name, opts.lemma_window):
            result.check(commutes_oracle(x, y) == expected, f"{name}{labels}: oracle")
            result.check(commutes_fast(x, y) == expected, f"{name}{labels}: structural")
    _within_budget("lemmas", started, LEMMA_BUDGET)
    return result


def iter_elements(n: int, window: int) -> Iterator[AffineElement]:
    """Every element of rank n with labels in [-window, window]."""
    labels = range(-window, window + 1)
    for targets in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            sigma = SignedPermutation(targets, signs)
            for v in itertools.product(labels, repeat=n):
                yield AffineElement(sigma, v)


def _check_forms(result: SuiteResult, x: AffineElement) -> None:
    form = labelled_cycle_form(x)
    result.check(form.to_element() == x, f"cycle form of {x} does not rebuild it")
    w = omega(x)
    result.check(omega(w) == x, f"omega is not an involution on {x}")
    inv, inv_w = invariants(x), invariants(w)
    result.check(inv_w.minus == inv.minus, f"omega changes minus on {x}")
    result.check(inv_w.sum == inv.minus - inv.sum, f"omega sum rule fails on {x}")
    result.check((inv_w.f - inv.minus + inv.f) % 4 == 0, f"omega f rule fails on {x}")
    t, t_w = form.cycle_type, labelled_cycle_form(w).cycle_type
    result.check(
        (t_w.m, t_w.k_e, t_w.k_o, t_w.l) == (t.m, t.k_o, t.k_e, t.l),
        f"omega type rule fails on {x}",
    )
    variants = orientation_variants(form)
    result.check(
        all((f - variants[0]) % 4 == 0 for f in variants),
        f"f mod 4 depends on orientation for {x}",
    )


def suite_involutions(opts: SuiteOptions) -> SuiteResult:
    """Involution criteria on every small element, then cycle forms and omega."""
    result = SuiteResult("involutions")
    for n in range(1, opts.involution_rank + 1):
        for x in iter_elements(n, opts.involution_window):
            squared = multiply(x, x).is_identity()
            result.check(squared == structurally_involutive(x), f"criteria disagree on {x}")
    for n in range(2, opts.involution_rank + 1):
        for x in iter_involutions(n, 1):
            _check_forms(result, x)
    x = parse_element(WORKED_EXAMPLE)
    inv = invariants(x)
    result.check((inv.sum, inv.f, inv.minus) == (12, 14, 4), "worked example invariants")
    inv_w = invariants(omega(x))
    result.check((inv_w.sum, inv_w.minus) == (-8, 4), "worked example omega invariants")
    result.check(
        -10 in orientation_variants(labelled_cycle_form(omega(x))),
        "worked example omega f",
    )
    return result


def _conjugacy_families() -> List[GroupFamily]:
    return [
        GroupFamily.of(FamilyTag.C, 3),
        GroupFamily.of(FamilyTag.B, 3),
        GroupFamily.of(FamilyTag.BBAR, 3),
        GroupFamily.of(FamilyTag.D, 4),
        GroupFamily.of(FamilyTag.A, 4),
    ]


def _pair_families() -> List[GroupFamily]:
    return _conjugacy_families() + [GroupFamily.of(FamilyTag.A, 3)]


def _check_conjugator(
    result: SuiteResult,
    x: AffineElement,
    y: AffineElement,
    same: bool,
    family: GroupFamily,
) -> None:
    try:
        g = find_conjugator(x, y, family)
    except VerificationError as exc:
        result.check(False, f"{family}: {exc}")
        return
    if not same:
        result.check(g is None, f"{family}: conjugator between classes for {x}, {y}")
        return
    result.check(
        g is not None and member_of(g, family) and conjugate(x, g) == y,
        f"{family}: no verified conjugator for {x}, {y}",
    )


def suite_conjugacy(opts: SuiteOptions) -> SuiteResult:
    """Soundness and completeness of class_of, representatives and conjugators."""
    result = SuiteResult("conjugacy")
    rng = _rng(opts, "conjugacy")

    for family in _pair_families():
        members = list(iter_involutions(family.n, opts.pair_window, family))
        keyed = [(x, class_of(x, family)) for x in members]
        for (x, dx), (y, dy) in itertools.combinations(keyed, 2):
            _check_conjugator(result, x, y, dx == dy, family)

    for tag in FamilyTag:
        for n in range(MIN_RANK[tag], opts.conjugacy_rank + 1):
            family = GroupFamily.of(tag, n)
            members = list(iter_involutions(n, opts.conjugacy_window, family))
            for x in members:
                d = class_of(x, family)
                rep = canonical_representative(d)
                result.check(class_of(rep, family) == d, f"{format_descriptor(d)}: representative")
                _check_conjugator(result, x, rep, True, family)
            if len(members) < 2:
                continue
            for _ in range(opts.cross_pairs):
                i, j = (int(k) for k in rng.integers(0, len(members), size=2))
                x, y = members[i], members[j]
                _check_conjugator(result, x, y, class_of(x, family) == class_of(y, family), family)

    tags = list(FamilyTag)
    gens: Dict[GroupFamily, List[AffineElement]] = {}
    for _ in range(opts.conjugations):
        tag = tags[int(rng.integers(0, len(tags)))]
        n = int(rng.integers(MIN_RANK[tag], max(MIN_RANK[tag], opts.conjugation_rank) + 1))
        family = GroupFamily.of(tag, n)
        if family not in gens:
            gens[family] = generators(family)
        x = random_involution(rng, n, 2, family)
        word = [int(i) for i in rng.integers(0, len(gens[family]), size=8)]
        g = word_product(gens[family], word)
        result.check(
            class_of(conjugate(x, g), family) == class_of(x, family),
            f"{family}: conjugation moved the class of {x}",
        )

    for family in _conjugacy_families():
        per_type: Dict = defaultdict(int)
        for d in enumerate_descriptors(family):
            per_type[d.cycle_type] += 1
        result.check(
            max(per_type.values()) == SPLIT_COUNTS[family.tag],
            f"{family}: split count {max(per_type.values())}",
        )
    return result


def _graph_descriptors(opts: SuiteOptions, tags: Sequence[FamilyTag]):
    for tag in tags:
        for n in opts.ranks:
            if n < MIN_RANK[tag]:
                continue
            family = GroupFamily.of(tag, n)
            for d in enumerate_descriptors(family):
                yield d, predict_connectivity(d)


def required_clause(d: ClassDescriptor) -> Optional[str]:
    """The clause a class must reproduce in the window analysis, if any."""
    m = d.cycle_type[0]
    if d.tag is FamilyTag.D and d.n == 4 and m == 1:
        return "iv"
    if d.tag is FamilyTag.C and d.n == 6 and tuple(d.cycle_type) == (1, 2, 2, 0):
        return "v"
    return None


def suite_connectivity(opts: SuiteOptions) -> SuiteResult:
    """Disconnection clauses against windowed components and their obstructions."""
    result = SuiteResult("connectivity")
    tags = (FamilyTag.B, FamilyTag.BBAR, FamilyTag.C, FamilyTag.D)
    bounds = WindowSpec(L=opts.connectivity_window, max_nodes=opts.max_nodes)
    for d, verdict in _graph_descriptors(opts, tags):
        label = format_descriptor(d)
        required = required_clause(d)
        if required is not None:
            result.check(verdict.clause == required, f"{label}: clause {verdict.clause}")
        if verdict.status is not VerdictStatus.DISCONNECTED:
            continue
        try:
            graph = window_graph(d, bounds, opts.max_seconds)
        except BudgetExceededError:
            if required is not None:
                result.check(False, f"{label}: window over budget")
            else:
                result.skipped.append(label)
            continue
        if verdict.clause == "i":
            result.check(not graph.edges, f"{label}: isolated class has edges")
        if len(graph.vertices) > 1:
            result.check(len(graph.components) > 1, f"{label}: window is connected")
        for component in graph.components:
            seen = {obstruction(graph.vertices[i], d) for i in component}
            result.check(len(seen) == 1, f"{label}: obstruction varies on a component")
    return result


def suite_diameters(opts: SuiteOptions) -> SuiteResult:
    """Sampled distances in connected classes stay within the predicted bound."""
    result = SuiteResult("diameters")
    rng = _rng(opts, "diameters")
    tags = (FamilyTag.B, FamilyTag.BBAR, FamilyTag.C, FamilyTag.D)
    for d, verdict in _graph_descriptors(opts, tags):
        if verdict.status is not VerdictStatus.CONNECTED:
            continue
        label = format_descriptor(d)
        for _ in range(opts.sample_pairs):
            try:
                x = random_member(rng, d, 1)
                y = random_member(rng, d, 1)
            except UnrealizableDescriptorError:
                result.skipped.append(label)
                break
            start = max(label_bound(x), label_bound(y))
            try:
                found = distance(
                    x, y, d.family,
                    max_window=start + verdict.bound,
                    max_nodes=opts.max_nodes,
                    max_seconds=opts.max_seconds,
                )
            except BudgetExceededError:
                result.skipped.append(label)
                break
            except VerificationError as exc:
                result.check(False, f"{label}: {exc}")
                continue
            result.check(found is not None, f"{label}: no path found")
            if found is not None:
                result.check(
                    found.length <= verdict.bound,
                    f"{label}: distance {found.length} above {verdict.bound}",
                )
                result.check(
                    found.lower_bound is None or found.lower_bound <= found.length,
                    f"{label}: lower bound {found.lower_bound} above {found.length}",
                )
    return result


def suite_constructive(opts: SuiteOptions) -> SuiteResult:
    """Explicit paths for random members of every constructive class."""
    result = SuiteResult("constructive")
    rng = _rng(opts, "constructive")
    started = time.perf_counter()
    tags = (FamilyTag.B, FamilyTag.BBAR, FamilyTag.D)
    for d, verdict in _graph_descriptors(opts, tags):
        if verdict.clause not in CONSTRUCTIVE_CLAUSES:
            continue
        label = format_descriptor(d)
        for _ in range(opts.sample_members):
            try:
                x = random_member(rng, d, opts.window)
                witness = constructive_path(x, d, opts.max_nodes, opts.max_seconds)
            except BudgetExceededError:
                result.skipped.append(label)
                break
            except AffineWeylError as exc:
                result.check(False, f"{label}: {exc}")
                continue
            result.check(witness.length <= verdict.bound, f"{label}: length {witness.length}")
    _within_budget("constructive", started, CONSTRUCTIVE_BUDGET)
    return result


def finite_descriptors(family: FiniteFamily, n: int) -> List[FiniteClassDescriptor]:
    """Every involution class of the finite group of rank n."""
    found = []
    for m in range(n // 2 + 1):
        for k in range(n - 2 * m + 1):
            l = n - 2 * m - k  # noqa: E741
            if l == n:
                continue
            if family is FiniteFamily.A and k:
                continue
            if family is FiniteFamily.D and k % 2:
                continue
            residues = (0, 2) if family is FiniteFamily.D and k == l == 0 else (None,)
            for minus in residues:
                fd = FiniteClassDescriptor(
                    family=family, n=n, signed_type=(m, k, l), minus_mod4=minus
                )
                if finite_class_members(fd):
                    found.append(fd)
    return found


def suite_finite_baseline(opts: SuiteOptions) -> SuiteResult:
    """Finite class diameters against the finite connectivity theorems."""
    result = SuiteResult("finite-baseline")
    top = opts.finite_rank + 1
    ranks = {
        FiniteFamily.A: range(3, top),
        FiniteFamily.B: range(3, top),
        FiniteFamily.D: range(4, top),
    }
    for family, ns in ranks.items():
        for n in ns:
            for fd in finite_descriptors(family, n):
                verdict = predict_finite_connectivity(fd)
                diameter = finite_diameter(fd)
                label = f"{family.value}{n}{fd.signed_type}"
                if verdict.bound is None:
                    result.check(diameter is None, f"{label}: expected disconnected")
                elif verdict.exact:
                    result.check(diameter == verdict.bound, f"{label}: diameter {diameter}")
                else:
                    result.check(
                        diameter is not None and diameter <= verdict.bound,
                        f"{label}: diameter {diameter} above {verdict.bound}",
                    )
    return result


SUITES: Dict[str, Callable[[SuiteOptions], SuiteResult]] = {
    "lemmas": suite_lemmas,
    "involutions": suite_involutions,
    "conjugacy": suite_conjugacy,
    "connectivity": suite_connectivity,
    "diameters": suite_diameters,
    "constructive": suite_constructive,
    "finite-baseline": suite_finite_baseline,
}

SUITE_NAMES = list(SUITES)


def expand(names: Sequence[str]) -> List[str]:
    """Resolve 'all' and drop repeats, keeping suite order."""
    wanted = set(SUITE_NAMES) if "all" in names else set(names)
    unknown = wanted - set(SUITE_NAMES)
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(sorted(unknown))}")
    return [name for name in SUITE_NAMES if name in wanted]


def run_suite(name: str, opts: SuiteOptions) -> SuiteResult:
    logger.info("suite %s started", name)
    result = SUITES[name](opts)
    logger.info(
        "suite %s finished: %d checks, %d failures", name, result.checks, len(result.failures)
    )
    return result


def run_suites(names: Sequence[str], opts: SuiteOptions, jobs: int = 1) -> List[SuiteResult]:
    """Run suites, in a process pool when jobs > 1; results keep suite order."""
    names = expand(names)
    if jobs <= 1 or len(names) <= 1:
        return [run_suite(name, opts) for name in names]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_suite, names, itertools.repeat(opts)))
