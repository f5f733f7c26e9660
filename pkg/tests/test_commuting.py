"""
Tests for commuting predicates, neighbour generation and the commuting rules.
"""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from affine_weyl.commuting import (
    CLAUSE_RANK,
    COMMUTING_CLAUSES,
    commutes_fast,
    commutes_oracle,
    iter_clause_grid,
    commuting_clause,
    neighbors_in_class,
)
from affine_weyl.conjugacy import class_of, enumerate_class
from affine_weyl.core import AffineElement, GroupFamily
from affine_weyl.errors import NotAnInvolutionError
from affine_weyl.involutions import iter_involutions, label_bound, random_involution
from affine_weyl.notation import parse_element
from affine_weyl.unionfind import UnionFind


class TestUnionFind:
    """Disjoint sets used for orbit grouping."""

    def test_groups_in_insertion_order(self):
        """Groups keep the order in which items were first seen."""
        uf = UnionFind(range(5))
        uf.union(3, 1)
        uf.union(4, 0)
        assert uf.groups() == [[0, 4], [1, 3], [2]]

    def test_lazy_items(self):
        """Unknown items are created on first use."""
        uf = UnionFind()
        uf.union("a", "b")
        assert uf.find("a") == uf.find("b")
        assert uf.find("c") == "c"


class TestCommutingRules:
    """Each rule of the commuting tables, over a label grid."""

    @pytest.mark.parametrize("name", sorted(COMMUTING_CLAUSES))
    def test_clause(self, name):
        """Oracle and structural test both match the rule."""
        for labels, (x, y, expected) in iter_clause_grid(name, 2):
            assert commutes_oracle(x, y) == expected, labels
            assert commutes_fast(x, y) == expected, labels

    def test_positive_against_one_cycles(self):
        """(+1 2)^1 commutes with (-1)^mu(-2)^nu exactly when mu - nu = 2."""
        x, y, expected = commuting_clause("pos-transposition-one-cycles", [1, 2, 0])
        assert expected and commutes_oracle(x, y)
        x, y, expected = commuting_clause("pos-transposition-one-cycles", [1, 1, 1])
        assert not expected and not commutes_oracle(x, y)

    def test_negative_against_one_cycles(self):
        """(-1 2)^1 commutes with (-1)^mu(-2)^nu exactly when mu + nu = 2."""
        x, y, expected = commuting_clause("neg-transposition-one-cycles", [1, 1, 1])
        assert expected and commutes_oracle(x, y)

    def test_clause_rank(self):
        """Clause elements live in the fixed table rank."""
        x, y, _ = commuting_clause("double-++-++", [0, 0, 0, 0])
        assert x.n == y.n == CLAUSE_RANK

    def test_arity_checked(self):
        """A clause needs one label per parameter."""
        with pytest.raises(ValueError):
            commuting_clause("one-cycle-labels", [1])


class TestCommutesFast:
    """The structural test against the oracle."""

    def test_exhaustive_rank_three(self):
        """All pairs of rank-3 involutions with labels in [-1, 1]."""
        found = list(iter_involutions(3, 1))
        for x, y in itertools.product(found[::5], found[::3]):
            assert commutes_fast(x, y) == commutes_oracle(x, y)

    @given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=2**20))
    @settings(max_examples=200, deadline=None)
    def test_random_pairs(self, n, seed):
        """Random involution pairs agree with the oracle."""
        rng = np.random.default_rng(seed)
        x = random_involution(rng, n, 2)
        y = random_involution(rng, n, 2)
        assert commutes_fast(x, y) == commutes_oracle(x, y)

    def test_rejects_non_involutions(self):
        """The structural test is for involutions only."""
        x = parse_element("(+1 2)^0")
        with pytest.raises(NotAnInvolutionError):
            commutes_fast(x, AffineElement.translation([1, 0]))


class TestNeighbors:
    """Commuting neighbours inside a class."""

    @pytest.mark.parametrize(
        "text,tag,n",
        [
            ("(+1 2)^0 (-3)^0 (-4)^0", "B", 4),
            ("(+1 2)^1 (+3 4)^0", "D", 4),
            ("(-1 2)^0 (-3)^1", "Bbar", 3),
            ("(+1 2)^0 (-3)^0", "C", 3),
            ("(+1 2)^1 (+3)^0 (+4)^0", "A", 4),
        ],
    )
    def test_matches_brute_force(self, text, tag, n):
        """Generated neighbours are exactly the commuting class members in the window."""
        family = GroupFamily.of(tag, n)
        x = parse_element(text, n)
        d = class_of(x, family)
        expected = {
            y for y in enumerate_class(d, 1) if y != x and commutes_oracle(x, y)
        }
        found = list(neighbors_in_class(x, d, 1))
        assert len(found) == len(set(found))
        assert set(found) == expected

    def test_window_respected(self):
        """Neighbours carry labels inside the window."""
        x = parse_element("(+1 2)^0 (+3 4)^0 (-5)^0 (-6)^0")
        d = class_of(x, GroupFamily.of("B", 6))
        assert all(label_bound(y) <= 1 for y in neighbors_in_class(x, d, 1))

    def test_isolated_one_cycles(self):
        """Products of negative 1-cycles commute with nothing else in their class."""
        x = parse_element("(-1)^0 (-2)^2")
        d = class_of(x, GroupFamily.of("C", 2))
        assert list(neighbors_in_class(x, d, 2)) == []
