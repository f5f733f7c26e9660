"""
Tests for involution detection, labelled cycle forms, invariants and omega.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from affine_weyl.core import AffineElement, GroupFamily, SignedPermutation, member_of
from affine_weyl.errors import NotAnInvolutionError
from affine_weyl.involutions import (
    CycleKind,
    LabelledCycle,
    element_from_cycles,
    f_value,
    invariants,
    is_involution,
    iter_involutions,
    label_bound,
    labelled_cycle_form,
    labelled_cycle_type,
    omega,
    orientation_variants,
    random_involution,
)
from affine_weyl.notation import parse_element


class TestInvolutionCheck:
    """Both involution criteria and their edge cases."""

    def test_identity_is_not_an_involution(self):
        """The identity squares to itself but is excluded."""
        assert not is_involution(AffineElement.identity(3))

    def test_three_cycle(self):
        """A 3-cycle never squares to the identity."""
        x = AffineElement(SignedPermutation((1, 2, 0), (1, 1, 1)), (0, 0, 0))
        assert not is_involution(x)

    def test_translation(self):
        """A non-zero translation has infinite order."""
        assert not is_involution(AffineElement.translation([1, 0]))

    def test_positive_transposition_labels(self):
        """A positive transposition needs opposite labels."""
        good = AffineElement(SignedPermutation((1, 0), (1, 1)), (2, -2))
        bad = AffineElement(SignedPermutation((1, 0), (1, 1)), (2, 2))
        assert is_involution(good)
        assert not is_involution(bad)

    def test_negative_transposition_labels(self):
        """A negative transposition needs equal labels."""
        good = AffineElement(SignedPermutation((1, 0), (-1, -1)), (3, 3))
        bad = AffineElement(SignedPermutation((1, 0), (-1, -1)), (3, -3))
        assert is_involution(good)
        assert not is_involution(bad)

    def test_mixed_signs_on_a_pair(self):
        """A 2-cycle with one sign of each kind has order four."""
        x = AffineElement(SignedPermutation((1, 0), (1, -1)), (0, 0))
        assert not is_involution(x)

    def test_negative_one_cycle_any_label(self):
        """(-a)^lambda is an involution for every lambda."""
        for label in (-3, 0, 5):
            assert is_involution(AffineElement(SignedPermutation((0,), (-1,)), (label,)))


class TestCycleForm:
    """Labelled cycle forms and cycle types."""

    def test_worked_example(self, worked_example):
        """Cycle type and invariants of the documentation example."""
        x = parse_element(worked_example)
        form = labelled_cycle_form(x)
        assert form.cycle_type.as_tuple() == (2, 2, 0, 1)
        assert form.t == 1
        assert f_value(form) == 14
        inv = invariants(x)
        assert (inv.sum, inv.sum_plus, inv.minus, inv.f) == (12, 14, 4, 14)

    def test_transposition_label_at_smaller_point(self):
        """The label is the coordinate at the smaller point."""
        x = AffineElement(SignedPermutation((0, 2, 1), (1, 1, 1)), (0, -4, 4))
        (c,) = labelled_cycle_form(x).transpositions
        assert c.points == (2, 3)
        assert c.kind is CycleKind.POS
        assert c.label == -4

    def test_rebuild(self):
        """to_element inverts the decomposition."""
        for x in iter_involutions(3, 1):
            assert labelled_cycle_form(x).to_element() == x

    def test_not_an_involution(self):
        """Only involutions have a labelled cycle form."""
        with pytest.raises(NotAnInvolutionError):
            labelled_cycle_form(AffineElement.translation([1, 0]))

    def test_type_counts_odd_negative_labels(self):
        """A 1-cycle labelled -1 counts as odd."""
        x = element_from_cycles(2, [LabelledCycle(CycleKind.ONE, (1,), -1)])
        assert labelled_cycle_type(x).as_tuple() == (0, 0, 1, 1)

    def test_cycle_validation(self):
        """Malformed labelled cycles are refused."""
        with pytest.raises(ValueError):
            LabelledCycle(CycleKind.FIXED, (1,), 2)
        with pytest.raises(ValueError):
            LabelledCycle(CycleKind.POS, (3, 1), 0)
        with pytest.raises(ValueError):
            LabelledCycle(CycleKind.ONE, (1, 2), 0)

    def test_invariants_of_non_involution(self):
        """f is only defined for involutions."""
        inv = invariants(AffineElement.translation([1, -3]))
        assert (inv.sum, inv.sum_plus, inv.minus, inv.f) == (-2, 4, 0, None)


class TestOrientation:
    """f does not depend mod 4 on where transposition labels are written."""

    def test_variants_of_single_transposition(self):
        """(+1 2)^3 reads as label 3 or -3."""
        form = labelled_cycle_form(parse_element("(+1 2)^3"))
        assert orientation_variants(form) == [-6, 6]

    def test_variants_agree_mod_four(self):
        """Every variant shares one residue mod 4."""
        for x in iter_involutions(4, 1):
            variants = orientation_variants(labelled_cycle_form(x))
            assert all((f - variants[0]) % 4 == 0 for f in variants)


class TestOmega:
    """The graph automorphism omega."""

    def test_rank_one(self):
        """omega swaps (-1)^0 and (-1)^1."""
        zero = parse_element("(-1)^0")
        one = parse_element("(-1)^1")
        assert omega(zero) == one
        assert omega(one) == zero

    @given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=2**16))
    @settings(max_examples=60, deadline=None)
    def test_rules(self, n, seed):
        """omega is an involutive map with the documented effect on invariants."""
        x = random_involution(np.random.default_rng(seed), n, 2)
        w = omega(x)
        assert omega(w) == x
        assert is_involution(w)
        inv, inv_w = invariants(x), invariants(w)
        assert inv_w.minus == inv.minus
        assert inv_w.sum == inv.minus - inv.sum
        assert (inv_w.f - inv.minus + inv.f) % 4 == 0
        m, k_e, k_o, l = labelled_cycle_type(x).as_tuple()
        assert labelled_cycle_type(w).as_tuple() == (m, k_o, k_e, l)

    def test_worked_example(self, worked_example):
        """omega of the documentation example."""
        w = omega(parse_element(worked_example))
        inv = invariants(w)
        assert (inv.sum, inv.minus) == (-8, 4)
        assert labelled_cycle_type(w).as_tuple() == (2, 0, 2, 1)
        assert -10 in orientation_variants(labelled_cycle_form(w))

    def test_swaps_b_and_bbar(self):
        """omega carries AffineB members to AffineBbar members."""
        b3 = GroupFamily.of("B", 3)
        bbar3 = GroupFamily.of("Bbar", 3)
        for x in iter_involutions(3, 1, b3):
            assert member_of(omega(x), bbar3)


class TestEnumeration:
    """Window enumeration and sampling."""

    def test_finite_b2(self):
        """Window 0 in rank 2 gives the five involutions of the finite group B2."""
        assert len(list(iter_involutions(2, 0))) == 5

    def test_affine_a2(self):
        """AffineA2 involutions in window 1 are (+1 2)^-1, ^0 and ^1."""
        found = list(iter_involutions(2, 1, GroupFamily.of("A", 2)))
        assert [labelled_cycle_form(x).cycles[0].label for x in found] == [-1, 0, 1]

    def test_window_respected(self):
        """Enumerated labels stay inside the window."""
        assert all(label_bound(x) <= 2 for x in iter_involutions(3, 2))

    def test_no_repeats(self):
        """Enumeration lists each involution once."""
        found = list(iter_involutions(3, 1))
        assert len(found) == len(set(found))

    def test_random_involution(self, rng):
        """Samples are member involutions inside the window."""
        family = GroupFamily.of("D", 4)
        for _ in range(50):
            x = random_involution(rng, 4, 3, family)
            assert is_involution(x)
            assert member_of(x, family)
            assert label_bound(x) <= 3
