"""
Tests for cycle notation, element JSON and descriptor text.
"""

import json

import pytest

from affine_weyl.conjugacy import ClassDescriptor, class_of
from affine_weyl.core import AffineElement, GroupFamily, SignedPermutation
from affine_weyl.errors import InvalidFamilyError, NotationError
from affine_weyl.notation import (
    ElementPayload,
    descriptor_to_json,
    element_from_json,
    element_to_json,
    format_descriptor,
    format_element,
    parse_descriptor,
    parse_element,
    read_element,
)


class TestParseElement:
    """Reading labelled cycle notation."""

    def test_worked_example(self, worked_example):
        """Labels of transpositions sit on the first point written."""
        x = parse_element(worked_example)
        assert x.n == 7
        assert x.v == (1, -1, 3, 3, 2, 4, 0)
        assert x.sigma.targets == (1, 0, 3, 2, 4, 5, 6)
        assert x.sigma.signs == (1, 1, -1, -1, -1, -1, 1)

    def test_missing_label_is_zero(self):
        """A cycle without ^label carries 0."""
        assert parse_element("(-1 2)").v == (0, 0)

    def test_explicit_rank_adds_fixed_points(self):
        """Unmentioned points are fixed."""
        x = parse_element("(-2)^1", 4)
        assert x.n == 4
        assert x.v == (0, 1, 0, 0)

    def test_unicode_minus(self):
        """The Unicode minus sign reads as a hyphen."""
        assert parse_element("(−1)^−2") == parse_element("(-1)^-2")

    def test_identity_needs_rank(self):
        """The identity word needs an explicit rank."""
        assert parse_element("1", 3).is_identity()
        with pytest.raises(NotationError):
            parse_element("1")

    def test_reports_column(self):
        """Syntax errors carry the 1-based column."""
        with pytest.raises(NotationError) as info:
            parse_element("(+1 2)^1 x")
        assert info.value.position == 10

    def test_repeated_point(self):
        """A point may appear in one cycle only."""
        with pytest.raises(NotationError):
            parse_element("(+1 2)^0 (-2)^1")

    def test_point_out_of_range(self):
        """Points above the explicit rank are refused."""
        with pytest.raises(NotationError):
            parse_element("(-5)^0", 3)

    def test_degenerate_transposition(self):
        """A transposition needs two different points."""
        with pytest.raises(NotationError):
            parse_element("(+1 1)^0")

    def test_empty(self):
        """Blank input has no cycles."""
        with pytest.raises(NotationError):
            parse_element("   ")


class TestFormatElement:
    """Writing labelled cycle notation."""

    def test_round_trip(self, worked_example):
        """Formatting reproduces canonical text."""
        assert format_element(parse_element(worked_example)) == worked_example

    def test_hide_fixed(self):
        """Fixed points can be left out."""
        x = parse_element("(-1)^2", 3)
        assert format_element(x) == "(-1)^2 (+2)^0 (+3)^0"
        assert format_element(x, show_fixed=False) == "(-1)^2"

    def test_identity(self):
        """The identity prints as 1 when fixed points are hidden."""
        assert format_element(AffineElement.identity(2), show_fixed=False) == "1"

    def test_longer_cycle(self):
        """Elements with 3-cycles have no cycle notation."""
        x = AffineElement(SignedPermutation((1, 2, 0), (1, 1, 1)), (0, 0, 0))
        with pytest.raises(NotationError):
            format_element(x)


class TestElementJson:
    """The JSON form of elements."""

    def test_to_json(self):
        """Targets and signs are written 1-indexed."""
        x = parse_element("(-1 2)^3")
        assert json.loads(element_to_json(x)) == {
            "n": 2,
            "sigma": [[2, -1], [1, -1]],
            "v": [3, 3],
        }

    def test_from_json(self):
        """JSON input builds the same element as cycle notation."""
        text = '{"n": 2, "sigma": [[2, -1], [1, -1]], "v": [3, 3]}'
        assert element_from_json(text) == parse_element("(-1 2)^3")

    def test_payload_lengths(self):
        """sigma and v must both have length n."""
        payload = ElementPayload(n=3, sigma=[(1, 1), (2, 1)], v=[0, 0])
        with pytest.raises(NotationError):
            payload.to_element()

    def test_bad_json(self):
        """Malformed JSON is a notation error."""
        with pytest.raises(NotationError):
            element_from_json('{"n": 2, "sigma": "oops"}')

    def test_not_a_bijection(self):
        """A repeated target is a notation error."""
        with pytest.raises(NotationError):
            element_from_json('{"n": 2, "sigma": [[1, 1], [1, 1]], "v": [0, 0]}')

    def test_read_element_dispatch(self):
        """read_element accepts both forms and checks the rank."""
        text = '{"n": 2, "sigma": [[1, -1], [2, 1]], "v": [1, 0]}'
        assert read_element(text) == read_element("(-1)^1", 2)
        with pytest.raises(NotationError):
            read_element(text, 3)


class TestDescriptors:
    """Descriptor text and JSON."""

    def test_format(self):
        """Compact text lists the family, rank, type and residues."""
        d = class_of(parse_element("(+1 2)^0 (+3 4)^0 (-5)^0 (-6)^0"), GroupFamily.of("B", 6))
        assert format_descriptor(d) == "B:n=6:(2,2,0,0):f=0"

    def test_parse_text(self):
        """Short residue names map to the descriptor fields."""
        d = parse_descriptor("D:n=4:(2,0,0,0):minus=2:f=0")
        assert d.tag.short == "D"
        assert d.cycle_type == (2, 0, 0, 0)
        assert d.split == {"f_mod4": 0, "minus_mod4": 2}

    def test_parse_json(self):
        """Descriptors read back from their JSON form."""
        d = parse_descriptor("Bbar:n=3:(1,0,1,0):fpm=2")
        assert parse_descriptor(descriptor_to_json(d)) == d

    def test_text_round_trip(self):
        """format_descriptor and parse_descriptor agree."""
        text = "A:n=4:(2,0,0,0):lambda=1"
        assert format_descriptor(parse_descriptor(text)) == text

    def test_unknown_residue(self):
        """Unknown residue names are refused."""
        with pytest.raises(NotationError):
            parse_descriptor("B:n=4:(2,0,0,0):g=0")

    def test_garbage(self):
        """Text that is not a descriptor is refused."""
        with pytest.raises(NotationError):
            parse_descriptor("B6 (2,2,0,0)")

    def test_bad_rank(self):
        """The rank must suit the family."""
        with pytest.raises(InvalidFamilyError):
            parse_descriptor("D:n=3:(1,1,0,0)")

    def test_descriptor_equality(self):
        """Parsed and computed descriptors compare equal."""
        d = ClassDescriptor(family=GroupFamily.of("C", 3), cycle_type=(1, 1, 0, 0))
        assert parse_descriptor("C:n=3:(1,1,0,0)") == d
