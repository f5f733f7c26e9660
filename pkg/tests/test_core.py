"""
Tests for signed permutations, affine elements, membership and generators.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from affine_weyl.core import (
    AffineElement,
    FamilyTag,
    GroupFamily,
    SignedPermutation,
    acts_on_vector,
    compose,
    conjugate,
    generators,
    inverse,
    invert,
    member_of,
    multiply,
    reflection,
    word_product,
)
from affine_weyl.errors import InvalidFamilyError, RankMismatchError
from affine_weyl.involutions import is_involution


@st.composite
def elements(draw, n=None):
    size = n if n is not None else draw(st.integers(min_value=1, max_value=5))
    targets = draw(st.permutations(list(range(size))))
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=size, max_size=size))
    v = draw(st.lists(st.integers(-4, 4), min_size=size, max_size=size))
    return AffineElement(SignedPermutation(tuple(targets), tuple(signs)), tuple(v))


@st.composite
def members(draw, tag: str, n=None):
    """Elements of rank 4 or 5 moved into the named family by fixing signs and one label."""
    x = draw(elements(n if n is not None else draw(st.integers(min_value=4, max_value=5))))
    signs, v = list(x.sigma.signs), list(x.v)
    if tag == "A":
        signs = [1] * len(signs)
        v[-1] -= sum(v)
    if tag == "D" and signs.count(-1) % 2:
        signs[0] = -signs[0]
    parity = {"B": 0, "Bbar": signs.count(-1) % 2, "D": 0}.get(tag)
    if parity is not None and (sum(v) - parity) % 2:
        v[0] += 1
    return AffineElement(SignedPermutation(x.sigma.targets, tuple(signs)), tuple(v))


@st.composite
def same_rank(draw, count=2):
    n = draw(st.integers(min_value=1, max_value=5))
    return [draw(elements(n)) for _ in range(count)]


def homogeneous(x: AffineElement) -> np.ndarray:
    """(n+1)x(n+1) matrix of u -> sigma(u) + v acting on columns."""
    n = x.n
    h = np.zeros((n + 1, n + 1), dtype=np.int64)
    for i, (t, s) in enumerate(zip(x.sigma.targets, x.sigma.signs)):
        h[t, i] = s
    h[:n, n] = x.v
    h[n, n] = 1
    return h


class TestSignedPermutation:
    """Signed permutation construction and arithmetic."""

    def test_rejects_non_bijection(self):
        """Repeated targets are refused."""
        with pytest.raises(ValueError):
            SignedPermutation((0, 0), (1, 1))

    def test_rejects_bad_sign(self):
        """Signs other than +1 and -1 are refused."""
        with pytest.raises(ValueError):
            SignedPermutation((0, 1), (1, 2))

    def test_length_mismatch(self):
        """Targets and signs must have the same length."""
        with pytest.raises(RankMismatchError):
            SignedPermutation((0, 1), (1,))

    def test_image_round_trip(self):
        """from_image reads 1-indexed pairs and image writes them back."""
        s = SignedPermutation.from_image([[2, -1], [1, 1], [3, -1]])
        assert s.targets == (1, 0, 2)
        assert s.image() == [(2, -1), (1, 1), (3, -1)]
        assert s.minus() == 2

    def test_compose_applies_left_first(self):
        """st sends e_1 through s and then t."""
        s = SignedPermutation((1, 0), (1, 1))
        t = SignedPermutation((0, 1), (-1, 1))
        st_ = compose(s, t)
        # e_1 -> e_2 -> e_2 and e_2 -> e_1 -> -e_1
        assert st_.targets == (1, 0)
        assert st_.signs == (1, -1)

    def test_invert(self):
        """A signed permutation composed with its inverse is the identity."""
        s = SignedPermutation((2, 0, 1), (-1, 1, -1))
        assert compose(s, invert(s)).is_identity()
        assert compose(invert(s), s).is_identity()


class TestAffineElement:
    """Products, inverses and conjugation of (sigma, v)."""

    @given(same_rank(2))
    @settings(max_examples=150, deadline=None)
    def test_multiply_matches_matrices(self, pair):
        """The product acts as x followed by y on Z^n."""
        x, y = pair
        expected = homogeneous(y) @ homogeneous(x)
        assert np.array_equal(homogeneous(multiply(x, y)), expected)

    @given(elements())
    @settings(max_examples=100, deadline=None)
    def test_apply_matches_matrix(self, x):
        """apply agrees with the homogeneous matrix on a lattice point."""
        u = tuple(range(1, x.n + 1))
        column = np.array(list(u) + [1], dtype=np.int64)
        assert tuple(int(a) for a in (homogeneous(x) @ column)[:-1]) == x.apply(u)

    @given(elements())
    @settings(max_examples=100, deadline=None)
    def test_inverse(self, x):
        """x times its inverse is the identity on both sides."""
        assert multiply(x, inverse(x)).is_identity()
        assert multiply(inverse(x), x).is_identity()

    @given(same_rank(2))
    @settings(max_examples=150, deadline=None)
    def test_conjugate_closed_form(self, pair):
        """The closed form equals g^-1 x g by multiplication."""
        x, g = pair
        assert conjugate(x, g) == multiply(multiply(inverse(g), x), g)

    @given(same_rank(3))
    @settings(max_examples=100, deadline=None)
    def test_associative(self, triple):
        """Multiplication is associative."""
        x, y, z = triple
        assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))

    def test_rank_mismatch(self):
        """Operands of different rank are refused."""
        with pytest.raises(RankMismatchError):
            multiply(AffineElement.identity(2), AffineElement.identity(3))

    def test_translation_length_checked(self):
        """The translation must match the permutation's rank."""
        with pytest.raises(RankMismatchError):
            AffineElement(SignedPermutation.identity(2), (0, 0, 0))

    def test_label_overflow(self):
        """Coordinates beyond the label limit are refused."""
        with pytest.raises(OverflowError):
            AffineElement.translation([2**63])

    def test_word_product(self):
        """A word in the generators multiplies left to right."""
        gens = generators(GroupFamily.of("C", 2))
        x = word_product(gens, [0, 1, 0])
        assert x == multiply(multiply(gens[0], gens[1]), gens[0])
        assert word_product(gens, []).is_identity()


class TestFamilies:
    """Family tags, rank checks and membership."""

    def test_parse_short_and_long(self):
        """Both AffineB and B name the same family."""
        assert FamilyTag.parse("B") is FamilyTag.B
        assert FamilyTag.parse("AffineBbar") is FamilyTag.BBAR
        assert FamilyTag.D.short == "D"

    def test_unknown_family(self):
        """Unknown tags raise InvalidFamilyError."""
        with pytest.raises(InvalidFamilyError):
            FamilyTag.parse("E")

    @pytest.mark.parametrize("tag,n", [("A", 1), ("B", 2), ("Bbar", 2), ("C", 1), ("D", 3)])
    def test_minimum_rank(self, tag, n):
        """Ranks below the family minimum are refused."""
        with pytest.raises(InvalidFamilyError):
            GroupFamily.of(tag, n)

    def test_family_str(self):
        """Families print as tag and rank."""
        assert str(GroupFamily.of("Bbar", 5)) == "Bbar5"

    @pytest.mark.parametrize(
        "v,signs,expected",
        [
            ((1, 0, 0), (1, 1, 1), {"C"}),
            ((1, 1, 0), (1, 1, 1), {"C", "B", "Bbar"}),
            ((1, 0, 0), (-1, 1, 1), {"C", "Bbar"}),
            ((0, 0, 0), (-1, 1, 1), {"C", "B"}),
            ((0, 0, 0), (-1, -1, 1), {"C", "B", "Bbar", "D"}),
        ],
    )
    def test_membership(self, v, signs, expected):
        """Coordinate sum and minus count decide membership."""
        x = AffineElement(SignedPermutation((0, 1, 2), signs), v)
        for tag in ("B", "Bbar", "C"):
            assert member_of(x, GroupFamily.of(tag, 3)) == (tag in expected)

    def test_membership_d(self):
        """AffineD needs both parity conditions."""
        d4 = GroupFamily.of("D", 4)
        assert member_of(AffineElement.translation([1, 1, 0, 0]), d4)
        assert not member_of(AffineElement.translation([1, 0, 0, 0]), d4)
        assert not member_of(reflection(4, (1,), -1, 0), d4)

    def test_membership_a(self):
        """AffineA needs no minus signs and coordinate sum zero."""
        a3 = GroupFamily.of("A", 3)
        assert member_of(AffineElement.translation([1, -1, 0]), a3)
        assert not member_of(AffineElement.translation([1, 0, 0]), a3)
        assert not member_of(reflection(3, (1,), -1, 0), a3)


class TestMembershipLaws:
    """Each family is a group and AffineD sits inside both of its neighbours."""

    @pytest.mark.parametrize("tag", ["A", "B", "Bbar", "C", "D"])
    @given(data=st.data())
    @settings(max_examples=60, deadline=None)
    def test_closed_under_products(self, tag, data):
        """Products and inverses of members are members."""
        x = data.draw(members(tag))
        y = data.draw(members(tag, x.n))
        family = GroupFamily.of(tag, x.n)
        assert member_of(x, family) and member_of(y, family)
        assert member_of(multiply(x, y), family)
        assert member_of(inverse(x), family)

    @given(st.integers(min_value=4, max_value=5).flatmap(elements))
    def test_d_is_intersection(self, x):
        """AffineD membership is AffineB and AffineBbar membership together."""
        both = member_of(x, GroupFamily.of("B", x.n)) and member_of(x, GroupFamily.of("Bbar", x.n))
        assert member_of(x, GroupFamily.of("D", x.n)) == both

    def test_worked_action(self):
        """(-1 2 -3) sends e1 to -e2, e2 to e3 and e3 to -e1."""
        w = SignedPermutation((1, 2, 0), (-1, 1, -1))
        assert acts_on_vector(w, (1, 0, 0)) == (0, -1, 0)
        assert acts_on_vector(w, (0, 1, 0)) == (0, 0, 1)
        assert acts_on_vector(w, (0, 0, 1)) == (-1, 0, 0)


class TestGenerators:
    """Simple reflections of each family."""

    @pytest.mark.parametrize(
        "tag,n,count",
        [("A", 4, 4), ("B", 4, 5), ("Bbar", 4, 5), ("C", 4, 5), ("D", 5, 6)],
    )
    def test_generators_are_member_involutions(self, tag, n, count):
        """Every generator is an involution of its own family."""
        family = GroupFamily.of(tag, n)
        gens = generators(family)
        assert len(gens) == count
        for g in gens:
            assert is_involution(g)
            assert member_of(g, family)

    def test_reflection_shapes(self):
        """reflection writes the label over the first point."""
        x = reflection(3, (1, 3), -1, 2)
        assert x.v == (2, 0, 2)
        assert x.sigma.targets == (2, 1, 0)
        y = reflection(3, (2,), -1, 1)
        assert y.v == (0, 1, 0)
        assert y.sigma.signs == (1, -1, 1)
