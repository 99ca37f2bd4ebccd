"""Tests for Coxeter group arithmetic."""

import pytest

from artintool.coxeter import (
    enumerate_w,
    in_parabolic_w,
    is_reduced_word,
    left_descents,
    longest_element,
    project,
    right_descents,
    sec_lift,
    w_ball,
    w_canonical,
    w_inverse,
    w_multiply,
)
from artintool.errors import NotSphericalError, UnknownGeneratorError
from artintool.monoid import m_parse
from artintool.presentation import ArtinPresentation


class TestWordProblem:
    """Tests for canonical reduced words."""

    def test_square_is_trivial(self, a2: ArtinPresentation) -> None:
        """Test that s^2 = 1 in W."""
        assert w_canonical(a2, ("s", "s")).word == ()

    def test_canonical_is_shortlex_least(self, a2: ArtinPresentation) -> None:
        """Test that tst is rewritten to sts."""
        assert w_canonical(a2, ("t", "s", "t")).word == ("s", "t", "s")

    def test_cancellation_after_braid_move(self, a2: ArtinPresentation) -> None:
        """Test products that shorten only after a braid move."""
        assert w_canonical(a2, ("s", "t", "s", "s")).word == ("s", "t")
        assert w_canonical(a2, ("s", "t", "s", "t")).word == ("t", "s")

    def test_unknown_generator(self, a2: ArtinPresentation) -> None:
        """Test that unknown letters are rejected."""
        with pytest.raises(UnknownGeneratorError):
            w_canonical(a2, ("s", "q"))

    def test_inverse_and_multiply(self, a2: ArtinPresentation) -> None:
        """Test w.w^-1 = 1."""
        w = w_canonical(a2, ("s", "t"))

        assert w_inverse(w).word == ("t", "s")
        assert w_multiply(w, w_inverse(w)).word == ()

    def test_reduced_words(self, a2: ArtinPresentation) -> None:
        """Test recognition of reduced expressions."""
        assert is_reduced_word(a2, ("s", "t", "s"))
        assert not is_reduced_word(a2, ("s", "t", "s", "t", "s", "t"))
        assert not is_reduced_word(a2, ("s", "s"))


class TestFiniteGroups:
    """Tests for enumeration and longest elements."""

    @pytest.mark.parametrize(("name", "order", "longest"), [("A2", 6, 3), ("B2", 8, 4), ("A3", 24, 6)])
    def test_orders(self, workspace, name: str, order: int, longest: int) -> None:
        """Test group orders and lengths of the longest elements."""
        presentation = workspace.presentation(name)

        assert len(enumerate_w(presentation)) == order
        assert longest_element(presentation, presentation.all).length == longest

    def test_longest_descents(self, a3: ArtinPresentation) -> None:
        """Test that every generator is a descent of the longest element."""
        w0 = longest_element(a3, a3.all)

        assert right_descents(w0) == a3.all
        assert left_descents(w0) == a3.all

    def test_longest_of_commuting_pair(self, a3: ArtinPresentation) -> None:
        """Test the longest element of a reducible parabolic."""
        assert longest_element(a3, {"s1", "s3"}).word == ("s1", "s3")

    def test_infinite_subset(self, tri: ArtinPresentation) -> None:
        """Test that infinite parabolics are refused."""
        with pytest.raises(NotSphericalError, match="not spherical"):
            longest_element(tri, {"a", "b"})
        with pytest.raises(NotSphericalError):
            enumerate_w(tri)

    def test_ball_in_infinite_group(self, f2: ArtinPresentation) -> None:
        """Test the length ball of the infinite dihedral group."""
        ball = w_ball(f2, 2)

        assert [w.word for w in ball] == [(), ("s",), ("t",), ("s", "t"), ("t", "s")]

    def test_parabolic_membership(self, a3: ArtinPresentation) -> None:
        """Test membership in W_T by support."""
        w = w_canonical(a3, ("s1", "s3", "s1"))

        assert in_parabolic_w(w, {"s3"})
        assert not in_parabolic_w(w, {"s1"})


class TestSection:
    """Tests for the section into the positive monoid."""

    def test_section_round_trip(self, b2: ArtinPresentation) -> None:
        """Test project(sec_lift(w)) = w on all of W(B2)."""
        for w in enumerate_w(b2):
            assert project(sec_lift(w)) == w
            assert sec_lift(w).length == w.length

    def test_projection_kills_squares(self, a2: ArtinPresentation) -> None:
        """Test that the projection of s.s is trivial."""
        assert project(m_parse(a2, "s s")).word == ()
