"""Tests for the positive monoid: canonical forms, divisibility, lcm and normal forms."""

import pytest

from artintool.errors import ArtinError, NotSphericalError
from artintool.monoid import (
    FractionForm,
    LcmOutcome,
    ReversingStatus,
    alpha,
    bracket,
    check_chain,
    check_exchange,
    coprime_fraction,
    delta,
    divisors,
    enumerate_positive,
    is_square_free,
    is_trivial_spherical,
    is_x_reduced,
    left_divides,
    left_gcd,
    left_lcm,
    left_quotient,
    m_parse,
    normal_form,
    omega,
    parse_signed_word,
    reverse_right,
    right_coprime_fraction,
    right_divides,
    right_gcd,
    right_lcm,
    right_quotient,
)
from artintool.presentation import ArtinPresentation


class TestReversing:
    """Tests for right reversing."""

    def test_complements(self, a2: ArtinPresentation) -> None:
        """Test s^-1 t -> ts (st)^-1."""
        result = reverse_right(a2, [("s", -1), ("t", 1)], 20)

        assert result.status is ReversingStatus.DONE
        assert result.positive == ("t", "s")
        assert result.negative == ("s", "t")

    def test_stuck_on_infinite_bond(self, tri: ArtinPresentation) -> None:
        """Test that a^-1 b cannot be reversed in TRI."""
        result = reverse_right(tri, [("a", -1), ("b", 1)], 20)

        assert result.status is ReversingStatus.STUCK
        assert result.blocker == ("a", "b")


class TestCanonicalForms:
    """Tests for positive word equality."""

    def test_braid_relation(self, a2: ArtinPresentation) -> None:
        """Test sts = tst with canonical word sts."""
        assert m_parse(a2, "tst") == m_parse(a2, "sts")
        assert m_parse(a2, "tst").word == ("s", "t", "s")

    def test_infinite_bond_keeps_order(self, tri: ArtinPresentation) -> None:
        """Test that ab and ba differ when m(a,b) is infinite."""
        assert m_parse(tri, "ab") != m_parse(tri, "ba")

    def test_enumeration(self, a2: ArtinPresentation) -> None:
        """Test the elements of length <= 2 of A2^+."""
        assert [u.word for u in enumerate_positive(a2, 2)] == [
            (), ("s",), ("t",), ("s", "s"), ("s", "t"), ("t", "s"), ("t", "t"),
        ]

    def test_bracket(self, a2: ArtinPresentation) -> None:
        """Test alternating products and the negative-length error."""
        s, t = m_parse(a2, "s"), m_parse(a2, "t")

        assert bracket(s, t, 3) == bracket(t, s, 3) == m_parse(a2, "sts")
        assert bracket(s, t, 0).is_identity
        with pytest.raises(ArtinError, match="must be >= 0"):
            bracket(s, t, -1)


class TestDivisibility:
    """Tests for divisibility, quotients and gcd."""

    def test_left_and_right(self, a2: ArtinPresentation) -> None:
        """Test both sides of divisibility on st."""
        s, t, st = m_parse(a2, "s"), m_parse(a2, "t"), m_parse(a2, "st")

        assert left_divides(s, st)
        assert not left_divides(t, st)
        assert right_divides(t, st)
        assert not right_divides(s, st)

    def test_divisor_through_braid_move(self, a2: ArtinPresentation) -> None:
        """Test that t divides sts on the left."""
        assert left_divides(m_parse(a2, "t"), m_parse(a2, "sts"))
        assert left_quotient(m_parse(a2, "t"), m_parse(a2, "sts")) == m_parse(a2, "st")
        assert right_quotient(m_parse(a2, "sts"), m_parse(a2, "s")) == m_parse(a2, "st")

    def test_quotient_requires_divisor(self, a2: ArtinPresentation) -> None:
        """Test that left_quotient refuses non-divisors."""
        with pytest.raises(ArtinError, match="does not left-divide"):
            left_quotient(m_parse(a2, "t"), m_parse(a2, "st"))

    def test_gcd(self, a2: ArtinPresentation) -> None:
        """Test left and right gcd."""
        assert left_gcd(m_parse(a2, "st"), m_parse(a2, "ts")).is_identity
        assert left_gcd(m_parse(a2, "sts"), m_parse(a2, "stt")) == m_parse(a2, "st")
        assert right_gcd(m_parse(a2, "st"), m_parse(a2, "tst")) == m_parse(a2, "st")

    def test_divisors(self, a2: ArtinPresentation) -> None:
        """Test that Delta of A2 has six left divisors."""
        assert len(divisors(m_parse(a2, "sts"))) == 6

    def test_x_reduced(self, a2: ArtinPresentation) -> None:
        """Test reduced-X on both sides."""
        st = m_parse(a2, "st")

        assert is_x_reduced(st, {"t"})
        assert not is_x_reduced(st, {"t"}, side="right")
        with pytest.raises(ArtinError, match="Side must be"):
            is_x_reduced(st, {"t"}, side="middle")


class TestLcm:
    """Tests for the lcm outcome taxonomy."""

    def test_dihedral_lcms(self, a2: ArtinPresentation, b2: ArtinPresentation) -> None:
        """Test lcm(s,t) = [s,t>^m."""
        assert left_lcm(m_parse(a2, "s"), m_parse(a2, "t")).element == m_parse(a2, "sts")
        assert left_lcm(m_parse(b2, "s"), m_parse(b2, "t")).element == m_parse(b2, "stst")
        assert right_lcm(m_parse(a2, "s"), m_parse(a2, "t")).element == m_parse(a2, "sts")

    def test_lcm_of_divisor(self, a2: ArtinPresentation) -> None:
        """Test that lcm(u, uv) = uv."""
        result = left_lcm(m_parse(a2, "s"), m_parse(a2, "st"))

        assert result.is_finite
        assert result.element == m_parse(a2, "st")

    def test_infinite(self, tri: ArtinPresentation) -> None:
        """Test that a and b have no common multiple in TRI."""
        result = left_lcm(m_parse(tri, "a"), m_parse(tri, "b"))

        assert result.outcome is LcmOutcome.INFINITE
        assert str(result) == "Infinite"

    def test_unknown_beyond_cutoff(self, aff: ArtinPresentation) -> None:
        """Test that non-FC input reports Unknown(B) instead of guessing."""
        result = left_lcm(m_parse(aff, "a"), m_parse(aff, "bcb"), cutoff=24)

        assert result.outcome is LcmOutcome.UNKNOWN
        assert str(result) == "Unknown(24)"

    def test_spherical_support_in_non_fc(self, aff: ArtinPresentation) -> None:
        """Test that a spherical pair of AFF still gets an exact answer."""
        assert left_lcm(m_parse(aff, "a"), m_parse(aff, "b")).element == m_parse(aff, "aba")


class TestGarside:
    """Tests for Delta, square-free elements, alpha and normal forms."""

    def test_delta(self, a3: ArtinPresentation) -> None:
        """Test Delta of A3 and of a commuting pair."""
        assert delta(a3, a3.all).length == 6
        assert delta(a3, {"s1", "s3"}) == m_parse(a3, "s1 s3")
        assert delta(a3, a3.all, cross_check=True) == delta(a3, a3.all)

    def test_delta_needs_spherical(self, tri: ArtinPresentation) -> None:
        """Test that Delta of {a,b} in TRI does not exist."""
        with pytest.raises(NotSphericalError, match="not spherical"):
            delta(tri, {"a", "b"})

    def test_square_free(self, a2: ArtinPresentation) -> None:
        """Test square-free recognition through braid moves."""
        assert is_square_free(m_parse(a2, "sts"))
        assert not is_square_free(m_parse(a2, "ss"))
        assert not is_square_free(m_parse(a2, "stst"))

    def test_alpha_and_omega(self, a2: ArtinPresentation) -> None:
        """Test greatest square-free divisors on both sides."""
        assert alpha(m_parse(a2, "stst")) == m_parse(a2, "sts")
        assert alpha(m_parse(a2, "ss")) == m_parse(a2, "s")
        assert omega(m_parse(a2, "stt")) == m_parse(a2, "t")

    def test_normal_form(self, a2: ArtinPresentation) -> None:
        """Test the greedy normal form of stst."""
        nf = normal_form(m_parse(a2, "s t s t"))

        assert [f.word for f in nf.factors] == [("s", "t", "s"), ("t",)]
        assert str(nf) == "sts . t"
        assert nf.product() == m_parse(a2, "stst")

    def test_normal_form_separator(self, a3: ArtinPresentation) -> None:
        """Test that multi-character generators use a bar between factors."""
        assert str(normal_form(m_parse(a3, "s1 s1"))) == "s1 | s1"

    def test_exchange_and_chain(self, a2: ArtinPresentation) -> None:
        """Test the exchange and chain properties on small instances."""
        assert check_exchange(m_parse(a2, "st"), "t")
        assert check_chain("s", m_parse(a2, "t"), m_parse(a2, "s"), {"s", "t"})


class TestFractions:
    """Tests for signed words and coprime fractions."""

    def test_parse_signed_word(self, a2: ArtinPresentation) -> None:
        """Test that st^-1 means (st)^-1."""
        assert parse_signed_word(a2, "s t^-1").letters == (("s", 1), ("t", -1))
        assert parse_signed_word(a2, "st^-1").letters == (("t", -1), ("s", -1))
        assert parse_signed_word(a2, "s s^-1").letters == ()

    def test_left_fraction(self, a2: ArtinPresentation) -> None:
        """Test that t.s^-1 = (ts)^-1.st."""
        fraction = coprime_fraction(parse_signed_word(a2, "t s^-1"))

        assert fraction == FractionForm(m_parse(a2, "ts"), m_parse(a2, "st"))

    def test_already_coprime(self, a2: ArtinPresentation) -> None:
        """Test s^-1 t."""
        assert coprime_fraction(parse_signed_word(a2, "s^-1 t")) == FractionForm(m_parse(a2, "s"), m_parse(a2, "t"))

    def test_right_fraction(self, a2: ArtinPresentation) -> None:
        """Test that s^-1.t = ts.(st)^-1."""
        fraction = right_coprime_fraction(parse_signed_word(a2, "s^-1 t"))

        assert fraction == FractionForm(m_parse(a2, "st"), m_parse(a2, "ts"))

    def test_trivial(self, a2: ArtinPresentation) -> None:
        """Test sts.(tst)^-1 = 1."""
        assert is_trivial_spherical(parse_signed_word(a2, "s t s t^-1 s^-1 t^-1"))
        assert not is_trivial_spherical(parse_signed_word(a2, "s t^-1"))

    def test_non_spherical_support(self, tri: ArtinPresentation) -> None:
        """Test that fractions need a spherical support."""
        with pytest.raises(NotSphericalError, match="spherical support"):
            coprime_fraction(parse_signed_word(tri, "a b^-1"))
