"""Tests for the Salvetti poset and the induced order-preserving map."""

import pytest

from artintool.coxeter import w_canonical
from artintool.errors import UnverifiedMapError
from artintool.lcm_hom import LcmHom
from artintool.models import Status
from artintool.presentation import ArtinPresentation
from artintool.salvetti import (
    SalvettiNode,
    lemphi_violations,
    map_node,
    salvetti_leq,
    salvetti_lt,
    salvetti_nodes,
    verify_lemphi,
    verify_partial_order,
)
from artintool.workspace import Workspace


def node(presentation: ArtinPresentation, word: str, subset: str) -> SalvettiNode:
    return SalvettiNode(w_canonical(presentation, presentation.parse_word(word)), frozenset(subset.split()))


class TestOrder:
    """Tests for salvetti_leq on A2."""

    def test_subset_inclusion(self, a2: ArtinPresentation) -> None:
        """Test (1, ∅) <= (1, {s}) <= (1, {s,t})."""
        assert salvetti_leq(node(a2, "1", ""), node(a2, "1", "s"))
        assert salvetti_leq(node(a2, "1", "s"), node(a2, "1", "s t"))
        assert not salvetti_leq(node(a2, "1", "s"), node(a2, "1", "t"))

    def test_length_condition(self, a2: ArtinPresentation) -> None:
        """Test that the coset step must add length to w0(T1)."""
        assert salvetti_leq(node(a2, "s", ""), node(a2, "1", "s"))
        assert salvetti_leq(node(a2, "1", "s"), node(a2, "t", "s t"))
        assert not salvetti_leq(node(a2, "1", "s"), node(a2, "s", "s t"))

    def test_coset_condition(self, a2: ArtinPresentation) -> None:
        """Test that w2^-1 w1 must lie in W_T2."""
        assert not salvetti_leq(node(a2, "t", ""), node(a2, "1", "s"))

    def test_strict(self, a2: ArtinPresentation) -> None:
        """Test that < excludes equality."""
        n = node(a2, "st", "s")
        assert salvetti_leq(n, n)
        assert not salvetti_lt(n, n)

    def test_partial_order(self, a2: ArtinPresentation) -> None:
        """Test the order axioms on every node of A2."""
        nodes = salvetti_nodes(a2)

        assert len(nodes) == 24
        assert verify_partial_order(nodes).status is Status.PASS


class TestInducedMap:
    """Tests for p̃(w, T) = (φ_W(w), p(T))."""

    def test_map_node(self, fold: LcmHom, b2: ArtinPresentation, a3: ArtinPresentation) -> None:
        """Test the image of a single node."""
        assert map_node(fold, node(b2, "s", "t")) == node(a3, "s1 s3", "s2")

    def test_fold_preserves_order(self, fold: LcmHom) -> None:
        """Test all node pairs of B2."""
        item = verify_lemphi(fold)

        assert item.status is Status.PASS
        assert item.detail == "1024 pairs"

    def test_free_source(self, freemap: LcmHom, f2: ArtinPresentation) -> None:
        """Test an infinite source on its length ball."""
        nodes = salvetti_nodes(f2, radius=2)
        pairs = [(n1, n2) for n1 in nodes for n2 in nodes]

        assert lemphi_violations(freemap, pairs) == []

    def test_broken_map_refused(self, workspace: Workspace) -> None:
        """Test that a map failing L0 is not applied by default."""
        broken = workspace.lcm_hom("BROKEN")

        with pytest.raises(UnverifiedMapError):
            verify_lemphi(broken)

    def test_broken_map_control(self, workspace: Workspace) -> None:
        """Test that forcing the overlapping map exposes order violations."""
        item = verify_lemphi(workspace.lcm_hom("BROKEN"), allow_unverified=True)

        assert item.status is Status.FAIL
        assert "both map to" in item.witness or "images give" in item.witness
