"""Tests for subsets and resonant decompositions."""

import pytest

from mm_sexpansion.cayley import cyclic
from mm_sexpansion.errors import DimensionMismatchError, PreconditionError
from mm_sexpansion.isomorphism import Permutation, permute_table
from mm_sexpansion.resonance import (
    ResonanceSpec,
    ResonantPair,
    Subset,
    fills_space,
    find_all_resonances,
    find_resonances,
    is_resonant,
    parse_resonance_spec,
    parse_subset,
    show_resonances,
    subsets,
)

from .tables import S770, S_E2, S_N3, S_S3, T42


def pair(n: int, s0: tuple[int, ...], s1: tuple[int, ...]) -> ResonantPair:
    return ResonantPair(Subset(n, s0), Subset(n, s1))


class TestSubset:
    """Tests for Subset."""

    def test_sorted_and_deduplicated(self) -> None:
        """Members are normalized."""
        assert Subset(5, (3, 1, 3)).members == (1, 3)

    def test_out_of_range(self) -> None:
        """Members must lie in 1..n."""
        with pytest.raises(PreconditionError):
            Subset(3, (4,))

    def test_subsets_lexicographic(self) -> None:
        """Size-k subsets come in lexicographic order."""
        assert [s.members for s in subsets(4, 2)] == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]

    def test_subsets_bad_size(self) -> None:
        """Sizes outside 0..n are rejected."""
        with pytest.raises(PreconditionError):
            subsets(3, 4)

    def test_parse_subset(self) -> None:
        """Commas and spaces both separate labels."""
        assert parse_subset(5, "1,4, 5") == Subset(5, (1, 4, 5))

    def test_parse_subset_garbage(self) -> None:
        """Non-integer labels are rejected."""
        with pytest.raises(PreconditionError):
            parse_subset(5, "1,a")


class TestParseResonanceSpec:
    """Tests for parse_resonance_spec."""

    def test_with_grading(self) -> None:
        """S0, S1, V0 and V1 on one line."""
        spec = parse_resonance_spec(5, "S0=1,2,3,S1=1,4,5,V0=1,V1=2,3")
        assert spec == ResonanceSpec(pair(5, (1, 2, 3), (1, 4, 5)), (1,), (2, 3))

    def test_without_grading(self) -> None:
        """V0 and V1 are optional; keys are case-insensitive."""
        spec = parse_resonance_spec(5, "s1=1,4,5, s0=1,2,3")
        assert spec.pair == pair(5, (1, 2, 3), (1, 4, 5))
        assert spec.v0 is None
        assert spec.v1 is None

    @pytest.mark.parametrize(
        "text",
        ["1,2,3", "S0=1,2,3", "S0=1,S1=2,S0=3", "S0=1,S1=2,V0=1", "S0=1,S1=2,V0=a,V1=2", "S0=1,S1=9"],
    )
    def test_rejected(self, text: str) -> None:
        """Missing, repeated or unpaired keys and bad labels."""
        with pytest.raises(PreconditionError):
            parse_resonance_spec(5, text)


class TestIsResonant:
    """Tests for is_resonant."""

    def test_z2(self) -> None:
        """Z2 splits into the identity and the generator."""
        assert is_resonant(cyclic(2), pair(2, (1,), (2,)))
        assert not is_resonant(cyclic(2), pair(2, (2,), (1,)))

    def test_s770(self) -> None:
        """The order-5 example is resonant for S0 = {1,2,3}, S1 = {1,4,5}."""
        assert is_resonant(S770, pair(5, (1, 2, 3), (1, 4, 5)))

    def test_se2(self) -> None:
        """S_E^(2) is resonant for S0 = {1,3,4}, S1 = {2,4}."""
        assert is_resonant(S_E2, pair(4, (1, 3, 4), (2, 4)))

    def test_must_cover(self) -> None:
        """A pair that misses an element is not resonant."""
        p = pair(4, (2, 4), (1, 4))
        assert not fills_space(p)
        assert not is_resonant(S_N3, p)

    def test_size_mismatch(self) -> None:
        """Pairs over another set are rejected."""
        with pytest.raises(DimensionMismatchError):
            is_resonant(S_N3, pair(3, (1,), (2, 3)))

    def test_pair_parts_must_agree(self) -> None:
        """Both parts of a pair live in the same set."""
        with pytest.raises(DimensionMismatchError):
            ResonantPair(Subset(3, (1,)), Subset(4, (2,)))

    def test_invariant_under_relabeling(self) -> None:
        """Resonances transport along isomorphisms."""
        sigma = Permutation((4, 1, 3, 2))
        for p in find_all_resonances(T42):
            assert is_resonant(permute_table(T42, sigma), p.image(sigma))


class TestFindResonances:
    """Tests for find_resonances and find_all_resonances."""

    def test_z2(self) -> None:
        """Z2 has exactly one resonance."""
        assert find_all_resonances(cyclic(2)) == [pair(2, (1,), (2,))]

    def test_n3(self) -> None:
        """S_N3 has five resonances ordered by sizes, then S0, then S1."""
        assert find_all_resonances(S_N3) == [
            pair(4, (2, 4), (1, 3, 4)),
            pair(4, (1, 2, 4), (3, 4)),
            pair(4, (2, 3, 4), (1, 4)),
            pair(4, (1, 2, 4), (1, 3, 4)),
            pair(4, (2, 3, 4), (1, 3, 4)),
        ]

    def test_s3(self) -> None:
        """S_S3 has two resonances."""
        assert len(find_all_resonances(S_S3)) == 2

    def test_by_size(self) -> None:
        """Fixed sizes select a slice of the full list."""
        assert find_resonances(S_N3, 3, 2) == [pair(4, (1, 2, 4), (3, 4)), pair(4, (2, 3, 4), (1, 4))]
        assert find_resonances(S_N3, 1, 3) == []

    def test_all_found_are_resonant(self) -> None:
        """Every reported pair passes is_resonant and has the requested sizes."""
        for k0 in range(1, 5):
            for k1 in range(1, 5):
                for p in find_resonances(S770, k0, k1):
                    assert (len(p.s0), len(p.s1)) == (k0, k1)
                    assert is_resonant(S770, p)

    def test_sizes_out_of_range(self) -> None:
        """Sizes must lie in 1..n-1."""
        with pytest.raises(PreconditionError):
            find_resonances(S_N3, 4, 1)
        with pytest.raises(PreconditionError):
            find_resonances(S_N3, 1, 0)

    def test_trivial_has_none(self) -> None:
        """A one-element semigroup admits no sizes at all."""
        assert find_all_resonances(cyclic(1)) == []


class TestShowResonances:
    """Tests for show_resonances."""

    def test_listing(self) -> None:
        """Header, one block per resonance and a trailing count."""
        text = show_resonances("z:2", find_all_resonances(cyclic(2)))
        assert text.splitlines() == [
            "The semigroup z:2 has 1 resonances:",
            "Resonance #1",
            "S0: 1",
            "S1: 2",
            "1 resonances",
        ]
