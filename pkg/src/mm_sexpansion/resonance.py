"""Subsets of a semigroup and two-part resonant decompositions S = S0 ∪ S1."""

import itertools
import re
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Self

from .cayley import CayleyTable
from .errors import DimensionMismatchError, PreconditionError
from .isomorphism import Permutation


@dataclass(frozen=True, slots=True, order=True)
class Subset:
    """Sorted, duplicate-free subset of 1..n."""

    n: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        """Sort, deduplicate and range-check the members."""
        members = tuple(sorted({int(v) for v in self.members}))
        object.__setattr__(self, "members", members)
        if members and not (1 <= members[0] and members[-1] <= self.n):
            raise PreconditionError(f"subset {members} is not contained in 1..{self.n}")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> Self:
        """Build from any iterable of labels."""
        return cls(n, tuple(members))

    @classmethod
    def full(cls, n: int) -> Self:
        """The whole set 1..n."""
        return cls(n, tuple(range(1, n + 1)))

    def __contains__(self, item: object) -> bool:
        """Membership test."""
        return item in self.members

    def __len__(self) -> int:
        """Number of members."""
        return len(self.members)

    def __str__(self) -> str:
        """Space-separated members."""
        return " ".join(str(v) for v in self.members)

    def image(self, sigma: Permutation) -> Subset:
        """Elementwise image under σ."""
        return Subset(self.n, tuple(sigma(v) for v in self.members))


@dataclass(frozen=True, slots=True, order=True)
class ResonantPair:
    """Candidate resonant decomposition (S0, S1); the parts may overlap."""

    s0: Subset
    s1: Subset

    def __post_init__(self) -> None:
        """Both parts must live in the same ambient set."""
        if self.s0.n != self.s1.n:
            raise DimensionMismatchError(f"subsets of 1..{self.s0.n} and 1..{self.s1.n} cannot form a pair")

    @property
    def n(self) -> int:
        """Ambient order."""
        return self.s0.n

    def image(self, sigma: Permutation) -> ResonantPair:
        """Elementwise image of both parts under σ."""
        return ResonantPair(self.s0.image(sigma), self.s1.image(sigma))


def subsets(n: int, k: int) -> list[Subset]:
    """All size-k subsets of 1..n in lexicographic order."""
    if not 0 <= k <= n:
        raise PreconditionError(f"subset size must be in 0..{n}, got {k}")
    return [Subset(n, combo) for combo in itertools.combinations(range(1, n + 1), k)]


def fills_space(p: ResonantPair) -> bool:
    """True iff S0 ∪ S1 = {1..n}."""
    return len(set(p.s0.members) | set(p.s1.members)) == p.n


def _closed(t: CayleyTable, left: Subset, right: Subset, target: Subset) -> bool:
    return all(t.product(a, b) in target for a in left.members for b in right.members)


def is_resonant(t: CayleyTable, p: ResonantPair) -> bool:
    """True iff p covers S and S0·S0 ⊆ S0, S0·S1 ⊆ S1, S1·S0 ⊆ S1, S1·S1 ⊆ S0."""
    if p.n != t.order:
        raise DimensionMismatchError(f"pair over 1..{p.n} tested against a table of order {t.order}")
    return (
        fills_space(p)
        and _closed(t, p.s0, p.s0, p.s0)
        and _closed(t, p.s0, p.s1, p.s1)
        and _closed(t, p.s1, p.s0, p.s1)
        and _closed(t, p.s1, p.s1, p.s0)
    )


def find_resonances(t: CayleyTable, k0: int, k1: int) -> list[ResonantPair]:
    """All resonant pairs with |S0| = k0 and |S1| = k1, S0 outer and S1 inner in lexicographic order."""
    n = t.order
    if not (1 <= k0 <= n - 1 and 1 <= k1 <= n - 1):
        raise PreconditionError(f"subset sizes must be in 1..{n - 1}, got k0={k0}, k1={k1}")
    result = []
    for s0 in subsets(n, k0):
        if not _closed(t, s0, s0, s0):
            continue
        for s1 in subsets(n, k1):
            pair = ResonantPair(s0, s1)
            if is_resonant(t, pair):
                result.append(pair)
    return result


def find_all_resonances(t: CayleyTable) -> list[ResonantPair]:
    """Resonant pairs of every size combination, ordered by (k0, k1) then lexicographically."""
    n = t.order
    seen: dict[ResonantPair, None] = {}
    for k0 in range(1, n):
        for k1 in range(1, n):
            for pair in find_resonances(t, k0, k1):
                seen.setdefault(pair, None)
    return list(seen)


def parse_subset(n: int, text: str) -> Subset:
    """Parse labels separated by commas or spaces, e.g. ``1,2,3``."""
    items = text.replace(",", " ").split()
    try:
        return Subset(n, tuple(int(v) for v in items))
    except ValueError:
        raise PreconditionError(f"'{text}' is not a list of element labels") from None


_SPEC_KEY = re.compile(r"\b([SV][01])\s*=", re.IGNORECASE)


@dataclass(frozen=True, slots=True)
class ResonanceSpec:
    """Resonance given on one line, with an optional generator split V0, V1."""

    pair: ResonantPair
    v0: tuple[int, ...] | None = None
    v1: tuple[int, ...] | None = None


def parse_resonance_spec(n: int, text: str) -> ResonanceSpec:
    """Parse ``S0=1,2,3,S1=1,4,5,V0=1,V1=2,3``; V0 and V1 may be left out together."""
    parts = _SPEC_KEY.split(text.strip())
    if parts[0].strip(" ,"):
        raise PreconditionError(f"'{text}' must start with S0= or S1=")
    values: dict[str, str] = {}
    for key, value in zip(parts[1::2], parts[2::2], strict=True):
        name = key.upper()
        if name in values:
            raise PreconditionError(f"{name} is given twice in '{text}'")
        values[name] = value.strip(" ,")
    if "S0" not in values or "S1" not in values:
        raise PreconditionError(f"'{text}' needs both S0= and S1=")
    if ("V0" in values) != ("V1" in values):
        raise PreconditionError(f"'{text}' gives only one of V0= and V1=")
    pair = ResonantPair(parse_subset(n, values["S0"]), parse_subset(n, values["S1"]))
    if "V0" not in values:
        return ResonanceSpec(pair)
    try:
        v0, v1 = (tuple(int(v) for v in values[k].replace(",", " ").split()) for k in ("V0", "V1"))
    except ValueError:
        raise PreconditionError(f"'{text}' has a non-integer generator index") from None
    return ResonanceSpec(pair, v0, v1)


def show_resonances(name: str, pairs: list[ResonantPair]) -> str:
    """Render a resonance listing with a trailing count."""
    lines = [f"The semigroup {name} has {len(pairs)} resonances:"]
    for i, pair in enumerate(pairs, start=1):
        lines.extend([f"Resonance #{i}", f"S0: {pair.s0}", f"S1: {pair.s1}"])
    lines.append(f"{len(pairs)} resonances")
    return "\n".join(lines)
