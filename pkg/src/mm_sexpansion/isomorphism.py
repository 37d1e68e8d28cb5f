"""Permutations of 1..n, table isomorphisms, anti-isomorphisms and canonical forms."""

import itertools
from dataclasses import dataclass
from functools import cache
from typing import Self

from .cayley import CayleyTable
from .errors import DimensionMismatchError, PreconditionError

MAX_PERMUTATION_ORDER = 8


@dataclass(frozen=True, slots=True)
class Permutation:
    """Bijection σ on 1..n stored as its image list, ``image[α-1] = σ(α)``."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        """Normalize to a tuple and check bijectivity."""
        image = tuple(int(v) for v in self.image)
        object.__setattr__(self, "image", image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise PreconditionError(f"{image} is not a permutation of 1..{len(image)}")

    @classmethod
    def identity(cls, n: int) -> Self:
        """Identity permutation of 1..n."""
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        """Size of the permuted set."""
        return len(self.image)

    def __call__(self, a: int) -> int:
        """Return σ(a)."""
        return self.image[a - 1]

    def __str__(self) -> str:
        """Image notation, e.g. ``(4 1 3 2)``."""
        return "(" + " ".join(str(v) for v in self.image) + ")"

    def inverse(self) -> Permutation:
        """Inverse permutation."""
        inv = [0] * self.n
        for a, b in enumerate(self.image, start=1):
            inv[b - 1] = a
        return Permutation(tuple(inv))

    def compose(self, other: Permutation) -> Permutation:
        """Composition self∘other: a ↦ self(other(a))."""
        if other.n != self.n:
            raise DimensionMismatchError(f"cannot compose permutations of {self.n} and {other.n} elements")
        return Permutation(tuple(self.image[b - 1] for b in other.image))

    def is_identity(self) -> bool:
        """True for the identity."""
        return self.image == tuple(range(1, self.n + 1))


@cache
def permutation_pairs(n: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """Pairs (σ, σ⁻¹) over 0..n-1 in lexicographic order of σ."""
    result = []
    for sigma in itertools.permutations(range(n)):
        inv = [0] * n
        for a, b in enumerate(sigma):
            inv[b] = a
        result.append((sigma, tuple(inv)))
    return tuple(result)


def all_permutations(n: int) -> list[Permutation]:
    """All n! permutations of 1..n in lexicographic order of their images."""
    if not 1 <= n <= MAX_PERMUTATION_ORDER:
        raise PreconditionError(f"permutation size must be in 1..{MAX_PERMUTATION_ORDER}, got {n}")
    return [Permutation(tuple(v + 1 for v in sigma)) for sigma, _ in permutation_pairs(n)]


def inverse(p: Permutation) -> Permutation:
    """Inverse of p."""
    return p.inverse()


def permute_table(t: CayleyTable, sigma: Permutation) -> CayleyTable:
    """Relabel t by σ: b_αβ = σ(a_{σ⁻¹(α), σ⁻¹(β)})."""
    if sigma.n != t.order:
        raise DimensionMismatchError(f"permutation of {sigma.n} elements applied to a table of order {t.order}")
    inv = sigma.inverse()
    n = t.order
    return CayleyTable(tuple(tuple(sigma(t.product(inv(a), inv(b))) for b in range(1, n + 1)) for a in range(1, n + 1)))


def _maps_onto(src: list[int], dst: list[int], n: int, sigma: tuple[int, ...], inv: tuple[int, ...]) -> bool:
    """True iff relabeling the 0-based flat table src by σ gives dst; stops at the first mismatched cell."""
    for a in range(n):
        ra = inv[a] * n
        base = a * n
        for b in range(n):
            if sigma[src[ra + inv[b]]] != dst[base + b]:
                return False
    return True


def find_isomorphism(a: CayleyTable, b: CayleyTable) -> Permutation | None:
    """Lexicographically first σ with permute_table(a, σ) = b, or None."""
    if a.order != b.order:
        return None
    n = a.order
    src, dst = a.zero_based(), b.zero_based()
    for sigma, inv in permutation_pairs(n):
        if _maps_onto(src, dst, n, sigma, inv):
            return Permutation(tuple(v + 1 for v in sigma))
    return None


def find_all_isomorphisms(a: CayleyTable, b: CayleyTable) -> list[Permutation]:
    """Every σ with permute_table(a, σ) = b, in lexicographic order."""
    if a.order != b.order:
        return []
    n = a.order
    src, dst = a.zero_based(), b.zero_based()
    return [
        Permutation(tuple(v + 1 for v in sigma))
        for sigma, inv in permutation_pairs(n)
        if _maps_onto(src, dst, n, sigma, inv)
    ]


def find_anti_isomorphism(a: CayleyTable, b: CayleyTable) -> Permutation | None:
    """Lexicographically first σ with b_αβ = σ(a_{σ⁻¹(β), σ⁻¹(α)}), or None."""
    return find_isomorphism(a.transpose(), b)


def find_all_anti_isomorphisms(a: CayleyTable, b: CayleyTable) -> list[Permutation]:
    """Every anti-isomorphism witness from a onto b, in lexicographic order."""
    return find_all_isomorphisms(a.transpose(), b)


def _min_image(flat: list[int], n: int, best: list[int]) -> list[int]:
    """Smallest relabeling of flat over Σn, compared with best row-major."""
    cells = n * n
    for sigma, inv in permutation_pairs(n):
        candidate = None
        for p in range(cells):
            r, c = divmod(p, n)
            v = sigma[flat[inv[r] * n + inv[c]]]
            if candidate is None:
                if v > best[p]:
                    break
                if v < best[p]:
                    candidate = best[:p]
                    candidate.append(v)
            else:
                candidate.append(v)
        if candidate is not None:
            best = candidate
    return best


def canonical_form(t: CayleyTable, include_anti: bool = True) -> CayleyTable:
    """Lexicographically minimal relabeling of t, also over relabelings of its transpose when include_anti."""
    n = t.order
    flat = t.zero_based()
    best = _min_image(flat, n, list(flat))
    if include_anti:
        best = _min_image(t.transpose().zero_based(), n, best)
    return CayleyTable.from_flat(best, zero_based=True, id=t.id)


def permutation_listing(n: int) -> str:
    """List every permutation of 1..n with its index and inverse."""
    lines = []
    for i, p in enumerate(all_permutations(n)):
        lines.append(f"P#{i} = {p}  inverse {p.inverse()}")
    return "\n".join(lines)
