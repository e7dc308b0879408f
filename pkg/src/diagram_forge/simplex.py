"""Monotone maps between finite ordinals [m] -> [n] and the simplex category."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement

from .fincat import FinCategory, NotComposable


@dataclass(frozen=True, order=True)
class SimplexMap:
    domain: int
    codomain: int
    values: tuple[int, ...]

    def __post_init__(self):
        vals = self.values
        if self.domain < 0 or self.codomain < 0:
            raise ValueError(f"[{self.domain}] -> [{self.codomain}] is not a map of nonempty ordinals")
        if len(vals) != self.domain + 1:
            raise ValueError(f"{vals} does not have {self.domain + 1} entries")
        if any(v < 0 or v > self.codomain for v in vals):
            raise ValueError(f"{vals} leaves [{self.codomain}]")
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise ValueError(f"{vals} is not monotone")

    @classmethod
    def of(cls, values, codomain: int | None = None) -> "SimplexMap":
        values = tuple(values)
        if codomain is None:
            codomain = max(values)
        return cls(len(values) - 1, codomain, values)

    @property
    def injective(self) -> bool:
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    @property
    def surjective(self) -> bool:
        return set(self.values) == set(range(self.codomain + 1))

    @property
    def is_identity(self) -> bool:
        return self.domain == self.codomain and self.values == tuple(range(self.domain + 1))

    def __call__(self, i: int) -> int:
        return self.values[i]

    def __str__(self):
        return "(" + ",".join(map(str, self.values)) + ")"


def identity(n: int) -> SimplexMap:
    return SimplexMap(n, n, tuple(range(n + 1)))


def monotone_maps(m: int, n: int) -> list[SimplexMap]:
    """All weakly increasing [m] -> [n], lexicographically ordered."""
    return [SimplexMap(m, n, v) for v in combinations_with_replacement(range(n + 1), m + 1)]


def injective_maps(m: int, n: int) -> list[SimplexMap]:
    return [SimplexMap(m, n, v) for v in combinations(range(n + 1), m + 1)]


def surjective_maps(m: int, n: int) -> list[SimplexMap]:
    return [f for f in monotone_maps(m, n) if f.surjective]


def compose_simplex(g: SimplexMap, f: SimplexMap) -> SimplexMap:
    if f.codomain != g.domain:
        raise NotComposable(f"{g} ∘ {f}: [{f.codomain}] != [{g.domain}]")
    return SimplexMap(f.domain, g.codomain, tuple(g.values[v] for v in f.values))


def epi_mono_factor(f: SimplexMap) -> tuple[SimplexMap, SimplexMap]:
    """Split ``f`` as a surjection followed by an injection."""
    image = sorted(set(f.values))
    rank = {v: k for k, v in enumerate(image)}
    k = len(image) - 1
    s = SimplexMap(f.domain, k, tuple(rank[v] for v in f.values))
    d = SimplexMap(k, f.codomain, tuple(image))
    return s, d


def face_map(n: int, i: int) -> SimplexMap:
    """δ_i : [n-1] -> [n], skipping i."""
    return SimplexMap(n - 1, n, tuple(j for j in range(n + 1) if j != i))


def degeneracy_map(n: int, i: int) -> SimplexMap:
    """σ_i : [n+1] -> [n], hitting i twice."""
    return SimplexMap(n + 1, n, tuple(j if j <= i else j - 1 for j in range(n + 2)))


def ordinal(n: int) -> str:
    return f"[{n}]"


def delta_category(n: int, kind: str = "all") -> FinCategory:
    """Δ restricted to [0..n]; ``kind`` selects all, injective or surjective maps."""
    pick = {"all": monotone_maps, "injective": injective_maps, "surjective": surjective_maps}[kind]
    objects = [ordinal(k) for k in range(n + 1)]
    rows = []
    for a in range(n + 1):
        for b in range(n + 1):
            for f in pick(a, b):
                label = f"id_{ordinal(a)}" if f.is_identity else f"{f}:{a}→{b}"
                rows.append((f, ordinal(a), ordinal(b), label, f.is_identity))
    suffix = {"all": "", "injective": "₊", "surjective": "₋"}[kind]
    return FinCategory.from_morphisms(
        objects, {ordinal(k): k for k in range(n + 1)}, rows, compose_simplex,
        name=f"Δ{suffix}≤{n}",
    )


def delta_plus_op(n: int) -> FinCategory:
    """Δ₊ᵒᵖ on [0..n]: an inverse category with degree [k] -> k."""
    return delta_category(n, "injective").opposite()
