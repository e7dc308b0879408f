"""Inverse-category checks, coslices, downward closure and matching indices."""
from __future__ import annotations

from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Iterable

from .fincat import FinCategory, word_key


@dataclass(frozen=True)
class Violation:
    kind: str
    where: str
    detail: str = ""

    def __str__(self):
        return f"{self.kind}: {self.where}" + (f" ({self.detail})" if self.detail else "")


def check_inverse(C: FinCategory) -> list[Violation]:
    """Every non-identity morphism must strictly lower the degree.

    Returns an empty list when ``C`` is inverse under its degree map.
    """
    report = []
    for f in C.non_identities():
        m = C.morphisms[f]
        if C.degree[m.target] >= C.degree[m.source]:
            report.append(Violation(
                "degree-not-decreasing", m.label,
                f"{m.source}({C.degree[m.source]}) -> {m.target}({C.degree[m.target]})",
            ))
    return report


def check_direct(C: FinCategory) -> list[Violation]:
    report = []
    for f in C.non_identities():
        m = C.morphisms[f]
        if C.degree[m.target] <= C.degree[m.source]:
            report.append(Violation(
                "degree-not-increasing", m.label,
                f"{m.source}({C.degree[m.source]}) -> {m.target}({C.degree[m.target]})",
            ))
    return report


def synthesize_degrees(C: FinCategory) -> dict[str, int]:
    """Degree = length of the longest chain of non-identity arrows out of x.

    Raises graphlib.CycleError if the non-identity arrows contain a cycle.
    """
    succ = {x: set() for x in C.objects}
    for f in C.non_identities():
        succ[C.source(f)].add(C.target(f))
    degree = {}
    for x in TopologicalSorter(succ).static_order():
        degree[x] = 1 + max((degree[y] for y in succ[x]), default=-1)
    return degree


def mor_sort_key(C: FinCategory, f: int) -> tuple:
    """Canonical order: target degree, then the length-lex representative word."""
    m = C.morphisms[f]
    return (C.degree[m.target], word_key(m.word))


@dataclass(frozen=True)
class CosliceObject:
    target: str
    mor: int


class CosliceCategory:
    """x⫽C: non-identity arrows out of ``apex`` and commuting triangles."""

    def __init__(self, base: FinCategory, apex: str):
        self.base = base
        self.apex = base.check_object(apex)
        self.objects = tuple(
            CosliceObject(base.target(f), f)
            for f in sorted(
                (f for f in base.out_of(apex) if not base.is_identity(f)),
                key=lambda f: mor_sort_key(base, f),
            )
        )

    def __len__(self):
        return len(self.objects)

    def forgetful(self, obj: CosliceObject) -> str:
        return obj.target

    def hom(self, a: CosliceObject, b: CosliceObject) -> list[int]:
        B = self.base
        return [h for h in B.hom(a.target, b.target) if B.compose(h, a.mor) == b.mor]

    def name_of(self, obj: CosliceObject) -> str:
        return self.base.label(obj.mor)

    def as_category(self) -> FinCategory:
        """The coslice as a FinCategory; object names are arrow labels."""
        B = self.base
        names = {o: self.name_of(o) for o in self.objects}
        rows = []
        for a in self.objects:
            for b in self.objects:
                for h in self.hom(a, b):
                    rows.append(((a.mor, h), names[a], names[b], B.label(h), B.is_identity(h)))
        return FinCategory.from_morphisms(
            [names[o] for o in self.objects],
            {names[o]: B.degree[o.target] for o in self.objects},
            rows,
            lambda gk, fk: (fk[0], B.compose(gk[1], fk[1])),
            name=f"{self.apex}⫽{B.name}",
        )


def coslice(C: FinCategory, x: str) -> CosliceCategory:
    return CosliceCategory(C, x)


@dataclass(frozen=True)
class MatchingIndex:
    apex: str
    entries: tuple[CosliceObject, ...]


def matching_index(C: FinCategory, x: str) -> MatchingIndex:
    return MatchingIndex(x, coslice(C, x).objects)


@dataclass
class DownwardClosed:
    objects: tuple[str, ...]
    category: FinCategory
    inclusion: dict[int, int]


def downward_closure(C: FinCategory, seeds: Iterable[str]) -> set[str]:
    seen = set()
    stack = [C.check_object(s) for s in seeds]
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(C.target(f) for f in C.out_of(x))
    return seen


def downward_closed(C: FinCategory, seeds: Iterable[str]) -> DownwardClosed:
    keep = downward_closure(C, seeds)
    sub, inc = C.full_subcategory(keep)
    return DownwardClosed(sub.objects, sub, inc)


def is_downward_closed(C: FinCategory, objs: Iterable[str]) -> bool:
    objs = set(objs)
    return downward_closure(C, objs) == objs


def find_cycle(C: FinCategory) -> list[str] | None:
    succ = {x: set() for x in C.objects}
    for f in C.non_identities():
        succ[C.source(f)].add(C.target(f))
    try:
        tuple(TopologicalSorter(succ).static_order())
    except CycleError as exc:
        return list(exc.args[1])
    return None
