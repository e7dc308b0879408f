"""Reedy categories, the direct replacement 𝔇 of Δ, and the general D(R).

Objects of 𝔇 are nonempty lists of positive integers; a morphism
``a -> b`` is a monotone ``f: [m] -> [n]`` with ``b[j] >= sum(a[i] for f(i) == j)``.
It is marked when ``f`` is an identity of Δ.

For a Reedy category R, D(R) has the R⁻-arrows ``s: x ↠ y`` as objects and a
morphism ``s -> t`` (``t: z ↠ w``) is an ``f: y -> w`` for which some
R⁺-arrow ``p: x ↣ z`` with ``t ∘ p = f ∘ s`` exists.  The lift is only
checked for existence; it is not recorded.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .fincat import CategoryError, CategorySpec, FinCategory, build_category
from .inverse import Violation, check_direct, find_cycle
from .simplex import (
    SimplexMap,
    compose_simplex,
    delta_category,
    monotone_maps,
)


class NotReedy(CategoryError):
    pass


class NotSurjective(CategoryError, ValueError):
    pass


@dataclass(frozen=True)
class ReedyCategory:
    base: FinCategory
    plus: frozenset[int]
    minus: frozenset[int]

    @property
    def degree(self) -> Mapping[str, int]:
        return self.base.degree

    def swapped(self) -> "ReedyCategory":
        return ReedyCategory(self.base, self.minus, self.plus)


def check_reedy(R: ReedyCategory) -> list[Violation]:
    C = R.base
    report = []
    for x in C.objects:
        i = C.identity(x)
        for part, members in (("plus", R.plus), ("minus", R.minus)):
            if i not in members:
                report.append(Violation(f"{part}-not-wide", x))
    for (g, f), h in C.composable_pairs():
        for part, members in (("plus", R.plus), ("minus", R.minus)):
            if g in members and f in members and h not in members:
                report.append(Violation(
                    f"{part}-not-closed", C.label(h), f"{C.label(g)} ∘ {C.label(f)}",
                ))
    for f in sorted(R.minus):
        m = C.morphisms[f]
        if not m.is_identity and C.degree[m.target] >= C.degree[m.source]:
            report.append(Violation("minus-not-inverse", m.label,
                                    f"degree {C.degree[m.source]} -> {C.degree[m.target]}"))
    for f in sorted(R.plus):
        m = C.morphisms[f]
        if not m.is_identity and C.degree[m.target] <= C.degree[m.source]:
            report.append(Violation("plus-not-direct", m.label,
                                    f"degree {C.degree[m.source]} -> {C.degree[m.target]}"))
    counts = {f: 0 for f in range(len(C))}
    for s in R.minus:
        for p in C.out_of(C.target(s)):
            if p in R.plus:
                counts[C.compose(p, s)] += 1
    for f, n in counts.items():
        if n != 1:
            kind = "no-factorization" if n == 0 else "factorization-not-unique"
            report.append(Violation(kind, C.label(f), f"{n} minus-then-plus factorizations"))
    return report


def delta_reedy(n: int) -> ReedyCategory:
    """Δ on [0..n] with surjections as R⁻ and injections as R⁺."""
    C = delta_category(n)
    plus = frozenset(f for f, m in enumerate(C.morphisms) if m.key.injective)
    minus = frozenset(f for f, m in enumerate(C.morphisms) if m.key.surjective)
    return ReedyCategory(C, plus, minus)


def discrete_reedy(names: Iterable[str]) -> ReedyCategory:
    C = build_category(CategorySpec(tuple((x, 0) for x in names), ()), 1)
    ids = frozenset(range(len(C)))
    return ReedyCategory(C, ids, ids)


def _closure(C: FinCategory, gens: Iterable[int]) -> frozenset[int]:
    members = {C.identity(x) for x in C.objects} | set(gens)
    changed = True
    while changed:
        changed = False
        for (g, f), h in C.composable_pairs():
            if g in members and f in members and h not in members:
                members.add(h)
                changed = True
    return frozenset(members)


def reedy_from_dict(doc: Mapping, max_word_length: int = 8) -> ReedyCategory:
    """A Reedy spec: a category document plus ``plus``/``minus`` word lists."""
    C = build_category(CategorySpec.from_dict(doc), max_word_length)
    try:
        plus = [C.mor(w) for w in doc.get("plus", [])]
        minus = [C.mor(w) for w in doc.get("minus", [])]
    except KeyError as exc:
        raise NotReedy(f"unknown morphism in plus/minus list: {exc}") from exc
    return ReedyCategory(C, _closure(C, plus), _closure(C, minus))


# ---------------------------------------------------------------------------
# 𝔇


def compositions(total: int) -> list[tuple[int, ...]]:
    """All lists of positive integers summing to ``total``."""
    if total == 0:
        return [()]
    out = []
    for first in range(1, total + 1):
        out.extend((first,) + rest for rest in compositions(total - first))
    return out


def frak_d_degree(a: Iterable[int]) -> int:
    a = tuple(a)
    if not a or any(v < 1 for v in a):
        raise ValueError(f"{a} is not a nonempty list of positive integers")
    return 2 * sum(a) - (len(a) + 1)


def fmt_list(a: Iterable[int]) -> str:
    return "(" + ",".join(map(str, a)) + ")"


def frak_d_objects(n: int) -> list[tuple[int, ...]]:
    objs = [c for total in range(1, n + 2) for c in compositions(total)]
    return sorted(objs, key=lambda a: (frak_d_degree(a), a))


def frak_d_valid(a: tuple[int, ...], b: tuple[int, ...], f: SimplexMap) -> bool:
    load = [0] * len(b)
    for i, j in enumerate(f.values):
        load[j] += a[i]
    return all(bj >= lj for bj, lj in zip(b, load))


def frak_d_hom(a: tuple[int, ...], b: tuple[int, ...]) -> list[SimplexMap]:
    return [f for f in monotone_maps(len(a) - 1, len(b) - 1) if frak_d_valid(a, b, f)]


def _frak_label(a, b, f: SimplexMap) -> str:
    if a == b and f.is_identity:
        return f"id_{fmt_list(a)}"
    return f"{fmt_list(a)}→{fmt_list(b)}{f}"


def frak_d(n: int) -> FinCategory:
    """𝔇 restricted to lists with entry sum at most n+1 (a direct category)."""
    objs = frak_d_objects(n)
    rows = []
    marked = []
    for a in objs:
        for b in objs:
            for f in frak_d_hom(a, b):
                key = (a, b, f)
                rows.append((key, fmt_list(a), fmt_list(b), _frak_label(a, b, f), a == b and f.is_identity))
                if f.is_identity:
                    marked.append(key)

    def composer(gk, fk):
        return (fk[0], gk[1], compose_simplex(gk[2], fk[2]))

    return FinCategory.from_morphisms(
        [fmt_list(a) for a in objs],
        {fmt_list(a): frak_d_degree(a) for a in objs},
        rows, composer, marked, name=f"𝔇≤{n}",
    )


def marked_generators(D: FinCategory) -> list[int]:
    """Marked non-identities that are not composites of two marked non-identities."""
    composite = set()
    for (g, f), h in D.composable_pairs():
        if (g in D.marked and f in D.marked
                and not D.is_identity(g) and not D.is_identity(f)):
            composite.add(h)
    return [f for f in D.non_identities() if f in D.marked and f not in composite]


def check_degree_monotone(D: FinCategory) -> list[Violation]:
    """Every non-identity morphism must strictly increase the degree."""
    return check_direct(D)


def check_no_infinite_chains(D: FinCategory) -> list[Violation]:
    cycle = find_cycle(D)
    if cycle is None:
        return []
    return [Violation("cycle", " -> ".join(cycle))]


# ---------------------------------------------------------------------------
# surjections as lists


def list_of_surjection(s: SimplexMap) -> tuple[int, ...]:
    if not s.surjective:
        raise NotSurjective(f"{s} is not surjective onto [{s.codomain}]")
    sizes = [0] * (s.codomain + 1)
    for v in s.values:
        sizes[v] += 1
    return tuple(sizes)


def surjection_of_list(a: Iterable[int]) -> SimplexMap:
    a = tuple(a)
    if not a or any(v < 1 for v in a):
        raise ValueError(f"{a} is not a nonempty list of positive integers")
    values = tuple(j for j, size in enumerate(a) for _ in range(size))
    return SimplexMap(len(values) - 1, len(a) - 1, values)


# ---------------------------------------------------------------------------
# D(R)


def d_hom(R: ReedyCategory, s: int, t: int) -> list[int]:
    """All f: cod(s) -> cod(t) admitting a plus-lift dom(s) ↣ dom(t)."""
    C = R.base
    x, y = C.source(s), C.target(s)
    z, w = C.source(t), C.target(t)
    lifts = [p for p in C.hom(x, z) if p in R.plus]
    targets = {C.compose(t, p) for p in lifts}
    return [f for f in C.hom(y, w) if C.compose(f, s) in targets]


def longest_path_degrees(C: FinCategory) -> dict[str, int]:
    """Degree = longest chain of non-identity arrows ending at the object."""
    from graphlib import TopologicalSorter

    preds = {x: set() for x in C.objects}
    for f in C.non_identities():
        preds[C.target(f)].add(C.source(f))
    degree = {}
    for x in TopologicalSorter(preds).static_order():
        degree[x] = 1 + max((degree[p] for p in preds[x]), default=-1)
    return degree


def d_construction(R: ReedyCategory) -> FinCategory:
    report = check_reedy(R)
    if report:
        raise NotReedy("; ".join(map(str, report[:5])))
    C = R.base
    objs = sorted(R.minus, key=lambda s: (C.degree[C.source(s)], C.degree[C.target(s)], s))
    names = {s: C.label(s) for s in objs}
    rows = []
    marked = []
    for s in objs:
        for t in objs:
            for f in d_hom(R, s, t):
                key = (s, t, f)
                is_id = s == t and C.is_identity(f)
                label = f"id_{names[s]}" if is_id else f"{names[s]}⇒{names[t]}:{C.label(f)}"
                rows.append((key, names[s], names[t], label, is_id))
                if C.is_identity(f):
                    marked.append(key)

    def composer(gk, fk):
        return (fk[0], gk[1], C.compose(gk[2], fk[2]))

    D = FinCategory.from_morphisms(
        [names[s] for s in objs], {names[s]: 0 for s in objs}, rows, composer, marked,
        name=f"D({C.name})",
    )
    report = check_no_infinite_chains(D)
    if report:
        raise NotReedy(f"D(R) has a non-identity cycle: {report[0]}")
    return D.with_degrees(longest_path_degrees(D))


def d_projection(D: FinCategory, R: ReedyCategory):
    """The canonical functor D(R) -> R on objects and morphisms (codomain projection)."""
    C = R.base
    obj = {x: C.target(D.morphisms[D.identity(x)].key[0]) for x in D.objects}
    mor = {i: m.key[2] for i, m in enumerate(D.morphisms)}
    return obj, mor


def check_opfibration(D: FinCategory, R: ReedyCategory) -> list[Violation]:
    """Exhaustive search for cocartesian lifts along D(R) -> R."""
    C = R.base
    P_obj, P_mor = d_projection(D, R)
    report = []
    for s in D.objects:
        y = P_obj[s]
        for g in C.out_of(y):
            candidates = [phi for phi in D.out_of(s) if P_mor[phi] == g]
            if not any(_is_cocartesian(D, C, P_obj, P_mor, phi) for phi in candidates):
                report.append(Violation(
                    "no-cocartesian-lift", f"{s} over {C.label(g)}",
                    f"{len(candidates)} lifts, none cocartesian",
                ))
    return report


def _is_cocartesian(D, C, P_obj, P_mor, phi) -> bool:
    s, t = D.source(phi), D.target(phi)
    g = P_mor[phi]
    for psi in D.out_of(s):
        t2 = D.target(psi)
        for h in C.hom(P_obj[t], P_obj[t2]):
            if C.compose(h, g) != P_mor[psi]:
                continue
            # a factorization chi: t -> t2 over h must exist; it is unique since
            # morphisms of D(R) are determined by their image in R
            chi = [c for c in D.hom(t, t2) if P_mor[c] == h]
            if len(chi) != 1 or D.compose(chi[0], phi) != psi:
                return False
    return True
