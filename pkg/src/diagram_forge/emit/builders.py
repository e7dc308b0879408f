"""Context schemas for the diagram notions over finite index categories."""
from __future__ import annotations

import re
from typing import Callable

from ..fincat import FinCategory
from ..inverse import CosliceObject, matching_index
from ..nerve import ElementsCategory, Seq, face, nerve_elements_truncated, positive_nerve_elements
from ..reedy import frak_d, marked_generators
from ..simplex import delta_plus_op, injective_maps
from .schema import (
    Component,
    Compose,
    ContextSchema,
    EqType,
    FamilyApp,
    FunType,
    IsEquiv,
    OpaqueT,
    Projection,
    Ref,
    SigmaTel,
    Universe,
    Var,
    check_telescope,
)


def ident(label: str) -> str:
    """A readable identifier for an arrow label: ``u∘w`` -> ``u_w``."""
    out = re.sub(r"[^\w']+", "_", label).strip("_")
    return out or "c"


def unique_names(names: list[str], taken=()) -> list[str]:
    """Deterministic disambiguation: repeated names get ``_1``, ``_2``, ... suffixes.

    Names clashing with ``taken`` are suffixed as well.
    """
    reserved = set(taken)
    counts: dict[str, int] = {}
    for n in names:
        counts[n] = counts.get(n, 0) + (2 if n in reserved and n not in counts else 1)
    seen: dict[str, int] = {}
    taken = set(names) | reserved
    out = []
    for n in names:
        if counts[n] == 1:
            out.append(n)
            continue
        k = seen.get(n, 0)
        while True:
            k += 1
            cand = f"{n}_{k}"
            if cand not in taken:
                break
        seen[n] = k
        taken.add(cand)
        out.append(cand)
    return out


def ordered_objects(I: FinCategory) -> list[str]:
    return sorted(I.objects, key=lambda x: (I.degree[x], I.objects.index(x)))


# -- Reedy fibrant diagrams ---------------------------------------------------


def reedy_diagram_type(
    I: FinCategory,
    family_name: Callable[[str], str] | None = None,
    binder_name: Callable[[CosliceObject], str] | None = None,
    title: str = "",
) -> ContextSchema:
    """One family per object, over the Σ-telescope of its matching object."""
    family_name = family_name or (lambda x: f"R_{x}")
    binder_name = binder_name or (lambda e: ident(I.label(e.mor)))
    components = []
    for x in ordered_objects(I):
        entries = matching_index(I, x).entries
        binders = dict(zip(entries, unique_names([binder_name(e) for e in entries])))
        by_mor = {e.mor: binders[e] for e in entries}
        tel = []
        for e in entries:
            sub = matching_index(I, e.target).entries
            if sub:
                args = tuple(by_mor[I.compose(g.mor, e.mor)] for g in sub)
                tel.append((binders[e], FamilyApp(family_name(e.target), args)))
            else:
                tel.append((binders[e], Ref(family_name(e.target))))
        ty = FunType(SigmaTel(tuple(tel)), Universe()) if tel else Universe()
        components.append(Component(family_name(x), ty, source=x))
    schema = ContextSchema(tuple(components), title=title or f"Reedy fibrant diagrams over {I.name or 'I'}")
    check_telescope(schema)
    return schema


def _subset_binder(d) -> str:
    vs = d.values
    prefix = {1: "p", 2: "l", 3: "t"}.get(len(vs), "c")
    sep = "" if max(vs) < 10 else "-"
    return f"{prefix}_{sep.join(map(str, vs))}"


def semisimplicial_type(n: int) -> ContextSchema:
    """Semisimplicial types up to level n: families A_[k] over their boundaries."""
    I = delta_plus_op(n)
    return reedy_diagram_type(
        I,
        family_name=lambda x: f"A_{x}",
        binder_name=lambda e: _subset_binder(I.morphisms[e.mor].key),
        title=f"semisimplicial types up to level {n}",
    )


# -- homotopy coherent (weak) diagrams ----------------------------------------


def weak_names(N: ElementsCategory) -> dict[Seq, str]:
    C = N.base
    raw = []
    for s in N.objects:
        k = len(s.arrows)
        if k == 0:
            raw.append(s.start[:1].upper() + s.start[1:])
        elif k == 1:
            raw.append(ident(C.label(s.arrows[0])))
        else:
            body = "__".join(ident(C.label(f)) for f in s.arrows)
            raw.append(f"eq_{body}" if k == 2 else f"coh{k}_{body}")
    return dict(zip(N.objects, unique_names(raw)))


def _proper_faces(N: ElementsCategory, s: Seq) -> list[Seq]:
    n = len(s.arrows)
    return [face(N.base, s, d) for k in range(n) for d in injective_maps(k, n)]


def _nerve_components(N: ElementsCategory, names: dict[Seq, str]) -> list[Component]:
    C = N.base
    comps = []
    for s in N.objects:
        k = len(s.arrows)
        if k == 0:
            ty = Universe()
        elif k == 1:
            ty = FunType(Ref(names[Seq(s.start, (), s.allow_identities)]),
                         Ref(names[Seq(C.target(s.arrows[0]), (), s.allow_identities)]))
        elif k == 2:
            f, g = s.arrows
            long_edge = Seq(s.start, (C.compose(g, f),), s.allow_identities)
            first = Seq(s.start, (f,), s.allow_identities)
            second = Seq(C.target(f), (g,), s.allow_identities)
            ty = EqType(Var(names[long_edge]), Compose(Var(names[second]), Var(names[first])))
        else:
            ty = OpaqueT(k, tuple(names[t] for t in _proper_faces(N, s)))
        comps.append(Component(names[s], ty, source=N.label(s)))
    return comps


def weak_diagram_type(I: FinCategory) -> ContextSchema:
    """One component per object of ∫N⁺I, typed by T at the sequence's shape."""
    N = positive_nerve_elements(I)
    schema = ContextSchema(
        tuple(_nerve_components(N, weak_names(N))),
        title=f"homotopy coherent diagrams over {I.name or 'I'}",
    )
    check_telescope(schema)
    return schema


def general_hc_type(C: FinCategory, k: int) -> ContextSchema:
    """Truncation of the general homotopy coherent diagram type at length k.

    The full notion is an infinite tuple; only sequences of length <= k are
    emitted, plus one equivalence condition per identity arrow.
    """
    N = nerve_elements_truncated(C, k)
    names = weak_names(N)
    lengths = [len(s.arrows) for s in N.objects]
    if len(set(lengths)) == len(lengths):
        # a single tower (C has one object and no other arrows): h_0, h_1, ...
        names = {s: f"h_{len(s.arrows)}" for s in N.objects}
    comps = _nerve_components(N, names)
    taken = set(names.values())
    for s in N.marked_objects:
        name = f"isEquiv_{names[s]}"
        while name in taken:
            name += "'"
        taken.add(name)
        comps.append(Component(name, IsEquiv(names[s]), source=N.label(s)))
    schema = ContextSchema(
        tuple(comps),
        metadata=(("truncated", "true"), ("truncation_length", str(k))),
        title=f"TRUNCATED general homotopy coherent diagrams over {C.name or 'C'} (length <= {k})",
    )
    check_telescope(schema)
    return schema


# -- simplicial types ---------------------------------------------------------


def _frak_family(x: str) -> str:
    return "A_" + "_".join(x.strip("()").split(","))


def simplicial_type(n: int) -> ContextSchema:
    """Reedy fibrant diagrams over 𝔇ᵒᵖ (sum <= n+1) with marked maps sent to equivalences.

    Marked morphisms are closed under composition, so one equivalence
    condition per generating marked morphism suffices.
    """
    D = frak_d(n)
    Dop = D.opposite()

    def binder(e: CosliceObject) -> str:
        a, b, f = Dop.morphisms[e.mor].key
        return "x" + "_".join(map(str, a)) + "_" + "".join(map(str, f.values))

    base = reedy_diagram_type(Dop, family_name=_frak_family, binder_name=binder)
    comps = list(base.components)
    for f in marked_generators(D):
        small, big = D.source(f), D.target(f)  # f: small -> big in 𝔇, big -> small in 𝔇ᵒᵖ
        big_entries = list(matching_index(Dop, big).entries)
        position = {e.mor: k for k, e in enumerate(big_entries)}
        picks = tuple(
            position[Dop.compose(e.mor, f)] for e in matching_index(Dop, small).entries
        ) + (position[f],)
        name = f"isEquiv_{_frak_family(big)[2:]}_to_{_frak_family(small)[2:]}"
        proj = Projection(_frak_family(big), _frak_family(small), picks)
        comps.append(Component(name, IsEquiv(_frak_family(big), proj), source=D.label(f)))
    schema = ContextSchema(
        tuple(comps),
        metadata=(("marked_generators", str(len(marked_generators(D)))),),
        title=f"simplicial types up to level {n}",
    )
    check_telescope(schema)
    return schema
