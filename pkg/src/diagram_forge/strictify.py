"""ι-extensions of an inverse category and the strictification index plans.

``I + ι`` adds an isolated object ι.  ``I + ι→i`` adds a generator ι -> i
and hence one arrow ι -> j for every morphism i -> j of I.  ``I + ι⇢i``
drops the generator ι -> i but keeps the arrows it generated.

Morphism keys of an extension are shared across variants so sequences in
different extensions can be compared: ``("I", k)`` is I's morphism ``k``,
``("ι", k)`` is the arrow ``k ∘ (ι -> i)`` and ``("ι", "id")`` is id_ι.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .emit.builders import ident, unique_names, weak_diagram_type, weak_names
from .emit.render import type_text
from .emit.schema import (
    Apply,
    Component,
    ContextSchema,
    EqType,
    FunType,
    OpaqueT,
    Ref,
    SigmaTel,
    Universe,
    Var,
    check_telescope,
)
from .fincat import FinCategory, UnknownObject
from .inverse import Violation, coslice
from .nerve import ElementsCategory, Seq, face, positive_nerve_elements
from .simplex import injective_maps

IOTA = "ι"

PLAIN, ARROW, DASHED = "plain", "arrow", "dashed"


@dataclass
class IotaExtension:
    base: FinCategory
    variant: str
    apex: str | None
    category: FinCategory

    @property
    def nerve(self) -> ElementsCategory:
        return positive_nerve_elements(self.category)


def _iota_label(I: FinCategory, k: int, apex: str) -> str:
    if I.is_identity(k):
        return f"ι_{apex}"
    return f"{I.label(k)}∘ι_{apex}"


def extend_with_iota(I: FinCategory, variant: str = PLAIN, i: str | None = None) -> IotaExtension:
    if variant not in (PLAIN, ARROW, DASHED):
        raise ValueError(f"unknown variant {variant!r}")
    if variant != PLAIN:
        if i is None:
            raise UnknownObject("the arrow and dashed variants need an object")
        I.check_object(i)
    if IOTA in I.degree:
        raise ValueError(f"{IOTA} is already an object of the base category")
    objects = list(I.objects) + [IOTA]
    degree = dict(I.degree)
    degree[IOTA] = 1 + max(I.degree.values(), default=-1)
    rows = [(("I", k), m.source, m.target, m.label, m.is_identity) for k, m in enumerate(I.morphisms)]
    rows.append(((IOTA, "id"), IOTA, IOTA, f"id_{IOTA}", True))
    if variant != PLAIN:
        for k in I.out_of(i):
            if variant == DASHED and I.is_identity(k):
                continue
            rows.append(((IOTA, k), IOTA, I.target(k), _iota_label(I, k, i), False))

    def composer(gk, fk):
        if fk == (IOTA, "id"):
            return gk
        if gk[0] == "I" and fk[0] == "I":
            return ("I", I.compose(gk[1], fk[1]))
        # g is an arrow of I after some ι -> j
        return (IOTA, I.compose(gk[1], fk[1]))

    C = FinCategory.from_morphisms(objects, degree, rows, composer, name=f"{I.name}+ι")
    if variant != PLAIN:
        # keep the generator word for ARROW so ι -> j is witnessed as k ∘ ι_i
        C = _rewrite_words(C, I, variant, i)
    return IotaExtension(I, variant, i, C)


def _rewrite_words(C: FinCategory, I: FinCategory, variant: str, apex: str) -> FinCategory:
    from .fincat import Morphism

    mors = []
    gen = f"ι_{apex}"
    for m in C.morphisms:
        if m.key[0] == "I":
            mors.append(Morphism(m.source, m.target, m.label, I.morphisms[m.key[1]].word, m.key))
        elif m.is_identity or variant == DASHED:
            mors.append(m)
        else:
            mors.append(Morphism(m.source, m.target, m.label,
                                 I.morphisms[m.key[1]].word + (gen,), m.key))
    table = {pair: h for pair, h in C.composable_pairs()}
    return FinCategory(C.objects, C.degree, mors, table, C.marked, C.name)


def seq_signature(C: FinCategory, s: Seq) -> tuple:
    """A variant-independent description of a sequence (start, arrow keys)."""
    return (s.start, tuple(C.morphisms[f].key for f in s.arrows))


def nerve_signatures(ext: IotaExtension) -> dict[tuple, Seq]:
    N = ext.nerve
    return {seq_signature(ext.category, s): s for s in N.objects}


@dataclass
class PlanEntry:
    seq: Seq
    level: int
    signature: tuple


@dataclass
class ObjectPlan:
    apex: str
    extension: IotaExtension
    new_components: list[PlanEntry] = field(default_factory=list)
    matching_components: list[PlanEntry] = field(default_factory=list)


@dataclass
class StrictComponentPlan:
    base: FinCategory
    objects: dict[str, ObjectPlan]

    def __getitem__(self, x: str) -> ObjectPlan:
        return self.objects[x]


def _plan_for(I: FinCategory, i: str) -> ObjectPlan:
    arrow = extend_with_iota(I, ARROW, i)
    plain_sigs = set(nerve_signatures(extend_with_iota(I, PLAIN)))
    N = arrow.nerve
    plan = ObjectPlan(i, arrow)
    generator = (IOTA, I.identity(i))
    for s in N.objects:  # already in canonical order: level first
        sig = seq_signature(arrow.category, s)
        if sig in plain_sigs:
            continue
        entry = PlanEntry(s, len(s.arrows), sig)
        if sig[1][0] == generator:
            plan.new_components.append(entry)
        else:
            plan.matching_components.append(entry)
    return plan


def strict_components(I: FinCategory) -> StrictComponentPlan:
    return StrictComponentPlan(I, {x: _plan_for(I, x) for x in I.objects})


def _transport(I: FinCategory, sig: tuple, f: int) -> tuple:
    """Move a sequence of I+ι→x into I+ι→i along f: i -> x (ι_x becomes f ∘ ι_i)."""
    start, keys = sig
    moved = tuple(
        (IOTA, I.compose(k[1], f)) if k[0] == IOTA else k for k in keys
    )
    return (start, moved)


def verify_matching_claim(I: FinCategory) -> list[Violation]:
    """Compare ∫N⁺(I+ι⇢i) minus ∫N⁺(I+ι) with the coslice-indexed union of new parts."""
    report = []
    plan = strict_components(I)
    plain = set(nerve_signatures(extend_with_iota(I, PLAIN)))
    for i in I.objects:
        dashed = set(nerve_signatures(extend_with_iota(I, DASHED, i))) - plain
        union: list[tuple] = []
        for obj in coslice(I, i).objects:
            union.extend(_transport(I, e.signature, obj.mor) for e in plan[obj.target].new_components)
        if len(set(union)) != len(union):
            report.append(Violation("matching-overlap", i, "coslice pieces are not disjoint"))
        union_set = set(union)
        for sig in sorted(dashed - union_set, key=repr):
            report.append(Violation("matching-missing", i, repr(sig)))
        for sig in sorted(union_set - dashed, key=repr):
            report.append(Violation("matching-extra", i, repr(sig)))
        planned = {e.signature for e in plan[i].matching_components}
        if planned != dashed:
            report.append(Violation("plan-mismatch", i,
                                    f"{len(planned)} planned vs {len(dashed)} in the dashed nerve"))
    return report


# -- schemas -------------------------------------------------------------------


def _fiber_names(I: FinCategory, plan: ObjectPlan, taken) -> dict[tuple, str]:
    C = plan.extension.category
    entries = plan.matching_components + plan.new_components
    raw = []
    for e in entries:
        arrows = e.seq.arrows
        if e.level == 1:
            raw.append(C.target(arrows[0]).lower())
        elif e.level == 2:
            raw.append("δ_" + ident(C.label(arrows[1])))
        else:
            raw.append("Θ_" + "__".join(ident(C.label(f)) for f in arrows[1:]))
    return dict(zip((e.signature for e in entries), unique_names(raw, taken)))


def strict_fiber_schema(I: FinCategory, i: str, plan: StrictComponentPlan | None = None) -> ContextSchema:
    """A weak diagram, then the matching context M^A_i, then the fiber A_i.

    Level one entries are points of the weak types, level two entries are
    pointwise equalities and higher levels are opaque T applications on their
    boundary.  Metadata ``weak`` and ``matching`` give the section lengths.
    """
    plan_i = (plan or strict_components(I))[i]
    weak_schema = weak_diagram_type(I)
    weak = weak_names(positive_nerve_elements(I))
    weak_by_sig = {(s.start, tuple(("I", f) for f in s.arrows)): n for s, n in weak.items()}
    names = _fiber_names(I, plan_i, weak.values())
    C = plan_i.extension.category

    def name_of(t: Seq) -> str:
        sig = seq_signature(C, t)
        return names.get(sig) or weak_by_sig[sig]

    comps = list(weak_schema.components)
    for kind, entries in (("matching", plan_i.matching_components), ("new", plan_i.new_components)):
        for e in entries:
            arrows = e.seq.arrows
            if e.level == 1:
                ty = Ref(weak_by_sig[(C.target(arrows[0]), ())])
            elif e.level == 2:
                a, f = arrows
                fn = weak_by_sig[(C.source(f), (C.morphisms[f].key,))]
                point = Seq(IOTA, (a,))
                moved = Seq(IOTA, (C.compose(f, a),))
                ty = EqType(Apply(Var(fn), Var(name_of(point))), Var(name_of(moved)))
            else:
                n = len(arrows)
                faces = [face(C, e.seq, d) for k in range(n) for d in injective_maps(k, n)]
                # ι alone is the unit type's point; it carries no data
                faces = [t for t in faces if t.arrows or t.start != IOTA]
                ty = OpaqueT(e.level, tuple(name_of(t) for t in faces))
            comps.append(Component(names[e.signature], ty, source=f"{kind}:{seq_label_sig(C, e.seq)}"))
    schema = ContextSchema(
        tuple(comps),
        metadata=(
            ("object", i),
            ("weak", str(len(weak_schema))),
            ("matching", str(len(plan_i.matching_components))),
        ),
        title=f"strict fiber at {i} over {I.name or 'I'}",
    )
    check_telescope(schema)
    return schema


def seq_label_sig(C: FinCategory, s: Seq) -> str:
    return "ι" + "".join(f"→{C.label(f)}" for f in s.arrows)


def plan_text(I: FinCategory, plan: StrictComponentPlan | None = None, objects=None) -> str:
    """Per-object matching context and fiber in context notation."""
    plan = plan or strict_components(I)
    lines = []
    wanted = I.objects if objects is None else [I.check_object(x) for x in objects]
    for i in sorted(wanted, key=lambda x: (I.degree[x], I.objects.index(x))):
        schema = strict_fiber_schema(I, i, plan)
        w, k = int(schema.meta("weak")), int(schema.meta("matching"))
        matching, new = schema.components[w:w + k], schema.components[w + k:]
        binders = lambda cs: ", ".join(f"({c.name} : {type_text(c.type)})" for c in cs)
        args = ",".join(c.name for c in matching)
        lines.append(f"M_{i} :≡ {binders(matching) or '1'}")
        lines.append(f"A_{i}({args}) :≡ {binders(new)}" if args else f"A_{i} :≡ {binders(new)}")
    return "".join(line + "\n" for line in lines)


def sp_schema(n: int) -> ContextSchema:
    """Strict diagrams over [0] -> [1] -> ... -> [n]: n+1 types and n functions."""
    if n < 0:
        raise ValueError("n must be >= 0")
    types = [Component(f"A_{k}", Universe(), source=f"[{k}]") for k in range(n + 1)]
    maps = [
        Component(f"f_{k}", FunType(Ref(f"A_{k}"), Ref(f"A_{k + 1}")), source=f"[{k}]→[{k + 1}]")
        for k in range(n)
    ]
    schema = ContextSchema(tuple(types + maps), title=f"Sp_[{n}]")
    check_telescope(schema)
    return schema


def fibrant_replacement_schema(
    F: str,
    matching: ContextSchema,
    eta: tuple[str, ...] | None = None,
    point: str | None = None,
    eq_names: tuple[str, ...] | None = None,
) -> ContextSchema:
    """G = Σ (a : F). (η̃(a) = m) over the matching context ``matching``.

    ``eta`` names one map per matching entry (default ``η_<entry>``); the
    equality with the empty tuple is dropped, so an empty matching context
    gives G = F.  The unit ``a ↦ (η̃(a), a, refl)`` is recorded in metadata.
    """
    ms = [c.name for c in matching.components]
    eta = tuple(eta) if eta is not None else tuple(f"η_{m}" for m in ms)
    if len(eta) != len(ms):
        raise ValueError(f"{len(eta)} maps for {len(ms)} matching entries")
    point = point or (F[:1].lower() + F[1:] if F[:1].isupper() else f"{F}_pt")
    eq_names = tuple(eq_names) if eq_names is not None else tuple(
        unique_names([f"δ_{ident(e)}" for e in eta])
    )
    if ms:
        entries = [(point, Ref(F))] + [
            (d, EqType(Apply(Var(e), Var(point)), Var(m))) for d, e, m in zip(eq_names, eta, ms)
        ]
        g = SigmaTel(tuple(entries))
    else:
        g = Ref(F)
    params = tuple(dict.fromkeys(matching.params + (F,) + eta))
    unit = f"{point} ↦ (({', '.join(f'{e}({point})' for e in eta)}), {point}, refl)" if ms else f"{point} ↦ {point}"
    schema = ContextSchema(
        matching.components + (Component(f"G_{F}", g, source=F),),
        params=params,
        metadata=matching.metadata + (("unit", unit),),
        title=f"fibrant replacement of {F}",
    )
    check_telescope(schema)
    return schema
