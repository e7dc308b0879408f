"""Categories of elements of the (positive) nerve, and DOT export.

A :class:`Seq` is a string of composable arrows ``x0 -f1-> x1 -f2-> ... xn``
stored left to right (``arrows[0]`` is applied first).  Morphisms of the
category of elements go from a sequence to each of its faces: pick vertices
``d(0) < ... < d(k)`` and compose the arrows between consecutive picks.  The
picked vertices form an injective monotone map ``[k] -> [n]``, which is the
image of the morphism under the shape functor.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .fincat import CategoryError, FinCategory, word_key
from .inverse import Violation
from .simplex import SimplexMap, compose_simplex, injective_maps


class NotInverse(CategoryError):
    pass


@dataclass(frozen=True)
class Seq:
    start: str
    arrows: tuple[int, ...] = ()
    allow_identities: bool = False

    def __len__(self):
        return len(self.arrows)


def shape(s: Seq) -> int:
    return len(s.arrows)


def vertices(C: FinCategory, s: Seq) -> tuple[str, ...]:
    return (s.start,) + tuple(C.target(f) for f in s.arrows)


def seq_label(C: FinCategory, s: Seq) -> str:
    if not s.arrows:
        return s.start
    return "".join(f"→{C.label(f)}" for f in s.arrows)


def seq_key(C: FinCategory, s: Seq) -> tuple:
    vs = vertices(C, s)
    return (
        len(s.arrows),
        tuple(C.degree[v] for v in reversed(vs)),
        tuple(word_key(C.morphisms[f].word) for f in s.arrows),
        tuple(C.objects.index(v) for v in vs),
    )


def face(C: FinCategory, s: Seq, d: SimplexMap) -> Seq:
    """The face of ``s`` picked out by the injective map ``d: [k] -> [n]``."""
    if d.codomain != len(s.arrows):
        raise ValueError(f"face map {d} does not land in [{len(s.arrows)}]")
    vs = vertices(C, s)
    arrows = tuple(
        C.compose_many(s.arrows[a:b][::-1]) for a, b in zip(d.values, d.values[1:])
    )
    return Seq(vs[d.values[0]], arrows, s.allow_identities)


@dataclass(frozen=True)
class Witness:
    source: Seq
    target: Seq
    face: SimplexMap

    @property
    def interval(self) -> tuple[int, int]:
        return self.face.values[0], self.face.values[-1]

    @property
    def runs(self) -> tuple[tuple[int, int], ...]:
        v = self.face.values
        return tuple(zip(v, v[1:]))


class ElementsCategory:
    def __init__(self, base: FinCategory, objects: Iterable[Seq],
                 truncation_length: int | None = None, allow_identities: bool = False):
        self.base = base
        self.truncation_length = truncation_length
        self.allow_identities = allow_identities
        self.objects = tuple(sorted(objects, key=lambda s: seq_key(base, s)))
        self._index = {s: i for i, s in enumerate(self.objects)}

    def __len__(self):
        return len(self.objects)

    def __contains__(self, s):
        return s in self._index

    def shape(self, s: Seq) -> int:
        return shape(s)

    @property
    def marked_objects(self) -> tuple[Seq, ...]:
        """Length-one identity sequences (where the Harpaz condition applies)."""
        C = self.base
        return tuple(
            s for s in self.objects if len(s.arrows) == 1 and C.is_identity(s.arrows[0])
        )

    def label(self, s: Seq) -> str:
        return seq_label(self.base, s)

    def faces(self, s: Seq):
        """All (face map, face) pairs out of ``s``, identity included."""
        n = len(s.arrows)
        for k in range(n + 1):
            for d in injective_maps(k, n):
                yield d, face(self.base, s, d)

    def homs(self, s: Seq, t: Seq) -> list[Witness]:
        n, k = len(s.arrows), len(t.arrows)
        if k > n:
            return []
        return [
            Witness(s, t, d) for d in injective_maps(k, n) if face(self.base, s, d) == t
        ]

    def hom(self, s: Seq, t: Seq) -> Witness | None:
        found = self.homs(s, t)
        return found[0] if found else None

    @cached_property
    def category(self) -> FinCategory:
        """The category of elements as an explicit FinCategory (degree = length)."""
        names = self.names
        rows = []
        for s in self.objects:
            for d, t in self.faces(s):
                if t in self._index:
                    label = f"{names[s]}⇒{names[t]}" if not d.is_identity else f"id_{names[s]}"
                    rows.append(((s, d), names[s], names[t], label, d.is_identity))

        def composer(gk, fk):
            s, d_st = fk
            _, d_tu = gk
            return (s, compose_simplex(d_st, d_tu))

        plus = "" if any(s.allow_identities for s in self.objects) else "⁺"
        return FinCategory.from_morphisms(
            [names[s] for s in self.objects],
            {names[s]: len(s.arrows) for s in self.objects},
            rows, composer, name=f"∫N{plus}{self.base.name}",
        )

    @cached_property
    def names(self) -> dict[Seq, str]:
        out = {}
        for s in self.objects:
            lab = self.label(s)
            out[s] = lab if lab not in out.values() else f"{lab}#{len(out)}"
        return out


def seq_morphism(N: ElementsCategory, s: Seq, t: Seq) -> Witness | None:
    return N.hom(s, t)


def _extend(C: FinCategory, layer: list[Seq], allow_identities: bool) -> list[Seq]:
    out = []
    for s in layer:
        last = C.target(s.arrows[-1]) if s.arrows else s.start
        for f in C.out_of(last):
            if allow_identities or not C.is_identity(f):
                out.append(Seq(s.start, s.arrows + (f,), allow_identities))
    return out


def positive_nerve_elements(I: FinCategory) -> ElementsCategory:
    """∫N⁺I: all strings of composable non-identity arrows."""
    layer = [Seq(x) for x in I.objects]
    objects = list(layer)
    for _ in range(len(I.objects)):
        layer = _extend(I, layer, False)
        if not layer:
            break
        objects.extend(layer)
    else:
        if layer:
            raise NotInverse(
                f"composable non-identity cycle through {vertices(I, layer[0])}"
            )
    return ElementsCategory(I, objects)


def nerve_elements_truncated(C: FinCategory, k: int) -> ElementsCategory:
    """∫N C restricted to sequences (identities allowed) of length <= k."""
    if k < 0:
        raise ValueError("truncation length must be >= 0")
    layer = [Seq(x, (), True) for x in C.objects]
    objects = list(layer)
    for _ in range(k):
        layer = _extend(C, layer, True)
        objects.extend(layer)
    return ElementsCategory(C, objects, truncation_length=k, allow_identities=True)


def check_preorder(N: ElementsCategory) -> list[Violation]:
    report = []
    for s in N.objects:
        seen: dict[Seq, int] = {}
        for _, t in N.faces(s):
            if t in N:
                seen[t] = seen.get(t, 0) + 1
        for t, count in seen.items():
            if count > 1:
                report.append(Violation("parallel-morphisms", f"{N.label(s)} ⇒ {N.label(t)}", str(count)))
    return report


def check_shape_opfibration(N: ElementsCategory) -> list[Violation]:
    """Each Δ₊ᵒᵖ map out of shape(s) has exactly one lift starting at s."""
    report = []
    for s in N.objects:
        n = len(s.arrows)
        for k in range(n + 1):
            for d in injective_maps(k, n):
                t = face(N.base, s, d)
                lifts = [w for w in N.homs(s, t) if w.face == d] if t in N else []
                if len(lifts) != 1:
                    report.append(Violation("opfibration-lift", f"{N.label(s)} over {d}", f"{len(lifts)} lifts"))
    return report


# ---------------------------------------------------------------------------
# DOT export


def indecomposables(C: FinCategory) -> list[int]:
    """Non-identity morphisms that are not composites of two non-identities."""
    composite = set()
    for (g, f), h in C.composable_pairs():
        if not C.is_identity(g) and not C.is_identity(f):
            composite.add(h)
    return [f for f in C.non_identities() if f not in composite]


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(C: FinCategory, title: str = "C", dashed_nodes: Iterable[str] = ()) -> str:
    """Render the generating arrows of ``C``; for a preorder this is the Hasse diagram."""
    lines = [f"digraph {_quote(title)} {{", "  rankdir=BT;"]
    dashed_nodes = set(dashed_nodes)
    by_degree: dict[int, list[str]] = {}
    for x in C.objects:
        by_degree.setdefault(C.degree[x], []).append(x)
    for deg in sorted(by_degree):
        lines.append(f"  {{ rank=same; {' '.join(_quote(x) for x in by_degree[deg])} }}")
    for x in C.objects:
        style = ", style=dashed" if x in dashed_nodes else ""
        lines.append(f"  {_quote(x)} [label={_quote(x)}{style}];")
    for f in indecomposables(C):
        m = C.morphisms[f]
        style = " [style=dashed]" if f in C.marked else ""
        lines.append(f"  {_quote(m.source)} -> {_quote(m.target)}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def nerve_to_dot(N: ElementsCategory) -> str:
    C = N.category
    marked = {N.names[s] for s in N.marked_objects}
    return to_dot(C, title=C.name, dashed_nodes=marked)
