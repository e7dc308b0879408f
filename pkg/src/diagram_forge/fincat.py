"""Explicit finite categories and their construction from presentations.

A :class:`FinCategory` stores every morphism explicitly together with a total
composition table on composable pairs.  Categories arrive either from a
finite presentation (generators and relations, see :func:`build_category`)
or from an explicit enumeration of morphisms plus a composition rule
(:meth:`FinCategory.from_morphisms`), which is how the simplex category and
its relatives are built.

Words are written outermost-first: ``("u", "w")`` is ``u ∘ w``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence


class CategoryError(Exception):
    pass


class IllFormedSpec(CategoryError):
    pass


class IllFormedRelation(CategoryError):
    pass


class SaturationBound(CategoryError):
    pass


class NotComposable(CategoryError):
    pass


class UnknownObject(CategoryError, KeyError):
    pass


Word = tuple[str, ...]


@dataclass(frozen=True)
class CategorySpec:
    objects: tuple[tuple[str, int | None], ...]
    generators: tuple[tuple[str, str, str], ...]
    relations: tuple[tuple[Word, Word], ...] = ()

    @classmethod
    def from_dict(cls, doc: Mapping) -> "CategorySpec":
        if not isinstance(doc, Mapping):
            raise IllFormedSpec("category document must be a JSON object")
        try:
            objects = tuple((o["name"], o.get("degree")) for o in doc.get("objects", []))
            generators = tuple(
                (g["name"], g["src"], g["dst"]) for g in doc.get("generators", [])
            )
            relations = tuple(
                (tuple(lhs), tuple(rhs)) for lhs, rhs in doc.get("relations", [])
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise IllFormedSpec(f"malformed category document: {exc!r}") from exc
        return cls(objects, generators, relations)

    @classmethod
    def from_json(cls, text: str) -> "CategorySpec":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise IllFormedSpec(f"invalid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise IllFormedSpec("category document must be a JSON object")
        return cls.from_dict(doc)

    def to_dict(self) -> dict:
        objects = []
        for name, deg in self.objects:
            entry = {"name": name}
            if deg is not None:
                entry["degree"] = deg
            objects.append(entry)
        return {
            "objects": objects,
            "generators": [{"name": n, "src": s, "dst": t} for n, s, t in self.generators],
            "relations": [[list(lhs), list(rhs)] for lhs, rhs in self.relations],
        }

    def validate(self) -> None:
        names = [name for name, _ in self.objects]
        if len(set(names)) != len(names):
            raise IllFormedSpec("duplicate object names")
        for _, deg in self.objects:
            if deg is not None and (not isinstance(deg, int) or deg < 0):
                raise IllFormedSpec(f"degree must be a natural number, got {deg!r}")
        gens = [g[0] for g in self.generators]
        if len(set(gens)) != len(gens):
            raise IllFormedSpec("duplicate generator names")
        for g, src, dst in self.generators:
            if src not in names or dst not in names:
                raise IllFormedSpec(f"generator {g} has an unknown endpoint")
        ends = {g: (src, dst) for g, src, dst in self.generators}
        for lhs, rhs in self.relations:
            if not lhs or not rhs:
                raise IllFormedRelation("relation words must be nonempty")
            a = _word_endpoints(lhs, ends)
            b = _word_endpoints(rhs, ends)
            if a is None or b is None:
                raise IllFormedRelation(f"relation {lhs} = {rhs} is not composable")
            if a != b:
                raise IllFormedRelation(f"relation {lhs} = {rhs} is not parallel")


def _word_endpoints(word: Sequence[str], ends: Mapping[str, tuple[str, str]]):
    """(source, target) of a composable word, or None."""
    try:
        spans = [ends[g] for g in word]
    except KeyError:
        return None
    # outermost-first: word[k] is applied after word[k+1]
    for outer, inner in zip(spans, spans[1:]):
        if inner[1] != outer[0]:
            return None
    return spans[-1][0], spans[0][1]


def word_key(word: Sequence[str]) -> tuple:
    """Length-then-lexicographic sort key."""
    return (len(word), tuple(word))


@dataclass(frozen=True)
class Morphism:
    source: str
    target: str
    label: str
    word: Word = ()
    key: Hashable = None

    @property
    def is_identity(self) -> bool:
        return not self.word


class FinCategory:
    """An explicit finite category.

    Morphism ids are indices into :attr:`morphisms`.  Identities come first,
    in object order; non-identities follow in canonical order.  Instances are
    treated as immutable once built.
    """

    def __init__(
        self,
        objects: Sequence[str],
        degree: Mapping[str, int],
        morphisms: Sequence[Morphism],
        table: Mapping[tuple[int, int], int],
        marked: Iterable[int] = (),
        name: str = "",
    ):
        self.objects = tuple(objects)
        self.degree = dict(degree)
        self.morphisms = tuple(morphisms)
        self._table = dict(table)
        self.marked = frozenset(marked)
        self.name = name
        self._identity = {}
        self._hom: dict[tuple[str, str], list[int]] = {}
        self._by_key = {}
        self._by_label = {}
        for mid, m in enumerate(self.morphisms):
            if m.is_identity:
                self._identity[m.source] = mid
            self._hom.setdefault((m.source, m.target), []).append(mid)
            if m.key is not None:
                self._by_key[m.key] = mid
            self._by_label.setdefault(m.label, mid)
        self._hom = {k: tuple(v) for k, v in self._hom.items()}
        self._word_class: dict[Word, int] = {}
        for mid, m in enumerate(self.morphisms):
            if not m.is_identity:
                self._word_class.setdefault(m.word, mid)

    # construction -------------------------------------------------------

    @classmethod
    def from_morphisms(
        cls,
        objects: Sequence[str],
        degree: Mapping[str, int],
        morphisms: Sequence[tuple[Hashable, str, str, str, bool]],
        composer: Callable[[Hashable, Hashable], Hashable],
        marked: Iterable[Hashable] = (),
        name: str = "",
    ) -> "FinCategory":
        """Build from explicit ``(key, source, target, label, is_identity)`` rows.

        ``composer(g_key, f_key)`` returns the key of ``g ∘ f``; it is called
        once per composable pair to fill the table.
        """
        rows = sorted(
            morphisms,
            key=lambda r: (not r[4], objects.index(r[1]) if r[4] else 0),
        )
        mors = []
        for key, src, dst, label, is_id in rows:
            word = () if is_id else (label,)
            mors.append(Morphism(src, dst, label, word, key))
        index = {m.key: i for i, m in enumerate(mors)}
        if len(index) != len(mors):
            raise CategoryError("duplicate morphism keys")
        by_source: dict[str, list[int]] = {}
        for i, m in enumerate(mors):
            by_source.setdefault(m.source, []).append(i)
        table = {}
        for f, fm in enumerate(mors):
            for g in by_source.get(fm.target, ()):
                table[g, f] = index[composer(mors[g].key, fm.key)]
        marked_keys = set(marked)
        marked_ids = [i for i, m in enumerate(mors) if m.key in marked_keys]
        return cls(objects, degree, mors, table, marked_ids, name)

    # queries ------------------------------------------------------------

    def __repr__(self):
        n_id = len(self.objects)
        return (
            f"FinCategory({self.name or '?'}: {n_id} objects, "
            f"{len(self.morphisms) - n_id} non-identity morphisms)"
        )

    def __len__(self):
        return len(self.morphisms)

    def check_object(self, x: str) -> str:
        if x not in self.degree:
            raise UnknownObject(x)
        return x

    def identity(self, x: str) -> int:
        self.check_object(x)
        return self._identity[x]

    def source(self, f: int) -> str:
        return self.morphisms[f].source

    def target(self, f: int) -> str:
        return self.morphisms[f].target

    def is_identity(self, f: int) -> bool:
        return self.morphisms[f].is_identity

    def label(self, f: int) -> str:
        return self.morphisms[f].label

    def hom(self, x: str, y: str) -> tuple[int, ...]:
        self.check_object(x)
        self.check_object(y)
        return self._hom.get((x, y), ())

    def out_of(self, x: str) -> list[int]:
        """All morphisms with source ``x``."""
        return [f for y in self.objects for f in self._hom.get((x, y), ())]

    def into(self, y: str) -> list[int]:
        return [f for x in self.objects for f in self._hom.get((x, y), ())]

    def compose(self, g: int, f: int) -> int:
        try:
            return self._table[g, f]
        except KeyError:
            raise NotComposable(
                f"{self.label(g)} ∘ {self.label(f)}: "
                f"target {self.target(f)} != source {self.source(g)}"
            ) from None

    def compose_many(self, mors: Sequence[int]) -> int:
        """Compose a chain given outermost-first."""
        if not mors:
            raise ValueError("empty chain has no composite")
        acc = mors[-1]
        for g in reversed(mors[:-1]):
            acc = self.compose(g, acc)
        return acc

    def non_identities(self) -> list[int]:
        return [f for f, m in enumerate(self.morphisms) if not m.is_identity]

    def by_key(self, key: Hashable) -> int:
        return self._by_key[key]

    def has_key(self, key: Hashable) -> bool:
        return key in self._by_key

    def mor(self, ref: str | Sequence[str]) -> int:
        """Look a morphism up by label (``"u∘w"``, ``"id_x"``) or by a word."""
        if isinstance(ref, str):
            if ref in self._by_label:
                return self._by_label[ref]
            ref = ref.split("∘")
        word = tuple(ref)
        if word in self._word_class:
            return self._word_class[word]
        if len(word) > 1:
            return self.compose_many([self.mor(g) for g in word])
        raise KeyError(f"no morphism for {word!r}")

    def composable_pairs(self):
        return self._table.items()

    # derived categories -------------------------------------------------

    def with_degrees(self, degree: Mapping[str, int]) -> "FinCategory":
        return FinCategory(self.objects, degree, self.morphisms, self._table, self.marked, self.name)

    def opposite(self) -> "FinCategory":
        mors = [
            Morphism(m.target, m.source, m.label, m.word[::-1], m.key) for m in self.morphisms
        ]
        table = {(f, g): h for (g, f), h in self._table.items()}
        name = f"{self.name}ᵒᵖ" if self.name else ""
        return FinCategory(self.objects, self.degree, mors, table, self.marked, name)

    def full_subcategory(self, objs: Iterable[str]) -> tuple["FinCategory", dict[int, int]]:
        """Full subcategory on ``objs`` and the inclusion (new id -> old id)."""
        keep = set(objs)
        objects = [x for x in self.objects if x in keep]
        old_ids = [
            f for f, m in enumerate(self.morphisms) if m.source in keep and m.target in keep
        ]
        new_of = {old: new for new, old in enumerate(old_ids)}
        table = {}
        for (g, f), h in self._table.items():
            if g in new_of and f in new_of:
                table[new_of[g], new_of[f]] = new_of[h]
        sub = FinCategory(
            objects,
            {x: self.degree[x] for x in objects},
            [self.morphisms[f] for f in old_ids],
            table,
            [new_of[f] for f in self.marked if f in new_of],
            self.name,
        )
        return sub, {new: old for old, new in new_of.items()}


def compose(C: FinCategory, g: int, f: int) -> int:
    return C.compose(g, f)


def hom(C: FinCategory, x: str, y: str) -> set[int]:
    return set(C.hom(x, y))


# ---------------------------------------------------------------------------
# saturation of presentations


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        # keep the smaller index as root: words are enumerated in canonical order
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra


def composable_words(spec: CategorySpec, max_len: int) -> list[Word]:
    """All composable generator words of length 1..max_len, length-lex sorted."""
    ends = {g: (s, t) for g, s, t in spec.generators}
    into: dict[str, list[str]] = {}
    for g, (s, t) in ends.items():
        into.setdefault(s, []).append(g)
    layer = sorted((g,) for g in ends)
    words = list(layer)
    for _ in range(max_len - 1):
        nxt = []
        for w in layer:
            # prepend an outer generator whose source is w's target
            tgt = ends[w[0]][1]
            for g in into.get(tgt, ()):
                nxt.append((g,) + w)
        layer = sorted(nxt)
        words.extend(layer)
    return words


def build_category(spec: CategorySpec, max_word_length: int = 8, name: str = "") -> FinCategory:
    """Saturate a finite presentation into an explicit category.

    Morphisms are congruence classes of composable words.  Every composable
    word up to ``max_word_length`` is enumerated and merged along the
    relations; the classes are then closed under pre- and postcomposition
    with generators.  A class whose words all have the maximal length but
    which still composes with some generator would need longer words, so the
    presentation is rejected with :class:`SaturationBound`.
    """
    spec.validate()
    L = max_word_length
    longest_rel = max((max(len(a), len(b)) for a, b in spec.relations), default=0)
    if L < longest_rel:
        raise SaturationBound(
            f"max_word_length {L} is shorter than a relation word ({longest_rel})"
        )
    ends = {g: (s, t) for g, s, t in spec.generators}
    if L < 1:
        if ends:
            raise SaturationBound(f"generator {min(ends)} exceeds bound {L}")
        words: list[Word] = []
    else:
        words = composable_words(spec, L)
    index = {w: i for i, w in enumerate(words)}
    uf = _UnionFind(len(words))
    for w in words:
        for lhs, rhs in spec.relations:
            for side, other in ((lhs, rhs), (rhs, lhs)):
                k = len(side)
                for pos in range(len(w) - k + 1):
                    if w[pos:pos + k] == side:
                        rewritten = w[:pos] + other + w[pos + k:]
                        if len(rewritten) <= L:
                            uf.union(index[w], index[rewritten])

    outer: dict[str, list[str]] = {}  # generators that can be composed after a word ending at x
    inner: dict[str, list[str]] = {}  # generators that can be composed before a word starting at x
    for g, (s, t) in sorted(ends.items()):
        outer.setdefault(s, []).append(g)
        inner.setdefault(t, []).append(g)

    def rep(i: int) -> Word:
        return words[uf.find(i)]  # the root is the least word of its class

    # close the congruence under the generator actions on both sides
    changed = True
    while changed:
        changed = False
        members: dict[int, list[Word]] = {}
        for i, w in enumerate(words):
            members.setdefault(uf.find(i), []).append(w)
        for root, ws in members.items():
            r = words[root]
            if len(r) == L:
                continue
            for x in outer.get(ends[r[0]][1], ()):
                for w in ws:
                    j = index[(x,) + (w if len(w) < L else r)]
                    if uf.find(j) != uf.find(index[(x,) + r]):
                        uf.union(j, index[(x,) + r])
                        changed = True
            for x in inner.get(ends[r[-1]][0], ()):
                for w in ws:
                    j = index[(w if len(w) < L else r) + (x,)]
                    if uf.find(j) != uf.find(index[r + (x,)]):
                        uf.union(j, index[r + (x,)])
                        changed = True

    roots = sorted({uf.find(i) for i in range(len(words))})
    for root in roots:
        r = words[root]
        if len(r) < L:
            continue
        ext = outer.get(ends[r[0]][1]) or inner.get(ends[r[-1]][0])
        if ext:
            longer = (ext[0],) + r if outer.get(ends[r[0]][1]) else r + (ext[0],)
            raise SaturationBound(f"composable word {'∘'.join(longer)} exceeds bound {L}")
    reps = sorted((words[r] for r in roots), key=word_key)

    obj_names = [name for name, _ in spec.objects]
    mors = [Morphism(x, x, f"id_{x}", (), ("id", x)) for x in obj_names]
    mors += [
        Morphism(ends[w[-1]][0], ends[w[0]][1], "∘".join(w), w, w) for w in reps
    ]
    mid = {m.key: i for i, m in enumerate(mors)}

    def after(x: str, f: int) -> int:
        return mid[rep(index[(x,) + mors[f].word])]

    table = {}
    for f, fm in enumerate(mors):
        for g, gm in enumerate(mors):
            if gm.source != fm.target:
                continue
            if fm.is_identity:
                table[g, f] = g
            elif gm.is_identity:
                table[g, f] = f
            else:
                h = f
                for x in reversed(gm.word):
                    h = after(x, h)
                table[g, f] = h

    given = {name: deg for name, deg in spec.objects}
    C = FinCategory(obj_names, {x: d or 0 for x, d in given.items()}, mors, table, name=name)
    if any(d is None for d in given.values()):
        from graphlib import CycleError

        from .inverse import synthesize_degrees

        try:
            synth = synthesize_degrees(C)
        except CycleError:
            # not inverse; leave the missing degrees at 0 for check_inverse to report
            synth = {x: 0 for x in obj_names}
        C = C.with_degrees({x: given[x] if given[x] is not None else synth[x] for x in obj_names})
    return C


def terminal_category() -> FinCategory:
    return build_category(CategorySpec((("pt", 0),), ()), 1, name="1")


def spec_from_json_file(path) -> CategorySpec:
    with open(path, encoding="utf-8") as fh:
        return CategorySpec.from_json(fh.read())
