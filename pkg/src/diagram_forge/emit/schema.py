"""Type expressions and context schemas (telescopes of named components)."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union


class SchemaError(Exception):
    pass


class IllFormedTelescope(SchemaError):
    pass


# -- path expressions --------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Compose:
    """Function composite ``outer ∘ inner``."""
    outer: "Path"
    inner: "Path"


@dataclass(frozen=True)
class Apply:
    """``fn(arg)``; also used for pointwise equalities ``p(z)``."""
    fn: "Path"
    arg: "Path"


@dataclass(frozen=True)
class Ap:
    """``ap_fn(path)``."""
    fn: "Path"
    path: "Path"


@dataclass(frozen=True)
class Concat:
    left: "Path"
    right: "Path"


Path = Union[Var, Compose, Apply, Ap, Concat]


# -- type expressions --------------------------------------------------------


@dataclass(frozen=True)
class Universe:
    pass


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class FamilyApp:
    name: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class FunType:
    dom: "TypeExpr"
    cod: "TypeExpr"


@dataclass(frozen=True)
class SigmaTel:
    entries: tuple[tuple[str, "TypeExpr"], ...]


@dataclass(frozen=True)
class EqType:
    lhs: Path
    rhs: Path


@dataclass(frozen=True)
class Projection:
    """A context projection from the total space of ``source`` to that of ``target``.

    The total space of a family component ``F : (Σ Γ) -> U`` is the telescope
    ``Γ`` followed by one fibre entry.  ``picks`` lists, for each entry of
    the target's total space, the index of the source entry it is sent to.
    """
    source: str
    target: str
    picks: tuple[int, ...]


@dataclass(frozen=True)
class IsEquiv:
    subject: str
    projection: Projection | None = None


@dataclass(frozen=True)
class OpaqueT:
    level: int
    boundary: tuple[str, ...]


TypeExpr = Union[Universe, Ref, FamilyApp, FunType, SigmaTel, EqType, IsEquiv, OpaqueT]


@dataclass(frozen=True)
class Component:
    name: str
    type: TypeExpr
    source: str = ""


@dataclass(frozen=True)
class ContextSchema:
    components: tuple[Component, ...] = ()
    params: tuple[str, ...] = ()
    metadata: tuple[tuple[str, str], ...] = ()
    title: str = ""

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.components]

    def __getitem__(self, name: str) -> Component:
        for c in self.components:
            if c.name == name:
                return c
        raise KeyError(name)

    def meta(self, key: str, default: str | None = None) -> str | None:
        return dict(self.metadata).get(key, default)


def family_domain(t: TypeExpr) -> tuple[tuple[str, TypeExpr], ...] | None:
    """The Σ-telescope of a family ``(Σ Γ) -> U``, or None for other types."""
    if isinstance(t, FunType) and isinstance(t.cod, Universe):
        if isinstance(t.dom, SigmaTel):
            return t.dom.entries
        return (("_", t.dom),)
    if isinstance(t, Universe):
        return ()
    return None


# -- well-formedness ---------------------------------------------------------


def path_names(p: Path) -> list[str]:
    if isinstance(p, Var):
        return [p.name]
    if isinstance(p, Compose):
        return path_names(p.outer) + path_names(p.inner)
    if isinstance(p, Apply):
        return path_names(p.fn) + path_names(p.arg)
    if isinstance(p, Ap):
        return path_names(p.fn) + path_names(p.path)
    if isinstance(p, Concat):
        return path_names(p.left) + path_names(p.right)
    raise TypeError(f"not a path: {p!r}")


def _check_type(t: TypeExpr, globals_: dict[str, TypeExpr], local: set[str], where: str) -> list[str]:
    errs = []

    def need(name, scope):
        if name not in scope:
            errs.append(f"{where}: {name!r} is not bound earlier")

    if isinstance(t, Universe):
        pass
    elif isinstance(t, Ref):
        need(t.name, globals_.keys() | local)
    elif isinstance(t, FamilyApp):
        need(t.name, globals_.keys())
        for a in t.args:
            need(a, local | globals_.keys())
        fam = globals_.get(t.name)
        dom = family_domain(fam) if fam is not None else None
        if dom is not None and len(dom) != len(t.args):
            errs.append(f"{where}: {t.name} takes {len(dom)} arguments, got {len(t.args)}")
    elif isinstance(t, FunType):
        errs += _check_type(t.dom, globals_, local, where)
        errs += _check_type(t.cod, globals_, local, where)
    elif isinstance(t, SigmaTel):
        inner = set(local)
        seen = set()
        for name, ty in t.entries:
            errs += _check_type(ty, globals_, inner, f"{where}.{name}")
            if name in seen:
                errs.append(f"{where}: binder {name!r} repeated")
            seen.add(name)
            inner.add(name)
    elif isinstance(t, EqType):
        for n in path_names(t.lhs) + path_names(t.rhs):
            need(n, globals_.keys() | local)
    elif isinstance(t, IsEquiv):
        need(t.subject, globals_.keys())
        if t.projection is not None:
            pr = t.projection
            need(pr.source, globals_.keys())
            need(pr.target, globals_.keys())
            src = family_domain(globals_.get(pr.source)) if pr.source in globals_ else None
            tgt = family_domain(globals_.get(pr.target)) if pr.target in globals_ else None
            if src is None or tgt is None:
                errs.append(f"{where}: projection endpoints must be families")
            else:
                if len(pr.picks) != len(tgt) + 1:
                    errs.append(f"{where}: projection has {len(pr.picks)} picks for {len(tgt) + 1} entries")
                if any(not 0 <= k <= len(src) for k in pr.picks):
                    errs.append(f"{where}: projection pick out of range")
    elif isinstance(t, OpaqueT):
        for n in t.boundary:
            need(n, globals_.keys() | local)
        if t.level < 0:
            errs.append(f"{where}: negative level")
    else:
        errs.append(f"{where}: unknown type expression {t!r}")
    return errs


def telescope_errors(schema: ContextSchema) -> list[str]:
    """Every reference must point strictly earlier; names must be unique."""
    errs = []
    globals_: dict[str, TypeExpr] = {p: Universe() for p in schema.params}
    for c in schema.components:
        if not c.name or any(ch.isspace() for ch in c.name):
            errs.append(f"bad component name {c.name!r}")
        errs += _check_type(c.type, globals_, set(), c.name)
        if c.name in globals_:
            errs.append(f"duplicate component {c.name!r}")
        globals_[c.name] = c.type
    return errs


def check_telescope(schema: ContextSchema) -> None:
    errs = telescope_errors(schema)
    if errs:
        raise IllFormedTelescope("; ".join(errs))


def is_subcontext(small: ContextSchema, big: ContextSchema) -> bool:
    """Order-preserving sublist test on (name, type) pairs."""
    it = iter((c.name, c.type) for c in big.components)
    return all(any(pair == other for other in it) for pair in ((c.name, c.type) for c in small.components))


# -- JSON --------------------------------------------------------------------

SCHEMA_FORMAT = "diagram-forge/context-schema"
SCHEMA_VERSION = 1


def path_to_json(p: Path) -> dict:
    if isinstance(p, Var):
        return {"var": p.name}
    if isinstance(p, Compose):
        return {"compose": [path_to_json(p.outer), path_to_json(p.inner)]}
    if isinstance(p, Apply):
        return {"apply": [path_to_json(p.fn), path_to_json(p.arg)]}
    if isinstance(p, Ap):
        return {"ap": [path_to_json(p.fn), path_to_json(p.path)]}
    if isinstance(p, Concat):
        return {"concat": [path_to_json(p.left), path_to_json(p.right)]}
    raise TypeError(p)


def path_from_json(d: dict) -> Path:
    (tag, val), = d.items()
    if tag == "var":
        return Var(val)
    a, b = (path_from_json(x) for x in val)
    return {"compose": Compose, "apply": Apply, "ap": Ap, "concat": Concat}[tag](a, b)


def type_to_json(t: TypeExpr) -> dict:
    if isinstance(t, Universe):
        return {"kind": "universe"}
    if isinstance(t, Ref):
        return {"kind": "ref", "name": t.name}
    if isinstance(t, FamilyApp):
        return {"kind": "app", "name": t.name, "args": list(t.args)}
    if isinstance(t, FunType):
        return {"kind": "fun", "dom": type_to_json(t.dom), "cod": type_to_json(t.cod)}
    if isinstance(t, SigmaTel):
        return {"kind": "sigma", "entries": [[n, type_to_json(ty)] for n, ty in t.entries]}
    if isinstance(t, EqType):
        return {"kind": "eq", "lhs": path_to_json(t.lhs), "rhs": path_to_json(t.rhs)}
    if isinstance(t, IsEquiv):
        out = {"kind": "isequiv", "subject": t.subject}
        if t.projection is not None:
            pr = t.projection
            out["projection"] = {"source": pr.source, "target": pr.target, "picks": list(pr.picks)}
        return out
    if isinstance(t, OpaqueT):
        return {"kind": "T", "level": t.level, "boundary": list(t.boundary)}
    raise TypeError(t)


def type_from_json(d: dict) -> TypeExpr:
    kind = d["kind"]
    if kind == "universe":
        return Universe()
    if kind == "ref":
        return Ref(d["name"])
    if kind == "app":
        return FamilyApp(d["name"], tuple(d["args"]))
    if kind == "fun":
        return FunType(type_from_json(d["dom"]), type_from_json(d["cod"]))
    if kind == "sigma":
        return SigmaTel(tuple((n, type_from_json(ty)) for n, ty in d["entries"]))
    if kind == "eq":
        return EqType(path_from_json(d["lhs"]), path_from_json(d["rhs"]))
    if kind == "isequiv":
        pr = d.get("projection")
        proj = Projection(pr["source"], pr["target"], tuple(pr["picks"])) if pr else None
        return IsEquiv(d["subject"], proj)
    if kind == "T":
        return OpaqueT(d["level"], tuple(d["boundary"]))
    raise SchemaError(f"unknown type kind {kind!r}")


def schema_to_json(schema: ContextSchema) -> dict:
    return {
        "format": SCHEMA_FORMAT,
        "version": SCHEMA_VERSION,
        "title": schema.title,
        "params": list(schema.params),
        "metadata": [[k, v] for k, v in schema.metadata],
        "components": [
            {"name": c.name, "type": type_to_json(c.type), "source": c.source}
            for c in schema.components
        ],
    }


def schema_from_json(doc: dict) -> ContextSchema:
    if doc.get("format") != SCHEMA_FORMAT:
        raise SchemaError(f"not a {SCHEMA_FORMAT} document")
    return ContextSchema(
        tuple(Component(c["name"], type_from_json(c["type"]), c.get("source", ""))
              for c in doc["components"]),
        tuple(doc.get("params", ())),
        tuple((k, v) for k, v in doc.get("metadata", ())),
        doc.get("title", ""),
    )


def parse_schema(text: str) -> ContextSchema:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("a schema document must be a JSON object")
    return schema_from_json(doc)
