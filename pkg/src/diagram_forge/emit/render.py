"""Render context schemas as turnstile text, an Agda record, or JSON."""
from __future__ import annotations

import json
import re

from .schema import (
    Ap,
    Apply,
    Compose,
    Concat,
    ContextSchema,
    EqType,
    FamilyApp,
    FunType,
    IsEquiv,
    OpaqueT,
    Path,
    Ref,
    SchemaError,
    SigmaTel,
    TypeExpr,
    Universe,
    Var,
    family_domain,
    schema_to_json,
)

FORMATS = ("text", "agda", "json")


class NameCollision(SchemaError):
    pass


# -- text ----------------------------------------------------------------------


def path_text(p: Path) -> str:
    if isinstance(p, Var):
        return p.name
    if isinstance(p, Compose):
        return f"{_path_atom(p.outer)} ∘ {_path_atom(p.inner)}"
    if isinstance(p, Apply):
        return f"{_path_atom(p.fn)}({path_text(p.arg)})"
    if isinstance(p, Ap):
        return f"ap_{_path_atom(p.fn)}({path_text(p.path)})"
    if isinstance(p, Concat):
        return f"{path_text(p.left)} · {path_text(p.right)}"
    raise TypeError(p)


def _path_atom(p: Path) -> str:
    s = path_text(p)
    return s if isinstance(p, (Var, Apply, Ap)) else f"({s})"


def _binders_text(entries) -> str:
    return ", ".join(f"({n} : {type_text(t)})" for n, t in entries)


def type_text(t: TypeExpr, schema: ContextSchema | None = None) -> str:
    if isinstance(t, Universe):
        return "U"
    if isinstance(t, Ref):
        return t.name
    if isinstance(t, FamilyApp):
        return f"{t.name}({','.join(t.args)})"
    if isinstance(t, FunType):
        dom = type_text(t.dom, schema)
        if isinstance(t.dom, FunType):
            dom = f"({dom})"
        return f"{dom} → {type_text(t.cod, schema)}"
    if isinstance(t, SigmaTel):
        return f"Σ {_binders_text(t.entries)}"
    if isinstance(t, EqType):
        return f"{path_text(t.lhs)} = {path_text(t.rhs)}"
    if isinstance(t, IsEquiv):
        if t.projection is None:
            return f"isEquiv({t.subject})"
        pr = t.projection
        picks = ",".join(_pick_names(schema, pr.source, pr.picks)) if schema else ",".join(map(str, pr.picks))
        return f"isEquiv({pr.source} ↠ {pr.target} ⟨{picks}⟩)"
    if isinstance(t, OpaqueT):
        return f"T_[{t.level}]({','.join(t.boundary)})"
    raise TypeError(t)


def _pick_names(schema: ContextSchema, source: str, picks) -> list[str]:
    names = [n for n, _ in family_domain(schema[source].type) or ()] + [_fibre_var(source)]
    return [names[k] for k in picks]


def _fibre_var(family: str) -> str:
    return f"ϕ_{family}"


def render_text(schema: ContextSchema) -> str:
    lines = []
    if schema.meta("truncated") == "true":
        lines.append(f"-- {schema.title or 'TRUNCATED'}")
    for c in schema.components:
        dom = family_domain(c.type)
        if dom is not None and not (isinstance(c.type, FunType) and not isinstance(c.type.dom, SigmaTel)):
            ctx = _binders_text(dom)
            lines.append(f"{ctx} ⊢ {c.name} type" if ctx else f"⊢ {c.name} type")
        else:
            lines.append(f"({c.name} : {type_text(c.type, schema)})")
    return "".join(line + "\n" for line in lines)


# -- agda ----------------------------------------------------------------------

AGDA_KEYWORDS = frozenset(
    "abstract codata coinductive constructor data do eta-equality field forall hiding "
    "import in inductive infix infixl infixr instance interleaved let macro module "
    "mutual no-eta-equality opaque open overlap pattern postulate primitive private "
    "public quote quoteTerm record renaming rewrite syntax tactic to unfolding unquote "
    "unquoteDecl unquoteDef using variable where with Set Prop".split()
)

# characters Agda reserves inside names, plus "_" which would make a mixfix operator
_AGDA_BAD = re.compile(r"[\s_.;{}()@\"∘→↠⟨⟩,\[\]=·#]+")


def mangle(name: str) -> str:
    """A valid Agda identifier for ``name`` (``A_[1]`` -> ``A-1``)."""
    out = _AGDA_BAD.sub("-", name)
    out = re.sub(r"-{2,}", "-", out).strip("-")
    if not out or out[0].isdigit() or out[0] == "'":
        out = "x-" + out if out else "x"
    if out in AGDA_KEYWORDS:
        out += "'"
    return out


class _Namer:
    def __init__(self, schema: ContextSchema):
        self.table: dict[str, str] = {}
        owner: dict[str, str] = {}
        for n in list(schema.params) + schema.names:
            m = mangle(n)
            if m in owner and owner[m] != n:
                raise NameCollision(f"{owner[m]!r} and {n!r} both mangle to {m!r}")
            owner[m] = n
            self.table[n] = m

    def __call__(self, n: str, local: dict[str, str] | None = None) -> str:
        if local and n in local:
            return local[n]
        return self.table.get(n) or mangle(n)


def _agda_path(p: Path, nm, local) -> str:
    if isinstance(p, Var):
        return nm(p.name, local)
    if isinstance(p, Compose):
        return f"({_agda_path(p.outer, nm, local)} ∘ {_agda_path(p.inner, nm, local)})"
    if isinstance(p, Apply):
        return f"({_agda_path(p.fn, nm, local)} {_agda_path(p.arg, nm, local)})"
    if isinstance(p, Ap):
        return f"(ap {_agda_path(p.fn, nm, local)} {_agda_path(p.path, nm, local)})"
    if isinstance(p, Concat):
        return f"({_agda_path(p.left, nm, local)} ∙ {_agda_path(p.right, nm, local)})"
    raise TypeError(p)


def _local_names(entries, nm) -> dict[str, str]:
    local: dict[str, str] = {}
    for n, _ in entries:
        base = mangle(n)
        cand = base
        k = 0
        while cand in local.values():
            k += 1
            cand = f"{base}{k}"
        local[n] = cand
    return local


def _agda_type(t: TypeExpr, nm, local: dict[str, str], schema: ContextSchema) -> str:
    if isinstance(t, Universe):
        return "Set"
    if isinstance(t, Ref):
        return nm(t.name, local)
    if isinstance(t, FamilyApp):
        return " ".join([nm(t.name)] + [nm(a, local) for a in t.args])
    if isinstance(t, FunType):
        if isinstance(t.dom, SigmaTel):
            inner = dict(local)
            parts = []
            names = _local_names(t.dom.entries, nm)
            for n, ty in t.dom.entries:
                parts.append(f"({names[n]} : {_agda_type(ty, nm, inner, schema)})")
                inner[n] = names[n]
            return f"{' '.join(parts)} → {_agda_type(t.cod, nm, inner, schema)}"
        dom = _agda_type(t.dom, nm, local, schema)
        if isinstance(t.dom, FunType):
            dom = f"({dom})"
        return f"{dom} → {_agda_type(t.cod, nm, local, schema)}"
    if isinstance(t, SigmaTel):
        return _sigma_type(list(t.entries), nm, local, schema)
    if isinstance(t, EqType):
        return f"{_agda_path(t.lhs, nm, local)} ≡ {_agda_path(t.rhs, nm, local)}"
    if isinstance(t, IsEquiv):
        if t.projection is None:
            return f"isEquiv {nm(t.subject)}"
        return _agda_projection(t, nm, schema)
    if isinstance(t, OpaqueT):
        cells = " ∷ ".join(f"⟪ {nm(b, local)} ⟫" for b in t.boundary)
        return f"T {t.level} ({cells} ∷ [])" if cells else f"T {t.level} []"
    raise TypeError(t)


def _sigma_type(entries, nm, local, schema) -> str:
    if not entries:
        return "⊤"
    (n, ty), rest = entries[0], entries[1:]
    head = _agda_type(ty, nm, local, schema)
    if not rest:
        return head
    inner = dict(local)
    inner[n] = mangle(n)
    return f"Σ ({head}) (λ {inner[n]} → {_sigma_type(rest, nm, inner, schema)})"


def _total(schema: ContextSchema, family: str, nm) -> tuple[str, list[str]]:
    """The Σ-type of a family's total space and the pattern variables for it."""
    dom = list(family_domain(schema[family].type) or ())
    local = _local_names(dom, nm)
    fibre = "ϕ"
    while fibre in local.values():
        fibre += "'"
    fam = FamilyApp(family, tuple(n for n, _ in dom)) if dom else Ref(family)
    ty = _sigma_type(dom + [(fibre, fam)], nm, {}, schema)
    return ty, [local[n] for n, _ in dom] + [fibre]


def _sigma_component(var: str, k: int, length: int) -> str:
    """The k-th entry of a right-nested Σ value ``var`` with ``length`` entries."""
    term = var
    for _ in range(k):
        term = f"(snd {term})"
    return term if k == length - 1 else f"(fst {term})"


def _agda_projection(t: IsEquiv, nm, schema: ContextSchema) -> str:
    pr = t.projection
    src_ty, src_vars = _total(schema, pr.source, nm)
    tgt_ty, _ = _total(schema, pr.target, nm)
    var = "t"
    image = " , ".join(_sigma_component(var, k, len(src_vars)) for k in pr.picks)
    return (
        f"isEquiv {{A = {src_ty}}} {{B = {tgt_ty}}} "
        f"(λ {var} → {image})"
    )


def render_agda(schema: ContextSchema, module: str = "Diagram") -> str:
    if not schema.components:
        return ""
    nm = _Namer(schema)
    module = mangle(module)
    lines = []
    if schema.title:
        lines.append(f"-- {schema.title}")
    lines += [
        "{-# OPTIONS --without-K #-}",
        f"module {module} where",
        "",
        "open import Prelude",
        "",
    ]
    params = " ".join(f"({nm(p)} : Set)" for p in schema.params)
    head = f"record {module}-type {params} : Set₁ where" if params else f"record {module}-type : Set₁ where"
    lines += [head, "  field"]
    for c in schema.components:
        lines.append(f"    {nm(c.name)} : {_agda_type(c.type, nm, {}, schema)}")
    return "\n".join(lines) + "\n"


# -- json ----------------------------------------------------------------------


def render_json(schema: ContextSchema) -> str:
    return json.dumps(schema_to_json(schema), indent=2, ensure_ascii=False) + "\n"


def render(schema: ContextSchema, format: str = "text", **kw) -> str:
    if format == "text":
        return render_text(schema)
    if format == "agda":
        return render_agda(schema, **kw)
    if format == "json":
        return render_json(schema)
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
