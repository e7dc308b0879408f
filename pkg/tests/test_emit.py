from pathlib import Path

import pytest

from diagram_forge.emit import (
    Component,
    ContextSchema,
    EqType,
    FamilyApp,
    FunType,
    IllFormedTelescope,
    IsEquiv,
    NameCollision,
    OpaqueT,
    Ref,
    SigmaTel,
    Universe,
    Var,
    check_telescope,
    general_hc_type,
    is_subcontext,
    mangle,
    parse_schema,
    reedy_diagram_type,
    render,
    schema_to_json,
    semisimplicial_type,
    simplicial_type,
    telescope_errors,
    weak_diagram_type,
)
from diagram_forge.emit.schema import family_domain
from diagram_forge.inverse import downward_closed
from diagram_forge.nerve import nerve_elements_truncated, positive_nerve_elements
from diagram_forge.reedy import frak_d, marked_generators
from diagram_forge.strictify import plan_text
from diagram_forge.builtins import load_category

from oracles import composable_tuples

GOLDEN = Path(__file__).parent / "golden"


def golden(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8")


# -- goldens ---------------------------------------------------------------------


def test_reedy_E_golden(E):
    assert render(reedy_diagram_type(E)) == golden("reedy_E.txt")


def test_semisimplicial_golden():
    assert render(semisimplicial_type(2)) == golden("semisimplicial_2.txt")


def test_weak_E_golden(E):
    assert render(weak_diagram_type(E)) == golden("weak_E.txt")


def test_strictify_E_golden(E):
    assert plan_text(E) == golden("strictify_E.txt")


def test_simplicial_agda_golden():
    assert render(simplicial_type(2), "agda", module="Simplicial2") == golden("simplicial_2.agda")


# -- Reedy diagram types ---------------------------------------------------------


def test_reedy_E_shapes(E):
    s = reedy_diagram_type(E)
    assert s.names == ["R_x", "R_y", "R_z"]
    assert [len(family_domain(c.type)) for c in s] == [0, 2, 2]
    (a, ra), (_, ry) = family_domain(s["R_z"].type)
    assert ra == Ref("R_x") and ry == FamilyApp("R_y", (a, a))


def test_reedy_terminal(terminal):
    s = reedy_diagram_type(terminal)
    assert len(s) == 1 and s.components[0].type == Universe()


def test_reedy_delta_plus_op_is_semisimplicial():
    from diagram_forge.simplex import delta_plus_op

    text = render(reedy_diagram_type(delta_plus_op(2)))
    assert len(text.splitlines()) == 3


@pytest.mark.parametrize("name", ["E", "linear", "parallel", "arrow", "terminal"])
def test_component_count_laws(name):
    C = load_category(name)
    assert len(reedy_diagram_type(C)) == len(C.objects)
    assert len(weak_diagram_type(C)) == len(positive_nerve_elements(C).objects)


# -- semisimplicial --------------------------------------------------------------


@pytest.mark.parametrize("n", range(5))
def test_semisimplicial_boundaries(n):
    s = semisimplicial_type(n)
    assert len(s) == n + 1
    assert [len(family_domain(c.type)) for c in s] == [2 ** (k + 1) - 2 for k in range(n + 1)]
    assert telescope_errors(s) == []


def test_semisimplicial_level_two_lines():
    dom = dict(family_domain(semisimplicial_type(2)["A_[2]"].type))
    assert dom["l_02"] == FamilyApp("A_[1]", ("p_0", "p_2"))
    assert semisimplicial_type(0).components[0].type == Universe()


# -- weak diagrams ---------------------------------------------------------------


def test_weak_E_listing(E):
    s = weak_diagram_type(E)
    kinds = [type(c.type).__name__ for c in s]
    assert kinds.count("Universe") == 3 and kinds.count("FunType") == 4 and kinds.count("EqType") == 2
    assert s["eq_w__u"].type == EqType(Var("u_w"), _compose("u", "w"))


def _compose(g, f):
    from diagram_forge.emit import Compose

    return Compose(Var(g), Var(f))


def test_weak_linear_has_one_equality(linear):
    # 3 objects, 3 arrows (f, g and the composite f∘g), 1 composable pair
    s = weak_diagram_type(linear)
    arrows = [(linear.source(f), linear.target(f)) for f in linear.non_identities()]
    assert composable_tuples(arrows, 1) == 3 and composable_tuples(arrows, 2) == 1
    assert len(s) == 7 and sum(isinstance(c.type, EqType) for c in s) == 1


def test_weak_higher_levels_are_opaque():
    C = load_category("delta+op:3")
    N = positive_nerve_elements(C)
    s = weak_diagram_type(C)
    for seq, c in zip(N.objects, s):
        k = len(seq.arrows)
        if k >= 3:
            assert isinstance(c.type, OpaqueT) and c.type.level == k
            assert len(c.type.boundary) == 2 ** (k + 1) - 2
    assert telescope_errors(s) == []


# -- general homotopy coherent ---------------------------------------------------


def test_general_terminal_tower(terminal):
    s = general_hc_type(terminal, 2)
    assert s.names == ["h_0", "h_1", "h_2", "isEquiv_h_1"]
    assert s["h_1"].type == FunType(Ref("h_0"), Ref("h_0"))
    assert s["h_2"].type == EqType(Var("h_1"), _compose("h_1", "h_1"))
    assert s["isEquiv_h_1"].type == IsEquiv("h_1")
    assert s.meta("truncated") == "true"
    assert render(s).startswith("-- TRUNCATED")


def test_general_length_zero(E):
    s = general_hc_type(E, 0)
    assert len(s) == 3 and all(c.type == Universe() for c in s)


def test_general_E_length_one(E):
    s = general_hc_type(E, 1)
    assert len(nerve_elements_truncated(E, 1).objects) == 10
    assert sum(isinstance(c.type, IsEquiv) for c in s) == 3 and len(s) == 13


# -- simplicial ------------------------------------------------------------------


@pytest.mark.parametrize("n,families,equivs", [(0, 1, 0), (1, 3, 1), (2, 7, 4)])
def test_simplicial_counts(n, families, equivs):
    s = simplicial_type(n)
    fam = [c for c in s if family_domain(c.type) is not None]
    eqv = [c for c in s if isinstance(c.type, IsEquiv)]
    assert (len(fam), len(eqv)) == (families, equivs)
    assert telescope_errors(s) == []


@pytest.mark.parametrize("n", range(4))
def test_marking_soundness(n):
    D = frak_d(n)
    s = simplicial_type(n)
    sources = sorted(c.source for c in s if isinstance(c.type, IsEquiv))
    assert sources == sorted(D.label(f) for f in marked_generators(D))
    unmarked = {D.label(f) for f in D.non_identities() if f not in D.marked}
    assert not unmarked & set(sources)
    # every marked non-identity is generated by the emitted ones
    gens = set(marked_generators(D))
    reach = set(gens)
    while True:
        more = {h for (g, f), h in D.composable_pairs() if g in reach and f in reach} - reach
        if not more:
            break
        reach |= more
    assert reach == {f for f in D.non_identities() if f in D.marked}


def test_simplicial_projection_picks():
    s = simplicial_type(2)
    t = s["isEquiv_2_to_1"].type
    assert t.projection.target == "A_1" and t.projection.source == "A_2"
    assert "isEquiv(A_2 ↠ A_1 ⟨x1_0⟩)" in render(s)


# -- subcontext law --------------------------------------------------------------


def test_subcontext_law_E(E):
    big = reedy_diagram_type(E)
    for seeds in (["x"], ["y"], ["z"], ["x", "y"]):
        J = downward_closed(E, seeds).category
        assert is_subcontext(reedy_diagram_type(J), big)


def test_subcontext_negative(E):
    s = reedy_diagram_type(E)
    rev = ContextSchema(tuple(reversed(s.components)))
    assert not is_subcontext(rev, s)
    assert is_subcontext(ContextSchema(), s)


# -- rendering -------------------------------------------------------------------


def test_empty_schema_renders_empty():
    for fmt in ("text", "agda"):
        assert render(ContextSchema(), fmt) == ""


def test_unknown_format():
    with pytest.raises(ValueError):
        render(ContextSchema(), "coq")


def test_mangle():
    assert mangle("A_[1]") == "A-1"
    assert mangle("u∘w") == "u-w"
    assert mangle("1_2") == "x-1-2"
    assert mangle("field") == "field'"
    assert mangle("__") == "x"
    assert mangle("δ_u") == "δ-u"


def test_name_collision():
    s = ContextSchema((Component("a_b", Universe()), Component("a-b", Universe())))
    with pytest.raises(NameCollision):
        render(s, "agda")


def test_agda_shape(E):
    text = render(weak_diagram_type(E), "agda", module="WeakE")
    assert "record WeakE-type : Set₁ where" in text
    assert "    eq-w-u : u-w ≡ (u ∘ w)" in text
    assert "open import Prelude" in text


def test_agda_opaque_and_params():
    s = ContextSchema(
        (Component("c", OpaqueT(3, ("A", "B"))), Component("d", OpaqueT(0, ()))),
        params=("A", "B"),
    )
    text = render(s, "agda")
    assert "record Diagram-type (A : Set) (B : Set) : Set₁ where" in text
    assert "c : T 3 (⟪ A ⟫ ∷ ⟪ B ⟫ ∷ [])" in text and "d : T 0 []" in text


def test_telescope_checker_rejects_forward_reference():
    s = ContextSchema((Component("f", FunType(Ref("A"), Ref("A"))), Component("A", Universe())))
    assert telescope_errors(s)
    with pytest.raises(IllFormedTelescope):
        check_telescope(s)
    dup = ContextSchema((Component("A", Universe()), Component("A", Universe())))
    assert any("duplicate" in e for e in telescope_errors(dup))


def test_sigma_binders_scope():
    s = ContextSchema((
        Component("A", Universe()),
        Component("B", FunType(SigmaTel((("a", Ref("A")), ("b", Ref("A")))), Universe())),
        Component("g", SigmaTel((("a", Ref("A")), ("q", FamilyApp("B", ("a", "a")))))),
    ))
    assert telescope_errors(s) == []
    bad = ContextSchema(s.components[:2] + (Component("h", FamilyApp("B", ("a", "a"))),))
    assert telescope_errors(bad)


GOLDEN_SCHEMAS = [
    lambda: reedy_diagram_type(load_category("E")),
    lambda: weak_diagram_type(load_category("E")),
    lambda: semisimplicial_type(3),
    lambda: simplicial_type(2),
    lambda: general_hc_type(load_category("terminal"), 3),
]


@pytest.mark.parametrize("make", GOLDEN_SCHEMAS)
def test_json_round_trip(make):
    s = make()
    assert parse_schema(render(s, "json")) == s
    assert schema_to_json(s)["components"]


def test_json_rejects_garbage():
    from diagram_forge.emit import SchemaError

    with pytest.raises(SchemaError):
        parse_schema('{"format": "something-else", "version": 1}')
    with pytest.raises(SchemaError):
        parse_schema("not json")
