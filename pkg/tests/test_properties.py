"""Hypothesis suites over random inverse presentations and random schemas."""
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from diagram_forge.emit import (
    Ap,
    Apply,
    Component,
    Compose,
    Concat,
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
    is_subcontext,
    parse_schema,
    reedy_diagram_type,
    render,
    telescope_errors,
    weak_diagram_type,
)
from diagram_forge.fincat import CategorySpec, build_category
from diagram_forge.inverse import check_inverse, downward_closed
from diagram_forge.nerve import check_preorder, check_shape_opfibration, positive_nerve_elements

from conftest import E_DOC
from oracles import hom_sizes

SETTINGS = settings(max_examples=120, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def _paths(ends, src, dst, max_len):
    """Composable generator words (outermost first) from src to dst."""
    out = []

    def walk(at, word):
        if word and at == dst:
            out.append(tuple(reversed(word)))
        if len(word) == max_len:
            return
        for g, (s, t) in sorted(ends.items()):
            if s == at:
                walk(t, word + [g])

    walk(src, [])
    return out


@st.composite
def inverse_docs(draw, max_objects=4, max_generators=6):
    n = draw(st.integers(1, max_objects))
    degrees = sorted(draw(st.lists(st.integers(0, 3), min_size=n, max_size=n)))
    objects = [{"name": f"o{k}", "degree": d} for k, d in enumerate(degrees)]
    pairs = [(a, b) for a in range(n) for b in range(n) if degrees[a] > degrees[b]]
    gens = []
    if pairs:
        chosen = draw(st.lists(st.sampled_from(pairs), max_size=max_generators))
        gens = [{"name": f"g{k}", "src": f"o{a}", "dst": f"o{b}"} for k, (a, b) in enumerate(chosen)]
    ends = {g["name"]: (g["src"], g["dst"]) for g in gens}
    relations = []
    for a in range(n):
        for b in range(n):
            ps = _paths(ends, f"o{a}", f"o{b}", 3)
            if len(ps) >= 2 and draw(st.booleans()):
                i, j = draw(st.tuples(st.integers(0, len(ps) - 1), st.integers(0, len(ps) - 1)))
                if i != j:
                    relations.append([list(ps[i]), list(ps[j])])
    return {"objects": objects, "generators": gens, "relations": relations}


def _build(doc, bound=4):
    return build_category(CategorySpec.from_dict(doc), bound)


def _fingerprint(C):
    mors = sorted((m.source, m.target, m.word) for m in C.morphisms)
    table = sorted(
        (C.morphisms[g].word, C.morphisms[f].word, C.morphisms[h].word)
        for (g, f), h in C.composable_pairs()
    )
    return mors, table


@SETTINGS
@given(inverse_docs(), st.randoms(use_true_random=False))
def test_saturation_is_order_independent(doc, rnd):
    shuffled = dict(doc)
    shuffled["generators"] = rnd.sample(doc["generators"], len(doc["generators"]))
    rels = [list(r) if rnd.random() < 0.5 else [r[1], r[0]] for r in doc["relations"]]
    shuffled["relations"] = rnd.sample(rels, len(rels))
    assert _fingerprint(_build(doc)) == _fingerprint(_build(shuffled))


@SETTINGS
@given(inverse_docs())
def test_associativity(doc):
    C = _build(doc)
    assert len(C) <= 200
    pairs = dict(C.composable_pairs())
    for (h, g), hg in pairs.items():
        for f in C.into(C.source(g)):
            assert C.compose(h, C.compose(g, f)) == C.compose(hg, f)


@SETTINGS
@given(inverse_docs())
def test_hom_sizes_agree_with_rewriting_oracle(doc):
    C = _build(doc)
    sizes = hom_sizes(doc, 4)
    for (x, y), k in sizes.items():
        assert len(C.hom(x, y)) == k


@SETTINGS
@given(inverse_docs())
def test_generated_categories_are_inverse(doc):
    C = _build(doc)
    assert check_inverse(C) == []
    N = positive_nerve_elements(C)
    assert check_inverse(N.category) == []
    assert check_preorder(N) == []


@SETTINGS
@given(inverse_docs())
def test_shape_is_a_discrete_opfibration(doc):
    assert check_shape_opfibration(positive_nerve_elements(_build(doc))) == []


def test_shape_opfibration_on_E_enumerated():
    # every (object, injective map into its shape) pair of ∫N⁺E, 29 cases
    from diagram_forge.nerve import face
    from diagram_forge.simplex import injective_maps

    E = _build(E_DOC)
    N = positive_nerve_elements(E)
    cases = 0
    for s in N.objects:
        n = len(s.arrows)
        for k in range(n + 1):
            for d in injective_maps(k, n):
                t = face(E, s, d)
                assert t in N and len(t.arrows) == k
                cases += 1
    assert cases == 29
    assert check_shape_opfibration(N) == []


@SETTINGS
@given(inverse_docs(), st.data())
def test_downward_closed_subcontext_law(doc, data):
    C = _build(doc)
    seeds = data.draw(st.lists(st.sampled_from(C.objects), min_size=1, unique=True))
    J = downward_closed(C, seeds).category
    assert is_subcontext(reedy_diagram_type(J), reedy_diagram_type(C))
    assert telescope_errors(reedy_diagram_type(C)) == []
    assert len(weak_diagram_type(C)) == len(positive_nerve_elements(C).objects)


# -- JSON round-trip over random schemas --------------------------------------------

names = st.text(alphabet="abcxyzABδ_0123∘", min_size=1, max_size=6)


def paths():
    return st.recursive(
        names.map(Var),
        lambda inner: st.one_of(
            st.builds(Compose, inner, inner),
            st.builds(Apply, inner, inner),
            st.builds(Ap, inner, inner),
            st.builds(Concat, inner, inner),
        ),
        max_leaves=6,
    )


def types():
    base = st.one_of(
        st.just(Universe()),
        names.map(Ref),
        st.builds(FamilyApp, names, st.lists(names, max_size=3).map(tuple)),
        st.builds(EqType, paths(), paths()),
        st.builds(IsEquiv, names),
        st.builds(IsEquiv, names, st.builds(Projection, names, names,
                                            st.lists(st.integers(0, 5), max_size=3).map(tuple))),
        st.builds(OpaqueT, st.integers(0, 6), st.lists(names, max_size=4).map(tuple)),
    )
    return st.recursive(
        base,
        lambda inner: st.one_of(
            st.builds(FunType, inner, inner),
            st.lists(st.tuples(names, inner), max_size=3).map(lambda es: SigmaTel(tuple(es))),
        ),
        max_leaves=8,
    )


schemas = st.builds(
    ContextSchema,
    st.lists(st.builds(Component, names, types(), names), max_size=5).map(tuple),
    st.lists(names, max_size=2).map(tuple),
    st.lists(st.tuples(names, names), max_size=2).map(tuple),
    names,
)


@SETTINGS
@given(schemas)
def test_json_round_trip(schema):
    assert parse_schema(render(schema, "json")) == schema


@SETTINGS
@given(inverse_docs())
def test_json_round_trip_of_emitted_schemas(doc):
    C = _build(doc)
    for s in (reedy_diagram_type(C), weak_diagram_type(C)):
        assert parse_schema(render(s, "json")) == s
