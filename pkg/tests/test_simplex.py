from math import comb

import pytest

from diagram_forge.fincat import NotComposable
from diagram_forge.simplex import (
    SimplexMap,
    compose_simplex,
    degeneracy_map,
    epi_mono_factor,
    face_map,
    identity,
    injective_maps,
    monotone_maps,
    surjective_maps,
)

from oracles import monotone


def test_small_counts():
    assert monotone_maps(0, 0) == [identity(0)]
    assert [m.values for m in monotone_maps(1, 1)] == [(0, 0), (0, 1), (1, 1)]
    assert len([m for m in monotone_maps(1, 2) if m.injective]) == 3


@pytest.mark.parametrize("m", range(7))
@pytest.mark.parametrize("n", range(7))
def test_monotone_count_binomial(m, n):
    maps = monotone_maps(m, n)
    assert len(maps) == comb(m + n + 1, m + 1)
    assert [f.values for f in maps] == monotone(m, n)


def test_flags():
    for m in range(4):
        for n in range(4):
            for f in monotone_maps(m, n):
                assert f.injective == (len(set(f.values)) == m + 1)
                assert f.surjective == (set(f.values) == set(range(n + 1)))
    assert len(injective_maps(2, 4)) == comb(5, 3)
    assert all(f.surjective for f in surjective_maps(3, 1))


def test_composition_examples():
    s = SimplexMap(1, 0, (0, 0))
    d = SimplexMap(0, 1, (0,))
    assert compose_simplex(s, d) == identity(0)
    d2 = compose_simplex(face_map(2, 0), SimplexMap(0, 1, (1,)))
    assert d2.injective and d2.domain == 0 and d2.codomain == 2
    f = SimplexMap(2, 2, (0, 0, 2))
    assert compose_simplex(identity(2), f) == f == compose_simplex(f, identity(2))
    with pytest.raises(NotComposable):
        compose_simplex(f, d)


def test_composition_preserves_classes():
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for f in monotone_maps(a, b):
                    for g in monotone_maps(b, c):
                        h = compose_simplex(g, f)
                        if f.injective and g.injective:
                            assert h.injective
                        if f.surjective and g.surjective:
                            assert h.surjective


def test_factor_examples():
    assert epi_mono_factor(identity(3)) == (identity(3), identity(3))
    s, d = epi_mono_factor(SimplexMap(2, 1, (1, 1, 1)))
    assert s == SimplexMap(2, 0, (0, 0, 0)) and d == SimplexMap(0, 1, (1,))
    s, d = epi_mono_factor(SimplexMap(2, 2, (0, 0, 2)))
    assert s.values == (0, 0, 1) and d.values == (0, 2)


def test_factorization_unique_small():
    # full uniqueness sweep lives in the acceptance module; keep a fast slice here
    for m in range(3):
        for n in range(3):
            for f in monotone_maps(m, n):
                pairs = [
                    (s, d)
                    for k in range(min(m, n) + 1)
                    for s in surjective_maps(m, k)
                    for d in injective_maps(k, n)
                    if compose_simplex(d, s) == f
                ]
                assert pairs == [epi_mono_factor(f)]


def test_face_and_degeneracy():
    assert face_map(2, 1).values == (0, 2)
    assert degeneracy_map(1, 0).values == (0, 0, 1)
    assert str(SimplexMap(2, 2, (0, 0, 2))) == "(0,0,2)"


@pytest.mark.parametrize("vals, cod", [((1, 0), 1), ((0, 3), 2), ((), 0)])
def test_invalid_maps(vals, cod):
    with pytest.raises(ValueError):
        SimplexMap(len(vals) - 1, cod, vals)
