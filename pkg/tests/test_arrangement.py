"""Arrangement combinatorics: lattice, Mobius, Poincare, constructions."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logarr import corpus
from logarr.arrangement import (Arrangement, ArrangementError,
                                add_generic_hyperplane, beta_invariant,
                                build_lattice, essentialize, is_k_generic,
                                lattice_isomorphic, localization,
                                poincare_poly, poincare_proj, restriction)
from oracles import brute_force_lattice, brute_force_poincare


def test_arrangement_validation():
    with pytest.raises(ArrangementError):
        Arrangement.from_rows([[0, 0]])
    with pytest.raises(ArrangementError):
        Arrangement.from_rows([[1, 0], [2, 0]])  # proportional
    with pytest.raises(ArrangementError):
        Arrangement.from_rows([[1, 0], [1]])


def test_json_round_trip():
    A = corpus.braid3()
    B = Arrangement.from_json(A.to_json())
    assert A == B
    C = Arrangement.from_json('{"l": 2, "hyperplanes": [["1", "0"], ["1/2", "1"]]}')
    assert C.forms[1] == (Fraction(1, 2), Fraction(1))
    with pytest.raises(ArrangementError):
        Arrangement.from_json("{not json")
    with pytest.raises(ArrangementError):
        Arrangement.from_json('{"hyperplanes": []}')


def test_boolean2_lattice():
    L = build_lattice(corpus.boolean(2))
    assert [len(L.flats_of_codim(c)) for c in range(3)] == [1, 2, 1]
    mus = {f.codim: mu for f, mu in zip(L.flats, L.mobius)}
    assert L.mobius[0] == 1
    for f, mu in zip(L.flats, L.mobius):
        assert mu == {0: 1, 1: -1, 2: 1}[f.codim]


def test_single_hyperplane_lattice():
    L = build_lattice(Arrangement.from_rows([[1, 2, 3]]))
    assert len(L.flats) == 2
    assert sorted(L.mobius) == [-1, 1]


def test_four_generic_planes_mobius():
    L = build_lattice(corpus.generic(4, 3))
    assert len(L.flats_of_codim(1)) == 4
    assert len(L.flats_of_codim(2)) == 6
    assert len(L.flats_of_codim(3)) == 1
    for f, mu in zip(L.flats, L.mobius):
        expected = {0: 1, 1: -1, 2: 1, 3: -3}[f.codim]
        assert mu == expected


@pytest.mark.parametrize("name", ["boolean3", "generic43", "generic53", "braid3"])
def test_lattice_matches_brute_force(name):
    A = corpus.load(name)
    L = build_lattice(A)
    oracle = brute_force_lattice(A.forms, A.l)
    ours = {f.hyperplanes: (f.codim, mu) for f, mu in zip(L.flats, L.mobius)}
    assert ours == oracle


def test_poincare_examples():
    assert poincare_poly(build_lattice(corpus.boolean(3))) == [1, 3, 3, 1]
    assert poincare_poly(build_lattice(corpus.generic(4, 3))) == [1, 4, 6, 3]
    assert poincare_poly(build_lattice(corpus.ziegler(1))) == [1, 9, 30, 22]
    assert poincare_poly(build_lattice(corpus.ziegler(2))) == [1, 9, 30, 22]


def test_poincare_proj_examples():
    assert poincare_proj([1, 3, 3, 1]) == [1, 2, 1]
    assert poincare_proj([1, 4, 6, 3]) == [1, 3, 3]
    # cone of the nine-line pair: (1+8t+22t^2)(1+t)^2 -> 1+9t+30t^2+22t^3
    zp = corpus.ziegler_plus(1)
    pi = poincare_poly(build_lattice(zp))
    assert pi == [1, 10, 39, 52, 22]
    assert poincare_proj(pi) == [1, 9, 30, 22]
    with pytest.raises(ArrangementError):
        poincare_proj([1, 1, 1])


def test_beta_invariant_examples():
    assert beta_invariant([1, 2, 1], 3) == 0          # Boolean l=3
    assert beta_invariant([1, 3, 3], 3) == 1          # 4 generic planes
    assert beta_invariant([1, 8, 22], 3) == 15        # nine-line members
    assert beta_invariant([1, 9, 30, 22], 4) == 0     # their cones


def test_localization_and_restriction():
    A = corpus.generic(4, 3)
    L = build_lattice(A)
    double = next(f for f in L.flats_of_codim(2) if len(f.hyperplanes) == 2)
    loc = localization(A, double)
    assert loc.n == 2 and loc.l == 3
    # restriction of Boolean l=3 to {x = 0} is Boolean l=2
    R = restriction(corpus.boolean(3), 0)
    assert R.l == 2 and R.n == 2
    assert lattice_isomorphic(R, corpus.boolean(2)) is not None


def test_localization_gives_lattice_interval():
    for name in ("generic53", "braid3", "boolean3"):
        A = corpus.load(name)
        L = build_lattice(A)
        for f in L.flats:
            if f.codim == 0:
                continue
            idx = sorted(f.hyperplanes)
            sub = build_lattice(localization(A, f))
            below = [g for g in L.flats if g.hyperplanes <= f.hyperplanes]
            assert len(sub.flats) == len(below)
            # localization renumbers hyperplanes; translate back
            assert {frozenset(idx[i] for i in g.hyperplanes) for g in sub.flats} == \
                {g.hyperplanes for g in below}


def test_is_k_generic():
    assert is_k_generic(corpus.generic(5, 3), 2)
    assert is_k_generic(corpus.boolean(3), 2)
    assert is_k_generic(corpus.boolean(3), 3)   # the origin has exactly 3
    assert not is_k_generic(corpus.braid3(), 2)  # triple points exist


def test_essentialize_preserves_lattice():
    # braid on four strands in its natural coordinates has rank 3 in C^4
    rows = []
    for i in range(4):
        for j in range(i + 1, 4):
            row = [0] * 4
            row[i], row[j] = 1, -1
            rows.append(row)
    A = Arrangement.from_rows(rows)
    assert A.rank() == 3
    E = essentialize(A)
    assert E.l == 3 and E.n == 6
    assert lattice_isomorphic(E, corpus.braid3()) is not None
    assert poincare_poly(build_lattice(E)) == poincare_poly(build_lattice(A))


def test_add_generic_hyperplane_structure():
    A = corpus.generic(4, 3)
    B = add_generic_hyperplane(A, seed=11)
    assert B.l == 4 and B.n == 5 and B.rank() == 4
    LA, LB = build_lattice(A), build_lattice(B)
    # old flats persist with the same closure (restricted to old indices)
    old = {f.hyperplanes for f in LA.flats}
    new_old = {f.hyperplanes for f in LB.flats if all(i < A.n for i in f.hyperplanes)}
    assert old == new_old
    # transversal extension multiplies the Poincare polynomial by (1 + t)
    from logarr.exact.laurent import poly_mul
    assert poincare_poly(LB) == poly_mul(poincare_poly(LA), [1, 1])


def test_lattice_isomorphic_distinguishes():
    assert lattice_isomorphic(corpus.boolean(3), corpus.braid3()) is None
    perm = lattice_isomorphic(corpus.ziegler(1), corpus.ziegler(2))
    assert perm is not None


@st.composite
def random_arrangements(draw):
    l = draw(st.integers(2, 3))
    n = draw(st.integers(1, 4))
    rows = []
    for _ in range(n):
        row = draw(st.lists(st.integers(-2, 2), min_size=l, max_size=l)
                   .filter(lambda r: any(r)))
        rows.append(row)
    try:
        return Arrangement.from_rows(rows)
    except ArrangementError:
        return None


@given(random_arrangements())
@settings(max_examples=40, deadline=None)
def test_mobius_recursion_and_signs(A):
    if A is None:
        return
    L = build_lattice(A)
    for f, mu in zip(L.flats, L.mobius):
        assert mu * (-1) ** f.codim > 0
        if f.codim > 0:
            below = sum(m for g, m in zip(L.flats, L.mobius)
                        if g.hyperplanes <= f.hyperplanes)
            assert below == 0
    pi = poincare_poly(L)
    assert all(c >= 0 for c in pi)
    assert brute_force_poincare(A.forms, A.l) == pi
    if A.n >= 1:
        poincare_proj(pi)  # divisibility by (1 + t) must hold
