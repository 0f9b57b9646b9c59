from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from powres.cubes import assemble_complex
from powres.generate import instance_family, random_instance
from powres.monomial import parse_ideal, parse_monomial
from powres.resolution import (
    augmentation_defects,
    betti_formula,
    betti_numbers,
    brute_force_label,
    cell_label,
    compose,
    homogeneity_defects,
    homogenize,
    homogenize_by_lcm,
    oriented_chain_complex,
    pd_formula,
    simplify_ratios,
    unit_entries,
)
from powres.tree import build_support_tree

from published import D1_POLY, D1_SCALAR, D2_POLY, D2_SCALAR, EDGES, SQUARE, VERTICES, in_published_order

@pytest.fixture(scope="module")
def square_complex(running):
    _, tree = running
    return assemble_complex(tree, 2)


def test_published_scalar_matrices(square_complex):
    C = oriented_chain_complex(square_complex)
    assert in_published_order(C, square_complex, 1, VERTICES, EDGES, False) == D1_SCALAR
    assert in_published_order(C, square_complex, 2, EDGES, [SQUARE], False) == D2_SCALAR


def test_published_homogenized_matrices(running, square_complex):
    I, _ = running
    F = homogenize(square_complex, I)
    assert in_published_order(F, square_complex, 1, VERTICES, EDGES, True) == D1_POLY
    assert in_published_order(F, square_complex, 2, EDGES, [SQUARE], True) == D2_POLY


def test_published_multidegrees(running, square_complex):
    _, tree = running
    lab = lambda c: str(cell_label(tree, c))
    assert [lab(c) for c in VERTICES] == ["x^2*y^2", "x*y^2*z", "y^2*z^2", "y*z^2*u", "x*y*z*u", "z^2*u^2"]
    assert [lab(c) for c in EDGES] == [
        "x^2*y^2*z",
        "x*y^2*z^2",
        "x*y*z^2*u",
        "y^2*z^2*u",
        "x*y^2*z*u",
        "y*z^2*u^2",
    ]
    assert lab(SQUARE) == "x*y^2*z^2*u"


def test_square_boundary_signs(square_complex):
    C = oriented_chain_complex(square_complex)
    col = {square_complex.cells[1][row]: coef for (row, _), (coef, _) in C.diffs[2].items()}
    c1, c2, c3, c4, c5, c6 = EDGES
    assert col == {c2: 1, c4: 1, c3: -1, c5: -1}


def test_edge_boundary_is_sink_minus_source(fork):
    _, tree = fork
    cx = assemble_complex(tree, 3)
    C = oriented_chain_complex(cx)
    for col, c in enumerate(cx.cells[1]):
        entries = {cx.cells[0][row].sink: coef for (row, cc), (coef, _) in C.diffs[1].items() if cc == col}
        (j,) = c.directions
        src = tuple(x + (k == tree.tau(j)) - (k == j) for k, x in enumerate(c.sink))
        assert entries == {c.sink: 1, src: -1}


def test_r1_is_the_tree_resolution(running):
    I, tree = running
    F = homogenize(assemble_complex(tree, 1), I)
    assert [str(m) for m in F.augmentation] == ["x*y", "y*z", "z*u"]
    assert [str(m) for m in F.labels[1]] == ["x*y*z", "y*z*u"]
    cols = {}
    for (row, col), (coef, m) in F.diffs[1].items():
        cols.setdefault(col, {})[row] = f"{'-' if coef < 0 else ''}{m}"
    assert cols == {0: {1: "x", 0: "-z"}, 1: {2: "y", 1: "-u"}}


def test_single_generator():
    I = parse_ideal("x*y")
    tree = build_support_tree(I)
    F = homogenize(assemble_complex(tree, 3), I)
    assert F.ranks() == (1,)
    assert [str(m) for m in F.augmentation] == ["x^3*y^3"]


def test_simplify_ratios_examples(running):
    _, tree = running
    up, low, ok = simplify_ratios(tree, (0, 1, 1), {1, 2}, 1)
    assert (str(up), str(low), ok) == ("x", "z", True)
    up, low, ok = simplify_ratios(tree, (0, 1, 1), {2}, 2)
    assert (str(up), str(low), ok) == ("y", "u", True)
    with pytest.raises(ValueError):
        simplify_ratios(tree, (0, 1, 1), {1}, 2)


def test_betti_formula():
    assert betti_numbers(2, 3) == (10, 12, 3)
    assert betti_numbers(2, 2) == (6, 6, 1)
    assert betti_numbers(1, 4) == (5, 4)
    assert betti_formula(3, 2, 3) == 0
    assert betti_formula(2, 2, -1) == 0
    assert pd_formula(2, 3) == (2, 3)
    assert pd_formula(4, 1) == (1, 3)
    assert pd_formula(4, 3) == (3, 5)


def test_betti_formula_is_binomial_identity():
    # alternating sum of ranks is the rank of I^r as a module, 1 for every r
    for q in range(0, 6):
        for r in range(1, 7):
            assert sum((-1) ** t * b for t, b in enumerate(betti_numbers(q, r))) == 1
            assert betti_numbers(q, r)[0] == comb(q + r, r)


FAMILY = instance_family(15)


@pytest.mark.parametrize("inst", FAMILY, ids=lambda i: str(i.ideal))
def test_resolution_invariants(inst):
    I, tree = inst.ideal, inst.tree
    for r in range(1, 5):
        cx = assemble_complex(tree, r)
        C = oriented_chain_complex(cx)
        F = homogenize(cx, I)
        for i in range(2, len(F.diffs)):
            assert not compose(C.diffs[i - 1], C.diffs[i])
            assert not compose(F.diffs[i - 1], F.diffs[i])
        assert not augmentation_defects(F)
        assert not homogeneity_defects(F)
        assert not unit_entries(F)
        assert F.length == min(tree.q, r)
        assert F.ranks() == betti_numbers(tree.q, r)
        G = homogenize_by_lcm(cx)
        assert G.diffs == F.diffs and G.labels == F.labels


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(0, 5000), st.integers(1, 4), st.data())
def test_label_formula_matches_corners(q, seed, r, data):
    inst = random_instance(q, seed)
    tree = inst.tree
    cells = list(assemble_complex(tree, r).all_cells())
    c = data.draw(st.sampled_from(cells))
    assert cell_label(tree, c) == brute_force_label(tree, c)
    for i in c.directions:
        assert simplify_ratios(tree, c.sink, c.directions, i)[2]


def test_homogenize_checks_ideal(running):
    _, tree = running
    with pytest.raises(ValueError):
        homogenize(assemble_complex(tree, 1), parse_ideal("x*y, y*z, z*w"))


def test_monomial_parse_used_in_fixtures(running):
    I, _ = running
    assert parse_monomial("x*y^2*z^2*u", I.ring).degree == 6
