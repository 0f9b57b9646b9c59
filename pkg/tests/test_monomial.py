from itertools import product
from math import comb

import pytest
from hypothesis import given, strategies as st

from powres.monomial import (
    DuplicateGeneratorError,
    IdealSyntaxError,
    NonMinimalGeneratorsError,
    Ring,
    RingMismatchError,
    check_power_injectivity,
    count_Nr,
    enumerate_Nr,
    lcm,
    parse_ideal,
    parse_monomial,
    power_generator,
    supp,
    vadd,
)

R4 = Ring(("x", "y", "z", "u"))


def test_parse_running_example():
    I = parse_ideal("x*y, y*z, z*u")
    assert I.ring.names == ("x", "y", "z", "u")
    assert [g.exponents for g in I.generators] == [(1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1)]
    assert I.q == 2 and I.is_squarefree


def test_parse_single_and_header():
    I = parse_ideal("x")
    assert [g.exponents for g in I.generators] == [(1,)]
    J = parse_ideal("vars: u,z,y,x\n# comment\nx*y\ny*z  # trailing\n")
    assert J.ring.names == ("u", "z", "y", "x")
    assert str(J.generators[1]) == "z*y"


def test_parse_powers_and_repeats():
    I = parse_ideal("x^2*y, x*x*z^3")
    assert [g.exponents for g in I.generators] == [(2, 1, 0), (2, 0, 3)]
    assert not I.is_squarefree


def test_nonminimal_witness():
    with pytest.raises(NonMinimalGeneratorsError) as e:
        parse_ideal("x*y, x")
    assert e.value.witness == (1, 0)


def test_duplicate_generator():
    with pytest.raises(DuplicateGeneratorError):
        parse_ideal("x*y, y*x")


@pytest.mark.parametrize(
    "text, pos",
    [("x*y, *z", 5), ("x**y", 2), ("x*y,, z", 4), ("", 0), ("vars: x\nx*q", 10), ("x^", 1)],
)
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(IdealSyntaxError) as e:
        parse_ideal(text)
    assert e.value.pos == pos


def test_lcm_examples():
    xy, yz, zu = (parse_monomial(s, R4) for s in ("x*y", "y*z", "z*u"))
    assert str(lcm(xy, yz)) == "x*y*z"
    assert str(lcm(yz, zu)) == "y*z*u"
    assert lcm(xy, xy) == xy


def test_ring_mismatch():
    a = parse_monomial("x", Ring(("x", "y")))
    b = parse_monomial("x", Ring(("x", "z")))
    with pytest.raises(RingMismatchError):
        a.lcm(b)


def test_monomial_printing_roundtrip():
    m = parse_monomial("x^2*y*u^3", R4)
    assert str(m) == "x^2*y*u^3"
    assert parse_monomial(str(m), R4) == m
    assert str(R4.one()) == "1"


def test_exact_division():
    m = parse_monomial("x^2*y", R4)
    assert str(m / parse_monomial("x", R4)) == "x*y"
    with pytest.raises(ValueError):
        m / parse_monomial("z", R4)


def test_enumerate_Nr_order():
    assert enumerate_Nr(2, 2) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    assert enumerate_Nr(0, 5) == [(5,)]
    assert len(enumerate_Nr(3, 3)) == 20


def test_enumerate_Nr_against_brute_force():
    for q in range(0, 7):
        for r in range(1, 7):
            brute = sorted((a for a in product(range(r + 1), repeat=q + 1) if sum(a) == r), reverse=True)
            got = enumerate_Nr(q, r)
            assert got == brute
            assert len(got) == count_Nr(q, r) == comb(q + r, r)


def test_power_generator():
    I = parse_ideal("x*y, y*z, z*u")
    assert str(power_generator(I, (0, 1, 1))) == "y*z^2*u"
    assert str(power_generator(I, (2, 0, 0))) == "x^2*y^2"
    assert power_generator(I, (1, 0, 0)) == I.generators[0]


def test_power_injectivity():
    I = parse_ideal("x*y, y*z, z*u")
    assert check_power_injectivity(I, 3) == (True, None)
    assert check_power_injectivity(parse_ideal("x^2*y"), 4) == (True, None)
    # x*y and z*u share their product with x*z and y*u
    J = parse_ideal("x*y, z*u, x*z, y*u")
    ok, witness = check_power_injectivity(J, 2)
    assert not ok
    a, b = witness
    assert a != b and power_generator(J, a) == power_generator(J, b)
    assert {a, b} == {(1, 1, 0, 0), (0, 0, 1, 1)}


def test_x_y_xy_is_rejected_before_injectivity():
    # x divides x*y, so this is not a minimal generating set at all
    with pytest.raises(NonMinimalGeneratorsError):
        parse_ideal("x, y, x*y")


def test_supp_ignores_index_zero():
    assert supp((3, 0, 2, 1)) == (2, 3)


monomials = st.lists(st.integers(0, 4), min_size=4, max_size=4).map(lambda e: R4.monomial(e))


@given(monomials, monomials, monomials)
def test_lcm_laws(a, b, c):
    assert a.lcm(b) == b.lcm(a)
    assert a.lcm(b).lcm(c) == a.lcm(b.lcm(c))
    assert a.lcm(a) == a
    assert a.divides(a.lcm(b)) and b.divides(a.lcm(b))
    assert a.gcd(b) * a.lcm(b) == a * b


@given(st.integers(0, 3), st.integers(1, 3), st.integers(1, 3), st.data())
def test_power_generator_multiplicative(q, r, s, data):
    gens = ["x*y", "y*z", "z*u", "u*w"][: q + 1]
    I = parse_ideal(", ".join(gens))
    a = data.draw(st.sampled_from(enumerate_Nr(q, r)))
    b = data.draw(st.sampled_from(enumerate_Nr(q, s)))
    assert power_generator(I, vadd(a, b)) == power_generator(I, a) * power_generator(I, b)
