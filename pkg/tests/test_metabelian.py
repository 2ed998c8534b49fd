import pytest
from hypothesis import given, strategies as st

from strategies import commutator_elements, lie_elements, polynomials
from wdk.metabelian import (
    LieElement,
    LieMonomial,
    NotInImageError,
    WreathElement,
    basis_slice,
    commutator_dimension,
    embed,
    embed_word,
    in_commutator_ideal,
    lie_from_wreath,
    module_action,
    parse_wreath,
    wreath_bracket,
)
from wdk.omega import hilbert_free_metabelian
from wdk.parsing import parse_polynomial
from wdk.polyarith import Polynomial, nice_expand


def W(text, d):
    return parse_wreath(text, d)


def A(d, **coords):
    """Wreath element with a-part given as a_i=polynomial text."""
    a = [Polynomial.zero(d) for _ in range(d)]
    for key, text in coords.items():
        a[int(key[1:]) - 1] = parse_polynomial(text, d)
    return WreathElement.from_a(a)


def test_embed_examples():
    assert W("[x2,x1]", 2) == A(2, a2="x1", a1="-x2")
    x1 = embed(LieElement.generator(1, 2))
    assert x1.b == (1, 0) and x1.a[0] == Polynomial.one(2) and x1.a[1].is_zero()
    assert W("[x2,x1,x1]", 2) == A(2, a2="x1^2", a1="-x1x2")


def test_bracket_examples():
    e1, e2 = embed_word((1,), 2), embed_word((2,), 2)
    assert wreath_bracket(e2, e1) == A(2, a2="x1", a1="-x2")
    assert wreath_bracket(e1, e1).is_zero()
    assert wreath_bracket(W("[x2,x1]", 4), W("[x4,x3]", 4)).is_zero()


def test_module_action_examples():
    u = A(2, a2="x1", a1="-x2")
    assert module_action(u, parse_polynomial("x1", 2)) == W("[x2,x1,x1]", 2)
    assert module_action(u, Polynomial.one(2)) == u
    assert module_action(u, Polynomial.zero(2)).is_zero()
    with pytest.raises(ValueError):
        module_action(embed_word((1,), 2), Polynomial.one(2))


def test_membership_examples():
    assert in_commutator_ideal(A(2, a2="x1", a1="-x2"))
    assert not in_commutator_ideal(A(2, a1="1"))
    assert not in_commutator_ideal(embed_word((1,), 2))


def test_lie_from_wreath_examples():
    assert lie_from_wreath(A(2, a2="x1", a1="-x2")) == LieElement.parse("[x2,x1]", 2)
    # pi(x2^2 - 2x1x3) written out in wreath coordinates by hand
    pi_f2 = A(4, a4="2x2^2 - 4x1x3", a1="2x3x4", a2="-2x2x4", a3="2x1x4")
    assert lie_from_wreath(pi_f2) == LieElement.parse("2([x4,x2,x2] - [x4,x1,x3] - [x4,x3,x1])", 4)
    assert lie_from_wreath(WreathElement.zero(3)).is_zero()
    with pytest.raises(NotInImageError):
        lie_from_wreath(A(2, a1="1"))


def test_normal_form_validation():
    with pytest.raises(ValueError):
        LieMonomial((1, 2))
    with pytest.raises(ValueError):
        LieMonomial((3, 2, 1))
    assert str(LieMonomial((2, 1, 1))) == "[x2,x1,x1]"


def test_basis_slice_examples():
    assert [w.word for w in basis_slice(2, 3)] == [(2, 1, 1), (2, 1, 2)]
    assert [w.word for w in basis_slice(3, multidegree=(1, 1, 1))] == [(2, 1, 3), (3, 1, 2)]
    assert [w.word for w in basis_slice(2, multidegree=(1, 1))] == [(2, 1)]


@pytest.mark.parametrize("d", range(2, 7))
def test_dimension_concordance(d):
    h = hilbert_free_metabelian(d, commutator_only=True)
    ser = nice_expand(h, 8)
    by_degree = [0] * 9
    for m, c in ser.terms.items():
        by_degree[sum(m)] += c
    for n in range(2, 9):
        assert len(basis_slice(d, n)) == commutator_dimension(d, n) == by_degree[n]


def test_json_round_trip():
    e = LieElement.parse("3x1 - [x3,x1,x2] + 1/2[x2,x1]", 3)
    assert LieElement.from_json(e.to_json()) == e


def test_any_left_normed_word_normalises():
    # [x1,x2,x3] = -[x2,x1,x3]
    assert LieElement.word((1, 2, 3), 3) == LieElement.parse("-[x2,x1,x3]", 3)
    # Jacobi: [x3,x2,x1] = [x3,x1,x2] - [x2,x1,x3]
    assert LieElement.word((3, 2, 1), 3) == LieElement.parse("[x3,x1,x2] - [x2,x1,x3]", 3)


# ---------------------------------------------------------------------------
# properties

D = 4
elements = lie_elements(D)
comms = commutator_elements(D)


@given(elements, elements, elements, st.integers(-3, 3))
def test_bracket_bilinear_antisymmetric(u, v, w, c):
    U, V, Wt = embed(u), embed(v), embed(w)
    assert wreath_bracket(U + V.scale(c), Wt) == wreath_bracket(U, Wt) + wreath_bracket(V, Wt).scale(c)
    assert wreath_bracket(U, V) == -wreath_bracket(V, U)
    assert wreath_bracket(U, U).is_zero()


@given(elements, elements, elements)
def test_jacobi(u, v, w):
    U, V, Wt = embed(u), embed(v), embed(w)
    total = (wreath_bracket(wreath_bracket(U, V), Wt) + wreath_bracket(wreath_bracket(V, Wt), U)
             + wreath_bracket(wreath_bracket(Wt, U), V))
    assert total.is_zero()


@pytest.mark.parametrize("d", [3, 6])
def test_jacobi_on_generators(d):
    e = [embed_word((j,), d) for j in range(1, d + 1)]
    for i in range(d):
        for j in range(d):
            for k in range(d):
                s = (wreath_bracket(wreath_bracket(e[i], e[j]), e[k]) + wreath_bracket(wreath_bracket(e[j], e[k]), e[i])
                     + wreath_bracket(wreath_bracket(e[k], e[i]), e[j]))
                assert s.is_zero()


@given(comms, comms)
def test_metabelian_law(u, v):
    assert wreath_bracket(embed(u), embed(v)).is_zero()


@given(elements, elements, polynomials(D, 2, 3))
def test_membership_closure(u, v, p):
    br = wreath_bracket(embed(u), embed(v))
    assert in_commutator_ideal(br)
    assert in_commutator_ideal(module_action(br, p))


@given(comms, polynomials(D, 2, 3), polynomials(D, 2, 3))
def test_module_action_associative(u, p, q):
    U = embed(u)
    assert module_action(module_action(U, p), q) == module_action(U, p * q)


@given(elements)
def test_round_trip(e):
    assert lie_from_wreath(embed(e)) == e


@given(elements, elements)
def test_embed_is_linear(u, v):
    assert embed(u + v) == embed(u) + embed(v)
