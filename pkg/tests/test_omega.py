import pytest
from hypothesis import given, strategies as st

from strategies import partitions, symmetric_polynomials
from wdk import omega
from wdk.catalog import BIGRADED_SERIES, GRADED_SERIES
from wdk.omega import (
    NotSymmetricError,
    OmegaReductionError,
    XiLaurent,
    constants_series,
    gl2_substitute,
    hilbert_free_metabelian,
    multiplicity_series_closed,
    multiplicity_series_truncated,
    omega_nonneg,
    reconstruct,
    schur_decompose,
    schur_reconstruct,
    specialize,
)
from wdk.parsing import TZ, Z, parse_nice, parse_polynomial
from wdk.polyarith import ArityError, NiceRational, Polynomial, nice_expand


def T(text):
    return parse_polynomial(text, 3, TZ)


def TN(text):
    return parse_nice(text, 3, TZ)


def t12(text):
    return parse_polynomial(text.replace("t1", "x1").replace("t2", "x2"), 2)


def test_hilbert_coefficients():
    h2 = nice_expand(hilbert_free_metabelian(2), 4)
    assert h2.coefficient((1, 1)) == 1
    assert h2.coefficient((2, 1)) == 1
    h3 = nice_expand(hilbert_free_metabelian(3), 4)
    assert h3.coefficient((1, 1, 1)) == 2
    assert h3.coefficient((1, 0, 0)) == 1
    c3 = nice_expand(hilbert_free_metabelian(3, commutator_only=True), 4)
    assert c3.coefficient((1, 0, 0)) == 0 and c3.coefficient((0, 0, 0)) == 0
    with pytest.raises(ValueError):
        hilbert_free_metabelian(1)


def test_gl2_substitute_examples():
    z = NiceRational(parse_polynomial("x1 + 2x2", 2))
    assert gl2_substitute(z, (1,)) == TN("t1z + 2t2z")
    cube = NiceRational(parse_polynomial("x1 + x2^2 + x3^3", 3))
    assert gl2_substitute(cube, (2,)) == TN("t1^2z + t1^2t2^2z^2 + t2^6z^3")
    four = NiceRational(parse_polynomial("x1 + x2 + x3 + x4", 4))
    assert gl2_substitute(four, (1, 1)) == TN("2t1z + 2t2z")
    with pytest.raises(ArityError):
        gl2_substitute(hilbert_free_metabelian(3), (1,))


def test_schur_examples():
    assert schur_decompose(t12("t1t2")) == [((1, 1), 1)]
    assert schur_decompose(t12("t1^2 + t1t2 + t2^2")) == [((2, 0), 1)]
    assert schur_decompose(t12("(t1 + t2)^2")) == [((1, 1), 1), ((2, 0), 1)]
    with pytest.raises(NotSymmetricError):
        schur_decompose(t12("t1"))


def test_truncated_examples():
    h = constants_series((1,))
    assert multiplicity_series_truncated(h, 4).to_polynomial() == T("t1z + t1t2z^2 + t1^2t2z^3 + t1^3t2z^4")
    h = constants_series((2,))
    assert multiplicity_series_truncated(h, 3).to_polynomial() == T("t1^2z + t1^3t2z^2 + (t1^5t2 + t1^4t2^2)z^3")
    assert multiplicity_series_truncated(constants_series((1,)), 1).to_polynomial() == T("t1z")


def test_omega_nonneg_examples():
    f = XiLaurent.from_nice(TN("1/((1-t1)(1-t2))"))
    assert omega_nonneg(f) == TN("1/((1-t1)(1-t1t2))")
    assert omega_nonneg(XiLaurent.from_nice(TN("1/(1-t2)"))) == TN("1")
    g = TN("(1 + z)/(1-z)^2")
    assert omega_nonneg(XiLaurent.from_nice(g)) == g


def test_omega_budget_raises():
    h = constants_series((3,))
    with pytest.raises(OmegaReductionError):
        multiplicity_series_closed(h, budget=5)


@pytest.mark.parametrize("partition", [(1,), (2,), (1, 1)])
def test_closed_form_examples(partition):
    got = multiplicity_series_closed(constants_series(partition))
    assert got == TN(BIGRADED_SERIES[partition])


def test_reconstruction_fallback():
    h = constants_series((2,))
    assert reconstruct(h) == TN(BIGRADED_SERIES[(2,)])
    form, method = omega.multiplicity_series(h)
    assert method == "elliott" and form == TN(BIGRADED_SERIES[(2,)])


@pytest.mark.parametrize("partition", [(1,), (2,), (3,), (1, 1), (4,), (2, 1), (3, 1), (2, 2), (1, 1, 1)])
def test_closed_equals_truncated_z12(partition):
    h = constants_series(partition)
    closed = multiplicity_series_closed(h)
    assert nice_expand(closed, 12, omega.Z_WEIGHTS) == multiplicity_series_truncated(h, 12)


@pytest.mark.parametrize("partition", list(GRADED_SERIES))
def test_specialisation_matches_graded_forms(partition):
    d = sum(p + 1 for p in partition)
    n = 12 if d <= 5 else 8
    truncated = specialize(multiplicity_series_truncated(constants_series(partition), n))
    assert truncated == nice_expand(parse_nice(GRADED_SERIES[partition], 1, Z), n).coefficients_1d()


def test_specialize_closed_form():
    f = specialize(TN(BIGRADED_SERIES[(1, 1)]))
    assert f == parse_nice(GRADED_SERIES[(1, 1)], 1, Z)


# ---------------------------------------------------------------------------
# properties


@given(symmetric_polynomials())
@pytest.mark.parametrize("_", range(2))
def test_schur_reconstruction(_, p):
    assert schur_reconstruct(schur_decompose(p)) == p


@given(partitions, st.sampled_from(["lie", "commutator", "poly"]))
def test_multiplicities_nonnegative(partition, space):
    ser = multiplicity_series_truncated(constants_series(partition, space), 5)
    assert all(c >= 0 for c in ser.terms.values())
    assert all(a >= b for a, b, _ in ser.terms)


@given(partitions)
def test_skew_symmetry(partition):
    h = constants_series(partition)
    f = omega.skew(h)
    ser = nice_expand(f, 5, omega.Z_WEIGHTS).to_polynomial()
    assert omega.swap_t(ser) == -ser
