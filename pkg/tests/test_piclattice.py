"""Lattice contexts, the Coble pairing and Euler characteristics."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import weylgale as wg
from weylgale.errors import ContextError, DimensionError


def test_context_invariants():
    ctx = wg.make_context(2, 9)
    k = ctx.canonical_class()
    assert k == ctx.from_coeffs((-3,) + (-1,) * 9)  # -3h + sum e_i
    assert wg.coble_pair(wg.make_context(5, 9).hyperplane(), wg.make_context(5, 9).hyperplane()) == 4


def test_context_rejects_too_few_points():
    with pytest.raises(DimensionError):
        wg.make_context(2, 1)


def test_pairing_basics():
    ctx = wg.make_context(5, 9)
    h = ctx.hyperplane()
    alpha0 = wg.simple_root(ctx, 0)
    assert wg.coble_pair(alpha0, alpha0) == -2
    k = ctx.canonical_class()
    assert wg.coble_pair(k, k) == 0  # (n-1)(5-n) at n = 5
    assert wg.coble_pair(h, ctx.exceptional(3)) == 0
    assert wg.coble_pair(ctx.exceptional(2), ctx.exceptional(2)) == -1


def test_cross_context_pairing_rejected():
    a = wg.make_context(2, 9).hyperplane()
    b = wg.make_context(2, 8).hyperplane()
    with pytest.raises(ContextError):
        wg.coble_pair(a, b)


@given(
    st.integers(-20, 20),
    st.integers(-20, 20),
    st.integers(-20, 20),
    st.lists(st.integers(-20, 20), min_size=18, max_size=18),
)
@settings(max_examples=60, deadline=None)
def test_pairing_bilinear_symmetric(s, t, d0, ms):
    ctx = wg.make_context(3, 8)
    u = ctx.from_coeffs([d0] + ms[:8])
    v = ctx.from_coeffs([ms[8]] + ms[9:17])
    w = ctx.from_coeffs([ms[17]] + ms[:8][::-1])
    assert wg.coble_pair(u, v) == wg.coble_pair(v, u)
    assert wg.coble_pair(s * u + t * v, w) == s * wg.coble_pair(u, w) + t * wg.coble_pair(v, w)


@pytest.mark.parametrize("n,k", [(2, 6), (2, 10), (3, 8), (5, 9)])
@pytest.mark.parametrize("c", [0, 1, Fraction(-3, 2)])
def test_pairing_family_roots_square_minus_two(n, k, c):
    # every Cremona root has square -2 for each parameter value
    ctx = wg.make_context(n, k)
    form = wg.pairing_family(ctx, c)
    for subset in itertools.combinations(range(1, k + 1), n + 1):
        root = ctx.hyperplane() - sum((ctx.exceptional(i) for i in subset), ctx.zero())
        assert form.pair(root, root) == -2


def test_pairing_family_values():
    ctx = wg.make_context(2, 6)
    form = wg.pairing_family(ctx, 1)
    h, e1, e2 = ctx.hyperplane(), ctx.exceptional(1), ctx.exceptional(2)
    assert form.pair(h, h) == 10
    assert form.pair(h, e1) == 3
    assert form.pair(e1, e1) == 0
    assert form.pair(e1, e2) == 1
    zero = wg.pairing_family(ctx, 0)
    for a in ctx.basis():
        for b in ctx.basis():
            assert zero.pair(a, b) == wg.coble_pair(a, b)


def test_chi_line_bundle():
    ctx = wg.surface_context(9)
    assert wg.chi_line_bundle(ctx.zero()) == 1
    h = ctx.hyperplane()
    assert wg.chi_line_bundle(h) == 3
    assert wg.chi_line_bundle(h) == wg.coble_pair(h, h) + 2
    full = h - sum((ctx.exceptional(i) for i in range(1, 10)), ctx.zero())
    assert wg.chi_line_bundle(full) == 3 - 9


def test_chi_line_bundle_needs_surface():
    with pytest.raises(DimensionError):
        wg.chi_line_bundle(wg.make_context(3, 8).hyperplane())


def test_chi_sheaf_matches_line_bundle_case():
    ctx = wg.surface_context(7)
    d = ctx.from_coeffs((3, 1, 1, 2, 0, -1, 0, 1))
    triple = wg.ChernTriple(1, d, Fraction(wg.coble_pair(d, d), 2))
    assert wg.chi_sheaf(triple) == wg.chi_line_bundle(d)


def test_chi_sheaf_reference_values():
    ctx = wg.surface_context(9)
    k = ctx.canonical_class()
    ksq = wg.coble_pair(k, k)
    data = wg.ChernTriple(2, -1 * k, Fraction(ksq, 2) - 2)
    assert wg.chi_sheaf(data) == ksq  # = 0 on nine points
    twisted = wg.ChernTriple(2, k + 2 * ctx.hyperplane(), Fraction(ksq, 2) - 4)
    assert wg.chi_sheaf(twisted) == 1


@pytest.mark.parametrize("k,dim", [(6, 2), (8, 4), (9, 5)])
def test_moduli_dimension(k, dim):
    assert wg.moduli_dimension(k) == dim
