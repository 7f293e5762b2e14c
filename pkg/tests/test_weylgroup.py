"""Reflections, reduction, orbits and the dual-lattice isometry."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import weylgale as wg
from weylgale.errors import BoundError, DomainError, RootError


def surface(k):
    return wg.surface_context(k)


def test_reflect_basics():
    ctx = wg.make_context(5, 9)
    a0 = wg.simple_root(ctx, 0)
    e1 = ctx.exceptional(1)
    image = wg.reflect(a0, e1)
    want = ctx.hyperplane() - sum((ctx.exceptional(j) for j in range(2, 7)), ctx.zero())
    assert image == want
    assert wg.reflect(a0, ctx.canonical_class()) == ctx.canonical_class()
    h_img = wg.reflect(a0, ctx.hyperplane())
    n = 5
    want_h = n * ctx.hyperplane() - (n - 1) * sum(
        (ctx.exceptional(j) for j in range(1, 7)), ctx.zero()
    )
    assert h_img == want_h
    assert wg.reflect(a0, image) == e1  # involution


def test_reflect_rejects_non_root():
    ctx = surface(6)
    with pytest.raises(RootError):
        wg.reflect(ctx.hyperplane(), ctx.exceptional(1))


def test_cremona_examples():
    s9 = surface(9)
    h = s9.hyperplane()
    e = [None] + [s9.exceptional(i) for i in range(1, 10)]
    fixed = wg.cremona((1, 2, 3), e[5])
    assert fixed == e[5]
    moved = wg.cremona((4, 5, 6), 2 * h - e[4] - e[5] - e[6] - e[7] - e[8] - e[9])
    assert moved == h - e[7] - e[8] - e[9]
    assert wg.cremona((1, 2, 3), h) == 2 * h - e[1] - e[2] - e[3]
    with pytest.raises(IndexError):
        wg.cremona((1, 2), h)


def test_apply_word_identity_and_involution():
    ctx = surface(8)
    v = ctx.from_coeffs((5, 3, 2, 2, 1, 0, -1, 0, 4))
    assert wg.apply_word((), v) == v
    for i in range(8):
        assert wg.apply_word((i, i), v) == v


def test_transposition_from_cremona_triples():
    # conjugating one Cremona generator by another gives the transposition
    ctx = surface(6)
    word_like = lambda v: wg.cremona((1, 2, 4), wg.cremona((1, 2, 5), wg.cremona((1, 2, 4), v)))
    swapped = [word_like(b) for b in ctx.basis()]
    tau = lambda v: wg.apply_word((4,), v)  # swaps e_4, e_5
    assert swapped == [tau(b) for b in ctx.basis()]


@pytest.mark.parametrize("n,k", [(2, 9), (4, 8), (5, 9)])
def test_relations(n, k):
    report = wg.verify_relations(wg.make_context(n, k))
    assert report.all_pass
    # the Cremona node attaches exactly to the (n+1)-st transposition node
    adjacent = [j for i, j, order, _ in report.braids if i == 0 and order == 3]
    assert adjacent == [n + 1]


@given(st.lists(st.integers(0, 8), min_size=1, max_size=20), st.integers(0, 10**6))
@settings(max_examples=50, deadline=None)
def test_words_preserve_pairing_and_k(word, salt):
    ctx = surface(9)
    rng = random.Random(salt)
    u = ctx.from_coeffs([rng.randint(-9, 9) for _ in range(10)])
    v = ctx.from_coeffs([rng.randint(-9, 9) for _ in range(10)])
    assert wg.coble_pair(wg.apply_word(word, u), wg.apply_word(word, v)) == wg.coble_pair(u, v)
    kc = ctx.canonical_class()
    assert wg.apply_word(word, kc) == kc


ORBIT_SIZES = {4: 10, 5: 16, 6: 27, 7: 56, 8: 240}


@pytest.mark.parametrize("k", sorted(ORBIT_SIZES))
def test_orbit_sizes_with_independent_solver(k):
    ctx = surface(k)
    orbit = wg.orbit_enumerate(ctx.exceptional(1), 30)
    assert len(orbit) == ORBIT_SIZES[k]
    # independent: all integral solutions of e^2 = e.K = -1 within the
    # two-sided quadratic window (for k <= 8 every solution is exceptional)
    sols = set()
    a = 9 - k
    d = 0
    while a * d * d - 6 * d + 1 - k <= 0 or d == 0:
        target_sum, target_sq = 3 * d - 1, d * d + 1

        def rec(prefix, s, q):
            if len(prefix) == k:
                if s == 0 and q == 0:
                    sols.add((d,) + prefix)
                return
            for v in range(-q, q + 1):
                if v * v <= q:
                    rec(prefix + (v,), s - v, q - v * v)

        rec((), target_sum, target_sq)
        d += 1
    assert {c.coeffs for c in orbit} == sols


def test_orbit_closed_and_invariants():
    ctx = surface(6)
    orbit = wg.orbit_enumerate(ctx.exceptional(1), 10)
    keys = {c.coeffs for c in orbit}
    kc = ctx.canonical_class()
    for c in orbit:
        assert wg.coble_pair(c, c) == -1 and wg.coble_pair(c, kc) == -1
        for i in range(6):
            img = wg.apply_generator(ctx, i, c)
            if img.deg <= 10:
                assert img.coeffs in keys
    assert [c.coeffs for c in orbit] == sorted(keys)


def test_orbit_bound_error():
    ctx = surface(6)
    with pytest.raises(BoundError):
        wg.orbit_enumerate(2 * ctx.hyperplane(), 1)


def test_reduce_fixed_points_and_roundtrip():
    s9 = surface(9)
    h = s9.hyperplane()
    e = [None] + [s9.exceptional(i) for i in range(1, 10)]
    red = wg.cremona_reduce(h - e[1])
    assert red.canonical == h - e[1]
    big = 2 * h - e[4] - e[5] - e[6] - e[7] - e[8] - e[9]
    red = wg.cremona_reduce(big)
    assert red.canonical == h - e[1] - e[2] - e[3]
    assert wg.apply_word(red.word, big) == red.canonical
    assert wg.apply_word(wg.inverse_word(red.word), red.canonical) == big
    # the image of e_1 under the Cremona generator drops back into the line orbit
    img = wg.apply_generator(s9, 0, e[1])
    assert img == h - e[2] - e[3]
    assert wg.cremona_reduce(img).canonical.deg <= 1


def test_classify():
    s9 = surface(9)
    h = s9.hyperplane()
    e = [None] + [s9.exceptional(i) for i in range(1, 10)]
    assert wg.orbit_classify(h) is wg.OrbitFamily.CUBIC
    assert wg.orbit_classify(h - e[4]) is wg.OrbitFamily.CONIC
    assert wg.orbit_classify(2 * h - e[1] - e[2] - e[3] - e[4] - e[5]) is wg.OrbitFamily.LINE
    assert wg.orbit_classify(e[2] - e[7]) is wg.OrbitFamily.MINUS_TWO
    # negatives and anticanonical shifts stay in the root orbit
    assert wg.orbit_classify(-1 * (h - e[1] - e[2] - e[3])) is wg.OrbitFamily.MINUS_TWO
    kc = s9.canonical_class()
    assert wg.orbit_classify(-1 * kc - (h - e[1] - e[2] - e[3])) is wg.OrbitFamily.MINUS_TWO


def test_classify_degree_stuck_class_is_other():
    s11 = surface(11)
    d = s11.from_coeffs((3,) + (1,) * 10 + (-1,))
    assert wg.orbit_classify(d) is wg.OrbitFamily.OTHER


def test_kperp_isometry_on_roots_and_random():
    s9 = surface(9)
    t9 = wg.make_context(5, 9)
    assert wg.kperp_isometry(wg.simple_root(s9, 0)) == wg.simple_root(t9, 0)
    for i in range(1, 9):
        assert wg.kperp_isometry(wg.simple_root(s9, i)) == wg.simple_root(t9, 9 - i)
    rng = random.Random(5)
    for _ in range(40):
        u = sum((rng.randint(-5, 5) * wg.simple_root(s9, i) for i in range(9)), s9.zero())
        v = sum((rng.randint(-5, 5) * wg.simple_root(s9, i) for i in range(9)), s9.zero())
        assert wg.coble_pair(wg.kperp_isometry(u), wg.kperp_isometry(v)) == wg.coble_pair(u, v)


def test_kperp_isometry_intertwines_generators():
    s8 = surface(8)
    t8 = wg.make_context(4, 8)
    phi = wg.kperp_isometry
    for i in range(8):
        j = 0 if i == 0 else 8 - i
        for r in range(8):
            beta = wg.simple_root(s8, r)
            lhs = phi(wg.apply_generator(s8, i, beta))
            rhs = wg.apply_generator(t8, j, phi(beta))
            assert lhs == rhs


def test_kperp_isometry_domain():
    s9 = surface(9)
    with pytest.raises(DomainError):
        wg.kperp_isometry(s9.hyperplane())


def test_equivariant_map_family():
    em = wg.equivariant_map(-1, -1, 2, 5)
    src, tgt = em.source, em.target
    assert em(src.hyperplane()) == tgt.from_coeffs((-1,) + (-1,) * 9)
    # lambda = a(n-1) - b(n+1) = 2 here
    assert em(src.canonical_class()) == (2 * (-1) - (-1) * 3) * tgt.canonical_class()
    for i in range(9):
        assert em(wg.simple_root(src, i)) == 2 * wg.kperp_isometry(wg.simple_root(src, i))


def test_equivariant_map_general_parameters():
    em = wg.equivariant_map(2, 3, 3, 4)  # k = 9, lambda = 2*3 - 3*5 = -9
    src, tgt = em.source, em.target
    assert em(src.canonical_class()) == (2 * 2 - 3 * 4) * tgt.canonical_class()
    lam = 2 * (4 - 1) - 3 * (4 + 1)
    for i in range(9):
        assert em(wg.simple_root(src, i)) == lam * wg.kperp_isometry(wg.simple_root(src, i))
