"""Gale duality, general position and projective equivalence."""

import pytest
import sympy as sp

import weylgale as wg
from weylgale.errors import DegenerateError
from weylgale.galedual import _normalize

from conftest import random_general_config, sympy_general_position, sympy_matrix

FRAME6 = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [1, 4, 9]]

# canonical reduced-echelon kernel of the frame configuration, frozen from
# the independent sympy nullspace oracle (same column space, canonical
# normalization)
FRAME6_DUAL = (
    (-1, -1, -1),
    (-1, -2, -4),
    (-1, -3, -9),
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
)


def test_general_position_examples():
    assert wg.general_position(wg.PointConfiguration.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]))
    collinear = wg.PointConfiguration.from_rows([[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]])
    assert not wg.general_position(collinear)


def test_general_position_matches_minor_oracle(rng):
    for _ in range(25):
        rows = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(9)]
        try:
            cfg = wg.PointConfiguration.from_rows(rows)
        except Exception:
            continue
        assert wg.general_position(cfg) == sympy_general_position(rows, 2)


def test_degenerate_configuration_rejected():
    # coincident points pass construction but fail general position
    doubled = wg.PointConfiguration.from_rows([[1, 0, 0], [2, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert not wg.general_position(doubled)
    with pytest.raises(DegenerateError):
        wg.PointConfiguration.from_rows([[1, 0], [0, 1], [0, 0], [1, 1]])
    with pytest.raises(DegenerateError):
        wg.PointConfiguration.from_rows([[1, 0, 1], [2, 0, 2], [1, 0, -1], [3, 0, 1]])


def test_golden_dual_and_kernel_oracle():
    cfg = wg.PointConfiguration.from_rows(FRAME6)
    dual = wg.gale_dual(cfg)
    assert dual.rows == FRAME6_DUAL
    assert wg.duality_certificate(cfg, dual)
    # oracle: sympy nullspace spans the same column space
    lib = sympy_matrix(dual.rows)
    ora = sp.Matrix.hstack(*sympy_matrix(FRAME6).T.nullspace())
    assert sp.Matrix.hstack(lib, ora).rank() == lib.rank() == ora.rank() == 3


def test_dual_shape_and_rank():
    cfg = wg.PointConfiguration.from_rows(FRAME6)
    dual = wg.gale_dual(cfg)
    assert (dual.k, dual.s) == (6, 2)


def test_degenerate_dual_rejected():
    cfg = wg.PointConfiguration.from_rows([[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]])
    with pytest.raises(DegenerateError):
        wg.gale_dual(cfg)


def test_round_trip_golden_and_random(rng):
    cfg = wg.PointConfiguration.from_rows(FRAME6)
    assert wg.dual_round_trip(cfg)
    for k, s in ((9, 2), (7, 3), (6, 2)):
        for _ in range(6):
            sample = random_general_config(rng, k, s)
            assert wg.dual_round_trip(sample)
            assert wg.general_position(wg.gale_dual(sample))


def test_projective_equivalence_scaling_and_transform(rng):
    cfg = random_general_config(rng, 7, 2)
    assert wg.projective_equivalent(cfg, cfg)
    scaled = wg.PointConfiguration.from_rows(
        [[(i + 2) * x for x in row] for i, row in enumerate(cfg.rows)]
    )
    assert wg.projective_equivalent(cfg, scaled)
    m = [[1, 2, 0], [0, 1, 0], [3, 0, 1]]
    moved = wg.PointConfiguration.from_rows(
        [
            [sum(row[a] * m[a][b] for a in range(3)) for b in range(3)]
            for row in cfg.rows
        ]
    )
    assert wg.projective_equivalent(cfg, moved)


def test_projective_inequivalence_certified(rng):
    c1 = wg.PointConfiguration.from_rows(FRAME6)
    rows = [r[:] for r in FRAME6]
    rows[5] = [1, 5, 7]
    c2 = wg.PointConfiguration.from_rows(rows)
    assert wg.general_position(c2)
    assert not wg.projective_equivalent(c1, c2)
    assert _normalize(c1) != _normalize(c2)


def test_equivalence_is_equivalence_relation(rng):
    a = random_general_config(rng, 6, 2)
    b = wg.PointConfiguration.from_rows([[3 * x for x in row] for row in a.rows])
    c = wg.PointConfiguration.from_rows([[x * 1 for x in row] for row in b.rows])
    assert wg.projective_equivalent(a, b)
    assert wg.projective_equivalent(b, a)
    assert wg.projective_equivalent(b, c) and wg.projective_equivalent(a, c)


def test_normalization_idempotent(rng):
    cfg = random_general_config(rng, 8, 2)
    once = _normalize(cfg)
    again = _normalize(wg.PointConfiguration.from_rows(once))
    assert once == again
