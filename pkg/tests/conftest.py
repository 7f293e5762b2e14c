import random
from fractions import Fraction

import pytest
import sympy as sp

from weylgale import PointConfiguration, general_position


@pytest.fixture
def rng():
    return random.Random(20240817)


def sympy_matrix(rows):
    return sp.Matrix([[sp.Rational(Fraction(x)) for x in row] for row in rows])


def sympy_nullspace_columns(rows):
    """Independent exact kernel oracle."""
    return sp.Matrix(rows).T.nullspace()


def sympy_general_position(rows, s):
    m = sympy_matrix(rows)
    from itertools import combinations

    for subset in combinations(range(m.rows), s + 1):
        if m[list(subset), :].det() == 0:
            return False
    return True


def random_general_config(rng, k, s, lo=-6, hi=6, tries=300):
    for _ in range(tries):
        rows = [[rng.randint(lo, hi) for _ in range(s + 1)] for _ in range(k)]
        try:
            cfg = PointConfiguration.from_rows(rows)
        except Exception:
            continue
        if general_position(cfg):
            return cfg
    raise RuntimeError("sampling failed")
