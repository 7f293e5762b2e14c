"""JSON and CSV encodings.

Exact rationals are encoded as ints when integral and as "p/q" strings
otherwise.  A divisor class is {"n": int, "k": int, "coeffs": [d, m1,
..., mk]} in the d*H - sum m_i E_i convention; a point configuration is
{"s": int, "k": int, "rows": [[...], ...]}.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from ._linalg import frac
from .errors import DomainError
from .galedual import PointConfiguration
from .piclattice import LatticeContext, PicClass


def encode_rational(x):
    x = frac(x)
    if isinstance(x, int):
        return x
    return f"{x.numerator}/{x.denominator}"


def decode_rational(v):
    if isinstance(v, bool):
        raise DomainError("booleans are not rationals")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        return frac(Fraction(v))
    raise DomainError(f"cannot decode rational from {v!r}")


def class_to_obj(cls: PicClass) -> dict:
    return {
        "n": cls.ctx.n,
        "k": cls.ctx.k,
        "coeffs": [encode_rational(c) for c in cls.coeffs],
    }


def class_from_obj(obj: dict) -> PicClass:
    ctx = LatticeContext(int(obj["n"]), int(obj["k"]))
    return PicClass(ctx, tuple(decode_rational(c) for c in obj["coeffs"]))


def class_from_json(text: str) -> PicClass:
    return class_from_obj(json.loads(text))


def config_to_obj(cfg: PointConfiguration) -> dict:
    return {
        "s": cfg.s,
        "k": cfg.k,
        "rows": [[encode_rational(x) for x in row] for row in cfg.rows],
    }


def config_from_obj(obj: dict) -> PointConfiguration:
    rows = [[decode_rational(x) for x in row] for row in obj["rows"]]
    cfg = PointConfiguration(int(obj["s"]), int(obj["k"]), tuple(tuple(r) for r in rows))
    return cfg


def config_from_json(text: str) -> PointConfiguration:
    return config_from_obj(json.loads(text))


def config_from_csv(text: str) -> PointConfiguration:
    rows = []
    for record in csv.reader(io.StringIO(text)):
        if not record or all(not cell.strip() for cell in record):
            continue
        rows.append([decode_rational(cell.strip()) for cell in record])
    if not rows:
        raise DomainError("empty coordinate table")
    return PointConfiguration.from_rows(rows)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
