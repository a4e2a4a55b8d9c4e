"""JSON-friendly rendering of exact and interval quantities.

Non-integer numeric fields are emitted as decimal strings with an explicit
enclosure radius, never as bare floats: the package's numeric claims are
interval claims and the serialization keeps them that way.
"""

from __future__ import annotations

import decimal
from fractions import Fraction

from .intervals import CBox, RI


def frac_to_decimal(f: Fraction, digits: int = 40,
                    rounding: str = decimal.ROUND_HALF_EVEN) -> str:
    if f == 0:
        return "0"
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = rounding
        d = decimal.Decimal(f.numerator) / decimal.Decimal(f.denominator)
    return str(d)


def frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def ri_json(x: RI, digits: int = 40) -> dict:
    return {
        "mid": frac_to_decimal(x.mid, digits),
        # radius rounded up so the reported enclosure stays valid
        "rad": frac_to_decimal(x.rad, 3, decimal.ROUND_UP),
    }


def cbox_json(z: CBox, digits: int = 40) -> dict:
    return {"re": ri_json(z.re, digits), "im": ri_json(z.im, digits)}
