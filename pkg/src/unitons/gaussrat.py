"""Exact Gaussian-rational scalars.

A GaussRat is an element of Q(i): a complex number whose real and imaginary
parts are arbitrary-precision rationals.  All field operations are exact;
gmpy2.mpq keeps every component in lowest terms with a positive denominator.

Text form: ``a/b+c/di`` with optional signs and omitted unit parts, e.g.
``"1"``, ``"-i"``, ``"3/2-1/3i"``.  ``parse_gaussrat`` and ``format_gaussrat``
round-trip bit-exactly.
"""

from __future__ import annotations

import re

from gmpy2 import mpq

from .errors import ParseError

_RAT = r"\d+(?:/\d+)?"
_GAUSSRAT_RE = re.compile(
    rf"^(?P<re_part>[+-]?{_RAT})?(?P<im_part>(?:[+-]?{_RAT}|[+-])?i)?$"
)


class GaussRat:
    """An exact complex rational re + im*i."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", mpq(re))
        object.__setattr__(self, "im", mpq(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    # -- algebra ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero GaussRat")
        return GaussRat(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def abs2(self):
        """|x|^2 as an exact nonnegative rational."""
        return self.re * self.re + self.im * self.im

    # -- comparisons / hashing --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, type(mpq(0)))):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    # -- conversions -------------------------------------------------------

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({format_gaussrat(self)!r})"

    def __str__(self):
        return format_gaussrat(self)


def _coerce(value) -> GaussRat:
    if isinstance(value, GaussRat):
        return value
    return GaussRat(value)


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


def _format_rat(q) -> str:
    return str(q)  # mpq prints p or p/q in lowest terms


def format_gaussrat(x: GaussRat) -> str:
    """Canonical text form; omits zero parts and unit imaginary coefficients."""
    if x.im == 0:
        return _format_rat(x.re)
    if x.im == 1:
        im_txt = "i"
    elif x.im == -1:
        im_txt = "-i"
    else:
        im_txt = _format_rat(x.im) + "i"
    if x.re == 0:
        return im_txt
    sign = "+" if x.im > 0 else ""
    return _format_rat(x.re) + sign + im_txt


def parse_gaussrat(text: str) -> GaussRat:
    """Parse the ``a/b+c/di`` text form."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    s = text.strip().replace(" ", "")
    if not s:
        raise ParseError("empty GaussRat literal")
    m = _GAUSSRAT_RE.match(s)
    if not m or (m.group("re_part") is None and m.group("im_part") is None):
        raise ParseError(f"bad GaussRat literal: {text!r}")
    re_txt = m.group("re_part")
    im_txt = m.group("im_part")
    re_val = mpq(re_txt) if re_txt else mpq(0)
    if im_txt is None:
        im_val = mpq(0)
    else:
        body = im_txt[:-1]  # strip trailing 'i'
        if body in ("", "+"):
            im_val = mpq(1)
        elif body == "-":
            im_val = mpq(-1)
        else:
            im_val = mpq(body)
    try:
        return GaussRat(re_val, im_val)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad GaussRat literal: {text!r}") from exc
