"""Rational functions of one variable over Q(i), and vectors thereof.

Polynomials are coefficient lists in ascending degree; the empty list is the
zero polynomial.  A RatFun keeps gcd(num, den) = 1 with a monic denominator
after every operation, so equality is representational equality.
"""

from __future__ import annotations

from .errors import DivisionByZeroFunction, ParseError, PoleAtPoint
from .gaussrat import ONE, ZERO, GaussRat, format_gaussrat, parse_gaussrat

Poly = tuple  # tuple of GaussRat, ascending degree, no trailing zeros


# -- polynomial kernel -----------------------------------------------------


def ptrim(coeffs) -> Poly:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def pzero() -> Poly:
    return ()


def pconst(c: GaussRat) -> Poly:
    return (c,) if c else ()


def padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return ptrim(out)


def pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def psub(a: Poly, b: Poly) -> Poly:
    return padd(a, pneg(b))


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return ptrim(out)


def pscale(a: Poly, c: GaussRat) -> Poly:
    if not c:
        return ()
    return ptrim(x * c for x in a)


def pdivmod(a: Poly, b: Poly):
    """Euclidean division; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ZERO] * max(0, len(a) - len(b) + 1)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and any(r):
        if not r[-1]:
            r.pop()
            continue
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for i, cb in enumerate(b):
            r[shift + i] = r[shift + i] - c * cb
        r.pop()
    return ptrim(q), ptrim(r)


def pmonic(a: Poly) -> Poly:
    if not a:
        return ()
    lead = a[-1]
    if lead == ONE:
        return a
    return tuple(c / lead for c in a)


def pgcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    a, b = ptrim(a), ptrim(b)
    while b:
        _, r = pdivmod(a, b)
        a, b = b, pmonic(r)
    return pmonic(a)


def pderiv(a: Poly) -> Poly:
    return ptrim(GaussRat(i) * c for i, c in enumerate(a) if i > 0)


def peval(a: Poly, z: GaussRat) -> GaussRat:
    acc = ZERO
    for c in reversed(a):
        acc = acc * z + c
    return acc


def peval_complex(a: Poly, z: complex) -> complex:
    acc = 0j
    for c in reversed(a):
        acc = acc * z + complex(c)
    return acc


# -- rational functions ----------------------------------------------------


class RatFun:
    """A quotient of polynomials over Q(i), always in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(ONE,), *, _normalized=False):
        if _normalized:
            object.__setattr__(self, "num", num)
            object.__setattr__(self, "den", den)
            return
        num = ptrim(_as_poly(num))
        den = ptrim(_as_poly(den))
        if not den:
            raise DivisionByZeroFunction("zero denominator polynomial")
        if not num:
            object.__setattr__(self, "num", ())
            object.__setattr__(self, "den", (ONE,))
            return
        g = pgcd(num, den)
        if len(g) > 1:
            num, _ = pdivmod(num, g)
            den, _ = pdivmod(den, g)
        lead = den[-1]
        if lead != ONE:
            num = tuple(c / lead for c in num)
            den = tuple(c / lead for c in den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "RatFun":
        return RatFun((), (ONE,), _normalized=True)

    @staticmethod
    def const(c) -> "RatFun":
        c = c if isinstance(c, GaussRat) else GaussRat(c)
        return RatFun(pconst(c), (ONE,), _normalized=True)

    @staticmethod
    def z() -> "RatFun":
        return RatFun((ZERO, ONE), (ONE,), _normalized=True)

    @staticmethod
    def from_coeffs(coeffs) -> "RatFun":
        """Polynomial with the given ascending coefficients (ints ok)."""
        return RatFun([_as_gaussrat(c) for c in coeffs])

    # -- algebra -----------------------------------------------------------

    def __add__(self, other):
        other = _as_ratfun(other)
        return RatFun(
            padd(pmul(self.num, other.den), pmul(other.num, self.den)),
            pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_ratfun(other)
        return RatFun(
            psub(pmul(self.num, other.den), pmul(other.num, self.den)),
            pmul(self.den, other.den),
        )

    def __rsub__(self, other):
        return _as_ratfun(other) - self

    def __mul__(self, other):
        other = _as_ratfun(other)
        return RatFun(pmul(self.num, other.num), pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfun(other)
        if other.is_zero():
            raise DivisionByZeroFunction("division by the zero function")
        return RatFun(pmul(self.num, other.den), pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return _as_ratfun(other) / self

    def __neg__(self):
        return RatFun(pneg(self.num), self.den, _normalized=True)

    def derivative(self, order: int = 1) -> "RatFun":
        """Exact formal derivative, iterated ``order`` times."""
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        f = self
        for _ in range(order):
            f = RatFun(
                psub(pmul(pderiv(f.num), f.den), pmul(f.num, pderiv(f.den))),
                pmul(f.den, f.den),
            )
        return f

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def degree(self) -> int:
        """Degree of the numerator (-1 for the zero function)."""
        return len(self.num) - 1

    def is_polynomial(self) -> bool:
        return self.den == (ONE,)

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    # -- evaluation ---------------------------------------------------------

    def has_pole_at(self, z: GaussRat) -> bool:
        return not peval(self.den, z)

    def eval(self, z: GaussRat) -> GaussRat:
        d = peval(self.den, z)
        if not d:
            raise PoleAtPoint(f"pole at z = {z}")
        return peval(self.num, z) / d

    def eval_complex(self, z: complex) -> complex:
        return peval_complex(self.num, z) / peval_complex(self.den, z)

    # -- serialization -------------------------------------------------------

    def to_json(self):
        return {
            "num": [format_gaussrat(c) for c in self.num],
            "den": [format_gaussrat(c) for c in self.den],
        }

    @staticmethod
    def from_json(obj) -> "RatFun":
        if not isinstance(obj, dict) or "num" not in obj or "den" not in obj:
            raise ParseError(f"bad RatFun object: {obj!r}")
        num = [parse_gaussrat(c) for c in obj["num"]]
        den = [parse_gaussrat(c) for c in obj["den"]]
        if not ptrim(den):
            raise ParseError("RatFun denominator is the zero polynomial")
        return RatFun(num, den)

    def __repr__(self):
        if self.is_zero():
            return "RatFun(0)"
        num = "+".join(f"({c})z^{i}" if i else f"({c})" for i, c in enumerate(self.num) if c)
        if self.is_polynomial():
            return f"RatFun({num})"
        den = "+".join(f"({c})z^{i}" if i else f"({c})" for i, c in enumerate(self.den) if c)
        return f"RatFun(({num})/({den}))"


def _as_gaussrat(c) -> GaussRat:
    return c if isinstance(c, GaussRat) else GaussRat(c)


def _as_poly(coeffs) -> Poly:
    return tuple(_as_gaussrat(c) for c in coeffs)


def _as_ratfun(value) -> RatFun:
    if isinstance(value, RatFun):
        return value
    if isinstance(value, (int, GaussRat)):
        return RatFun.const(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to RatFun")


RF_ZERO = RatFun.zero()


# -- meromorphic vectors ---------------------------------------------------


class MeroVector:
    """An n-tuple of rational functions: a meromorphic map into C^n."""

    __slots__ = ("coords", "n")

    def __init__(self, coords):
        coords = tuple(_as_ratfun(c) for c in coords)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "n", len(coords))

    def __setattr__(self, name, value):
        raise AttributeError("MeroVector is immutable")

    @staticmethod
    def zero(n: int) -> "MeroVector":
        return MeroVector([RF_ZERO] * n)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("ambient dimension mismatch")
        return MeroVector([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        if self.n != other.n:
            raise ValueError("ambient dimension mismatch")
        return MeroVector([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return MeroVector([-c for c in self.coords])

    def scale(self, c) -> "MeroVector":
        f = _as_ratfun(c)
        return MeroVector([f * x for x in self.coords])

    def derivative(self, order: int = 1) -> "MeroVector":
        return MeroVector([c.derivative(order) for c in self.coords])

    def has_pole_at(self, z: GaussRat) -> bool:
        return any(c.has_pole_at(z) for c in self.coords)

    def eval(self, z: GaussRat):
        return [c.eval(z) for c in self.coords]

    def eval_complex(self, z: complex):
        return [c.eval_complex(z) for c in self.coords]

    def coefficient_vectors(self):
        """Numerator coefficient vectors after clearing the common denominator.

        Returns a list of C^n vectors (lists of GaussRat) whose exact span is
        the constant subspace swept out by this vector as z varies.
        """
        den = (ONE,)
        for c in self.coords:
            g = pgcd(den, c.den)
            extra, _ = pdivmod(c.den, g)
            den = pmul(den, extra)
        cleared = []
        for c in self.coords:
            q, r = pdivmod(den, c.den)
            assert not r
            cleared.append(pmul(c.num, q))
        depth = max((len(p) for p in cleared), default=0)
        out = []
        for d in range(depth):
            out.append([p[d] if d < len(p) else ZERO for p in cleared])
        return out

    def __eq__(self, other):
        if not isinstance(other, MeroVector):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def to_json(self):
        return [c.to_json() for c in self.coords]

    @staticmethod
    def from_json(obj, n: int | None = None) -> "MeroVector":
        if obj is None:
            if n is None:
                raise ParseError("null vector needs a known ambient dimension")
            return MeroVector.zero(n)
        if not isinstance(obj, list):
            raise ParseError(f"bad MeroVector object: {obj!r}")
        vec = MeroVector([RatFun.from_json(c) for c in obj])
        if n is not None and vec.n != n:
            raise ParseError(f"vector length {vec.n} != ambient dimension {n}")
        return vec

    def __repr__(self):
        return f"MeroVector({list(self.coords)!r})"
