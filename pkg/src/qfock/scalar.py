"""Exact field arithmetic for rational functions in t over the Gaussian rationals.

The base variable is ``t``; the deformation parameter of every realized
algebra is ``q = t**4``, so all quarter powers of q appearing in operator
coefficients are integer powers of t and live in a single Laurent ring.

Three layers:

* :class:`GaussianRational` -- exact complex rational a + b*i,
* :class:`LaurentPoly`     -- Laurent polynomial in t with Gaussian-rational
  coefficients, stored sparsely as exponent -> coefficient,
* :class:`Scalar`          -- reduced fraction of Laurent polynomials; the
  coefficient field for all operators.

Canonical form of a Scalar: the denominator is a true polynomial (lowest
exponent zero) with leading coefficient one, sharing no polynomial factor
with the numerator.  Equality is therefore structural and decidable.
No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from ._backend import RAT, RONE, RZERO, rational, to_rational


class PoleError(ZeroDivisionError):
    """Evaluation or limit hit a vanishing denominator."""


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------


class GaussianRational:
    """An exact complex rational ``re + im*i``.

    Components are stored in lowest terms with positive denominator by the
    backend rational type.  Real-only inputs never produce imaginary parts.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, RAT) else to_rational(re)
        self.im = im if isinstance(im, RAT) else to_rational(im)

    def __add__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational(a * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def inv(self) -> "GaussianRational":
        if not self.re and not self.im:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        if not self.im:
            return GaussianRational(RONE / self.re)
        n = self.re * self.re + self.im * self.im
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        if not self.im:
            return GaussianRational(self.re**k)
        out = G_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    @property
    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __str__(self):
        re, im = self.re, self.im
        if not im:
            return str(re)
        if im == 1:
            imtxt = "i"
        elif im == -1:
            imtxt = "-i"
        else:
            imtxt = f"{im}*i"
        if not re:
            return imtxt
        sign = "+" if not imtxt.startswith("-") else ""
        return f"({re}{sign}{imtxt})"

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


def _as_gauss(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, RAT, Fraction)):
        return GaussianRational(x)
    return NotImplemented


G_ZERO = GaussianRational(0)
G_ONE = GaussianRational(1)
G_I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Sparse Laurent polynomial: map from integer t-exponent to coefficient.

    Invariant: no stored zero coefficients.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            self.c = {}
        else:
            self.c = {e: _as_gauss(v) for e, v in coeffs.items() if v}

    @staticmethod
    def _raw(c: dict) -> "LaurentPoly":
        p = LaurentPoly.__new__(LaurentPoly)
        p.c = c
        return p

    @staticmethod
    def monomial(e: int, coeff=G_ONE) -> "LaurentPoly":
        coeff = _as_gauss(coeff)
        if not coeff:
            return P_ZERO
        return LaurentPoly._raw({e: coeff})

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    @property
    def min_exp(self) -> int:
        return min(self.c) if self.c else 0

    @property
    def max_exp(self) -> int:
        return max(self.c) if self.c else 0

    @property
    def is_monomial(self) -> bool:
        return len(self.c) == 1

    def lead_coeff(self) -> GaussianRational:
        """Coefficient of the highest exponent (zero for the zero poly)."""
        return self.c[max(self.c)] if self.c else G_ZERO

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self.c)
        for e, v in other.c.items():
            s = out.get(e)
            if s is None:
                out[e] = v
            else:
                s = s + v
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly._raw(out)

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self.c.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self.c, other.c
        if not a or not b:
            return P_ZERO
        if len(a) == 1:
            ((e, v),) = a.items()
            return other.shifted(e).scaled(v)
        if len(b) == 1:
            ((e, v),) = b.items()
            return self.shifted(e).scaled(v)
        out: dict = {}
        for ea, va in a.items():
            for eb, vb in b.items():
                e = ea + eb
                x = va * vb
                s = out.get(e)
                if s is None:
                    out[e] = x
                else:
                    s = s + x
                    if s:
                        out[e] = s
                    else:
                        del out[e]
        return LaurentPoly._raw(out)

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiply by t**k."""
        if k == 0 or not self.c:
            return self
        return LaurentPoly._raw({e + k: v for e, v in self.c.items()})

    def scaled(self, g) -> "LaurentPoly":
        g = _as_gauss(g)
        if not g:
            return P_ZERO
        if g == G_ONE:
            return self
        return LaurentPoly._raw({e: v * g for e, v in self.c.items()})

    def eval_with(self, power) -> GaussianRational:
        """Evaluate given a function ``power(e) -> t0**e``."""
        out = G_ZERO
        for e, v in self.c.items():
            out = out + v * power(e)
        return out

    def at_one(self) -> GaussianRational:
        out = G_ZERO
        for v in self.c.values():
            out = out + v
        return out

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c, reverse=True):
            v = self.c[e]
            txt = str(v)
            neg = txt.startswith("-") and not txt.startswith("(")
            body = txt[1:] if neg else txt
            if e != 0:
                tpart = "t" if e == 1 else f"t^{e}"
                body = tpart if body == "1" else f"{body}*{tpart}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.c!r})"


P_ZERO = LaurentPoly._raw({})
P_ONE = LaurentPoly._raw({0: G_ONE})


def _poly_divmod(a: LaurentPoly, b: LaurentPoly):
    """Long division in the polynomial ring (both args with min_exp >= 0)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = dict(a.c)
    db = b.max_exp
    blead = b.c[db].inv()
    qd: dict = {}
    while r:
        dr = max(r)
        if dr < db:
            break
        coef = r[dr] * blead
        qd[dr - db] = coef
        for e, v in b.c.items():
            k = e + dr - db
            s = r.get(k)
            x = coef * v
            if s is None:
                r[k] = -x
            else:
                s = s - x
                if s:
                    r[k] = s
                else:
                    del r[k]
    return LaurentPoly._raw(qd), LaurentPoly._raw(r)


def _poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd in the polynomial ring (both args with min_exp >= 0)."""
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    lc = a.lead_coeff()
    if lc and lc != G_ONE:
        a = a.scaled(lc.inv())
    return a


# ---------------------------------------------------------------------------
# Scalars (rational functions)
# ---------------------------------------------------------------------------


class Scalar:
    """A reduced fraction of Laurent polynomials in t.

    Instances are immutable values; all operations are pure, so Scalars are
    safe to share across threads.  Build them through the module-level
    constructors (:func:`t_power`, :func:`qnum`, ...) or arithmetic.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, RAT, Fraction, GaussianRational)):
            num = LaurentPoly({0: num})
        if den is None:
            den = P_ONE
        elif isinstance(den, (int, RAT, Fraction, GaussianRational)):
            den = LaurentPoly({0: den})
        s = _reduced(num, den)
        self.num = s.num
        self.den = s.den

    @staticmethod
    def _raw(num: LaurentPoly, den: LaurentPoly) -> "Scalar":
        s = Scalar.__new__(Scalar)
        s.num = num
        s.den = den
        return s

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den is P_ONE and other.den is P_ONE:
            return Scalar._raw(self.num + other.num, P_ONE)
        if self.den == other.den:
            return _reduced(self.num + other.num, self.den)
        return _reduced(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if self.den is P_ONE and other.den is P_ONE:
            return Scalar._raw(self.num * other.num, P_ONE)
        return _reduced(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar._raw(-self.num, self.den)

    def inv(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("inverse of zero scalar")
        return _reduced(self.den, self.num)

    def __truediv__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __bool__(self):
        return bool(self.num)

    def __hash__(self):
        return hash((self.num, self.den))

    # -- evaluation and degrees ----------------------------------------------

    def eval_at(self, t0) -> GaussianRational:
        """Exact evaluation at a nonzero Gaussian-rational point."""
        t0 = _as_gauss(t0)
        if t0 is NotImplemented:
            raise TypeError("evaluation point must be an exact rational")
        if not t0:
            raise ValueError("cannot evaluate at t = 0 (negative exponents)")
        cache: dict = {}

        def power(e: int) -> GaussianRational:
            v = cache.get(e)
            if v is None:
                v = t0**e
                cache[e] = v
            return v

        return self.eval_with(power)

    def eval_with(self, power) -> GaussianRational:
        """Evaluate with a caller-supplied cached ``power(e) -> t0**e``."""
        n = self.num.eval_with(power)
        if self.den is P_ONE:
            return n
        d = self.den.eval_with(power)
        if not d:
            raise PoleError("denominator vanishes at the evaluation point")
        return n / d

    def limit_at_one(self) -> GaussianRational:
        """Exact limit as t -> 1; removable singularities already cancelled.

        The reduced form shares no (t - 1) factor between numerator and
        denominator, so the limit exists iff the denominator does not vanish
        at t = 1.
        """
        d = self.den.at_one()
        if not d:
            raise PoleError("non-removable pole at t = 1")
        return self.num.at_one() / d

    def degree_bounds(self) -> tuple:
        """(span of numerator exponents, span of denominator exponents)."""
        n = self.num.max_exp - self.num.min_exp
        d = self.den.max_exp - self.den.min_exp
        return (n, d)

    def num_interval(self) -> tuple:
        return (self.num.min_exp, self.num.max_exp)

    def den_interval(self) -> tuple:
        return (self.den.min_exp, self.den.max_exp)

    def __str__(self):
        if self.den is P_ONE or self.den == P_ONE:
            return str(self.num)
        ntxt = str(self.num)
        if len(self.num.c) > 1 or ntxt.startswith("-"):
            ntxt = f"({ntxt})"
        return f"{ntxt}/({self.den})"

    def __repr__(self):
        return f"Scalar<{self}>"


def _as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, RAT, Fraction, GaussianRational)):
        g = _as_gauss(x)
        if not g:
            return ZERO
        return Scalar._raw(LaurentPoly._raw({0: g}), P_ONE)
    return NotImplemented


def _reduced(num: LaurentPoly, den: LaurentPoly) -> Scalar:
    """Canonicalize num/den: monomial denominators are absorbed (they are
    units of the Laurent ring), polynomial common factors removed by gcd,
    denominator normalized to lowest exponent zero and leading coefficient
    one."""
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return ZERO
    dshift = den.min_exp
    if dshift:
        den = den.shifted(-dshift)
        num = num.shifted(-dshift)
    if den.is_monomial:
        lc = den.c[0]
        if lc != G_ONE:
            num = num.scaled(lc.inv())
        return Scalar._raw(num, P_ONE)
    nshift = num.min_exp
    npoly = num.shifted(-nshift) if nshift else num
    g = _poly_gcd(npoly, den)
    if g.max_exp > 0:
        npoly, _ = _poly_divmod(npoly, g)
        den, _ = _poly_divmod(den, g)
        dshift2 = den.min_exp
        if dshift2:
            den = den.shifted(-dshift2)
            nshift -= dshift2
        if den.is_monomial:
            lc = den.c[0]
            if lc != G_ONE:
                npoly = npoly.scaled(lc.inv())
            return Scalar._raw(npoly.shifted(nshift), P_ONE)
    lc = den.lead_coeff()
    if lc != G_ONE:
        inv = lc.inv()
        den = den.scaled(inv)
        npoly = npoly.scaled(inv)
    return Scalar._raw(npoly.shifted(nshift), den)


ZERO = Scalar.__new__(Scalar)
ZERO.num = P_ZERO
ZERO.den = P_ONE

ONE = Scalar.__new__(Scalar)
ONE.num = P_ONE
ONE.den = P_ONE


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def from_int(n: int) -> Scalar:
    return _as_scalar(n)


def from_rational(re, im=0) -> Scalar:
    """Constant scalar with exact rational real and imaginary parts."""
    return _as_scalar(GaussianRational(to_rational(re), to_rational(im)))


IMAG = _as_scalar(G_I)

_TPOW_CACHE: dict = {}


def t_power(e: int) -> Scalar:
    """The monomial t**e."""
    s = _TPOW_CACHE.get(e)
    if s is None:
        s = Scalar._raw(LaurentPoly._raw({e: G_ONE}), P_ONE)
        _TPOW_CACHE[e] = s
    return s


def q_power(x) -> Scalar:
    """q**x = t**(4x) for quarter-integer x.

    Raises ValueError when 4x is not an integer.
    """
    x4 = _quarter(x, "q_power exponent")
    return t_power(x4)


def _quarter(x, what: str) -> int:
    """Return 4x as an int, requiring x to be a quarter-integer."""
    if isinstance(x, int):
        return 4 * x
    if isinstance(x, Fraction):
        y = 4 * x
        if y.denominator == 1:
            return int(y)
    raise ValueError(f"{what} must be a quarter-integer, got {x!r}")


_QNUM_CACHE: dict = {}


def qnum(x: int) -> Scalar:
    """The q-number (x)_q = (1 - q**x)/(1 - q) for integer x.

    For x >= 0 this is the geometric sum 1 + q + ... + q**(x-1); negative
    arguments follow the same rational formula.
    """
    s = _QNUM_CACHE.get(x)
    if s is not None:
        return s
    if x >= 0:
        p = LaurentPoly._raw({4 * j: G_ONE for j in range(x)})
    else:
        p = LaurentPoly._raw({4 * j: -G_ONE for j in range(x, 0)})
    s = Scalar._raw(p, P_ONE) if p else ZERO
    _QNUM_CACHE[x] = s
    return s


def qbracket(x: int, base=1) -> Scalar:
    """The symmetric q-number [x]_{q**b} = (q**(bx) - q**(-bx))/(q**b - q**(-b)).

    ``base`` is the q-exponent b and must be a quarter-integer so that all
    monomials stay in the t-ring.  Satisfies qbracket(-x) == -qbracket(x)
    and, for every x, qnum(x) == qbracket(x, base=1/2) * q_power((x-1)/2).
    """
    b4 = _quarter(base, "qbracket base")
    if b4 == 0:
        raise ValueError("qbracket base must be nonzero")
    if x == 0:
        return ZERO
    if x < 0:
        return -qbracket(-x, base)
    p = LaurentPoly._raw({b4 * (x - 1 - 2 * j): G_ONE for j in range(x)})
    return Scalar._raw(p, P_ONE)


# ---------------------------------------------------------------------------
# Conservative degree metadata
# ---------------------------------------------------------------------------


class DegreeMeta:
    """Conservative t-degree bounds for operator entries.

    Tracks an interval [nlo, nhi] containing every numerator exponent and
    [dlo, dhi] for the denominator.  Addition uses the cleared-denominator
    rule (num of a/b + c/d is a*d + c*b), multiplication adds intervals;
    both are exact for single scalars and conservative for aggregates, so
    bounds never underestimate.
    """

    __slots__ = ("nlo", "nhi", "dlo", "dhi")

    def __init__(self, nlo=0, nhi=0, dlo=0, dhi=0):
        self.nlo = nlo
        self.nhi = nhi
        self.dlo = dlo
        self.dhi = dhi

    @staticmethod
    def of(s: Scalar) -> "DegreeMeta":
        nlo, nhi = s.num_interval()
        dlo, dhi = s.den_interval()
        return DegreeMeta(nlo, nhi, dlo, dhi)

    def __mul__(self, other: "DegreeMeta") -> "DegreeMeta":
        return DegreeMeta(
            self.nlo + other.nlo,
            self.nhi + other.nhi,
            self.dlo + other.dlo,
            self.dhi + other.dhi,
        )

    def __add__(self, other: "DegreeMeta") -> "DegreeMeta":
        return DegreeMeta(
            min(self.nlo + other.dlo, other.nlo + self.dlo),
            max(self.nhi + other.dhi, other.nhi + self.dhi),
            self.dlo + other.dlo,
            self.dhi + other.dhi,
        )

    def union(self, other: "DegreeMeta") -> "DegreeMeta":
        return DegreeMeta(
            min(self.nlo, other.nlo),
            max(self.nhi, other.nhi),
            min(self.dlo, other.dlo),
            max(self.dhi, other.dhi),
        )

    @property
    def cleared_num_span(self) -> int:
        """Span bound for the numerator after clearing denominators."""
        return (self.nhi + self.dhi) - (self.nlo + self.dlo)

    def __repr__(self):
        return f"DegreeMeta(n=[{self.nlo},{self.nhi}], d=[{self.dlo},{self.dhi}])"
