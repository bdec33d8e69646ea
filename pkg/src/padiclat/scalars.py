"""Exact scalars of the working local field.

The field is either Q_p, with elements stored as reduced integer
fractions, or F_p((T)), with elements stored as reduced fractions of
polynomials over F_p.  Both subfields are dense in their completion and
closed under every construction in this package, so all arithmetic,
valuations and comparisons are exact.  No floats anywhere.

Everything here is immutable; operations are pure functions and safe to
share between threads.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

INF = float("inf")  # valuation of zero, compares correctly against ints

_QP = "Qp"
_FPT = "FpT"


class ParseError(ValueError):
    """Malformed textual input (scalar grammar or lattice file)."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# Polynomials over F_p (dense, coefficients ascending, no leading zeros)


class GFPoly:
    """Polynomial over F_p; the building block of F_p(T) scalars."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs=()):
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("GFPoly is immutable")

    @classmethod
    def const(cls, p, c):
        return cls(p, (c,))

    @classmethod
    def monomial(cls, p, c, deg):
        return cls(p, (0,) * deg + (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def order(self):
        """Index of the lowest nonzero coefficient (T-adic order)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("order of zero polynomial is infinite")

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else 0

    def monic(self):
        if self.is_zero():
            return self
        inv = pow(self.leading(), -1, self.p)
        return GFPoly(self.p, [c * inv for c in self.coeffs])

    def shift(self, k):
        """Multiply by T^k (k >= 0)."""
        if self.is_zero():
            return self
        return GFPoly(self.p, (0,) * k + self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, GFPoly):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return GFPoly(self.p, out)

    def __neg__(self):
        return GFPoly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return GFPoly(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return GFPoly(self.p, out)

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        dd = other.degree
        inv = pow(other.leading(), -1, p)
        quo = [0] * max(0, len(rem) - dd)
        while len(rem) - 1 >= dd and any(rem):
            while rem and rem[-1] % p == 0:
                rem.pop()
            if len(rem) - 1 < dd:
                break
            k = len(rem) - 1 - dd
            f = (rem[-1] * inv) % p
            quo[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] = (rem[k + i] - f * c) % p
        return GFPoly(p, quo), GFPoly(p, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __repr__(self):
        return f"GFPoly(p={self.p}, {poly_str(self)!r})"


def poly_gcd(a: GFPoly, b: GFPoly) -> GFPoly:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_str(poly: GFPoly) -> str:
    if poly.is_zero():
        return "0"
    terms = []
    for deg, c in enumerate(poly.coeffs):
        if c == 0:
            continue
        if deg == 0:
            terms.append(str(c))
        elif deg == 1:
            terms.append("T" if c == 1 else f"{c}T")
        else:
            terms.append(f"T^{deg}" if c == 1 else f"{c}T^{deg}")
    return "+".join(terms)


_TERM_RE = re.compile(r"^(?:(\d+)\*?)?T(?:\^(\d+))?$|^(\d+)$")


def parse_poly(text: str, p: int) -> GFPoly:
    """Parse "1+2T+T^3"-style polynomials over F_p.

    Coefficients must already lie in {0..p-1}; anything else is a
    ParseError, including negative signs (there is no '-' over F_p here).
    """
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    coeffs: dict[int, int] = {}
    for raw in text.split("+"):
        term = raw.strip()
        m = _TERM_RE.match(term)
        if not m:
            raise ParseError(f"bad polynomial term {term!r}")
        if m.group(3) is not None:
            c, deg = int(m.group(3)), 0
        else:
            c = int(m.group(1)) if m.group(1) else 1
            deg = int(m.group(2)) if m.group(2) else 1
        if not 0 <= c < p:
            raise ParseError(f"coefficient {c} not in 0..{p - 1}")
        coeffs[deg] = (coeffs.get(deg, 0) + c) % p
    size = max(coeffs) + 1
    out = [0] * size
    for deg, c in coeffs.items():
        out[deg] = c
    return GFPoly(p, out)


# ---------------------------------------------------------------------------
# Field configuration


@dataclass(frozen=True)
class FieldConfig:
    """Which local field we work in: Q_p ("Qp") or F_p((T)) ("FpT")."""

    kind: str
    p: int
    display_depth: int = 8

    def __post_init__(self):
        if self.kind not in (_QP, _FPT):
            raise ValueError(f"kind must be 'Qp' or 'FpT', got {self.kind!r}")
        if not _is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.display_depth < 1:
            raise ValueError("display_depth must be >= 1")

    @property
    def is_qp(self) -> bool:
        return self.kind == _QP

    def zero(self) -> "Scalar":
        return self.from_int(0)

    def one(self) -> "Scalar":
        return self.from_int(1)

    def from_int(self, n: int) -> "Scalar":
        if self.is_qp:
            return Scalar(self, n, 1)
        return Scalar(self, GFPoly.const(self.p, n), GFPoly.const(self.p, 1))

    def uniformizer(self) -> "Scalar":
        return self.pi_pow(1)

    def pi_pow(self, k: int) -> "Scalar":
        """π^k as a scalar (π = p or T); k may be negative."""
        if self.is_qp:
            return Scalar(self, self.p**k, 1) if k >= 0 else Scalar(self, 1, self.p**-k)
        one = GFPoly.const(self.p, 1)
        mono = GFPoly.monomial(self.p, 1, abs(k))
        return Scalar(self, mono, one) if k >= 0 else Scalar(self, one, mono)


# ---------------------------------------------------------------------------
# Scalars


class Scalar:
    """Reduced fraction over Z (Qp) or F_p[T] (FpT).

    Canonical form: gcd-reduced, with positive denominator (Qp) or monic
    denominator (FpT), so equality is structural.
    """

    __slots__ = ("cfg", "num", "den")

    def __init__(self, cfg: FieldConfig, num, den):
        if cfg.is_qp:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if num == 0:
                num, den = 0, 1
            else:
                g = math.gcd(num, den)
                num //= g
                den //= g
                if den < 0:
                    num, den = -num, -den
        else:
            if den.is_zero():
                raise ZeroDivisionError("zero denominator")
            if num.is_zero():
                num, den = GFPoly(cfg.p), GFPoly.const(cfg.p, 1)
            else:
                g = poly_gcd(num, den)
                num, den = num // g, den // g
                inv = pow(den.leading(), -1, cfg.p)
                scale = GFPoly.const(cfg.p, inv)
                num, den = num * scale, den * scale
        object.__setattr__(self, "cfg", cfg)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def is_zero(self) -> bool:
        return self.num == 0 if self.cfg.is_qp else self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.cfg != self.cfg:
                raise ValueError("scalars from different fields")
            return other
        if isinstance(other, int):
            return self.cfg.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.cfg, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.cfg, -self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.cfg, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        return Scalar(self.cfg, self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.cfg.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.cfg == other.cfg and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.cfg, self.num, self.den))

    def valuation(self):
        """π-adic valuation; INF for zero."""
        if self.is_zero():
            return INF
        if self.cfg.is_qp:
            return _int_order(self.num, self.cfg.p) - _int_order(self.den, self.cfg.p)
        return self.num.order() - self.den.order()

    def __str__(self):
        if self.cfg.is_qp:
            return str(self.num) if self.den == 1 else f"{self.num}/{self.den}"
        n = poly_str(self.num)
        if self.den.degree == 0:
            return n
        return f"({n})/({poly_str(self.den)})"

    def __repr__(self):
        return f"Scalar({self}, {self.cfg.kind} p={self.cfg.p})"


def _int_order(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("order of zero")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


# ---------------------------------------------------------------------------
# Norm values: exact positive reals of the form p^e with e rational


class NormValue:
    """Either the real number 0, or p^e with an exact rational exponent e.

    Closed under multiplication, division, integer powers and exact d-th
    roots; totally ordered.  The rational exponent is what keeps values
    like |det(BᵗB)|^(1/2) exactly comparable.
    """

    __slots__ = ("p", "e")

    def __init__(self, p: int, e):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "e", None if e is None else Fraction(e))

    def __setattr__(self, name, value):
        raise AttributeError("NormValue is immutable")

    @classmethod
    def zero(cls, p: int) -> "NormValue":
        return cls(p, None)

    @classmethod
    def one(cls, p: int) -> "NormValue":
        return cls(p, 0)

    @property
    def is_zero(self) -> bool:
        return self.e is None

    @property
    def exponent(self) -> Fraction:
        if self.e is None:
            raise ValueError("zero norm value has no exponent")
        return self.e

    def _check(self, other):
        if not isinstance(other, NormValue):
            raise TypeError(f"expected NormValue, got {type(other).__name__}")
        if self.p != other.p:
            raise ValueError("norm values over different primes")
        return other

    def __mul__(self, other):
        o = self._check(other)
        if self.is_zero or o.is_zero:
            return NormValue.zero(self.p)
        return NormValue(self.p, self.e + o.e)

    def __truediv__(self, other):
        o = self._check(other)
        if o.is_zero:
            raise ZeroDivisionError("division by zero norm value")
        if self.is_zero:
            return self
        return NormValue(self.p, self.e - o.e)

    def __pow__(self, k: int):
        if self.is_zero:
            if k <= 0:
                raise ZeroDivisionError("0 to a non-positive power")
            return self
        return NormValue(self.p, self.e * k)

    def root(self, d: int) -> "NormValue":
        """Exact d-th root (d >= 1)."""
        if d < 1:
            raise ValueError("root degree must be >= 1")
        if self.is_zero:
            return self
        return NormValue(self.p, Fraction(self.e, d))

    def __eq__(self, other):
        if not isinstance(other, NormValue):
            return NotImplemented
        self._check(other)
        return self.e == other.e

    def __lt__(self, other):
        o = self._check(other)
        if self.e is None:
            return o.e is not None
        if o.e is None:
            return False
        return self.e < o.e

    def __le__(self, other):
        o = self._check(other)
        if self.e is None:
            return True
        if o.e is None:
            return False
        return self.e <= o.e

    def __gt__(self, other):
        return self._check(other).__lt__(self)

    def __ge__(self, other):
        return self._check(other).__le__(self)

    def __hash__(self):
        return hash((self.p, self.e))

    def __str__(self):
        if self.is_zero:
            return "0"
        return f"{self.p}^{self.e}"

    def __repr__(self):
        return f"NormValue({self})"

    @classmethod
    def parse(cls, text: str, p: int) -> "NormValue":
        text = text.strip()
        if text == "0":
            return cls.zero(p)
        if text == "1":
            return cls.one(p)
        m = re.match(r"^(\d+)\^(-?\d+(?:/\d+)?)$", text)
        if not m:
            raise ParseError(f"bad norm value {text!r}, expected 'p^q'")
        if int(m.group(1)) != p:
            raise ParseError(f"norm value base {m.group(1)} does not match p={p}")
        return cls(p, Fraction(m.group(2)))


# ---------------------------------------------------------------------------
# Module operations


def parse_scalar(text: str, cfg: FieldConfig) -> Scalar:
    """Parse "a/b" (Qp) or "(poly)/(poly)" (FpT); see the file format docs."""
    text = text.strip()
    if not text:
        raise ParseError("empty scalar")
    parts = text.split("/")
    if len(parts) > 2:
        raise ParseError(f"too many '/' in scalar {text!r}")

    def unwrap(s):
        s = s.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1].strip()
        return s

    if cfg.is_qp:
        try:
            num = int(unwrap(parts[0]))
            den = int(unwrap(parts[1])) if len(parts) == 2 else 1
        except ValueError as exc:
            raise ParseError(f"bad rational {text!r}") from exc
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return Scalar(cfg, num, den)
    num = parse_poly(unwrap(parts[0]), cfg.p)
    den = parse_poly(unwrap(parts[1]), cfg.p) if len(parts) == 2 else GFPoly.const(cfg.p, 1)
    if den.is_zero():
        raise ParseError(f"zero denominator in {text!r}")
    return Scalar(cfg, num, den)


def valuation(x: Scalar):
    return x.valuation()


def abs_value(x: Scalar) -> NormValue:
    """The absolute value |x| = p^(-val(x)); |0| = 0."""
    if x.is_zero():
        return NormValue.zero(x.cfg.p)
    return NormValue(x.cfg.p, -x.valuation())


def split_integral(x: Scalar) -> tuple[Scalar, Scalar]:
    """Split x = principal + integral with val(integral) >= 0.

    The principal part collects the strictly negative π-powers of the
    digit expansion; it is zero exactly when x is already integral.
    """
    cfg = x.cfg
    v = x.valuation()
    if x.is_zero() or v >= 0:
        return cfg.zero(), x
    e = -int(v)
    if cfg.is_qp:
        p = cfg.p
        a, b = x.num, x.den
        b0 = b // p**e  # unit part of the denominator
        m = (a * pow(b0, -1, p**e)) % p**e
        principal = Scalar(cfg, m, p**e)
    else:
        digits = _fpt_series(x * cfg.pi_pow(e), e)
        principal = Scalar(cfg, GFPoly(cfg.p, digits), GFPoly.monomial(cfg.p, 1, e))
    return principal, x - principal


def digit_expansion(x: Scalar, depth: int) -> tuple[int, list[int]]:
    """First `depth` digits of x, returned as (start_index, digits).

    Digits a_i lie in {0..p-1} and x - sum(a_i π^i) has valuation greater
    than start_index + depth - 1.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if x.is_zero():
        raise ValueError("zero has no digit expansion")
    cfg = x.cfg
    t = int(x.valuation())
    if cfg.is_qp:
        p = cfg.p
        y = x / cfg.pi_pow(t)  # unit: denominator coprime to p
        digits = []
        for _ in range(depth):
            if y.is_zero():
                digits.append(0)
                continue
            d = (y.num * pow(y.den, -1, p)) % p
            digits.append(d)
            y = (y - cfg.from_int(d)) / cfg.pi_pow(1)
        return t, digits
    return t, _fpt_series(x / cfg.pi_pow(t), depth)


def _fpt_series(y: Scalar, depth: int) -> list[int]:
    """First `depth` T-expansion coefficients of y; requires val(y) >= 0."""
    p = y.cfg.p
    if y.is_zero():
        return [0] * depth
    n, d = y.num, y.den
    od = d.order()
    num = list(n.coeffs[od:])  # n / T^od, exact since val(y) >= 0
    den = list(d.coeffs[od:])  # unit part of the denominator
    inv0 = pow(den[0], -1, p)
    out = []
    for i in range(depth):
        acc = num[i] if i < len(num) else 0
        for j in range(1, min(i, len(den) - 1) + 1):
            acc -= den[j] * out[i - j]
        out.append((acc * inv0) % p)
    return out
