"""Exact rational, Gaussian-rational and univariate polynomial arithmetic.

Rationals are plain :class:`fractions.Fraction` values. Polynomials are dense,
immutable, with ascending ``Fraction`` coefficients. ``theta`` values are
described by :class:`ThetaSpec`, either an exact rational or an irreducible
integer polynomial together with an interval isolating one of its real roots.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .caps import get_caps
from .errors import (
    DegreeTooLarge,
    DivideByZero,
    EndpointIsRoot,
    InputError,
    NotDivisible,
    ZeroPolynomial,
)

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction.

    Floats are rejected: every weight in this package must be exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not an exact rational: {value!r}")


def rational_str(q: Fraction) -> str:
    return str(q)


# ---------------------------------------------------------------------------
# Gaussian rationals


@dataclass(frozen=True, slots=True)
class GaussianRational:
    re: Fraction = _ZERO
    im: Fraction = _ZERO

    @classmethod
    def of(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise InputError("complex floats are not exact")
        return cls(to_rational(value), _ZERO)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __add__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.of(other) - self

    def __mul__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.of(other)
        d = o.abs2()
        if d == 0:
            raise DivideByZero("division by zero Gaussian rational")
        n = self * o.conj()
        return GaussianRational(n.re / d, n.im / d)

    def __rtruediv__(self, other):
        return GaussianRational.of(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        if isinstance(obj, dict):
            return cls(to_rational(obj.get("re", "0")), to_rational(obj.get("im", "0")))
        return cls(to_rational(obj), _ZERO)

    def __repr__(self):
        if self.im == 0:
            return f"G({self.re})"
        return f"G({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


# ---------------------------------------------------------------------------
# Polynomials


class Polynomial:
    """Dense univariate polynomial over the rationals.

    ``coeffs[k]`` is the coefficient of ``x**k``. The zero polynomial has no
    coefficients and degree -1.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, Fraction) else to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: list) -> "Polynomial":
        # caller guarantees Fractions; only trims
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def linear_factor(cls, root) -> "Polynomial":
        """``x - root``"""
        return cls([-to_rational(root), 1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Polynomial":
        p = cls([1])
        for r in roots:
            p = p * cls.linear_factor(r)
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def __call__(self, x):
        acc = _ZERO if not isinstance(x, (float, complex)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # arithmetic ------------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial([other])

    def __add__(self, other):
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial._raw([])
            return Polynomial._raw([c * other for c in self.coeffs])
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Polynomial._raw([])
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        q = self._coerce(other)
        if q.is_zero():
            raise DivideByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dq = q.degree
        lead = q.leading
        if len(rem) - 1 < dq:
            return Polynomial._raw([]), self
        quot = [_ZERO] * (len(rem) - dq)
        qc = q.coeffs
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lead
            quot[k] = c
            if c:
                for j in range(dq + 1):
                    rem[k + j] -= c * qc[j]
        return Polynomial._raw(quot), Polynomial._raw(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # calculus / normalisation ---------------------------------------------
    def derivative(self) -> "Polynomial":
        return Polynomial._raw([c * k for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Polynomial":
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no monic form")
        lead = self.leading
        return Polynomial._raw([c / lead for c in self.coeffs])

    def primitive(self) -> "Polynomial":
        """Integer, content-free, positive leading coefficient."""
        if self.is_zero():
            return self
        den = reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(math.gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return Polynomial([i // g for i in ints])

    def integer_coeffs(self) -> list[int]:
        if any(c.denominator != 1 for c in self.coeffs):
            raise InputError("polynomial does not have integer coefficients")
        return [int(c) for c in self.coeffs]

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    # I/O -------------------------------------------------------------------
    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, arr: Sequence) -> "Polynomial":
        return cls(to_rational(c) for c in arr)

    def __repr__(self):
        return f"Polynomial({self.pretty()})"

    def pretty(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


X = Polynomial.x()


def poly_divexact(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return ``p / q``, raising :class:`NotDivisible` on a nonzero remainder."""
    if q.is_zero():
        raise DivideByZero("division by the zero polynomial")
    quot, rem = divmod(p, q)
    if not rem.is_zero():
        raise NotDivisible(f"{q.pretty()} does not divide {p.pretty()}")
    return quot


def _deflate_linear(coeffs: Sequence[Fraction], root: Fraction):
    """Synthetic division by (x - root). Returns (quotient coeffs, remainder)."""
    n = len(coeffs) - 1
    out = [_ZERO] * n
    acc = _ZERO
    for k in range(n, 0, -1):
        acc = acc * root + coeffs[k]
        out[k - 1] = acc
    rem = acc * root + coeffs[0]
    return out, rem


# ---------------------------------------------------------------------------
# Sturm sequences and real roots


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    if p.is_zero():
        raise ZeroPolynomial("Sturm sequence of the zero polynomial")
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _sign_changes(seq: Sequence[Polynomial], x: Fraction) -> int:
    count = 0
    last = 0
    for s in seq:
        v = s(x)
        if v == 0:
            continue
        sign = 1 if v > 0 else -1
        if last and sign != last:
            count += 1
        last = sign
    return count


def root_count_in_interval(p: Polynomial, lo, hi, seq: Sequence[Polynomial] | None = None) -> int:
    """Number of distinct real roots of ``p`` in the open interval (lo, hi)."""
    if p.is_zero():
        raise ZeroPolynomial("root count of the zero polynomial")
    lo, hi = to_rational(lo), to_rational(hi)
    if p(lo) == 0 or p(hi) == 0:
        raise EndpointIsRoot(f"endpoint of ({lo}, {hi}) is a root of {p.pretty()}")
    if lo >= hi:
        return 0
    seq = seq if seq is not None else sturm_sequence(p)
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def cauchy_bound(p: Polynomial) -> Fraction:
    """All complex roots of ``p`` lie strictly inside (-B, B)."""
    lead = abs(p.leading)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=_ZERO) + 1


def count_real_roots(p: Polynomial) -> int:
    """Number of distinct real roots of ``p``."""
    if p.degree <= 0:
        return 0
    b = cauchy_bound(p)
    return root_count_in_interval(p, -b, b)


def isolate_real_roots(p: Polynomial) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals (lo, hi), each containing exactly one
    distinct real root of ``p``, sorted increasingly. Endpoints are never roots.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    if p.degree <= 0:
        return []
    seq = sturm_sequence(p)
    b = cauchy_bound(p)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = _sign_changes(seq, lo) - _sign_changes(seq, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        shift = (hi - lo) / 7
        while p(mid) == 0:
            mid += shift
            shift /= 3
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    return out


def refine_root(p: Polynomial, lo: Fraction, hi: Fraction, width=Fraction(1, 10**18)):
    """Bisect an isolating interval of a root of odd multiplicity or use Sturm
    counts otherwise, until it is narrower than ``width``."""
    seq = sturm_sequence(p)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if p(mid) == 0:
            return mid, mid
        if _sign_changes(seq, lo) - _sign_changes(seq, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


# ---------------------------------------------------------------------------
# irreducibility and factorisation


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Polynomial) -> list[Fraction]:
    """Distinct rational roots of ``p`` by the rational root test."""
    if p.is_zero():
        raise ZeroPolynomial("rational roots of the zero polynomial")
    ints = p.primitive().integer_coeffs()
    roots = []
    while ints and ints[0] == 0:
        if _ZERO not in roots:
            roots.append(_ZERO)
        ints = ints[1:]
    if len(ints) <= 1:
        return roots
    q = Polynomial(ints)
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and q(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def irreducibility_check(p: Polynomial) -> bool:
    """True iff the integer, content-free, nonconstant ``p`` is irreducible over Q.

    Degrees up to 3 use the rational root test; degrees 4..8 delegate the
    factor search to sympy.
    """
    if p.degree < 1:
        raise InputError("irreducibility of a constant polynomial")
    ints = p.integer_coeffs()
    if reduce(math.gcd, ints, 0) != 1:
        raise InputError("polynomial is not content-free")
    if p.degree > get_caps().max_irreducible_degree:
        raise DegreeTooLarge(f"irreducibility supported up to degree {get_caps().max_irreducible_degree}")
    if p.degree == 1:
        return True
    if p.degree <= 3:
        return not rational_roots(p)
    import sympy

    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(ints)), x, domain="ZZ").is_irreducible


def factor_over_q(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Irreducible factorisation over Q: list of (primitive factor, multiplicity).

    The constant content is dropped.
    """
    if p.is_zero():
        raise ZeroPolynomial("factorisation of the zero polynomial")
    if p.degree <= 0:
        return []
    import sympy

    x = sympy.Symbol("x")
    sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], x, domain="QQ")
    _, factors = sp.factor_list()
    out = []
    for f, mult in factors:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        out.append((Polynomial(coeffs).primitive(), int(mult)))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return out


def factored_str(p: Polynomial) -> str | None:
    """Pretty factored form when all irreducible factors have degree <= 2.

    Returns None otherwise (callers then print the expanded form).
    """
    if p.is_zero() or p.degree <= 0:
        return None
    facs = factor_over_q(p)
    if any(f.degree > 2 for f, _ in facs):
        return None
    lead = p.leading / reduce(lambda a, fm: a * fm[0].leading ** fm[1], facs, _ONE)
    parts = []
    for f, m in facs:
        body = f"({f.pretty()})"
        parts.append(body if m == 1 else f"{body}^{m}")
    prefix = "" if lead == 1 else ("-" if lead == -1 else f"{lead}*")
    return prefix + "*".join(parts)


# ---------------------------------------------------------------------------
# theta


@dataclass(frozen=True)
class ThetaSpec:
    """A real number given exactly.

    Either ``value`` is set (a rational), or ``minpoly`` (irreducible,
    integer, content-free) and ``interval`` (an open rational interval
    containing exactly one real root of ``minpoly``) are set.
    """

    value: Fraction | None = None
    minpoly: Polynomial | None = None
    interval: tuple[Fraction, Fraction] | None = None

    @classmethod
    def rational(cls, q) -> "ThetaSpec":
        return cls(value=to_rational(q))

    @classmethod
    def algebraic(cls, minpoly, lo, hi, check: bool = True) -> "ThetaSpec":
        mp = minpoly if isinstance(minpoly, Polynomial) else Polynomial(minpoly)
        lo, hi = to_rational(lo), to_rational(hi)
        if mp.degree < 1:
            raise InputError("minimal polynomial must be nonconstant")
        if check:
            ints = mp.integer_coeffs()
            if reduce(math.gcd, ints, 0) != 1:
                raise InputError("minimal polynomial must be content-free")
            if not irreducibility_check(mp):
                raise InputError(f"{mp.pretty()} is not irreducible over Q")
            if root_count_in_interval(mp, lo, hi) != 1:
                raise InputError(f"({lo}, {hi}) does not isolate exactly one root of {mp.pretty()}")
        if mp.degree == 1:
            c0, c1 = mp.coeffs[0], mp.coeffs[1]
            return cls(value=-c0 / c1)
        if mp.leading < 0:
            mp = -mp
        return cls(minpoly=mp, interval=(lo, hi))

    @classmethod
    def parse(cls, text: str) -> "ThetaSpec":
        """``"p/q"`` or ``"minpoly:c0,c1,...:lo,hi"`` (ascending coefficients)."""
        text = text.strip()
        if text.startswith("minpoly:"):
            try:
                _, coeffs, interval = text.split(":")
                cs = [int(c) for c in coeffs.split(",")]
                lo, hi = interval.split(",")
            except ValueError as exc:
                raise InputError(f"bad theta spec {text!r}") from exc
            return cls.algebraic(Polynomial(cs), lo, hi)
        return cls.rational(text)

    @property
    def is_rational(self) -> bool:
        return self.value is not None

    def factor(self) -> Polynomial:
        """The irreducible polynomial whose powers measure multiplicity."""
        if self.value is not None:
            return Polynomial.linear_factor(self.value)
        return self.minpoly

    def key(self):
        if self.value is not None:
            return ("q", self.value)
        return ("a", self.minpoly.coeffs, self.interval)

    def __float__(self) -> float:
        if self.value is not None:
            return float(self.value)
        lo, hi = refine_root(self.minpoly, *self.interval)
        return float((lo + hi) / 2)

    def __str__(self) -> str:
        if self.value is not None:
            return str(self.value)
        cs = ",".join(str(int(c)) for c in self.minpoly.coeffs)
        lo, hi = self.interval
        return f"minpoly:{cs}:{lo},{hi}"

    def to_json(self):
        if self.value is not None:
            return {"rational": str(self.value)}
        return {
            "minpoly": [str(int(c)) for c in self.minpoly.coeffs],
            "interval": [str(self.interval[0]), str(self.interval[1])],
        }

    @classmethod
    def from_json(cls, obj) -> "ThetaSpec":
        if isinstance(obj, str):
            return cls.parse(obj)
        try:
            if "rational" in obj:
                return cls.rational(obj["rational"])
            return cls.algebraic(Polynomial([int(c) for c in obj["minpoly"]]), *obj["interval"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed theta JSON: {exc}") from exc


def multiplicity_at(p: Polynomial, theta: ThetaSpec) -> int:
    """Multiplicity of ``theta`` as a root of ``p``."""
    if p.is_zero():
        raise ZeroPolynomial("multiplicity in the zero polynomial")
    if theta.value is not None:
        root = theta.value
        coeffs = list(p.coeffs)
        k = 0
        while len(coeffs) > 1:
            quot, rem = _deflate_linear(coeffs, root)
            if rem != 0:
                break
            coeffs = quot
            k += 1
        return k
    f = theta.minpoly
    k = 0
    while p.degree >= f.degree:
        quot, rem = divmod(p, f)
        if not rem.is_zero():
            break
        p = quot
        k += 1
    return k


def deflate(p: Polynomial, theta: ThetaSpec, k: int) -> Polynomial:
    """``p`` divided by the k-th power of theta's irreducible factor."""
    if k == 0:
        return p
    return poly_divexact(p, theta.factor() ** k)


def sign_at(p: Polynomial, theta: ThetaSpec) -> int:
    """Sign of p(theta) for a non-root theta; 0 if theta is a root."""
    if theta.value is not None:
        v = p(theta.value)
        return (v > 0) - (v < 0)
    if multiplicity_at(p, theta) > 0:
        return 0
    lo, hi = theta.interval
    # shrink the interval until p has no root in it, then p's sign is constant
    seq_f = sturm_sequence(theta.minpoly)
    while True:
        if p(lo) != 0 and p(hi) != 0 and root_count_in_interval(p, lo, hi) == 0:
            v = p(lo)
            return (v > 0) - (v < 0)
        mid = (lo + hi) / 2
        if theta.minpoly(mid) == 0:  # cannot happen for irreducible degree >= 2
            raise AssertionError("rational root of an irreducible polynomial")
        if _sign_changes(seq_f, lo) - _sign_changes(seq_f, mid) == 1:
            hi = mid
        else:
            lo = mid


# ---------------------------------------------------------------------------
# real-rootedness and interlacing


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: squarefree, pairwise coprime a_k with p = c * prod a_k^k."""
    if p.degree < 1:
        return []
    out = []
    a = p.gcd(p.derivative())
    b = poly_divexact(p, a)
    c = poly_divexact(p.derivative(), a)
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        a = b.gcd(d)
        if a.degree > 0:
            out.append((a.monic(), k))
        b = poly_divexact(b, a)
        c = poly_divexact(d, a)
        d = c - b.derivative()
        k += 1
    return out


def real_root_count_with_multiplicity(p: Polynomial) -> int:
    """Number of real roots of ``p`` counted with multiplicity."""
    return sum(k * count_real_roots(f) for f, k in squarefree_decomposition(p))


def is_real_rooted(p: Polynomial) -> bool:
    return real_root_count_with_multiplicity(p) == p.degree


def interlaces(q: Polynomial, p: Polynomial) -> bool:
    """True when ``q`` (degree deg p - 1) interlaces ``p``: both real rooted
    and, after cancelling common roots, the roots strictly alternate.

    Checked exactly: the sign of q at consecutive roots of p must alternate.
    """
    if p.degree < 1 or q.degree != p.degree - 1:
        return False
    if not (is_real_rooted(p) and is_real_rooted(q)):
        return False
    d = p.gcd(q)
    p1, q1 = poly_divexact(p, d), poly_divexact(q, d)
    if p1.degree == 0:
        return True
    if count_real_roots(p1) != p1.degree:  # p1 must have simple roots
        return False
    if q1.degree == 0:
        return p1.degree == 1
    signs = []
    for lo, hi in isolate_real_roots(p1):
        while q1(lo) == 0 or q1(hi) == 0 or root_count_in_interval(q1, lo, hi) > 0:
            mid = (lo + hi) / 2
            if p1(mid) == 0:
                lo = hi = mid
                break
            if root_count_in_interval(p1, lo, mid) == 1:
                hi = mid
            else:
                lo = mid
        v = q1(lo)
        signs.append((v > 0) - (v < 0))
    return all(a == -b and a != 0 for a, b in zip(signs, signs[1:]))
