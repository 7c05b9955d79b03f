"""Exact polynomial arithmetic and certified real-root isolation.

``BivariatePoly`` has integer coefficients keyed by (x-degree, y-degree).
``UnivariatePoly`` has rational coefficients, lowest degree first. Root
isolation uses Sturm sequences; all sign evaluations are done in integer
arithmetic on a primitive integer multiple of the polynomial.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .report import frac_str

DEFAULT_WIDTH = Fraction(1, 2**40)
COMPARE_BUDGET = 80


class PolyError(ValueError):
    pass


class BivariatePoly:
    """Sparse polynomial in x and y with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise PolyError("negative exponent")
            if c:
                clean[(int(i), int(j))] = clean.get((int(i), int(j)), 0) + int(c)
        self._terms = {k: v for k, v in sorted(clean.items()) if v}
        self._hash = None

    @classmethod
    def one(cls) -> "BivariatePoly":
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "BivariatePoly":
        return cls({(i, j): c})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def coeff(self, i: int, j: int) -> int:
        return self._terms.get((i, j), 0)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def x_degree(self) -> int:
        return max((i for i, _ in self._terms), default=-1)

    @property
    def y_degree(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __add__(self, other: "BivariatePoly") -> "BivariatePoly":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return BivariatePoly(out)

    def __sub__(self, other: "BivariatePoly") -> "BivariatePoly":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) - c
        return BivariatePoly(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return BivariatePoly({k: c * other for k, c in self._terms.items()})
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BivariatePoly(out)

    __rmul__ = __mul__

    def shift(self, di: int, dj: int) -> "BivariatePoly":
        """Multiply by x**di * y**dj."""
        return BivariatePoly({(i + di, j + dj): c for (i, j), c in self._terms.items()})

    def section_at_y(self, y0) -> "UnivariatePoly":
        y0 = Fraction(y0)
        coeffs = [Fraction(0)] * (self.x_degree + 1)
        for (i, j), c in self._terms.items():
            coeffs[i] += c * y0**j
        return UnivariatePoly(coeffs)

    def evaluate(self, x: complex, y: complex) -> complex:
        """Floating-point evaluation for diagnostics only (Horner in x, then y)."""
        total = 0j
        for i in range(self.x_degree, -1, -1):
            row = 0j
            for j in range(self.y_degree, -1, -1):
                row = row * y + self._terms.get((i, j), 0)
            total = total * x + row
        return total

    def eval_exact(self, x, y) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        return sum((c * x**i * y**j for (i, j), c in self._terms.items()), Fraction(0))

    def diagonal(self) -> "BivariatePoly":
        return BivariatePoly({(i, j): c for (i, j), c in self._terms.items() if i == j})

    def substitute_line(self, a, b, c, d) -> "UnivariatePoly":
        """t -> P(a*t + c, b*t + d) as an exact polynomial in t."""
        lx = UnivariatePoly([c, a])
        ly = UnivariatePoly([d, b])
        xp = [UnivariatePoly([1])]
        for _ in range(self.x_degree):
            xp.append(xp[-1] * lx)
        yp = [UnivariatePoly([1])]
        for _ in range(self.y_degree):
            yp.append(yp[-1] * ly)
        out = UnivariatePoly([])
        for (i, j), coef in self._terms.items():
            out = out + (xp[i] * yp[j]).scale(coef)
        return out

    def to_json(self) -> dict:
        return {"terms": [{"i": i, "j": j, "c": str(c)} for (i, j), c in self._terms.items()]}

    @classmethod
    def from_json(cls, data: dict) -> "BivariatePoly":
        return cls({(t["i"], t["j"]): int(t["c"]) for t in data["terms"]})

    def pretty(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in self._terms.items():
            mono = ""
            if i:
                mono += "x" if i == 1 else f"x^{i}"
            if j:
                mono += "y" if j == 1 else f"y^{j}"
            if not mono:
                body = str(abs(c))
            else:
                body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"BivariatePoly({self.pretty()})"


class UnivariatePoly:
    """Dense polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, UnivariatePoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UnivariatePoly([x + (b[k] if k < len(b) else 0) for k, x in enumerate(a)])

    def __neg__(self):
        return UnivariatePoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "UnivariatePoly") -> "UnivariatePoly":
        if not self.coeffs or not other.coeffs:
            return UnivariatePoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UnivariatePoly(out)

    def scale(self, k) -> "UnivariatePoly":
        return UnivariatePoly([c * k for c in self.coeffs])

    def derivative(self) -> "UnivariatePoly":
        return UnivariatePoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: "UnivariatePoly") -> tuple["UnivariatePoly", "UnivariatePoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return UnivariatePoly([]), self
        quot = [Fraction(0)] * dq
        lead = other.lead
        for k in range(dq - 1, -1, -1):
            q = rem[k + other.degree] / lead
            quot[k] = q
            if q:
                for m, c in enumerate(other.coeffs):
                    rem[k + m] -= q * c
        return UnivariatePoly(quot), UnivariatePoly(rem[: other.degree])

    def monic(self) -> "UnivariatePoly":
        return self.scale(1 / self.lead) if self.coeffs else self

    def to_json(self) -> list[str]:
        return [frac_str(c) for c in self.coeffs]

    def __repr__(self):
        return f"UnivariatePoly({[str(c) for c in self.coeffs]})"


def poly_gcd(p: UnivariatePoly, q: UnivariatePoly) -> UnivariatePoly:
    a, b = p, q
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def square_free(p: UnivariatePoly) -> UnivariatePoly:
    """p / gcd(p, p'), made monic; same real roots, all simple."""
    if p.is_zero():
        raise PolyError("square-free part of the zero polynomial is undefined")
    if p.degree == 0:
        return UnivariatePoly([1])
    g = poly_gcd(p, p.derivative())
    return p.divmod(g)[0].monic()


# integer Sturm machinery


def _primitive(coeffs: Sequence[Fraction]) -> tuple[int, ...]:
    """Positive rational multiple of ``coeffs`` with coprime integer entries."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return tuple(v // g for v in ints) if g > 1 else tuple(ints)


@lru_cache(maxsize=1 << 14)
def _primitive_of(coeffs: tuple[Fraction, ...]) -> tuple[int, ...]:
    return _primitive(coeffs)


def sign_at(ints: Sequence[int], q: Fraction) -> int:
    num, den = q.numerator, q.denominator
    d = len(ints) - 1
    acc = ints[d]
    dp = 1
    for k in range(d - 1, -1, -1):
        dp *= den
        acc = acc * num + ints[k] * dp
    return (acc > 0) - (acc < 0)


@lru_cache(maxsize=4096)
def _sturm_chain(coeffs: tuple[Fraction, ...]) -> tuple[tuple[int, ...], ...]:
    p = UnivariatePoly(coeffs)
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        chain.append(-chain[-2].divmod(chain[-1])[1])
    return tuple(_primitive(q.coeffs) for q in chain if not q.is_zero())


def sturm_chain(p: UnivariatePoly) -> tuple[tuple[int, ...], ...]:
    return _sturm_chain(p.coeffs)


def _variations(signs: Iterable[int]) -> int:
    count, last = 0, 0
    for s in signs:
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def _var_at(chain, q: Fraction) -> int:
    return _variations(sign_at(c, q) for c in chain)


def _var_at_inf(chain, positive: bool) -> int:
    signs = []
    for c in chain:
        s = 1 if c[-1] > 0 else -1
        if not positive and (len(c) - 1) % 2:
            s = -s
        signs.append(s)
    return _variations(signs)


def sturm_count(p: UnivariatePoly, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the open interval (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if p.is_zero():
        raise PolyError("zero polynomial")
    if not lo < hi:
        raise PolyError("sturm_count needs lo < hi")
    if p(lo) == 0 or p(hi) == 0:
        raise PolyError("interval endpoint is a root; perturb the endpoint")
    chain = sturm_chain(p)
    return _var_at(chain, lo) - _var_at(chain, hi)


def count_real_roots(p: UnivariatePoly) -> int:
    """Distinct real roots on the whole line."""
    if p.is_zero():
        raise PolyError("zero polynomial")
    chain = sturm_chain(p)
    return _var_at_inf(chain, False) - _var_at_inf(chain, True)


def is_real_rooted(p: UnivariatePoly) -> bool:
    if p.is_zero():
        raise PolyError("zero polynomial")
    sf = square_free(p)
    return count_real_roots(sf) == sf.degree


def cauchy_bound(p: UnivariatePoly) -> Fraction:
    lead = abs(p.lead)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


class Order(str, enum.Enum):
    LT = "LT"
    GT = "GT"
    EQ = "EQ"
    UNRESOLVED = "UNRESOLVED"


@dataclass(frozen=True)
class RootInterval:
    lo: Fraction
    hi: Fraction
    exact: Optional[Fraction] = None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, q) -> bool:
        return self.lo < q < self.hi

    def to_json(self) -> dict:
        out = {"lo": frac_str(self.lo), "hi": frac_str(self.hi)}
        if self.exact is not None:
            out["exact"] = frac_str(self.exact)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "RootInterval":
        exact = Fraction(data["exact"]) if "exact" in data else None
        return cls(Fraction(data["lo"]), Fraction(data["hi"]), exact)


@dataclass(frozen=True)
class RootAnalysis:
    """Certified isolation of the negative real roots of a square-free polynomial.

    ``intervals`` are disjoint, ascending and each holds exactly one root;
    ``zeta`` is the rightmost, or ``None`` standing for minus infinity.
    """

    poly: UnivariatePoly
    intervals: tuple[RootInterval, ...]

    @property
    def zeta(self) -> Optional[RootInterval]:
        return self.intervals[-1] if self.intervals else None

    @property
    def has_root(self) -> bool:
        return bool(self.intervals)

    def zeta_float(self) -> float:
        z = self.zeta
        if z is None:
            return float("-inf")
        return float(z.exact) if z.exact is not None else float((z.lo + z.hi) / 2)

    def to_json(self) -> dict:
        return {
            "polynomial": self.poly.to_json(),
            "negative_roots": [iv.to_json() for iv in self.intervals],
            "zeta": self.zeta.to_json() if self.zeta else "-inf",
        }


def _exact_window(p: UnivariatePoly, r: Fraction, lo: Fraction, hi: Fraction, width: Fraction) -> RootInterval:
    delta = min(width / 2, (r - lo) / 2, (hi - r) / 2)
    while p(r - delta) == 0 or p(r + delta) == 0 or sturm_count(p, r - delta, r + delta) != 1:
        delta /= 2
    return RootInterval(r - delta, r + delta, r)


def refine(p: UnivariatePoly, iv: RootInterval, width: Fraction) -> RootInterval:
    """Shrink an isolating interval of a square-free ``p`` by sign bisection."""
    if iv.exact is not None:
        if iv.width <= width:
            return iv
        return _exact_window(p, iv.exact, iv.lo, iv.hi, width)
    ints = _primitive_of(p.coeffs)
    lo, hi = iv.lo, iv.hi
    s_lo = sign_at(ints, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sign_at(ints, mid)
        if s == 0:
            return _exact_window(p, mid, lo, hi, width)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return RootInterval(lo, hi)


def isolate_negative_roots(p: UnivariatePoly, width=DEFAULT_WIDTH) -> RootAnalysis:
    if p.is_zero():
        raise PolyError("zero polynomial has no isolated roots")
    return _isolate(p.coeffs, Fraction(width))


# sections repeat heavily across deletion chains and corpus instances
@lru_cache(maxsize=1 << 16)
def _isolate(coeffs: tuple[Fraction, ...], width: Fraction) -> RootAnalysis:
    p = UnivariatePoly(coeffs)
    if p(0) == 0:
        raise PolyError("p(0) = 0; negative-root isolation needs a nonzero constant term")
    sf = square_free(p)
    if sf.degree == 0:
        return RootAnalysis(sf, ())
    ints = _primitive_of(sf.coeffs)
    bound = cauchy_bound(sf)
    found: list[RootInterval] = []
    stack = [(-bound, Fraction(0))]
    while stack:
        lo, hi = stack.pop()
        k = sturm_count(sf, lo, hi)
        if k == 0:
            continue
        if k == 1:
            found.append(refine(sf, RootInterval(lo, hi), width))
            continue
        mid = (lo + hi) / 2
        if sign_at(ints, mid) == 0:
            delta = (hi - lo) / 4
            while sf(mid - delta) == 0 or sf(mid + delta) == 0 or sturm_count(sf, mid - delta, mid + delta) != 1:
                delta /= 2
            found.append(refine(sf, RootInterval(mid - delta, mid + delta, mid), width))
            stack.extend([(lo, mid - delta), (mid + delta, hi)])
        else:
            stack.extend([(lo, mid), (mid, hi)])
    found.sort(key=lambda iv: iv.lo)
    return RootAnalysis(sf, tuple(found))


def compare_to_rational(ra: RootAnalysis, q) -> Order:
    """Exact order of zeta relative to the rational ``q`` (minus infinity is LT)."""
    q = Fraction(q)
    z = ra.zeta
    if z is None:
        return Order.LT
    if z.exact is not None:
        return Order.EQ if z.exact == q else (Order.LT if z.exact < q else Order.GT)
    if q >= z.hi:
        return Order.LT
    if q <= z.lo:
        return Order.GT
    ints = _primitive_of(ra.poly.coeffs)
    s = sign_at(ints, q)
    if s == 0:
        return Order.EQ
    # root lies on the side where the sign differs from the one at q
    return Order.GT if s == sign_at(ints, z.lo) else Order.LT


def compare_zeta(r1: RootAnalysis, r2: RootAnalysis, budget: int = COMPARE_BUDGET) -> Order:
    """Certified order of zeta(r1) versus zeta(r2)."""
    z1, z2 = r1.zeta, r2.zeta
    if z1 is None and z2 is None:
        return Order.EQ
    if z1 is None:
        return Order.LT
    if z2 is None:
        return Order.GT
    if z1.exact is not None:
        return _flip(compare_to_rational(r2, z1.exact))
    if z2.exact is not None:
        return compare_to_rational(r1, z2.exact)
    if z1.hi <= z2.lo:
        return Order.LT
    if z2.hi <= z1.lo:
        return Order.GT
    lo, hi = max(z1.lo, z2.lo), min(z1.hi, z2.hi)
    g = poly_gcd(r1.poly, r2.poly)
    if g.degree > 0 and sturm_count(g, lo, hi) > 0:
        return Order.EQ
    for _ in range(budget):
        z1 = refine(r1.poly, z1, z1.width / 2)
        z2 = refine(r2.poly, z2, z2.width / 2)
        if z1.exact is not None or z2.exact is not None:
            return compare_zeta(RootAnalysis(r1.poly, (z1,)), RootAnalysis(r2.poly, (z2,)), 0)
        if z1.hi <= z2.lo:
            return Order.LT
        if z2.hi <= z1.lo:
            return Order.GT
    return Order.UNRESOLVED


def _flip(o: Order) -> Order:
    return {Order.LT: Order.GT, Order.GT: Order.LT}.get(o, o)
