"""Hilbert symbols over Q and the quaternion class on ((ax + b)y + m)t = cx + d.

Everything is exact: rationals are ``fractions.Fraction`` and p-adic points
are rational points whose coordinates have non-negative p-valuation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Union

from sympy import isprime, primefactors, primerange

from .pell import legendre
from .points import CertificationError, SurfaceModel, search_box

Rational = Union[int, Fraction, str]


class BrauerError(ValueError):
    pass


class EvaluationError(BrauerError):
    """Raised when an entry of the quaternion class vanishes at the point."""


@dataclass(frozen=True, order=True)
class HilbertPlace:
    """A finite prime ``p``, or the real place when ``p`` is None."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None and not isprime(self.p):
            raise BrauerError(f"{self.p} is not prime")

    @property
    def is_real(self) -> bool:
        return self.p is None

    def __str__(self):
        return "inf" if self.p is None else str(self.p)

    @classmethod
    def parse(cls, text) -> "HilbertPlace":
        if isinstance(text, HilbertPlace):
            return text
        s = str(text).strip().lower()
        if s in ("inf", "oo", "infinity", "real", "∞"):
            return cls(None)
        try:
            return cls(int(s))
        except ValueError:
            raise BrauerError(f"cannot read a place from {text!r}") from None


REAL = HilbertPlace(None)


def _q(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def valuation(x: Rational, p: int) -> int:
    x = _q(x)
    if x == 0:
        raise BrauerError("valuation of zero")
    v, n, d = 0, x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def unit_part(x: Rational, p: int) -> Fraction:
    x = _q(x)
    return x / Fraction(p) ** valuation(x, p)


def residue(u: Fraction, modulus: int) -> int:
    """Image of a rational with denominator prime to ``modulus``."""
    return u.numerator * pow(u.denominator, -1, modulus) % modulus


def hilbert_symbol(alpha: Rational, beta: Rational, place) -> int:
    """(alpha, beta)_v: +1 iff z^2 = alpha x^2 + beta y^2 has a nonzero solution over Q_v."""
    alpha, beta = _q(alpha), _q(beta)
    if alpha == 0 or beta == 0:
        raise BrauerError("the Hilbert symbol needs nonzero arguments")
    v = HilbertPlace.parse(place)
    if v.is_real:
        return -1 if alpha < 0 and beta < 0 else 1
    p = v.p
    a, b = valuation(alpha, p), valuation(beta, p)
    u, w = unit_part(alpha, p), unit_part(beta, p)
    if p != 2:
        sign = -1 if (a * b * (p - 1) // 2) % 2 else 1
        return sign * legendre(residue(u, p), p) ** (b % 2) * legendre(residue(w, p), p) ** (a % 2)
    u8, w8 = residue(u, 8), residue(w, 8)
    eps = lambda r: 0 if r % 4 == 1 else 1
    omega = lambda r: 0 if r in (1, 7) else 1
    e = eps(u8) * eps(w8) + a * omega(w8) + b * omega(u8)
    return -1 if e % 2 else 1


def relevant_places(alpha: Rational, beta: Rational) -> list[HilbertPlace]:
    """The real place, 2, and every odd prime dividing a numerator or denominator."""
    alpha, beta = _q(alpha), _q(beta)
    primes = {2}
    for q in (alpha, beta):
        primes.update(primefactors(abs(q.numerator)))
        primes.update(primefactors(q.denominator))
    return [REAL] + [HilbertPlace(p) for p in sorted(primes)]


def product_over_places(alpha: Rational, beta: Rational) -> int:
    out = 1
    for v in relevant_places(alpha, beta):
        out *= hilbert_symbol(alpha, beta, v)
    return out


# -- brute-force oracle -------------------------------------------------------

def _local_integer(x: Fraction, p: int) -> int:
    """An integer in the same square class of Q_p as ``x``, with valuation 0 or 1."""
    n = x.numerator * x.denominator
    while n % (p * p) == 0:
        n //= p * p
    return n


def _hensel_exponent(coef: int, p: int) -> int:
    """Exponent k such that a solution mod p^k lifts in a pivot variable with coefficient ``coef``.

    The partial derivative is 2*coef*var with var = 1, so Hensel needs
    f = 0 mod p^(2e+1) where e = v_p(2*coef).
    """
    e = valuation(2 * coef, p)
    return 2 * e + 1


def hilbert_symbol_oracle(alpha: Rational, beta: Rational, place) -> int:
    """Independent solubility search for z^2 = alpha x^2 + beta y^2.

    A nonzero Q_p-solution can be scaled to a primitive one in Z_p, and then to
    one where the first unit coordinate (in the order z, x, y) equals 1.  For each
    of the three cases a solution modulo p^k is searched, with k large enough that
    Hensel's lemma in the normalized variable lifts it; conversely every genuine
    solution reduces to one of these.
    """
    alpha, beta = _q(alpha), _q(beta)
    if alpha == 0 or beta == 0:
        raise BrauerError("the Hilbert symbol needs nonzero arguments")
    v = HilbertPlace.parse(place)
    if v.is_real:
        return 1 if alpha > 0 or beta > 0 else -1
    p = v.p
    A, B = _local_integer(alpha, p), _local_integer(beta, p)
    # f(z, x, y) = z^2 - A x^2 - B y^2; pivot z = 1, then x = 1 (p | z), then y = 1 (p | z, x).
    mod = p ** _hensel_exponent(1, p)
    squares = {x * x % mod for x in range(mod)}
    ax = {A * s % mod for s in squares}
    by = {B * s % mod for s in squares}
    if any((1 - s) % mod in by for s in ax):
        return 1
    mod = p ** _hensel_exponent(A, p)
    z2 = {z * z % mod for z in range(0, mod, p)}
    by = {B * y * y % mod for y in range(mod)}
    if any((A + s) % mod in z2 for s in by):
        return 1
    mod = p ** _hensel_exponent(B, p)
    z2 = {z * z % mod for z in range(0, mod, p)}
    ax = {A * x * x % mod for x in range(0, mod, p)}
    if any((B + s) % mod in z2 for s in ax):
        return 1
    return -1


# -- the quaternion class -----------------------------------------------------

@dataclass(frozen=True)
class QuaternionClass:
    """A = (-c(ax + b)/D, ((ax + b)y + m)/m) with D = ad - bc."""

    a: int
    b: int
    c: int
    d: int
    m: int

    def __post_init__(self):
        if self.a * self.c * self.m * self.delta == 0:
            raise BrauerError("need a*c*m*(ad - bc) != 0")

    @property
    def delta(self) -> int:
        return self.a * self.d - self.b * self.c

    @classmethod
    def counterexample(cls) -> "QuaternionClass":
        return cls(11, 5, 3, 1, 3)

    def model(self) -> SurfaceModel:
        return SurfaceModel("generalD7", dict(a=self.a, b=self.b, c=self.c, d=self.d, m=self.m))

    def entries(self, x: Rational, y: Rational) -> tuple[Fraction, Fraction]:
        x, y = _q(x), _q(y)
        lin = self.a * x + self.b
        return -self.c * lin / self.delta, (lin * y + self.m) / self.m

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "m": self.m, "delta": self.delta}


@dataclass(frozen=True)
class LocalPoint:
    """A rational point of the surface, read at one place; certified on construction."""

    place: HilbertPlace
    x: Fraction
    y: Fraction
    t: Fraction
    q: QuaternionClass

    def __post_init__(self):
        for name in ("x", "y", "t"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        object.__setattr__(self, "place", HilbertPlace.parse(self.place))
        q = self.q
        if ((q.a * self.x + q.b) * self.y + q.m) * self.t != q.c * self.x + q.d:
            raise CertificationError(f"({self.x}, {self.y}, {self.t}) is not on the surface")
        p = self.place.p
        if p is not None:
            for name in ("x", "y", "t"):
                if getattr(self, name).denominator % p == 0:
                    raise CertificationError(f"{name} = {getattr(self, name)} is not {p}-integral")

    def to_json(self) -> dict:
        return {"place": str(self.place), "point": [str(self.x), str(self.y), str(self.t)]}


def evaluate_A(q: QuaternionClass, P: LocalPoint) -> int:
    if P.q != q:
        raise BrauerError("point lies on a different surface")
    e1, e2 = q.entries(P.x, P.y)
    if e1 == 0 or e2 == 0:
        raise EvaluationError(
            f"an entry of A vanishes at ({P.x}, {P.y}); pick a point off ax+b = 0 and (ax+b)y+m = 0"
        )
    return hilbert_symbol(e1, e2, P.place)


def residue_mod_q_report(q: QuaternionClass, p: int) -> dict:
    """Residue of A along the fibre over p: the class of (c/(D m)) y modulo p."""
    if not isprime(p):
        raise BrauerError(f"{p} is not prime")
    if p == 2:
        raise BrauerError("the residue description needs an odd prime")
    if q.c % p or q.m % p or q.c % (p * p) == 0 or q.m % (p * p) == 0:
        raise BrauerError(f"p={p} must divide both c and m exactly once")
    bad = [name for name, val in (("a", q.a), ("b", q.b), ("d", q.d), ("delta", q.delta)) if val % p == 0]
    if bad:
        raise BrauerError(f"p={p} divides {', '.join(bad)}")
    coef = Fraction(q.c, q.delta * q.m)
    coef_mod = residue(coef, p)
    classes = {}
    for y in range(1, p):
        sq = legendre(coef_mod * y, p) == 1
        classes[str(y)] = {"square": sq, "A": 1 if sq else -1}
    return {
        "prime": p,
        "coefficient": str(coef),
        "coefficient_mod_p": coef_mod,
        "rule": "ev_A is nontrivial exactly when (c/(delta*m))*y is a non-square mod p",
        "by_y_residue": classes,
    }


def surjectivity_witnesses(q: QuaternionClass, p: int, search: int = 20) -> dict[int, LocalPoint]:
    """Integral-at-p points on which ev_A takes each value, found on the slice x = 0 first."""
    found: dict[int, LocalPoint] = {}
    for x in sorted(range(-search, search + 1), key=abs):
        for yy in [*range(1, search + 1), *range(-1, -search - 1, -1)]:
            den = (q.a * x + q.b) * yy + q.m
            if den == 0:
                continue
            t = Fraction(q.c * x + q.d, den)
            if t.denominator % p == 0:
                continue
            e1, e2 = q.entries(x, yy)
            if e1 == 0 or e2 == 0:
                continue
            P = LocalPoint(HilbertPlace(p), x, yy, t, q)
            found.setdefault(evaluate_A(q, P), P)
            if len(found) == 2:
                return found
    return found


def local_witness(q: QuaternionClass, place) -> LocalPoint:
    """An explicit point of the integral model over Z_p (or R)."""
    v = HilbertPlace.parse(place)
    if v.is_real:
        return LocalPoint(v, 0, 0, Fraction(q.d, q.m), q)
    p = v.p
    if q.c % p:
        k = max(1, valuation(q.m, p))
        mod = p ** k
        x = -q.d * pow(q.c, -1, mod) % mod
        return LocalPoint(v, x, 0, Fraction(q.c * x + q.d, q.m), q)
    if q.a % p == 0:
        raise BrauerError(f"p={p} divides both a and c")
    x0 = Fraction(1 - q.b, q.a)
    y0 = q.c * x0 + q.d - q.m
    return LocalPoint(v, x0, y0, 1, q)


def local_solubility_scan(q: QuaternionClass, bound: int) -> dict:
    if gcd(q.a, q.c) != 1:
        raise BrauerError("local solubility construction needs gcd(a, c) = 1")
    places = [REAL] + [HilbertPlace(p) for p in primerange(2, bound + 1)]
    witnesses = [local_witness(q, v) for v in places]
    return {
        "bound": bound,
        "places": len(places),
        "all_soluble": True,
        "witnesses": [w.to_json() for w in witnesses],
    }


def inequality_certificate(q: QuaternionClass, window: int = 1_000_000) -> dict:
    """Check |ax + b| - |m| > |cx + d| for every integer x.

    Integers in ``[-window, window]`` are checked one by one.  Beyond the
    window both absolute values have fixed sign, so the difference is linear
    and it is enough to check its value at the window edge and its slope.
    """
    a, b, c, d, m = q.a, q.b, q.c, q.d, q.m
    need = max(abs(Fraction(b, a)), abs(Fraction(d, c))) + 1
    if window < need:
        raise BrauerError(f"window must be at least {need}")

    def gap(x):
        return abs(a * x + b) - abs(c * x + d) - abs(m)

    bad = [x for x in range(-window, window + 1) if gap(x) <= 0]
    tails = []
    for side in (1, -1):
        s1 = 1 if a * side > 0 else -1
        s2 = 1 if c * side > 0 else -1
        slope = s1 * a - s2 * c
        x_edge = side * window
        tails.append({
            "side": "x > window" if side > 0 else "x < -window",
            "gap": f"{s1 * a - s2 * c}*x + {s1 * b - s2 * d - abs(m)}",
            "value_at_edge": gap(x_edge),
            "slope_outward": slope * side,
            "ok": gap(x_edge) > 0 and slope * side >= 0,
        })
    return {
        "claim": f"|{a}x + {b}| > |{c}x + {d}| + {abs(m)} for all integers x",
        "window": window,
        "window_failures": bad[:10],
        "tails": tails,
        "pass": not bad and all(t["ok"] for t in tails),
    }


def emptiness_argument(q: QuaternionClass) -> dict:
    """The steps ruling out integral points besides the inequality."""
    a, b, c, d, m = q.a, q.b, q.c, q.d, q.m
    rhs_never_zero = d % c != 0
    y_zero_impossible = d % gcd(c, m) != 0
    return {
        "rhs_never_zero": rhs_never_zero,
        "y_zero_impossible": y_zero_impossible,
        "pass": rhs_never_zero and y_zero_impossible,
    }


VERDICT = "BM obstruction trivial; X(ℤ) = ∅"


def counterexample_report(box: int = 1000, places: int = 100, window: int = 1_000_000) -> dict:
    q = QuaternionClass.counterexample()
    sols = search_box(q.model(), 1, box)
    ineq = inequality_certificate(q, window)
    steps = emptiness_argument(q)
    emptiness = {
        "box": box,
        "box_solutions": len(sols),
        "inequality": ineq,
        "argument": steps,
        "pass": not sols and ineq["pass"] and steps["pass"],
    }
    local = local_solubility_scan(q, places)
    res = residue_mod_q_report(q, 3)
    wit = surjectivity_witnesses(q, 3)
    surj = {
        "prime": 3,
        "residue": res,
        "points": {str(k): {**P.to_json(), "A": k} for k, P in sorted(wit.items())},
        "values": sorted(wit),
        "pass": sorted(wit) == [-1, 1],
    }
    checks = {"emptiness": emptiness, "local_solubility": local, "surjectivity": surj}
    failed = [k for k, v in checks.items() if not v.get("pass", v.get("all_soluble"))]
    if failed:
        raise CertificationError(f"counterexample sub-checks failed: {failed}")
    return {
        "equation": q.model().text(),
        "parameters": q.to_json(),
        **checks,
        "verdict": VERDICT,
    }
