"""Arithmetic in Z[sqrt(a)] and integral points on (x^2 - ay^2)t = y - 1.

Only a = 2, 3 (mod 4) is supported; then Z[sqrt(a)] is the full ring of
integers of Q(sqrt(a)).
"""

from __future__ import annotations

import statistics
from itertools import islice, takewhile
from dataclasses import dataclass
from math import isqrt, log10
from typing import Optional

from sympy import isprime, primerange

from .points import MPoint, is_solution, quadratic_model


class PellError(ValueError):
    pass


def legendre(n: int, p: int) -> int:
    """Legendre symbol (n/p) for an odd prime p, by Euler's criterion."""
    n %= p
    if n == 0:
        return 0
    return 1 if pow(n, (p - 1) // 2, p) == 1 else -1


def check_discriminant(a: int) -> None:
    if a < 2:
        raise PellError(f"a must be at least 2, got {a}")
    if isqrt(a) ** 2 == a:
        raise PellError(f"a={a} is a perfect square")
    if a % 4 == 1:
        raise PellError(f"a={a} is 1 mod 4: Z[sqrt(a)] is not the maximal order")
    if any(a % (p * p) == 0 for p in range(2, isqrt(a) + 1)):
        raise PellError(f"a={a} is not square-free")


@dataclass(frozen=True)
class QuadInt:
    """The element u + v*sqrt(a)."""

    u: int
    v: int
    a: int

    def __mul__(self, other: "QuadInt") -> "QuadInt":
        if isinstance(other, int):
            return QuadInt(self.u * other, self.v * other, self.a)
        if other.a != self.a:
            raise PellError("elements of different rings")
        return QuadInt(self.u * other.u + self.a * self.v * other.v, self.u * other.v + self.v * other.u, self.a)

    __rmul__ = __mul__

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.u, -self.v, self.a)

    def __pow__(self, k: int) -> "QuadInt":
        if k < 0:
            return self.unit_inverse() ** (-k)
        out, base = QuadInt(1, 0, self.a), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "QuadInt":
        return QuadInt(self.u, -self.v, self.a)

    def norm(self) -> int:
        return self.u * self.u - self.a * self.v * self.v

    def unit_inverse(self) -> "QuadInt":
        n = self.norm()
        if n not in (1, -1):
            raise PellError(f"{self} is not a unit")
        c = self.conj()
        return QuadInt(c.u * n, c.v * n, self.a)

    def reduce(self, r: int, p: int) -> int:
        """Image in F_p under sqrt(a) -> r."""
        return (self.u + self.v * r) % p

    def to_json(self) -> dict:
        return {"u": str(self.u), "v": str(self.v), "a": self.a}

    def __str__(self):
        return f"{self.u} + {self.v}*sqrt({self.a})"


def sqrt_continued_fraction(a: int) -> tuple[int, list[int]]:
    """Leading term and one period of the continued fraction of sqrt(a)."""
    a0 = isqrt(a)
    m, d, q = 0, 1, a0
    period = []
    while q != 2 * a0:
        m = d * q - m
        d = (a - m * m) // d
        q = (a0 + m) // d
        period.append(q)
    return a0, period


def fundamental_unit(a: int) -> QuadInt:
    """Least unit > 1 of Z[sqrt(a)], from the convergents of sqrt(a)."""
    check_discriminant(a)
    a0, period = sqrt_continued_fraction(a)
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    terms = iter(period * 2)
    while p * p - a * q * q not in (1, -1):
        c = next(terms)
        p_prev, p = p, c * p + p_prev
        q_prev, q = q, c * q + q_prev
    return QuadInt(p, q, a)


def positive_norm_unit(a: int) -> QuadInt:
    eps = fundamental_unit(a)
    return eps if eps.norm() == 1 else eps * eps


def solve_norm_equation(a: int, p: int) -> Optional[QuadInt]:
    """Some u + v*sqrt(a) with |u^2 - a v^2| = p, or None if there is none.

    Every solution class has a representative with
    0 <= v <= v1*sqrt(p) where u1 + v1*sqrt(a) is the least unit of norm 1,
    so the search below is exhaustive.
    """
    check_discriminant(a)
    if not isprime(p) or p == 2:
        raise PellError(f"p={p} must be an odd prime")
    if legendre(a, p) == -1:
        return None
    v_max = positive_norm_unit(a).v * (isqrt(p) + 1)
    for v in range(v_max + 1):
        for target in (p, -p):
            sq = target + a * v * v
            if sq < 0:
                continue
            u = isqrt(sq)
            if u * u == sq:
                return QuadInt(u, v, a)
    return None


def subgroup_generated(gens: list[int], p: int) -> set[int]:
    seen = {1}
    frontier = [1]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % p
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def multiplicative_order(x: int, p: int) -> int:
    x %= p
    k, y = 1, x
    while y != 1:
        y = y * x % p
        k += 1
    return k


@dataclass(frozen=True)
class SplitPrimeDatum:
    p: int
    r: int
    pi: QuadInt

    def to_json(self) -> dict:
        return {"p": self.p, "r": self.r, "pi": self.pi.to_json()}


def unit_image_surjective(a: int, p: int, r: int, eps: Optional[QuadInt] = None) -> bool:
    eps = eps or fundamental_unit(a)
    return len(subgroup_generated([p - 1, eps.reduce(r, p)], p)) == p - 1


def surjective_primes(a: int, bound: int) -> list[SplitPrimeDatum]:
    """Odd split primes p <= bound where the units of Z[sqrt(a)] hit all of F_p^*.

    The prime above p is the one generated by the norm-equation solution pi
    (with u, v >= 0), so r = -u/v mod p; if the unit image is not surjective
    there, the conjugate prime is tried.
    """
    check_discriminant(a)
    eps = fundamental_unit(a)
    out = []
    for p in primerange(3, bound + 1):
        if legendre(a, p) != 1:
            continue
        pi = solve_norm_equation(a, p)
        if pi is None:
            continue
        for cand in (pi, pi.conj()):
            r = -cand.u * pow(cand.v, -1, p) % p
            if unit_image_surjective(a, p, r, eps):
                out.append(SplitPrimeDatum(p, r, cand))
                break
    return out


class SurjectivityError(PellError):
    pass


@dataclass(frozen=True)
class CurvePoint:
    """An integral point on C_p together with the unit power that produced it."""

    point: MPoint
    sign: int
    power: int
    norm: int

    def to_json(self) -> dict:
        return {"point": self.point.to_json(), "sign": self.sign, "unit_power": self.power, "norm": self.norm}


def _point_from_element(a: int, elt: QuadInt) -> MPoint:
    n = elt.norm()
    if (elt.v - 1) % n:
        raise PellError(f"{elt}: y - 1 is not divisible by the norm {n}")
    return MPoint(elt.u, elt.v, (elt.v - 1) // n)


def point_on_Cp(a: int, datum: SplitPrimeDatum) -> CurvePoint:
    """First point on (x^2 - ay^2)t = y - 1 with x^2 - ay^2 = +-p.

    Finds s*eps^k*conj(pi) congruent to 2r modulo (p, sqrt(a) - r), trying
    s = +1 for every k below the order of eps first and then s = -1.
    """
    eps = fundamental_unit(a)
    p, r = datum.p, datum.r
    sigma_pi = datum.pi.conj()
    target = 2 * r % p
    e = eps.reduce(r, p)
    order = multiplicative_order(e, p)
    base = sigma_pi.reduce(r, p)
    for s in (1, -1):
        val = s * base % p
        for k in range(order):
            if val == target:
                elt = eps ** k * sigma_pi * s
                return CurvePoint(_point_from_element(a, elt), s, k, elt.norm())
            val = val * e % p
    raise SurjectivityError(f"no unit multiple of conj(pi) reaches 2r mod p for p={p}, r={r}")


def iterate_Cp(a: int, datum: SplitPrimeDatum):
    """Endless stream of points on one curve, each the previous times eps^(order of eps mod p)."""
    eps = fundamental_unit(a)
    step = multiplicative_order(eps.reduce(datum.r, datum.p), datum.p)
    jump = eps ** step
    cur = point_on_Cp(a, datum)
    elt = QuadInt(int(cur.point.x), int(cur.point.y), a)
    while True:
        yield cur
        elt = elt * jump
        cur = CurvePoint(_point_from_element(a, elt), cur.sign, cur.power + step, elt.norm())


def points_on_Cp(a: int, datum: SplitPrimeDatum, count: int) -> list[CurvePoint]:
    return list(islice(iterate_Cp(a, datum), count))


def verify_curve_point(a: int, p: int, cp: CurvePoint) -> dict[str, bool]:
    x, y = cp.point.x, cp.point.y
    return {
        "equation": is_solution(quadratic_model(a), cp.point),
        "norm": x * x - a * y * y in (p, -p),
        "divisibility": (y - 1) % p == 0,
    }


def density_experiment(a: int, num_primes: int, points_per_curve: int, prime_bound: int = 10_000) -> dict:
    if num_primes < 1 or points_per_curve < 1:
        raise PellError("need at least one prime and one point per curve")
    data = surjective_primes(a, prime_bound)
    if len(data) < num_primes:
        raise PellError(f"only {len(data)} surjective primes below {prime_bound}")
    eps = fundamental_unit(a)
    curves = []
    failures = 0
    for datum in data[:num_primes]:
        pts = points_on_Cp(a, datum, points_per_curve)
        checks = [verify_curve_point(a, datum.p, cp) for cp in pts]
        failures += sum(not all(c.values()) for c in checks)
        heights = [cp.point.height() for cp in pts]
        ratios = [str(heights[i + 1] / heights[i]) for i in range(len(heights) - 1) if heights[i]]
        curves.append({
            "p": datum.p,
            "r": datum.r,
            "pi": datum.pi.to_json(),
            "norm": pts[0].norm,
            "unit_order_mod_p": multiplicative_order(eps.reduce(datum.r, datum.p), datum.p),
            "points": [cp.to_json() for cp in pts],
            "checks": checks,
            "growth_ratios": ratios,
        })
    return {
        "a": a,
        "fundamental_unit": eps.to_json(),
        "curves": curves,
        "total_points": sum(len(c["points"]) for c in curves),
        "verification_failures": failures,
        "note": "field hypotheses (class number, infinitude of surjective primes) are not checked",
    }


def growth_profile(a: int, datum: SplitPrimeDatum, exponents: range) -> dict:
    """Count points on C_p with height <= 10^k and fit the count against log10 of the bound."""
    bound_max = 10 ** max(exponents)
    eps = fundamental_unit(a)
    pts = list(takewhile(lambda cp: cp.point.height() <= bound_max, iterate_Cp(a, datum)))
    heights = [cp.point.height() for cp in pts]
    counts = [sum(1 for h in heights if h <= 10 ** k) for k in exponents]
    xs = [float(k) for k in exponents]
    ys = [float(c) for c in counts]
    slope, intercept = statistics.linear_regression(xs, ys)
    r = statistics.correlation(xs, ys)
    step = multiplicative_order(eps.reduce(datum.r, datum.p), datum.p)
    return {
        "p": datum.p,
        "exponents": list(exponents),
        "counts": counts,
        "slope_per_decade": slope,
        "intercept": intercept,
        "r_squared": r * r,
        "predicted_slope": 1 / (step * log10(eps.u + eps.v * a ** 0.5)),
    }
