"""Exact M-integral point search on the explicit surface families.

All arithmetic is in integers and ``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from sympy import divisors

FAMILIES = {
    "bilinear": ("a", "b", "c", "d", "e", "f"),   # (axy + bx + cy + d)t = ex + f
    "normform": ("a", "b", "c", "d"),             # (x^2 - ay^2)t = bx + cy + d
    "generalD7": ("a", "b", "c", "d", "m"),       # ((ax + b)y + m)t = cx + d
}


class ModelError(ValueError):
    pass


def _is_square(q: Fraction) -> bool:
    from math import isqrt

    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


@dataclass(frozen=True)
class SurfaceModel:
    family: str
    coeffs: dict

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ModelError(f"unknown family {self.family!r}; expected one of {sorted(FAMILIES)}")
        names = FAMILIES[self.family]
        missing = [k for k in names if k not in self.coeffs]
        extra = [k for k in self.coeffs if k not in names]
        if missing or extra:
            raise ModelError(f"{self.family} needs coefficients {names}; missing {missing}, unexpected {extra}")
        coeffs = {k: Fraction(self.coeffs[k]) for k in names}
        if self.family != "bilinear" and any(v.denominator != 1 for v in coeffs.values()):
            raise ModelError(f"{self.family} coefficients must be integers")
        if self.family == "normform" and _is_square(coeffs["a"]):
            raise ModelError("normform needs a non-square a")
        if self.family == "generalD7":
            a, b, c, d, m = (coeffs[k] for k in names)
            if a * c * m * (a * d - b * c) == 0:
                raise ModelError("generalD7 needs a*c*m*(ad - bc) != 0")
        object.__setattr__(self, "coeffs", coeffs)

    def __hash__(self):
        return hash((self.family, tuple(sorted(self.coeffs.items()))))

    def __getitem__(self, key):
        return self.coeffs[key]

    def lhs_factor(self, x, y) -> Fraction:
        """The coefficient of t."""
        k = self.coeffs
        if self.family == "bilinear":
            return k["a"] * x * y + k["b"] * x + k["c"] * y + k["d"]
        if self.family == "normform":
            return x * x - k["a"] * y * y
        return (k["a"] * x + k["b"]) * y + k["m"]

    def rhs(self, x, y) -> Fraction:
        k = self.coeffs
        if self.family == "bilinear":
            return k["e"] * x + k["f"]
        if self.family == "normform":
            return k["b"] * x + k["c"] * y + k["d"]
        return k["c"] * x + k["d"]

    def text(self) -> str:
        k = {n: _fmt(v) for n, v in self.coeffs.items()}
        if self.family == "bilinear":
            return f"({k['a']}xy + {k['b']}x + {k['c']}y + {k['d']})t = {k['e']}x + {k['f']}"
        if self.family == "normform":
            return f"(x^2 - {k['a']}y^2)t = {k['b']}x + {k['c']}y + {k['d']}"
        return f"(({k['a']}x + {k['b']})y + {k['m']})t = {k['c']}x + {k['d']}"

    def to_json(self) -> dict:
        return {"family": self.family, "coeffs": {k: _fmt(v) for k, v in self.coeffs.items()}}

    @classmethod
    def from_json(cls, obj: dict) -> "SurfaceModel":
        return cls(obj["family"], {k: Fraction(str(v)) for k, v in obj["coeffs"].items()})


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def trivial_model() -> SurfaceModel:
    """(xy - 1)t = x - 1."""
    return SurfaceModel("bilinear", dict(a=1, b=0, c=0, d=-1, e=1, f=-1))


def quadratic_model(a: int) -> SurfaceModel:
    """(x^2 - ay^2)t = y - 1."""
    return SurfaceModel("normform", dict(a=a, b=0, c=1, d=-1))


def counterexample_model() -> SurfaceModel:
    """((11x + 5)y + 3)t = 3x + 1."""
    return SurfaceModel("generalD7", dict(a=11, b=5, c=3, d=1, m=3))


@dataclass(frozen=True, order=True)
class MPoint:
    x: Fraction
    y: Fraction
    t: Fraction
    M: int = 1

    def __post_init__(self):
        for name in ("x", "y", "t"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.M < 1:
            raise ValueError("M must be positive")
        if any((self.M * v).denominator != 1 for v in (self.x, self.y, self.t)):
            raise ValueError(f"({self.x}, {self.y}, {self.t}) is not {self.M}-integral")

    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.x, self.y, self.t

    def height(self) -> Fraction:
        return max(abs(self.x), abs(self.y), abs(self.t))

    def to_json(self) -> list[str]:
        return [_fmt(self.x), _fmt(self.y), _fmt(self.t)]

    @classmethod
    def from_json(cls, obj, M: int = 1) -> "MPoint":
        return cls(*(Fraction(str(v)) for v in obj), M=M)


def is_solution(model: SurfaceModel, p) -> bool:
    x, y, t = p.coords() if isinstance(p, MPoint) else map(Fraction, p)
    return model.lhs_factor(x, y) * t == model.rhs(x, y)


def _lcm_denominator(model: SurfaceModel) -> int:
    from math import lcm

    out = 1
    for v in model.coeffs.values():
        out = lcm(out, v.denominator)
    return out


def _linear_row(model: SurfaceModel, X: int, M: int) -> Optional[tuple[int, int, int]]:
    """For fixed scaled ``X = Mx``, integers ``(alpha, beta, gamma)`` with
    ``(alpha*Y + beta) * T == gamma`` equivalent to the model equation,
    where ``Y = My`` and ``T = Mt``; ``None`` if the family is not linear in y.
    """
    k = model.coeffs
    L = _lcm_denominator(model)
    if model.family == "bilinear":
        alpha = L * (k["a"] * X + k["c"] * M)
        beta = L * (k["b"] * M * X + k["d"] * M * M)
        gamma = L * (k["e"] * M * M * X + k["f"] * M ** 3)
    elif model.family == "generalD7":
        alpha = k["a"] * X + k["b"] * M
        beta = k["m"] * M * M
        gamma = M * M * (k["c"] * X + k["d"] * M)
    else:
        return None
    return int(alpha), int(beta), int(gamma)


def _solve_row_linear(alpha: int, beta: int, gamma: int, R: int) -> Iterable[tuple[int, int]]:
    """All (Y, T) with |Y|, |T| <= R and (alpha*Y + beta)*T == gamma."""
    if gamma != 0:
        if alpha == 0:
            if beta != 0 and gamma % beta == 0 and abs(gamma // beta) <= R:
                T = gamma // beta
                for Y in range(-R, R + 1):
                    yield Y, T
            return
        for q in divisors(abs(gamma)):
            for delta in (q, -q):
                T = gamma // delta
                if abs(T) > R:
                    continue
                num = delta - beta
                if num % alpha == 0 and abs(num // alpha) <= R:
                    yield num // alpha, T
        return
    # gamma == 0: t = 0 on the whole row, plus the zero locus of the factor
    for Y in range(-R, R + 1):
        if alpha * Y + beta == 0:
            for T in range(-R, R + 1):
                yield Y, T
        else:
            yield Y, 0


def _solve_row_generic(model: SurfaceModel, X: int, M: int, R: int) -> Iterable[tuple[int, int]]:
    x = Fraction(X, M)
    for Y in range(-R, R + 1):
        y = Fraction(Y, M)
        A, C = model.lhs_factor(x, y), model.rhs(x, y)
        if A == 0:
            if C == 0:
                for T in range(-R, R + 1):
                    yield Y, T
            continue
        t = C / A
        T = t * M
        if T.denominator == 1 and abs(T) <= R:
            yield Y, int(T)


def search_scaled(model: SurfaceModel, M: int, B: int, x_range: Optional[tuple[int, int]] = None) -> set[tuple[int, int, int]]:
    """Like :func:`search_box` but returns the integer triples ``(Mx, My, Mt)``."""
    if M < 1 or B < 1:
        raise ValueError("M and B must be positive")
    R = M * B
    lo, hi = x_range if x_range is not None else (-R, R)
    out = set()
    for X in range(max(lo, -R), min(hi, R) + 1):
        row = _linear_row(model, X, M)
        sols = _solve_row_linear(*row, R) if row is not None else _solve_row_generic(model, X, M, R)
        out.update((X, Y, T) for Y, T in sols)
    return out


def search_box(model: SurfaceModel, M: int, B: int, x_range: Optional[tuple[int, int]] = None) -> set[MPoint]:
    """All M-integral solutions with |Mx|, |My|, |Mt| <= M*B.

    Rows are indexed by ``X = Mx``; ``x_range`` restricts them (inclusive) so
    the search can be partitioned.
    """
    return {
        MPoint(Fraction(X, M), Fraction(Y, M), Fraction(T, M), M)
        for X, Y, T in search_scaled(model, M, B, x_range)
    }


def naive_search(model: SurfaceModel, M: int, B: int) -> set[MPoint]:
    """Triple loop over the whole box; only for small B."""
    R = M * B
    out = set()
    rng = range(-R, R + 1)
    for X in rng:
        for Y in rng:
            for T in rng:
                p = (Fraction(X, M), Fraction(Y, M), Fraction(T, M))
                if is_solution(model, p):
                    out.add(MPoint(*p, M=M))
    return out


# ---------------------------------------------------------------------------
# Curves containing all M-integral points of (xy - 1)t = x - 1


def ratio_bound(M: int) -> int:
    """Bound on |(y - 1)/y| over nonzero M-integral y; attained at y = -1/M."""
    return M + 1


@dataclass(frozen=True)
class CurveFamily:
    """{t = 0} together with the lines y = j and x = 1 + i for M-integral j, i.

    ``y_bound`` and ``x_bound`` bound |j| and |i|.
    """

    M: int
    y_bound: int
    x_bound: int

    @property
    def y_values(self) -> tuple[Fraction, ...]:
        k = self.y_bound * self.M
        return tuple(Fraction(j, self.M) for j in range(-k, k + 1))

    @property
    def x_values(self) -> tuple[Fraction, ...]:
        k = self.x_bound * self.M
        return tuple(1 + Fraction(i, self.M) for i in range(-k, k + 1))

    def curves_through_scaled(self, X: int, Y: int, T: int) -> list[str]:
        """Curves through the point ``(X/M, Y/M, T/M)``."""
        M, out = self.M, []
        if T == 0:
            out.append("t=0")
        if abs(Y) <= self.y_bound * M:
            out.append("y=" + _fmt(Fraction(Y, M)))
        if abs(X - M) <= self.x_bound * M:
            out.append("x=" + _fmt(Fraction(X, M)))
        return out

    def curves_through(self, p: MPoint) -> list[str]:
        M = self.M
        X, Y, T = p.x * M, p.y * M, p.t * M
        if any(v.denominator != 1 for v in (X, Y, T)):
            return []
        return self.curves_through_scaled(int(X), int(Y), int(T))

    def contains(self, p: MPoint) -> bool:
        return bool(self.curves_through(p))

    def to_json(self) -> dict:
        return {
            "M": self.M,
            "t_zero": True,
            "y": [_fmt(v) for v in self.y_values],
            "x": [_fmt(v) for v in self.x_values],
        }


def curve_decomposition(M: int) -> CurveFamily:
    if M < 1:
        raise ValueError("M must be positive")
    return CurveFamily(M, 2 * M, 2 * ratio_bound(M))


class CertificationError(AssertionError):
    pass


def nondensity_certificate(M: int, B: int) -> dict:
    """Check every M-integral point of the trivial model in the box against the curve family."""
    family = curve_decomposition(M)
    points = search_scaled(trivial_model(), M, B)
    per_curve: dict[str, int] = {}
    kinds = {"t=0": 0, "y=const": 0, "x=const": 0}
    off = []
    for X, Y, T in points:
        curves = family.curves_through_scaled(X, Y, T)
        if not curves:
            off.append(MPoint(Fraction(X, M), Fraction(Y, M), Fraction(T, M), M))
            continue
        for c in curves:
            per_curve[c] = per_curve.get(c, 0) + 1
            kinds["t=0" if c == "t=0" else c[0] + "=const"] += 1
    report = {
        "M": M,
        "bound": B,
        "count": len(points),
        "on_family": len(points) - len(off),
        "pass": not off,
        "kinds": kinds,
        "curves": dict(sorted(per_curve.items())),
        "family": family.to_json(),
    }
    if off:
        report["off_family"] = [p.to_json() for p in sorted(off)[:20]]
        raise CertificationError(f"{len(off)} solutions off the curve family, e.g. {off[0]}")
    return report
