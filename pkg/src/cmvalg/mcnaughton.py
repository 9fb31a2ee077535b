"""Exact one-variable McNaughton functions and their rational-intercept kin.

A function is a canonical list of rational breakpoints on [0, 1] with
integer segment slopes, interpolated linearly.  All arithmetic is exact;
floats never appear.  Structural equality of canonical forms is function
equality.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .errors import InternalInvariantError, PwlError
from .terms import (
    Term,
    TNeg,
    TOplus,
    TVar,
    TZero,
    random_term,
)

F0 = Fraction(0)
F1 = Fraction(1)


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise PwlError(f"expected an exact rational, got {type(v).__name__}")


def _slope(p0, p1) -> Fraction:
    return (p1[1] - p0[1]) / (p1[0] - p0[0])


@dataclass(frozen=True)
class PwlFunction:
    """Canonical breakpoint representation; construct via pwl_canonicalize."""

    points: tuple

    def __post_init__(self):
        pts = self.points
        if len(pts) < 2:
            raise PwlError("need at least the two endpoint breakpoints")
        if pts[0][0] != F0 or pts[-1][0] != F1:
            raise PwlError("breakpoints must start at x=0 and end at x=1")
        for k in range(len(pts) - 1):
            if pts[k][0] >= pts[k + 1][0]:
                raise PwlError("breakpoint abscissas must strictly increase")
        for x, y in pts:
            if not (F0 <= y <= F1):
                raise PwlError(f"value {y} at {x} outside [0,1]")
        for k in range(len(pts) - 1):
            m = _slope(pts[k], pts[k + 1])
            if m.denominator != 1:
                raise PwlError(f"non-integer slope {m} on piece {k}")
        for k in range(1, len(pts) - 1):
            if _slope(pts[k - 1], pts[k]) == _slope(pts[k], pts[k + 1]):
                raise PwlError(f"interior breakpoint {pts[k]} is collinear")

    @property
    def xs(self):
        return tuple(p[0] for p in self.points)

    def __call__(self, q) -> Fraction:
        return pwl_eval(self, q)

    def first_segment(self):
        """(value at 0, integer slope) of the initial piece."""
        m = _slope(self.points[0], self.points[1])
        return self.points[0][1], int(m)

    def last_segment(self):
        """(value at 1, integer slope) of the final piece."""
        m = _slope(self.points[-2], self.points[-1])
        return self.points[-1][1], int(m)

    def __repr__(self):
        pts = ", ".join(f"({x},{y})" for x, y in self.points)
        return f"PwlFunction[{pts}]"


def _merge(points) -> PwlFunction:
    """Drop collinear interior points and build the canonical function."""
    pts = [tuple(p) for p in points]
    out = [pts[0]]
    for k in range(1, len(pts) - 1):
        if _slope(out[-1], pts[k]) != _slope(pts[k], pts[k + 1]):
            out.append(pts[k])
    out.append(pts[-1])
    return PwlFunction(tuple(out))


def pwl_canonicalize(points) -> PwlFunction:
    """Validate raw (x, y) pairs and merge collinear interior points."""
    pts = [(_frac(x), _frac(y)) for x, y in points]
    if len(pts) < 2:
        raise PwlError("need at least two points")
    for k in range(len(pts) - 1):
        if pts[k][0] >= pts[k + 1][0]:
            raise PwlError("points must be sorted with distinct x")
    if pts[0][0] != F0 or pts[-1][0] != F1:
        raise PwlError("endpoints x=0 and x=1 are required")
    for x, y in pts:
        if not (F0 <= y <= F1):
            raise PwlError(f"value {y} outside [0,1]")
    for k in range(len(pts) - 1):
        if _slope(pts[k], pts[k + 1]).denominator != 1:
            raise PwlError(f"non-integer slope between {pts[k]} and {pts[k + 1]}")
    return _merge(pts)


def identity_fn() -> PwlFunction:
    return PwlFunction(((F0, F0), (F1, F1)))


def constant(value) -> PwlFunction:
    v = _frac(value)
    return PwlFunction(((F0, v), (F1, v)))


def pwl_eval(f: PwlFunction, q) -> Fraction:
    """Exact interpolated value at a rational point of [0, 1]."""
    q = _frac(q)
    if not (F0 <= q <= F1):
        raise PwlError(f"argument {q} outside [0,1]")
    xs = f.xs
    k = bisect_right(xs, q) - 1
    if k == len(xs) - 1:
        return f.points[-1][1]
    x0, y0 = f.points[k]
    return y0 + _slope(f.points[k], f.points[k + 1]) * (q - x0)


# --- scalar operations on rationals ---------------------------------------

def s_oplus(a: Fraction, b: Fraction) -> Fraction:
    return min(F1, a + b)


def s_odot(a: Fraction, b: Fraction) -> Fraction:
    return max(F0, a + b - 1)


def s_neg(a: Fraction) -> Fraction:
    return F1 - a


def s_vee(a: Fraction, b: Fraction) -> Fraction:
    return max(a, b)


def s_wedge(a: Fraction, b: Fraction) -> Fraction:
    return min(a, b)


def s_ominus(a: Fraction, b: Fraction) -> Fraction:
    return max(F0, a - b)


def s_imp(a: Fraction, b: Fraction) -> Fraction:
    return min(F1, 1 - a + b)


_SCALAR = {
    "oplus": s_oplus,
    "odot": s_odot,
    "vee": s_vee,
    "wedge": s_wedge,
    "ominus": s_ominus,
    "imp": s_imp,
}

# which linear expression's sign change splits a segment, per operation
_SUM_BREAK = {"oplus", "odot"}        # f + g crosses 1
_DIFF_BREAK = {"vee", "wedge", "ominus"}   # f - g crosses 0
_IMP_BREAK = {"imp"}                  # g - f crosses 0 shifted by 1


def _segment_data(f: PwlFunction, x0: Fraction):
    """(value, slope) of f at the piece containing [x0, next breakpoint)."""
    xs = f.xs
    k = bisect_right(xs, x0) - 1
    if k >= len(xs) - 1:
        k = len(xs) - 2
    return pwl_eval(f, x0), _slope(f.points[k], f.points[k + 1])


def pwl_pointwise(op: str, f: PwlFunction, g: PwlFunction | None = None) -> PwlFunction:
    """Pointwise MV operation, exact via breakpoint refinement."""
    if op == "neg":
        pts = tuple((x, F1 - y) for x, y in f.points)
        return _merge(pts)
    if g is None:
        raise PwlError(f"operation {op} needs two operands")
    if op not in _SCALAR:
        raise PwlError(f"unknown pointwise operation {op!r}")
    scalar = _SCALAR[op]
    grid = sorted(set(f.xs) | set(g.xs))
    extra = []
    for k in range(len(grid) - 1):
        x0, x1 = grid[k], grid[k + 1]
        f0, mf = _segment_data(f, x0)
        g0, mg = _segment_data(g, x0)
        if op in _SUM_BREAK:
            m, c = mf + mg, f0 + g0          # crosses 1
            target = F1
        elif op in _DIFF_BREAK:
            m, c = mf - mg, f0 - g0          # crosses 0
            target = F0
        else:                                # imp: 1 - f + g crosses 1
            m, c = mg - mf, 1 - f0 + g0
            target = F1
        if m != 0:
            xc = x0 + (target - c) / m
            if x0 < xc < x1:
                extra.append(xc)
    full = sorted(set(grid) | set(extra))
    pts = tuple((x, scalar(pwl_eval(f, x), pwl_eval(g, x))) for x in full)
    return _merge(pts)


def pwl_compose(f: PwlFunction, g: PwlFunction) -> PwlFunction:
    """Exact f o g; breakpoints are g's plus preimages of f's kinks."""
    grid = set(g.xs)
    interior = [p[0] for p in f.points[1:-1]]
    for k in range(len(g.points) - 1):
        (a0, b0), (a1, b1) = g.points[k], g.points[k + 1]
        m = _slope(g.points[k], g.points[k + 1])
        if m == 0:
            continue
        for c in interior:
            xc = a0 + (c - b0) / m
            if a0 < xc < a1:
                grid.add(xc)
    full = sorted(grid)
    pts = tuple((x, pwl_eval(f, pwl_eval(g, x))) for x in full)
    return _merge(pts)


def term_to_pwl(t: Term) -> PwlFunction:
    """Semantics of an MV-term in the standard algebra over [0, 1]."""
    if isinstance(t, TVar):
        return identity_fn()
    if isinstance(t, TZero):
        return constant(0)
    if isinstance(t, TNeg):
        return pwl_pointwise("neg", term_to_pwl(t.arg))
    if isinstance(t, TOplus):
        return pwl_pointwise("oplus", term_to_pwl(t.left), term_to_pwl(t.right))
    raise PwlError(f"not a term: {t!r}")


@dataclass(frozen=True)
class MembershipClass:
    """Intercept-based classification of one function."""

    in_m1: bool          # every piece has an integer intercept
    in_tilde_q: bool     # every piece has a rational intercept
    intercepts: tuple


def membership(f: PwlFunction) -> MembershipClass:
    """Per-piece intercepts alpha = y - m x; integer ones mean McNaughton."""
    alphas = []
    for k in range(len(f.points) - 1):
        x0, y0 = f.points[k]
        m = _slope(f.points[k], f.points[k + 1])
        alphas.append(y0 - m * x0)
    in_m1 = all(a.denominator == 1 for a in alphas)
    return MembershipClass(in_m1, True, tuple(alphas))


def random_mcnaughton(rng: Random, max_depth: int = 4) -> PwlFunction:
    """A random McNaughton function, built through a random term."""
    return term_to_pwl(random_term(rng, max_depth))


# --- the two concrete CMV-ideals ------------------------------------------

def boundary_ideal_member(f: PwlFunction) -> bool:
    """f(0) = f(1) = 0."""
    return f.points[0][1] == F0 and f.points[-1][1] == F0


def germ_ideal_member(f: PwlFunction) -> bool:
    """Identically zero on a neighbourhood of 0 and of 1.

    For piecewise-linear functions this is exactly flatness-at-zero of the
    first and last segments.
    """
    return f.first_segment() == (F0, 0) and f.last_segment() == (F0, 0)


def congruent_mod(ideal_id: str, f: PwlFunction, g: PwlFunction) -> bool:
    """The congruence induced by one of the two concrete ideals."""
    if ideal_id == "boundary":
        return (f.points[0][1] == g.points[0][1]
                and f.points[-1][1] == g.points[-1][1])
    if ideal_id == "germ":
        return f.first_segment() == g.first_segment() \
            and f.last_segment() == g.last_segment()
    raise ValueError(f"unknown ideal {ideal_id!r}")


def ideal_member(ideal_id: str, f: PwlFunction) -> bool:
    if ideal_id == "boundary":
        return boundary_ideal_member(f)
    if ideal_id == "germ":
        return germ_ideal_member(f)
    raise ValueError(f"unknown ideal {ideal_id!r}")


_TENT = PwlFunction(((F0, F0), (Fraction(1, 2), F1), (F1, F0)))
_SPIKE = PwlFunction(((F0, F0), (Fraction(1, 4), F0), (Fraction(1, 2), F1),
                      (Fraction(3, 4), F0), (F1, F0)))


def _random_member(ideal_id: str, rng: Random) -> PwlFunction:
    probe = random_mcnaughton(rng)
    cap = _TENT if ideal_id == "boundary" else _SPIKE
    return pwl_pointwise("wedge", probe, cap)


def closure_properties_check(ideal_id: str, rng: Random,
                             samples: int = 200) -> dict:
    """Randomized witness suite for the four CMV-ideal conditions.

    Checks downward closure, +-closure, closure under right composition
    and left-composition congruence on sampled members; returns the
    counterexample list (expected empty) per condition.
    """
    bad = {"downward": [], "oplus": [], "right-compose": [],
           "left-congruence": []}
    for _ in range(samples):
        m = _random_member(ideal_id, rng)
        probe = random_mcnaughton(rng)
        below = pwl_pointwise("wedge", probe, m)
        if not ideal_member(ideal_id, below):
            bad["downward"].append((m, below))
        m2 = _random_member(ideal_id, rng)
        if not ideal_member(ideal_id, pwl_pointwise("oplus", m, m2)):
            bad["oplus"].append((m, m2))
        if not ideal_member(ideal_id, pwl_compose(m, probe)):
            bad["right-compose"].append((m, probe))
        partner = pwl_pointwise("oplus", probe, m2)   # probe ~ partner mod I
        if not congruent_mod(ideal_id, probe, partner):
            bad["left-congruence"].append((probe, partner))
        else:
            h = random_mcnaughton(rng)
            if not congruent_mod(ideal_id, pwl_compose(h, probe),
                                 pwl_compose(h, partner)):
                bad["left-congruence"].append((h, probe, partner))
    return bad


def broken_relation_counterexample(rng: Random, attempts: int = 200):
    """A witness that 'equal at 1/2' is not a CMV-congruence.

    Returns (f, g, h) with f(1/2) = g(1/2) but (f o h)(1/2) != (g o h)(1/2),
    i.e. right-composition compatibility fails.
    """
    half = Fraction(1, 2)
    for _ in range(attempts):
        f = random_mcnaughton(rng)
        g = random_mcnaughton(rng)
        if pwl_eval(f, half) != pwl_eval(g, half):
            continue
        for _ in range(20):
            h = random_mcnaughton(rng)
            if pwl_eval(f, pwl_eval(h, half)) != pwl_eval(g, pwl_eval(h, half)):
                return f, g, h
    return None


# --- evaluation target for the logic ---------------------------------------

class McNaughtonAlgebra:
    """The McNaughton CMV-algebra as an evaluation target.

    Elements are PwlFunction values; the monoid operation is composition
    and the monoid identity is the identity function.
    """

    @property
    def identity_element(self) -> PwlFunction:
        return identity_fn()

    @property
    def top(self) -> PwlFunction:
        return constant(1)

    @property
    def bottom(self) -> PwlFunction:
        return constant(0)

    def oplus(self, f, g):
        return pwl_pointwise("oplus", f, g)

    def neg(self, f):
        return pwl_pointwise("neg", f)

    def imp(self, f, g):
        return pwl_pointwise("imp", f, g)

    def diamond(self, f, g):
        return pwl_compose(f, g)

    def is_top(self, f) -> bool:
        return f == self.top


MCNAUGHTON = McNaughtonAlgebra()
