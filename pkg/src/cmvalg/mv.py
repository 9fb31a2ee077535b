"""Finite MV-algebras as validated integer operation tables.

Elements are dense indices 0..size-1; labels are presentation-only.
Chain labels are exact rationals rendered as strings, never floats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import (
    InternalInvariantError,
    LawViolationError,
    MalformedTableError,
    NotAnIdealError,
    SizeBoundError,
)

DEFAULT_MAX_CELLS = 100_000


def _as_table(data, shape, name: str) -> np.ndarray:
    arr = np.asarray(data, dtype=np.int64)
    if arr.shape != shape:
        raise MalformedTableError(f"{name} must have shape {shape}, got {arr.shape}")
    n = shape[0]
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise MalformedTableError(f"{name} contains an index outside 0..{n - 1}")
    arr.setflags(write=False)
    return arr


class FiniteMvAlgebra:
    """A finite MV-algebra on indices 0..size-1.

    Construction validates all six defining equations exhaustively and
    raises LawViolationError with the first witness tuple otherwise, so
    every live instance is a genuine MV-algebra.
    """

    __slots__ = ("size", "oplus", "neg", "zero", "names", "_derived")

    def __init__(self, oplus, neg, zero, names=None):
        oplus = np.asarray(oplus, dtype=np.int64)
        if oplus.ndim != 2 or oplus.shape[0] != oplus.shape[1]:
            raise MalformedTableError(f"oplus must be square, got shape {oplus.shape}")
        n = oplus.shape[0]
        if n == 0:
            raise MalformedTableError("algebra must have at least one element")
        self.size = n
        self.oplus = _as_table(oplus, (n, n), "oplus")
        self.neg = _as_table(neg, (n,), "neg")
        if not 0 <= int(zero) < n:
            raise MalformedTableError(f"zero index {zero} out of range")
        self.zero = int(zero)
        if names is None:
            names = tuple(str(i) for i in range(n))
        names = tuple(str(s) for s in names)
        if len(names) != n:
            raise MalformedTableError(f"expected {n} names, got {len(names)}")
        self.names = names
        self._derived = None
        self._check_axioms()

    def _check_axioms(self) -> None:
        n, op, neg, zero = self.size, self.oplus, self.neg, self.zero
        idx = np.arange(n)
        w = kernels.assoc_witness(op)
        if w is not None:
            raise LawViolationError("MV1", w, "(x+y)+z != x+(y+z)")
        bad = np.argwhere(op != op.T)
        if bad.size:
            x, y = bad[0]
            raise LawViolationError("MV2", (int(x), int(y)), "x+y != y+x")
        bad = np.flatnonzero(op[:, zero] != idx)
        if bad.size:
            raise LawViolationError("MV3", (int(bad[0]),), "x+0 != x")
        bad = np.flatnonzero(neg[neg] != idx)
        if bad.size:
            raise LawViolationError("MV4", (int(bad[0]),), "neg(neg(x)) != x")
        one = int(neg[zero])
        bad = np.flatnonzero(op[:, one] != one)
        if bad.size:
            raise LawViolationError("MV5", (int(bad[0]),), "x+1 != 1")
        inner = neg[op[neg, :]]                      # inner[x,y] = (x* + y)*
        luk = op[inner, idx[None, :]]                # luk[x,y] = (x* + y)* + y
        bad = np.argwhere(luk != luk.T)
        if bad.size:
            x, y = bad[0]
            raise LawViolationError("MV6", (int(x), int(y)),
                                    "(x*+y)*+y != (y*+x)*+x")

    @property
    def one(self) -> int:
        return int(self.neg[self.zero])

    @property
    def is_trivial(self) -> bool:
        return self.size == 1

    @property
    def derived(self) -> "DerivedOps":
        if self._derived is None:
            self._derived = derived_ops(self)
        return self._derived

    def leq(self, x: int, y: int) -> bool:
        return bool(self.derived.le[x, y])

    def __repr__(self) -> str:
        return f"FiniteMvAlgebra(size={self.size})"


def validate_mv(oplus, neg, zero, names=None) -> FiniteMvAlgebra:
    """Validate raw tables, returning the algebra or raising with a witness."""
    return FiniteMvAlgebra(oplus, neg, zero, names)


@dataclass(frozen=True)
class DerivedOps:
    """Tables of the derived operations of one algebra."""

    odot: np.ndarray
    imp: np.ndarray
    ominus: np.ndarray
    vee: np.ndarray
    wedge: np.ndarray
    dist: np.ndarray
    le: np.ndarray


def ntimes(algebra: FiniteMvAlgebra, x: int, n: int) -> int:
    """x + x + ... + x, n summands (0 for n = 0)."""
    acc = algebra.zero
    for _ in range(n):
        acc = int(algebra.oplus[acc, x])
    return acc


def npower(algebra: FiniteMvAlgebra, x: int, n: int) -> int:
    """x . x . ... . x, n factors (1 for n = 0)."""
    acc = algebra.one
    odot = algebra.derived.odot
    for _ in range(n):
        acc = int(odot[acc, x])
    return acc


def derived_ops(algebra: FiniteMvAlgebra) -> DerivedOps:
    """Build x.y, x->y, x-y, join, meet, distance and the lattice order."""
    op, neg = algebra.oplus, algebra.neg
    n = algebra.size
    idx = np.arange(n)
    odot = neg[op[np.ix_(neg, neg)]]
    imp = op[neg, :]
    le = imp == algebra.one
    ominus = odot[:, neg]
    vee = op[idx[:, None], odot[neg, :]]
    wedge = odot[idx[:, None], imp]
    dist = op[ominus, ominus.T]
    for arr in (odot, imp, ominus, vee, wedge, dist, le):
        arr.setflags(write=False)
    return DerivedOps(odot, imp, ominus, vee, wedge, dist, le)


def check_residuation(algebra: FiniteMvAlgebra):
    """Witness against x.y <= z iff x <= y->z, or None."""
    d = algebra.derived
    return kernels.residuation_witness(d.odot, d.imp, d.le)


def check_lattice_order(algebra: FiniteMvAlgebra):
    """Verify <= is a bounded lattice order with join/meet as computed.

    Returns None or a (law, witness) pair for the first failure.
    """
    d = algebra.derived
    n = algebra.size
    le, idx = d.le, np.arange(n)
    if not le[idx, idx].all():
        return ("reflexive", (int(np.flatnonzero(~le[idx, idx])[0]),))
    anti = le & le.T & ~np.eye(n, dtype=bool)
    if anti.any():
        x, y = np.argwhere(anti)[0]
        return ("antisymmetric", (int(x), int(y)))
    trans = (le.astype(np.int64) @ le.astype(np.int64) > 0) & ~le
    if trans.any():
        x, z = np.argwhere(trans)[0]
        return ("transitive", (int(x), int(z)))
    if not le[algebra.zero, :].all():
        return ("bottom", (int(np.flatnonzero(~le[algebra.zero, :])[0]),))
    if not le[:, algebra.one].all():
        return ("top", (int(np.flatnonzero(~le[:, algebra.one])[0]),))
    if not (le[idx[:, None], d.vee].all() and le[idx[None, :], d.vee].all()):
        return ("join-upper-bound", ())
    w = kernels.least_upper_witness(le, d.vee)
    if w is not None:
        return ("join-least", w)
    if not (le[d.wedge, idx[:, None]].all() and le[d.wedge, idx[None, :]].all()):
        return ("meet-lower-bound", ())
    w = kernels.greatest_lower_witness(le, d.wedge)
    if w is not None:
        return ("meet-greatest", w)
    return None


def lukasiewicz_chain(n: int) -> FiniteMvAlgebra:
    """The chain with elements 0, 1/n, ..., 1 under truncated sum."""
    if n < 1:
        raise ValueError("chain parameter must be >= 1")
    size = n + 1
    a = np.arange(size)
    oplus = np.minimum(a[:, None] + a[None, :], n)
    neg = n - a
    names = tuple(str(Fraction(k, n)) for k in range(size))
    return FiniteMvAlgebra(oplus, neg, 0, names)


def trivial_mv() -> FiniteMvAlgebra:
    return FiniteMvAlgebra([[0]], [0], 0, ("0",))


def product_mv(factors, max_cells: int = DEFAULT_MAX_CELLS) -> FiniteMvAlgebra:
    """Direct product with pointwise operations; names are tuple labels."""
    factors = list(factors)
    if not factors:
        raise ValueError("product of no factors")
    size = 1
    for f in factors:
        size *= f.size
    if size * size > max_cells:
        raise SizeBoundError(f"product would need {size * size} cells "
                             f"(bound {max_cells})")
    sizes = [f.size for f in factors]
    digit_lists = [np.array(t) for t in zip(*itertools.product(*[range(s) for s in sizes]))]
    strides = np.ones(len(factors), dtype=np.int64)
    for j in range(len(factors) - 2, -1, -1):
        strides[j] = strides[j + 1] * sizes[j + 1]
    oplus = np.zeros((size, size), dtype=np.int64)
    neg = np.zeros(size, dtype=np.int64)
    for j, f in enumerate(factors):
        dj = digit_lists[j]
        oplus += strides[j] * f.oplus[np.ix_(dj, dj)]
        neg += strides[j] * f.neg[dj]
    names = tuple(
        "(" + ",".join(factors[j].names[digit_lists[j][x]] for j in range(len(factors))) + ")"
        for x in range(size)
    )
    return FiniteMvAlgebra(oplus, neg, 0, names)


def power_mv(algebra: FiniteMvAlgebra, k: int,
             max_cells: int = DEFAULT_MAX_CELLS) -> FiniteMvAlgebra:
    """k-fold pointwise power of one algebra."""
    if k < 1:
        raise ValueError("power exponent must be >= 1")
    return product_mv([algebra] * k, max_cells=max_cells)


def boolean_skeleton(algebra: FiniteMvAlgebra) -> np.ndarray:
    """Indices of the idempotents; the largest Boolean subalgebra."""
    n = algebra.size
    idx = np.arange(n)
    idem = np.flatnonzero(algebra.oplus[idx, idx] == idx)
    members = set(int(i) for i in idem)
    for x in idem:
        if int(algebra.neg[x]) not in members:
            raise InternalInvariantError("skeleton not closed under negation")
        for y in idem:
            if int(algebra.oplus[x, y]) not in members:
                raise InternalInvariantError("skeleton not closed under +")
    if algebra.zero not in members or algebra.one not in members:
        raise InternalInvariantError("skeleton misses a bound")
    return idem


@dataclass(frozen=True)
class IdealSet:
    """An MV-ideal given as a member subset, with prime/maximal flags."""

    algebra: FiniteMvAlgebra = field(compare=False, repr=False)
    members: frozenset
    prime: bool
    maximal: bool

    @property
    def proper(self) -> bool:
        return len(self.members) < self.algebra.size


def is_mv_ideal(algebra: FiniteMvAlgebra, members) -> bool:
    """Nonempty, downward closed and closed under truncated sum."""
    mem = frozenset(int(m) for m in members)
    if not mem or any(not 0 <= m < algebra.size for m in mem):
        return False
    if algebra.zero not in mem:
        return False
    inI = np.zeros(algebra.size, dtype=bool)
    inI[list(mem)] = True
    le = algebra.derived.le
    idx = list(mem)
    if (le[:, idx] & ~inI[:, None]).any():
        return False
    if not inI[algebra.oplus[np.ix_(idx, idx)]].all():
        return False
    return True


def enumerate_mv_ideals(algebra: FiniteMvAlgebra,
                        max_cells: int = DEFAULT_MAX_CELLS) -> list:
    """All MV-ideals, flagged prime/maximal.

    In a finite MV-algebra every ideal is the downset of its maximum,
    which is idempotent, so ideals correspond to Boolean-skeleton
    elements.  The brute-force subset scan lives in the test suite.
    """
    n = algebra.size
    if n * n > max_cells:
        raise SizeBoundError(f"ideal enumeration bound exceeded for size {n}")
    le = algebra.derived.le
    ominus = algebra.derived.ominus
    subsets = []
    for b in boolean_skeleton(algebra):
        members = frozenset(int(i) for i in np.flatnonzero(le[:, b]))
        if not is_mv_ideal(algebra, members):
            raise InternalInvariantError("downset of idempotent is not an ideal")
        subsets.append(members)
    subsets.sort(key=lambda s: (len(s), sorted(s)))
    ideals = []
    for mem in subsets:
        proper = len(mem) < n
        inI = np.zeros(n, dtype=bool)
        inI[list(mem)] = True
        prime = proper and bool((inI[ominus] | inI[ominus].T).all())
        maximal = proper and not any(
            mem < other and len(other) < n for other in subsets
        )
        ideals.append(IdealSet(algebra, mem, prime, maximal))
    return ideals


def infinitesimals(algebra: FiniteMvAlgebra) -> frozenset:
    """Nonzero a with n.a <= a* for every multiple (stable within |A| steps)."""
    out = set()
    le = algebra.derived.le
    for a in range(algebra.size):
        if a == algebra.zero:
            continue
        acc = a
        ok = True
        for _ in range(algebra.size):
            if not le[acc, algebra.neg[a]]:
                ok = False
                break
            acc = int(algebra.oplus[acc, a])
        if ok:
            out.add(a)
    return frozenset(out)


@dataclass(frozen=True)
class RadicalReport:
    radical: frozenset
    infinitesimal_elements: frozenset
    is_perfect: bool
    is_simple: bool
    is_trivial: bool


def radical_and_perfect(algebra: FiniteMvAlgebra) -> RadicalReport:
    """Radical, perfectness and simplicity flags.

    The trivial algebra is reported as neither simple nor perfect, with
    the is_trivial flag raised instead of a silent convention.
    """
    ideals = enumerate_mv_ideals(algebra)
    maximal = [i.members for i in ideals if i.maximal]
    rad = frozenset(range(algebra.size))
    for m in maximal:
        rad &= m
    infs = infinitesimals(algebra)
    if rad != infs | {algebra.zero}:
        raise InternalInvariantError(
            f"radical {sorted(rad)} differs from infinitesimals+0 {sorted(infs)}")
    if algebra.is_trivial:
        return RadicalReport(rad, infs, False, False, True)
    rad_star = frozenset(int(algebra.neg[x]) for x in rad)
    perfect = rad | rad_star == frozenset(range(algebra.size))
    simple = sum(1 for i in ideals if i.proper) == 1
    return RadicalReport(rad, infs, perfect, simple, False)


@dataclass(frozen=True)
class MvQuotient:
    algebra: FiniteMvAlgebra
    projection: np.ndarray


def congruence_classes(algebra: FiniteMvAlgebra, members) -> np.ndarray:
    """Class labels of the congruence x ~ y iff d(x, y) in I."""
    n = algebra.size
    inI = np.zeros(n, dtype=bool)
    inI[list(members)] = True
    related = inI[algebra.derived.dist]
    first = related.argmax(axis=1)              # least related element
    reps = np.unique(first)
    labels = {int(r): c for c, r in enumerate(reps)}
    return np.array([labels[int(first[x])] for x in range(n)], dtype=np.int64)


def quotient_mv(algebra: FiniteMvAlgebra, members) -> MvQuotient:
    """Quotient by an MV-ideal, plus the projection onto class indices."""
    if isinstance(members, IdealSet):
        members = members.members
    members = frozenset(int(m) for m in members)
    if not is_mv_ideal(algebra, members):
        raise NotAnIdealError(f"{sorted(members)} is not an MV-ideal")
    cls = congruence_classes(algebra, members)
    k = int(cls.max()) + 1
    reps = np.zeros(k, dtype=np.int64)
    for x in range(algebra.size - 1, -1, -1):
        reps[cls[x]] = x
    new_op = cls[algebra.oplus[np.ix_(reps, reps)]]
    new_neg = cls[algebra.neg[reps]]
    if not (cls[algebra.oplus] == new_op[cls[:, None], cls[None, :]]).all():
        raise InternalInvariantError("~I is not a +-congruence")
    if not (cls[algebra.neg] == new_neg[cls]).all():
        raise InternalInvariantError("~I is not a *-congruence")
    names = tuple(f"[{algebra.names[int(reps[c])]}]" for c in range(k))
    quotient = FiniteMvAlgebra(new_op, new_neg, int(cls[algebra.zero]), names)
    return MvQuotient(quotient, cls)


def mv_isomorphism(a: FiniteMvAlgebra, b: FiniteMvAlgebra):
    """A bijection index array carrying a onto b, or None.

    Backtracking over images, pruned by cheap order invariants; intended
    for the desk-scale algebras this package enumerates.
    """
    if a.size != b.size:
        return None
    n = a.size
    la, lb = a.derived.le, b.derived.le

    def sig(alg, le, x):
        return (
            x == alg.zero,
            int(alg.oplus[x, x] == x),
            int(alg.neg[x] == x),
            int(le[:, x].sum()),
            int(le[x, :].sum()),
        )
    sig_a = [sig(a, la, x) for x in range(n)]
    sig_b = [sig(b, lb, x) for x in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return None
    img = [-1] * n
    used = [False] * n

    def consistent(x, y):
        na, nb = int(a.neg[x]), int(b.neg[y])
        if img[na] != -1 and img[na] != nb:
            return False
        for t in range(n):
            if img[t] == -1:
                continue
            s = int(a.oplus[x, t])
            if img[s] != -1 and img[s] != int(b.oplus[y, img[t]]):
                return False
            s = int(a.oplus[t, x])
            if img[s] != -1 and img[s] != int(b.oplus[img[t], y]):
                return False
        return True

    def extend(x):
        if x == n:
            perm = np.array(img, dtype=np.int64)
            ok = (perm[a.oplus] == b.oplus[perm[:, None], perm[None, :]]).all()
            ok = ok and (perm[a.neg] == b.neg[perm]).all()
            ok = ok and img[a.zero] == b.zero
            return perm if ok else None
        for y in range(n):
            if used[y] or sig_a[x] != sig_b[y]:
                continue
            if not consistent(x, y):
                continue
            img[x] = y
            used[y] = True
            res = extend(x + 1)
            if res is not None:
                return res
            img[x] = -1
            used[y] = False
        return None

    return extend(0)
