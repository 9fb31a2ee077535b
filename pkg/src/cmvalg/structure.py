"""CMV-ideals, congruences, quotients and the zero-set machinery.

Ideal conditions follow the four-clause definition: downward closure,
+-closure, right monoid-ideal closure, and left compatibility of the
induced congruence.  The last clause is checked literally over all
related pairs, never through a shortcut.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .cmv import FiniteCmvAlgebra, cmv_subalgebra
from .errors import (
    InternalInvariantError,
    MalformedTableError,
    NotAHomomorphismError,
    NotAnIdealError,
)
from .mv import (
    FiniteMvAlgebra,
    congruence_classes,
    enumerate_mv_ideals,
    is_mv_ideal,
)


@dataclass(frozen=True)
class CmvIdealReport:
    """Classification of one subset with the first failing witness."""

    subset: frozenset
    is_mv_ideal: bool
    is_diamond_ideal: bool
    is_cmv_ideal: bool
    failure: tuple | None   # (condition name, witness) for the first failure


def classify_subset(algebra: FiniteCmvAlgebra, subset) -> CmvIdealReport:
    """Check ideal conditions (i)-(iv) exhaustively on one subset."""
    n = algebra.size
    members = frozenset(int(s) for s in subset)
    if any(not 0 <= m < n for m in members):
        raise MalformedTableError(f"subset {sorted(members)} out of range")
    inI = np.zeros(n, dtype=bool)
    inI[list(members)] = True
    d = algebra.mv.derived
    if not members:
        return CmvIdealReport(members, False, False, False, ("nonempty", ()))
    idx = sorted(members)
    down = d.le[:, idx] & ~inI[:, None]
    if down.any():
        y, k = np.argwhere(down)[0]
        return CmvIdealReport(members, False, False, False,
                              ("downward", (int(idx[k]), int(y))))
    sums = algebra.mv.oplus[np.ix_(idx, idx)]
    if not inI[sums].all():
        a, b = np.argwhere(~inI[sums])[0]
        return CmvIdealReport(members, False, False, False,
                              ("oplus", (int(idx[a]), int(idx[b]))))
    right = algebra.diamond[idx, :]
    if not inI[right].all():
        a, y = np.argwhere(~inI[right])[0]
        return CmvIdealReport(members, True, False, False,
                              ("right-diamond", (int(idx[a]), int(y))))
    w = kernels.left_compat_witness(algebra.diamond, d.dist, inI)
    if w is not None:
        return CmvIdealReport(members, True, True, False,
                              ("left-congruence", w))
    return CmvIdealReport(members, True, True, True, None)


@dataclass(frozen=True)
class Congruence:
    """A CMV-congruence as a class partition plus the label array."""

    algebra: FiniteCmvAlgebra = field(repr=False)
    labels: np.ndarray
    classes: tuple

    @property
    def class_count(self) -> int:
        return len(self.classes)


def congruence_of_ideal(algebra: FiniteCmvAlgebra, subset) -> Congruence:
    """The congruence x ~ y iff d(x, y) in I, for a CMV-ideal I."""
    report = classify_subset(algebra, subset)
    if not report.is_cmv_ideal:
        raise NotAnIdealError(
            f"{sorted(report.subset)} is not a CMV-ideal: {report.failure}")
    labels = congruence_classes(algebra.mv, report.subset)
    k = int(labels.max()) + 1
    classes = tuple(frozenset(int(x) for x in np.flatnonzero(labels == c))
                    for c in range(k))
    _verify_congruence(algebra, labels)
    return Congruence(algebra, labels, classes)


def ideal_of_congruence(cong: Congruence) -> frozenset:
    """The class of 0; inverse of congruence_of_ideal on CMV-ideals."""
    zero = cong.algebra.mv.zero
    return cong.classes[int(cong.labels[zero])]


def _verify_congruence(algebra: FiniteCmvAlgebra, labels: np.ndarray) -> None:
    for name, table in (("+", algebra.mv.oplus), ("<>", algebra.diamond)):
        rep_of = {}
        flat = labels[table]
        for x in range(algebra.size):
            for y in range(algebra.size):
                key = (labels[x], labels[y])
                v = int(flat[x, y])
                if rep_of.setdefault(key, v) != v:
                    raise InternalInvariantError(
                        f"relation is not a {name}-congruence at {(x, y)}")
    rep_of = {}
    for x in range(algebra.size):
        key = int(labels[x])
        v = int(labels[algebra.mv.neg[x]])
        if rep_of.setdefault(key, v) != v:
            raise InternalInvariantError("relation is not a *-congruence")


@dataclass(frozen=True)
class CmvQuotient:
    algebra: FiniteCmvAlgebra
    projection: np.ndarray


def quotient_cmv(algebra: FiniteCmvAlgebra, subset) -> CmvQuotient:
    """Quotient by a CMV-ideal together with the projection map."""
    cong = congruence_of_ideal(algebra, subset)
    labels = cong.labels
    k = cong.class_count
    reps = np.zeros(k, dtype=np.int64)
    for x in range(algebra.size - 1, -1, -1):
        reps[labels[x]] = x
    new_op = labels[algebra.mv.oplus[np.ix_(reps, reps)]]
    new_neg = labels[algebra.mv.neg[reps]]
    new_dia = labels[algebra.diamond[np.ix_(reps, reps)]]
    names = tuple(f"[{algebra.mv.names[int(reps[c])]}]" for c in range(k))
    mv_q = FiniteMvAlgebra(new_op, new_neg, int(labels[algebra.mv.zero]), names)
    q = FiniteCmvAlgebra(mv_q, new_dia, int(labels[algebra.identity]))
    proj = labels.copy()
    if not (proj[algebra.diamond] == new_dia[proj[:, None], proj[None, :]]).all():
        raise InternalInvariantError("projection does not preserve <>")
    return CmvQuotient(q, proj)


def check_cmv_homomorphism(dom: FiniteCmvAlgebra, cod: FiniteCmvAlgebra,
                           h) -> None:
    """Raise NotAHomomorphismError with a witness unless h preserves
    +, *, 0, <> and i."""
    h = np.asarray(h, dtype=np.int64)
    if h.shape != (dom.size,):
        raise NotAHomomorphismError(f"map must assign all {dom.size} elements")
    if h.min() < 0 or h.max() >= cod.size:
        raise NotAHomomorphismError("map image out of range")
    if int(h[dom.mv.zero]) != cod.mv.zero:
        raise NotAHomomorphismError("h(0) != 0")
    if int(h[dom.identity]) != cod.identity:
        raise NotAHomomorphismError("h(i) != i")
    bad = np.flatnonzero(h[dom.mv.neg] != cod.mv.neg[h])
    if bad.size:
        raise NotAHomomorphismError(f"h(x*) != h(x)* at x={int(bad[0])}")
    bad = np.argwhere(h[dom.mv.oplus] != cod.mv.oplus[h[:, None], h[None, :]])
    if bad.size:
        raise NotAHomomorphismError(f"+ not preserved at {tuple(map(int, bad[0]))}")
    bad = np.argwhere(h[dom.diamond] != cod.diamond[h[:, None], h[None, :]])
    if bad.size:
        raise NotAHomomorphismError(f"<> not preserved at {tuple(map(int, bad[0]))}")


def preimage_ideal(dom: FiniteCmvAlgebra, cod: FiniteCmvAlgebra, h,
                   ideal) -> CmvIdealReport:
    """h^{-1}(J) for a CMV-homomorphism h and CMV-ideal J of the codomain."""
    check_cmv_homomorphism(dom, cod, h)
    jrep = classify_subset(cod, ideal)
    if not jrep.is_cmv_ideal:
        raise NotAnIdealError(f"{sorted(jrep.subset)} is not a CMV-ideal")
    h = np.asarray(h, dtype=np.int64)
    inJ = np.zeros(cod.size, dtype=bool)
    inJ[list(jrep.subset)] = True
    pre = frozenset(int(x) for x in np.flatnonzero(inJ[h]))
    report = classify_subset(dom, pre)
    if not report.is_cmv_ideal:
        raise InternalInvariantError("preimage of a CMV-ideal is not one")
    return report


def enumerate_cmv_ideals(algebra: FiniteCmvAlgebra) -> list:
    """All CMV-ideals, obtained by filtering the MV-ideals of the reduct."""
    out = []
    for ideal in enumerate_mv_ideals(algebra.mv):
        report = classify_subset(algebra, ideal.members)
        if report.is_cmv_ideal:
            out.append(report)
    return out


def enumerate_diamond_ideals(algebra: FiniteCmvAlgebra) -> list:
    """All subsets satisfying ideal conditions (i)-(iii)."""
    out = []
    for ideal in enumerate_mv_ideals(algebra.mv):
        report = classify_subset(algebra, ideal.members)
        if report.is_diamond_ideal:
            out.append(report)
    return out


def is_simple_cmv(algebra: FiniteCmvAlgebra) -> bool:
    """Exactly {0} and the whole algebra as CMV-ideals."""
    ideals = [r.subset for r in enumerate_cmv_ideals(algebra)]
    expected = [{algebra.mv.zero}, set(range(algebra.size))]
    return sorted(map(sorted, ideals)) == sorted(map(sorted, expected))


def diamond_ideal_generated(algebra: FiniteCmvAlgebra, seeds) -> frozenset:
    """Least subset containing the seeds closed downward, under + and
    under right <>."""
    n = algebra.size
    le = algebra.mv.derived.le
    inI = np.zeros(n, dtype=bool)
    inI[algebra.mv.zero] = True
    for s in seeds:
        inI[int(s)] = True
    while True:
        before = inI.copy()
        idx = np.flatnonzero(inI)
        inI |= le[:, idx].any(axis=1) & ~inI  # downward
        inI[np.unique(algebra.mv.oplus[np.ix_(idx, idx)])] = True
        inI[np.unique(algebra.diamond[idx, :])] = True
        if (inI == before).all():
            return frozenset(int(x) for x in np.flatnonzero(inI))


@dataclass(frozen=True)
class StabilizerReport:
    """S_B, its annihilator ideal J, and the quotient S_B / J."""

    parent: FiniteCmvAlgebra = field(repr=False)
    subalgebra_members: frozenset
    stabilizer: FiniteCmvAlgebra
    stabilizer_index: np.ndarray
    annihilator: frozenset           # indices inside the stabilizer
    quotient: FiniteCmvAlgebra
    sizes: tuple                     # (|S_B|, |J|, |S_B/J|)


def stabilizer_and_annihilator(algebra: FiniteCmvAlgebra,
                               subset) -> StabilizerReport:
    """S_B = {a : a <> x in B for all x in B} and J = {a : a <> x = 0}."""
    members = sorted({int(s) for s in subset})
    mv_alg = algebra.mv
    inB = np.zeros(algebra.size, dtype=bool)
    inB[members] = True
    if not inB[mv_alg.zero]:
        raise MalformedTableError("subalgebra must contain 0")
    if not inB[mv_alg.neg[members]].all():
        raise MalformedTableError("subset not closed under *")
    if not inB[mv_alg.oplus[np.ix_(members, members)]].all():
        raise MalformedTableError("subset not closed under +")
    cols = algebra.diamond[:, members]
    stab = np.flatnonzero(inB[cols].all(axis=1))
    sub, idx = cmv_subalgebra(algebra, stab)
    pos = {int(x): k for k, x in enumerate(idx)}
    ann = frozenset(
        pos[int(a)] for a in stab
        if (algebra.diamond[a, members] == mv_alg.zero).all()
    )
    report = classify_subset(sub, ann)
    if not report.is_cmv_ideal:
        raise InternalInvariantError("annihilator is not a CMV-ideal of S_B")
    quot = quotient_cmv(sub, ann)
    return StabilizerReport(algebra, frozenset(members), sub, idx, ann,
                            quot.algebra, (sub.size, len(ann), quot.algebra.size))


# ---------------------------------------------------------------------------
# zero(f), supp(f), Z(S), Sigma(I) and B-stability


class ZerosMachinery:
    """Zero-set machinery of a function CMV-algebra over its base."""

    def __init__(self, algebra: FiniteCmvAlgebra):
        if algebra.maps is None or algebra.base is None:
            raise MalformedTableError("zeros machinery needs a function algebra")
        self.algebra = algebra
        self.base = algebra.base

    def zero_set(self, f: int) -> frozenset:
        m = self.algebra.maps[f]
        z = self.base.zero
        return frozenset(a for a, v in enumerate(m) if v == z)

    def support(self, f: int) -> frozenset:
        return frozenset(range(self.base.size)) - self.zero_set(f)

    def z_of(self, points) -> frozenset:
        pts = sorted({int(p) for p in points})
        z = self.base.zero
        return frozenset(
            k for k, m in enumerate(self.algebra.maps)
            if all(m[p] == z for p in pts)
        )

    def sigma(self, ideal) -> frozenset:
        out = frozenset(range(self.base.size))
        for f in ideal:
            out &= self.zero_set(int(f))
        return out

    def is_b_stable(self, points) -> bool:
        pts = {int(p) for p in points}
        return all(m[p] in pts for m in self.algebra.maps for p in pts)

    def verify_lemmas(self) -> dict:
        """Exhaustive check of the two zero-set lemmas on this algebra.

        Every nonempty B-stable S must give a proper CMV-ideal Z(S); every
        proper diamond-ideal J with nonempty Sigma(J) must give a B-stable
        Sigma(J).
        """
        base_n = self.base.size
        if base_n > 16:
            raise MalformedTableError("subset scan limited to small bases")
        stable_checked = []
        for mask in range(1, 2 ** base_n):
            pts = frozenset(p for p in range(base_n) if mask >> p & 1)
            if not self.is_b_stable(pts):
                continue
            z = self.z_of(pts)
            report = classify_subset(self.algebra, z)
            proper = len(z) < self.algebra.size
            if not (report.is_cmv_ideal and proper):
                raise InternalInvariantError(
                    f"Z({sorted(pts)}) fails: {report.failure}, proper={proper}")
            stable_checked.append((pts, z))
        sigma_checked = []
        for report in enumerate_diamond_ideals(self.algebra):
            if len(report.subset) == self.algebra.size:
                continue
            sig = self.sigma(report.subset)
            if not sig:
                continue
            if not self.is_b_stable(sig):
                raise InternalInvariantError(
                    f"Sigma of {sorted(report.subset)} not B-stable")
            sigma_checked.append((report.subset, sig))
        return {"stable_sets": stable_checked, "sigma_sets": sigma_checked}


@dataclass(frozen=True)
class IdealImageReport:
    image: frozenset                 # base-algebra elements
    per_point: tuple                 # image computed at every base point
    independent: bool
    is_mv_ideal_of_base: bool


def ideal_image(algebra: FiniteCmvAlgebra, ideal) -> IdealImageReport:
    """I(a) = {f(a) : f in I} for a diamond-ideal of a full function algebra.

    Computed at every base point; the lemma predicts independence from the
    point and that the common value is an MV-ideal of the base.
    """
    if algebra.maps is None or algebra.base is None:
        raise MalformedTableError("ideal_image needs a function algebra")
    report = classify_subset(algebra, ideal)
    if not report.is_diamond_ideal:
        raise NotAnIdealError(f"{sorted(report.subset)} is not a diamond-ideal")
    per_point = []
    for a in range(algebra.base.size):
        per_point.append(frozenset(algebra.maps[f][a] for f in report.subset))
    independent = all(s == per_point[0] for s in per_point)
    union_of_ranges = frozenset(
        v for f in report.subset for v in algebra.maps[f])
    if independent and union_of_ranges != per_point[0]:
        raise InternalInvariantError("image differs from the range union")
    ok = is_mv_ideal(algebra.base, per_point[0]) if independent else False
    return IdealImageReport(per_point[0], tuple(per_point), independent, ok)
