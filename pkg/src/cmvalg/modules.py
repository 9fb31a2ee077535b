"""Modules over CMV-algebras and the canonical scalar actions.

Finite actions are tables validated exhaustively against the five module
laws; the McNaughton-scalar action on an arbitrary finite MV-algebra is
carried by (term, function) pairs and checked on seeded samples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random

import numpy as np

from .cmv import (
    CayleyEmbedding,
    FiniteCmvAlgebra,
    cayley_embed,
    constants_of,
    function_cmv,
    lukasiewicz_chain,
)
from .errors import (
    LawViolationError,
    MalformedTableError,
    SizeBoundError,
)
from .mcnaughton import PwlFunction, membership, pwl_compose, term_to_pwl
from .mv import FiniteMvAlgebra, power_mv
from .structure import check_cmv_homomorphism
from .terms import (
    Term,
    TNeg,
    TOplus,
    TVar,
    TZero,
    eval_term,
    random_term,
    substitute,
)


@dataclass(frozen=True)
class ModuleAction:
    """An external law (a, x) -> action[a, x] of scalars on a carrier."""

    scalars: FiniteCmvAlgebra = field(repr=False)
    carrier: FiniteMvAlgebra = field(repr=False)
    action: np.ndarray

    def __post_init__(self):
        want = (self.scalars.size, self.carrier.size)
        arr = np.asarray(self.action, dtype=np.int64)
        if arr.shape != want:
            raise MalformedTableError(f"action must have shape {want}")
        if arr.size and (arr.min() < 0 or arr.max() >= self.carrier.size):
            raise MalformedTableError("action lands outside the carrier")
        arr.setflags(write=False)
        object.__setattr__(self, "action", arr)


def validate_module(module: ModuleAction) -> None:
    """Check the five module laws on every scalar/carrier combination."""
    a_alg, m_alg = module.scalars, module.carrier
    act = module.action
    lhs = act[a_alg.mv.oplus, :]
    rhs = m_alg.oplus[act[:, None, :], act[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise LawViolationError("MODULE_I", tuple(map(int, bad[0])),
                                "(a+b)x != ax + bx")
    bad = np.argwhere(act[a_alg.mv.neg, :] != m_alg.neg[act])
    if bad.size:
        raise LawViolationError("MODULE_II", tuple(map(int, bad[0])),
                                "(a*)x != (ax)*")
    bad = np.flatnonzero(act[a_alg.mv.zero, :] != m_alg.zero)
    if bad.size:
        raise LawViolationError("MODULE_III", (int(bad[0]),), "0x != 0")
    bad = np.flatnonzero(act[a_alg.identity, :] != np.arange(m_alg.size))
    if bad.size:
        raise LawViolationError("MODULE_IV", (int(bad[0]),), "ix != x")
    lhs = act[a_alg.diamond, :]
    # rhs[a, b, x] = act[a, act[b, x]]
    rhs = act[np.arange(a_alg.size)[:, None, None], act[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise LawViolationError("MODULE_V", tuple(map(int, bad[0])),
                                "(a<>b)x != a(bx)")


def reduct_module(algebra: FiniteCmvAlgebra) -> ModuleAction:
    """The MV-reduct acted on by a x = a <> x."""
    m = ModuleAction(algebra, algebra.mv, algebra.diamond)
    validate_module(m)
    return m


def evaluation_module(algebra: FiniteCmvAlgebra) -> ModuleAction:
    """The base of a function algebra acted on by f x = f(x)."""
    if algebra.maps is None or algebra.base is None:
        raise MalformedTableError("evaluation module needs a function algebra")
    act = np.array(algebra.maps, dtype=np.int64)
    m = ModuleAction(algebra, algebra.base, act)
    validate_module(m)
    return m


def constants_module(algebra: FiniteCmvAlgebra) -> ModuleAction:
    """The constants K acted on by a k = a <> k."""
    ks = [int(k) for k in constants_of(algebra)]
    pos = {k: j for j, k in enumerate(ks)}
    mv_alg = algebra.mv
    sub_op = np.array([[pos[int(mv_alg.oplus[x, y])] for y in ks] for x in ks])
    sub_neg = np.array([pos[int(mv_alg.neg[x])] for x in ks])
    carrier = FiniteMvAlgebra(sub_op, sub_neg, pos[mv_alg.zero],
                              tuple(mv_alg.names[k] for k in ks))
    act = np.array([[pos[int(algebra.diamond[a, k])] for k in ks]
                    for a in range(algebra.size)])
    m = ModuleAction(algebra, carrier, act)
    validate_module(m)
    return m


def power_module(inner: ModuleAction, k: int) -> ModuleAction:
    """Pointwise action on k-tuples of the carrier."""
    carrier = power_mv(inner.carrier, k)
    n = inner.carrier.size
    digits = np.array(
        [[(x // n ** (k - 1 - j)) % n for j in range(k)]
         for x in range(carrier.size)], dtype=np.int64)
    strides = np.array([n ** (k - 1 - j) for j in range(k)], dtype=np.int64)
    act = np.zeros((inner.scalars.size, carrier.size), dtype=np.int64)
    for a in range(inner.scalars.size):
        act[a] = inner.action[a][digits] @ strides
    m = ModuleAction(inner.scalars, carrier, act)
    validate_module(m)
    return m


def restriction_of_scalars(dom: FiniteCmvAlgebra, cod: FiniteCmvAlgebra,
                           hom, inner: ModuleAction) -> ModuleAction:
    """Pull a cod-module back along a CMV-homomorphism dom -> cod."""
    if inner.scalars is not cod:
        raise MalformedTableError("inner module must be over the codomain")
    check_cmv_homomorphism(dom, cod, hom)
    hom = np.asarray(hom, dtype=np.int64)
    m = ModuleAction(dom, inner.carrier, inner.action[hom, :])
    validate_module(m)
    return m


def restriction_along_cayley(algebra: FiniteCmvAlgebra) -> ModuleAction:
    """Restriction of scalars along the Cayley embedding, acting on the
    base of the image function algebra."""
    emb: CayleyEmbedding = cayley_embed(algebra)
    inner = evaluation_module(emb.image)
    return restriction_of_scalars(algebra, emb.image, emb.image_index, inner)


def canonical_module(kind: str, algebra: FiniteCmvAlgebra,
                     k: int = 2) -> ModuleAction:
    """Dispatcher for the stock module constructions."""
    if kind == "reduct":
        return reduct_module(algebra)
    if kind == "evaluation":
        return evaluation_module(algebra)
    if kind == "constants":
        return constants_module(algebra)
    if kind == "power":
        return power_module(reduct_module(algebra), k)
    if kind == "restriction":
        return restriction_along_cayley(algebra)
    raise ValueError(f"unknown module construction {kind!r}")


@dataclass(frozen=True)
class A4ModuleReport:
    admits: bool
    action: ModuleAction | None
    unique: bool
    failure: tuple | None


def admits_a4_module(carrier: FiniteMvAlgebra) -> A4ModuleReport:
    """Search for an A4 action on the carrier.

    Laws (ii)-(iv) force every row of a candidate action (rows for 0 and i
    directly, the rest through negation), so the exhaustive search reduces
    to checking the single forced candidate; when it passes it is the only
    action.  The raw-table oracle for tiny carriers lives in the tests.
    """
    a4 = function_cmv(lukasiewicz_chain(1))
    n = carrier.size
    rows = {a4.mv.zero: np.full(n, carrier.zero, dtype=np.int64),
            a4.identity: np.arange(n, dtype=np.int64)}
    changed = True
    while changed:
        changed = False
        for a in list(rows):
            star = int(a4.mv.neg[a])
            if star not in rows:
                rows[star] = carrier.neg[rows[a]]
                changed = True
    if len(rows) != a4.size:
        raise SizeBoundError("A4 rows not forced; unexpected scalar algebra")
    act = np.stack([rows[a] for a in range(a4.size)])
    candidate = ModuleAction(a4, carrier, act)
    try:
        validate_module(candidate)
    except LawViolationError as exc:
        return A4ModuleReport(False, None, True, (exc.law, exc.witness))
    return A4ModuleReport(True, candidate, True, None)


# ---------------------------------------------------------------------------
# The McNaughton-scalar module carried by every MV-algebra


@dataclass(frozen=True)
class McnScalar:
    """A scalar of the McNaughton algebra: a term witness plus its exact
    function, which is the identity key."""

    term: Term
    function: PwlFunction

    @classmethod
    def from_term(cls, t: Term) -> "McnScalar":
        return cls(t, term_to_pwl(t))

    def compose(self, other: "McnScalar") -> "McnScalar":
        return McnScalar(substitute(self.term, other.term),
                         pwl_compose(self.function, other.function))


@dataclass(frozen=True)
class Substitution:
    """The module endomorphism h -> h o f of the McNaughton module."""

    f: PwlFunction

    def __call__(self, h: PwlFunction) -> PwlFunction:
        return pwl_compose(h, self.f)


def phi_f(f: PwlFunction) -> Substitution:
    """Substitution by f; defined for McNaughton functions only."""
    if not membership(f).in_m1:
        raise MalformedTableError("substitution scalar must lie in the "
                                  "integer-intercept class")
    return Substitution(f)


def phi_x_eval(carrier: FiniteMvAlgebra, x: int, t: Term) -> int:
    """The free-algebra evaluation morphism at x applied to a term."""
    return eval_term(t, carrier, x)


class M1Module:
    """A finite MV-algebra as a module over the McNaughton algebra."""

    def __init__(self, carrier: FiniteMvAlgebra):
        self.carrier = carrier

    def act(self, scalar: McnScalar, x: int) -> int:
        return eval_term(scalar.term, self.carrier, x)


def m1c_action(carrier: FiniteMvAlgebra) -> M1Module:
    return M1Module(carrier)


def check_m1_module_laws(module: M1Module, rng: Random,
                         samples: int = 100) -> dict:
    """Sampled check of the five laws for McNaughton scalars.

    Returns counterexample lists, expected empty.  Scalar pairs are drawn
    as random terms; composition uses term substitution on one side and
    exact function composition on the other, which also exercises the
    (term, function) consistency of scalars.
    """
    carrier = module.carrier
    bad = {law: [] for law in ("I", "II", "III", "IV", "V", "pair")}
    zero_scalar = McnScalar.from_term(TZero())
    id_scalar = McnScalar.from_term(TVar())
    for _ in range(samples):
        s = McnScalar.from_term(random_term(rng, 3))
        t = McnScalar.from_term(random_term(rng, 3))
        x = rng.randrange(carrier.size)
        plus = McnScalar.from_term(TOplus(s.term, t.term))
        if module.act(plus, x) != int(
                carrier.oplus[module.act(s, x), module.act(t, x)]):
            bad["I"].append((s, t, x))
        neg_s = McnScalar.from_term(TNeg(s.term))
        if module.act(neg_s, x) != int(carrier.neg[module.act(s, x)]):
            bad["II"].append((s, x))
        if module.act(zero_scalar, x) != carrier.zero:
            bad["III"].append((x,))
        if module.act(id_scalar, x) != x:
            bad["IV"].append((x,))
        st = s.compose(t)
        if term_to_pwl(st.term) != st.function:
            bad["pair"].append((s, t))
        if module.act(st, x) != module.act(s, module.act(t, x)):
            bad["V"].append((s, t, x))
    return bad
