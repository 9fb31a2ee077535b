"""One-variable MV-terms over +, *, 0, with evaluation in any MV-algebra.

Derived connectives are expanded at construction, so a term tree only
ever contains the variable, zero, negation and truncated sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from ._syntax import parse_expression
from .mv import FiniteMvAlgebra


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class TVar(Term):
    __slots__ = ()


@dataclass(frozen=True)
class TZero(Term):
    __slots__ = ()


@dataclass(frozen=True)
class TNeg(Term):
    arg: Term


@dataclass(frozen=True)
class TOplus(Term):
    left: Term
    right: Term


VAR = TVar()
ZERO = TZero()
ONE = TNeg(ZERO)


def t_imp(a: Term, b: Term) -> Term:
    return TOplus(TNeg(a), b)


def t_odot(a: Term, b: Term) -> Term:
    return TNeg(TOplus(TNeg(a), TNeg(b)))


def t_ominus(a: Term, b: Term) -> Term:
    return t_odot(a, TNeg(b))


def t_vee(a: Term, b: Term) -> Term:
    return TOplus(a, t_odot(TNeg(a), b))


def t_wedge(a: Term, b: Term) -> Term:
    return t_odot(a, TOplus(TNeg(a), b))


def parse_term(text: str) -> Term:
    builders = {
        "var": lambda: VAR,
        "zero": lambda: ZERO,
        "one": lambda: ONE,
        "neg": TNeg,
        "oplus": TOplus,
        "imp": t_imp,
        "odot": t_odot,
    }
    return parse_expression(text, builders, allow_subst=False, allow_consts=True)


def format_term(t: Term) -> str:
    """Canonical text; parse_term(format_term(t)) == t."""
    def go(node: Term, parent_prec: int) -> str:
        if isinstance(node, TVar):
            return "v"
        if isinstance(node, TZero):
            return "0"
        if isinstance(node, TNeg):
            return "!" + go(node.arg, 9)
        text = go(node.left, 2) + " + " + go(node.right, 2)
        return f"({text})" if parent_prec > 1 else text
    return go(t, 0)


def eval_term(t: Term, algebra: FiniteMvAlgebra, x: int) -> int:
    """Value of the term in the algebra with the variable set to x."""
    if isinstance(t, TVar):
        return int(x)
    if isinstance(t, TZero):
        return algebra.zero
    if isinstance(t, TNeg):
        return int(algebra.neg[eval_term(t.arg, algebra, x)])
    return int(algebra.oplus[eval_term(t.left, algebra, x),
                             eval_term(t.right, algebra, x)])


def substitute(t: Term, replacement: Term) -> Term:
    """Replace every occurrence of the variable."""
    if isinstance(t, TVar):
        return replacement
    if isinstance(t, TZero):
        return t
    if isinstance(t, TNeg):
        return TNeg(substitute(t.arg, replacement))
    return TOplus(substitute(t.left, replacement),
                  substitute(t.right, replacement))


def random_term(rng: Random, max_depth: int = 4) -> Term:
    """A random term; leaves favor the variable over constants."""
    if max_depth <= 0:
        return rng.choice((VAR, VAR, VAR, ZERO, ONE))
    roll = rng.random()
    if roll < 0.25:
        return rng.choice((VAR, VAR, ZERO))
    if roll < 0.5:
        return TNeg(random_term(rng, max_depth - 1))
    left = random_term(rng, max_depth - 1)
    right = random_term(rng, max_depth - 1)
    ctor = rng.choice((TOplus, TOplus, t_odot, t_vee, t_wedge))
    return ctor(left, right)
