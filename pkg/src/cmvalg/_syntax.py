"""Shared tokenizer and precedence climber for formula/term text.

Grammar (tightest to loosest): unary ``!``; ``<|`` (left); ``.`` (left);
``+`` (left); ``->`` (right).  Atoms are ``v`` and, where permitted, the
constants ``0`` and ``1``.  Sugar is expanded by the caller's builders.
"""

from __future__ import annotations

from .errors import FormulaSyntaxError

_TWO_CHAR = ("->", "<|")
_ONE_CHAR = ("!", "+", ".", "(", ")")

# operator -> (precedence, right_associative)
_BINARY = {"<|": (3, False), ".": (2, False), "+": (1, False), "->": (0, True)}


def tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if text[i:i + 2] in _TWO_CHAR:
            tokens.append((text[i:i + 2], i))
            i += 2
            continue
        if c in _ONE_CHAR or c in ("v", "0", "1"):
            tokens.append((c, i))
            i += 1
            continue
        raise FormulaSyntaxError(f"unexpected character {c!r}", i)
    return tokens


def parse_expression(text: str, builders: dict, *, allow_subst: bool,
                     allow_consts: bool):
    """Parse into whatever the builder callbacks construct.

    ``builders`` supplies var, neg, imp, oplus, odot and optionally subst,
    zero, one.
    """
    tokens = tokenize(text)
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def where():
        return tokens[pos][1] if pos < len(tokens) else len(text)

    def advance():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def atom():
        tok = peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", len(text))
        if tok == "!":
            advance()
            return builders["neg"](atom())
        if tok == "(":
            advance()
            node = climb(0)
            if peek() != ")":
                raise FormulaSyntaxError("expected ')'", where())
            advance()
            return node
        if tok == "v":
            advance()
            return builders["var"]()
        if tok in ("0", "1"):
            if not allow_consts:
                raise FormulaSyntaxError("constants not allowed here", where())
            advance()
            return builders["zero"]() if tok == "0" else builders["one"]()
        raise FormulaSyntaxError(f"unexpected token {tok!r}", where())

    def climb(min_prec: int):
        lhs = atom()
        while True:
            tok = peek()
            if tok not in _BINARY:
                break
            prec, right = _BINARY[tok]
            if prec < min_prec:
                break
            if tok == "<|" and not allow_subst:
                raise FormulaSyntaxError("'<|' not allowed here", where())
            advance()
            rhs = climb(prec if right else prec + 1)
            if tok == "->":
                lhs = builders["imp"](lhs, rhs)
            elif tok == "+":
                lhs = builders["oplus"](lhs, rhs)
            elif tok == ".":
                lhs = builders["odot"](lhs, rhs)
            else:
                lhs = builders["subst"](lhs, rhs)
        return lhs

    node = climb(0)
    if pos != len(tokens):
        raise FormulaSyntaxError(f"unexpected token {peek()!r}", where())
    return node
