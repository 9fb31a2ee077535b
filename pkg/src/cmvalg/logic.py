"""The one-variable substitution logic: syntax, valuations, proofs.

Formulas are built from the single variable with negation, implication
and the substitution connective ``<|``.  The valuation into any target
algebra is unique (the variable goes to the monoid identity), so
tautology checking reduces to one evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random

from ._syntax import parse_expression
from .cmv import FiniteCmvAlgebra
from .errors import FormulaSyntaxError
from .mcnaughton import McNaughtonAlgebra


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class FVar(Formula):
    __slots__ = ()


@dataclass(frozen=True)
class FNot(Formula):
    arg: Formula


@dataclass(frozen=True)
class FImp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class FSubst(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class FMeta(Formula):
    """Metavariable; occurs only inside axiom schemas, never in formulas."""

    name: str


V = FVar()


def f_oplus(a: Formula, b: Formula) -> Formula:
    return FImp(FNot(a), b)


def f_odot(a: Formula, b: Formula) -> Formula:
    return FNot(FImp(a, FNot(b)))


def parse_formula(text: str) -> Formula:
    """Parse; ``+`` and ``.`` are expanded into negation and implication."""
    builders = {
        "var": lambda: V,
        "neg": FNot,
        "imp": FImp,
        "subst": FSubst,
        "oplus": f_oplus,
        "odot": f_odot,
    }
    return parse_expression(text, builders, allow_subst=True, allow_consts=False)


def format_formula(f: Formula) -> str:
    """Canonical text with minimal parentheses; inverse of parse_formula."""
    def prec(node: Formula) -> int:
        if isinstance(node, (FVar, FMeta)):
            return 9
        if isinstance(node, FNot):
            return 4
        if isinstance(node, FSubst):
            return 3
        return 0

    def go(node: Formula, min_prec: int) -> str:
        if isinstance(node, FVar):
            text = "v"
        elif isinstance(node, FMeta):
            text = node.name
        elif isinstance(node, FNot):
            text = "!" + go(node.arg, 4)
        elif isinstance(node, FSubst):
            text = go(node.left, 3) + " <| " + go(node.right, 4)
        else:
            text = go(node.left, 1) + " -> " + go(node.right, 0)
        return f"({text})" if prec(node) < min_prec else text

    return go(f, 0)


def random_formula(rng: Random, max_depth: int = 3,
                   allow_subst: bool = True) -> Formula:
    if max_depth <= 0:
        return V
    roll = rng.random()
    if roll < 0.3:
        return V
    if roll < 0.55:
        return FNot(random_formula(rng, max_depth - 1, allow_subst))
    left = random_formula(rng, max_depth - 1, allow_subst)
    right = random_formula(rng, max_depth - 1, allow_subst)
    if allow_subst and roll < 0.8:
        return FSubst(left, right)
    return FImp(left, right)


# ---------------------------------------------------------------------------
# Valuation


def evaluate(target, formula: Formula):
    """The unique valuation of the formula in the target algebra.

    Finite targets give an element index; the McNaughton target gives an
    exact piecewise-linear function.  Shared subformulas are evaluated
    once.
    """
    memo: dict = {}
    if isinstance(target, FiniteCmvAlgebra):
        d = target.mv.derived

        def go(node):
            got = memo.get(node)
            if got is not None:
                return got
            if isinstance(node, FVar):
                val = target.identity
            elif isinstance(node, FNot):
                val = int(target.mv.neg[go(node.arg)])
            elif isinstance(node, FImp):
                val = int(d.imp[go(node.left), go(node.right)])
            elif isinstance(node, FSubst):
                val = int(target.diamond[go(node.left), go(node.right)])
            else:
                raise TypeError(f"cannot evaluate {node!r}")
            memo[node] = val
            return val

        return go(formula)
    if isinstance(target, McNaughtonAlgebra):
        def go(node):
            got = memo.get(node)
            if got is not None:
                return got
            if isinstance(node, FVar):
                val = target.identity_element
            elif isinstance(node, FNot):
                val = target.neg(go(node.arg))
            elif isinstance(node, FImp):
                val = target.imp(go(node.left), go(node.right))
            elif isinstance(node, FSubst):
                val = target.diamond(go(node.left), go(node.right))
            else:
                raise TypeError(f"cannot evaluate {node!r}")
            memo[node] = val
            return val

        return go(formula)
    raise TypeError(f"unsupported evaluation target {target!r}")


def is_tautology(target, formula: Formula) -> bool:
    """True iff the unique valuation gives the top element."""
    val = evaluate(target, formula)
    if isinstance(target, FiniteCmvAlgebra):
        return val == target.mv.one
    return target.is_top(val)


def semantic_equiv(target, a: Formula, b: Formula) -> bool:
    return evaluate(target, a) == evaluate(target, b)


# ---------------------------------------------------------------------------
# Axiom schemas


def _m(name: str) -> FMeta:
    return FMeta(name)


_P, _Q, _C, _G = _m("phi"), _m("psi"), _m("chi"), _m("gamma")

AXIOM_SCHEMAS = {
    1: FImp(_P, FImp(_Q, _P)),
    2: FImp(FImp(_P, _Q), FImp(FImp(_Q, _C), FImp(_P, _C))),
    3: FImp(FImp(FImp(_P, _Q), _Q), FImp(FImp(_Q, _P), _P)),
    4: FImp(FImp(FNot(_P), FNot(_Q)), FImp(_Q, _P)),
    5: FImp(FSubst(_P, V), _P),
    6: FImp(FSubst(V, _P), _P),
    7: FImp(_P, FSubst(V, _P)),
    8: FImp(_P, FSubst(_P, V)),
    9: FImp(FSubst(FImp(_P, _Q), _G),
            FImp(FSubst(_P, _G), FSubst(_Q, _G))),
    10: FImp(FSubst(FImp(FNot(_P), _Q), _G),
             FImp(FNot(FSubst(_P, _G)), FSubst(_Q, _G))),
    11: FImp(FImp(FNot(FSubst(_P, _G)), FSubst(_Q, _G)),
             FSubst(FImp(FNot(_P), _Q), _G)),
    12: FImp(FSubst(_P, FSubst(_Q, _G)), FSubst(FSubst(_P, _Q), _G)),
    13: FImp(FSubst(FSubst(_P, _Q), _G), FSubst(_P, FSubst(_Q, _G))),
    14: FImp(FNot(FSubst(_P, _Q)), FSubst(FNot(_P), _Q)),
    15: FImp(FSubst(FNot(_P), _Q), FNot(FSubst(_P, _Q))),
}

# The variable in Ax5-Ax8 is literal: only the atom v matches it.


def axiom_metavars(ax_id: int) -> tuple:
    seen = []

    def walk(node):
        if isinstance(node, FMeta):
            if node.name not in seen:
                seen.append(node.name)
        elif isinstance(node, FNot):
            walk(node.arg)
        elif isinstance(node, (FImp, FSubst)):
            walk(node.left)
            walk(node.right)

    walk(AXIOM_SCHEMAS[ax_id])
    return tuple(seen)


def instantiate(schema: Formula, bindings: dict) -> Formula:
    if isinstance(schema, FMeta):
        try:
            return bindings[schema.name]
        except KeyError:
            raise KeyError(f"metavariable {schema.name} unbound")
    if isinstance(schema, FVar):
        return schema
    if isinstance(schema, FNot):
        return FNot(instantiate(schema.arg, bindings))
    if isinstance(schema, FImp):
        return FImp(instantiate(schema.left, bindings),
                    instantiate(schema.right, bindings))
    return FSubst(instantiate(schema.left, bindings),
                  instantiate(schema.right, bindings))


def _match(schema: Formula, formula: Formula, bindings: dict) -> bool:
    if isinstance(schema, FMeta):
        bound = bindings.get(schema.name)
        if bound is None:
            bindings[schema.name] = formula
            return True
        return bound == formula
    if isinstance(schema, FVar):
        return isinstance(formula, FVar)
    if isinstance(schema, FNot):
        return isinstance(formula, FNot) and _match(schema.arg, formula.arg,
                                                    bindings)
    if isinstance(schema, FImp):
        return (isinstance(formula, FImp)
                and _match(schema.left, formula.left, bindings)
                and _match(schema.right, formula.right, bindings))
    return (isinstance(formula, FSubst)
            and _match(schema.left, formula.left, bindings)
            and _match(schema.right, formula.right, bindings))


def match_axiom(formula: Formula) -> list:
    """Every (axiom id, bindings) under which the formula is an instance."""
    out = []
    for ax_id, schema in AXIOM_SCHEMAS.items():
        bindings: dict = {}
        if _match(schema, formula, bindings):
            out.append((ax_id, bindings))
    return out


def instantiate_axiom(ax_id: int, bindings: dict) -> Formula:
    if ax_id not in AXIOM_SCHEMAS:
        raise KeyError(f"no axiom {ax_id}")
    return instantiate(AXIOM_SCHEMAS[ax_id], bindings)


# ---------------------------------------------------------------------------
# Proofs


@dataclass(frozen=True)
class ProofStep:
    formula: Formula
    rule: str                       # "AX<k>", "MP", "SUB" or "ARR"
    refs: tuple = ()
    bindings: dict | None = field(default=None, compare=False)
    with_formula: Formula | None = None


@dataclass(frozen=True)
class Proof:
    steps: tuple


@dataclass(frozen=True)
class CheckResult:
    accepted: bool
    failed_step: int | None
    reason: str | None
    conclusion: Formula | None


def check_proof(proof: Proof, infer_bindings: bool = False) -> CheckResult:
    """Verify every step; acceptance is purely syntactic.

    Axiom steps need explicit metavariable bindings unless
    ``infer_bindings`` asks the matcher to search for them.
    """
    done: list = []
    for k, step in enumerate(proof.steps, start=1):
        reason = _check_step(step, done, infer_bindings)
        if reason is not None:
            return CheckResult(False, k, reason, None)
        done.append(step.formula)
    if not done:
        return CheckResult(False, None, "empty proof", None)
    return CheckResult(True, None, None, done[-1])


def _check_step(step: ProofStep, done: list, infer: bool):
    rule = step.rule
    if rule.startswith("AX"):
        try:
            ax_id = int(rule[2:])
        except ValueError:
            return f"malformed axiom rule {rule!r}"
        if ax_id not in AXIOM_SCHEMAS:
            return f"no axiom {ax_id}"
        if step.bindings is not None:
            needed = set(axiom_metavars(ax_id))
            if set(step.bindings) != needed:
                return (f"bindings {sorted(step.bindings)} do not cover "
                        f"exactly {sorted(needed)}")
            expected = instantiate_axiom(ax_id, step.bindings)
            if expected != step.formula:
                return (f"AX{ax_id} with the given bindings yields "
                        f"{format_formula(expected)!r}")
            return None
        if not infer:
            return f"AX{ax_id} step lacks explicit bindings"
        if any(m == ax_id for m, _ in match_axiom(step.formula)):
            return None
        return f"formula is not an instance of AX{ax_id}"
    if rule == "MP":
        if len(step.refs) != 2:
            return "MP needs two premise references"
        i, j = step.refs
        for r in (i, j):
            if not 1 <= r <= len(done):
                return f"reference {r} is not an earlier step"
        if done[j - 1] != FImp(done[i - 1], step.formula):
            return (f"step {j} is not (step {i}) -> (this formula)")
        return None
    if rule in ("SUB", "ARR"):
        if len(step.refs) != 1 or step.with_formula is None:
            return f"{rule} needs one premise reference and a formula"
        (i,) = step.refs
        if not 1 <= i <= len(done):
            return f"reference {i} is not an earlier step"
        alpha, beta = done[i - 1], step.with_formula
        expected = (FSubst(alpha, beta) if rule == "SUB"
                    else FImp(alpha, FSubst(alpha, beta)))
        if step.formula != expected:
            return f"{rule} from step {i} yields {format_formula(expected)!r}"
        return None
    return f"unknown rule {rule!r}"


def parse_proof(text: str) -> Proof:
    """Line-oriented proof script; '#' starts a comment line."""
    steps = []
    lineno = 0
    for raw in text.splitlines():
        lineno += 1
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ";" not in line:
            raise FormulaSyntaxError(f"line {lineno}: missing ';'", 0)
        head, just = line.split(";", 1)
        head = head.strip()
        dot = head.find(".")
        if dot < 0:
            raise FormulaSyntaxError(f"line {lineno}: missing step number", 0)
        num_text = head[:dot].strip()
        if not num_text.isdigit() or int(num_text) != len(steps) + 1:
            raise FormulaSyntaxError(
                f"line {lineno}: steps must be numbered consecutively", 0)
        formula = parse_formula(head[dot + 1:])
        steps.append(_parse_justification(formula, just.strip(), lineno))
    return Proof(tuple(steps))


def _parse_justification(formula: Formula, text: str, lineno: int) -> ProofStep:
    parts = text.split(None, 1)
    if not parts:
        raise FormulaSyntaxError(f"line {lineno}: empty justification", 0)
    rule = parts[0]
    rest = parts[1].strip() if len(parts) > 1 else ""
    if rule.startswith("AX"):
        bindings = None
        if rest:
            if not (rest.startswith("{") and rest.endswith("}")):
                raise FormulaSyntaxError(
                    f"line {lineno}: bindings must be braced", 0)
            bindings = {}
            body = rest[1:-1].strip()
            if body:
                for item in body.split(","):
                    if "=" not in item:
                        raise FormulaSyntaxError(
                            f"line {lineno}: binding needs name=formula", 0)
                    name, val = item.split("=", 1)
                    bindings[name.strip()] = parse_formula(val)
        return ProofStep(formula, rule, (), bindings, None)
    if rule == "MP":
        nums = rest.split()
        if len(nums) != 2 or not all(t.isdigit() for t in nums):
            raise FormulaSyntaxError(f"line {lineno}: MP needs two step numbers", 0)
        return ProofStep(formula, "MP", (int(nums[0]), int(nums[1])), None, None)
    if rule in ("SUB", "ARR"):
        parts = rest.split(None, 1)
        if len(parts) != 2 or not parts[0].isdigit():
            raise FormulaSyntaxError(
                f"line {lineno}: {rule} needs a step number and a formula", 0)
        return ProofStep(formula, rule, (int(parts[0]),), None,
                         parse_formula(parts[1]))
    raise FormulaSyntaxError(f"line {lineno}: unknown rule {rule!r}", 0)


def format_proof(proof: Proof) -> str:
    lines = []
    for k, step in enumerate(proof.steps, start=1):
        just = step.rule
        if step.rule.startswith("AX") and step.bindings is not None:
            inner = ", ".join(f"{name}={format_formula(b)}"
                              for name, b in sorted(step.bindings.items()))
            just += " {" + inner + "}"
        elif step.rule == "MP":
            just += f" {step.refs[0]} {step.refs[1]}"
        elif step.rule in ("SUB", "ARR"):
            just += f" {step.refs[0]} {format_formula(step.with_formula)}"
        lines.append(f"{k}. {format_formula(step.formula)} ; {just}")
    return "\n".join(lines) + "\n"


def proof_to_json(proof: Proof) -> dict:
    steps = []
    for step in proof.steps:
        entry: dict = {"formula": format_formula(step.formula),
                       "rule": step.rule}
        if step.bindings is not None:
            entry["bindings"] = {k: format_formula(v)
                                 for k, v in sorted(step.bindings.items())}
        if step.refs:
            entry["refs"] = list(step.refs)
        if step.with_formula is not None:
            entry["with"] = format_formula(step.with_formula)
        steps.append(entry)
    return {"steps": steps}


def proof_from_json(data: dict) -> Proof:
    steps = []
    for entry in data["steps"]:
        bindings = None
        if "bindings" in entry:
            bindings = {k: parse_formula(v)
                        for k, v in entry["bindings"].items()}
        with_formula = (parse_formula(entry["with"])
                        if "with" in entry else None)
        steps.append(ProofStep(parse_formula(entry["formula"]), entry["rule"],
                               tuple(entry.get("refs", ())), bindings,
                               with_formula))
    return Proof(tuple(steps))


# ---------------------------------------------------------------------------
# Semantic soundness suites


def axiom_soundness_check(target, rng: Random, per_axiom: int = 100,
                          depth: int = 2) -> dict:
    """Evaluate every schema at random instantiations; all must hit top."""
    failures = {}
    for ax_id in sorted(AXIOM_SCHEMAS):
        names = axiom_metavars(ax_id)
        bad = 0
        for _ in range(per_axiom):
            bindings = {n: random_formula(rng, depth) for n in names}
            inst = instantiate_axiom(ax_id, bindings)
            if not is_tautology(target, inst):
                bad += 1
        failures[ax_id] = bad
    return failures


def rule_preservation_check(target, rng: Random, samples: int = 100,
                            depth: int = 2) -> dict:
    """Each inference rule keeps the valuation at top.

    Premises are built from random axiom instances (always top); the MP
    case pairs them with implications whose premise evaluation is top.
    """
    def random_theorem():
        ax_id = rng.choice(sorted(AXIOM_SCHEMAS))
        names = axiom_metavars(ax_id)
        return instantiate_axiom(
            ax_id, {n: random_formula(rng, depth) for n in names})

    bad = {"MP": 0, "SUB": 0, "ARR": 0}
    for _ in range(samples):
        alpha = random_theorem()
        beta = random_theorem()
        if is_tautology(target, alpha) and is_tautology(target, FImp(alpha, beta)):
            if not is_tautology(target, beta):
                bad["MP"] += 1
        gamma = random_formula(rng, depth)
        if is_tautology(target, alpha):
            if not is_tautology(target, FSubst(alpha, gamma)):
                bad["SUB"] += 1
            if not is_tautology(target, FImp(alpha, FSubst(alpha, gamma))):
                bad["ARR"] += 1
    return bad


def lindenbaum_check(targets, rng: Random, samples: int = 100) -> dict:
    """Semantic soundness of the quotient-algebra operation table.

    For random formula triples the substitution connective must evaluate
    associatively, negation must slide through it, both distribution
    axioms must agree, and every axiom must land on top.
    """
    report = {}
    for label, target in targets:
        bad = 0
        for _ in range(samples):
            a = random_formula(rng, 2)
            b = random_formula(rng, 2)
            c = random_formula(rng, 2)
            pairs = (
                (FSubst(a, FSubst(b, c)), FSubst(FSubst(a, b), c)),
                (FNot(FSubst(a, c)), FSubst(FNot(a), c)),
                (FSubst(FImp(FNot(a), b), c),
                 FImp(FNot(FSubst(a, c)), FSubst(b, c))),
            )
            for lhs, rhs in pairs:
                if not semantic_equiv(target, lhs, rhs):
                    bad += 1
        ax_fail = sum(axiom_soundness_check(target, rng, per_axiom=5).values())
        report[label] = {"equation_failures": bad, "axiom_failures": ax_fail}
    return report
