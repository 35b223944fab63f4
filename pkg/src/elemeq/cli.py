"""Command-line front end for every decision procedure in the package.

Sixteen verbs expose the ordinal calculator, the back-and-forth game
solvers, the Boolean-theory classifier, the spectral and coding tools,
the certified continuous-formula evaluator, chain interpolation, and the
type-realization engine.  Three text grammars are provided: ordinal
normal forms (``w^w*2 + 3``), infix classical formulas over Boolean
terms (``forall x. x /\\ x = x``), and s-expression continuous formulas
(``(sup p :proj (norm (- (* p p) p)))``).

Exit codes separate outcome channels so pipelines never have to parse
prose: 0 = computed (including ``false`` verdicts), 2 = malformed or
precondition-violating input, 3 = a semantic negative (``NotFound`` /
``Unsatisfiable``), 4 = a search budget ran out.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from elemeq.batheory import (
    FinCof,
    Finite,
    FreeAtomless,
    IntervalAlgebra,
    PowersetModFin,
    PowersetOmega,
    Product,
    Trivial,
    ba_equiv,
    classification_conflict,
    derivative_chain,
    enumerate_theories,
    ershov_invariants,
    format_descriptor,
)
from elemeq.boolalg import (
    And,
    Eq,
    Exists,
    FiniteBoolAlg,
    FiniteSpace,
    Forall,
    Implies,
    Le,
    Not,
    Or,
    SpaceMap,
    TCompl,
    TJoin,
    TMeet,
    TOne,
    TVar,
    TZero,
    clopen_algebra,
    compose_maps,
    dual_morphism,
    quantifier_rank,
    stone_space,
)
from elemeq.clogic import (
    CAdd,
    CConst,
    CMul,
    COne,
    CScale,
    CStar,
    CSub,
    CVar,
    CZero,
    FAbsDiff,
    FConst,
    FInf,
    FMax,
    FMin,
    FNorm,
    FPlus,
    FScale,
    FSup,
    FTruncSub,
    SORT_BALL,
    SORT_POS,
    SORT_PROJ,
    SORT_SA,
    ceval,
    translate_fo,
)
from elemeq.cstar import (
    CStarAlgebraFin,
    c_norm,
    c_sub,
    clopen_code,
    joint_spectrum,
    reconstruct,
    singular_cross_checks,
    spectrum_indicator,
)
from elemeq.efgames import ef_finite_bas, ef_finite_orders, ef_ordinals
from elemeq.errors import ParseError, PreconditionError, ResourceBudgetError
from elemeq.ordinals import (
    Ordinal,
    calkin_equiv,
    cnf_string,
    finite,
    omega_power,
    ord_add,
    ord_equiv,
    ord_mul,
    ord_pow,
)
from elemeq.saturation import (
    NOT_FOUND,
    CylinderElement,
    Inconclusive,
    PresentedAtomlessBA,
    Realized,
    TypeCondition,
    Unsatisfiable,
    interpolate_chain,
    max_orthogonal_family,
    orthogonal_witness_family,
    realize_type,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NEGATIVE = 3
EXIT_BUDGET = 4
DEFAULT_SEED = 2026


# ---------------------------------------------------------------------------
# Tokenizing
# ---------------------------------------------------------------------------


def _tokenize(text: str, pattern: re.Pattern) -> list:
    """Longest-match tokens with positions; rejects unknown characters."""
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = pattern.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", position=pos)
        tokens.append((match.group(), pos))
        pos = match.end()
    return tokens


class _TokenStream:
    def __init__(self, text: str, pattern: re.Pattern):
        self.text = text
        self.tokens = _tokenize(text, pattern)
        self.index = 0

    def peek(self):
        return self.tokens[self.index][0] if self.index < len(self.tokens) else None

    def position(self) -> int:
        if self.index < len(self.tokens):
            return self.tokens[self.index][1]
        return len(self.text)

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token[0]

    def expect(self, token: str):
        if self.peek() != token:
            raise ParseError(f"expected {token!r}", position=self.position())
        return self.advance()

    def expect_end(self):
        if self.peek() is not None:
            raise ParseError(f"unexpected trailing {self.peek()!r}", position=self.position())


# ---------------------------------------------------------------------------
# Ordinal grammar: 0, naturals, w, w^<exp>, *<nat>, + between terms
# ---------------------------------------------------------------------------

_ORD_PATTERN = re.compile(r"\d+|[w^*+()]")


def parse_ordinal(text: str) -> Ordinal:
    """Parse ``w^w*2 + w^2*3 + 5`` style notation into normal form.

    Unsorted or duplicated terms are legal input; the result is
    renormalized through ordinal addition (so ``w + w`` equals ``w*2``).
    """
    stream = _TokenStream(text, _ORD_PATTERN)
    total = _parse_ordinal_sum(stream)
    stream.expect_end()
    return total


def _parse_ordinal_sum(stream: _TokenStream) -> Ordinal:
    total = _parse_ordinal_term(stream)
    while stream.peek() == "+":
        stream.advance()
        total = ord_add(total, _parse_ordinal_term(stream))
    return total


def _parse_ordinal_term(stream: _TokenStream) -> Ordinal:
    token = stream.peek()
    if token is None:
        raise ParseError("expected an ordinal term", position=stream.position())
    if token.isdigit():
        stream.advance()
        return finite(int(token))
    if token != "w":
        raise ParseError(f"expected 'w' or a natural, got {token!r}", position=stream.position())
    stream.advance()
    exponent = finite(1)
    if stream.peek() == "^":
        stream.advance()
        exponent = _parse_ordinal_exponent(stream)
    coefficient = 1
    if stream.peek() == "*":
        stream.advance()
        token = stream.peek()
        if token is None or not token.isdigit():
            raise ParseError("expected a natural coefficient after '*'", position=stream.position())
        coefficient = int(stream.advance())
    return ord_mul(omega_power(exponent), finite(coefficient))


def _parse_ordinal_exponent(stream: _TokenStream) -> Ordinal:
    """A bare exponent: a natural, a right-associative ``w^...`` chain
    (no coefficient — ``w^w*2`` is ``(w^w)*2``), or a parenthesized sum."""
    token = stream.peek()
    if token == "(":
        stream.advance()
        inner = _parse_ordinal_sum(stream)
        stream.expect(")")
        return inner
    if token is not None and token.isdigit():
        stream.advance()
        return finite(int(token))
    if token == "w":
        stream.advance()
        if stream.peek() == "^":
            stream.advance()
            return omega_power(_parse_ordinal_exponent(stream))
        return omega_power(finite(1))
    raise ParseError("expected an exponent after '^'", position=stream.position())


# ---------------------------------------------------------------------------
# Classical formula grammar (infix)
#
#   formula := 'forall' v '.' formula | 'exists' v '.' formula | implication
#   implication := disjunct ('->' implication)?
#   disjunct := conjunct ('|' conjunct)*
#   conjunct := unit ('&' unit)*
#   unit := '!' unit | atom | '(' formula ')'
#   atom := term ('=' | '<=') term
#   term := tjoin;  tjoin := tmeet ('\/' tmeet)*
#   tmeet := tunit ('/\' tunit)*;  tunit := '~' tunit | '(' term ')' | '0' | '1' | var
#
# Every variable must be bound by an enclosing quantifier.
# ---------------------------------------------------------------------------

_FO_PATTERN = re.compile(r"->|<=|/\\|\\/|[A-Za-z_][A-Za-z0-9_]*|[=&|!~().01]")
_FO_KEYWORDS = {"forall", "exists"}


def parse_fo_formula(text: str):
    """Parse an infix classical sentence such as ``forall x. x /\\ x = x``."""
    stream = _TokenStream(text, _FO_PATTERN)
    phi = _parse_fo(stream, [])
    stream.expect_end()
    return phi


def _is_variable(token) -> bool:
    return (
        token is not None
        and token not in _FO_KEYWORDS
        and re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", token) is not None
    )


def _parse_fo(stream: _TokenStream, bound: list):
    if stream.peek() in _FO_KEYWORDS:
        kind = stream.advance()
        var = stream.peek()
        if not _is_variable(var):
            raise ParseError("expected a variable after quantifier", position=stream.position())
        stream.advance()
        stream.expect(".")
        body = _parse_fo(stream, bound + [var])
        return Forall(var, body) if kind == "forall" else Exists(var, body)
    return _parse_implication(stream, bound)


def _parse_implication(stream: _TokenStream, bound: list):
    left = _parse_disjunct(stream, bound)
    if stream.peek() == "->":
        stream.advance()
        return Implies(left, _parse_implication(stream, bound))
    return left


def _parse_disjunct(stream: _TokenStream, bound: list):
    left = _parse_conjunct(stream, bound)
    while stream.peek() == "|":
        stream.advance()
        left = Or(left, _parse_conjunct(stream, bound))
    return left


def _parse_conjunct(stream: _TokenStream, bound: list):
    left = _parse_unit(stream, bound)
    while stream.peek() == "&":
        stream.advance()
        left = And(left, _parse_unit(stream, bound))
    return left


def _parse_unit(stream: _TokenStream, bound: list):
    token = stream.peek()
    if token == "!":
        stream.advance()
        return Not(_parse_unit(stream, bound))
    if token in _FO_KEYWORDS:
        return _parse_fo(stream, bound)
    saved = stream.index
    try:
        return _parse_atom(stream, bound)
    except ParseError as atom_error:
        stream.index = saved
        if token != "(":
            raise atom_error
    stream.advance()
    inner = _parse_fo(stream, bound)
    stream.expect(")")
    return inner


def _parse_atom(stream: _TokenStream, bound: list):
    left = _parse_term(stream, bound)
    rel = stream.peek()
    if rel not in ("=", "<="):
        raise ParseError("expected '=' or '<=' in an atom", position=stream.position())
    stream.advance()
    right = _parse_term(stream, bound)
    return Eq(left, right) if rel == "=" else Le(left, right)


def _parse_term(stream: _TokenStream, bound: list):
    left = _parse_term_meet(stream, bound)
    while stream.peek() == "\\/":
        stream.advance()
        left = TJoin(left, _parse_term_meet(stream, bound))
    return left


def _parse_term_meet(stream: _TokenStream, bound: list):
    left = _parse_term_unit(stream, bound)
    while stream.peek() == "/\\":
        stream.advance()
        left = TMeet(left, _parse_term_unit(stream, bound))
    return left


def _parse_term_unit(stream: _TokenStream, bound: list):
    token = stream.peek()
    if token == "~":
        stream.advance()
        return TCompl(_parse_term_unit(stream, bound))
    if token == "(":
        stream.advance()
        inner = _parse_term(stream, bound)
        stream.expect(")")
        return inner
    if token == "0":
        stream.advance()
        return TZero()
    if token == "1":
        stream.advance()
        return TOne()
    if _is_variable(token):
        if token not in bound:
            raise ParseError(f"unbound variable {token!r}", position=stream.position())
        stream.advance()
        return TVar(token)
    raise ParseError("expected a Boolean term", position=stream.position())


def format_fo(phi) -> str:
    """Canonical infix rendering; ``parse_fo_formula`` inverts it exactly."""
    if isinstance(phi, Forall):
        return f"forall {phi.var}. {format_fo(phi.body)}"
    if isinstance(phi, Exists):
        return f"exists {phi.var}. {format_fo(phi.body)}"
    if isinstance(phi, Not):
        return f"!({format_fo(phi.arg)})"
    if isinstance(phi, And):
        return f"({format_fo(phi.left)} & {format_fo(phi.right)})"
    if isinstance(phi, Or):
        return f"({format_fo(phi.left)} | {format_fo(phi.right)})"
    if isinstance(phi, Implies):
        return f"({format_fo(phi.left)} -> {format_fo(phi.right)})"
    if isinstance(phi, Eq):
        return f"{_format_bterm(phi.left)} = {_format_bterm(phi.right)}"
    if isinstance(phi, Le):
        return f"{_format_bterm(phi.left)} <= {_format_bterm(phi.right)}"
    raise PreconditionError(f"cannot format {type(phi).__name__}")


def _format_bterm(t) -> str:
    if isinstance(t, TVar):
        return t.name
    if isinstance(t, TZero):
        return "0"
    if isinstance(t, TOne):
        return "1"
    if isinstance(t, TMeet):
        return f"({_format_bterm(t.left)} /\\ {_format_bterm(t.right)})"
    if isinstance(t, TJoin):
        return f"({_format_bterm(t.left)} \\/ {_format_bterm(t.right)})"
    if isinstance(t, TCompl):
        return f"~{_format_bterm(t.arg)}"
    raise PreconditionError(f"cannot format {type(t).__name__}")


# ---------------------------------------------------------------------------
# Continuous formula grammar (s-expressions)
# ---------------------------------------------------------------------------

_SEXPR_PATTERN = re.compile(r"[()]|[^\s()]+")
_SORT_KEYWORDS = {
    ":ball": SORT_BALL,
    ":sa": SORT_SA,
    ":pos": SORT_POS,
    ":proj": SORT_PROJ,
}
_CVAR_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _parse_complex(token: str, position: int) -> complex:
    try:
        return complex(token)
    except ValueError:
        raise ParseError(f"expected a complex literal, got {token!r}", position=position) from None


def _parse_real(token: str, position: int) -> float:
    try:
        return float(Fraction(token))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a real literal, got {token!r}", position=position) from None


def parse_cformula(text: str):
    """Parse an s-expression continuous formula.

    Formula heads: ``norm plus tsub max min absdiff fscale fconst sup inf``;
    bare reals are constants.  Term heads: ``+ - * star scale const``; bare
    ``0``/``1`` are the algebra constants and other symbols are variables.
    Quantifiers carry a sort keyword: ``(sup p :proj <formula>)``.
    """
    stream = _TokenStream(text, _SEXPR_PATTERN)
    phi = _parse_cform(stream)
    stream.expect_end()
    return phi


def _parse_cform(stream: _TokenStream):
    token = stream.peek()
    if token is None:
        raise ParseError("expected a formula", position=stream.position())
    if token != "(":
        stream.advance()
        return FConst(_parse_real(token, stream.position()))
    stream.advance()
    head_pos = stream.position()
    head = stream.advance() if stream.peek() is not None else None
    binary = {"plus": FPlus, "tsub": FTruncSub, "max": FMax, "min": FMin, "absdiff": FAbsDiff}
    if head in binary:
        left, right = _parse_cform(stream), _parse_cform(stream)
        stream.expect(")")
        return binary[head](left, right)
    if head == "norm":
        term = _parse_cterm(stream)
        stream.expect(")")
        return FNorm(term)
    if head == "fconst":
        value = _parse_real(stream.advance() if stream.peek() else "", stream.position())
        stream.expect(")")
        return FConst(value)
    if head == "fscale":
        scalar = _parse_real(stream.advance() if stream.peek() else "", stream.position())
        body = _parse_cform(stream)
        stream.expect(")")
        return FScale(scalar, body)
    if head in ("sup", "inf"):
        var = stream.advance() if stream.peek() else None
        if var is None or not _CVAR_RE.fullmatch(var):
            raise ParseError("expected a variable after quantifier", position=stream.position())
        sort_token = stream.advance() if stream.peek() else None
        if sort_token not in _SORT_KEYWORDS:
            raise ParseError(
                "expected a sort keyword (:ball :sa :pos :proj)", position=stream.position()
            )
        body = _parse_cform(stream)
        stream.expect(")")
        node = FSup if head == "sup" else FInf
        return node(var, _SORT_KEYWORDS[sort_token], body)
    raise ParseError(f"unknown formula head {head!r}", position=head_pos)


def _parse_cterm(stream: _TokenStream):
    token = stream.peek()
    if token is None:
        raise ParseError("expected a term", position=stream.position())
    if token != "(":
        stream.advance()
        if token == "0":
            return CZero()
        if token == "1":
            return COne()
        if _CVAR_RE.fullmatch(token):
            return CVar(token)
        raise ParseError(f"expected a term symbol, got {token!r}", position=stream.position())
    stream.advance()
    head_pos = stream.position()
    head = stream.advance() if stream.peek() is not None else None
    binary = {"+": CAdd, "-": CSub, "*": CMul}
    if head in binary:
        left, right = _parse_cterm(stream), _parse_cterm(stream)
        stream.expect(")")
        return binary[head](left, right)
    if head == "star":
        arg = _parse_cterm(stream)
        stream.expect(")")
        return CStar(arg)
    if head == "scale":
        scalar = _parse_complex(stream.advance() if stream.peek() else "", stream.position())
        arg = _parse_cterm(stream)
        stream.expect(")")
        return CScale(scalar, arg)
    if head == "const":
        values = []
        while stream.peek() is not None and stream.peek() != ")":
            values.append(_parse_complex(stream.advance(), stream.position()))
        if not values:
            raise ParseError("const needs at least one value", position=stream.position())
        stream.expect(")")
        return CConst(tuple(values))
    raise ParseError(f"unknown term head {head!r}", position=head_pos)


def _complex_str(z: complex) -> str:
    return repr(complex(z)).strip("()")


def format_cterm(term) -> str:
    if isinstance(term, CVar):
        return term.name
    if isinstance(term, CZero):
        return "0"
    if isinstance(term, COne):
        return "1"
    if isinstance(term, CConst):
        return "(const " + " ".join(_complex_str(v) for v in term.values) + ")"
    if isinstance(term, CStar):
        return f"(star {format_cterm(term.arg)})"
    if isinstance(term, CScale):
        return f"(scale {_complex_str(term.scalar)} {format_cterm(term.arg)})"
    symbol = {CAdd: "+", CSub: "-", CMul: "*"}[type(term)]
    return f"({symbol} {format_cterm(term.left)} {format_cterm(term.right)})"


def format_cformula(phi) -> str:
    """Canonical s-expression rendering; ``parse_cformula`` inverts it."""
    if isinstance(phi, FNorm):
        return f"(norm {format_cterm(phi.term)})"
    if isinstance(phi, FConst):
        return f"(fconst {phi.value!r})"
    if isinstance(phi, FScale):
        return f"(fscale {phi.scalar!r} {format_cformula(phi.arg)})"
    if isinstance(phi, (FSup, FInf)):
        head = "sup" if isinstance(phi, FSup) else "inf"
        return f"({head} {phi.var} :{phi.sort} {format_cformula(phi.body)})"
    symbol = {FPlus: "plus", FTruncSub: "tsub", FMax: "max", FMin: "min", FAbsDiff: "absdiff"}[
        type(phi)
    ]
    return f"({symbol} {format_cformula(phi.left)} {format_cformula(phi.right)})"


# ---------------------------------------------------------------------------
# Descriptor, element, target, and condition grammars
# ---------------------------------------------------------------------------


def parse_descriptor(text: str):
    """Parse a Boolean-algebra descriptor in ``format_descriptor`` syntax."""
    text = text.strip()
    fixed = {
        "trivial": Trivial(),
        "fincof": FinCof(),
        "P(omega)": PowersetOmega(),
        "P(omega)/fin": PowersetModFin(),
        "free": FreeAtomless(),
    }
    if text in fixed:
        return fixed[text]
    match = re.fullmatch(r"finite\((\d+)\)", text)
    if match:
        return Finite(int(match.group(1)))
    match = re.fullmatch(r"intalg\((.*)\)", text, re.DOTALL)
    if match:
        return IntervalAlgebra(parse_ordinal(match.group(1)))
    match = re.fullmatch(r"prod\((.*)\)", text, re.DOTALL)
    if match:
        return Product(tuple(parse_descriptor(part) for part in _split_top_level(match.group(1))))
    raise ParseError(f"unknown descriptor {text!r}")


def _split_top_level(text: str) -> list:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    if any(not part.strip() for part in parts):
        raise ParseError("empty descriptor in product")
    return parts


def parse_element(text: str) -> tuple:
    """Parse ``1+2j, 0.5, -1j`` into a tuple of complex values."""
    parts = text.split(",")
    values = []
    for part in parts:
        cleaned = part.strip().replace(" ", "")
        try:
            values.append(complex(cleaned))
        except ValueError:
            raise ParseError(f"bad complex value {part.strip()!r}") from None
    if not values:
        raise ParseError("an element needs at least one value")
    return tuple(values)


def parse_cylinder_element(text: str) -> CylinderElement:
    """Parse ``top``, ``bottom``, or a comma-separated union of binary words."""
    text = text.strip()
    algebra = PresentedAtomlessBA()
    if text == "top":
        return algebra.top
    if text == "bottom":
        return algebra.bottom
    element = algebra.bottom
    for word in text.split(","):
        word = word.strip()
        if not word or any(ch not in "01" for ch in word):
            raise ParseError(f"bad cylinder word {word!r}")
        element = algebra.join(element, algebra.cylinder(word))
    return element


def parse_target(text: str) -> tuple:
    """Parse ``[0,1]|{2}`` into a union of closed intervals."""
    pieces = text.split("|")
    intervals = []
    for piece in pieces:
        piece = piece.strip()
        match = re.fullmatch(r"\{([^,{}]+)\}", piece)
        if match:
            value = _parse_real(match.group(1).strip(), 0)
            intervals.append((value, value))
            continue
        match = re.fullmatch(r"\[([^,\[\]]+),([^,\[\]]+)\]", piece)
        if match:
            intervals.append(
                (_parse_real(match.group(1).strip(), 0), _parse_real(match.group(2).strip(), 0))
            )
            continue
        raise ParseError(f"bad target piece {piece!r} (use [a,b] or {{a}})")
    return tuple(intervals)


def parse_condition(text: str) -> TypeCondition:
    """Parse ``<term s-expression> in <target>``."""
    marker = " in "
    split_at = text.rfind(marker)
    if split_at < 0:
        raise ParseError("a condition looks like '<term> in <target>'")
    term_text, target_text = text[:split_at], text[split_at + len(marker) :]
    stream = _TokenStream(term_text, _SEXPR_PATTERN)
    term = _parse_cterm(stream)
    stream.expect_end()
    return TypeCondition(term, parse_target(target_text))


def format_target(target) -> str:
    return "|".join(f"{{{lo}}}" if lo == hi else f"[{lo},{hi}]" for lo, hi in target)


# ---------------------------------------------------------------------------
# Shared output helpers
# ---------------------------------------------------------------------------


def _invariant_dict(invariant) -> dict:
    return {
        "level": invariant.level,
        "atom_count": invariant.atom_count,
        "atomless": invariant.atomless_flag,
    }


def _certificate_dict(cert) -> dict:
    return {"lower": cert.lower, "upper": cert.upper, "grid_depth": cert.grid_depth}


def _render_value(value, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for key, inner in value.items():
            if isinstance(inner, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_value(inner, indent + 1))
            else:
                lines.append(f"{pad}{key}: {inner}")
    elif isinstance(value, list):
        for inner in value:
            if isinstance(inner, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_value(inner, indent + 1))
            else:
                lines.append(f"{pad}- {inner}")
    else:
        lines.append(f"{pad}{value}")
    return lines


def _emit(payload: dict, args) -> None:
    if args.json:
        text = json.dumps(payload, indent=2)
    else:
        text = "\n".join(_render_value(payload))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# Verb handlers (each returns payload, exit code)
# ---------------------------------------------------------------------------


def _cmd_ord_arith(args):
    a, b = parse_ordinal(args.left), parse_ordinal(args.right)
    operation = {"add": ord_add, "mul": ord_mul, "pow": ord_pow}[args.op]
    result = operation(a, b)
    payload = {
        "verb": "ord-arith",
        "inputs": {"op": args.op, "left": cnf_string(a), "right": cnf_string(b)},
        "value": cnf_string(result),
    }
    return payload, EXIT_OK


def _ordinal_ef_cross_check(a, b, verdict: bool):
    """A conclusive finite-rank game answer, when one exists."""
    try:
        if verdict:
            return {"ef_rank_3": ef_ordinals(a, b, 3)}
        for rank in range(1, 5):
            if not ef_ordinals(a, b, rank):
                return {f"ef_rank_{rank}": False}
    except PreconditionError:
        return None
    return None


def _cmd_ord_eq(args):
    a, b = parse_ordinal(args.left), parse_ordinal(args.right)
    verdict = ord_equiv(a, b)
    payload = {
        "verb": "ord-eq",
        "inputs": {"left": cnf_string(a), "right": cnf_string(b)},
        "verdict": verdict,
    }
    cross = _ordinal_ef_cross_check(a, b, verdict)
    if cross is not None:
        payload["cross_checks"] = cross
    return payload, EXIT_OK


def _cmd_calkin_eq(args):
    a, b = parse_ordinal(args.left), parse_ordinal(args.right)
    payload = {
        "verb": "calkin-eq",
        "inputs": {"left": cnf_string(a), "right": cnf_string(b)},
        "verdict": calkin_equiv(a, b),
    }
    return payload, EXIT_OK


def _cmd_ef(args):
    if args.kind == "orders":
        m, n = int(args.left), int(args.right)
        verdict = ef_finite_orders(m, n, args.rank)
        inputs = {"kind": "orders", "left": m, "right": n, "rank": args.rank}
    elif args.kind == "ordinals":
        a, b = parse_ordinal(args.left), parse_ordinal(args.right)
        verdict = ef_ordinals(a, b, args.rank)
        inputs = {"kind": "ordinals", "left": cnf_string(a), "right": cnf_string(b), "rank": args.rank}
    else:
        m, n = int(args.left), int(args.right)
        verdict = ef_finite_bas(FiniteBoolAlg(m), FiniteBoolAlg(n), args.rank)
        inputs = {"kind": "ba", "left": m, "right": n, "rank": args.rank}
    return {"verb": "ef", "inputs": inputs, "verdict": verdict}, EXIT_OK


def _cmd_ba_invariants(args):
    descriptor = parse_descriptor(args.descriptor)
    payload = {
        "verb": "ba-invariants",
        "inputs": {"descriptor": format_descriptor(descriptor)},
        "value": _invariant_dict(ershov_invariants(descriptor)),
        "derivative_chain": [format_descriptor(d) for d in derivative_chain(descriptor)],
    }
    return payload, EXIT_OK


def _cmd_ba_eq(args):
    left = parse_descriptor(args.left)
    right = parse_descriptor(args.right)
    verdict = ba_equiv(left, right)
    payload = {
        "verb": "ba-eq",
        "inputs": {"left": format_descriptor(left), "right": format_descriptor(right)},
        "verdict": verdict,
        "invariants": {
            "left": _invariant_dict(ershov_invariants(left)),
            "right": _invariant_dict(ershov_invariants(right)),
        },
    }
    if isinstance(left, Finite) and isinstance(right, Finite):
        if left.atoms <= 4 and right.atoms <= 4:
            game = ef_finite_bas(FiniteBoolAlg(left.atoms), FiniteBoolAlg(right.atoms), 3)
            payload["cross_checks"] = {"ef_rank_3": game}
    conflict = classification_conflict(left, right)
    if conflict is not None:
        payload["conflict_note"] = conflict
    return payload, EXIT_OK


def _cmd_ba_enumerate(args):
    invariants = enumerate_theories(args.count)
    payload = {
        "verb": "ba-enumerate",
        "inputs": {"count": args.count},
        "value": [_invariant_dict(inv) for inv in invariants],
    }
    return payload, EXIT_OK


def _cmd_stone(args):
    algebra = FiniteBoolAlg(args.atoms)
    space = stone_space(algebra)
    back = clopen_algebra(space)
    roundtrip = back.atom_count == algebra.atom_count
    rng = random.Random(args.seed)
    samples, agree = 20, True
    for _ in range(samples):
        sizes = [rng.randint(1, 4) for _ in range(3)]
        spaces = [FiniteSpace(s) for s in sizes]
        f = SpaceMap(spaces[0], spaces[1], tuple(rng.randrange(sizes[1]) for _ in range(sizes[0])))
        g = SpaceMap(spaces[1], spaces[2], tuple(rng.randrange(sizes[2]) for _ in range(sizes[1])))
        lhs = dual_morphism(compose_maps(g, f))
        rhs_g, rhs_f = dual_morphism(g), dual_morphism(f)
        for element in FiniteBoolAlg(sizes[2]).elements():
            if lhs.apply(element) != rhs_f.apply(rhs_g.apply(element)):
                agree = False
    payload = {
        "verb": "stone",
        "inputs": {"atoms": args.atoms, "seed": args.seed},
        "value": {"space_points": space.point_count, "roundtrip": roundtrip},
        "cross_checks": {"functoriality_samples": samples, "functoriality_agrees": agree},
    }
    return payload, EXIT_OK


def _cmd_translate(args):
    phi = parse_fo_formula(args.sentence)
    translated = translate_fo(phi)
    payload = {
        "verb": "translate",
        "inputs": {"sentence": format_fo(phi), "quantifier_rank": quantifier_rank(phi)},
        "value": format_cformula(translated),
    }
    return payload, EXIT_OK


def _cmd_ceval(args):
    phi = parse_cformula(args.formula)
    algebra = CStarAlgebraFin(args.points)
    params = {}
    for pair in args.param or []:
        name, _, value = pair.partition("=")
        if not name or not value:
            raise ParseError(f"bad --param {pair!r} (use name=v1,v2,...)")
        params[name] = parse_element(value)
    inputs = {
        "formula": format_cformula(phi),
        "points": args.points,
        "tol": args.tol,
        "params": {name: [_complex_str(v) for v in value] for name, value in params.items()},
    }
    try:
        cert = ceval(phi, algebra, params, tol=args.tol, max_boxes=args.max_boxes)
    except ResourceBudgetError as error:
        payload = {"verb": "ceval", "inputs": inputs, "error": "resource budget exceeded"}
        if error.best_known is not None:
            payload["certificate"] = _certificate_dict(error.best_known)
        return payload, EXIT_BUDGET
    payload = {"verb": "ceval", "inputs": inputs, "certificate": _certificate_dict(cert)}
    return payload, EXIT_OK


def _cmd_jspec(args):
    elements = tuple(parse_element(text) for text in args.element)
    spectrum = sorted(
        joint_spectrum(elements),
        key=lambda lam: tuple((v.real, v.imag) for v in map(complex, lam)),
    )
    payload = {
        "verb": "jspec",
        "inputs": {"elements": [[_complex_str(v) for v in e] for e in elements]},
        "value": [[_complex_str(v) for v in lam] for lam in spectrum],
    }
    return payload, EXIT_OK


def _cmd_fmember(args):
    elements = tuple(parse_element(text) for text in args.element)
    lam = parse_element(args.at)
    checks = singular_cross_checks(elements, lam)
    indicator = spectrum_indicator(elements, lam)
    payload = {
        "verb": "fmember",
        "inputs": {
            "elements": [[_complex_str(v) for v in e] for e in elements],
            "at": [_complex_str(v) for v in lam],
        },
        "verdict": checks["pointwise"],
        "cross_checks": {
            "absolute_sum_not_invertible": checks["absolute_sum_not_invertible"],
            "solvable": checks["solvable"],
            "solution_residual": checks["solution_residual"],
            "indicator_value": indicator,
        },
    }
    return payload, EXIT_OK


def _cmd_code(args):
    element = parse_element(args.element)
    codes = clopen_code(element, args.scale)
    rendered = [
        {"grid_point": _complex_str(code.y), "scale": code.m, "points": sorted(code.points)}
        for code in codes
        if code.points
    ]
    payload = {
        "verb": "code",
        "inputs": {"element": [_complex_str(v) for v in element], "scale": args.scale},
        "value": rendered,
    }
    if args.reconstruct:
        recovered = reconstruct(codes)
        payload["reconstruction"] = {
            "element": [_complex_str(v) for v in recovered],
            "error": c_norm(c_sub(element, recovered)),
            "bound": 2.0 / args.scale,
        }
    return payload, EXIT_OK


def _cmd_interpolate(args):
    if args.algebra == "cyl":
        algebra = PresentedAtomlessBA()
        lower = [parse_cylinder_element(text) for text in args.lower]
        upper = [parse_cylinder_element(text) for text in args.upper]
        inputs = {
            "algebra": "cyl",
            "lower": [_cylinder_str(e) for e in lower],
            "upper": [_cylinder_str(e) for e in upper],
        }
        result = interpolate_chain(lower, upper, algebra)
        rendered = _cylinder_str(result) if isinstance(result, CylinderElement) else None
    else:
        match = re.fullmatch(r"finite:(\d+)", args.algebra)
        if not match:
            raise ParseError("--algebra must be 'cyl' or 'finite:<atoms>'")
        algebra = FiniteBoolAlg(int(match.group(1)))
        lower = [_parse_mask(text, algebra) for text in args.lower]
        upper = [_parse_mask(text, algebra) for text in args.upper]
        inputs = {"algebra": args.algebra, "lower": lower, "upper": upper}
        result = interpolate_chain(lower, upper, algebra)
        rendered = result if result != NOT_FOUND else None
    if rendered is None:
        payload = {"verb": "interpolate", "inputs": inputs, "verdict": "not-found"}
        return payload, EXIT_NEGATIVE
    payload = {"verb": "interpolate", "inputs": inputs, "value": rendered}
    return payload, EXIT_OK


def _cylinder_str(element: CylinderElement) -> str:
    if element == PresentedAtomlessBA().top:
        return "top"
    if element.is_zero():
        return "bottom"
    return ",".join(sorted(element.words))


def _parse_mask(text: str, algebra: FiniteBoolAlg) -> int:
    try:
        mask = int(text, 0)
    except ValueError:
        raise ParseError(f"bad atom mask {text!r}") from None
    if not algebra.is_element(mask):
        raise PreconditionError(f"mask {mask} is out of range for {algebra.atom_count} atoms")
    return mask


def _cmd_realize(args):
    conditions = [parse_condition(text) for text in args.cond]
    algebra = CStarAlgebraFin(args.points)
    sorts = {}
    for pair in args.sort or []:
        name, _, sort = pair.partition("=")
        if not name or not sort:
            raise ParseError(f"bad --sort {pair!r} (use variable=ball|sa|pos)")
        sorts[name] = sort
    inputs = {
        "conditions": [f"{format_cterm(c.polynomial)} in {format_target(c.target)}" for c in conditions],
        "points": args.points,
        "tol": args.tol,
        "sorts": sorts,
    }
    result = realize_type(conditions, algebra, args.tol, sorts=sorts, max_boxes=args.max_boxes)
    payload = {"verb": "realize", "inputs": inputs}
    if isinstance(result, Realized):
        payload["result"] = "realized"
        payload["assignment"] = {
            name: [_complex_str(v) for v in value] for name, value in sorted(result.assignment.items())
        }
        payload["max_deviation"] = result.max_deviation
        payload["certificates"] = [_certificate_dict(c) for c in result.certificates]
        return payload, EXIT_OK
    if isinstance(result, Unsatisfiable):
        payload["result"] = "unsatisfiable"
        payload["epsilon"] = result.epsilon
        payload["delta"] = [
            f"{format_cterm(c.polynomial)} in {format_target(c.target)}" for c in result.delta
        ]
        return payload, EXIT_NEGATIVE
    payload["result"] = "inconclusive"
    payload["best_deviation"] = result.best_deviation
    payload["boxes_used"] = result.boxes_used
    return payload, EXIT_BUDGET


def _cmd_orth(args):
    algebra = CStarAlgebraFin(args.points)
    size = max_orthogonal_family(algebra)
    family = orthogonal_witness_family(algebra)
    payload = {
        "verb": "orth",
        "inputs": {"points": args.points},
        "value": size,
        "witness_family": [[_complex_str(v) for v in f] for f in family],
    }
    return payload, EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elemeq",
        description="Decision procedures for elementary equivalence at finite scale.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a machine-readable payload")
    common.add_argument("--out", metavar="FILE", help="write output to a file instead of stdout")
    common.add_argument(
        "--seed", type=int, default=DEFAULT_SEED, help="seed for any sampled cross-checks"
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("ord-arith", parents=[common], help="ordinal normal-form arithmetic")
    p.add_argument("op", choices=["add", "mul", "pow"])
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=_cmd_ord_arith)

    p = sub.add_parser("ord-eq", parents=[common], help="ordinal equality in normal form")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=_cmd_ord_eq)

    p = sub.add_parser(
        "calkin-eq", parents=[common], help="equivalence of ordinal tails modulo w^w"
    )
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=_cmd_calkin_eq)

    p = sub.add_parser("ef", parents=[common], help="finite-rank back-and-forth games")
    p.add_argument("--kind", choices=["orders", "ordinals", "ba"], default="ordinals")
    p.add_argument("--rank", type=int, default=3)
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=_cmd_ef)

    p = sub.add_parser(
        "ba-invariants", parents=[common], help="classification invariants of a described algebra"
    )
    p.add_argument("descriptor")
    p.set_defaults(handler=_cmd_ba_invariants)

    p = sub.add_parser(
        "ba-eq", parents=[common], help="elementary equivalence of described Boolean algebras"
    )
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=_cmd_ba_eq)

    p = sub.add_parser("ba-enumerate", parents=[common], help="enumerate completions in band order")
    p.add_argument("count", type=int)
    p.set_defaults(handler=_cmd_ba_enumerate)

    p = sub.add_parser("stone", parents=[common], help="finite Stone duality round trip")
    p.add_argument("atoms", type=int)
    p.set_defaults(handler=_cmd_stone)

    p = sub.add_parser(
        "translate", parents=[common], help="translate a classical sentence to a continuous formula"
    )
    p.add_argument("sentence")
    p.set_defaults(handler=_cmd_translate)

    p = sub.add_parser("ceval", parents=[common], help="certified continuous-formula evaluation")
    p.add_argument("formula")
    p.add_argument("--points", type=int, required=True, help="number of points of the space")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-boxes", type=int, default=200_000)
    p.add_argument("--param", action="append", metavar="NAME=ELEMENT")
    p.set_defaults(handler=_cmd_ceval)

    p = sub.add_parser("jspec", parents=[common], help="joint spectrum of a tuple of elements")
    p.add_argument("element", nargs="+")
    p.set_defaults(handler=_cmd_jspec)

    p = sub.add_parser(
        "fmember", parents=[common], help="joint-spectrum membership with all cross-checks"
    )
    p.add_argument("element", nargs="+")
    p.add_argument("--at", required=True, help="spectral parameter tuple")
    p.set_defaults(handler=_cmd_fmember)

    p = sub.add_parser("code", parents=[common], help="clopen coding of a contraction")
    p.add_argument("element")
    p.add_argument("--scale", type=int, required=True)
    p.add_argument("--reconstruct", action="store_true")
    p.set_defaults(handler=_cmd_code)

    p = sub.add_parser("interpolate", parents=[common], help="strict chain interpolation")
    p.add_argument("--algebra", default="cyl", help="'cyl' or 'finite:<atoms>'")
    p.add_argument("--lower", action="append", default=[], help="ascending chain element")
    p.add_argument("--upper", action="append", default=[], help="descending chain element")
    p.set_defaults(handler=_cmd_interpolate)

    p = sub.add_parser("realize", parents=[common], help="realize or refute a degree-1 type")
    p.add_argument("--cond", action="append", required=True, metavar="'<term> in <target>'")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--tol", type=float, required=True)
    p.add_argument("--sort", action="append", metavar="VAR=SORT")
    p.add_argument("--max-boxes", type=int, default=2_000_000)
    p.set_defaults(handler=_cmd_realize)

    p = sub.add_parser("orth", parents=[common], help="largest orthogonal positive norm-1 family")
    p.add_argument("--points", type=int, required=True)
    p.set_defaults(handler=_cmd_orth)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, code = args.handler(args)
    except ParseError as error:
        print(f"parse error: {error}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as error:
        print(f"invalid input: {error}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceBudgetError as error:
        print(f"budget exceeded: {error}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OverflowError) as error:
        print(f"invalid input: {error}", file=sys.stderr)
        return EXIT_PARSE
    _emit(payload, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
