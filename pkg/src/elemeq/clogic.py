"""Continuous-logic formulas over finite-dimensional abelian C*-algebras,
with a certified evaluator and the classical-to-continuous translation.

Formulas form a small closed catalog: atoms are norms of *-polynomial terms,
connectives are addition, truncated subtraction, max, min, nonnegative
scaling, absolute difference, and constants in [0, 1], and quantifiers are
suprema and infima over four sorts of the unit ball — the full ball, its
self-adjoint and positive parts, and the (finite) set of projections.  Every
node has a computable Lipschitz modulus in each free variable, obtained by
composing the children's moduli.

Evaluation returns an enclosure certificate.  Formulas whose quantifiers all
range over projections are evaluated exactly (the sort is finite); the
continuous sorts are handled by deterministic branch-and-bound over per-point
complex boxes, pruned by both interval arithmetic and the Lipschitz moduli.
The truth-value bridge ``translate_fo`` maps a classical sentence about
Boolean algebras to a projection-sorted formula whose value is 0 on algebras
satisfying the sentence and 1 on algebras refuting it.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache

from . import boolalg
from .cstar import CStarAlgebraFin, projections
from .errors import PreconditionError, ResourceBudgetError

__all__ = [
    "SORT_BALL",
    "SORT_SA",
    "SORT_POS",
    "SORT_PROJ",
    "SORTS",
    "CVar",
    "CZero",
    "COne",
    "CConst",
    "CAdd",
    "CSub",
    "CMul",
    "CStar",
    "CScale",
    "FNorm",
    "FConst",
    "FPlus",
    "FTruncSub",
    "FMax",
    "FMin",
    "FScale",
    "FAbsDiff",
    "FSup",
    "FInf",
    "cformula_free_vars",
    "term_free_vars",
    "term_bound",
    "term_modulus",
    "formula_modulus",
    "EvalCertificate",
    "ceval",
    "translate_fo",
]

SORT_BALL = "ball"
SORT_SA = "sa"
SORT_POS = "pos"
SORT_PROJ = "proj"
SORTS = frozenset({SORT_BALL, SORT_SA, SORT_POS, SORT_PROJ})

#: Largest space the certified evaluator accepts.
MAX_CEVAL_POINTS = 6

#: Default cap on branch-and-bound boxes processed per evaluation.
DEFAULT_MAX_BOXES = 200_000


# ---------------------------------------------------------------------------
# Terms: *-polynomials over variables and constants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CVar:
    name: str


@dataclass(frozen=True)
class CZero:
    """The zero element, size-agnostic."""


@dataclass(frozen=True)
class COne:
    """The unit element, size-agnostic."""


@dataclass(frozen=True)
class CConst:
    """A concrete element constant, fixed to one algebra size."""

    values: tuple


@dataclass(frozen=True)
class CAdd:
    left: object
    right: object


@dataclass(frozen=True)
class CSub:
    left: object
    right: object


@dataclass(frozen=True)
class CMul:
    left: object
    right: object


@dataclass(frozen=True)
class CStar:
    arg: object


@dataclass(frozen=True)
class CScale:
    scalar: complex
    arg: object


_TERM_TYPES = (CVar, CZero, COne, CConst, CAdd, CSub, CMul, CStar, CScale)


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FNorm:
    term: object


@dataclass(frozen=True)
class FConst:
    value: float

    def __post_init__(self) -> None:
        if not 0 <= self.value <= 1:
            raise PreconditionError("formula constants must lie in [0, 1]")


@dataclass(frozen=True)
class FPlus:
    left: object
    right: object


@dataclass(frozen=True)
class FTruncSub:
    """Truncated subtraction: max(left - right, 0)."""

    left: object
    right: object


@dataclass(frozen=True)
class FMax:
    left: object
    right: object


@dataclass(frozen=True)
class FMin:
    left: object
    right: object


@dataclass(frozen=True)
class FScale:
    scalar: float
    arg: object

    def __post_init__(self) -> None:
        if self.scalar < 0:
            raise PreconditionError("formula scaling must be nonnegative")


@dataclass(frozen=True)
class FAbsDiff:
    left: object
    right: object


@dataclass(frozen=True)
class FSup:
    var: str
    sort: str
    body: object

    def __post_init__(self) -> None:
        if self.sort not in SORTS:
            raise PreconditionError(f"unknown quantifier sort: {self.sort!r}")


@dataclass(frozen=True)
class FInf:
    var: str
    sort: str
    body: object

    def __post_init__(self) -> None:
        if self.sort not in SORTS:
            raise PreconditionError(f"unknown quantifier sort: {self.sort!r}")


_BINARY_TYPES = (FPlus, FTruncSub, FMax, FMin, FAbsDiff)
_QUANT_TYPES = (FSup, FInf)


@lru_cache(maxsize=None)
def term_free_vars(term) -> frozenset:
    if isinstance(term, CVar):
        return frozenset({term.name})
    if isinstance(term, (CZero, COne, CConst)):
        return frozenset()
    if isinstance(term, (CAdd, CSub, CMul)):
        return term_free_vars(term.left) | term_free_vars(term.right)
    if isinstance(term, (CStar, CScale)):
        return term_free_vars(term.arg)
    raise PreconditionError(f"not a term: {term!r}")


@lru_cache(maxsize=None)
def cformula_free_vars(phi) -> frozenset:
    if isinstance(phi, FNorm):
        return term_free_vars(phi.term)
    if isinstance(phi, FConst):
        return frozenset()
    if isinstance(phi, _BINARY_TYPES):
        return cformula_free_vars(phi.left) | cformula_free_vars(phi.right)
    if isinstance(phi, FScale):
        return cformula_free_vars(phi.arg)
    if isinstance(phi, _QUANT_TYPES):
        return cformula_free_vars(phi.body) - {phi.var}
    raise PreconditionError(f"not a formula: {phi!r}")


# ---------------------------------------------------------------------------
# Lipschitz moduli and bounds
# ---------------------------------------------------------------------------


def term_bound(term, algebra: CStarAlgebraFin, bounds: dict) -> float:
    """An upper bound on the norm of the term.

    ``bounds`` maps each free variable to a norm bound (quantified variables
    get 1, the radius of every sort).
    """
    if isinstance(term, CVar):
        if term.name not in bounds:
            raise PreconditionError(f"unbounded variable {term.name!r}")
        return bounds[term.name]
    if isinstance(term, CZero):
        return 0.0
    if isinstance(term, COne):
        return 1.0
    if isinstance(term, CConst):
        return max(abs(v) for v in term.values) if term.values else 0.0
    if isinstance(term, (CAdd, CSub)):
        return term_bound(term.left, algebra, bounds) + term_bound(
            term.right, algebra, bounds
        )
    if isinstance(term, CMul):
        return term_bound(term.left, algebra, bounds) * term_bound(
            term.right, algebra, bounds
        )
    if isinstance(term, CStar):
        return term_bound(term.arg, algebra, bounds)
    if isinstance(term, CScale):
        return abs(term.scalar) * term_bound(term.arg, algebra, bounds)
    raise PreconditionError(f"not a term: {term!r}")


def term_modulus(term, var: str, algebra: CStarAlgebraFin, bounds: dict) -> float:
    """A Lipschitz constant of the term in ``var`` (sup-norm metric)."""
    if isinstance(term, CVar):
        return 1.0 if term.name == var else 0.0
    if isinstance(term, (CZero, COne, CConst)):
        return 0.0
    if isinstance(term, (CAdd, CSub)):
        return term_modulus(term.left, var, algebra, bounds) + term_modulus(
            term.right, var, algebra, bounds
        )
    if isinstance(term, CMul):
        bl = term_bound(term.left, algebra, bounds)
        br = term_bound(term.right, algebra, bounds)
        return bl * term_modulus(term.right, var, algebra, bounds) + br * (
            term_modulus(term.left, var, algebra, bounds)
        )
    if isinstance(term, CStar):
        return term_modulus(term.arg, var, algebra, bounds)
    if isinstance(term, CScale):
        return abs(term.scalar) * term_modulus(term.arg, var, algebra, bounds)
    raise PreconditionError(f"not a term: {term!r}")


def formula_modulus(phi, var: str, algebra: CStarAlgebraFin, bounds: dict) -> float:
    """A Lipschitz constant of the formula value in ``var``.

    Composes children's moduli: the norm atom is 1-Lipschitz in its term,
    binary connectives add (max/min take the larger), scaling multiplies,
    and a quantifier preserves the modulus of its body in the remaining
    variables (a pointwise sup or inf of an L-Lipschitz family is
    L-Lipschitz).
    """
    if isinstance(phi, FNorm):
        return term_modulus(phi.term, var, algebra, bounds)
    if isinstance(phi, FConst):
        return 0.0
    if isinstance(phi, (FMax, FMin)):
        return max(
            formula_modulus(phi.left, var, algebra, bounds),
            formula_modulus(phi.right, var, algebra, bounds),
        )
    if isinstance(phi, (FPlus, FTruncSub, FAbsDiff)):
        return formula_modulus(phi.left, var, algebra, bounds) + formula_modulus(
            phi.right, var, algebra, bounds
        )
    if isinstance(phi, FScale):
        return phi.scalar * formula_modulus(phi.arg, var, algebra, bounds)
    if isinstance(phi, _QUANT_TYPES):
        if phi.var == var:
            return 0.0
        inner = dict(bounds)
        inner[phi.var] = 1.0
        return formula_modulus(phi.body, var, algebra, inner)
    raise PreconditionError(f"not a formula: {phi!r}")


# ---------------------------------------------------------------------------
# Interval arithmetic over per-point complex rectangles
# ---------------------------------------------------------------------------
# A rectangle is (re_lo, re_hi, im_lo, im_hi); an element enclosure is a
# tuple of rectangles, one per point of the space.


def _imul(al, ah, bl, bh):
    c1, c2, c3, c4 = al * bl, al * bh, ah * bl, ah * bh
    return min(c1, c2, c3, c4), max(c1, c2, c3, c4)


def _rect_point(v: complex):
    return (v.real, v.real, v.imag, v.imag)


def _rect_add(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def _rect_sub(a, b):
    return (a[0] - b[1], a[1] - b[0], a[2] - b[3], a[3] - b[2])


def _rect_mul(a, b):
    rr = _imul(a[0], a[1], b[0], b[1])
    ii = _imul(a[2], a[3], b[2], b[3])
    ri = _imul(a[0], a[1], b[2], b[3])
    ir = _imul(a[2], a[3], b[0], b[1])
    return (rr[0] - ii[1], rr[1] - ii[0], ri[0] + ir[0], ri[1] + ir[1])


def _rect_conj(a):
    return (a[0], a[1], -a[3], -a[2])


def _axis_gap(lo, hi):
    if lo <= 0 <= hi:
        return 0.0
    return min(abs(lo), abs(hi))


def _rect_mod(a):
    lo = math.hypot(_axis_gap(a[0], a[1]), _axis_gap(a[2], a[3]))
    hi = math.hypot(max(abs(a[0]), abs(a[1])), max(abs(a[2]), abs(a[3])))
    return lo, hi


def _box_point(values: tuple) -> tuple:
    return tuple(_rect_point(v) for v in values)


def _term_enclosure(term, env: dict, algebra: CStarAlgebraFin) -> tuple:
    if isinstance(term, CVar):
        if term.name not in env:
            raise PreconditionError(f"unbound variable {term.name!r}")
        return env[term.name]
    if isinstance(term, CZero):
        return (_rect_point(0j),) * algebra.point_count
    if isinstance(term, COne):
        return (_rect_point(1 + 0j),) * algebra.point_count
    if isinstance(term, CConst):
        if len(term.values) != algebra.point_count:
            raise PreconditionError("constant element has the wrong size")
        return _box_point(term.values)
    if isinstance(term, CAdd):
        l = _term_enclosure(term.left, env, algebra)
        r = _term_enclosure(term.right, env, algebra)
        return tuple(_rect_add(a, b) for a, b in zip(l, r))
    if isinstance(term, CSub):
        l = _term_enclosure(term.left, env, algebra)
        r = _term_enclosure(term.right, env, algebra)
        return tuple(_rect_sub(a, b) for a, b in zip(l, r))
    if isinstance(term, CMul):
        l = _term_enclosure(term.left, env, algebra)
        r = _term_enclosure(term.right, env, algebra)
        return tuple(_rect_mul(a, b) for a, b in zip(l, r))
    if isinstance(term, CStar):
        return tuple(_rect_conj(a) for a in _term_enclosure(term.arg, env, algebra))
    if isinstance(term, CScale):
        s = _rect_point(complex(term.scalar))
        return tuple(
            _rect_mul(s, a) for a in _term_enclosure(term.arg, env, algebra)
        )
    raise PreconditionError(f"not a term: {term!r}")


# ---------------------------------------------------------------------------
# Quantifier domains
# ---------------------------------------------------------------------------


def _initial_box(sort: str, n: int) -> tuple:
    if sort == SORT_BALL:
        return ((-1.0, 1.0, -1.0, 1.0),) * n
    if sort == SORT_SA:
        return ((-1.0, 1.0, 0.0, 0.0),) * n
    if sort == SORT_POS:
        return ((0.0, 1.0, 0.0, 0.0),) * n
    raise PreconditionError(f"sort {sort!r} has no box domain")


def _box_representative(box: tuple, sort: str):
    """A point of box ∩ sort-domain, or None when the intersection is empty.

    The per-coordinate point closest to the origin always lies in the unit
    disc if any box point does; for the real sorts the box is already inside
    the domain, so the midpoint is used instead.
    """
    rep = []
    for relo, rehi, imlo, imhi in box:
        if sort == SORT_BALL:
            re = min(max(0.0, relo), rehi)
            im = min(max(0.0, imlo), imhi)
            if math.hypot(re, im) > 1:
                return None
            rep.append(complex(re, im))
        else:
            rep.append(complex((relo + rehi) / 2, 0.0))
    return tuple(rep)


def _box_radius(box: tuple, rep: tuple) -> float:
    """Max distance (sup metric over points) from ``rep`` to box points."""
    worst = 0.0
    for (relo, rehi, imlo, imhi), v in zip(box, rep):
        dre = max(abs(relo - v.real), abs(rehi - v.real))
        dim = max(abs(imlo - v.imag), abs(imhi - v.imag))
        worst = max(worst, math.hypot(dre, dim))
    return worst


def _split_box(box: tuple) -> tuple:
    """Split the widest axis (ties: lowest point index, real before imag)."""
    best, best_width = None, -1.0
    for idx, (relo, rehi, imlo, imhi) in enumerate(box):
        if rehi - relo > best_width:
            best, best_width = (idx, 0), rehi - relo
        if imhi - imlo > best_width:
            best, best_width = (idx, 1), imhi - imlo
    idx, axis = best
    rect = box[idx]
    if axis == 0:
        mid = (rect[0] + rect[1]) / 2
        a = (rect[0], mid, rect[2], rect[3])
        b = (mid, rect[1], rect[2], rect[3])
    else:
        mid = (rect[2] + rect[3]) / 2
        a = (rect[0], rect[1], rect[2], mid)
        b = (rect[0], rect[1], mid, rect[3])
    return (box[:idx] + (a,) + box[idx + 1 :], box[:idx] + (b,) + box[idx + 1 :])


# ---------------------------------------------------------------------------
# Certified evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EvalCertificate:
    """An enclosure of a formula value: lower ≤ value ≤ upper."""

    lower: float
    upper: float
    grid_depth: int

    def width(self) -> float:
        return self.upper - self.lower


def _interval_eval(phi, env, algebra, tol, state):
    """A sound enclosure (lo, hi) of the formula over the environment.

    Environment entries are element enclosures (tuples of rectangles);
    degenerate rectangles encode exact values.  ``tol`` is the width the
    node should aim for when all its environment entries are exact; boxes
    in the environment widen the result soundly.
    """
    if isinstance(phi, FNorm):
        rects = _term_enclosure(phi.term, env, algebra)
        mods = [_rect_mod(r) for r in rects]
        return max(m[0] for m in mods), max(m[1] for m in mods)
    if isinstance(phi, FConst):
        return phi.value, phi.value
    if isinstance(phi, FPlus):
        l = _interval_eval(phi.left, env, algebra, tol / 2, state)
        r = _interval_eval(phi.right, env, algebra, tol / 2, state)
        return l[0] + r[0], l[1] + r[1]
    if isinstance(phi, FTruncSub):
        l = _interval_eval(phi.left, env, algebra, tol / 2, state)
        r = _interval_eval(phi.right, env, algebra, tol / 2, state)
        return max(l[0] - r[1], 0.0), max(l[1] - r[0], 0.0)
    if isinstance(phi, FMax):
        l = _interval_eval(phi.left, env, algebra, tol, state)
        r = _interval_eval(phi.right, env, algebra, tol, state)
        return max(l[0], r[0]), max(l[1], r[1])
    if isinstance(phi, FMin):
        l = _interval_eval(phi.left, env, algebra, tol, state)
        r = _interval_eval(phi.right, env, algebra, tol, state)
        return min(l[0], r[0]), min(l[1], r[1])
    if isinstance(phi, FScale):
        if phi.scalar == 0:
            return 0.0, 0.0
        inner = _interval_eval(phi.arg, env, algebra, tol / phi.scalar, state)
        return phi.scalar * inner[0], phi.scalar * inner[1]
    if isinstance(phi, FAbsDiff):
        l = _interval_eval(phi.left, env, algebra, tol / 2, state)
        r = _interval_eval(phi.right, env, algebra, tol / 2, state)
        lo = 0.0 if (l[0] <= r[1] and r[0] <= l[1]) else max(l[0] - r[1], r[0] - l[1])
        return lo, max(l[1] - r[0], r[1] - l[0])
    if isinstance(phi, _QUANT_TYPES):
        if phi.sort == SORT_PROJ:
            out_lo, out_hi = None, None
            for p in projections(algebra):
                sub = dict(env)
                sub[phi.var] = _box_point(p)
                lo, hi = _interval_eval(phi.body, sub, algebra, tol, state)
                if out_lo is None:
                    out_lo, out_hi = lo, hi
                elif isinstance(phi, FSup):
                    out_lo, out_hi = max(out_lo, lo), max(out_hi, hi)
                else:
                    out_lo, out_hi = min(out_lo, lo), min(out_hi, hi)
            return out_lo, out_hi
        return _branch_and_bound(phi, env, algebra, tol, state)
    raise PreconditionError(f"not a formula: {phi!r}")


#: A nested branch-and-bound (environment contains genuine boxes) stops
#: once this many consecutive refinements fail to shrink the enclosure:
#: its width is then dominated by the outer boxes, which only the caller
#: can refine.
_STALL_LIMIT = 64


def _branch_and_bound(phi, env, algebra, tol, state):
    """Enclose a sup/inf over a continuous sort by best-first box refinement.

    Each box yields (a) an interval-arithmetic enclosure of the body over
    the whole box, intersected with a Lipschitz cone around the box
    representative, and (b) the representative's own enclosure, which
    witnesses attainable values.  For a supremum the certified interval is
    [best witness lower bound, largest surviving box upper bound]; infima
    are handled by the mirrored rule.  The queue is a heap on the box bound
    that currently blocks the certificate, and boxes that can no longer
    move it are pruned.
    """
    is_sup = isinstance(phi, FSup)
    sign = -1.0 if is_sup else 1.0  # heap pops the blocking box first
    bounds = {v: 1.0 for v in cformula_free_vars(phi)}
    bounds[phi.var] = 1.0
    lip = formula_modulus(phi.body, phi.var, algebra, bounds)
    nested = any(
        r[1] - r[0] > 0 or r[3] - r[2] > 0 for box in env.values() for r in box
    )

    def assess(box, depth):
        state["boxes"] += 1
        state["depth"] = max(state["depth"], depth)
        rep = _box_representative(box, phi.sort)
        if rep is None:
            return None
        sub = dict(env)
        sub[phi.var] = box
        box_lo, box_hi = _interval_eval(phi.body, sub, algebra, tol / 2, state)
        sub[phi.var] = _box_point(rep)
        rep_lo, rep_hi = _interval_eval(phi.body, sub, algebra, tol / 2, state)
        radius = _box_radius(box, rep)
        box_lo = max(box_lo, rep_lo - lip * radius)
        box_hi = min(box_hi, rep_hi + lip * radius)
        return box_lo, box_hi, rep_lo, rep_hi

    first = assess(_initial_box(phi.sort, algebra.point_count), 0)
    if first is None:
        raise PreconditionError("empty quantifier domain")
    # witness: certified attained bound (max rep_lo for sup, min rep_hi
    # for inf); heap key: the box bound that blocks certification.
    witness = first[2] if is_sup else first[3]
    heap = [
        (sign * (first[1] if is_sup else first[0]), 0, first,
         _initial_box(phi.sort, algebra.point_count))
    ]
    stall = 0
    best_width = math.inf

    while True:
        if heap:
            blocking = -heap[0][0] if is_sup else heap[0][0]
            lo, hi = (witness, max(blocking, witness)) if is_sup else (
                min(blocking, witness), witness)
        else:
            lo = hi = witness
        width = hi - lo
        if width <= tol:
            return lo, hi
        if width < best_width - tol * 1e-3:
            best_width, stall = width, 0
        else:
            stall += 1
            if nested and stall >= _STALL_LIMIT:
                return lo, hi
        if state["boxes"] >= state["max"]:
            err = ResourceBudgetError(
                f"branch-and-bound exceeded {state['max']} boxes"
            )
            err.best_known = EvalCertificate(lo, hi, state["depth"])
            raise err
        _, depth, _, box = heapq.heappop(heap)
        for child in _split_box(box):
            e = assess(child, depth + 1)
            if e is None:
                continue
            if is_sup:
                witness = max(witness, e[2])
                if e[1] > witness:  # still able to raise the supremum bound
                    heapq.heappush(heap, (sign * e[1], depth + 1, e, child))
            else:
                witness = min(witness, e[3])
                if e[0] < witness:
                    heapq.heappush(heap, (e[0], depth + 1, e, child))


def _all_proj_quantified(phi) -> bool:
    if isinstance(phi, (FNorm, FConst)):
        return True
    if isinstance(phi, _BINARY_TYPES):
        return _all_proj_quantified(phi.left) and _all_proj_quantified(phi.right)
    if isinstance(phi, FScale):
        return _all_proj_quantified(phi.arg)
    if isinstance(phi, _QUANT_TYPES):
        return phi.sort == SORT_PROJ and _all_proj_quantified(phi.body)
    raise PreconditionError(f"not a formula: {phi!r}")


def _term_value(term, env, algebra):
    if isinstance(term, CVar):
        return env[term.name]
    if isinstance(term, CZero):
        return (0j,) * algebra.point_count
    if isinstance(term, COne):
        return (1 + 0j,) * algebra.point_count
    if isinstance(term, CConst):
        if len(term.values) != algebra.point_count:
            raise PreconditionError("constant element has the wrong size")
        return term.values
    if isinstance(term, CAdd):
        l = _term_value(term.left, env, algebra)
        r = _term_value(term.right, env, algebra)
        return tuple(a + b for a, b in zip(l, r))
    if isinstance(term, CSub):
        l = _term_value(term.left, env, algebra)
        r = _term_value(term.right, env, algebra)
        return tuple(a - b for a, b in zip(l, r))
    if isinstance(term, CMul):
        l = _term_value(term.left, env, algebra)
        r = _term_value(term.right, env, algebra)
        return tuple(a * b for a, b in zip(l, r))
    if isinstance(term, CStar):
        return tuple(a.conjugate() for a in _term_value(term.arg, env, algebra))
    if isinstance(term, CScale):
        s = complex(term.scalar)
        return tuple(s * a for a in _term_value(term.arg, env, algebra))
    raise PreconditionError(f"not a term: {term!r}")


def _exact_eval(phi, env, algebra, memo) -> float:
    """Exact value when every quantifier ranges over projections."""
    key = (
        id(phi),
        tuple(env[v] for v in sorted(cformula_free_vars(phi))),
    )
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(phi, FNorm):
        values = _term_value(phi.term, env, algebra)
        out = max(abs(v) for v in values)
    elif isinstance(phi, FConst):
        out = phi.value
    elif isinstance(phi, FPlus):
        out = _exact_eval(phi.left, env, algebra, memo) + _exact_eval(
            phi.right, env, algebra, memo
        )
    elif isinstance(phi, FTruncSub):
        out = max(
            _exact_eval(phi.left, env, algebra, memo)
            - _exact_eval(phi.right, env, algebra, memo),
            0.0,
        )
    elif isinstance(phi, FMax):
        out = max(
            _exact_eval(phi.left, env, algebra, memo),
            _exact_eval(phi.right, env, algebra, memo),
        )
    elif isinstance(phi, FMin):
        out = min(
            _exact_eval(phi.left, env, algebra, memo),
            _exact_eval(phi.right, env, algebra, memo),
        )
    elif isinstance(phi, FScale):
        out = phi.scalar * _exact_eval(phi.arg, env, algebra, memo)
    elif isinstance(phi, FAbsDiff):
        out = abs(
            _exact_eval(phi.left, env, algebra, memo)
            - _exact_eval(phi.right, env, algebra, memo)
        )
    elif isinstance(phi, _QUANT_TYPES):
        combine = max if isinstance(phi, FSup) else min
        out = None
        for p in projections(algebra):
            sub = dict(env)
            sub[phi.var] = p
            v = _exact_eval(phi.body, sub, algebra, memo)
            out = v if out is None else combine(out, v)
    else:
        raise PreconditionError(f"not a formula: {phi!r}")
    memo[key] = out
    return out


def ceval(
    phi,
    algebra: CStarAlgebraFin,
    params: dict | None = None,
    tol: float = 1e-6,
    max_boxes: int = DEFAULT_MAX_BOXES,
) -> EvalCertificate:
    """Certified enclosure of the formula value, width at most ``tol``.

    Free variables must be assigned concrete elements through ``params``.
    Projection-sorted quantifiers are evaluated exactly; continuous sorts go
    through deterministic branch-and-bound, and exhausting the box budget
    raises a resource error carrying the best enclosure found.
    """
    if tol <= 0:
        raise PreconditionError("the tolerance must be positive")
    if algebra.point_count > MAX_CEVAL_POINTS:
        raise PreconditionError(
            f"certified evaluation accepts at most {MAX_CEVAL_POINTS} points"
        )
    params = dict(params or {})
    missing = cformula_free_vars(phi) - set(params)
    if missing:
        raise PreconditionError(f"unassigned free variables: {sorted(missing)}")
    env_exact = {
        name: algebra.element(value)
        for name, value in params.items()
    }
    if _all_proj_quantified(phi):
        value = _exact_eval(phi, env_exact, algebra, {})
        return EvalCertificate(value, value, 0)
    env = {name: _box_point(value) for name, value in env_exact.items()}
    state = {"boxes": 0, "max": max_boxes, "depth": 0}
    lo, hi = _interval_eval(phi, env, algebra, tol, state)
    return EvalCertificate(lo, hi, state["depth"])


# ---------------------------------------------------------------------------
# Classical-to-continuous translation
# ---------------------------------------------------------------------------


def _translate_term(term):
    if isinstance(term, boolalg.TVar):
        return CVar(term.name)
    if isinstance(term, boolalg.TZero):
        return CZero()
    if isinstance(term, boolalg.TOne):
        return COne()
    if isinstance(term, boolalg.TMeet):
        return CMul(_translate_term(term.left), _translate_term(term.right))
    if isinstance(term, boolalg.TJoin):
        l, r = _translate_term(term.left), _translate_term(term.right)
        return CSub(CAdd(l, r), CMul(l, r))
    if isinstance(term, boolalg.TCompl):
        return CSub(COne(), _translate_term(term.arg))
    raise PreconditionError(f"not a Boolean term: {term!r}")


def translate_fo(phi) -> object:
    """Translate a classical sentence to a projection-sorted formula.

    Universal quantifiers become suprema, existentials become infima over
    the projection sort; conjunction becomes max, disjunction min, negation
    1 ∸ value; equality of terms becomes the norm of their difference and
    the order atom s ≤ t the norm of s·t − s.  On indicator projections all
    atoms take values in {0, 1}, so the sentence holds in a finite algebra
    exactly when the translated value is 0, and fails exactly when it is 1.
    """
    if boolalg.free_variables(phi):
        raise PreconditionError("only sentences can be translated")
    return _translate_fo(phi)


def _translate_fo(phi):
    if isinstance(phi, boolalg.Eq):
        return FNorm(CSub(_translate_term(phi.left), _translate_term(phi.right)))
    if isinstance(phi, boolalg.Le):
        s, t = _translate_term(phi.left), _translate_term(phi.right)
        return FNorm(CSub(CMul(s, t), s))
    if isinstance(phi, boolalg.Not):
        return FTruncSub(FConst(1.0), _translate_fo(phi.arg))
    if isinstance(phi, boolalg.And):
        return FMax(_translate_fo(phi.left), _translate_fo(phi.right))
    if isinstance(phi, boolalg.Or):
        return FMin(_translate_fo(phi.left), _translate_fo(phi.right))
    if isinstance(phi, boolalg.Implies):
        return FMin(
            FTruncSub(FConst(1.0), _translate_fo(phi.left)),
            _translate_fo(phi.right),
        )
    if isinstance(phi, boolalg.Forall):
        return FSup(phi.var, SORT_PROJ, _translate_fo(phi.body))
    if isinstance(phi, boolalg.Exists):
        return FInf(phi.var, SORT_PROJ, _translate_fo(phi.body))
    raise PreconditionError(f"not a formula: {phi!r}")
