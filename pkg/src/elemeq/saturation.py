"""Finite-scale saturation experiments.

Three capabilities live here:

* a concretely presented atomless Boolean algebra (finite unions of
  cylinder sets over infinite binary sequences) together with chain
  interpolation, the order-theoretic heart of Boolean saturation;
* degree-1 type conditions over a finite-dimensional commutative
  C*-algebra, with a certified branch-and-bound engine that either
  realizes a type up to a tolerance or refutes it with a concrete
  deviation floor;
* the pairwise-orthogonal-positive-elements count, whose finite value
  is the obstruction that keeps finite-dimensional algebras far from
  saturation.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

import numpy as np

from elemeq.boolalg import FiniteBoolAlg
from elemeq.clogic import (
    CAdd,
    CConst,
    CMul,
    CScale,
    CStar,
    CSub,
    CVar,
    CZero,
    COne,
    FNorm,
    SORT_BALL,
    SORT_POS,
    SORT_SA,
    ceval,
    term_free_vars,
)
from elemeq.cstar import CStarAlgebraFin, c_mul, c_norm
from elemeq.errors import PreconditionError

MAX_REALIZE_VARIABLES = 3
MAX_REALIZE_POINTS = 4
MAX_REALIZE_CONDITIONS = 16
MAX_ORTHOGONAL_POINTS = 8
DEFAULT_REALIZE_BOXES = 2_000_000
_REALIZE_SORTS = (SORT_BALL, SORT_SA, SORT_POS)
_BATCH_SIZE = 512


# ---------------------------------------------------------------------------
# A presented atomless Boolean algebra
# ---------------------------------------------------------------------------


def _reduce_words(depth: int, words: frozenset) -> tuple:
    """Canonicalize a union of depth-`depth` cylinders at minimal depth."""
    if not words:
        return 0, frozenset()
    while depth > 0 and all(w[:-1] + ("1" if w[-1] == "0" else "0") in words for w in words):
        words = frozenset(w[:-1] for w in words)
        depth -= 1
    return depth, words


@dataclass(frozen=True)
class CylinderElement:
    """A finite union of cylinder sets, canonical at minimal depth.

    ``words`` is a set of binary strings of length ``depth``; the element
    is the union of the cylinders they name.  The constructor reduces the
    representation until no sibling pair remains, so equal elements have
    equal representations.
    """

    depth: int
    words: frozenset

    def __post_init__(self):
        if self.depth < 0:
            raise PreconditionError("cylinder depth must be nonnegative")
        for w in self.words:
            if len(w) != self.depth or any(ch not in "01" for ch in w):
                raise PreconditionError(f"word {w!r} is not binary of length {self.depth}")
        depth, words = _reduce_words(self.depth, frozenset(self.words))
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "words", words)

    def is_zero(self) -> bool:
        return not self.words


def _lift_words(words, from_depth: int, to_depth: int) -> frozenset:
    if from_depth == to_depth:
        return frozenset(words)
    suffixes = ["".join(bits) for bits in itertools.product("01", repeat=to_depth - from_depth)]
    return frozenset(w + s for w in words for s in suffixes)


class PresentedAtomlessBA:
    """The Boolean algebra of finite unions of binary cylinder sets.

    Every nonzero element splits into strictly smaller nonzero pieces,
    so the algebra is atomless.  The API mirrors ``FiniteBoolAlg``:
    operations take and return ``CylinderElement`` values.
    """

    @property
    def bottom(self) -> CylinderElement:
        return CylinderElement(0, frozenset())

    @property
    def top(self) -> CylinderElement:
        return CylinderElement(0, frozenset({""}))

    def cylinder(self, word: str) -> CylinderElement:
        """The single cylinder of sequences starting with ``word``."""
        return CylinderElement(len(word), frozenset({word}))

    def _common(self, a: CylinderElement, b: CylinderElement) -> tuple:
        depth = max(a.depth, b.depth)
        return depth, _lift_words(a.words, a.depth, depth), _lift_words(b.words, b.depth, depth)

    def join(self, a: CylinderElement, b: CylinderElement) -> CylinderElement:
        depth, wa, wb = self._common(a, b)
        return CylinderElement(depth, wa | wb)

    def meet(self, a: CylinderElement, b: CylinderElement) -> CylinderElement:
        depth, wa, wb = self._common(a, b)
        return CylinderElement(depth, wa & wb)

    def complement(self, a: CylinderElement) -> CylinderElement:
        all_words = frozenset("".join(bits) for bits in itertools.product("01", repeat=a.depth))
        return CylinderElement(a.depth, all_words - a.words)

    def leq(self, a: CylinderElement, b: CylinderElement) -> bool:
        depth, wa, wb = self._common(a, b)
        return wa <= wb

    def lt(self, a: CylinderElement, b: CylinderElement) -> bool:
        return self.leq(a, b) and a != b


# ---------------------------------------------------------------------------
# Chain interpolation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NotFound:
    """Verdict: the open interval between the chains is empty."""


NOT_FOUND = NotFound()


def _chain_bounds(lower_chain, upper_chain, algebra, bottom, top):
    """Validate the two strict chains and return (max(Y), min(Z))."""
    for chain, ascending, label in ((lower_chain, True, "lower"), (upper_chain, False, "upper")):
        for prev, curr in zip(chain, chain[1:]):
            lo, hi = (prev, curr) if ascending else (curr, prev)
            if not (algebra.leq(lo, hi) and lo != hi):
                raise PreconditionError(f"{label} chain is not strictly monotone")
    u = lower_chain[-1] if lower_chain else bottom
    v = upper_chain[-1] if upper_chain else top
    if not (algebra.leq(u, v) and u != v):
        raise PreconditionError("lower chain is not strictly below upper chain")
    return u, v


def interpolate_chain(lower_chain, upper_chain, algebra):
    """Find c strictly between an ascending and a descending chain.

    ``lower_chain`` must be strictly ascending, ``upper_chain`` strictly
    descending, and the largest lower element strictly below the smallest
    upper element (empty chains default to bottom and top).  Violations
    raise ``PreconditionError``.  In ``PresentedAtomlessBA`` an
    interpolant always exists: the lexicographically first cylinder of
    the gap is split and its first half joined to the lower bound.  In
    ``FiniteBoolAlg`` the verdict ``NOT_FOUND`` is returned when the open
    interval is empty.  Every returned element is re-checked to lie
    strictly between the bounds.
    """
    if isinstance(algebra, PresentedAtomlessBA):
        u, v = _chain_bounds(lower_chain, upper_chain, algebra, algebra.bottom, algebra.top)
        gap = algebra.meet(v, algebra.complement(u))
        first = min(gap.words)
        candidate = algebra.join(u, algebra.cylinder(first + "0"))
        if not (algebra.lt(u, candidate) and algebra.lt(candidate, v)):
            raise RuntimeError("interpolation postcondition failed")
        return candidate
    if isinstance(algebra, FiniteBoolAlg):
        u, v = _chain_bounds(lower_chain, upper_chain, algebra, 0, algebra.full)
        gap = v & ~u & algebra.full
        if gap.bit_count() < 2:
            return NOT_FOUND
        candidate = u | (gap & -gap)
        if not (algebra.leq(u, candidate) and candidate != u and algebra.leq(candidate, v) and candidate != v):
            raise RuntimeError("interpolation postcondition failed")
        return candidate
    raise PreconditionError("algebra must be PresentedAtomlessBA or FiniteBoolAlg")


# ---------------------------------------------------------------------------
# Degree-1 type conditions
# ---------------------------------------------------------------------------


def _term_degrees(term) -> dict:
    """Per-variable degree of a *-polynomial term."""
    if isinstance(term, CVar):
        return {term.name: 1}
    if isinstance(term, (CZero, COne, CConst)):
        return {}
    if isinstance(term, (CStar, CScale)):
        return _term_degrees(term.arg)
    left = _term_degrees(term.left)
    right = _term_degrees(term.right)
    merged = {}
    for name in left.keys() | right.keys():
        dl, dr = left.get(name, 0), right.get(name, 0)
        merged[name] = dl + dr if isinstance(term, CMul) else max(dl, dr)
    return merged


def _normalize_target(target) -> tuple:
    intervals = []
    for pair in target:
        lo, hi = float(pair[0]), float(pair[1])
        if not (lo <= hi):
            raise PreconditionError(f"target interval [{lo}, {hi}] is empty")
        intervals.append((lo, hi))
    if not intervals:
        raise PreconditionError("target must contain at least one interval")
    intervals.sort()
    merged = [intervals[0]]
    for lo, hi in intervals[1:]:
        if lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return tuple(merged)


@dataclass(frozen=True)
class TypeCondition:
    """One condition: the norm of a degree-1 *-polynomial must land in a
    finite union of closed real intervals."""

    polynomial: object
    target: tuple

    def __post_init__(self):
        degrees = _term_degrees(self.polynomial)
        for name, degree in sorted(degrees.items()):
            if degree > 1:
                raise PreconditionError(f"variable {name} has degree {degree} > 1")
        object.__setattr__(self, "target", _normalize_target(self.target))

    def variables(self) -> frozenset:
        return term_free_vars(self.polynomial)


def distance_to_target(value: float, target) -> float:
    """Distance from a real value to a finite union of closed intervals."""
    return min(max(lo - value, value - hi, 0.0) for lo, hi in target)


# ---------------------------------------------------------------------------
# Type realization: results
# ---------------------------------------------------------------------------


@dataclass
class Realized:
    """A concrete assignment meeting every condition within tolerance."""

    assignment: dict
    max_deviation: float
    certificates: tuple


@dataclass(frozen=True)
class Unsatisfiable:
    """No assignment meets all listed conditions within ``epsilon``."""

    epsilon: float
    delta: tuple


@dataclass(frozen=True)
class Inconclusive:
    """The search budget ran out before either verdict was certified."""

    best_deviation: float
    boxes_used: int


# ---------------------------------------------------------------------------
# Vectorized interval arithmetic over batches of boxes
#
# A box assigns to each (variable, point) slot a rectangle
# (re_lo, re_hi, im_lo, im_hi); arrays have shape (N, slots, 4).
# ---------------------------------------------------------------------------


def _np_imul(plo, phi, qlo, qhi):
    cands = np.stack([plo * qlo, plo * qhi, phi * qlo, phi * qhi], axis=-1)
    return cands.min(axis=-1), cands.max(axis=-1)


def _np_rect_add(a, b):
    return np.stack(
        [a[..., 0] + b[..., 0], a[..., 1] + b[..., 1], a[..., 2] + b[..., 2], a[..., 3] + b[..., 3]],
        axis=-1,
    )


def _np_rect_sub(a, b):
    return np.stack(
        [a[..., 0] - b[..., 1], a[..., 1] - b[..., 0], a[..., 2] - b[..., 3], a[..., 3] - b[..., 2]],
        axis=-1,
    )


def _np_rect_conj(a):
    return np.stack([a[..., 0], a[..., 1], -a[..., 3], -a[..., 2]], axis=-1)


def _np_rect_mul(a, b):
    rr_lo, rr_hi = _np_imul(a[..., 0], a[..., 1], b[..., 0], b[..., 1])
    ii_lo, ii_hi = _np_imul(a[..., 2], a[..., 3], b[..., 2], b[..., 3])
    ri_lo, ri_hi = _np_imul(a[..., 0], a[..., 1], b[..., 2], b[..., 3])
    ir_lo, ir_hi = _np_imul(a[..., 2], a[..., 3], b[..., 0], b[..., 1])
    return np.stack([rr_lo - ii_hi, rr_hi - ii_lo, ri_lo + ir_lo, ri_hi + ir_hi], axis=-1)


def _np_const_rect(values, points: int):
    rect = np.empty((1, points, 4))
    for j, v in enumerate(values):
        v = complex(v)
        rect[0, j] = (v.real, v.real, v.imag, v.imag)
    return rect


def _np_term_rects(term, env, algebra):
    if isinstance(term, CVar):
        return env[term.name]
    if isinstance(term, CZero):
        return _np_const_rect(algebra.zero(), algebra.point_count)
    if isinstance(term, COne):
        return _np_const_rect(algebra.one(), algebra.point_count)
    if isinstance(term, CConst):
        return _np_const_rect(term.values, algebra.point_count)
    if isinstance(term, CStar):
        return _np_rect_conj(_np_term_rects(term.arg, env, algebra))
    if isinstance(term, CScale):
        s = complex(term.scalar)
        scalar = _np_const_rect((s,) * algebra.point_count, algebra.point_count)
        return _np_rect_mul(scalar, _np_term_rects(term.arg, env, algebra))
    left = _np_term_rects(term.left, env, algebra)
    right = _np_term_rects(term.right, env, algebra)
    if isinstance(term, CAdd):
        return _np_rect_add(left, right)
    if isinstance(term, CSub):
        return _np_rect_sub(left, right)
    return _np_rect_mul(left, right)


def _np_norm_bounds(rect):
    """Pointwise sup-norm bounds from per-point modulus bounds."""

    def axis_gap(lo, hi):
        return np.where((lo <= 0.0) & (hi >= 0.0), 0.0, np.minimum(np.abs(lo), np.abs(hi)))

    min_mod = np.hypot(axis_gap(rect[..., 0], rect[..., 1]), axis_gap(rect[..., 2], rect[..., 3]))
    max_mod = np.hypot(
        np.maximum(np.abs(rect[..., 0]), np.abs(rect[..., 1])),
        np.maximum(np.abs(rect[..., 2]), np.abs(rect[..., 3])),
    )
    return min_mod.max(axis=-1), max_mod.max(axis=-1)


def _np_term_values(term, env, algebra):
    if isinstance(term, CVar):
        return env[term.name]
    if isinstance(term, CZero):
        return np.zeros((1, algebra.point_count), dtype=complex)
    if isinstance(term, COne):
        return np.ones((1, algebra.point_count), dtype=complex)
    if isinstance(term, CConst):
        return np.array(term.values, dtype=complex).reshape(1, -1)
    if isinstance(term, CStar):
        return np.conj(_np_term_values(term.arg, env, algebra))
    if isinstance(term, CScale):
        return complex(term.scalar) * _np_term_values(term.arg, env, algebra)
    left = _np_term_values(term.left, env, algebra)
    right = _np_term_values(term.right, env, algebra)
    if isinstance(term, CAdd):
        return left + right
    if isinstance(term, CSub):
        return left - right
    return left * right


def _np_distance(values, target):
    dist = np.full_like(values, np.inf)
    for lo, hi in target:
        dist = np.minimum(dist, np.maximum(np.maximum(lo - values, values - hi), 0.0))
    return dist


def _np_distance_range(nlo, nhi, target):
    """Range of distance-to-target over a norm interval [nlo, nhi]."""
    d_lo, d_hi = _np_distance(nlo, target), _np_distance(nhi, target)
    intersects = np.zeros(nlo.shape, dtype=bool)
    for lo, hi in target:
        intersects |= (nlo <= hi) & (lo <= nhi)
    dist_min = np.where(intersects, 0.0, np.minimum(d_lo, d_hi))
    dist_max = np.maximum(d_lo, d_hi)
    for (_, hi), (lo, _) in zip(target, target[1:]):
        peak_at = (hi + lo) / 2.0
        peak = (lo - hi) / 2.0
        dist_max = np.where((nlo <= peak_at) & (peak_at <= nhi), np.maximum(dist_max, peak), dist_max)
    return dist_min, dist_max


class _RealizeProblem:
    """Shared geometry and bound computations for one realize_type call."""

    def __init__(self, conditions, algebra, sorts_by_var):
        self.conditions = conditions
        self.algebra = algebra
        self.names = sorted(sorts_by_var)
        self.sorts = [sorts_by_var[name] for name in self.names]
        self.points = algebra.point_count
        self.slots = len(self.names) * self.points

    def initial_box(self):
        rows = []
        for sort in self.sorts:
            if sort == SORT_BALL:
                row = (-1.0, 1.0, -1.0, 1.0)
            elif sort == SORT_SA:
                row = (-1.0, 1.0, 0.0, 0.0)
            else:
                row = (0.0, 1.0, 0.0, 0.0)
            rows.extend([row] * self.points)
        return np.array([rows])

    def _env_rects(self, boxes):
        env = {}
        for i, name in enumerate(self.names):
            env[name] = boxes[:, i * self.points : (i + 1) * self.points, :]
        return env

    def representatives(self, boxes):
        """In-domain sample point per box, plus a feasibility mask.

        Ball coordinates use the box point closest to the origin; a box
        whose closest point leaves the unit disc contains no admissible
        value at all.  Real sorts use interval midpoints.
        """
        re = np.minimum(np.maximum(boxes[..., 0], 0.0), boxes[..., 1])
        im = np.minimum(np.maximum(boxes[..., 2], 0.0), boxes[..., 3])
        feasible = np.ones(boxes.shape[0], dtype=bool)
        for i, sort in enumerate(self.sorts):
            cols = slice(i * self.points, (i + 1) * self.points)
            if sort == SORT_BALL:
                feasible &= (np.hypot(re[:, cols], im[:, cols]) <= 1.0).all(axis=1)
            else:
                re[:, cols] = (boxes[:, cols, 0] + boxes[:, cols, 1]) / 2.0
                im[:, cols] = 0.0
        return re + 1j * im, feasible

    def deviation_bounds(self, boxes):
        """Elementwise bounds on max-over-conditions deviation per box."""
        env = self._env_rects(boxes)
        g_lo = np.zeros(boxes.shape[0])
        g_hi = np.zeros(boxes.shape[0])
        for condition in self.conditions:
            rect = _np_term_rects(condition.polynomial, env, self.algebra)
            nlo, nhi = _np_norm_bounds(rect)
            d_lo, d_hi = _np_distance_range(nlo, nhi, condition.target)
            g_lo = np.maximum(g_lo, d_lo)
            g_hi = np.maximum(g_hi, d_hi)
        return g_lo, g_hi

    def deviation_at(self, reps):
        """Exact max-over-conditions deviation at sample points."""
        env = {}
        for i, name in enumerate(self.names):
            env[name] = reps[:, i * self.points : (i + 1) * self.points]
        g = np.zeros(reps.shape[0])
        for condition in self.conditions:
            values = _np_term_values(condition.polynomial, env, self.algebra)
            norms = np.abs(values).max(axis=-1)
            g = np.maximum(g, _np_distance(norms, condition.target))
        return g

    def split(self, boxes):
        """Halve each box along its widest axis (ties: first slot, real
        axis before imaginary)."""
        widths = np.stack([boxes[..., 1] - boxes[..., 0], boxes[..., 3] - boxes[..., 2]], axis=-1)
        flat = widths.reshape(boxes.shape[0], -1).argmax(axis=1)
        slots, axes = flat // 2, flat % 2
        low, high = boxes.copy(), boxes.copy()
        rows = np.arange(boxes.shape[0])
        lo_col, hi_col = np.where(axes == 0, 0, 2), np.where(axes == 0, 1, 3)
        mid = (boxes[rows, slots, lo_col] + boxes[rows, slots, hi_col]) / 2.0
        low[rows, slots, hi_col] = mid
        high[rows, slots, lo_col] = mid
        return np.concatenate([low, high])


def _term_constants_ok(term, points: int) -> bool:
    if isinstance(term, CConst):
        return len(term.values) == points
    if isinstance(term, (CStar, CScale)):
        return _term_constants_ok(term.arg, points)
    if isinstance(term, (CAdd, CSub, CMul)):
        return _term_constants_ok(term.left, points) and _term_constants_ok(term.right, points)
    return True


def _certify_assignment(conditions, algebra, assignment, tol):
    """Certify every condition at the assignment via formula evaluation."""
    certificates = []
    for condition in conditions:
        cert = ceval(FNorm(condition.polynomial), algebra, assignment, tol=1e-9)
        worst = max(
            distance_to_target(cert.lower, condition.target),
            distance_to_target(cert.upper, condition.target),
        )
        if worst > tol:
            return None
        certificates.append(cert)
    return tuple(certificates)


def realize_type(
    conditions,
    algebra: CStarAlgebraFin,
    tol: float,
    *,
    sorts=None,
    max_boxes: int = DEFAULT_REALIZE_BOXES,
):
    """Realize or refute a finite degree-1 type over the unit ball.

    Searches assignments of unit-ball elements (per-variable sorts may
    restrict to self-adjoint or positive contractions) minimizing the
    largest distance of any condition's polynomial norm from its target.
    Returns ``Realized`` when an assignment is certified within ``tol``,
    ``Unsatisfiable(epsilon, delta)`` when branch-and-bound proves every
    assignment deviates by at least ``epsilon > tol`` on the listed
    conditions, and ``Inconclusive`` when the box budget runs out first.
    """
    conditions = tuple(conditions)
    if not conditions or len(conditions) > MAX_REALIZE_CONDITIONS:
        raise PreconditionError(f"need between 1 and {MAX_REALIZE_CONDITIONS} conditions")
    if algebra.point_count > MAX_REALIZE_POINTS:
        raise PreconditionError(f"algebra must have at most {MAX_REALIZE_POINTS} points")
    if not tol > 0:
        raise PreconditionError("tolerance must be positive")
    for condition in conditions:
        if not isinstance(condition, TypeCondition):
            raise PreconditionError("conditions must be TypeCondition instances")
        if not _term_constants_ok(condition.polynomial, algebra.point_count):
            raise PreconditionError("polynomial constants must match the algebra's points")
    names = sorted(frozenset().union(*(c.variables() for c in conditions)))
    if len(names) > MAX_REALIZE_VARIABLES:
        raise PreconditionError(f"at most {MAX_REALIZE_VARIABLES} variables are supported")
    sorts = dict(sorts or {})
    for name, sort in sorts.items():
        if sort not in _REALIZE_SORTS:
            raise PreconditionError(f"unknown sort {sort!r} for variable {name}")
    sorts_by_var = {name: sorts.get(name, SORT_BALL) for name in names}

    if not names:
        deviation = max(
            distance_to_target(c_norm(_point_values(c.polynomial, algebra)), c.target)
            for c in conditions
        )
        if deviation <= tol:
            certificates = _certify_assignment(conditions, algebra, {}, tol)
            return Realized({}, deviation, certificates)
        return Unsatisfiable(deviation, conditions)

    problem = _RealizeProblem(conditions, algebra, sorts_by_var)
    counter = itertools.count()
    heap = []
    floor = np.inf
    best_value = np.inf
    best_rep = None
    boxes_used = 0

    def assess(boxes):
        nonlocal floor, best_value, best_rep, boxes_used
        boxes_used += boxes.shape[0]
        reps, feasible = problem.representatives(boxes)
        boxes, reps = boxes[feasible], reps[feasible]
        if boxes.shape[0] == 0:
            return
        g_lo, _ = problem.deviation_bounds(boxes)
        g_rep = problem.deviation_at(reps)
        leader = int(np.argmin(g_rep))
        if g_rep[leader] < best_value:
            best_value = float(g_rep[leader])
            best_rep = reps[leader].copy()
        for k in range(boxes.shape[0]):
            if g_lo[k] > tol:
                floor = min(floor, float(g_lo[k]))
            else:
                heapq.heappush(heap, (float(g_lo[k]), next(counter), boxes[k]))

    assess(problem.initial_box())
    while True:
        if best_value <= tol:
            assignment = {
                name: tuple(
                    complex(z) for z in best_rep[i * problem.points : (i + 1) * problem.points]
                )
                for i, name in enumerate(problem.names)
            }
            certificates = _certify_assignment(conditions, algebra, assignment, tol)
            if certificates is not None:
                return Realized(assignment, best_value, certificates)
            best_value = np.inf  # keep searching from surviving boxes
        if not heap:
            return Unsatisfiable(float(floor), conditions)
        if boxes_used >= max_boxes:
            return Inconclusive(float(best_value), boxes_used)
        batch = [heapq.heappop(heap)[2] for _ in range(min(_BATCH_SIZE, len(heap)))]
        assess(problem.split(np.stack(batch)))


def _point_values(term, algebra):
    values = _np_term_values(term, {}, algebra)
    return tuple(complex(v) for v in values[0])


# ---------------------------------------------------------------------------
# Orthogonal families
# ---------------------------------------------------------------------------


def orthogonal_witness_family(algebra: CStarAlgebraFin) -> tuple:
    """A largest family of pairwise-orthogonal norm-1 positive elements:
    the indicator of each point."""
    return tuple(algebra.indicator({i}) for i in range(algebra.point_count))


def max_orthogonal_family(algebra: CStarAlgebraFin) -> int:
    """Size of the largest pairwise-orthogonal family of norm-1 positive
    elements.

    Orthogonal positive elements have disjoint supports and a norm-1
    element's support is nonempty, so at most one element per point fits;
    the per-point indicators attain that bound, and the returned witness
    count is re-verified elementwise before being returned.
    """
    if algebra.point_count > MAX_ORTHOGONAL_POINTS:
        raise PreconditionError(f"algebra must have at most {MAX_ORTHOGONAL_POINTS} points")
    family = orthogonal_witness_family(algebra)
    for i, f in enumerate(family):
        if c_norm(f) != 1.0 or any(v != 0 and v != 1 for v in f):
            raise RuntimeError("witness family postcondition failed")
        for g in family[i + 1 :]:
            if any(v != 0 for v in c_mul(f, g)):
                raise RuntimeError("witness family postcondition failed")
    return len(family)
