"""Back-and-forth game solvers for linear orders and finite Boolean algebras.

Three independent deciders for rank-``r`` back-and-forth equivalence:

* :func:`ef_finite_orders` — finite linear orders given by size, decided by
  exhaustive split recursion with memoization.
* :func:`ef_ordinals` — ordinal linear orders below ``omega**omega * omega``,
  decided exactly by compositional type arithmetic: the hereditary rank-``r``
  type of a sum is computed from the types of the summands, and the type of
  an ``omega``-power from the orbit of the multiply-by-``omega`` operator.
  No move-set heuristics are involved; the computation is exact.
* :func:`ef_finite_bas` — finite powerset algebras, decided over abstracted
  positions (cell-size vectors of the partition generated by played
  elements), with the end condition that played tuples generate isomorphic
  subalgebras.

A small concrete reference solver, :func:`duplicator_wins`, plays the raw
game over explicit :class:`GamePosition` states and is used to validate the
abstracted solvers on tiny instances.

Rank-``r`` equivalence of two structures holds exactly when their rank-``r``
types coincide; every solver here computes those types bottom-up rather than
searching the game tree move by move, which keeps the recursion polynomial
in the number of distinct positions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .boolalg import FiniteBoolAlg
from .errors import PreconditionError, ResourceBudgetError
from .ordinals import OMEGA, ONE, Ordinal, compare, left_difference, ord_add

__all__ = [
    "GamePosition",
    "duplicator_wins",
    "ef_finite_orders",
    "ef_ordinals",
    "ef_finite_bas",
]

#: Rank cap for the finite-order solver.
MAX_RANK_ORDERS = 6
#: Size cap for the finite-order solver (the recursion is quadratic in size).
MAX_SIZE_ORDERS = 1000
#: Rank cap for the ordinal solver.
MAX_RANK_ORDINALS = 4
#: Rank cap for the Boolean-algebra solver.
MAX_RANK_BAS = 3
#: Atom cap for the Boolean-algebra solver.
MAX_ATOMS_BAS = 5
#: Leaf-count cap for the raw reference solver.
MAX_RAW_LEAVES = 4_000_000


# ---------------------------------------------------------------------------
# Raw reference game over explicit positions
# ---------------------------------------------------------------------------

_KNOWN_KINDS = ("order", "powerset")


@dataclass(frozen=True)
class GamePosition:
    """A concrete game state: two structures, matched tuples, rounds left.

    Structures are identified by ``(kind, size)`` pairs where ``kind`` is
    ``"order"`` (a linear order with ``size`` points) or ``"powerset"`` (the
    Boolean algebra with ``size`` atoms).  ``left_points[i]`` was matched
    with ``right_points[i]``; for orders the points are indices, for
    powerset algebras they are element bitmasks.
    """

    left: tuple[str, int]
    right: tuple[str, int]
    left_points: tuple[int, ...] = ()
    right_points: tuple[int, ...] = ()
    rounds: int = 0

    def __post_init__(self) -> None:
        if len(self.left_points) != len(self.right_points):
            raise PreconditionError("matched tuples must have equal length")
        if self.rounds < 0:
            raise PreconditionError("rounds remaining must be a natural number")
        for kind, size in (self.left, self.right):
            if kind not in _KNOWN_KINDS:
                raise PreconditionError(f"unknown structure kind: {kind!r}")
            if size < 0:
                raise PreconditionError("structure size must be a natural number")
        if self.left[0] != self.right[0]:
            raise PreconditionError("structures must share a signature")


def _order_partial_iso(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    for i in range(len(a)):
        for j in range(len(a)):
            if (a[i] < a[j]) != (b[i] < b[j]) or (a[i] == a[j]) != (b[i] == b[j]):
                return False
    return True


def _powerset_patterns(atom_count: int, chosen: tuple[int, ...]) -> frozenset:
    """The set of membership patterns realized by some atom.

    Pattern bit ``i`` records whether the atom lies in the ``i``-th chosen
    element; the pattern set determines the subalgebra generated by the
    chosen tuple up to isomorphism-respecting-the-tuple.
    """
    patterns = set()
    for atom in range(atom_count):
        p = 0
        for i, elem in enumerate(chosen):
            if elem >> atom & 1:
                p |= 1 << i
        patterns.add(p)
    return frozenset(patterns)


def _is_partial_iso(pos: GamePosition) -> bool:
    kind = pos.left[0]
    if kind == "order":
        return _order_partial_iso(pos.left_points, pos.right_points)
    left = _powerset_patterns(pos.left[1], pos.left_points)
    right = _powerset_patterns(pos.right[1], pos.right_points)
    return left == right


def _universe(structure: tuple[str, int]) -> range:
    kind, size = structure
    if kind == "order":
        return range(size)
    return range(1 << size)


def duplicator_wins(pos: GamePosition) -> bool:
    """Decide the raw game by minimax over concrete moves.

    This is the reference implementation: no position abstraction, no move
    pruning.  It is exponentially expensive and refuses (with
    :class:`ResourceBudgetError`) positions whose full game tree exceeds
    ``MAX_RAW_LEAVES`` leaves.
    """
    branch = (len(_universe(pos.left)) + len(_universe(pos.right))) ** 2
    if branch**pos.rounds > MAX_RAW_LEAVES:
        raise ResourceBudgetError("raw game tree exceeds the search budget")
    return _raw_value(pos)


def _raw_value(pos: GamePosition) -> bool:
    if not _is_partial_iso(pos):
        return False
    if pos.rounds == 0:
        return True
    for spoiler_left in (True, False):
        src = pos.left if spoiler_left else pos.right
        dst = pos.right if spoiler_left else pos.left
        for a in _universe(src):
            answered = False
            for b in _universe(dst):
                if spoiler_left:
                    nxt = GamePosition(
                        pos.left,
                        pos.right,
                        pos.left_points + (a,),
                        pos.right_points + (b,),
                        pos.rounds - 1,
                    )
                else:
                    nxt = GamePosition(
                        pos.left,
                        pos.right,
                        pos.left_points + (b,),
                        pos.right_points + (a,),
                        pos.rounds - 1,
                    )
                if _raw_value(nxt):
                    answered = True
                    break
            if not answered:
                return False
    return True


# ---------------------------------------------------------------------------
# Finite linear orders
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _order_type(size: int, rank: int):
    """The rank-``rank`` type of the ``size``-point linear order.

    Playing point ``i`` splits the order into disjoint intervals of sizes
    ``i`` and ``size - 1 - i``; two orders are rank-``r`` equivalent exactly
    when their sets of split type pairs at rank ``r - 1`` coincide.
    """
    if rank == 0:
        return 0
    return frozenset(
        (_order_type(i, rank - 1), _order_type(size - 1 - i, rank - 1))
        for i in range(size)
    )


def ef_finite_orders(m: int, n: int, rank: int) -> bool:
    """Duplicator wins the rank-``rank`` game on linear orders of sizes ``m``, ``n``."""
    if m < 0 or n < 0 or rank < 0:
        raise PreconditionError("sizes and rank must be natural numbers")
    if rank > MAX_RANK_ORDERS:
        raise ResourceBudgetError(f"rank {rank} exceeds the cap {MAX_RANK_ORDERS}")
    if max(m, n) > MAX_SIZE_ORDERS:
        raise ResourceBudgetError(f"size exceeds the cap {MAX_SIZE_ORDERS}")
    return _order_type(m, rank) == _order_type(n, rank)


# ---------------------------------------------------------------------------
# Ordinal linear orders: compositional type arithmetic
# ---------------------------------------------------------------------------
#
# The hereditary rank-r type of a linear order L is
#
#     T_r(L) = (r, T_{r-1}(L), { (T_{r-1}(L_<x), T_{r-1}(L_>x)) : x in L })
#
# with T_0(L) a single constant.  Equality of hereditary types is exactly
# rank-r equivalence: playing x splits the order into the independent
# intervals below and above x, and the remaining game composes over the
# split.  Types of compound orders are computed without enumerating points:
#
#   * sum rule:  the splits of A + B are the splits of A with B appended on
#     the right, plus the splits of B with A prepended on the left;
#   * repetition rule: T(L * k) is an iterated sum, short-circuited by value
#     cycle detection, so arbitrary finite coefficients cost O(cycle);
#   * omega rule: a split of L * omega lands in some copy k, leaving
#     L * k + (prefix of L) on the left and (suffix of L) + L * omega on the
#     right; the set of prefix types {T(L * k) : k} is the orbit of the
#     "add T(L)" map and is computed exactly by cycle detection;
#   * omega-power rule: every proper initial segment of omega**omega is a
#     finite sum of omega**f blocks, so the realized left types form the
#     sum-closure of the orbit {T(omega**f) : f}, while every right part is
#     omega**omega itself.
#
# All rules are exact; no theorem about which moves "suffice" is assumed.

_T0 = (0,)

_intern_table: dict = {}


def _intern(value):
    return _intern_table.setdefault(value, value)


@lru_cache(maxsize=None)
def _type_empty(rank: int):
    if rank == 0:
        return _T0
    return _intern((rank, _type_empty(rank - 1), frozenset()))


@lru_cache(maxsize=None)
def _type_singleton(rank: int):
    if rank == 0:
        return _T0
    z = _type_empty(rank - 1)
    return _intern((rank, _type_singleton(rank - 1), frozenset({(z, z)})))


_sum_memo: dict = {}


def _type_sum(a, b):
    """The hereditary type of ``A + B`` from the types of ``A`` and ``B``."""
    if a[0] == 0:
        return _T0
    key = (a, b)
    cached = _sum_memo.get(key)
    if cached is not None:
        return cached
    sub = _type_sum(a[1], b[1])
    pairs = set()
    for left, right in a[2]:
        pairs.add((left, _type_sum(right, b[1])))
    for left, right in b[2]:
        pairs.add((_type_sum(a[1], left), right))
    out = _intern((a[0], sub, frozenset(pairs)))
    _sum_memo[key] = out
    return out


def _iterate_with_cycle(step, start, count: int):
    """``step`` applied ``count`` times to ``start``, with cycle short-circuit."""
    seen = {start: 0}
    values = [start]
    current = start
    for k in range(1, count + 1):
        current = step(current)
        if current in seen:
            first = seen[current]
            period = k - first
            return values[first + (count - first) % period]
        seen[current] = k
        values.append(current)
    return current


def _orbit(step, start) -> list:
    """All values ``step**k(start)`` for ``k >= 0`` (finite by cycling)."""
    seen = {start}
    out = [start]
    current = start
    while True:
        current = step(current)
        if current in seen:
            return out
        seen.add(current)
        out.append(current)


def _type_repeat(t, count: int):
    """The hereditary type of ``L * count`` from the type of ``L``."""
    zero = _type_empty(t[0])
    return _iterate_with_cycle(lambda s: _type_sum(s, t), zero, count)


_mul_omega_memo: dict = {}


def _type_mul_omega(t):
    """The hereditary type of ``L * omega`` from the hereditary type of ``L``."""
    if t[0] == 0:
        return _T0
    cached = _mul_omega_memo.get(t)
    if cached is not None:
        return cached
    sub = _type_mul_omega(t[1])
    prefixes = _orbit(lambda s: _type_sum(s, t[1]), _type_empty(t[0] - 1))
    pairs = set()
    for left, right in t[2]:
        tail = _type_sum(right, sub)
        for prefix in prefixes:
            pairs.add((_type_sum(prefix, left), tail))
    out = _intern((t[0], sub, frozenset(pairs)))
    _mul_omega_memo[t] = out
    return out


@lru_cache(maxsize=None)
def _type_omega_power_finite(exponent: int, rank: int):
    """The hereditary type of ``omega**exponent`` for a finite exponent."""
    return _iterate_with_cycle(_type_mul_omega, _type_singleton(rank), exponent)


@lru_cache(maxsize=None)
def _type_omega_power_omega(rank: int):
    """The hereditary type of ``omega**omega``.

    Every proper initial segment is a finite sum of blocks ``omega**f`` with
    finite ``f``, and every split leaves the whole order on the right.
    """
    if rank == 0:
        return _T0
    sub = _type_omega_power_omega(rank - 1)
    q = rank - 1
    generators = _orbit(_type_mul_omega, _type_singleton(q))
    realized = set(generators)
    realized.add(_type_empty(q))
    while True:
        fresh = {
            _type_sum(a, b) for a in realized for b in realized
        } - realized
        if not fresh:
            break
        realized |= fresh
    pairs = frozenset((left, sub) for left in realized)
    return _intern((rank, sub, pairs))


def _ordinal_type(alpha: Ordinal, rank: int):
    """The hereditary rank-``rank`` type of the ordinal ``alpha`` as an order."""
    acc = _type_empty(rank)
    for exponent, coeff in alpha.terms:
        if exponent.is_finite():
            block = _type_omega_power_finite(exponent.to_int(), rank)
        elif exponent == OMEGA:
            block = _type_omega_power_omega(rank)
        else:
            raise ResourceBudgetError(
                "ordinal outside the supported domain (term exponent above omega)"
            )
        acc = _type_sum(acc, _type_repeat(block, coeff))
    return acc


def ef_ordinals(a: Ordinal, b: Ordinal, rank: int) -> bool:
    """Duplicator wins the rank-``rank`` game on ordinals ``a``, ``b`` as orders.

    Supported domain: both ordinals below ``omega**omega * omega`` (every
    term exponent at most ``omega``) and ``rank`` at most
    ``MAX_RANK_ORDINALS``; outside it a :class:`ResourceBudgetError` is
    raised rather than a guess returned.
    """
    if rank < 0:
        raise PreconditionError("rank must be a natural number")
    if rank > MAX_RANK_ORDINALS:
        raise ResourceBudgetError(f"rank {rank} exceeds the cap {MAX_RANK_ORDINALS}")
    for x in (a, b):
        if x.terms and compare(x.terms[0][0], OMEGA) > 0:
            raise ResourceBudgetError(
                "ordinal outside the supported domain (term exponent above omega)"
            )
    return _ordinal_type(a, rank) == _ordinal_type(b, rank)


def interval_above(alpha: Ordinal, x: Ordinal) -> Ordinal:
    """The order type of the open interval of ``alpha`` strictly above ``x``."""
    if compare(x, alpha) >= 0:
        raise PreconditionError("the point must lie below the ordinal")
    return left_difference(ord_add(x, ONE), alpha)


# ---------------------------------------------------------------------------
# Finite Boolean algebras: cell-size abstraction
# ---------------------------------------------------------------------------
#
# After k elements are played in a powerset algebra, the only data relevant
# to the remaining game is how many atoms lie in each of the 2**k
# membership-pattern cells (atom permutations are automorphisms, and they
# act transitively on elements with equal cell counts).  A position is the
# vector of those cell sizes; a move chooses how many atoms to take from
# each cell.  At the end of play the tuples generate isomorphic subalgebras
# exactly when the same pattern cells are nonempty on both sides.

_ba_memo: dict = {}


def _ba_type(cells: tuple[int, ...], rank: int):
    key = (cells, rank)
    cached = _ba_memo.get(key)
    if cached is not None:
        return cached
    occupied = frozenset(p for p, size in enumerate(cells) if size)
    if rank == 0:
        out = (occupied,)
    else:
        children = set()
        for taken in itertools.product(*(range(size + 1) for size in cells)):
            nxt = tuple(size - t for size, t in zip(cells, taken)) + taken
            children.add(_ba_type(nxt, rank - 1))
        out = (occupied, frozenset(children))
    _ba_memo[key] = out
    return out


def ef_finite_bas(b1: FiniteBoolAlg, b2: FiniteBoolAlg, rank: int) -> bool:
    """Duplicator wins the rank-``rank`` game on two finite powerset algebras.

    Moves range over all elements of either algebra; the end condition is
    that the matched tuples generate isomorphic subalgebras (the correct
    atomic-formula test in a signature with meet, join, and complement).
    """
    if rank < 0:
        raise PreconditionError("rank must be a natural number")
    if rank > MAX_RANK_BAS:
        raise ResourceBudgetError(f"rank {rank} exceeds the cap {MAX_RANK_BAS}")
    if max(b1.atom_count, b2.atom_count) > MAX_ATOMS_BAS:
        raise ResourceBudgetError(f"atom count exceeds the cap {MAX_ATOMS_BAS}")
    return _ba_type((b1.atom_count,), rank) == _ba_type((b2.atom_count,), rank)
