"""
Ordinal arithmetic in Cantor normal form
========================================

Every ordinal below epsilon_0 has a unique normal form

    w^(e1)*c1 + w^(e2)*c2 + ... + n

with strictly decreasing exponents and positive integer coefficients.
The ``elemeq.ordinals`` module computes with these forms exactly —
no approximation, no depth limit below w^w^w... towers of finite height.
"""

from elemeq.cli import parse_ordinal
from elemeq.ordinals import (
    OMEGA,
    OMEGA_OMEGA,
    calkin_equiv,
    cnf_string,
    finite,
    left_difference,
    ord_add,
    ord_equiv,
    ord_mul,
    ord_pow,
)

# ---------------------------------------------------------------------------
# Parsing and printing round-trip: the CLI grammar accepts the same
# strings the printer produces, plus unsorted "human" input which is
# renormalized on the way in.
# ---------------------------------------------------------------------------

alpha = parse_ordinal("w^2*3 + w*2 + 7")
beta = parse_ordinal("w + w")  # not in normal form: renormalizes to w*2
print("alpha              =", cnf_string(alpha))
print("w + w              =", cnf_string(beta))

# ---------------------------------------------------------------------------
# Addition absorbs on the left: a small head disappears into a large tail.
# Multiplication distributes over the right factor only.  Both operations
# are associative but neither is commutative.
# ---------------------------------------------------------------------------

print("1 + w              =", cnf_string(ord_add(finite(1), OMEGA)))
print("w + 1              =", cnf_string(ord_add(OMEGA, finite(1))))
print("2 * w              =", cnf_string(ord_mul(finite(2), OMEGA)))
print("w * 2              =", cnf_string(ord_mul(OMEGA, finite(2))))
print("(w+1)*(w+1)        =", cnf_string(ord_mul(ord_add(OMEGA, finite(1)), ord_add(OMEGA, finite(1)))))

# ---------------------------------------------------------------------------
# Powers: finite^w collapses to w, and exponents add along towers.
# ---------------------------------------------------------------------------

print("2^w                =", cnf_string(ord_pow(finite(2), OMEGA)))
print("w^(w)              =", cnf_string(ord_pow(OMEGA, OMEGA)))
print("(w^2)^w            =", cnf_string(ord_pow(ord_pow(OMEGA, finite(2)), OMEGA)))

# ---------------------------------------------------------------------------
# Left difference: the unique gamma with alpha + gamma = beta, when
# alpha <= beta.  This is the workhorse behind the equivalence tests.
# ---------------------------------------------------------------------------

big = parse_ordinal("w^3 + w*5 + 2")
small = parse_ordinal("w^3 + w*2")
gap = left_difference(small, big)
print("difference         =", cnf_string(gap))
assert ord_add(small, gap) == big

# ---------------------------------------------------------------------------
# Elementary equivalence of ordinals as bare linear orders.  Below w^w
# it is simply equality; from w^w on, first-order sentences can no
# longer count the w^w-sized blocks, so only the residue mod w^w and
# the zero/nonzero quotient matter: w^w*2 + w and w^w*5 + w satisfy the
# same sentences, but a changed tail is detectable.  The quotient-
# algebra comparison interprets its index ordinal bi-definably, so it
# coincides with this relation.
# ---------------------------------------------------------------------------

left = ord_add(ord_mul(OMEGA_OMEGA, finite(2)), OMEGA)
right = ord_add(ord_mul(OMEGA_OMEGA, finite(5)), OMEGA)
other = ord_add(ord_mul(OMEGA_OMEGA, finite(5)), finite(1))
print("below w^w distinct:", ord_equiv(OMEGA, ord_mul(OMEGA, finite(2))))
print("same tail class?   ", ord_equiv(left, right), "=", calkin_equiv(left, right))
print("different tails?   ", ord_equiv(left, other), "=", calkin_equiv(left, other))
