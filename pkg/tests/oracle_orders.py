"""Independent order-construction oracle for ordinal arithmetic.

The oracle never touches the normal-form algebra under test.  It models
an ordinal as a *block word*: a finite tuple of natural numbers where
symbol k stands for one segment of order type w^k (so symbol 0 is a
single point).  A word denotes the concatenation of its segments, read
left to right.

Arithmetic on words uses only order-construction facts:

  * sum is concatenation of words;
  * A * w^j (j >= 1) is a single block w^(k+j) where k is the largest
    block in A, by the sandwich w^k <= A <= w^k * len(A);
  * A * (X + Y) = A*X + A*Y, realised by mapping each block of the
    right factor separately;
  * powers expand over the right factor the same way, with
    c^(w) = w for finite c >= 2.

Reading the order type back off a word uses one fact only: a segment of
type w^k absorbs any strictly shorter summand directly to its left
(d + w^k = w^k whenever d < w^k).

Words only carry finite block levels, so a handful of power cases fall
outside the representable range; those raise :class:`Unrepresentable`
and the calling test must skip or restrict accordingly.
"""

from __future__ import annotations


class Unrepresentable(Exception):
    """The exact result needs an infinite block level."""


def word_of_cnf(terms: tuple[tuple[int, int], ...]) -> tuple[int, ...]:
    """Expand ((exp, coeff), ...) with finite exponents into a block word."""
    out = []
    for exp, coeff in terms:
        out.extend([exp] * coeff)
    return tuple(out)


def cnf_of_word(word: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    """Normalise a block word to ((exp, coeff), ...), exponents decreasing."""
    acc: list[list[int]] = []
    for k in word:
        while acc and acc[-1][0] < k:
            acc.pop()
        if acc and acc[-1][0] == k:
            acc[-1][1] += 1
        else:
            acc.append([k, 1])
    return tuple((e, c) for e, c in acc)


def add_words(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return a + b


def mul_words(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    k = max(a)
    out: list[int] = []
    for s in b:
        if s == 0:
            out.extend(a)
        else:
            out.append(k + s)
    return tuple(out)


def pow_words(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if not b:
        return (0,)  # x^0 = 1, including 0^0 by convention
    if not a:
        return ()
    result: tuple[int, ...] = (0,)
    for s in b:
        result = mul_words(result, _pow_single_block(a, s))
    return result


def _pow_single_block(a: tuple[int, ...], s: int) -> tuple[int, ...]:
    """a^(w^s) as a word."""
    if s == 0:
        return a
    if a == (0,):
        return (0,)
    k = max(a)
    if k == 0:
        # finite base >= 2: c^w = w, and c^(w^s) for s >= 2 is w^(w^(s-1))
        if s == 1:
            return (1,)
        raise Unrepresentable("finite base, block level w^%d" % s)
    # infinite base: A^(w^s) = w^(k * w^s) = w^(w^s), outside finite levels
    raise Unrepresentable("infinite base raised to a limit block")
