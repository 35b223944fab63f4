"""Small shared helpers for the test suite."""

from __future__ import annotations

from itertools import combinations, product

from elemeq.ordinals import Ordinal, ZERO, finite, omega_power, ord_add, ord_mul


def mk(pairs: list[tuple[int, int]]) -> Ordinal:
    """Ordinal from (finite exponent, coefficient) pairs, decreasing exps."""
    return Ordinal(tuple((finite(e), c) for e, c in pairs))


def pairs_of(alpha: Ordinal) -> tuple[tuple[int, int], ...]:
    """Inverse of :func:`mk`; requires all exponents finite."""
    return tuple((e.to_int(), c) for e, c in alpha.terms)


def below_omega_cubed(max_terms: int = 3, max_coeff: int = 4) -> list[Ordinal]:
    """All ordinals < w^3 with at most ``max_terms`` terms and bounded coeffs."""
    out = [ZERO]
    for nterms in range(1, max_terms + 1):
        for exps in combinations((2, 1, 0), nterms):
            for coeffs in product(range(1, max_coeff + 1), repeat=nterms):
                out.append(mk(list(zip(exps, coeffs))))
    return out


def w(exp: int, coeff: int = 1) -> Ordinal:
    return omega_power(finite(exp), coeff)


def nat(n: int) -> Ordinal:
    return finite(n)


def osum(*parts: Ordinal) -> Ordinal:
    total = ZERO
    for p in parts:
        total = ord_add(total, p)
    return total
