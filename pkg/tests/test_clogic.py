"""Tests for the continuous-logic evaluator and the classical translation."""

import random

import pytest

from elemeq import boolalg
from elemeq.boolalg import FiniteBoolAlg, fo_eval, sentence_corpus
from elemeq.clogic import (
    COne,
    CConst,
    CMul,
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
    cformula_free_vars,
    formula_modulus,
    term_bound,
    term_modulus,
    translate_fo,
)
from elemeq.cstar import CStarAlgebraFin, c_norm, c_sub
from elemeq.errors import PreconditionError, ResourceBudgetError


# ---------------------------------------------------------------------------
# Structure
# ---------------------------------------------------------------------------


def test_free_variables():
    phi = FSup(
        "p",
        SORT_PROJ,
        FPlus(FNorm(CSub(CVar("p"), CVar("q"))), FNorm(CVar("r"))),
    )
    assert cformula_free_vars(phi) == {"q", "r"}
    assert cformula_free_vars(FConst(0.5)) == frozenset()


def test_node_validation():
    with pytest.raises(PreconditionError):
        FConst(1.5)
    with pytest.raises(PreconditionError):
        FScale(-1.0, FConst(0.0))
    with pytest.raises(PreconditionError):
        FSup("x", "unitary", FConst(0.0))


def test_modulus_and_bound_composition():
    A = CStarAlgebraFin(2)
    bounds = {"x": 1.0, "y": 1.0}
    x, y = CVar("x"), CVar("y")
    assert term_bound(CMul(x, y), A, bounds) == 1
    assert term_modulus(CMul(x, x), "x", A, bounds) == 2
    assert term_modulus(CStar(x), "x", A, bounds) == 1
    assert term_modulus(CScale(3j, x), "x", A, bounds) == 3
    phi = FPlus(FNorm(CMul(x, x)), FTruncSub(FConst(1.0), FNorm(y)))
    assert formula_modulus(phi, "x", A, bounds) == 2
    assert formula_modulus(phi, "y", A, bounds) == 1
    # A quantifier binds its variable and preserves the others' moduli.
    q = FSup("x", SORT_BALL, phi)
    assert formula_modulus(q, "x", A, bounds) == 0
    assert formula_modulus(q, "y", A, bounds) == 1


def test_modulus_is_an_empirical_lipschitz_bound():
    rng = random.Random(31)
    A = CStarAlgebraFin(3)
    phi = FSup(
        "p",
        SORT_PROJ,
        FAbsDiff(FNorm(CMul(CVar("x"), CVar("p"))), FNorm(CVar("x"))),
    )
    bounds = {"x": 1.0}
    lip = formula_modulus(phi, "x", A, bounds)
    for _ in range(40):
        f = tuple(complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)) for _ in range(3))
        g = tuple(complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)) for _ in range(3))
        vf = ceval(phi, A, {"x": f}, 1e-9).lower
        vg = ceval(phi, A, {"x": g}, 1e-9).lower
        assert abs(vf - vg) <= lip * c_norm(c_sub(f, g)) + 1e-9


# ---------------------------------------------------------------------------
# Certified evaluation
# ---------------------------------------------------------------------------


def test_ceval_frozen_examples():
    A = CStarAlgebraFin(2)
    cert = ceval(FNorm(COne()), A, {}, 1e-9)
    assert cert.lower == cert.upper == 1
    cert = ceval(
        FInf("x", SORT_BALL, FNorm(CSub(CVar("x"), CStar(CVar("x"))))), A, {}, 1e-3
    )
    assert cert.lower <= 0 <= cert.upper
    assert cert.width() <= 1e-3
    cert = ceval(
        FSup("p", SORT_PROJ, FInf("q", SORT_PROJ, FNorm(CSub(CVar("p"), CVar("q"))))),
        A,
        {},
        1e-6,
    )
    assert 0 <= cert.upper <= 1e-6


def test_ceval_positive_sort_value():
    # sup over positive contractions of ||x(1-x)||: attained at x = 1/2
    # pointwise, value 1/4.
    A = CStarAlgebraFin(2)
    phi = FSup("x", SORT_POS, FNorm(CMul(CVar("x"), CSub(COne(), CVar("x")))))
    cert = ceval(phi, A, {}, 1e-3)
    assert cert.lower <= 0.25 <= cert.upper
    assert cert.width() <= 1e-3


def test_ceval_self_adjoint_sort_value():
    # inf over self-adjoint contractions of ||x - 1||: attained at x = 1.
    A = CStarAlgebraFin(3)
    phi = FInf("x", SORT_SA, FNorm(CSub(CVar("x"), COne())))
    cert = ceval(phi, A, {}, 1e-4)
    assert cert.lower <= 1e-4 and cert.upper <= 1e-4 + 1e-12


def test_ceval_nested_continuous_quantifiers():
    A = CStarAlgebraFin(1)
    phi = FSup("x", SORT_POS, FInf("y", SORT_POS, FNorm(CSub(CVar("x"), CVar("y")))))
    cert = ceval(phi, A, {}, 5e-2)
    assert cert.lower <= 0.05 and cert.upper <= 0.1
    assert cert.width() <= 5e-2


def test_ceval_params_and_constants():
    A = CStarAlgebraFin(2)
    phi = FNorm(CSub(CVar("x"), CConst((1 + 0j, 0j))))
    cert = ceval(phi, A, {"x": (1 + 0j, 1 + 0j)}, 1e-9)
    assert cert.lower == cert.upper == 1
    with pytest.raises(PreconditionError):
        ceval(phi, A, {}, 1e-9)


def test_ceval_preconditions():
    A = CStarAlgebraFin(2)
    with pytest.raises(PreconditionError):
        ceval(FConst(0.0), A, {}, 0.0)
    with pytest.raises(PreconditionError):
        ceval(FConst(0.0), CStarAlgebraFin(7), {}, 1e-6)


def test_ceval_deterministic():
    A = CStarAlgebraFin(2)
    phi = FSup("x", SORT_POS, FNorm(CMul(CVar("x"), CSub(COne(), CVar("x")))))
    assert ceval(phi, A, {}, 1e-3) == ceval(phi, A, {}, 1e-3)


def test_ceval_monotone_refinement():
    A = CStarAlgebraFin(2)
    phi = FSup("x", SORT_POS, FNorm(CMul(CVar("x"), CSub(COne(), CVar("x")))))
    coarse = ceval(phi, A, {}, 1e-1)
    fine = ceval(phi, A, {}, 1e-3)
    assert coarse.lower <= fine.lower and fine.upper <= coarse.upper


def test_ceval_budget_error_reports_best_enclosure():
    # On the unit ball the supremum of ||x*x - x|| is 2 (witnessed by -1),
    # but interval bounds cannot certify it to 1e-12 within 50 boxes.
    A = CStarAlgebraFin(1)
    x = CVar("x")
    phi = FSup("x", SORT_BALL, FNorm(CSub(CMul(x, x), x)))
    with pytest.raises(ResourceBudgetError) as info:
        ceval(phi, A, {}, 1e-12, max_boxes=50)
    best = info.value.best_known
    assert best.lower <= 2 <= best.upper


# ---------------------------------------------------------------------------
# Classical-to-continuous translation
# ---------------------------------------------------------------------------


def test_translation_frozen_idempotence():
    x = boolalg.TVar("x")
    sent = boolalg.Forall("x", boolalg.Eq(boolalg.TMeet(x, x), x))
    phi = translate_fo(sent)
    assert phi == FSup(
        "x", SORT_PROJ, FNorm(CSub(CMul(CVar("x"), CVar("x")), CVar("x")))
    )
    for n in (1, 2, 3, 4):
        cert = ceval(phi, CStarAlgebraFin(n), {}, 1e-6)
        assert cert.lower == cert.upper == 0


def test_translation_frozen_nontrivial_element():
    x = boolalg.TVar("x")
    sent = boolalg.Exists(
        "x",
        boolalg.And(
            boolalg.Not(boolalg.Eq(x, boolalg.TZero())),
            boolalg.Not(boolalg.Eq(x, boolalg.TOne())),
        ),
    )
    phi = translate_fo(sent)
    assert ceval(phi, CStarAlgebraFin(2), {}, 1e-6).lower == 0
    assert ceval(phi, CStarAlgebraFin(1), {}, 1e-6).lower == 1


def test_translation_requires_sentence():
    open_formula = boolalg.Eq(boolalg.TVar("x"), boolalg.TZero())
    with pytest.raises(PreconditionError):
        translate_fo(open_formula)


def test_translation_values_are_two_valued():
    corpus = sentence_corpus(40)
    A = CStarAlgebraFin(3)
    for phi in corpus:
        cert = ceval(translate_fo(phi), A, {}, 1e-6)
        assert cert.width() == 0
        assert cert.lower in (0.0, 1.0)


def test_translation_bridge_sampled():
    corpus = sentence_corpus(60)
    for n in (1, 2, 3):
        b = FiniteBoolAlg(n)
        A = CStarAlgebraFin(n)
        for phi in corpus:
            truth = fo_eval(phi, b)
            value = ceval(translate_fo(phi), A, {}, 1e-6).lower
            assert value == (0.0 if truth else 1.0)
