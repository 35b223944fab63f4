"""
Finite Stone duality and exhaustive first-order model checking
==============================================================

A finite Boolean algebra is the clopen algebra of its space of atoms,
and a finite space is the atom space of its clopen algebra — a perfect
duality that also reverses maps.  On top of the algebras sits a small
first-order language (lattice operations, complement, order, equality)
with an exhaustive evaluator and a deterministic sentence corpus used
throughout the test suite as a cross-validation battery.
"""

from elemeq.boolalg import (
    FiniteBoolAlg,
    FiniteSpace,
    SpaceMap,
    clopen_algebra,
    compose_maps,
    dual_morphism,
    fo_eval,
    quantifier_rank,
    sentence_corpus,
    stone_space,
)
from elemeq.cli import format_fo, parse_fo_formula

# ---------------------------------------------------------------------------
# Round trips.  Elements of FiniteBoolAlg(n) are bitmasks over n atoms;
# the dual space has one point per atom.
# ---------------------------------------------------------------------------

algebra = FiniteBoolAlg(3)
space = stone_space(algebra)
print("atoms:", algebra.atom_count, "-> points:", space.point_count)
print("back to an algebra of", clopen_algebra(space).atom_count, "atoms")

# ---------------------------------------------------------------------------
# Contravariance: a map of spaces pulls clopen sets back, so duality
# reverses composition.  We check g-after-f dualizes to (dual f)-after-(dual g).
# ---------------------------------------------------------------------------

X, Y, Z = FiniteSpace(3), FiniteSpace(2), FiniteSpace(4)
f = SpaceMap(X, Y, (0, 1, 1))
g = SpaceMap(Y, Z, (2, 0))
composite = dual_morphism(compose_maps(g, f))
split = [dual_morphism(g), dual_morphism(f)]
element = 0b1011  # a clopen subset of Z, as an atom mask
print("dual of composite:", composite.apply(element))
print("composite of duals:", split[1].apply(split[0].apply(element)))

# ---------------------------------------------------------------------------
# The first-order language.  Sentences are written in a small infix
# grammar: quantifiers bind variables over the algebra, terms use the
# lattice operations /\ \/ ~ with constants 0 and 1, and atoms compare
# terms with = or <=.  The evaluator ranges each quantifier over every
# element — exact truth, feasible because the algebras are tiny.
# ---------------------------------------------------------------------------

atomless = parse_fo_formula(
    "forall x. !(x = 0) -> exists y. (!(y = 0) & y <= x & !(y = x))"
)
print("formatted:", format_fo(atomless))
for n in (1, 2, 3):
    print(f"  'no atoms' in P({n}):", fo_eval(atomless, FiniteBoolAlg(n)))

has_exactly_two_atoms = parse_fo_formula(
    "exists a. exists b. (!(a = b) & !(a = 0) & !(b = 0)"
    " & (forall x. (x <= a & !(x = a)) -> x = 0)"
    " & (forall x. (x <= b & !(x = b)) -> x = 0)"
    " & forall c. ((forall x. (x <= c & !(x = c)) -> x = 0) & !(c = 0)) -> (c = a | c = b))"
)
for n in (1, 2, 3):
    print(f"  'exactly two atoms' in P({n}):", fo_eval(has_exactly_two_atoms, FiniteBoolAlg(n)))

# ---------------------------------------------------------------------------
# The deterministic corpus: a fixed battery of separating sentences
# followed by seeded random ones, all of quantifier rank <= 3.  Two
# finite algebras agree on the whole corpus exactly when they have the
# same number of atoms.
# ---------------------------------------------------------------------------

corpus = sentence_corpus(60)
print("corpus size:", len(corpus), " max rank:", max(quantifier_rank(phi) for phi in corpus))
profile = {
    n: sum(1 for phi in corpus if fo_eval(phi, FiniteBoolAlg(n))) for n in (1, 2, 3, 4)
}
print("true-sentence counts by algebra size:", profile)
