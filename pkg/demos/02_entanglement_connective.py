"""The entanglement connective: formation, reflection, and its algebra.

`Q_A @ Q_B` asserts maximal entanglement of two qubit propositions.  Its
denotation is a Bell-type state, equal (exactly, not just approximately)
to the conjunction of the two par-pairs it reflects.  The connective is
commutative, semi-distributes over a collapsed party, and is *not*
associative: a third qubit on the right of the formation rule acts as an
active context and is rejected.
"""

import numpy as np

from qsc import (
    LogicMode,
    check_derivation,
    denote_assertion,
    equivalent,
    parse_formula,
    parse_script,
    parse_sequent,
)

ent = parse_sequent("|- Q_A @ Q_B")
expanded = parse_sequent("|- (A # B) & (A^ # B^)")
print("entangled assertion:", np.round(denote_assertion(ent).vector(), 6))
print("its expansion:      ", np.round(denote_assertion(expanded).vector(), 6))
print("equal entrywise:    ",
      np.array_equal(denote_assertion(ent).vector(),
                     denote_assertion(expanded).vector()))
print()

print("commutativity at the formula level:",
      equivalent(parse_formula("Q_A @ Q_B"), parse_formula("Q_B @ Q_A")))
print()

# the two missing cross terms are what make this *semi*-distributivity:
# only the matching-polarity pairs appear in the expansion
mixed = parse_sequent("|- A @ Q_B")
pair = parse_sequent("|- A, B")
print("collapsed party:", np.round(denote_assertion(mixed).vector(), 6),
      "equals the plain pair", np.round(denote_assertion(pair).vector(), 6))
print()

TRIPLE = """
atoms A B C

theorem triple_attempt:
  1: |- A, B, Q_C premise
  2: |- A^, B^, Q_C premise
  3: |- Q_A @ Q_B, Q_C by atform[phi](1, 2)
qed
"""
script = parse_script(TRIPLE)
report = check_derivation(script.theorems[0].derivation, LogicMode.BASIC)
verdict = [e.verdict for e in report.entries if e.rule == "atform"][0]
print("formation with a third qubit standing by:")
print(f"  rejected with {verdict.code}: {verdict.message}")
