"""Teleportation: the meta-derivation and the brute-force oracle, side by side.

The derivation performs two joint-measurement cuts in parallel and rejoins
the branches with the entanglement formation rule; the unknown qubit's
amplitudes travel as the assertion degrees alpha and beta.  The oracle
knows nothing about sequents: it builds the eight-dimensional state,
projects onto the four Bell outcomes, applies the Pauli frame, and reports
probability and fidelity per branch.
"""

import numpy as np

from qsc import (
    LogicMode,
    check_derivation,
    denote_assertion,
    render,
    script_labels,
    teleport_oracle,
    verify_soundness,
)
from qsc.corpus import CORPUS, load_entry

ALPHA, BETA = 0.6 + 0j, 0.8 + 0j
bindings = {"alpha": ALPHA, "beta": BETA}

entry = next(e for e in CORPUS if e.name == "tel")
script = load_entry(entry)
theorem = script.theorems[0]
labels = script_labels(script)

print(render(theorem.derivation, "ascii"))
report = check_derivation(theorem.derivation, LogicMode.BASIC, labels)
sound = verify_soundness(theorem.derivation, LogicMode.BASIC,
                         bindings=bindings, labels=labels)
print(f"checks: {report.ok}; replay residual {sound.max_residual:.3e}")

goal = denote_assertion(theorem.goal, bindings)
print(f"conclusion with alpha={ALPHA.real}, beta={BETA.real}: "
      f"{np.round(goal.vector(), 6)} on wires {goal.wires}")
print("(the unknown state now rides the surviving entangled pair)")
print()

print("independent oracle, same amplitudes:")
print(f"  {'outcome':<8} {'probability':<12} {'correction':<11} fidelity")
for o in teleport_oracle(ALPHA, BETA):
    print(f"  {o.bell_outcome:<8} {o.probability:<12.6f} "
          f"{o.correction:<11} {o.fidelity:.9f}")
