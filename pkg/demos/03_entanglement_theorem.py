"""The entanglement theorem, end to end.

From a separable pair of qubits and a projective measurement of one of
them, the controlled-not rule entangles the two wires.  The bundled
derivation is checked rule by rule, replayed against the state model, and
its conclusion compared to the gate computed directly: CNOT with control B
applied to |+> (x) |0>.
"""

import numpy as np

from qsc import (
    LogicMode,
    QState,
    check_derivation,
    denote_assertion,
    fidelity,
    render,
    script_labels,
    verify_soundness,
)
from qsc.corpus import CORPUS, load_entry

entry = next(e for e in CORPUS if e.name == "ent")
script = load_entry(entry)
theorem = script.theorems[0]
labels = script_labels(script)

print(render(theorem.derivation, "ascii"))

report = check_derivation(theorem.derivation, LogicMode.BASIC, labels)
print("structural check:", "all nodes pass" if report.ok else "FAILED")

sound = verify_soundness(theorem.derivation, LogicMode.BASIC, labels=labels)
print(f"soundness replay: max residual {sound.max_residual:.3e}")
print()

# the gate, computed by hand: CNOT in the (control, target) basis
cnot = np.array([[1, 0, 0, 0],
                 [0, 1, 0, 0],
                 [0, 0, 0, 1],
                 [0, 0, 1, 0]], dtype=complex)
plus = np.array([1, 1], dtype=complex) / np.sqrt(2)
zero = np.array([1, 0], dtype=complex)
expected = QState(("B", "A"), cnot @ np.kron(plus, zero))

conclusion = denote_assertion(theorem.goal)
print("conclusion state:", np.round(conclusion.vector(), 6), "on", conclusion.wires)
print("gate output:     ", np.round(expected.vector(), 6), "on", expected.wires)
print(f"fidelity: {fidelity(conclusion, expected):.12f}")
