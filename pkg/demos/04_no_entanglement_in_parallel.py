"""No entanglement in parallel.

Running the entanglement derivation on both measurement outcomes at once
and rejoining the branches gives back the separable pair: the conclusion
has product form and zero entanglement entropy on every wire.  One wrong
clause anywhere, though, and the checker points at the exact step.
"""

import numpy as np

from qsc import LogicMode, check_derivation, denote_assertion, entanglement_entropy, script_labels
from qsc.corpus import CORPUS, corpus_text, load_entry
from qsc.parser import parse_script

entry = next(e for e in CORPUS if e.name == "nogo")
script = load_entry(entry)
theorem = script.theorems[0]

report = check_derivation(theorem.derivation, LogicMode.BASIC, script_labels(script))
print(f"the parallel derivation checks: {report.ok} "
      f"({len(report.entries)} nodes)")

state = denote_assertion(theorem.goal)
print("conclusion state:", np.round(state.vector(), 6), "on", state.wires)
for wire in state.wires:
    print(f"  entanglement entropy of wire {wire}: "
          f"{entanglement_entropy(state, wire):.3e} bits")
print()

# now sabotage one controlled-not clause and watch the failure localize
broken = corpus_text(entry.filename).replace("cnot[a'](8)", "cnot[b'](8)")
bad = parse_script(broken)
bad_report = check_derivation(bad.theorems[0].derivation, LogicMode.BASIC,
                              script_labels(bad))
failing = [e for e in bad_report.entries if not e.verdict.ok]
print("after swapping one clause:")
for e in failing[:2]:
    print(f"  {e.path} [{e.rule}] {e.verdict.code}: {e.verdict.message}")
