"""Cat states, assertion degrees, and the cut rule as a measurement.

The assertion `|- A & A^` says the bit and its negation are both true; its
denotation is the equal-amplitude superposition.  Cutting it against the
hypothesis `A & A^ |- A` reads the one bit out of it and destroys the
superposition; running both cuts in parallel and rejoining restores the
original state exactly (the one-qubit mirror measurement).
"""

import numpy as np

from qsc import (
    LogicMode,
    check_derivation,
    denote_assertion,
    parse_script,
    parse_sequent,
    render,
    script_labels,
    sequent_str,
    verify_soundness,
)

cat = parse_sequent("|- A & A^")
print("the cat assertion:", sequent_str(cat))
print("its state vector: ", np.round(denote_assertion(cat).vector(), 6))
print()

SCRIPT = """
atoms A

theorem measure_one:
  1: |- A & A^ premise
  2: A |- A by axiom()
  3: A & A^ |- A by andrefl(2)
  4: |- A by cut[A & A^](1, 3)
qed

theorem both_branches:
  1: |- A & A^ premise
  2: A |- A by axiom()
  3: A & A^ |- A by andrefl(2)
  4: |- A by cut[A & A^](1, 3)
  5: A^ |- A^ by axiom()
  6: A & A^ |- A^ by andrefl(5)
  7: |- A^ by cut[A & A^](1, 6)
  8: |- A & A^ by parallel[and](4, 7)
qed
"""

script = parse_script(SCRIPT)
labels = script_labels(script)

for theorem in script.theorems:
    report = check_derivation(theorem.derivation, LogicMode.BASIC, labels)
    print(f"theorem {theorem.name}: "
          f"{'checks' if report.ok else 'FAILS'}, "
          f"goal {sequent_str(theorem.goal)}")

print()
print("the parallel derivation, drawn:")
print(render(script.theorem("both_branches").derivation, "ascii"))

sound = verify_soundness(script.theorem("both_branches").derivation)
print(f"soundness replay: max residual {sound.max_residual:.3e} "
      "(the two projectors sum to the identity, so the state returns)")
