"""Rendering of derivation trees.

Two styles: ``linear`` emits the numbered-step script form (and parses back
to an equal tree); ``ascii`` draws the two-dimensional layout with premises
stacked over horizontal inference bars labeled by rule.
"""

from __future__ import annotations

from typing import Dict, List

from .kernel import Derivation
from .syntax import Formula, formula_str, formula_wires, sequent_str

_DISPLAY = {
    "axiom": "axiom",
    "premise": "premise",
    "ataxiom": "@ax",
    "andform": "&R",
    "andrefl": "&L",
    "parform": "#R",
    "negform": "neg-form",
    "negrefl": "neg-refl",
    "cut": "cut",
    "atform": "@form",
    "atimplrefl": "@impl-refl",
    "atexplrefl": "@expl-refl",
    "semidistrib": "semidist",
    "qsplit": "qsplit",
    "hrule": "H",
    "hinverse": "H^-1",
    "cnot": "CNOT",
    "epr": "EPR",
    "parallel": "join",
}


def rule_label(node: Derivation) -> str:
    if node.rule == "parallel":
        join = str(node.params[0]) if node.params else "and"
        return "&R" if join == "and" else "@form"
    label = _DISPLAY.get(node.rule, node.rule)
    extras = [str(p) for p in node.params if not isinstance(p, Formula)]
    if extras and node.rule in ("cnot", "qsplit", "atimplrefl", "atform"):
        return f"{label}({','.join(extras)})"
    return label


def render(tree: Derivation, style: str = "ascii") -> str:
    if style == "ascii":
        return render_ascii(tree)
    if style == "linear":
        return render_linear(tree)
    raise ValueError(f"unknown render style {style!r} (ascii or linear)")


# ---------------------------------------------------------------------------
# Linear style

def _param_text(node: Derivation) -> str:
    if not node.params:
        return ""
    parts = [formula_str(p) if isinstance(p, Formula) else str(p)
             for p in node.params]
    return f"[{', '.join(parts)}]"


def _collect_wires(node: Derivation, seen: set, order: List[str]) -> None:
    if id(node) in seen:
        return
    seen.add(id(node))
    for p in node.premises:
        _collect_wires(p, seen, order)
    formulas = list(node.conclusion.antecedent) + list(node.conclusion.consequent)
    formulas.extend(p for p in node.params if isinstance(p, Formula))
    for f in formulas:
        for w in formula_wires(f):
            if w not in order:
                order.append(w)


def render_linear(tree: Derivation, name: str = "t") -> str:
    """Emit a complete script whose single theorem rebuilds the tree."""
    wires: List[str] = []
    _collect_wires(tree, set(), wires)
    numbering: Dict[int, int] = {}
    lines: List[str] = []

    def walk(node: Derivation) -> int:
        if id(node) in numbering:
            return numbering[id(node)]
        refs = [walk(p) for p in node.premises]
        i = len(numbering) + 1
        numbering[id(node)] = i
        stated = sequent_str(node.conclusion)
        if node.rule == "premise":
            lines.append(f"  {i}: {stated} premise")
        else:
            refs_text = ", ".join(str(r) for r in refs)
            lines.append(f"  {i}: {stated} by {node.rule}{_param_text(node)}({refs_text})")
        return i

    walk(tree)
    atoms = " ".join(sorted(wires)) if wires else "A"
    return f"atoms {atoms}\n\ntheorem {name}:\n" + "\n".join(lines) + "\nqed\n"


# ---------------------------------------------------------------------------
# ASCII style

def _stack(blocks: List[List[str]], gap: int = 4) -> List[str]:
    height = max(len(b) for b in blocks)
    widths = [max((len(line) for line in b), default=0) for b in blocks]
    padded = []
    for b, w in zip(blocks, widths):
        rows = [" " * w] * (height - len(b)) + [line.ljust(w) for line in b]
        padded.append(rows)
    joined = []
    for row in range(height):
        joined.append((" " * gap).join(p[row] for p in padded).rstrip())
    return joined


def _center(line: str, width: int) -> str:
    pad = max(width - len(line), 0)
    left = pad // 2
    return " " * left + line


def _ascii_block(node: Derivation) -> List[str]:
    conclusion = sequent_str(node.conclusion)
    if not node.premises:
        return [f"{conclusion}   [{rule_label(node)}]"]
    above = _stack([_ascii_block(p) for p in node.premises])
    width = max(max(len(line) for line in above), len(conclusion))
    bar = "-" * width + f" {rule_label(node)}"
    lines = [_center(line, width) if len(line) < width else line for line in above]
    return lines + [bar, _center(conclusion, width)]


def render_ascii(tree: Derivation) -> str:
    return "\n".join(line.rstrip() for line in _ascii_block(tree)) + "\n"
