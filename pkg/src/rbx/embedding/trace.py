"""Embedding trace text format and counterexample capture.

A trace file names the host, coloring and tree files it refers to, then
lists one step per line::

    host Q6.graph
    coloring Q6.coloring
    tree path6.tree
    0 13 -
    1 12 0
    2 14 1

Step lines are ``i v_i color(f_i)``; step 0 has no edge and prints ``-``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..colorings import EdgeColoring, dump_coloring
from ..errors import InvariantViolation, LoadError
from ..graph import Graph, dump_graph
from ..trees import LeafOrdering, Tree, dump_tree

REF_KEYS = ("host", "coloring", "tree")


@dataclass
class Trace:
    refs: dict[str, str] = field(default_factory=dict)
    steps: list[tuple[int, int, int | None]] = field(default_factory=list)


def step_lines(images, colors) -> list[str]:
    """Lines for the steps taken so far; ``images[i] < 0`` marks unreached."""
    out = []
    for i, v in enumerate(images):
        if v < 0:
            break
        if i == 0:
            out.append(f"0 {v} -")
        else:
            out.append(f"{i} {v} {colors[i - 1] if i - 1 < len(colors) else '?'}")
    return out


def format_trace(lines: list[str], host: str = "-", coloring: str = "-", tree: str = "-") -> str:
    head = [f"host {host}", f"coloring {coloring}", f"tree {tree}"]
    return "\n".join(head + list(lines)) + "\n"


def parse_trace(text: str) -> Trace:
    out = Trace()
    for lineno, line in enumerate(text.splitlines(), 1):
        tok = line.split()
        if not tok:
            continue
        if tok[0] in REF_KEYS:
            if len(tok) != 2:
                raise LoadError(f"line {lineno}: expected '{tok[0]} <path>'")
            out.refs[tok[0]] = tok[1]
            continue
        if len(tok) != 3:
            raise LoadError(f"line {lineno}: expected 'i v_i color'")
        try:
            i, v = int(tok[0]), int(tok[1])
            c = None if tok[2] == "-" else int(tok[2])
        except ValueError:
            raise LoadError(f"line {lineno}: step fields must be integers") from None
        if i != len(out.steps) or (c is None) != (i == 0):
            raise LoadError(f"line {lineno}: steps must run 0, 1, 2, ... with '-' only at step 0")
        out.steps.append((i, v, c))
    return out


def violation(message: str, G: Graph, phi: EdgeColoring, T: Tree, ordering: LeafOrdering,
              images, colors) -> InvariantViolation:
    """Build the error for an impossible step, with inputs and trace attached."""
    inputs = {"host": dump_graph(G), "coloring": dump_coloring(phi), "tree": dump_tree(T),
              "ordering": " ".join(map(str, ordering.order)) + "\n"}
    return InvariantViolation(message, trace=step_lines(images, colors), inputs=inputs)
