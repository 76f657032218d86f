"""Graphviz DOT output for the valued graph, quivers and Hasse diagrams.

To render: ``dot -Tpng out.dot > out.png``.
"""

from __future__ import annotations

from pathlib import Path

from preproj.cartan import ArrowKind, CartanData, QuiverPresentation
from preproj.tilting.lattice import SttiltLattice
from preproj.weyl import WeakOrderPoset


def _quote(text: str) -> str:
    return '"{}"'.format(text.replace("\\", "\\\\").replace('"', '\\"'))


def valued_graph_dot(cd: CartanData, name: str = "valued_graph") -> str:
    """Γ(C): one edge i -- j per c_ij < 0, labelled (|c_ij|, |c_ji|)."""
    lines = [f"graph {_quote(name)} {{", "node [shape=circle];"]
    append = lines.append
    for i in range(cd.n):
        append(f'{_quote(str(i + 1))} [xlabel="c={cd.D[i]}"];')
    graph = cd.valued_graph()
    for i, j in sorted(graph.edges()):
        a, b = graph.edges[i, j]["value"]
        label = "" if (a, b) == (1, 1) else f' [label="({a},{b})"]'
        append(f"{_quote(str(i + 1))} -- {_quote(str(j + 1))}{label};")
    append("}")
    return "\n".join(lines) + "\n"


def quiver_dot(presentation: QuiverPresentation, name: str = "quiver") -> str:
    """Q̄ (or Q for the H presentation) with loops and labelled arrows."""
    lines = [f"digraph {_quote(name)} {{", "node [shape=circle];"]
    append = lines.append
    for i in presentation.vertices:
        append(f"{_quote(str(i + 1))};")
    for arrow in presentation.arrows:
        style = " style=dashed" if arrow.kind is ArrowKind.LOOP else ""
        append(
            f"{_quote(str(arrow.source + 1))} -> {_quote(str(arrow.target + 1))}"
            f" [label={_quote(arrow.label)}{style}];"
        )
    append("}")
    return "\n".join(lines) + "\n"


def hasse_dot(poset: WeakOrderPoset, name: str = "weak_order") -> str:
    """Hasse quiver of the right weak order: w → ws_i for ascents i."""
    W = poset.group
    lines = [f"digraph {_quote(name)} {{", "graph [rankdir=BT];", "node [shape=plaintext];"]
    append = lines.append
    for w in poset.elements:
        append(f"{_quote(w.label)};")
    for u, v, i in sorted(poset.hasse_edges, key=lambda e: (W.index(e[0]), W.index(e[1]))):
        append(f'{_quote(u.label)} -> {_quote(v.label)} [label="s{i + 1}"];')
    append("}")
    return "\n".join(lines) + "\n"


def sttilt_dot(lattice: SttiltLattice, name: str = "sttilt") -> str:
    """Support τ-tilting lattice: Π on top, arrows I_w → I_{ws_i} labelled by i."""
    lines = [f"digraph {_quote(name)} {{", "graph [rankdir=TB];", "node [shape=box];"]
    append = lines.append
    for node in lattice.ordered():
        append(f"{_quote(node.w.label)} [label={_quote(node.label)}];")
    for u, v, i in lattice.edges:
        append(f'{_quote(u.label)} -> {_quote(v.label)} [label="{i + 1}"];')
    append("}")
    return "\n".join(lines) + "\n"


def write_dot(text: str, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path
