"""
Export a ground network as a Graphviz digraph.

For example, after `schemanet ground kb.skb --dot net.gv` you can render the
network with:

    dot -Tpng -O net.gv
"""

from pathlib import Path

from .network import GroundNetwork, QuantifierNodeId


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(net: GroundNetwork) -> str:
    """Deterministic DOT text; combination nodes are boxed and labelled with ∃ / ∀."""
    lines = ["digraph g {"]
    for node in net.nodes:
        if isinstance(node, QuantifierNodeId):
            lines.append(f"  {_quote(str(node))} [label={_quote(node.label())}, shape=box, style=rounded];")
        else:
            lines.append(f"  {_quote(str(node))};")
    for parent, child in net.arcs():
        lines.append(f"  {_quote(str(parent))} -> {_quote(str(child))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(net: GroundNetwork, path: Path) -> None:
    Path(path).write_text(to_dot(net), encoding="utf-8")
