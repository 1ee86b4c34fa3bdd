"""
Cylinder diagrams of rank 2 fiber data

Weights are integer points k on the line h = k. Generator i moves a weight
by the integer shift of tau_i = sigma_i^{m_i}; the move out of k is broken
when s_i(k) = 0. Connected components are found by flood fill over the
window, and a component touching the window boundary is reported as
unbounded (a window heuristic, not a topological decision).
"""

import io
from collections import deque
from dataclasses import dataclass, field as dc_field
from typing import List, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from tgwa.algebra.basering import MaxIdealPoint, compose_auts, point_action, power_aut  # noqa: E402
from tgwa.core.exceptions import UnsupportedFeature, WindowTooSmall  # noqa: E402
from tgwa.core.logging import setup_logging  # noqa: E402
from tgwa.weyl.datum import TGWDatum  # noqa: E402
from tgwa.weyl.fixedring import norm_element  # noqa: E402

logger = setup_logging()

HEURISTIC_NOTE = "unbounded means: reaches the edge of the window"


@dataclass
class Component:
    label: str
    weights: List[int]
    unbounded: bool

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "min": self.weights[0],
            "max": self.weights[-1],
            "size": len(self.weights),
            "unbounded_in_window": self.unbounded,
        }


@dataclass
class CylinderDiagram:
    window: int
    orders: Tuple[int, int]
    shifts: Tuple[int, int]
    vertical_edges: List[int]
    horizontal_edges: List[int]
    components: List[Component] = dc_field(default_factory=list)

    @property
    def m(self) -> int:
        return self.orders[0]

    def as_dict(self) -> dict:
        return {
            "window": [-self.window, self.window],
            "orders": list(self.orders),
            "vertical_edges": self.vertical_edges,
            "horizontal_edges": self.horizontal_edges,
            "components": [c.as_dict() for c in self.components],
            "note": HEURISTIC_NOTE,
        }


def _shift(aut, field) -> int:
    """Integer translation of a map h -> h + c on k[h]"""
    image = point_action(aut, MaxIdealPoint((field.zero,)))
    again = point_action(aut, MaxIdealPoint((field.one,)))
    c = image.coords[0]
    if again.coords[0] - c != 1 or not c.is_rational() or c.to_fraction().denominator != 1:
        raise UnsupportedFeature("cylinder diagrams need integer translations")
    return int(c.to_fraction())


def _labels(count: int) -> List[str]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return [letters[k] if k < len(letters) else f"c{k}" for k in range(count)]


def cylinder(d: TGWDatum, window: int, m: int = 1, orders: Sequence[int] = None) -> CylinderDiagram:
    """Components of the weight strip of a fiber datum with sigma_1 sigma_2 = id

    `m` is the order attached to the first generator; `orders` overrides both.
    """
    ring = d.ring
    if d.n != 2 or ring.nvars != 1:
        raise UnsupportedFeature("cylinder diagrams need a rank 2 datum over k[h]")
    if not compose_auts(d.sigma[0], d.sigma[1]).is_identity():
        raise UnsupportedFeature("cylinder diagrams need sigma_1 sigma_2 = id")
    field = ring.field
    orders = tuple(orders) if orders is not None else (m, 1)
    taus = [power_aut(s, k) for s, k in zip(d.sigma, orders)]
    norms = [norm_element(s, t, k) for s, t, k in zip(d.sigma, d.t, orders)]
    shifts = tuple(_shift(tau, field) for tau in taus)

    size = 2 * window + 1
    blocked = np.zeros((2, size), dtype=bool)
    for i in range(2):
        for k in range(-window, window + 1):
            if norms[i].evaluate((field(k),)).is_zero():
                blocked[i, k + window] = True
                if not -window < k + shifts[i] < window or not -window < k < window:
                    raise WindowTooSmall(f"break edge of generator {i + 1} at weight {k} reaches the window edge")

    labels = np.full(size, -1, dtype=int)
    count = 0
    for start in range(size):
        if labels[start] >= 0:
            continue
        labels[start] = count
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for i in range(2):
                # u -> u + shift unless blocked at u; v -> v - shift unless blocked at v - shift
                for v, edge_at in ((u + shifts[i], u), (u - shifts[i], u - shifts[i])):
                    if 0 <= v < size and 0 <= edge_at < size and not blocked[i, edge_at] and labels[v] < 0:
                        labels[v] = count
                        queue.append(v)
        count += 1

    diagram = CylinderDiagram(
        window,
        orders,
        shifts,
        [int(k) - window for k in np.flatnonzero(blocked[0])],
        [int(k) - window for k in np.flatnonzero(blocked[1])],
    )
    for label, name in zip(range(count), _labels(count)):
        weights = [int(k) - window for k in np.flatnonzero(labels == label)]
        unbounded = weights[0] == -window or weights[-1] == window
        diagram.components.append(Component(name, weights, unbounded))
    logger.info(f"cylinder m={orders[0]} window={window}: {count} components")
    return diagram


def render_ascii(diagram: CylinderDiagram) -> str:
    """Three rows: component letters with '|' right of s_1 breaks, '=' under s_2 breaks"""
    window = diagram.window
    by_weight = {w: c.label for c in diagram.components for w in c.weights}
    vertical = set(diagram.vertical_edges)
    horizontal = set(diagram.horizontal_edges)
    top, bottom = [], []
    for k in range(-window, window + 1):
        top.append(f" {by_weight[k]}{'|' if k in vertical else ' '}")
        bottom.append(f" {'=' if k in horizontal else ' '} ")
    lines = [
        f"cylinder m={diagram.m} window=[{-window},{window}] components={len(diagram.components)}",
        "".join(top).rstrip(),
        "".join(bottom).rstrip(),
    ]
    for c in diagram.components:
        extent = "unbounded in window" if c.unbounded else "bounded"
        lines.append(f"{c.label}: [{c.weights[0]}, {c.weights[-1]}] {extent}")
    return "\n".join(lines) + "\n"


def render_svg(diagram: CylinderDiagram) -> str:
    plt.rcParams["svg.hashsalt"] = "tgwa"
    window = diagram.window
    fig, ax = plt.subplots(figsize=(max(4.0, 0.4 * (2 * window + 1)), 1.6))
    colors = plt.cm.tab10(np.arange(max(len(diagram.components), 1)) % 10)
    for c, color in zip(diagram.components, colors):
        ax.scatter(c.weights, np.zeros(len(c.weights)), color=color, s=30, label=c.label, zorder=3)
    for k in diagram.vertical_edges:
        ax.plot([k + 0.5, k + 0.5], [-0.4, 0.4], color="red", linewidth=2)
    for k in diagram.horizontal_edges:
        ax.plot([k - 0.4, k + 0.4], [-0.3, -0.3], color="blue", linewidth=2)
    ax.set_xlim(-window - 1, window + 1)
    ax.set_ylim(-1, 1)
    ax.set_yticks([])
    ax.set_title(f"m={diagram.m}, {len(diagram.components)} components")
    ax.legend(loc="upper right", fontsize="small")
    buffer = io.StringIO()
    fig.savefig(buffer, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buffer.getvalue()
