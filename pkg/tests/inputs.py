"""Shared example maps used across the test suite.

These are the worked examples the acceptance criteria pin down exactly:
a single edge crossing zero, the six-vertex rectangle with f(x, y) = y,
the 3x3 grid square carrying the identity map, and an octagon whose values
wind twice around the origin.
"""

from __future__ import annotations

import json
from fractions import Fraction

from rzero import Complex, PLMap


def edge_map() -> PLMap:
    """A single edge with scalar values -1 and +1."""
    c = Complex.build([["p", "q"]])
    return PLMap(c, {"p": (Fraction(-1),), "q": (Fraction(1),)}, 1, "linf")


def rectangle_map() -> PLMap:
    """Six-vertex rectangle [0,2] x [-1,1], f(x, y) = y.

    Bottom row a0 a1 a2 at y = -1, top row b0 b1 b2 at y = +1, each square
    split along a diagonal.
    """
    tris = [
        ["a0", "a1", "b0"], ["a1", "b0", "b1"],
        ["a1", "a2", "b1"], ["a2", "b1", "b2"],
    ]
    c = Complex.build(tris)
    values = {}
    for name in ("a0", "a1", "a2"):
        values[name] = (Fraction(-1),)
    for name in ("b0", "b1", "b2"):
        values[name] = (Fraction(1),)
    return PLMap(c, values, 1, "linf")


def grid_vertex(i: int, j: int) -> str:
    return f"v{i + 1}{j + 1}"


def grid_identity_map(negate: bool = False) -> PLMap:
    """The 3x3 grid on [-1,1]^2 (8 triangles through the center) with the
    identity map, under the sup norm."""
    tris = []
    for sx in (-1, 1):
        for sy in (-1, 1):
            corner = grid_vertex(sx, sy)
            tris.append([grid_vertex(0, 0), grid_vertex(sx, 0), corner])
            tris.append([grid_vertex(0, 0), grid_vertex(0, sy), corner])
    c = Complex.build(tris)
    sign = -1 if negate else 1
    values = {
        grid_vertex(i, j): (Fraction(sign * i), Fraction(sign * j))
        for i in (-1, 0, 1) for j in (-1, 0, 1)
    }
    return PLMap(c, values, 2, "linf")


def octagon_winding2_map() -> PLMap:
    """An octagon whose vertex values traverse the unit diamond twice."""
    directions = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    edges = [[f"w{i}", f"w{(i + 1) % 8}"] for i in range(8)]
    c = Complex.build(edges)
    values = {
        f"w{i}": (Fraction(directions[i % 4][0]), Fraction(directions[i % 4][1]))
        for i in range(8)
    }
    return PLMap(c, values, 2, "linf")


def as_document(f: PLMap) -> str:
    from rzero.io import serialize_input

    return json.dumps(serialize_input(f), sort_keys=True, indent=1)
