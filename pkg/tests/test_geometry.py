from fractions import Fraction

import pytest

from crossnum.drawing import crossing_count, validate_good
from crossnum.geometry import (
    DegenerateDrawing,
    convex_position_drawing,
    drawing_from_points,
)
from crossnum.graphs import Graph, complete_graph


def test_convex_k4_one_crossing():
    d = convex_position_drawing(complete_graph(4))
    assert crossing_count(d) == 1
    assert validate_good(d).ok


def test_convex_k5():
    d = convex_position_drawing(complete_graph(5))
    assert crossing_count(d) == 5  # C(5,4): one crossing per 4-subset
    assert validate_good(d).ok


def test_degenerate_vertex_on_edge():
    g = Graph((0, 1, 2), ((0, 1),))
    with pytest.raises(DegenerateDrawing):
        drawing_from_points(g, {0: (0, 0), 1: (2, 0), 2: (1, 0)})


def test_degenerate_triple_point():
    g = Graph(tuple(range(6)), ((0, 1), (2, 3), (4, 5)))
    pos = {
        0: (-2, 0), 1: (2, 0),
        2: (0, -2), 3: (0, 2),
        4: (-2, -2), 5: (2, 2),
    }
    with pytest.raises(DegenerateDrawing):
        drawing_from_points(g, pos)


def test_adjacent_crossing_rejected():
    g = Graph((0, 1, 2), ((0, 1), (0, 2)))
    with pytest.raises(DegenerateDrawing):
        # fold the two edges so they overlap away from the shared end
        drawing_from_points(g, {0: (0, 0), 1: (4, 0), 2: (2, 0)})


def test_exact_fractions_accepted():
    g = Graph((0, 1, 2), ((0, 1), (1, 2), (0, 2)))
    d = drawing_from_points(
        g,
        {0: (Fraction(1, 3), 0), 1: (Fraction(7, 2), 0), 2: (2, Fraction(5, 7))},
    )
    assert validate_good(d).ok
