"""Plane geometry used by detour and candidate-station computations."""

import math


def point_segment_distance(point, a, b):
    """
    Euclidean distance from a point to the closed segment [a, b].

    Args:
        point (tuple): (x, y)
        a (tuple): segment start (x, y)
        b (tuple): segment end (x, y)

    Returns:
        float: distance to the nearest point of the segment
    """
    px, py = point
    ax, ay = a
    bx, by = b
    dx, dy = bx - ax, by - ay
    length_sq = dx * dx + dy * dy
    if length_sq == 0.0:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * dx + (py - ay) * dy) / length_sq
    t = min(1.0, max(0.0, t))
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


def min_dist_point_to_segment(instance, station, i, j):
    """Distance from a station node to the arc (i, j) of an instance."""
    node_k, node_i, node_j = instance.node(station), instance.node(i), instance.node(j)
    return point_segment_distance((node_k.x, node_k.y), (node_i.x, node_i.y), (node_j.x, node_j.y))


def section_point(a, b, z):
    """Point at fraction z of the way from a to b (internal section)."""
    return (b[0] * z + a[0] * (1.0 - z), b[1] * z + a[1] * (1.0 - z))
