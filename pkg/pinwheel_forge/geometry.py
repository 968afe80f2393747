"""Floating point polygon predicates.

Points are complex numbers; polygons are sequences of them in order.
Predicates that need one take an absolute tolerance.
"""
import numpy


def as_points(vertices):
    return numpy.asarray(vertices, dtype=complex)


def cross(a, b):
    return a.real * b.imag - a.imag * b.real


def is_left(p0, p1, p2):
    """Positive if ``p2`` is left of the line through ``p0`` and ``p1``."""
    return cross(p1 - p0, p2 - p0)


def signed_area(vertices):
    """Shoelace area; positive for counterclockwise polygons."""
    z = as_points(vertices)
    return 0.5 * float(numpy.sum(cross(z, numpy.roll(z, -1))))


def area(vertices):
    return abs(signed_area(vertices))


def edges(vertices):
    z = list(vertices)
    return list(zip(z, z[1:] + z[:1]))


def segment_distance(p, a, b):
    """Distance from point ``p`` to the segment ``ab``."""
    d = b - a
    length2 = abs(d) ** 2
    if length2 == 0:
        return abs(p - a)
    t = ((p - a) * d.conjugate()).real / length2
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * d))


def winding_number(p, vertices):
    """Winding number of the polygon around ``p``."""
    wn = 0
    for a, b in edges(vertices):
        if a.imag <= p.imag:
            if b.imag > p.imag and is_left(a, b, p) > 0:
                wn += 1
        elif b.imag <= p.imag and is_left(a, b, p) < 0:
            wn -= 1
    return wn


def boundary_distance(p, vertices):
    return min(segment_distance(p, a, b) for a, b in edges(vertices))


def distance_outside(p, vertices):
    """0 if ``p`` is inside or on the polygon, else its distance to it."""
    if winding_number(p, vertices) != 0:
        return 0.0
    return boundary_distance(p, vertices)


def depth_inside(p, vertices):
    """Distance of ``p`` to the boundary if strictly inside, else 0."""
    if winding_number(p, vertices) == 0:
        return 0.0
    return boundary_distance(p, vertices)


def is_convex(vertices):
    z = list(vertices)
    n = len(z)
    signs = {
        is_left(z[i], z[(i + 1) % n], z[(i + 2) % n]) > 0 for i in range(n)
    }
    return len(signs) == 1


def penetration(first, second):
    """Separating axis overlap depth of two convex polygons.

    0 if a separating axis exists; otherwise the smallest overlap of the
    projections on the edge normals, which is how far the interiors
    reach into each other.
    """
    a, b = as_points(first), as_points(second)
    depth = numpy.inf
    for polygon in (a, b):
        directions = numpy.roll(polygon, -1) - polygon
        for d in directions:
            if d == 0:
                continue
            normal = 1j * d / abs(d)
            pa = (a * normal.conjugate()).real
            pb = (b * normal.conjugate()).real
            overlap = min(pa.max(), pb.max()) - max(pa.min(), pb.min())
            if overlap <= 0:
                return 0.0
            depth = min(depth, overlap)
    return float(depth)


def segments_cross(a, b, c, d, tol):
    """Whether segments ``ab`` and ``cd`` cross properly, beyond ``tol``."""
    d1 = is_left(c, d, a)
    d2 = is_left(c, d, b)
    d3 = is_left(a, b, c)
    d4 = is_left(a, b, d)
    scale_cd = abs(d - c) or 1.0
    scale_ab = abs(b - a) or 1.0
    return (
        d1 * d2 < 0
        and d3 * d4 < 0
        and min(abs(d1), abs(d2)) / scale_cd > tol
        and min(abs(d3), abs(d4)) / scale_ab > tol
    )


def overlap_depth(first, second, tol):
    """How far the interiors of two polygons overlap (0 if disjoint).

    Convex polygons use :func:`penetration`. Otherwise the result is the
    largest depth of a vertex inside the other polygon, or ``tol``
    scaled up when edges cross properly.
    """
    if is_convex(first) and is_convex(second):
        return penetration(first, second)
    depth = 0.0
    for p in first:
        depth = max(depth, depth_inside(p, second))
    for p in second:
        depth = max(depth, depth_inside(p, first))
    for a, b in edges(first):
        for c, d in edges(second):
            if segments_cross(a, b, c, d, tol):
                depth = max(depth, 10 * tol)
    return depth


def centroid(vertices):
    return complex(numpy.mean(as_points(vertices)))


def bounding_circle(vertices):
    """Circle ``(center, radius)`` around the vertex centroid."""
    z = as_points(vertices)
    center = complex(numpy.mean(z))
    return center, float(numpy.max(numpy.abs(z - center)))


def diameter(points):
    """Largest pairwise distance; quadratic, meant for small patches."""
    z = as_points(points)
    if len(z) < 2:
        return 0.0
    return float(numpy.max(numpy.abs(z[:, None] - z[None, :])))


def inradius(vertices):
    """Radius of the largest circle about the centroid inside a convex
    polygon."""
    c = centroid(vertices)
    return boundary_distance(c, vertices)
