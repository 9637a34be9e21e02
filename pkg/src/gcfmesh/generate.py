"""Procedural ground-truth meshes: icosphere, capped cylinder, capped cone,
cube, and planar grid.

All closed generators emit consistent outward winding. The cylinder reuses
one cos/sin table across height levels so that vertices stacked on a
generatrix share bit-identical x/y coordinates, which keeps axial edges
exactly axial.
"""

from __future__ import annotations

import numpy as np

from .errors import BadResolution
from .mesh import TriangleMesh

_ICO_T = (1.0 + np.sqrt(5.0)) / 2.0
_ICO_VERTS = np.array([
    (-1, _ICO_T, 0), (1, _ICO_T, 0), (-1, -_ICO_T, 0), (1, -_ICO_T, 0),
    (0, -1, _ICO_T), (0, 1, _ICO_T), (0, -1, -_ICO_T), (0, 1, -_ICO_T),
    (_ICO_T, 0, -1), (_ICO_T, 0, 1), (-_ICO_T, 0, -1), (-_ICO_T, 0, 1),
], dtype=np.float64)
_ICO_FACES = [
    (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
    (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
    (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
    (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
]


def icosphere(subdivisions: int = 2, radius: float = 1.0) -> TriangleMesh:
    """Subdivided icosahedron projected onto a sphere.

    Vertex count is 10 * 4**subdivisions + 2.
    """
    if subdivisions < 0:
        raise BadResolution("subdivisions must be >= 0")
    verts = [v / np.linalg.norm(v) * radius for v in _ICO_VERTS]
    faces = list(_ICO_FACES)
    for _ in range(subdivisions):
        midpoint_of = {}

        def midpoint(a, b):
            key = (a, b) if a < b else (b, a)
            idx = midpoint_of.get(key)
            if idx is None:
                m = verts[a] + verts[b]
                verts.append(m / np.linalg.norm(m) * radius)
                idx = len(verts) - 1
                midpoint_of[key] = idx
            return idx

        split = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            split += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = split
    return TriangleMesh(np.asarray(verts), np.asarray(faces))


def _band_faces(segments, lower_row, upper_row):
    """Two triangles per quad between two vertex rows around the axis."""
    i = np.arange(segments)
    i1 = (i + 1) % segments
    a = lower_row + i
    b = lower_row + i1
    c = upper_row + i1
    d = upper_row + i
    return np.concatenate([
        np.stack([a, b, c], axis=1),
        np.stack([a, c, d], axis=1),
    ])


def cylinder(segments: int = 32, rings: int = 16, radius: float = 1.0,
             height: float = 2.0) -> TriangleMesh:
    """Capped right circular cylinder; closed, outward winding."""
    if segments < 3:
        raise BadResolution("segments must be >= 3")
    if rings < 1:
        raise BadResolution("rings must be >= 1")
    theta = np.arange(segments) * (2.0 * np.pi / segments)
    xs = radius * np.cos(theta)
    ys = radius * np.sin(theta)
    zs = np.linspace(-height / 2.0, height / 2.0, rings + 1)
    verts = np.empty((segments * (rings + 1) + 2, 3))
    verts[:-2, 0] = np.tile(xs, rings + 1)
    verts[:-2, 1] = np.tile(ys, rings + 1)
    verts[:-2, 2] = np.repeat(zs, segments)
    bottom_center = segments * (rings + 1)
    top_center = bottom_center + 1
    verts[bottom_center] = (0.0, 0.0, zs[0])
    verts[top_center] = (0.0, 0.0, zs[-1])

    bands = [_band_faces(segments, j * segments, (j + 1) * segments)
             for j in range(rings)]
    i = np.arange(segments)
    i1 = (i + 1) % segments
    bottom = np.stack([np.full(segments, bottom_center), i1, i], axis=1)
    top_row = rings * segments
    top = np.stack([np.full(segments, top_center), top_row + i, top_row + i1], axis=1)
    return TriangleMesh(verts, np.concatenate(bands + [bottom, top]))


def cone(segments: int = 32, rings: int = 8, radius: float = 1.0,
         height: float = 2.0) -> TriangleMesh:
    """Capped cone with the apex on the +z axis; closed, outward winding.

    rings is the number of vertex circles between base rim and apex
    (inclusive of the rim).
    """
    if segments < 3:
        raise BadResolution("segments must be >= 3")
    if rings < 1:
        raise BadResolution("rings must be >= 1")
    theta = np.arange(segments) * (2.0 * np.pi / segments)
    cs, sn = np.cos(theta), np.sin(theta)
    rows = []
    for j in range(rings):
        rj = radius * (rings - j) / rings
        zj = -height / 2.0 + j * height / rings
        rows.append(np.stack([rj * cs, rj * sn, np.full(segments, zj)], axis=1))
    apex = segments * rings
    base_center = apex + 1
    verts = np.concatenate(rows + [
        np.array([[0.0, 0.0, height / 2.0]]),
        np.array([[0.0, 0.0, -height / 2.0]]),
    ])
    bands = [_band_faces(segments, j * segments, (j + 1) * segments)
             for j in range(rings - 1)]
    i = np.arange(segments)
    i1 = (i + 1) % segments
    top_row = (rings - 1) * segments
    tip = np.stack([top_row + i, top_row + i1, np.full(segments, apex)], axis=1)
    base = np.stack([np.full(segments, base_center), i1, i], axis=1)
    return TriangleMesh(verts, np.concatenate(bands + [tip, base]))


# (u axis, v axis, fixed axis, fixed at high end) per face, right-handed so
# that u x v points outward.
_CUBE_SIDES = [
    (1, 2, 0, True), (2, 1, 0, False),
    (2, 0, 1, True), (0, 2, 1, False),
    (0, 1, 2, True), (1, 0, 2, False),
]


def cube(resolution: int = 4, size: float = 2.0) -> TriangleMesh:
    """Axis-aligned cube with a resolution x resolution grid per side,
    welded along edges and corners; closed, outward winding."""
    if resolution < 1:
        raise BadResolution("resolution must be >= 1")
    ticks = np.linspace(-size / 2.0, size / 2.0, resolution + 1)
    verts = []
    index_of = {}

    def vertex(key):
        idx = index_of.get(key)
        if idx is None:
            idx = len(verts)
            verts.append((ticks[key[0]], ticks[key[1]], ticks[key[2]]))
            index_of[key] = idx
        return idx

    faces = []
    for u_ax, v_ax, f_ax, high in _CUBE_SIDES:
        fixed = resolution if high else 0
        grid = np.empty((resolution + 1, resolution + 1), dtype=np.int64)
        for u in range(resolution + 1):
            for v in range(resolution + 1):
                key = [0, 0, 0]
                key[u_ax] = u
                key[v_ax] = v
                key[f_ax] = fixed
                grid[u, v] = vertex(tuple(key))
        for u in range(resolution):
            for v in range(resolution):
                a, b = grid[u, v], grid[u + 1, v]
                c, d = grid[u + 1, v + 1], grid[u, v + 1]
                faces += [(a, b, c), (a, c, d)]
    return TriangleMesh(np.asarray(verts), np.asarray(faces))


def grid(resolution: int = 8, spacing: float = 1.0) -> TriangleMesh:
    """Planar z=0 grid of resolution x resolution unit cells (open boundary)."""
    if resolution < 1:
        raise BadResolution("resolution must be >= 1")
    n = resolution
    ii, jj = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    verts = np.stack([
        ii.ravel() * spacing, jj.ravel() * spacing, np.zeros((n + 1) ** 2),
    ], axis=1)

    def vid(i, j):
        return i * (n + 1) + j

    faces = []
    for i in range(n):
        for j in range(n):
            a, b = vid(i, j), vid(i + 1, j)
            c, d = vid(i + 1, j + 1), vid(i, j + 1)
            faces += [(a, b, c), (a, c, d)]
    return TriangleMesh(verts, np.asarray(faces))


_GENERATORS = {
    "icosphere": icosphere,
    "cylinder": cylinder,
    "cone": cone,
    "cube": cube,
    "grid": grid,
}


def generate_mesh(kind: str, **params) -> TriangleMesh:
    """Dispatch to a generator by kind name; see the individual functions."""
    if kind not in _GENERATORS:
        raise ValueError(f"unknown mesh kind {kind!r}; choose from {sorted(_GENERATORS)}")
    return _GENERATORS[kind](**params)
