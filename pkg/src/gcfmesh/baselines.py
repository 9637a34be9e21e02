"""Umbrella-Laplacian and Taubin smoothing baselines for comparisons.

Both are synchronous per-iteration updates toward (or away from) the 1-ring
centroid; boundary and non-manifold vertices stay fixed, matching the
freeze policy of the curvature filter.
"""

from __future__ import annotations

import numpy as np

from .mesh import MeshTopology, TriangleMesh


def _centroids(positions, topology):
    n = len(positions)
    deg = topology.ring_sizes
    centers = np.repeat(np.arange(n), deg)
    sums = np.empty((n, 3))
    for c in range(3):
        sums[:, c] = np.bincount(
            centers, weights=positions[topology.ring_flat, c], minlength=n
        )
    out = positions.copy()
    ok = deg > 0
    out[ok] = sums[ok] / deg[ok, None]
    return out


def _umbrella_pass(positions, topology, factor, movable):
    centroids = _centroids(positions, topology)
    positions[movable] += factor * (centroids[movable] - positions[movable])


def laplacian_smooth(mesh: TriangleMesh, topology: MeshTopology,
                     iterations: int, lam: float = 0.5) -> TriangleMesh:
    """Umbrella operator: v <- v + lam * (centroid(ring) - v), repeated."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lam must be in [0, 1]")
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    movable = (~topology.is_boundary) & topology.is_manifold_fan
    positions = mesh.vertices.copy()
    for _ in range(iterations):
        _umbrella_pass(positions, topology, lam, movable)
    return TriangleMesh(positions, mesh.faces.copy())


def taubin_smooth(mesh: TriangleMesh, topology: MeshTopology,
                  iterations: int, lam: float = 0.5,
                  mu: float = -0.53) -> TriangleMesh:
    """Alternating lam/mu umbrella passes; mu < -lam gives the classic
    anti-shrinkage behavior, mu = 0 degenerates to plain umbrella smoothing."""
    if lam <= 0.0:
        raise ValueError("lam must be > 0")
    if mu > 0.0:
        raise ValueError("mu must be <= 0")
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    movable = (~topology.is_boundary) & topology.is_manifold_fan
    positions = mesh.vertices.copy()
    for _ in range(iterations):
        _umbrella_pass(positions, topology, lam, movable)
        _umbrella_pass(positions, topology, mu, movable)
    return TriangleMesh(positions, mesh.faces.copy())
