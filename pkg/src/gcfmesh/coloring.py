"""Greedy domain decomposition: vertex coloring into independent sets.

Vertices are visited in ascending index order and each takes the smallest
color absent from its already-colored neighbors, so the result is
deterministic and uses at most max_degree + 1 colors. Vertices sharing a
color are never adjacent, which is what allows the filter to update a whole
color class simultaneously.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mesh import MeshTopology


@dataclass(eq=False)
class DomainColoring:
    """color_of maps each vertex to a 0-based label; domains groups the
    vertex indices by label, each ascending."""

    color_of: np.ndarray
    domains: list

    @property
    def domain_count(self) -> int:
        return len(self.domains)


def greedy_domain_decomposition(topology: MeshTopology) -> DomainColoring:
    """Color vertices greedily so no edge joins two same-colored vertices."""
    n = topology.vertex_count
    flat = topology.ring_flat.tolist()
    indptr = topology.ring_indptr.tolist()
    color = [-1] * n
    for i in range(n):
        used = set()
        for j in flat[indptr[i]:indptr[i + 1]]:
            cj = color[j]
            if cj >= 0:
                used.add(cj)
        c = 0
        while c in used:
            c += 1
        color[i] = c
    color_of = np.asarray(color, dtype=np.int32)
    k = int(color_of.max()) + 1 if n else 0
    domains = [np.flatnonzero(color_of == c).astype(np.int32) for c in range(k)]
    return DomainColoring(color_of=color_of, domains=domains)


def single_domain_coloring(vertex_count: int) -> DomainColoring:
    """All vertices in one domain: the no-decomposition (Jacobi) execution
    mode used to measure the convergence benefit of the greedy coloring.
    Not a proper coloring."""
    color_of = np.zeros(vertex_count, dtype=np.int32)
    return DomainColoring(
        color_of=color_of,
        domains=[np.arange(vertex_count, dtype=np.int32)],
    )
