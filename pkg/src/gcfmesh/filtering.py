"""The Gaussian curvature filter (GCF): an implicit, single-parameter,
iterative vertex filter.

Each vertex moves along the reversed differential coordinate (its position
minus the 1-ring centroid, negated and normalized) by the smallest absolute
projection of any ring edge onto any candidate normal. The candidate set
holds the area-weighted vertex normal plus one cross-product normal per
ring neighbor. Whenever some candidate normal is perpendicular to a ring
edge the projection minimum is zero and the vertex stays put, which is what
preserves creases, corners, and developable regions.

Vertices are swept domain by domain in ascending color order: positions
are updated in place between domains (Gauss-Seidel across domains) while
all vertices of one domain read the positions as they stood when that
domain's pass began (Jacobi within a domain). Boundary and non-manifold
vertices are never moved.

Degeneracy cutoffs are relative to the input mesh's mean edge length e:
a differential coordinate shorter than 1e-14*e yields no direction, and
normal candidates with magnitude below 1e-14*e^2 are dropped.

The sweep is organized as one dense (rows x degree) kernel per (domain,
degree) group, so per-row arithmetic has a fixed internal order and the
output is bitwise independent of the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor, wait
from dataclasses import dataclass

import numpy as np

from .coloring import DomainColoring
from .curvature import deficit_and_ring_area
from .errors import DegenerateNeighborhood
from .mesh import MeshTopology, TriangleMesh, mean_edge_length, mesh_stats

DIRECTION_TOL = 1e-14  # times mean edge length
NORMAL_TOL = 1e-14     # times mean edge length squared

_CHUNK_MIN = 8192      # rows per thread chunk, below this stay sequential


@dataclass
class FilterConfig:
    """iterations is the filter's only shape parameter; threads=0 picks
    os.cpu_count(); capture_trace records the interior curvature energy
    before the first and after every iteration."""

    iterations: int
    threads: int = 0
    capture_trace: bool = False

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.threads < 0:
            raise ValueError("threads must be >= 0")


@dataclass(eq=False)
class FilterTrace:
    """Interior curvature energy per iteration; entry 0 is the input mesh."""

    gce_per_iteration: list


def moving_direction(vertex: int, positions: np.ndarray, topology: MeshTopology,
                     edge_scale: float):
    """Unit direction from the vertex toward its 1-ring centroid.

    Returns None when the vertex already sits at the centroid (differential
    coordinate shorter than 1e-14 * edge_scale).
    """
    ring = topology.neighbors[vertex]
    if len(ring) == 0:
        raise ValueError(f"vertex {vertex} has no neighbors")
    delta = positions[vertex] - positions[ring].mean(axis=0)
    mag = float(np.linalg.norm(delta))
    if mag < DIRECTION_TOL * edge_scale:
        return None
    return -delta / mag


def neighbor_normal(vertex: int, k: int, positions: np.ndarray,
                    topology: MeshTopology, edge_scale: float):
    """Cross-product normal at the k-th ring neighbor of `vertex`.

    The two edges run from that neighbor to its cyclic predecessor and
    successor in the ring. Returns None for (near-)collinear triples.
    """
    ring = topology.neighbors[vertex]
    m = len(ring)
    vj = positions[ring[k]]
    e1 = positions[ring[(k - 1) % m]] - vj
    e2 = positions[ring[(k + 1) % m]] - vj
    cr = np.cross(e1, e2)
    mag = float(np.linalg.norm(cr))
    if mag < NORMAL_TOL * edge_scale * edge_scale:
        return None
    return cr / mag


def min_projection_distance(vertex: int, positions: np.ndarray,
                            topology: MeshTopology, vertex_normal,
                            edge_scale: float) -> float:
    """Smallest |<normal, ring edge>| over all candidate normals and edges.

    The candidate set is the given vertex normal (skipped when None) plus
    every non-degenerate neighbor normal. Raises DegenerateNeighborhood when
    the whole set is empty.
    """
    ring = topology.neighbors[vertex]
    normals = []
    if vertex_normal is not None:
        normals.append(np.asarray(vertex_normal, dtype=np.float64))
    for k in range(len(ring)):
        nk = neighbor_normal(vertex, k, positions, topology, edge_scale)
        if nk is not None:
            normals.append(nk)
    if not normals:
        raise DegenerateNeighborhood(f"vertex {vertex}: no usable normals")
    edges = positions[ring] - positions[vertex]
    proj = np.abs(np.stack(normals) @ edges.T)
    return float(proj.min())


class _Group:
    """Movable vertices of one domain sharing a ring size d."""

    __slots__ = ("rows", "rings")

    def __init__(self, rows, rings):
        self.rows = rows
        self.rings = rings


def _build_plan(topology: MeshTopology, coloring: DomainColoring):
    """Group each domain's movable vertices by ring size and pre-gather the
    dense ring index blocks the kernel consumes."""
    movable = (~topology.is_boundary) & topology.is_manifold_fan \
        & (topology.ring_sizes > 0)
    plan = []
    for domain in coloring.domains:
        domain = np.asarray(domain)
        rows_all = domain[movable[domain]]
        groups = []
        if len(rows_all):
            sizes = topology.ring_sizes[rows_all]
            for d in np.unique(sizes):
                rows = rows_all[sizes == d]
                cols = np.arange(d, dtype=np.int64)
                rings = topology.ring_flat[
                    topology.ring_indptr[rows][:, None] + cols[None, :]
                ]
                groups.append(_Group(rows, rings))
        plan.append(groups)
    return plan


def _cross3(a, b):
    """Component-wise cross product along the last axis (length 3).

    Equivalent to np.cross but without its dtype/axis plumbing, which
    dominates kernel time on large blocks.
    """
    out = np.empty(np.broadcast_shapes(a.shape, b.shape))
    a0, a1, a2 = a[..., 0], a[..., 1], a[..., 2]
    b0, b1, b2 = b[..., 0], b[..., 1], b[..., 2]
    out[..., 0] = a1 * b2 - a2 * b1
    out[..., 1] = a2 * b0 - a0 * b2
    out[..., 2] = a0 * b1 - a1 * b0
    return out


def _kernel(snapshot, rows, rings, dir_tol, normal_tol):
    """New positions for one block of same-degree vertices.

    For an interior manifold vertex the k-th incident face is (vertex,
    ring[k], ring[k+1]), so its doubled-area cross product comes from the
    already-gathered ring edges; likewise the neighbor normals come from
    consecutive ring differences (their sign is irrelevant because only
    absolute projections are used). Every reduction runs along a
    fixed-length axis, so each row's result does not depend on which other
    rows share the block.
    """
    vi = snapshot[rows]
    ring_pos = snapshot[rings]
    edges = ring_pos - vi[:, None, :]

    toward_centroid = edges.mean(axis=1)
    dmag = np.sqrt((toward_centroid * toward_centroid).sum(axis=1))
    has_dir = dmag >= dir_tol
    direction = np.zeros_like(toward_centroid)
    np.divide(toward_centroid, dmag[:, None], out=direction,
              where=has_dir[:, None])

    vnormal = 0.5 * _cross3(edges, np.roll(edges, -1, axis=1)).sum(axis=1)
    vmag = np.sqrt((vnormal * vnormal).sum(axis=1))
    v_ok = vmag >= normal_tol
    vunit = np.zeros_like(vnormal)
    np.divide(vnormal, vmag[:, None], out=vunit, where=v_ok[:, None])

    chain = ring_pos - np.roll(ring_pos, 1, axis=1)
    ncross = _cross3(chain, np.roll(chain, -1, axis=1))
    nmag = np.sqrt((ncross * ncross).sum(axis=2))
    n_ok = nmag >= normal_tol
    nunit = np.zeros_like(ncross)
    np.divide(ncross, nmag[:, :, None], out=nunit, where=n_ok[:, :, None])

    proj_v = np.abs(np.einsum("mc,mdc->md", vunit, edges))
    proj_v[~v_ok] = np.inf
    proj_n = np.abs(np.einsum("mkc,mdc->mkd", nunit, edges))
    proj_n[~n_ok] = np.inf
    dist = np.minimum(proj_v.min(axis=1), proj_n.min(axis=(1, 2)))

    amplitude = np.where(has_dir & np.isfinite(dist), dist, 0.0)
    return vi + amplitude[:, None] * direction


def _run_group(positions, snapshot, group, dir_tol, normal_tol, pool, workers):
    m = len(group.rows)
    if pool is None or m < 2 * _CHUNK_MIN:
        out = _kernel(snapshot, group.rows, group.rings, dir_tol, normal_tol)
    else:
        out = np.empty((m, 3))
        bounds = np.linspace(0, m, min(workers, m // _CHUNK_MIN) + 1).astype(int)

        def work(a, b):
            out[a:b] = _kernel(snapshot, group.rows[a:b], group.rings[a:b],
                               dir_tol, normal_tol)

        wait([pool.submit(work, a, b) for a, b in zip(bounds[:-1], bounds[1:])])
    positions[group.rows] = out


def _sweep(positions, plan, dir_tol, normal_tol, pool, workers):
    """One full iteration: every domain in ascending label order."""
    for groups in plan:
        if not groups:
            continue
        snapshot = positions.copy()
        for group in groups:
            _run_group(positions, snapshot, group, dir_tol, normal_tol,
                       pool, workers)


def resolve_threads(threads: int) -> int:
    return threads if threads > 0 else (os.cpu_count() or 1)


def gcf_step(positions: np.ndarray, topology: MeshTopology,
             coloring: DomainColoring, *, edge_scale: float | None = None,
             threads: int = 1) -> np.ndarray:
    """One filter sweep over all domains; returns new positions.

    edge_scale defaults to the mean edge length of the given positions and
    anchors the degeneracy cutoffs.
    """
    positions = np.array(positions, dtype=np.float64)
    if edge_scale is None:
        edge_scale = mean_edge_length(positions, topology.faces)
    plan = _build_plan(topology, coloring)
    workers = resolve_threads(threads)
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        _sweep(positions, plan, DIRECTION_TOL * edge_scale,
               NORMAL_TOL * edge_scale * edge_scale, pool, workers)
    finally:
        if pool is not None:
            pool.shutdown()
    return positions


def _interior_energy(positions, topology):
    deficit, ring_area = deficit_and_ring_area(
        positions, topology.faces, len(positions)
    )
    curvature = np.zeros_like(deficit)
    np.divide(deficit, ring_area, out=curvature, where=ring_area > 0)
    return float(np.abs(curvature[~topology.is_boundary]).sum())


def gcf_filter(mesh: TriangleMesh, topology: MeshTopology,
               coloring: DomainColoring, config: FilterConfig):
    """Apply the filter config.iterations times.

    Returns (filtered mesh, trace). The trace is None unless
    config.capture_trace is set; connectivity is shared unchanged and
    boundary/non-manifold vertices keep their exact input positions.
    Output positions are identical for any worker count.
    """
    positions = mesh.vertices.copy()
    edge_scale = mesh_stats(mesh).mean_edge_length
    dir_tol = DIRECTION_TOL * edge_scale
    normal_tol = NORMAL_TOL * edge_scale * edge_scale
    plan = _build_plan(topology, coloring)
    workers = resolve_threads(config.threads)
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    trace = [_interior_energy(positions, topology)] if config.capture_trace else None
    try:
        for _ in range(config.iterations):
            _sweep(positions, plan, dir_tol, normal_tol, pool, workers)
            if trace is not None:
                trace.append(_interior_energy(positions, topology))
    finally:
        if pool is not None:
            pool.shutdown()
    filtered = TriangleMesh(positions, mesh.faces.copy())
    return filtered, (FilterTrace(trace) if trace is not None else None)
