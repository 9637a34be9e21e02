"""Triangle mesh container, topology construction, and basic statistics.

The mesh is stored as a flat (n, 3) float64 vertex array plus an (f, 3)
int32 face-index array; the winding of each face is kept exactly as given.
Topology construction orders every vertex's 1-ring by walking the fan of
incident faces, flags boundary vertices (open fans) and non-manifold
vertices (anything that is not a single open or closed fan).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyMeshError, FaceIndexError


@dataclass(eq=False)
class TriangleMesh:
    """Vertex positions and triangle connectivity.

    vertices : (n, 3) float64 positions in model units.
    faces    : (f, 3) int32 vertex indices, 0-based, winding preserved.

    Construction validates that every face index is in range and that no
    face repeats a vertex.
    """

    vertices: np.ndarray
    faces: np.ndarray

    def __post_init__(self):
        self.vertices = np.ascontiguousarray(
            np.asarray(self.vertices, dtype=np.float64).reshape(-1, 3)
        )
        self.faces = np.ascontiguousarray(
            np.asarray(self.faces, dtype=np.int32).reshape(-1, 3)
        )
        if self.faces.size:
            lo = int(self.faces.min())
            hi = int(self.faces.max())
            if lo < 0 or hi >= len(self.vertices):
                bad = lo if lo < 0 else hi
                raise FaceIndexError(
                    f"face index {bad} outside valid range 0..{len(self.vertices) - 1}"
                )
            f = self.faces
            dup = (f[:, 0] == f[:, 1]) | (f[:, 1] == f[:, 2]) | (f[:, 2] == f[:, 0])
            if dup.any():
                raise FaceIndexError(
                    f"face {int(np.flatnonzero(dup)[0])} repeats a vertex index"
                )

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def copy(self) -> "TriangleMesh":
        return TriangleMesh(self.vertices.copy(), self.faces.copy())


@dataclass
class MeshStats:
    """Global mesh statistics; mean_edge_length averages each undirected edge once."""

    mean_edge_length: float
    vertex_count: int
    face_count: int
    boundary_vertex_count: int


class MeshTopology:
    """Per-vertex ordered 1-rings, incident-face lists, and manifold flags.

    neighbors[i]    : ring of vertex i in fan order; a closed cycle for
                      interior manifold vertices, an open chain for boundary
                      vertices, sorted ascending where the fan is broken.
    vertex_faces[i] : incident faces of vertex i; for manifold vertices
                      ordered so face k sits between neighbors k and k+1.
    is_boundary     : True iff the fan is a single open chain.
    is_manifold_fan : True iff the incident faces form a single open or
                      closed fan.

    The structure is immutable after construction and safe to share across
    threads. `faces` keeps a reference to the defining face array so that
    consumers (filtering, curvature) need only positions plus a topology.
    """

    def __init__(self, faces, ring_flat, ring_indptr, face_flat, face_indptr,
                 is_boundary, is_manifold_fan):
        self.faces = faces
        self.ring_flat = ring_flat
        self.ring_indptr = ring_indptr
        self.face_flat = face_flat
        self.face_indptr = face_indptr
        self.is_boundary = is_boundary
        self.is_manifold_fan = is_manifold_fan
        self.ring_sizes = np.diff(ring_indptr)
        rp = ring_indptr.tolist()
        fp = face_indptr.tolist()
        self.neighbors = [ring_flat[rp[i]:rp[i + 1]] for i in range(len(rp) - 1)]
        self.vertex_faces = [face_flat[fp[i]:fp[i + 1]] for i in range(len(fp) - 1)]

    @property
    def vertex_count(self) -> int:
        return len(self.is_boundary)


def _try_directed_walk(starts, ends, face_ids):
    """Follow ring edges in face-winding order; None if winding is inconsistent."""
    m = len(starts)
    out = {}
    for u, w, f in zip(starts, ends, face_ids):
        if u in out:
            return None
        out[u] = (w, f)
    end_set = set(ends)
    heads = [u for u in out if u not in end_set]
    if len(heads) == 1:
        start = heads[0]
        closed = False
    elif not heads:
        start = min(out)
        closed = True
    else:
        return None
    ring = [start]
    face_order = []
    node = start
    while node in out and len(face_order) < m:
        node, f = out.pop(node)
        face_order.append(f)
        if node == start:
            break
        ring.append(node)
    if len(face_order) != m or out:
        return None
    if closed:
        if node != start or len(ring) != m:
            return None
        return ring, face_order, False
    if node == start or len(ring) != m + 1:
        return None
    return ring, face_order, True


def _try_undirected_walk(starts, ends, face_ids):
    """Winding-agnostic fan walk; None unless the fan is a single chain or cycle."""
    m = len(starts)
    adj = {}
    edge_face = {}
    for u, w, f in zip(starts, ends, face_ids):
        key = (u, w) if u < w else (w, u)
        if key in edge_face:
            return None  # two faces over the same ring edge
        edge_face[key] = f
        adj.setdefault(u, []).append(w)
        adj.setdefault(w, []).append(u)
    if any(len(nbrs) > 2 for nbrs in adj.values()):
        return None
    loose = sorted(node for node, nbrs in adj.items() if len(nbrs) == 1)
    if len(loose) == 2:
        start = loose[0]
        boundary = True
    elif not loose:
        start = min(adj)
        boundary = False
    else:
        return None
    ring = [start]
    face_order = []
    prev = None
    node = start
    for _ in range(m):
        nbrs = adj[node]
        if prev is None and not boundary:
            nxt = min(nbrs)
        else:
            cand = [x for x in nbrs if x != prev]
            if not cand:
                return None
            nxt = cand[0]
        key = (node, nxt) if node < nxt else (nxt, node)
        f = edge_face.pop(key, None)
        if f is None:
            return None
        face_order.append(f)
        prev, node = node, nxt
        if not boundary and node == start:
            break
        ring.append(node)
    if len(face_order) != m or edge_face:
        return None
    want = m + 1 if boundary else m
    if len(ring) != want:
        return None
    return ring, face_order, boundary


def _walk_fan(starts, ends, face_ids):
    """Order one vertex fan. Returns (ring, face_order, is_boundary, is_manifold)."""
    res = _try_directed_walk(starts, ends, face_ids)
    if res is None:
        res = _try_undirected_walk(starts, ends, face_ids)
    if res is None:
        ring = sorted(set(starts) | set(ends))
        return ring, sorted(face_ids), False, False
    ring, face_order, boundary = res
    return ring, face_order, boundary, True


def build_topology(mesh: TriangleMesh) -> MeshTopology:
    """Build ordered 1-rings by walking face adjacency around each vertex.

    Non-manifold configurations are flagged, never rejected: their neighbor
    list falls back to the sorted adjacent-vertex set so that adjacency
    (and hence coloring) stays complete.
    """
    n = mesh.vertex_count
    faces = mesh.faces
    if len(faces):
        center = faces.ravel()
        ring_start = faces[:, [1, 2, 0]].ravel()
        ring_end = faces[:, [2, 0, 1]].ravel()
        order = np.argsort(center, kind="stable")
        counts = np.bincount(center, minlength=n)
        su = ring_start[order].tolist()
        sw = ring_end[order].tolist()
        sf = (order // 3).tolist()
    else:
        counts = np.zeros(n, dtype=np.int64)
        su = sw = sf = []
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    ptr = indptr.tolist()

    ring_flat: list[int] = []
    face_flat: list[int] = []
    ring_indptr = np.zeros(n + 1, dtype=np.int64)
    face_indptr = np.zeros(n + 1, dtype=np.int64)
    is_boundary = np.zeros(n, dtype=bool)
    is_manifold = np.zeros(n, dtype=bool)
    for i in range(n):
        lo, hi = ptr[i], ptr[i + 1]
        if lo != hi:
            ring, face_order, boundary, manifold = _walk_fan(
                su[lo:hi], sw[lo:hi], sf[lo:hi]
            )
            ring_flat.extend(ring)
            face_flat.extend(face_order)
            is_boundary[i] = boundary
            is_manifold[i] = manifold
        ring_indptr[i + 1] = len(ring_flat)
        face_indptr[i + 1] = len(face_flat)
    return MeshTopology(
        faces=faces,
        ring_flat=np.asarray(ring_flat, dtype=np.int32),
        ring_indptr=ring_indptr,
        face_flat=np.asarray(face_flat, dtype=np.int32),
        face_indptr=face_indptr,
        is_boundary=is_boundary,
        is_manifold_fan=is_manifold,
    )


def unique_edges(faces: np.ndarray, return_counts: bool = False):
    """Undirected edge set of a face array, each edge once (sorted index pairs)."""
    e = np.concatenate([faces[:, [0, 1]], faces[:, [1, 2]], faces[:, [2, 0]]])
    e = np.sort(e, axis=1)
    return np.unique(e, axis=0, return_counts=return_counts)


def mean_edge_length(positions: np.ndarray, faces: np.ndarray) -> float:
    """Mean Euclidean length over unique undirected edges."""
    edges = unique_edges(faces)
    seg = positions[edges[:, 0]] - positions[edges[:, 1]]
    return float(np.sqrt((seg * seg).sum(axis=1)).mean())


def mesh_stats(mesh: TriangleMesh) -> MeshStats:
    """Vertex/face/boundary counts plus the mean edge length."""
    if mesh.face_count == 0:
        raise EmptyMeshError("mesh has no faces")
    edges, counts = unique_edges(mesh.faces, return_counts=True)
    seg = mesh.vertices[edges[:, 0]] - mesh.vertices[edges[:, 1]]
    lengths = np.sqrt((seg * seg).sum(axis=1))
    boundary_vertices = np.unique(edges[counts == 1])
    return MeshStats(
        mean_edge_length=float(lengths.mean()),
        vertex_count=mesh.vertex_count,
        face_count=mesh.face_count,
        boundary_vertex_count=int(len(boundary_vertices)),
    )
