import numpy as np
import pytest

import gcfmesh as g
from gcfmesh import (
    FilterConfig,
    TriangleMesh,
    build_topology,
    gcf_filter,
    gcf_step,
    greedy_domain_decomposition,
    mesh_stats,
    min_projection_distance,
    moving_direction,
    neighbor_normal,
    vertex_normals,
)
from gcfmesh.errors import DegenerateNeighborhood

from bruteforce import reference_step
from conftest import random_meshes


def _closed_fan(center, ring):
    """Mesh made of one vertex surrounded by a closed fan of neighbors."""
    verts = np.vstack([center, ring])
    m = len(ring)
    faces = [(0, 1 + k, 1 + (k + 1) % m) for k in range(m)]
    return TriangleMesh(verts, faces)


def _grid_interior_vertex(mesh, n):
    # vertex at lattice (n//2, n//2) of an n-cell grid
    return (n // 2) * (n + 1) + n // 2


# --- moving direction -------------------------------------------------------


def test_moving_direction_pyramid_apex(square_pyramid):
    topo = build_topology(square_pyramid)
    d = moving_direction(4, square_pyramid.vertices, topo, 1.0)
    assert np.allclose(d, (0, 0, -1), atol=1e-15)


def test_moving_direction_none_at_centroid():
    mesh = g.grid(4)
    topo = build_topology(mesh)
    el = mesh_stats(mesh).mean_edge_length
    i = _grid_interior_vertex(mesh, 4)
    assert moving_direction(i, mesh.vertices, topo, el) is None


def test_moving_direction_displaced_above_plane():
    mesh = g.grid(4)
    i = _grid_interior_vertex(mesh, 4)
    verts = mesh.vertices.copy()
    verts[i, 2] += 0.5
    topo = build_topology(mesh)
    d = moving_direction(i, verts, topo, 1.0)
    assert np.allclose(d, (0, 0, -1), atol=1e-15)


# --- neighbor normal --------------------------------------------------------


def test_neighbor_normal_planar_ring():
    mesh = g.grid(4)
    topo = build_topology(mesh)
    i = _grid_interior_vertex(mesh, 4)
    for k in range(len(topo.neighbors[i])):
        n = neighbor_normal(i, k, mesh.vertices, topo, 1.0)
        assert n is not None
        assert abs(n[2]) == pytest.approx(1.0)
        assert n[0] == 0.0 and n[1] == 0.0


def test_neighbor_normal_collinear_none():
    center = (0.0, 0.0, 0.0)
    ring = [(1.0, 0, 0), (2.0, 0, 0), (3.0, 0, 0), (4.0, 0, 0)]
    fan = _closed_fan(center, ring)
    topo = build_topology(fan)
    for k in range(4):
        assert neighbor_normal(0, k, fan.vertices, topo, 1.0) is None


def test_neighbor_normal_cylinder_axial_neighbor():
    # plus-shaped ring on a unit cylinder: the axial neighbor's normal is
    # symmetric about the radial plane (tangential component exactly zero)
    # and radial in the fine-discretization limit
    delta, h = 0.1, 0.1
    center = (1.0, 0.0, 0.0)
    east = (np.cos(delta), np.sin(delta), 0.0)
    west = (np.cos(delta), -np.sin(delta), 0.0)
    up = (1.0, 0.0, h)
    down = (1.0, 0.0, -h)
    fan = _closed_fan(center, [east, up, west, down])
    topo = build_topology(fan)
    n_up = neighbor_normal(0, 1, fan.vertices, topo, 0.1)
    # brute-force oracle
    e1 = np.asarray(east) - np.asarray(up)
    e2 = np.asarray(west) - np.asarray(up)
    expect = np.cross(e1, e2)
    expect /= np.linalg.norm(expect)
    assert np.allclose(n_up, expect, atol=1e-15)
    assert n_up[1] == 0.0  # tangential component vanishes by symmetry
    assert abs(float(np.dot(n_up, (1, 0, 0)))) > 0.99


# --- minimum projection distance -------------------------------------------


def test_min_projection_zero_for_coplanar_ring():
    mesh = g.grid(4)
    topo = build_topology(mesh)
    i = _grid_interior_vertex(mesh, 4)
    el = mesh_stats(mesh).mean_edge_length
    normals, _ = vertex_normals(mesh, topo)
    assert min_projection_distance(i, mesh.vertices, topo, normals[i], el) == 0.0


def test_min_projection_zero_on_cube_crease():
    mesh = g.cube(4)
    topo = build_topology(mesh)
    el = mesh_stats(mesh).mean_edge_length
    normals, _ = vertex_normals(mesh, topo)
    on_crease = (np.abs(np.abs(mesh.vertices) - 1.0) < 1e-12).sum(axis=1) >= 2
    idx = np.flatnonzero(on_crease)
    assert len(idx)
    for i in idx[:8]:
        d = min_projection_distance(int(i), mesh.vertices, topo, normals[i], el)
        # brute-force pair enumeration
        ring = topo.neighbors[i]
        cands = [normals[i]]
        for k in range(len(ring)):
            nk = neighbor_normal(int(i), k, mesh.vertices, topo, el)
            if nk is not None:
                cands.append(nk)
        brute = min(
            abs(float(np.dot(nv, mesh.vertices[j] - mesh.vertices[i])))
            for nv in cands for j in ring
        )
        assert d == brute
        assert d == 0.0


def test_min_projection_zero_on_cylinder():
    mesh = g.cylinder(16, 8)
    topo = build_topology(mesh)
    el = mesh_stats(mesh).mean_edge_length
    normals, _ = vertex_normals(mesh, topo)
    interior_side = 5 * 16 + 3  # a mid-height side vertex
    assert not topo.is_boundary[interior_side]
    d = min_projection_distance(interior_side, mesh.vertices, topo,
                                normals[interior_side], el)
    assert d == 0.0


def test_degenerate_neighborhood_raises():
    center = (0.0, 0.0, 0.0)
    ring = [(1.0, 0, 0), (2.0, 0, 0), (3.0, 0, 0), (4.0, 0, 0)]
    fan = _closed_fan(center, ring)
    topo = build_topology(fan)
    with pytest.raises(DegenerateNeighborhood):
        min_projection_distance(0, fan.vertices, topo, None, 1.0)


# --- single step -------------------------------------------------------------


def test_step_planar_grid_fixed_point():
    mesh = g.grid(6)
    topo = build_topology(mesh)
    col = greedy_domain_decomposition(topo)
    out = gcf_step(mesh.vertices, topo, col)
    assert np.array_equal(out, mesh.vertices)


def test_step_closed_cylinder_fixed_point():
    mesh = g.cylinder(24, 12)
    topo = build_topology(mesh)
    col = greedy_domain_decomposition(topo)
    el = mesh_stats(mesh).mean_edge_length
    out = gcf_step(mesh.vertices, topo, col)
    moved = np.linalg.norm(out - mesh.vertices, axis=1)
    assert moved.max() <= 1e-9 * el


def test_step_degenerate_fan_unmoved():
    center = (0.0, 0.0, 0.0)
    ring = [(1.0, 0, 0), (2.0, 0, 0), (3.0, 0, 0), (4.0, 0, 0)]
    fan = _closed_fan(center, ring)
    topo = build_topology(fan)
    col = greedy_domain_decomposition(topo)
    out = gcf_step(fan.vertices, topo, col, edge_scale=1.0)
    assert np.array_equal(out, fan.vertices)


def test_step_displaced_vertex_matches_reference():
    mesh = g.grid(6)
    i = _grid_interior_vertex(mesh, 6)
    verts = mesh.vertices.copy()
    verts[i] += (0.0, 0.0, 0.4)
    mesh = TriangleMesh(verts, mesh.faces)
    topo = build_topology(mesh)
    col = greedy_domain_decomposition(topo)
    el = mesh_stats(mesh).mean_edge_length
    out = gcf_step(mesh.vertices, topo, col, edge_scale=el)
    expect = reference_step(mesh.vertices, topo, col, el)
    assert np.abs(out - expect).max() < 1e-12
    # the displaced vertex moved straight down, everything else stayed
    assert out[i, 2] < 0.4
    assert out[i, 0] == mesh.vertices[i, 0]
    others = np.ones(mesh.vertex_count, bool)
    others[i] = False
    assert np.array_equal(out[others], mesh.vertices[others])


def test_step_matches_reference_on_random_meshes():
    for mesh in random_meshes():
        topo = build_topology(mesh)
        col = greedy_domain_decomposition(topo)
        el = mesh_stats(mesh).mean_edge_length
        out = gcf_step(mesh.vertices, topo, col, edge_scale=el)
        expect = reference_step(mesh.vertices, topo, col, el)
        assert np.abs(out - expect).max() < 1e-12


def test_step_jacobi_single_domain_matches_reference():
    mesh = random_meshes()[1]
    topo = build_topology(mesh)
    col = g.single_domain_coloring(mesh.vertex_count)
    el = mesh_stats(mesh).mean_edge_length
    out = gcf_step(mesh.vertices, topo, col, edge_scale=el)
    expect = reference_step(mesh.vertices, topo, col, el)
    assert np.abs(out - expect).max() < 1e-12


# --- full filter -------------------------------------------------------------


def test_config_validation():
    with pytest.raises(ValueError):
        FilterConfig(iterations=0)
    with pytest.raises(ValueError):
        FilterConfig(iterations=1, threads=-1)


def test_one_iteration_equals_one_step():
    mesh = random_meshes()[0]
    topo = build_topology(mesh)
    col = greedy_domain_decomposition(topo)
    out, _ = gcf_filter(mesh, topo, col, FilterConfig(iterations=1))
    step = gcf_step(mesh.vertices, topo, col,
                    edge_scale=mesh_stats(mesh).mean_edge_length)
    assert np.array_equal(out.vertices, step)


def test_boundary_bitwise_frozen():
    base = g.grid(8)
    topo = build_topology(base)
    noisy = g.add_noise(base, topo, g.NoiseConfig(0.3, seed=5, mode="isotropic"))
    out, _ = gcf_filter(noisy, topo, greedy_domain_decomposition(topo),
                        FilterConfig(iterations=20))
    b = topo.is_boundary
    assert b.sum() == 32
    assert np.array_equal(out.vertices[b], noisy.vertices[b])
    assert np.array_equal(out.faces, noisy.faces)


def test_nonmanifold_frozen(bowtie):
    topo = build_topology(bowtie)
    col = greedy_domain_decomposition(topo)
    out, _ = gcf_filter(bowtie, topo, col, FilterConfig(iterations=5))
    assert np.array_equal(out.vertices, bowtie.vertices)


def test_trace_shape_and_head():
    mesh = g.icosphere(2)
    topo = build_topology(mesh)
    col = greedy_domain_decomposition(topo)
    noisy = g.add_noise(mesh, topo, g.NoiseConfig(0.3, seed=2))
    out, trace = gcf_filter(noisy, topo, col,
                            FilterConfig(iterations=7, capture_trace=True))
    assert len(trace.gce_per_iteration) == 8
    field = g.gaussian_curvature(noisy, topo)
    assert trace.gce_per_iteration[0] == pytest.approx(
        g.gaussian_curvature_energy(field), rel=1e-12
    )
    out2, none_trace = gcf_filter(noisy, topo, col, FilterConfig(iterations=7))
    assert none_trace is None
    assert np.array_equal(out2.vertices, out.vertices)


def test_noisy_sphere_energy_drops():
    mesh = g.icosphere(3)
    topo = build_topology(mesh)
    col = greedy_domain_decomposition(topo)
    noisy = g.add_noise(mesh, topo, g.NoiseConfig(0.3, seed=42))
    e_noisy = g.gaussian_curvature_energy(g.gaussian_curvature(noisy, topo))
    out, _ = gcf_filter(noisy, topo, col, FilterConfig(iterations=40))
    e_out = g.gaussian_curvature_energy(g.gaussian_curvature(out, topo))
    assert e_out < e_noisy


def test_thread_count_invariance():
    mesh = g.icosphere(3)
    topo = build_topology(mesh)
    col = greedy_domain_decomposition(topo)
    noisy = g.add_noise(mesh, topo, g.NoiseConfig(0.3, seed=9))
    results = [
        gcf_filter(noisy, topo, col,
                   FilterConfig(iterations=10, threads=t))[0].vertices
        for t in (1, 2, 8)
    ]
    assert np.array_equal(results[0], results[1])
    assert np.array_equal(results[0], results[2])


def test_feature_fixed_points_stay_exact():
    # a vertex whose ring admits a normal perpendicular to a ring edge is
    # exactly unmoved even while its surroundings change
    mesh = g.cube(6)
    topo = build_topology(mesh)
    col = greedy_domain_decomposition(topo)
    out, _ = gcf_filter(mesh, topo, col, FilterConfig(iterations=40))
    assert np.array_equal(out.vertices, mesh.vertices)
