"""Evaluation metrics: face-normal angle error, vertex distances, curvature
histograms with KL divergence, and the average convergence slope.

Conventions recorded in every aggregated report: the angle error (msae) is
the mean angle between corresponding face normals in degrees; the KL
divergence runs test||reference with 1e-12 additive smoothing; histograms
cover a symmetric range clipped at a percentile of |K| over interior
vertices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curvature import CurvatureField, face_normals, gaussian_curvature, \
    gaussian_curvature_energy
from .errors import ConnectivityMismatch, CountMismatch, EdgeMismatch, \
    EmptyFieldError, TraceTooShort
from .mesh import TriangleMesh, build_topology

_KLD_EPS = 1e-12


@dataclass
class MetricsReport:
    msae_deg: float
    gce: float
    d_mean: float
    d_max: float
    kld: float
    notes: str = ""


@dataclass(eq=False)
class Histogram:
    """bin_edges has B+1 ascending entries; probs has B entries summing to 1."""

    bin_edges: np.ndarray
    probs: np.ndarray


def _normal_angles(processed: TriangleMesh, original: TriangleMesh):
    if not np.array_equal(processed.faces, original.faces):
        raise ConnectivityMismatch("meshes differ in face connectivity")
    np_proc, _, deg_p = face_normals(processed)
    np_orig, _, deg_o = face_normals(original)
    ok = ~(deg_p | deg_o)
    cr = np.cross(np_proc[ok], np_orig[ok])
    sin_term = np.sqrt((cr * cr).sum(axis=1))
    cos_term = (np_proc[ok] * np_orig[ok]).sum(axis=1)
    return np.arctan2(sin_term, cos_term), int((~ok).sum())


def msae(processed: TriangleMesh, original: TriangleMesh) -> float:
    """Mean angle between corresponding face normals, in degrees.

    Faces that are degenerate in either mesh are excluded. Requires
    identical connectivity.
    """
    angles, _ = _normal_angles(processed, original)
    if len(angles) == 0:
        return 0.0
    return float(np.degrees(angles.mean()))


def vertex_distances(a: TriangleMesh, b: TriangleMesh):
    """(mean, max) Euclidean distance between index-corresponding vertices."""
    if a.vertex_count != b.vertex_count:
        raise CountMismatch(
            f"vertex counts differ: {a.vertex_count} vs {b.vertex_count}"
        )
    seg = a.vertices - b.vertices
    d = np.sqrt((seg * seg).sum(axis=1))
    return float(d.mean()), float(d.max())


def curvature_histogram(field: CurvatureField, bins: int = 200,
                        clip_percentile: float = 99.0,
                        bin_edges=None) -> Histogram:
    """Probability histogram of interior-vertex curvature.

    Without explicit bin_edges the range is [-c, c] with c the
    clip_percentile of |K| over interior vertices; out-of-range samples are
    clamped into the end bins.
    """
    if bins < 2:
        raise ValueError("bins must be >= 2")
    samples = field.curvature[~field.is_boundary]
    if len(samples) == 0:
        raise EmptyFieldError("no interior vertices to bin")
    if bin_edges is None:
        c = float(np.percentile(np.abs(samples), clip_percentile))
        if c == 0.0:
            c = float(np.abs(samples).max()) or 1.0
        bin_edges = np.linspace(-c, c, bins + 1)
    else:
        bin_edges = np.asarray(bin_edges, dtype=np.float64)
        if len(bin_edges) < 3 or np.any(np.diff(bin_edges) <= 0):
            raise ValueError("bin_edges must be ascending with >= 3 entries")
    nbins = len(bin_edges) - 1
    idx = np.clip(np.searchsorted(bin_edges, samples, side="right") - 1, 0, nbins - 1)
    counts = np.bincount(idx, minlength=nbins).astype(np.float64)
    return Histogram(bin_edges=bin_edges, probs=counts / counts.sum())


def kld(p: Histogram, q: Histogram) -> float:
    """KL(p || q) in nats with additive smoothing on both histograms."""
    if not np.array_equal(p.bin_edges, q.bin_edges):
        raise EdgeMismatch("histograms use different bin edges")
    pp = p.probs + _KLD_EPS
    qq = q.probs + _KLD_EPS
    pp = pp / pp.sum()
    qq = qq / qq.sum()
    return float((pp * np.log(pp / qq)).sum())


def acs(traces) -> float:
    """Average convergence slope of energy traces.

    Per trace with values E_0..E_N, each term t in 2..N-1 is
    log10(|E_{t+1}-E_t| / |E_t-E_{t-1}|) / (log10(t+1) - log10(t)); the
    result averages all defined terms over all traces. Terms whose
    successive differences vanish are skipped; returns NaN when every term
    is skipped.
    """
    values = []
    for trace in traces:
        e = np.asarray(trace.gce_per_iteration, dtype=np.float64)
        if len(e) < 4:
            raise TraceTooShort(f"trace has {len(e)} entries, need >= 4")
        diffs = np.abs(np.diff(e))
        t = np.arange(2, len(e) - 1)
        num = diffs[t]
        den = diffs[t - 1]
        ok = (num > 0) & (den > 0)
        if ok.any():
            tt = t[ok].astype(np.float64)
            values.append(np.log10(num[ok] / den[ok])
                          / (np.log10(tt + 1) - np.log10(tt)))
    if not values:
        return float("nan")
    return float(np.concatenate(values).mean())


def metrics_report(test: TriangleMesh, reference: TriangleMesh, *,
                   bins: int = 200, clip_percentile: float = 99.0) -> MetricsReport:
    """Full comparison of a processed mesh against its reference.

    Requires identical connectivity (shared topology is built once from the
    reference). gce and the histograms cover interior vertices of the test
    mesh; kld is KL(test || reference).
    """
    if test.vertex_count != reference.vertex_count:
        raise CountMismatch("vertex counts differ")
    angles, excluded = _normal_angles(test, reference)
    msae_deg = float(np.degrees(angles.mean())) if len(angles) else 0.0
    d_mean, d_max = vertex_distances(test, reference)
    topology = build_topology(reference)
    field_ref = gaussian_curvature(reference, topology)
    field_test = gaussian_curvature(test, topology)
    hist_ref = curvature_histogram(field_ref, bins=bins,
                                   clip_percentile=clip_percentile)
    hist_test = curvature_histogram(field_test, bin_edges=hist_ref.bin_edges)
    notes = (
        f"msae=mean face-normal angle, degrees, {excluded} degenerate faces "
        f"excluded; gce over interior vertices of test mesh; "
        f"kld=KL(test||reference), bins={bins}, "
        f"clip_percentile={clip_percentile}, eps={_KLD_EPS}"
    )
    return MetricsReport(
        msae_deg=msae_deg,
        gce=gaussian_curvature_energy(field_test),
        d_mean=d_mean,
        d_max=d_max,
        kld=kld(hist_test, hist_ref),
        notes=notes,
    )
