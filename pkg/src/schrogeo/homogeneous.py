"""Curved Schrödinger geometries as group orbits in a pseudo-Euclidean space.

The bulk manifold is the orbit of the stabilizer group through a base point of
the quadric {G(Q, Q) = 2 lambda}, carrying a two-parameter family of Lorentz
metrics built from the ambient metric and the distinguished nilpotent Z0.  Its
conformal boundary is the projectivized null cone minus the locus Z0 X = 0,
which inherits a conformal Bargmann structure.  Everything here is verified
numerically: embeddings against chart formulas, curvature identities, Killing
and isotropy conditions, and the boundary-structure axioms.

Chart conventions: bulk points are (xh_1 .. xh_d, th, sh, rh) with rh > 0 the
defining function of the boundary; boundary points are (x_1 .. x_d, t, s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import numkernel as nk
from .ambient import (
    ChartEscapeError,
    GroupBlocks,
    GroupElement,
    ambient_gram,
    assemble_group_element,
    build_Z0,
    commutant_basis,
    flat_gram_matrix,
    sch_dimension,
    xi_vector,
)
from .geometry import (
    Chart,
    MetricField,
    OneForm,
    VectorField,
    covariant_derivative,
    exterior_wedge,
    gram_values,
    jet_components,
    lie_derivative_metric,
    ricci_scalar,
)
from .numkernel import ContractViolationError, Jet2, jet_value, rank_nullspace
from .report import CheckResult, VerificationReport

__all__ = [
    "BoundaryPointError",
    "EmbeddedPoint",
    "SchrodingerManifoldConfig",
    "boundary_chart",
    "boundary_embed_components",
    "boundary_f0",
    "boundary_isotropy_element",
    "boundary_metric",
    "boundary_structure",
    "boundary_xi",
    "bulk_boxes",
    "bulk_chart",
    "bulk_isotropy_element",
    "bulk_metric",
    "chart_from_ambient",
    "einstein_residual",
    "embed",
    "embed_components",
    "induced_metric",
    "integrability_residual",
    "isometry_check",
    "isotropy_check",
    "metric_recovery_residual",
    "negative_eigenvalue_count",
    "null_plane_boost",
    "nullfluid_residual",
    "schrodinger_axiom_audit",
    "theta_hat",
    "theta_hat_form",
    "xi_hat_consistency",
    "xi_hat_field",
]


class BoundaryPointError(ValueError):
    """Bulk operation evaluated at rh = 0; use the boundary functions."""


@dataclass(frozen=True)
class SchrodingerManifoldConfig:
    """Bulk geometry parameters: spatial dimension, quadric level lam < 0,
    and the clock-squared deformation strength mu."""

    d: int
    lam: float
    mu: float = 0.0

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"spatial dimension must be >= 1, got {self.d}")
        if not self.lam < 0:
            raise ValueError(f"bulk constructions need lam < 0, got {self.lam}")

    @property
    def scale(self) -> float:
        """sqrt(-2 lam), the radius of the ambient quadric."""
        return math.sqrt(-2.0 * self.lam)


def bulk_boxes(d: int) -> list[tuple[float, float]]:
    """Default sampling box: transverse coordinates moderate, rh kept away
    from both the boundary and large radii."""
    return [(-1.2, 1.2)] * (d + 2) + [(0.7, 2.2)]


def bulk_chart(d: int) -> Chart:
    names = tuple(f"xh{i + 1}" for i in range(d)) + ("th", "sh", "rh")
    return Chart(names, singular=lambda p: abs(p[d + 2]) < 1e-3)


def _flat_square(d: int, x) -> object:
    # g(x, x) on the d+2 flat block: spatial squares plus twice t*s
    out = x[d] * x[d + 1] * 2.0
    for i in range(d):
        out = out + x[i] * x[i]
    return out


def bulk_metric(cfg: SchrodingerManifoldConfig) -> MetricField:
    """The two-parameter Lorentz metric in the (xh, th, sh, rh) chart:

    (-2 lam / rh^2) [dx^2 + 2 dt ds + dr^2] - mu * (clock) x (clock),
    the clock being (-2 lam / rh^2) dt.
    """
    d, lam, mu = cfg.d, cfg.lam, cfg.mu
    n = d + 3

    def gram(p):
        rh = p[d + 2]
        a = (-2.0 * lam) / (rh * rh)
        rows = [[0.0] * n for _ in range(n)]
        for i in range(d):
            rows[i][i] = a
        rows[d][d + 1] = a
        rows[d + 1][d] = a
        rows[d + 2][d + 2] = a
        if mu != 0.0:
            rows[d][d] = 2.0 * lam * mu * a / (rh * rh)
        return rows

    return MetricField(bulk_chart(d), gram, (d + 2, 1))


def theta_hat_form(cfg: SchrodingerManifoldConfig) -> OneForm:
    """The bulk clock (-2 lam / rh^2) dt."""
    d, lam = cfg.d, cfg.lam
    n = d + 3

    def comps(p):
        rh = p[d + 2]
        out = [0.0] * n
        out[d] = (-2.0 * lam) / (rh * rh)
        return out

    return OneForm(bulk_chart(cfg.d), comps)


def xi_hat_field(cfg: SchrodingerManifoldConfig) -> VectorField:
    n = cfg.d + 3
    e = [0.0] * n
    e[cfg.d + 1] = 1.0
    return VectorField(bulk_chart(cfg.d), lambda p: list(e))


# ---------------------------------------------------------------------------
# the embedding and its inverse


def embed_components(cfg: SchrodingerManifoldConfig, p: Sequence) -> list:
    """Ambient coordinates of a bulk chart point, jet-friendly:

    Q = (sqrt(-2 lam)/rh) * (xh; -(xh*xh + rh^2)/2; 1).
    """
    d = cfg.d
    rh = p[d + 2]
    if not isinstance(rh, Jet2) and abs(rh) < 1e-8:
        raise BoundaryPointError("rh = 0 is a boundary point")
    scale = cfg.scale / rh
    xx = _flat_square(d, p)
    comps = [scale * p[i] for i in range(d + 2)]
    comps.append(scale * (-0.5) * (xx + rh * rh))
    comps.append(scale)
    return comps


@dataclass(frozen=True)
class EmbeddedPoint:
    """Ambient image of a bulk chart point with its (X, Y) decomposition
    Q = X + lam * Y in the q = 0 gauge, and the constraint residuals."""

    chart_point: tuple
    Q: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    q: float
    residuals: dict = field(default_factory=dict)


def embed(
    cfg: SchrodingerManifoldConfig, p: Sequence[float], validate: bool = True
) -> EmbeddedPoint:
    d, lam = cfg.d, cfg.lam
    p = [float(v) for v in p]
    rh = p[d + 2]
    if abs(rh) < 1e-8:
        raise BoundaryPointError("rh = 0 is a boundary point")
    Q = np.array([float(v) for v in embed_components(cfg, p)])
    r = rh / cfg.scale
    xx = float(_flat_square(d, p))
    X = np.zeros(d + 4)
    X[: d + 2] = np.asarray(p[: d + 2]) / r
    X[d + 2] = -0.5 * xx / r
    X[d + 3] = 1.0 / r
    Y = np.zeros(d + 4)
    Y[d + 2] = r
    G = ambient_gram(d)
    Z0 = build_Z0(d).matrix
    res = {
        "quadric": abs(float(Q @ G @ Q) - 2.0 * lam) / abs(2.0 * lam),
        "decomposition": float(np.abs(Q - (X + lam * Y)).max()),
        "XX": abs(float(X @ G @ X)),
        "YY": abs(float(Y @ G @ Y)),
        "XY": abs(float(X @ G @ Y) - 1.0),
        "Z0Y": float(np.abs(Z0 @ Y).max()),
        "Z0Q_norm": float(np.abs(Z0 @ Q).max()),
    }
    if validate:
        worst = max(v for k, v in res.items() if k != "Z0Q_norm")
        if worst > 1e-12:
            raise ContractViolationError(f"embedding constraints violated: {res}")
        if res["Z0Q_norm"] <= 1e-6:
            raise ContractViolationError("Z0 Q vanished at an interior point")
    return EmbeddedPoint(tuple(p), Q, X, Y, 0.0, res)


def chart_from_ambient(cfg: SchrodingerManifoldConfig, Q, guard: float = 1e-8) -> list:
    """Invert the embedding on the rh > 0 sheet; jet-friendly."""
    d = cfg.d
    last = Q[d + 3]
    if jet_value(last).real <= guard:
        raise ChartEscapeError("point left the rh > 0 sheet")
    out = [Q[i] / last for i in range(d + 2)]
    out.append(cfg.scale / last)
    return out


# ---------------------------------------------------------------------------
# induced tensors, dual path


def _embedding_jets(cfg, p):
    return jet_components(lambda q: embed_components(cfg, q), p)


def induced_metric(
    cfg: SchrodingerManifoldConfig,
    p: Sequence[float],
    delta: Sequence[float],
    delta2: Sequence[float],
) -> dict:
    """Metric on a pair of chart tangents, via the ambient pullback (path A)
    and the chart Gram (path B)."""
    d = cfg.d
    delta = np.asarray(delta, dtype=float)
    delta2 = np.asarray(delta2, dtype=float)
    vals, jac, _ = _embedding_jets(cfg, p)
    Q, J = vals.real, jac.real
    G = ambient_gram(d)
    dq = J @ delta
    dq2 = J @ delta2
    Z0 = build_Z0(d).matrix
    th_row = -(Q @ G @ Z0) @ J
    ambient = float(dq @ G @ dq2) - cfg.mu * float(th_row @ delta) * float(
        th_row @ delta2
    )
    chart = float(delta @ gram_values(bulk_metric(cfg), p) @ delta2)
    return {"ambient": ambient, "chart": chart, "difference": abs(ambient - chart)}


def theta_hat(cfg: SchrodingerManifoldConfig, p: Sequence[float], delta) -> dict:
    """Clock value on a chart tangent: ambient -G(Q, Z0 dQ) vs chart row."""
    d = cfg.d
    delta = np.asarray(delta, dtype=float)
    vals, jac, _ = _embedding_jets(cfg, p)
    Q, J = vals.real, jac.real
    G = ambient_gram(d)
    Z0 = build_Z0(d).matrix
    ambient = float(-(Q @ G @ Z0) @ (J @ delta))
    row = np.array([float(c) for c in theta_hat_form(cfg).components(list(p))])
    chart = float(row @ delta)
    return {"ambient": ambient, "chart": chart, "difference": abs(ambient - chart)}


def xi_hat_consistency(cfg: SchrodingerManifoldConfig, p: Sequence[float]) -> dict:
    """The vertical field: ambient Z0 Q against the push-forward of d/dsh,
    its norm, nullity, and Killing residual."""
    d = cfg.d
    vals, jac, _ = _embedding_jets(cfg, p)
    Q, J = vals.real, jac.real
    Z0 = build_Z0(d).matrix
    push = J[:, d + 1]
    metric = bulk_metric(cfg)
    g0 = gram_values(metric, p)
    killing = float(np.abs(lie_derivative_metric(metric, xi_hat_field(cfg), p)).max())
    return {
        "pushforward": float(np.abs(Z0 @ Q - push).max()),
        "norm": float(np.abs(Z0 @ Q).max()),
        "nullity": abs(float(g0[d + 1, d + 1])),
        "killing": killing,
    }


# ---------------------------------------------------------------------------
# curvature identities


def einstein_residual(
    cfg: SchrodingerManifoldConfig, p: Sequence[float]
) -> tuple[np.ndarray, np.ndarray]:
    """(Ric + (d+2) g, predicted multiple of g) for the undeformed metric.

    The two agree entrywise; the common value vanishes exactly when
    lam = -1/2, which is the normalization making the metric Einstein.
    """
    if cfg.mu != 0.0:
        raise ContractViolationError("einstein_residual expects mu = 0")
    d, lam = cfg.d, cfg.lam
    metric = bulk_metric(cfg)
    ric, _ = ricci_scalar(metric, p)
    g0 = gram_values(metric, p)
    computed = ric + (d + 2.0) * g0
    predicted = ((d + 2.0) * (1.0 + 2.0 * lam) / (2.0 * lam)) * g0
    return computed, predicted


def nullfluid_residual(
    cfg: SchrodingerManifoldConfig, p: Sequence[float]
) -> tuple[np.ndarray, float]:
    """Residual of Ric(g) - ((d+2)/(2 lam)) g + mu (d+4)/(2 lam) clock^2,
    plus the cosmological constant (d+1)(d+2)/(4 lam) of the equivalent
    Einstein-with-sources form."""
    d, lam, mu = cfg.d, cfg.lam, cfg.mu
    metric = bulk_metric(cfg)
    ric, _ = ricci_scalar(metric, p)
    g0 = gram_values(metric, p)
    row = np.array([float(c) for c in theta_hat_form(cfg).components(list(p))])
    residual = (
        ric
        - ((d + 2.0) / (2.0 * lam)) * g0
        + (mu * (d + 4.0) / (2.0 * lam)) * np.outer(row, row)
    )
    lam_cos = (d + 1.0) * (d + 2.0) / (4.0 * lam)
    return residual, lam_cos


def metric_recovery_residual(d: int, p: Sequence[float]) -> float:
    """Entrywise gap between the (lam, mu) = (-1/2, 1) chart Gram and the
    reference form (1/r^2)[dx^2 + 2 dt ds + dr^2 - dt^2/r^2]."""
    cfg = SchrodingerManifoldConfig(d, -0.5, 1.0)
    g0 = gram_values(bulk_metric(cfg), p)
    r = float(p[d + 2])
    inv2 = 1.0 / (r * r)
    ref = np.zeros((d + 3, d + 3))
    for i in range(d):
        ref[i, i] = inv2
    ref[d, d + 1] = ref[d + 1, d] = inv2
    ref[d + 2, d + 2] = inv2
    ref[d, d] = -inv2 * inv2
    return float(np.abs(g0 - ref).max())


def negative_eigenvalue_count(cfg: SchrodingerManifoldConfig, p: Sequence[float]) -> int:
    g0 = gram_values(bulk_metric(cfg), p)
    return int((np.linalg.eigvalsh(g0) < 0.0).sum())


def integrability_residual(cfg: SchrodingerManifoldConfig, p: Sequence[float]) -> float:
    """max |clock ^ d(clock)| at p."""
    _, wedge = exterior_wedge(theta_hat_form(cfg), p)
    return float(np.abs(wedge).max())


# ---------------------------------------------------------------------------
# isometries


def null_plane_boost(d: int, c: float) -> np.ndarray:
    """Ambient isometry scaling the extra null pair by (c, 1/c).  It
    preserves G but not Z0, so it moves the clock: the standard negative
    control for the deformed metrics."""
    if c == 0.0:
        raise ValueError("scale must be nonzero")
    A = np.eye(d + 4)
    A[d + 2, d + 2] = c
    A[d + 3, d + 3] = 1.0 / c
    return A


def isometry_check(
    cfg: SchrodingerManifoldConfig,
    element,
    samples: int = 10,
    seed: int = 0,
    tol: float = 1e-8,
) -> dict:
    """Pull the chart metric back through the ambient action of ``element``
    (a group element or a raw ambient matrix) and compare.

    Returns max residuals over the samples that stayed on the chart sheet:
    metric preservation, quadric preservation, and the Y-constraint drift.
    """
    d = cfg.d
    A = element.matrix if isinstance(element, GroupElement) else np.asarray(element)
    G = ambient_gram(d)
    Z0 = build_Z0(d).matrix
    metric = bulk_metric(cfg)
    sampler = nk.SeededSampler(seed, bulk_boxes(d))

    def moved(q):
        comps = embed_components(cfg, q)
        mixed = []
        for a_idx in range(d + 4):
            val = None
            for b_idx in range(d + 4):
                coeff = A[a_idx, b_idx]
                if coeff != 0.0:
                    term = coeff * comps[b_idx]
                    val = term if val is None else val + term
            mixed.append(0.0 if val is None else val)
        return chart_from_ambient(cfg, mixed)

    metric_r = quadric_r = zy_r = 0.0
    used = escapes = 0
    while used < samples and escapes < 50:
        p = sampler.sample()
        ep = embed(cfg, p)
        Q2 = A @ ep.Q
        quadric_r = max(
            quadric_r, abs(float(Q2 @ G @ Q2) - 2.0 * cfg.lam) / abs(2.0 * cfg.lam)
        )
        zy_r = max(zy_r, float(np.abs(Z0 @ (A @ ep.Y)).max()))
        try:
            vals, jac, _ = jet_components(moved, p)
        except ChartEscapeError:
            escapes += 1
            continue
        used += 1
        image = [float(v) for v in vals.real]
        pulled = jac.real.T @ gram_values(metric, image) @ jac.real
        metric_r = max(metric_r, float(np.abs(pulled - gram_values(metric, p)).max()))
    if used < samples:
        raise ChartEscapeError(
            f"only {used}/{samples} samples stayed on the chart sheet"
        )
    return {
        "metric_residual": metric_r,
        "quadric_residual": quadric_r,
        "zy_residual": zy_r,
        "samples": used,
        "isometry": metric_r < tol,
    }


# ---------------------------------------------------------------------------
# isotropy


def origin_point(cfg: SchrodingerManifoldConfig) -> list[float]:
    """Chart coordinates of the base point (0, ..., 0, rh = sqrt(-2 lam)),
    whose ambient image is (0, ..., 0, lam, 1)."""
    return [0.0] * (cfg.d + 2) + [cfg.scale]


def bulk_isotropy_element(
    cfg: SchrodingerManifoldConfig, R: np.ndarray, u: np.ndarray, a: float
) -> GroupElement:
    """Stabilizer element of the bulk base point, parametrized by a rotation,
    a boost vector, and an expansion strength."""
    d, lam = cfg.d, cfg.lam
    R = np.asarray(R, dtype=float)
    u = np.asarray(u, dtype=float)
    n = d + 2
    L = np.zeros((n, n))
    L[:d, :d] = R
    L[:d, d] = u
    L[d, d] = 1.0
    L[d + 1, :d] = -(R.T @ u)
    L[d + 1, d] = -0.5 * float(u @ u) + lam * a * a
    L[d + 1, d + 1] = 1.0
    xi = xi_vector(d)
    blocks = GroupBlocks(
        L=L, B=lam * a * xi, C=-lam * a * xi, a=a, b=1.0, dd=0.0, e=1.0
    )
    return assemble_group_element(blocks, d)


def boundary_isotropy_element(
    d: int, R: np.ndarray, v: np.ndarray, a: float, e: float
) -> GroupElement:
    """Stabilizer element of the boundary base ray, parametrized by a
    rotation, a velocity, an expansion strength, and a dilation factor."""
    R = np.asarray(R, dtype=float)
    v = np.asarray(v, dtype=float)
    if e == 0.0:
        raise ValueError("dilation factor must be nonzero")
    n = d + 2
    L = np.zeros((n, n))
    L[:d, :d] = R
    L[:d, d] = -(R @ v) / e
    L[d, d] = 1.0 / e
    L[d + 1, :d] = v
    L[d + 1, d] = -0.5 * float(v @ v) / e
    L[d + 1, d + 1] = e
    blocks = GroupBlocks(
        L=L, B=np.zeros(n), C=np.zeros(n), a=a, b=1.0 / e, dd=0.0, e=e
    )
    return assemble_group_element(blocks, d)


def isotropy_check(
    cfg: SchrodingerManifoldConfig, samples: int = 5, seed: int = 0
) -> dict:
    """Dimension counts of the linearized stabilizers of the bulk base point
    and of the boundary base ray, plus sampled finite stabilizer elements."""
    d = cfg.d
    basis = commutant_basis(d)
    n_alg = len(basis)
    Q0 = np.zeros(d + 4)
    Q0[d + 2] = cfg.lam
    Q0[d + 3] = 1.0
    bulk_map = np.column_stack([b.matrix @ Q0 for b in basis])
    rank_bulk, _ = rank_nullspace(bulk_map)
    X0 = np.zeros(d + 4)
    X0[d + 3] = 1.0
    keep = [i for i in range(d + 4) if i != d + 3]
    boundary_map = np.column_stack([(b.matrix @ X0)[keep] for b in basis])
    rank_boundary, _ = rank_nullspace(boundary_map)

    rng = np.random.default_rng(seed)
    bulk_res = boundary_res = 0.0
    for k in range(samples):
        Rm, _ = np.linalg.qr(rng.normal(size=(d, d)))
        u = 0.7 * rng.normal(size=d)
        a = 0.8 * rng.normal()
        ge = bulk_isotropy_element(cfg, Rm, u, a)
        bulk_res = max(bulk_res, float(np.abs(ge.matrix @ Q0 - Q0).max()))
        v = 0.7 * rng.normal(size=d)
        e = float(np.exp(0.5 * rng.normal()))
        if k % 2:
            e = -e
        ge2 = boundary_isotropy_element(d, Rm, v, a, e)
        boundary_res = max(
            boundary_res, float(np.abs(ge2.matrix @ X0 - e * X0).max())
        )
    return {
        "algebra_dim": n_alg,
        "bulk_isotropy_dim": n_alg - rank_bulk,
        "bulk_isotropy_expected": d * (d + 1) // 2 + 1,
        "bulk_space_dim": rank_bulk,
        "boundary_isotropy_dim": n_alg - rank_boundary,
        "boundary_isotropy_expected": (d * d + d + 4) // 2,
        "boundary_space_dim": rank_boundary,
        "bulk_fix_residual": bulk_res,
        "boundary_fix_residual": boundary_res,
    }


# ---------------------------------------------------------------------------
# the boundary: projectivized null cone


def boundary_chart(d: int) -> Chart:
    names = tuple(f"x{i + 1}" for i in range(d)) + ("t", "s")
    return Chart(names)


def boundary_embed_components(d: int, p: Sequence) -> list:
    """Normalized ray representative (x; t; s; -g(x,x)/2; 1), jet-friendly."""
    xx = _flat_square(d, p)
    return [p[i] for i in range(d + 2)] + [-0.5 * xx, 1.0]


def _section_jacobian(d: int, p: Sequence) -> list[list]:
    """d(representative)/d(chart), rows indexed by ambient component."""
    g = flat_gram_matrix(d)
    n = d + 2
    rows = [[1.0 if a == b else 0.0 for b in range(n)] for a in range(n)]
    grad = []
    for a in range(n):
        val = None
        for b in range(n):
            if g[a, b] != 0.0:
                term = g[a, b] * p[b]
                val = term if val is None else val + term
        grad.append(-val)
    rows.append(grad)
    rows.append([0.0] * n)
    return rows


def boundary_f0(d: int, X) -> object:
    """The degree-2 normalizer: squared pairings of X with the two null
    directions that build Z0."""
    sn = build_Z0(d)
    G = ambient_gram(d)
    gp = G @ sn.P
    gq = G @ sn.Q
    xp = None
    xq = None
    for a in range(d + 4):
        if gp[a] != 0.0:
            term = gp[a] * X[a]
            xp = term if xp is None else xp + term
        if gq[a] != 0.0:
            term = gq[a] * X[a]
            xq = term if xq is None else xq + term
    return xp * xp + xq * xq


def boundary_metric(d: int) -> MetricField:
    """Quotient metric G(dX, dX) / F0 contracted through the section
    Jacobian; no chart shortcut, the flat form emerges numerically."""
    G = ambient_gram(d)
    n = d + 2
    pairs = [(a, b) for a in range(d + 4) for b in range(d + 4) if G[a, b] != 0.0]

    def gram(p):
        X = boundary_embed_components(d, p)
        J = _section_jacobian(d, p)
        f0 = boundary_f0(d, X)
        rows = []
        for a in range(n):
            row = []
            for b in range(n):
                val = None
                for A, B in pairs:
                    ja = J[A][a]
                    jb = J[B][b]
                    if isinstance(ja, float) and ja == 0.0:
                        continue
                    if isinstance(jb, float) and jb == 0.0:
                        continue
                    term = G[A, B] * ja * jb
                    val = term if val is None else val + term
                row.append(0.0 if val is None else val / f0)
            rows.append(row)
        return rows

    return MetricField(boundary_chart(d), gram, (d + 1, 1))


def theta_f0_form(d: int) -> OneForm:
    """Quotient clock -G(X, Z0 dX) / F0 through the section Jacobian."""
    G = ambient_gram(d)
    Z0 = build_Z0(d).matrix
    M = G @ Z0
    n = d + 2
    nz = [(a, b) for a in range(d + 4) for b in range(d + 4) if M[a, b] != 0.0]

    def comps(p):
        X = boundary_embed_components(d, p)
        J = _section_jacobian(d, p)
        f0 = boundary_f0(d, X)
        # u_B = (X^T G Z0)_B, then contract with the Jacobian column
        u = [None] * (d + 4)
        for a, b in nz:
            term = M[a, b] * X[a]
            u[b] = term if u[b] is None else u[b] + term
        out = []
        for c in range(n):
            val = None
            for b in range(d + 4):
                ub = u[b]
                jb = J[b][c]
                if ub is None or (isinstance(jb, float) and jb == 0.0):
                    continue
                term = ub * jb
                val = term if val is None else val + term
            out.append(0.0 if val is None else -val / f0)
        return out

    return OneForm(boundary_chart(d), comps)


def boundary_xi(d: int) -> VectorField:
    e = [0.0] * (d + 2)
    e[d + 1] = 1.0
    return VectorField(boundary_chart(d), lambda p: list(e))


def boundary_structure(
    d: int, samples: int = 20, seed: int = 0, tol: float = 1e-8
) -> VerificationReport:
    """The conformal Bargmann structure of the boundary, checked on seeded
    samples: homogeneity of the normalizer, closed clock, parallel null
    vertical field, one-dimensional cone-form kernel along the ray, and
    conformal flatness with a factor depending on time only."""
    report = VerificationReport()
    G = ambient_gram(d)
    Z0 = build_Z0(d).matrix
    metric = boundary_metric(d)
    clock = theta_f0_form(d)
    xi = boundary_xi(d)
    flat = flat_gram_matrix(d)
    sampler = nk.SeededSampler(seed, [(-1.2, 1.2)] * (d + 2))
    pts = sampler.points(samples)

    scale_r = closed_r = par_r = null_r = 0.0
    xi_amb_r = 0.0
    kernel_dims = set()
    angle_r = 0.0
    conf_r = 0.0
    min_f0 = math.inf
    rng = np.random.default_rng(seed + 1)
    for p in pts:
        X = np.array([float(v) for v in boundary_embed_components(d, p)])
        J = np.array(
            [[float(v) for v in row] for row in _section_jacobian(d, p)]
        )
        f0 = float(boundary_f0(d, X))
        min_f0 = min(min_f0, f0)
        # degree-2 homogeneity: the quotient value is blind to the scale of
        # the representative
        v1 = J @ rng.normal(size=d + 2)
        v2 = J @ rng.normal(size=d + 2)
        base = float(v1 @ G @ v2) / f0
        alpha = 3.7
        scaled = float((alpha * v1) @ G @ (alpha * v2)) / float(
            boundary_f0(d, alpha * X)
        )
        scale_r = max(scale_r, abs(base - scaled))

        dw, _ = exterior_wedge(clock, p)
        closed_r = max(closed_r, float(np.abs(dw).max()))
        par_r = max(par_r, float(np.abs(covariant_derivative(metric, xi, p)).max()))
        g0 = gram_values(metric, p)
        null_r = max(null_r, abs(float(g0[d + 1, d + 1])))
        xi_amb_r = max(xi_amb_r, float(np.abs(Z0 @ X - J[:, d + 1]).max()))

        # cone-form kernel at an off-section representative
        alpha2 = float(rng.uniform(0.4, 2.5)) * (1.0 if rng.uniform() < 0.5 else -1.0)
        Xa = alpha2 * X
        _, tangent = rank_nullspace((Xa @ G).reshape(1, -1))
        K = tangent @ G @ tangent.T
        rank_k, null_k = rank_nullspace(K)
        kernel_dims.add(tangent.shape[0] - rank_k)
        if null_k.shape[0]:
            vec = null_k[0] @ tangent
            xhat = Xa / np.linalg.norm(Xa)
            angle_r = max(
                angle_r,
                float(np.linalg.norm(vec - (vec @ xhat) * xhat) / np.linalg.norm(vec)),
            )

        factor = float((g0 * flat).sum() / (flat * flat).sum())
        conf_r = max(conf_r, float(np.abs(g0 - factor * flat).max()))

    # the conformal factor varies with t but not with x or s
    t_vals = (-0.9, -0.2, 0.5, 1.1)
    spread_within = 0.0
    factors_by_t = []
    for tv in t_vals:
        facs = []
        for _ in range(5):
            q = list(rng.uniform(-1.2, 1.2, size=d + 2))
            q[d] = tv
            g0 = gram_values(metric, q)
            facs.append(float((g0 * flat).sum() / (flat * flat).sum()))
        spread_within = max(spread_within, max(facs) - min(facs))
        factors_by_t.append(sum(facs) / len(facs))
    spread_across = max(factors_by_t) - min(factors_by_t)

    meta = {"samples": samples, "seed": seed, "min_f0": min_f0}
    rows = [
        ("scale_invariance", scale_r, 1e-12, "quotient value independent of the representative scale"),
        ("clock_closed", closed_r, 1e-9, "d(clock) = 0 on the boundary"),
        ("xi_parallel", par_r, tol, "nabla xi = 0 for the quotient metric"),
        ("xi_null", null_r, tol, "g(xi, xi) = 0"),
        ("xi_matches_ambient", xi_amb_r, 1e-12, "Z0 X equals the push-forward of d/ds"),
        ("conformal_to_flat", conf_r, 1e-9, "quotient metric proportional to the flat Gram"),
        ("factor_time_only", spread_within, 1e-12, "conformal factor constant at fixed t"),
    ]
    for name, resid, tl, claim in rows:
        report.add(
            CheckResult(
                name=name,
                status="PASS" if resid < tl else "FAIL",
                residual=resid,
                tolerance=tl,
                claim=claim,
                extra=dict(meta),
            )
        )
    kernel_ok = kernel_dims == {1} and angle_r < tol
    report.add(
        CheckResult(
            name="cone_kernel",
            status="PASS" if kernel_ok else "FAIL",
            residual=angle_r,
            tolerance=tol,
            claim="cone form degenerates exactly along the ray direction",
            extra={**meta, "kernel_dims": sorted(kernel_dims)},
        )
    )
    report.add(
        CheckResult(
            name="factor_varies_with_t",
            status="PASS" if spread_across > 1e-3 else "FAIL",
            residual=spread_across,
            tolerance=1e-3,
            claim="conformal factor genuinely depends on t",
            extra=dict(meta),
        )
    )
    return report


# ---------------------------------------------------------------------------
# the axiom audit


def _two_scale_ratio(values: dict[float, float]) -> float:
    hi, lo = max(values), min(values)
    return values[hi] / values[lo] if values[lo] else math.inf


def schrodinger_axiom_audit(
    cfg: SchrodingerManifoldConfig,
    samples: int = 10,
    seed: int = 0,
    tol: float = 1e-8,
) -> VerificationReport:
    """Audit the three defining conditions of the asymptotic structure.

    1. The vertical Killing field extends to the boundary vertical field.
    2. The inverse metric approaches mu * (vertical)^2 at rate rh^2, with
       the normalization mu = 1.
    3. Removing the clock-squared term yields the undeformed metric, which
       is Einstein exactly at lam = -1/2 and induces the flat structure at
       the boundary.

    Statuses record whether each axiom holds for this (lam, mu); residuals
    and ratios are carried in ``extra`` for the audit trail.
    """
    d, lam, mu = cfg.d, cfg.lam, cfg.mu
    report = VerificationReport()
    metric = bulk_metric(cfg)
    plus_cfg = SchrodingerManifoldConfig(d, lam, 0.0)
    plus = bulk_metric(plus_cfg)
    flat = flat_gram_matrix(d)
    n = d + 3
    sampler = nk.SeededSampler(seed, bulk_boxes(d))
    pts = sampler.points(samples)
    transverse = nk.SeededSampler(seed + 1, [(-1.2, 1.2)] * (d + 2)).points(samples)

    # axiom 1: vertical field is null and Killing, and the normalized
    # embedding converges to the boundary representative at rate rh^2
    killing = nullity = 0.0
    for p in pts:
        res = xi_hat_consistency(cfg, p)
        killing = max(killing, res["killing"], res["pushforward"])
        nullity = max(nullity, res["nullity"])
    gaps = {}
    for rh in (1e-2, 1e-3):
        worst = 0.0
        for q in transverse:
            Q = np.array(
                [float(v) for v in embed_components(cfg, list(q) + [rh])]
            )
            ray = Q / Q[d + 3]
            bnd = np.array([float(v) for v in boundary_embed_components(d, q)])
            worst = max(worst, float(np.abs(ray - bnd).max()))
        gaps[rh] = worst
    ratio1 = _two_scale_ratio(gaps)
    ok1 = killing < tol and nullity < tol and 80.0 <= ratio1 <= 120.0
    report.add(
        CheckResult(
            name="axiom1_vertical_extension",
            status="PASS" if ok1 else "FAIL",
            residual=max(killing, nullity),
            tolerance=tol,
            claim="null Killing vertical field extends to the boundary vertical",
            extra={"axiom": 1, "decay_ratio": ratio1, "gaps": {str(k): v for k, v in gaps.items()}},
        )
    )

    # axiom 2: inverse metric minus mu * (vertical)^2 decays at rate rh^2,
    # and the deformation is normalized to mu = 1
    E = np.zeros((n, n))
    E[d + 1, d + 1] = mu
    decay = {}
    for rh in (1e-2, 1e-3):
        worst = 0.0
        for q in transverse:
            ginv = np.linalg.inv(gram_values(metric, list(q) + [rh]))
            worst = max(worst, float(np.abs(ginv - E).max()))
        decay[rh] = worst
    ratio2 = _two_scale_ratio(decay)
    normalized = abs(mu - 1.0) < 1e-12
    ok2 = 80.0 <= ratio2 <= 120.0 and normalized
    report.add(
        CheckResult(
            name="axiom2_inverse_metric",
            status="PASS" if ok2 else "FAIL",
            residual=decay[1e-3],
            tolerance=None,
            claim="inverse metric approaches the squared vertical with weight 1",
            extra={
                "axiom": 2,
                "decay_ratio": ratio2,
                "normalized": normalized,
                "mu": mu,
            },
        )
    )

    # axiom 3: adding back the clock square recovers the undeformed metric,
    # which must be Einstein and induce the flat structure at rh = 0
    identity_r = einstein_self = einstein_zero = 0.0
    for p in pts:
        g0 = gram_values(metric, p)
        row = np.array([float(c) for c in theta_hat_form(cfg).components(list(p))])
        gp = gram_values(plus, p)
        identity_r = max(
            identity_r, float(np.abs(g0 + mu * np.outer(row, row) - gp).max())
        )
        computed, predicted = einstein_residual(plus_cfg, p)
        einstein_self = max(einstein_self, float(np.abs(computed - predicted).max()))
        einstein_zero = max(einstein_zero, float(np.abs(computed).max()))
    report.add(
        CheckResult(
            name="axiom3_deformation_identity",
            status="PASS" if identity_r < 1e-12 else "FAIL",
            residual=identity_r,
            tolerance=1e-12,
            claim="metric plus mu clock^2 equals the undeformed metric",
            extra={"axiom": 3},
        )
    )
    factor = (d + 2.0) * (1.0 + 2.0 * lam) / (2.0 * lam)
    report.add(
        CheckResult(
            name="axiom3_einstein",
            status="PASS" if einstein_zero < tol else "FAIL",
            residual=einstein_zero,
            tolerance=tol,
            claim="undeformed metric satisfies Ric = -(d+2) g",
            extra={
                "axiom": 3,
                "identity_residual": einstein_self,
                "predicted_factor": factor,
            },
        )
    )
    rh = 1e-3
    ci = 0.0
    for q in transverse:
        gp = gram_values(plus, list(q) + [rh])
        block = (rh * rh) * gp[: d + 2, : d + 2]
        ci = max(ci, float(np.abs(block - flat).max()))
    ci_tol = max(tol, 10.0 * rh * rh)
    report.add(
        CheckResult(
            name="axiom3_conformal_infinity",
            status="PASS" if ci < ci_tol else "FAIL",
            residual=ci,
            tolerance=ci_tol,
            claim="rescaled metric induces the flat structure at the boundary",
            extra={"axiom": 3},
        )
    )

    # defining function: rh positive on the chart, gradient of fixed
    # nonzero length -1/(2 lam) for the rescaled metric
    grad_r = 0.0
    for p in pts:
        ginv = np.linalg.inv(gram_values(metric, p))
        val = ginv[n - 1, n - 1] / (float(p[n - 1]) ** 2)
        grad_r = max(grad_r, abs(val - (-1.0 / (2.0 * lam))))
    report.add(
        CheckResult(
            name="defining_function",
            status="PASS" if grad_r < tol else "FAIL",
            residual=grad_r,
            tolerance=tol,
            claim="rh is a defining function with |d rh|^2 = -1/(2 lam)",
            extra={"expected": -1.0 / (2.0 * lam)},
        )
    )
    return report
