"""Coordinate tensor calculus on jets.

A metric is a callable Gram matrix over a named chart, evaluable on floats or
on seeded jets.  Because the jet arithmetic is exact to second order, the
Christoffel symbols and the Riemann/Ricci contractions built from jet-derived
metric derivatives carry no finite-difference truncation error; a central
finite-difference path (`fd_gram_derivatives`) is kept alongside as the
independent baseline.

Curvature conventions: R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb} + ...,
Ric_{bd} = R^a_{bad}.  With these signs the unit sphere has Ric = (n-1) g and
the unit-radius hyperbolic/anti-de Sitter spaces have Ric = -(n-1) g.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .numkernel import ContractViolationError, Jet2, seed_point

__all__ = [
    "Chart",
    "DegenerateMetricError",
    "MetricField",
    "OneForm",
    "VectorField",
    "christoffel",
    "christoffel_from_derivatives",
    "conformal_deviation",
    "covariant_derivative",
    "divergence",
    "exterior_wedge",
    "fd_gram_derivatives",
    "gram_jets",
    "gram_values",
    "jet_components",
    "lie_bracket",
    "lie_derivative_metric",
    "map_jets",
    "metricity_residual",
    "ricci_from_derivatives",
    "ricci_scalar",
    "scalar_laplacian",
    "yamabe_residual",
]


class DegenerateMetricError(ValueError):
    """Gram matrix not invertible at the evaluation point."""


@dataclass(frozen=True)
class Chart:
    """Named coordinates plus an optional predicate marking singular points."""

    names: tuple[str, ...]
    singular: Callable[[np.ndarray], bool] | None = None

    @property
    def dim(self) -> int:
        return len(self.names)


@dataclass(frozen=True)
class MetricField:
    """Pseudo-Riemannian metric: chart, Gram callable, expected signature.

    ``gram`` maps a point (sequence of scalars or jets) to an n x n nested
    sequence; entries may be plain numbers when constant.
    """

    chart: Chart
    gram: Callable[[Sequence], Sequence[Sequence]]
    signature: tuple[int, int]


@dataclass(frozen=True)
class VectorField:
    chart: Chart
    components: Callable[[Sequence], Sequence]


@dataclass(frozen=True)
class OneForm:
    chart: Chart
    components: Callable[[Sequence], Sequence]


# ---------------------------------------------------------------------------
# evaluation helpers


def gram_values(metric: MetricField, p: Sequence[float]) -> np.ndarray:
    rows = metric.gram(list(p))
    return np.array([[float(e) for e in row] for row in rows])


def gram_jets(
    metric: MetricField, p: Sequence[float]
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gram matrix and its first/second coordinate derivatives at ``p``.

    Returns (g0, dg, d2g) with dg[a, i, j] = d_a g_ij and
    d2g[a, b, i, j] = d_a d_b g_ij.
    """
    n = len(p)
    rows = metric.gram(seed_point(p))
    g0 = np.zeros((n, n))
    dg = np.zeros((n, n, n))
    d2g = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(n):
            e = rows[i][j]
            if isinstance(e, Jet2):
                g0[i, j] = e.value
                dg[:, i, j] = e.grad
                d2g[:, :, i, j] = e.hess
            else:
                g0[i, j] = e
    return g0, dg, d2g


def jet_components(
    fn: Callable[[Sequence], Sequence], p: Sequence[float]
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Evaluate a component callable on seeds.

    Returns (vals, jac, hess) with jac[i, a] = d_a comp_i and
    hess[i, a, b] = d_a d_b comp_i.  Complex components are allowed.
    """
    n = len(p)
    comps = fn(seed_point(p))
    m = len(comps)
    some_complex = any(
        isinstance(c, Jet2) and np.iscomplexobj(np.asarray(c.value)) or
        (not isinstance(c, Jet2) and isinstance(c, complex))
        for c in comps
    )
    dtype = complex if some_complex else float
    vals = np.zeros(m, dtype=dtype)
    jac = np.zeros((m, n), dtype=dtype)
    hess = np.zeros((m, n, n), dtype=dtype)
    for i, c in enumerate(comps):
        if isinstance(c, Jet2):
            vals[i] = c.value
            jac[i] = c.grad
            hess[i] = c.hess
        else:
            vals[i] = c
    return vals, jac, hess


def map_jets(fn: Callable[[Sequence], Sequence], p: Sequence[float]):
    """Alias of jet_components for chart maps (values, Jacobian, Hessian)."""
    return jet_components(fn, p)


def _scalar_jet(f: Callable[[Sequence], Jet2], p: Sequence[float]) -> Jet2:
    out = f(seed_point(p))
    if not isinstance(out, Jet2):
        out = Jet2.constant(out, len(p))
    return out


def _invert_gram(g0: np.ndarray) -> np.ndarray:
    n = g0.shape[0]
    det = np.linalg.det(g0)
    scale = max(1.0, float(np.abs(g0).max()))
    if abs(det) < 1e-14 * scale**n:
        raise DegenerateMetricError(f"Gram matrix is singular (det = {det:.3e})")
    return np.linalg.inv(g0)


# ---------------------------------------------------------------------------
# connection and curvature


def christoffel_from_derivatives(g0: np.ndarray, dg: np.ndarray) -> np.ndarray:
    """Levi-Civita symbols Gamma[k, i, j] from the metric and its gradient."""
    ginv = _invert_gram(g0)
    # first kind: Gamma_{a,ij} = (d_i g_aj + d_j g_ai - d_a g_ij) / 2
    first = 0.5 * (
        np.einsum("iaj->aij", dg) + np.einsum("jai->aij", dg) - dg
    )
    return np.einsum("ka,aij->kij", ginv, first)


def christoffel(metric: MetricField, p: Sequence[float]) -> np.ndarray:
    g0, dg, _ = gram_jets(metric, p)
    return christoffel_from_derivatives(g0, dg)


def _connection(metric: MetricField, p: Sequence[float]):
    """(g0, ginv, Gamma, dGamma) with dGamma[b, k, i, j] = d_b Gamma^k_ij."""
    g0, dg, d2g = gram_jets(metric, p)
    ginv = _invert_gram(g0)
    first = 0.5 * (np.einsum("iaj->aij", dg) + np.einsum("jai->aij", dg) - dg)
    gamma = np.einsum("ka,aij->kij", ginv, first)
    dginv = -np.einsum("km,bml,la->bka", ginv, dg, ginv)
    dfirst = 0.5 * (
        np.einsum("biaj->baij", d2g)
        + np.einsum("bjai->baij", d2g)
        - np.einsum("baij->baij", d2g)
    )
    dgamma = np.einsum("bka,aij->bkij", dginv, first) + np.einsum(
        "ka,baij->bkij", ginv, dfirst
    )
    return g0, ginv, gamma, dgamma


def ricci_from_derivatives(
    g0: np.ndarray, dg: np.ndarray, d2g: np.ndarray
) -> tuple[np.ndarray, float]:
    """Ricci tensor and scalar from metric derivatives (any source)."""
    ginv = _invert_gram(g0)
    first = 0.5 * (np.einsum("iaj->aij", dg) + np.einsum("jai->aij", dg) - dg)
    gamma = np.einsum("ka,aij->kij", ginv, first)
    dginv = -np.einsum("km,bml,la->bka", ginv, dg, ginv)
    dfirst = 0.5 * (
        np.einsum("biaj->baij", d2g)
        + np.einsum("bjai->baij", d2g)
        - np.einsum("baij->baij", d2g)
    )
    dgamma = np.einsum("bka,aij->bkij", dginv, first) + np.einsum(
        "ka,baij->bkij", ginv, dfirst
    )
    ric = (
        np.einsum("kkij->ij", dgamma)
        - np.einsum("ikkj->ij", dgamma)
        + np.einsum("kkl,lij->ij", gamma, gamma)
        - np.einsum("kil,lkj->ij", gamma, gamma)
    )
    ric = 0.5 * (ric + ric.T)
    scalar = float(np.einsum("ij,ij->", ginv, ric))
    return ric, scalar


def ricci_scalar(metric: MetricField, p: Sequence[float]) -> tuple[np.ndarray, float]:
    g0, dg, d2g = gram_jets(metric, p)
    return ricci_from_derivatives(g0, dg, d2g)


def metricity_residual(metric: MetricField, p: Sequence[float]) -> float:
    """Max |nabla_c g_ab|; zero for the Levi-Civita connection."""
    g0, dg, _ = gram_jets(metric, p)
    gamma = christoffel_from_derivatives(g0, dg)
    nabla = (
        dg
        - np.einsum("eca,eb->cab", gamma, g0)
        - np.einsum("ecb,ae->cab", gamma, g0)
    )
    return float(np.abs(nabla).max())


# ---------------------------------------------------------------------------
# derivative operators


def covariant_derivative(metric: MetricField, w, p: Sequence[float]) -> np.ndarray:
    """nabla w at ``p``: rows indexed by the derivative direction.

    For a OneForm returns (nabla w)[a, b] = d_a w_b - Gamma^c_ab w_c; for a
    VectorField returns (nabla v)[a, b] = d_a v^b + Gamma^b_ac v^c.
    """
    gamma = christoffel(metric, p)
    vals, jac, _ = jet_components(w.components, p)
    if isinstance(w, OneForm):
        return jac.T - np.einsum("cab,c->ab", gamma, vals)
    if isinstance(w, VectorField):
        return jac.T + np.einsum("bac,c->ab", gamma, vals)
    raise ContractViolationError("covariant_derivative expects a OneForm or VectorField")


def lie_derivative_metric(
    metric: MetricField, field: VectorField, p: Sequence[float]
) -> np.ndarray:
    """(L_Z g)_ab = Z^c d_c g_ab + g_cb d_a Z^c + g_ac d_b Z^c."""
    g0, dg, _ = gram_jets(metric, p)
    zv, zj, _ = jet_components(field.components, p)
    zv, zj = zv.real, zj.real
    return (
        np.einsum("c,cab->ab", zv, dg)
        + np.einsum("cb,ca->ab", g0, zj)
        + np.einsum("ac,cb->ab", g0, zj)
    )


def lie_bracket(v: VectorField, w: VectorField, p: Sequence[float]) -> np.ndarray:
    """[V, W]^a = V^c d_c W^a - W^c d_c V^a."""
    vv, vj, _ = jet_components(v.components, p)
    wv, wj, _ = jet_components(w.components, p)
    return np.einsum("c,ac->a", vv, wj) - np.einsum("c,ac->a", wv, vj)


def conformal_deviation(
    metric: MetricField, field: VectorField, p: Sequence[float]
) -> tuple[float, float]:
    """Best conformal factor phi = tr(g^{-1} L_Z g)/n and the relative
    Frobenius residual of L_Z g - phi g."""
    g0, _, _ = gram_jets(metric, p)
    lie = lie_derivative_metric(metric, field, p)
    ginv = _invert_gram(g0)
    n = g0.shape[0]
    phi = float(np.einsum("ij,ij->", ginv, lie)) / n
    residual = float(np.linalg.norm(lie - phi * g0) / np.linalg.norm(g0))
    return phi, residual


def divergence(metric: MetricField, field: VectorField, p: Sequence[float]) -> float:
    """Div X = d_a X^a + X^a d_a log sqrt|det g|, via tr(g^{-1} d_a g)/2.

    This is the divergence of the metric volume density |det g|^{1/2}.
    """
    g0, dg, _ = gram_jets(metric, p)
    ginv = _invert_gram(g0)
    xv, xj, _ = jet_components(field.components, p)
    return float(
        np.trace(xj.T.real) + 0.5 * np.einsum("a,ij,aij->", xv.real, ginv, dg)
    )


def exterior_wedge(
    omega: OneForm, p: Sequence[float]
) -> tuple[np.ndarray, np.ndarray]:
    """(d omega, omega ^ d omega) in components.

    (d w)_ab = d_a w_b - d_b w_a; the 3-form is returned without 1/k!
    weights: (w ^ dw)_abc = w_a (dw)_bc + w_b (dw)_ca + w_c (dw)_ab.
    """
    vals, jac, _ = jet_components(omega.components, p)
    vals, jac = vals.real, jac.real
    dw = jac.T - jac
    n = vals.shape[0]
    wedge = np.zeros((n, n, n))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                wedge[a, b, c] = (
                    vals[a] * dw[b, c] + vals[b] * dw[c, a] + vals[c] * dw[a, b]
                )
    return dw, wedge


def scalar_laplacian(metric: MetricField, f, p: Sequence[float]):
    """Laplace-Beltrami of a scalar: g^{ab} (d_a d_b f - Gamma^c_ab d_c f)."""
    g0, dg, _ = gram_jets(metric, p)
    ginv = _invert_gram(g0)
    gamma = christoffel_from_derivatives(g0, dg)
    fj = _scalar_jet(f, p)
    return np.einsum("ab,ab->", ginv, fj.hess) - np.einsum(
        "ab,cab,c->", ginv, gamma, fj.grad
    )


def yamabe_residual(metric: MetricField, f, p: Sequence[float]):
    """(Delta_g - (n-2)/(4(n-1)) R) f at ``p``; complex scalars welcome.

    The operator acts on a complex coefficient componentwise (it has real
    coefficients), so the return value is one complex number.
    """
    n = metric.chart.dim
    g0, dg, d2g = gram_jets(metric, p)
    ginv = _invert_gram(g0)
    gamma = christoffel_from_derivatives(g0, dg)
    _, scalar = ricci_from_derivatives(g0, dg, d2g)
    fj = _scalar_jet(f, p)
    lap = np.einsum("ab,ab->", ginv, fj.hess) - np.einsum(
        "ab,cab,c->", ginv, gamma, fj.grad
    )
    return lap - ((n - 2.0) / (4.0 * (n - 1.0))) * scalar * fj.value


# ---------------------------------------------------------------------------
# finite-difference baseline


def _richardson(coarse, fine):
    return (4.0 * fine - coarse) / 3.0


def fd_gram_derivatives(
    metric: MetricField, p: Sequence[float], step: float = 1e-5
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Central-difference metric derivatives, Richardson-extrapolated once.

    Independent of the jet path; used as the oracle for the autodiff
    connection and curvature.
    """
    p = np.asarray(p, dtype=float)
    n = p.size
    g0 = gram_values(metric, p)

    def g_at(q):
        return gram_values(metric, q)

    def shift(a, h):
        q = p.copy()
        q[a] += h
        return q

    dg = np.zeros((n, n, n))
    d2g = np.zeros((n, n, n, n))
    for a in range(n):
        d1 = {}
        for h in (step, 0.5 * step):
            d1[h] = (g_at(shift(a, h)) - g_at(shift(a, -h))) / (2.0 * h)
        dg[a] = _richardson(d1[step], d1[0.5 * step])
        d2 = {}
        for h in (step, 0.5 * step):
            d2[h] = (g_at(shift(a, h)) - 2.0 * g0 + g_at(shift(a, -h))) / h**2
        d2g[a, a] = _richardson(d2[step], d2[0.5 * step])
    for a in range(n):
        for b in range(a + 1, n):
            mixed = {}
            for h in (step, 0.5 * step):
                qpp = p.copy(); qpp[[a, b]] += h
                qpm = p.copy(); qpm[a] += h; qpm[b] -= h
                qmp = p.copy(); qmp[a] -= h; qmp[b] += h
                qmm = p.copy(); qmm[[a, b]] -= h
                mixed[h] = (g_at(qpp) - g_at(qpm) - g_at(qmp) + g_at(qmm)) / (
                    4.0 * h**2
                )
            d2g[a, b] = d2g[b, a] = _richardson(mixed[step], mixed[0.5 * step])
    return g0, dg, d2g
