"""Flat Bargmann structure, Schrödinger densities, and symmetry transport.

A Bargmann structure is a Lorentzian metric with a nowhere-vanishing parallel
null field xi; the clock one-form theta = g(xi) is closed, so the structure
fibers over an absolute time axis.  Wave functions are densities
Psi = f |Vol|^w with w = d / (2d+4): with that weight the pair

    (Yamabe operator) f = 0,      (hbar/i) L_xi^w f = m f

is preserved by the conformal transformations fixing xi, which is what the
transport checks in this module exercise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import numkernel as nk
from .ambient import (
    GroupElement,
    flat_chart,
    flat_gram_matrix,
    flat_metric,
    projective_action,
    realize_field,
    xi_vector,
)
from .geometry import (
    MetricField,
    OneForm,
    VectorField,
    covariant_derivative,
    divergence,
    exterior_wedge,
    gram_values,
    jet_components,
    yamabe_residual,
)
from .numkernel import ContractViolationError, Jet2, JetMatrix, jet_det, jet_value
from .report import CheckResult, VerificationReport

__all__ = [
    "BargmannStructure",
    "ChartMap",
    "DensityFunction",
    "SchrodingerParams",
    "bargmann_axioms_check",
    "boost_map",
    "conformal_equivalence_check",
    "density_lie_derivative",
    "density_weight",
    "dilation_map",
    "expansion_map_projective",
    "expansion_map_rk4",
    "flat_bargmann",
    "flow_map_rk4",
    "group_map",
    "metric_clock",
    "plane_wave",
    "rescaled_metric",
    "schrodinger_residual",
    "symmetry_transport_check",
    "translation_map",
    "transported_density",
]


@dataclass(frozen=True)
class BargmannStructure:
    """Metric plus the distinguished parallel null direction and its clock."""

    metric: MetricField
    xi: VectorField
    theta: OneForm
    d: int


@dataclass(frozen=True)
class SchrodingerParams:
    mass: float = 1.0
    hbar: float = 1.0


@dataclass(frozen=True)
class DensityFunction:
    """Coefficient of a density of weight ``weight``; the coefficient callable
    must accept jets and may return complex jets."""

    coefficient: Callable[[Sequence], Jet2]
    weight: float
    d: int


def density_weight(d: int) -> float:
    """The conformal weight d/(2d+4) making the wave operator covariant."""
    return d / (2.0 * d + 4.0)


def flat_bargmann(d: int) -> BargmannStructure:
    metric = flat_metric(d)
    xi = xi_vector(d)
    theta_row = flat_gram_matrix(d) @ xi

    def xi_comps(p):
        return [float(c) for c in xi]

    def theta_comps(p):
        return [float(c) for c in theta_row]

    chart = flat_chart(d)
    return BargmannStructure(
        metric=metric,
        xi=VectorField(chart, xi_comps),
        theta=OneForm(chart, theta_comps),
        d=d,
    )


def metric_clock(structure: BargmannStructure) -> OneForm:
    """theta = g(xi, .) computed from the metric, jet-evaluable."""
    metric, xi = structure.metric, structure.xi
    n = metric.chart.dim

    def comps(p):
        rows = metric.gram(p)
        xiv = xi.components(p)
        out = []
        for a in range(n):
            val = None
            for b in range(n):
                term = rows[a][b] * xiv[b]
                val = term if val is None else val + term
            out.append(val)
        return out

    return OneForm(metric.chart, comps)


def rescaled_metric(structure: BargmannStructure, omega2) -> MetricField:
    """Metric conformally rescaled by a jet-evaluable factor Omega^2(p)."""
    base = structure.metric

    def gram(p):
        f = omega2(p)
        rows = base.gram(p)
        return [[f * e for e in row] for row in rows]

    return MetricField(base.chart, gram, base.signature)


# ---------------------------------------------------------------------------
# structure checks


def bargmann_axioms_check(
    structure: BargmannStructure,
    samples: int = 20,
    seed: int = 0,
    tol: float = 1e-10,
    box: float = 1.2,
) -> VerificationReport:
    """Nullity of xi, parallelism of xi, closedness of the clock, and
    vanishing divergence, each maximized over seeded samples."""
    n = structure.metric.chart.dim
    sampler = nk.SeededSampler(seed, [(-box, box)] * n, exclude=structure.metric.chart.singular)
    pts = sampler.points(samples)
    clock = metric_clock(structure)
    null_r = parallel_r = closed_r = div_r = 0.0
    for p in pts:
        g0 = gram_values(structure.metric, p)
        xv = np.array([jet_value(c) for c in structure.xi.components(list(p))])
        null_r = max(null_r, abs(float(xv @ g0 @ xv)))
        parallel_r = max(
            parallel_r,
            float(np.abs(covariant_derivative(structure.metric, structure.xi, p)).max()),
        )
        dw, _ = exterior_wedge(clock, p)
        closed_r = max(closed_r, float(np.abs(dw).max()))
        div_r = max(div_r, abs(divergence(structure.metric, structure.xi, p)))
    report = VerificationReport()
    meta = {"samples": samples, "seed": seed, "rejected": sampler.rejections}
    for name, resid, claim in (
        ("xi_null", null_r, "g(xi, xi) = 0"),
        ("xi_parallel", parallel_r, "nabla xi = 0"),
        ("clock_closed", closed_r, "d theta = 0 for theta = g(xi)"),
        ("xi_divergence_free", div_r, "Div xi = 0"),
    ):
        report.add(
            CheckResult(
                name=name,
                status="PASS" if resid < tol else "FAIL",
                residual=resid,
                tolerance=tol,
                claim=claim,
                extra=meta,
            )
        )
    return report


def conformal_equivalence_check(
    omega,
    structure: BargmannStructure,
    samples: int = 20,
    seed: int = 0,
    tol: float = 1e-9,
) -> tuple[bool, float]:
    """Whether d Omega ^ theta = 0, i.e. the conformal factor descends to the
    time axis.  Returns (equivalent, max residual)."""
    n = structure.metric.chart.dim
    clock = metric_clock(structure)
    sampler = nk.SeededSampler(seed, [(-1.2, 1.2)] * n)
    worst = 0.0
    for p in sampler.points(samples):
        oj = omega(nk.seed_point(p))
        oj = oj if isinstance(oj, Jet2) else Jet2.constant(oj, n)
        tv = np.array([jet_value(c) for c in clock.components(list(p))])
        wedge = np.outer(oj.grad, tv) - np.outer(tv, oj.grad)
        worst = max(worst, float(np.abs(wedge).max()))
    return worst < tol, worst


# ---------------------------------------------------------------------------
# densities and the covariant Schrödinger pair


def density_lie_derivative(
    metric: MetricField, field: VectorField, psi: DensityFunction, p: Sequence[float]
):
    """L_X^w f = X(f) + w Div(X) f at ``p`` (complex scalar)."""
    fj = psi.coefficient(nk.seed_point(p))
    xv, _, _ = jet_components(field.components, p)
    div = divergence(metric, field, p)
    return complex(xv @ fj.grad + psi.weight * div * fj.value)


def schrodinger_residual(
    structure: BargmannStructure,
    psi: DensityFunction,
    params: SchrodingerParams,
    p: Sequence[float],
) -> tuple[complex, complex]:
    """Residuals of the covariant pair at ``p``:

    r1 = (Delta_g - (n-2)/(4(n-1)) R) f,
    r2 = (hbar/i) (xi(f) + w Div(xi) f) - m f.

    Requires the density to carry the covariant weight d/(2d+4).
    """
    w = density_weight(structure.d)
    if abs(psi.weight - w) > 1e-12:
        raise ContractViolationError(
            f"density weight {psi.weight} != covariant weight {w}"
        )
    r1 = complex(yamabe_residual(structure.metric, psi.coefficient, p))
    lie = density_lie_derivative(structure.metric, structure.xi, psi, p)
    fj = psi.coefficient(nk.seed_point(p))
    r2 = (params.hbar / 1j) * lie - params.mass * complex(fj.value)
    return r1, r2


def plane_wave(
    d: int,
    k: Sequence[float],
    params: SchrodingerParams = SchrodingerParams(),
    amplitude: complex = 1.0,
) -> DensityFunction:
    """exp(i (k.x + omega t + (m/hbar) s)) with omega = -hbar |k|^2 / (2m),
    which annihilates both members of the covariant pair on the flat
    structure."""
    k = np.asarray(k, dtype=float)
    if k.size != d:
        raise ContractViolationError(f"wave vector must have {d} components")
    omega = -params.hbar * float(k @ k) / (2.0 * params.mass)
    ms = params.mass / params.hbar

    def coeff(x):
        phase = omega * x[d] + ms * x[d + 1]
        for i in range(d):
            phase = phase + k[i] * x[i]
        return amplitude * (nk.cos(phase) + 1j * nk.sin(phase))

    return DensityFunction(coefficient=coeff, weight=density_weight(d), d=d)


# ---------------------------------------------------------------------------
# finite symmetries as chart maps


@dataclass(frozen=True)
class ChartMap:
    """Diffeomorphism of the flat chart with jet-evaluable forward/inverse
    maps and the jet-evaluable Jacobian-determinant factor |det D(inverse)|
    used by density transport."""

    name: str
    d: int
    forward: Callable[[Sequence], list]
    inverse: Callable[[Sequence], list]
    jacobian_factor: Callable[[Sequence], Jet2]


def _linear_map(name: str, d: int, W: np.ndarray, shift=None) -> ChartMap:
    n = d + 2
    Winv = np.linalg.inv(W)
    shift = np.zeros(n) if shift is None else np.asarray(shift, dtype=float)
    jac = abs(float(np.linalg.det(Winv)))

    def forward(x):
        return [
            sum(W[a, b] * x[b] for b in range(n) if W[a, b] != 0.0) + shift[a]
            for a in range(n)
        ]

    def inverse(x):
        y = [x[a] - shift[a] for a in range(n)]
        return [
            sum(Winv[a, b] * y[b] for b in range(n) if Winv[a, b] != 0.0)
            for a in range(n)
        ]

    def jacobian_factor(x):
        return jac

    return ChartMap(name, d, forward, inverse, jacobian_factor)


def translation_map(d: int, gamma: Sequence[float]) -> ChartMap:
    return _linear_map("translation", d, np.eye(d + 2), shift=gamma)


def dilation_map(d: int, chi: float) -> ChartMap:
    """x -> e^chi x, t -> e^{2chi} t, s -> s."""
    scales = [np.exp(chi)] * d + [np.exp(2.0 * chi), 1.0]
    return _linear_map("dilation", d, np.diag(scales))


def boost_map(d: int, b: Sequence[float]) -> ChartMap:
    """x -> x + b t, s -> s - b.x - |b|^2 t / 2 (a null rotation of g)."""
    b = np.asarray(b, dtype=float)
    n = d + 2
    W = np.eye(n)
    W[:d, d] = b
    W[d + 1, :d] = -b
    W[d + 1, d] = -0.5 * float(b @ b)
    return _linear_map("boost", d, W)


def group_map(ge: GroupElement, name: str = "group") -> ChartMap:
    """Projective action of a stabilizer element as a chart map.

    The action is conformal with factor Omega(x) = 1 / (e - a t), so
    |det D(inverse)|(p) = |e' - a' t|^{-(d+2)} with (a', e') read off the
    inverse element; that closed form is what makes the transported
    coefficient jet-evaluable to second order.
    """
    from .ambient import group_inverse

    d = ge.dim
    gi = group_inverse(ge)
    a_i, e_i = gi.blocks.a, gi.blocks.e

    def forward(x):
        return projective_action(ge, x)

    def inverse(x):
        return projective_action(gi, x)

    def jacobian_factor(x):
        den = e_i - a_i * x[d]
        return (den * den) ** (-(d + 2) / 2.0) if isinstance(den, Jet2) else abs(den) ** (-(d + 2.0))

    return ChartMap(name, d, forward, inverse, jacobian_factor)


def expansion_map_projective(d: int, alpha: float) -> ChartMap:
    """Projective form of the finite expansion exp(alpha E)."""
    from .ambient import assemble_group_element, commutant_basis, exp_algebra, extract_blocks

    Z = _expansion_generator(d, alpha)
    A = exp_algebra(Z)
    ge = assemble_group_element(extract_blocks(A, d), d)
    return group_map(ge, name="expansion")


def _expansion_generator(d: int, alpha: float) -> np.ndarray:
    from .ambient import SchBlocks, sch_matrix

    n = d + 2
    blocks = SchBlocks(
        Lam=np.zeros((n, n)), Gam=np.zeros(n), alpha=alpha, chi=0.0
    )
    return sch_matrix(blocks, d)


# ---------------------------------------------------------------------------
# RK4 flow of a quadratic generator, with the variational (tangent) flow


def _field_jacobian_rows(blocks, d: int, x) -> list[list]:
    """Entries of D(delta x) at x: the Jacobian of the quadratic generator
    field, as jet-evaluable expressions."""
    n = d + 2
    lam, alpha, chi = blocks.Lam, blocks.alpha, blocks.chi
    xi = xi_vector(d)
    g = flat_gram_matrix(d)
    t = x[d]
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            # d/dx_b of [Lam x + Gam - (alpha/2) g(x,x) xi + (alpha t + chi) x]_a
            val = lam[a, b] - alpha * xi[a] * sum(
                g[b, c] * x[c] for c in range(n) if g[b, c] != 0.0
            )
            if a == b:
                val = val + alpha * t + chi
            if b == d:
                val = val + alpha * x[a]
            row.append(val)
        rows.append(row)
    return rows


def flow_map_rk4(
    blocks, d: int, time: float, step: float = 1e-3
) -> Callable[[Sequence], tuple[list, JetMatrix]]:
    """Time-``time`` flow of the realized generator field, integrated by RK4.

    The returned callable accepts a (possibly jet-valued) chart point and
    returns the flowed point together with the flow Jacobian as a JetMatrix,
    obtained by integrating the variational equation dM/dtau = DZ(x) M
    alongside the point.  RK4 is plain arithmetic, so jets pass through and
    the Jacobian entries stay jet-evaluable (that is what density transport
    needs: second derivatives of the Jacobian determinant).
    """
    field, _ = realize_field(blocks, d)
    n = d + 2
    steps = max(1, round(abs(time) / step))
    h = time / steps

    def rhs(x, M):
        fx = field.components(x)
        DZ = _field_jacobian_rows(blocks, d, x)
        dim = M.dim
        DZm = JetMatrix.from_entries(DZ, dim) if _any_jet(DZ) else JetMatrix.constant(
            np.array([[jet_value(e) for e in row] for row in DZ]), dim
        )
        return fx, DZm @ M

    def advance(x, M):
        k1, K1 = rhs(x, M)
        x2 = [x[a] + 0.5 * h * k1[a] for a in range(n)]
        k2, K2 = rhs(x2, M + K1.scale(0.5 * h))
        x3 = [x[a] + 0.5 * h * k2[a] for a in range(n)]
        k3, K3 = rhs(x3, M + K2.scale(0.5 * h))
        x4 = [x[a] + h * k3[a] for a in range(n)]
        k4, K4 = rhs(x4, M + K3.scale(h))
        xn = [
            x[a] + (h / 6.0) * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a])
            for a in range(n)
        ]
        Mn = M + (K1 + (K2 + K3).scale(2.0) + K4).scale(h / 6.0)
        return xn, Mn

    def mapper(x):
        dim = x[0].dim if isinstance(x[0], Jet2) else n
        M = JetMatrix.constant(np.eye(n), dim)
        cur = list(x)
        for _ in range(steps):
            cur, M = advance(cur, M)
        return cur, M

    return mapper


def _any_jet(rows) -> bool:
    return any(isinstance(e, Jet2) for row in rows for e in row)


def expansion_map_rk4(d: int, alpha: float, step: float = 1e-3) -> ChartMap:
    """Finite expansion integrated numerically from its generator field.

    The neutral path for the one non-affine generator: forward and inverse
    flows by RK4, Jacobian determinant from the variational flow.
    """
    from .ambient import SchBlocks

    n = d + 2
    blocks = SchBlocks(Lam=np.zeros((n, n)), Gam=np.zeros(n), alpha=alpha, chi=0.0)
    fwd = flow_map_rk4(blocks, d, 1.0, step=step)
    back_blocks = SchBlocks(Lam=np.zeros((n, n)), Gam=np.zeros(n), alpha=-alpha, chi=0.0)
    back = flow_map_rk4(back_blocks, d, 1.0, step=step)

    def forward(x):
        return fwd(x)[0]

    def inverse(x):
        return back(x)[0]

    def jacobian_factor(x):
        _, M = back(x)
        det = jet_det(M.to_entries())
        det2 = det * det
        return det2 ** 0.5 if isinstance(det2, Jet2) else abs(jet_value(det))

    return ChartMap("expansion_rk4", d, forward, inverse, jacobian_factor)


# ---------------------------------------------------------------------------
# density transport


def transported_density(
    phi: ChartMap, psi: DensityFunction, weight: float | None = None
) -> DensityFunction:
    """Pushforward coefficient (f o phi^{-1}) |det D phi^{-1}|^w."""
    w = psi.weight if weight is None else weight

    def coeff(x):
        pre = phi.inverse(x)
        fj = psi.coefficient(pre)
        jac = phi.jacobian_factor(x)
        factor = jac ** w if isinstance(jac, Jet2) else jac**w
        return fj * factor

    return DensityFunction(coefficient=coeff, weight=psi.weight, d=psi.d)


def symmetry_transport_check(
    phi: ChartMap,
    psi: DensityFunction,
    structure: BargmannStructure,
    params: SchrodingerParams,
    samples: int = 10,
    seed: int = 0,
    weight: float | None = None,
    box: float = 1.0,
) -> dict:
    """Max residuals of the covariant pair for the transported density,
    evaluated at images of seeded samples (so the inverse map stays in its
    chart).  Also spot-checks that phi is a conformal map fixing xi."""
    n = structure.d + 2
    sampler = nk.SeededSampler(seed, [(-box, box)] * n)
    moved = transported_density(phi, psi, weight=weight)
    r1 = r2 = 0.0
    conf = 0.0
    for p in sampler.points(samples):
        vals, jac, _ = jet_components(phi.forward, p)
        q = vals.real
        g_here = gram_values(structure.metric, p)
        g_there = gram_values(structure.metric, q)
        pulled = jac.real.T @ g_there @ jac.real
        # conformality: pulled metric proportional to the metric
        scale = float((pulled * g_here).sum() / (g_here * g_here).sum())
        conf = max(conf, float(np.abs(pulled - scale * g_here).max()))
        a, b = schrodinger_residual(structure, moved, params, q)
        r1 = max(r1, abs(a))
        r2 = max(r2, abs(b))
    return {"r1": r1, "r2": r2, "conformal_residual": conf}
