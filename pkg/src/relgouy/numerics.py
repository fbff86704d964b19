"""Hermite polynomials, adaptive cubature and finite-difference stencils."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

HERMITE_MAX_ORDER = 20
EPS = np.finfo(float).eps

# 15-point Kronrod rule and its embedded 7-point Gauss rule on [-1, 1] (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

KRONROD_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss weights placed on the Kronrod grid; odd positions of _XGK are the Gauss nodes.
_wg_half = np.zeros(8)
_wg_half[1::2] = _WG
GAUSS_WEIGHTS = np.concatenate([_wg_half[:-1], _wg_half[::-1]])


class QuadratureError(RuntimeError):
    """Subdivision budget exhausted; carries the best value and error estimate."""

    def __init__(self, message, value, error_estimate):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


def hermite(n: int, x: float) -> float:
    """Physicists' Hermite polynomial H_n(x) by forward recurrence."""
    if n < 0 or int(n) != n:
        raise ValueError(f"Hermite order must be a nonnegative integer, got {n!r}")
    if n > HERMITE_MAX_ORDER:
        raise ValueError(f"Hermite order {n} exceeds the stability cap n <= {HERMITE_MAX_ORDER}")
    x = float(x)
    h_prev = 1.0
    if n == 0:
        return h_prev
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h


@dataclass(frozen=True)
class QuadratureSpec:
    box: tuple
    rel_tol: float = 1e-10
    abs_tol: float = 0.0
    max_subdivisions: int = 4000

    def __post_init__(self):
        box = tuple((float(lo), float(hi)) for lo, hi in self.box)
        if not box:
            raise ValueError("quadrature box needs at least one axis")
        for lo, hi in box:
            if not (np.isfinite(lo) and np.isfinite(hi) and hi > lo):
                raise ValueError(f"degenerate or non-finite interval [{lo}, {hi}]")
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.abs_tol < 0:
            raise ValueError("abs_tol must be nonnegative")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")
        object.__setattr__(self, "box", box)

    @property
    def dim(self):
        return len(self.box)


def _panel_rule(f, lo, hi):
    """Tensor-product Kronrod estimate on one panel, the Gauss-Kronrod error
    estimate, and the per-axis error contributions used to choose a split axis."""
    d = len(lo)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    axes = [mid[k] + half[k] * KRONROD_NODES for k in range(d)]
    grids = np.meshgrid(*axes, indexing="ij")
    vals = np.asarray(f(*[g.ravel() for g in grids]), dtype=float)
    vals = np.broadcast_to(vals, grids[0].size).reshape(grids[0].shape)
    if not np.all(np.isfinite(vals)):
        raise ValueError("integrand is not finite on the quadrature box")
    jac = float(np.prod(half))

    def contract(weights):
        out = vals
        for w in weights:
            out = np.tensordot(w, out, axes=(0, 0))
        return float(out) * jac

    kron = contract([KRONROD_WEIGHTS] * d)
    gauss = contract([GAUSS_WEIGHTS] * d)
    axis_err = []
    for k in range(d):
        ws = [KRONROD_WEIGHTS] * d
        ws[k] = GAUSS_WEIGHTS
        axis_err.append(abs(contract(ws) - kron))
    return kron, abs(kron - gauss), axis_err


def integrate(f: Callable[..., np.ndarray], spec: QuadratureSpec) -> tuple[float, float]:
    """Globally adaptive tensor Gauss-Kronrod (7/15) cubature over a box.

    ``f`` is called with one coordinate array per axis and must return the
    integrand at those points. The worst panel is always bisected along the
    axis whose Gauss/Kronrod disagreement is largest; ties are broken by panel
    creation order, so the result depends only on the inputs.
    """
    lo = np.array([a for a, _ in spec.box])
    hi = np.array([b for _, b in spec.box])
    counter = itertools.count()
    value, err, axis_err = _panel_rule(f, lo, hi)
    panels = {}
    heap = []

    def push(plo, phi, v, e, ae):
        key = next(counter)
        panels[key] = (plo, phi, v, e, ae)
        heapq.heappush(heap, (-e, key))

    push(lo, hi, value, err, axis_err)
    total_v, total_e = value, err
    splits = 0
    while total_e > max(spec.abs_tol, spec.rel_tol * abs(total_v)):
        if splits >= spec.max_subdivisions:
            raise QuadratureError(
                f"subdivision budget {spec.max_subdivisions} exhausted "
                f"(value={total_v!r}, error={total_e!r})",
                total_v,
                total_e,
            )
        _, key = heapq.heappop(heap)
        plo, phi, v, e, ae = panels.pop(key)
        axis = int(np.argmax(ae))
        cut = 0.5 * (plo[axis] + phi[axis])
        left_hi = phi.copy()
        left_hi[axis] = cut
        right_lo = plo.copy()
        right_lo[axis] = cut
        total_v -= v
        total_e -= e
        for a, b in ((plo, left_hi), (right_lo, phi)):
            cv, ce, cae = _panel_rule(f, a, b)
            push(a, b, cv, ce, cae)
            total_v += cv
            total_e += ce
        splits += 1
    # Final sum in creation order, independent of heap layout.
    ordered = [panels[k] for k in sorted(panels)]
    return float(np.sum([p[2] for p in ordered])), float(np.sum([p[3] for p in ordered]))


def fixed_gauss_legendre(f: Callable[..., np.ndarray], box: Sequence, nodes: int = 200) -> float:
    """Non-adaptive tensor Gauss-Legendre rule; an independent cross-check."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    axes, weights = [], []
    for a, b in box:
        axes.append(0.5 * (b - a) * x + 0.5 * (b + a))
        weights.append(0.5 * (b - a) * w)
    grids = np.meshgrid(*axes, indexing="ij")
    vals = np.broadcast_to(np.asarray(f(*[g.ravel() for g in grids]), dtype=float), grids[0].size)
    vals = vals.reshape(grids[0].shape)
    for wk in weights:
        vals = np.tensordot(wk, vals, axes=(0, 0))
    return float(vals)


@dataclass(frozen=True)
class StencilSpec:
    order: str
    axis: str
    step: float
    richardson_levels: int = 2

    def __post_init__(self):
        if self.order not in ("first", "second"):
            raise ValueError(f"stencil order must be 'first' or 'second', got {self.order!r}")
        if self.axis not in ("t", "x1", "x2", "x3"):
            raise ValueError(f"unknown stencil axis {self.axis!r}")
        if not (np.isfinite(self.step) and self.step > 0):
            raise ValueError(f"stencil step must be finite and positive, got {self.step!r}")
        if not 1 <= self.richardson_levels <= 4:
            raise ValueError("richardson_levels must be in 1..4")


def default_step(order: str, scale: float, richardson_levels: int = 2) -> float:
    """Base step balancing truncation against cancellation.

    With L Richardson levels a central difference has truncation O(h^(2L+2)),
    so the balance point is eps^(1/(2L+2+d)) for derivative order d.
    """
    d = 1 if order == "first" else 2
    return scale * EPS ** (1.0 / (2 * richardson_levels + 2 + d))


def _central(f, x, h, order):
    if order == "first":
        return (f(x + h) - f(x - h)) / (2.0 * h)
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)


def diff(f: Callable[[float], complex], at: float, spec: StencilSpec) -> complex:
    """Central difference of the requested order, Richardson-extrapolated over
    ``spec.richardson_levels`` step halvings."""
    table = [_central(f, at, spec.step / 2**j, spec.order) for j in range(spec.richardson_levels + 1)]
    for level in range(1, spec.richardson_levels + 1):
        factor = 4.0**level
        table = [(factor * table[j + 1] - table[j]) / (factor - 1.0) for j in range(len(table) - 1)]
    return table[0]
