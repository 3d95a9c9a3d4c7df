"""Exact interaction energy from the round-trip determinant.

The interaction energy per unit length of two parallel cylinders is

    E/L = (1/4 pi) int_0^inf  xi ln det(1 - M(xi)) d xi,

where M(xi) couples the angular channels of one cylinder to the other
through modified-Bessel reflection ratios and translation factors.  Every
element carries the common factor e^{-2 d xi}; we store elements with that
factor removed (working entirely in the scaled Bessel pair, the removal is
exact) and reattach it inside the determinant.

Assembly notes.  At fixed xi the scaled matrix is a positively weighted
sum over the intermediate angular index p,

    S_mn = pref(m, n) * sum_p r(p) T(p, m) T(p, n),

so S factors as X^T Y with X, Y built from half the ratio log plus the
translation log plus the prefactor split between the two sides.  Each X, Y
entry is bounded by the square root of a partial-wave term times a slowly
varying factor, so the BLAS product never sees the huge intermediate
magnitudes a naive ratio-times-translation evaluation would hit.  Elements
whose X or Y factors underflow are themselves negligible in the
determinant.  One N-type boundary letter flips the sign of every element
through the primed-Bessel ratios; the sign is factored out and applied
once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bessel import (
    log_i_prime_scaled_table,
    log_i_scaled_table,
    log_k_prime_scaled_table,
    log_k_scaled_table,
)
from .errors import (
    DomainError,
    InvalidGeometry,
    NoConvergence,
    NonPositiveDeterminant,
    PSumNoConvergence,
    StencilDomain,
)
from .geometry import BoundaryPair, CylinderPair, Kind, derive_params
from .quadrature import _leggauss

_SCALAR = (BoundaryPair.DD, BoundaryPair.NN, BoundaryPair.DN, BoundaryPair.ND)
_BASE_NODES = 32
_MAX_QUAD_LEVEL = 12
_SMALL_RUN = 10            # consecutive negligible p-terms that end the sum


@dataclass(frozen=True)
class RoundTripMatrix:
    """Scaled round-trip operator truncated to |m|, |n| <= half_width.

    entries[i, j] holds the element at m = i - half_width, n = j - half_width
    with the global factor e^{-2 d xi} removed; prefactor_log = -2 d xi.
    """

    half_width: int
    entries: np.ndarray
    prefactor_log: float


@dataclass(frozen=True)
class EnergyResult:
    value_per_length: float
    err_est: float
    n_matrix: int
    p_terms_max: int
    xi_nodes: int
    converged: bool


def _check_scalar_bc(bc: BoundaryPair) -> None:
    if bc not in _SCALAR:
        raise DomainError(
            f"{bc} is a composite pairing; compose it from scalar results")


class _XiTables:
    """Log-scale Bessel tables for one imaginary frequency, grown on demand.

    All orders enter through their absolute value, so tables run over
    nonnegative orders only.
    """

    def __init__(self, pair: CylinderPair, bc: BoundaryPair, xi: float):
        params = derive_params(pair)
        self.interior = pair.kind is Kind.INTERIOR
        self.za = pair.a * xi
        self.zb = pair.b * xi
        self.zd = params.delta * xi
        inner, outer = bc.name[0], bc.name[1]
        self._inner_prime = inner == "N"
        self._outer_prime = outer == "N"
        self.sign = (-1.0 if self._inner_prime else 1.0) * \
                    (-1.0 if self._outer_prime else 1.0)
        self._num = None
        self._den = None
        self._ratio = None
        self._trans = None

    def prefactor_logs(self, n_max: int):
        if self._num is None or len(self._num) <= n_max:
            if self._inner_prime:
                self._num = log_i_prime_scaled_table(self.za, n_max)
                self._den = log_k_prime_scaled_table(self.za, n_max)
            else:
                self._num = log_i_scaled_table(self.za, n_max)
                self._den = log_k_scaled_table(self.za, n_max)
        return self._num, self._den

    def ratio_log(self, p_max: int) -> np.ndarray:
        """log of the reflection ratio magnitude at the far cylinder."""
        if self._ratio is None or len(self._ratio) <= p_max:
            if self._outer_prime:
                lk = log_k_prime_scaled_table(self.zb, p_max)
                li = log_i_prime_scaled_table(self.zb, p_max)
            else:
                lk = log_k_scaled_table(self.zb, p_max)
                li = log_i_scaled_table(self.zb, p_max)
            self._ratio = (lk - li) if self.interior else (li - lk)
        return self._ratio

    def trans_log(self, j_max: int) -> np.ndarray:
        if self._trans is None or len(self._trans) <= j_max:
            self._trans = (log_i_scaled_table(self.zd, j_max) if self.interior
                           else log_k_scaled_table(self.zd, j_max))
        return self._trans


def _p_center(pair: CylinderPair, m: int, lo: int, hi: int) -> int:
    # translation factors peak where the far-cylinder order tracks (b/a)*m;
    # side-by-side cylinders couple dominantly through p near 0.  The saddle
    # estimate holds in the small-gap regime; outside it the summand support
    # is set by the translation factors, so clamp to that box.
    if pair.kind is Kind.INTERIOR:
        return min(max(int(round(pair.b / pair.a * m)), lo), hi)
    return 0


def _default_p_cap(zd: float, m: int, n: int) -> int:
    return int(10.0 * (zd + abs(m) + abs(n) + 50.0))


def matrix_element(pair: CylinderPair, bc: BoundaryPair, m: int, n: int,
                   xi: float, tol: float = 1e-12,
                   p_cap: int | None = None) -> float:
    """One scaled element, p-sum walked outward from its peak.

    The sum stops once ``_SMALL_RUN`` consecutive terms each contribute less
    than tol of the running total; all terms share one sign, so the total
    grows monotonically and the stopping test is safe.
    """
    _check_scalar_bc(bc)
    if not xi > 0:
        raise DomainError("xi must be positive")
    if not tol > 0:
        raise DomainError("tol must be positive")
    m, n = int(m), int(n)
    tables = _XiTables(pair, bc, xi)
    cap = _default_p_cap(tables.zd, m, n) if p_cap is None else int(p_cap)
    flip = -1 if pair.kind is Kind.INTERIOR else 1   # translation index p -+ m

    # summand support: translation factors die superexponentially once the
    # index outruns zd, so the peak lives inside this box whatever the
    # saddle estimate says; never stop before the walk has covered it
    span = int(math.ceil(tables.zd)) + 20
    box_lo = min(-flip * m, -flip * n, 0) - span
    box_hi = max(-flip * m, -flip * n, 0) + span
    center = _p_center(pair, m, box_lo, box_hi)
    k_min = (box_hi - box_lo) // 2 + 1

    num, den = tables.prefactor_logs(max(abs(m), abs(n)))
    base = num[abs(n)] - den[abs(m)]

    ratio = tables.ratio_log(max(abs(box_lo), abs(box_hi), 8))
    trans = tables.trans_log(max(abs(box_lo), abs(box_hi), 8)
                             + max(abs(m), abs(n)))

    def term_log(p: int) -> float:
        need = max(abs(p), abs(p + flip * m), abs(p + flip * n))
        nonlocal ratio, trans
        if need >= len(ratio) or need >= len(trans):
            ratio = tables.ratio_log(2 * need)
            trans = tables.trans_log(2 * need)
        return (ratio[abs(p)] + trans[abs(p + flip * m)]
                + trans[abs(p + flip * n)])

    l_ref = term_log(center)
    acc = 1.0 if l_ref > -math.inf else 0.0
    small_run = 0
    for k in range(1, cap + 2):
        for p in (center + k, center - k):
            lt = term_log(p)
            if lt == -math.inf:
                small_run += 1
                continue
            if l_ref == -math.inf:
                l_ref, acc, small_run = lt, 1.0, 0
                continue
            c_log = lt - l_ref
            if c_log > 60.0:
                acc = acc * math.exp(-c_log) + 1.0
                l_ref = lt
                small_run = 0
                continue
            c = math.exp(c_log)
            acc += c
            small_run = small_run + 1 if c < tol * acc else 0
        if small_run >= _SMALL_RUN and k >= k_min:
            break
    else:
        raise PSumNoConvergence(
            f"p-sum window exceeded cap {cap} at m={m}, n={n}, xi={xi}")
    if l_ref == -math.inf:
        return 0.0
    return tables.sign * math.exp(base + l_ref + math.log(acc))


def _slab_product(tables: _XiTables, ms: np.ndarray, p_lo: int, p_hi: int,
                  num: np.ndarray, den: np.ndarray,
                  flip: int) -> np.ndarray:
    """Contribution of p in [p_lo, p_hi] to the scaled matrix, as X^T Y."""
    ps = np.arange(p_lo, p_hi + 1)
    j_idx = np.abs(ps[:, None] + flip * ms[None, :])
    ratio = tables.ratio_log(int(max(abs(p_lo), abs(p_hi))))
    trans = tables.trans_log(int(j_idx.max()))
    logs = 0.5 * ratio[np.abs(ps)][:, None] + trans[j_idx]
    x = np.exp(logs - den[np.abs(ms)][None, :])
    y = np.exp(logs + num[np.abs(ms)][None, :])
    return x.T @ y


def _build_matrix_stats(pair: CylinderPair, bc: BoundaryPair, xi: float,
                        half_width: int, tol: float) -> tuple[RoundTripMatrix, int]:
    _check_scalar_bc(bc)
    if half_width < 0:
        raise DomainError("half_width must be >= 0")
    if not xi > 0:
        raise DomainError("xi must be positive")
    tables = _XiTables(pair, bc, xi)
    ms = np.arange(-half_width, half_width + 1)
    flip = -1 if pair.kind is Kind.INTERIOR else 1
    num, den = tables.prefactor_logs(half_width)

    span = int(math.ceil(tables.zd)) + 20
    centers = np.array([_p_center(pair, int(m), -half_width - span,
                                  half_width + span) for m in ms])
    width = int(math.ceil(tables.zd)) + 40
    p_lo = int(centers.min()) - half_width - width
    p_hi = int(centers.max()) + half_width + width
    cap = _default_p_cap(tables.zd, half_width, half_width) + p_hi - p_lo

    total = _slab_product(tables, ms, p_lo, p_hi, num, den, flip)
    small_slabs = 0
    slab = width
    while small_slabs < 2:
        if p_hi - p_lo > 2 * cap:
            raise PSumNoConvergence(
                f"matrix p-window exceeded cap {cap} at xi={xi}, N={half_width}")
        left = _slab_product(tables, ms, p_lo - slab, p_lo - 1, num, den, flip)
        right = _slab_product(tables, ms, p_hi + 1, p_hi + slab, num, den, flip)
        p_lo -= slab
        p_hi += slab
        delta = left + right
        total += delta
        scale = np.abs(total) + 1e-14 * np.abs(total).max() + 1e-300
        if np.all(np.abs(delta) <= tol * scale):
            small_slabs += 1
        else:
            small_slabs = 0
        slab *= 2
    entries = tables.sign * total
    mat = RoundTripMatrix(half_width=half_width, entries=entries,
                          prefactor_log=-2.0 * pair.d * xi)
    return mat, p_hi - p_lo + 1


def build_matrix(pair: CylinderPair, bc: BoundaryPair, xi: float,
                 half_width: int, tol: float = 1e-12) -> RoundTripMatrix:
    """All scaled elements with |m|, |n| <= half_width at one frequency."""
    mat, _ = _build_matrix_stats(pair, bc, xi, half_width, tol)
    return mat


_SERIES_CUT = 1e-8


def log_det_one_minus(mat: RoundTripMatrix) -> float:
    """ln det(1 - e^{prefactor_log} * entries).

    Once the operator norm bound drops below _SERIES_CUT the matrix 1 - M
    rounds to the identity in doubles and a factorization returns exactly
    zero, so the far tail switches to the trace expansion
    -tr M - tr(M^2)/2, whose truncation error is cubic in the bound.
    """
    if mat.entries.ndim != 2 or mat.entries.shape[0] != mat.entries.shape[1]:
        raise DomainError("entries must form a square matrix")
    size = mat.entries.shape[0]
    scale = math.exp(mat.prefactor_log)
    bound = scale * size * float(np.abs(mat.entries).max())
    if bound < _SERIES_CUT:
        tr1 = float(np.trace(mat.entries))
        tr2 = float(np.sum(mat.entries * mat.entries.T))
        return -scale * tr1 - 0.5 * scale * scale * tr2
    a = np.eye(size) - scale * mat.entries
    sign, logabs = np.linalg.slogdet(a)
    if not sign > 0:
        raise NonPositiveDeterminant(
            "det(1 - M) not positive; truncation too small or geometry "
            "outside the convergent regime")
    return float(logabs)


def _xi_grid(d: float, level: int) -> tuple[np.ndarray, np.ndarray]:
    """Frozen xi nodes and weights at one refinement level.

    Same maps as integrate_semi_infinite with decay_rate = 2d (u = e^{-2 d xi}
    onto (0,1), then the endpoint-softening u = t^2), evaluated on the
    Gauss-Legendre ladder; the grid depends only on (d, level), so every
    truncation order is integrated on identical nodes.
    """
    n = _BASE_NODES << level
    x, w = _leggauss(n)
    t = 0.5 + 0.5 * x
    xi = -np.log(t * t) / (2.0 * d)
    weight = w / (2.0 * d * t)
    return xi, weight


def _energy_at(pair: CylinderPair, bc: BoundaryPair, half_width: int,
               level: int, tol_elem: float, stats: dict) -> float:
    xi, wt = _xi_grid(pair.d, level)
    vals = np.empty_like(xi)
    for i in range(xi.size):
        mat, p_used = _build_matrix_stats(pair, bc, float(xi[i]),
                                          half_width, tol_elem)
        stats["p_max"] = max(stats["p_max"], p_used)
        vals[i] = xi[i] * log_det_one_minus(mat)
    return float(np.sum(wt * vals)) / (4.0 * math.pi)


def _initial_half_width(pair: CylinderPair) -> int:
    # dominant angular momentum scales like (cylinder radius)/(gap)
    radius = pair.a if pair.kind is Kind.INTERIOR else max(pair.a, pair.b)
    return int(math.ceil(4.0 + 3.0 * radius / pair.d))


def _energy_pipeline(pair: CylinderPair, bc: BoundaryPair, rel_tol: float,
                     n_cap: int) -> tuple[EnergyResult, int, int]:
    _check_scalar_bc(bc)
    if rel_tol < 1e-10:
        raise DomainError("rel_tol must be >= 1e-10")
    tol_elem = max(1e-13, 1e-3 * rel_tol)
    quad_tol = 0.25 * rel_tol
    trunc_tol = 0.5 * rel_tol
    stats = {"p_max": 0}

    n_half = _initial_half_width(pair)
    value = _energy_at(pair, bc, n_half, 0, tol_elem, stats)
    for level in range(1, _MAX_QUAD_LEVEL + 1):
        new = _energy_at(pair, bc, n_half, level, tol_elem, stats)
        err_quad = abs(new - value)
        value = new
        if err_quad <= quad_tol * abs(value):
            break
    else:
        raise NoConvergence(
            f"xi-quadrature not converged at {_BASE_NODES << _MAX_QUAD_LEVEL} "
            f"nodes (N={n_half})")

    while True:
        if 2 * n_half > n_cap:
            raise NoConvergence(
                f"matrix truncation still moving at N={n_half} "
                f"({_BASE_NODES << level} xi nodes); cap {n_cap}")
        n_half *= 2
        new = _energy_at(pair, bc, n_half, level, tol_elem, stats)
        delta = abs(new - value)
        value = new
        if delta <= trunc_tol * abs(value):
            break

    deep = _energy_at(pair, bc, n_half, level + 1, tol_elem, stats)
    err_quad = abs(deep - value)
    err_est = err_quad + delta
    result = EnergyResult(
        value_per_length=deep,
        err_est=err_est,
        n_matrix=n_half,
        p_terms_max=stats["p_max"],
        xi_nodes=_BASE_NODES << (level + 1),
        converged=bool(err_est <= rel_tol * abs(deep)),
    )
    return result, n_half, level + 1


def casimir_energy_exact(pair: CylinderPair, bc: BoundaryPair,
                         rel_tol: float = 1e-6,
                         n_cap: int = 4096) -> EnergyResult:
    """Interaction energy per unit length; negative for DD and NN.

    The xi quadrature is refined first at the initial truncation, the
    truncation is then doubled on that frozen grid until the energy moves
    by less than the budgeted share of rel_tol, and one deeper quadrature
    pass at the final truncation supplies the reported value and the
    quadrature part of err_est.
    """
    result, _, _ = _energy_pipeline(pair, bc, rel_tol, n_cap)
    return result


def casimir_force_exact(pair: CylinderPair, bc: BoundaryPair,
                        rel_tol: float = 1e-4,
                        n_cap: int = 4096) -> EnergyResult:
    """Force per unit length, F = -dE/dd, by five-point differencing.

    Uses steps h and h/2 with one Richardson combination.  All six stencil
    energies are evaluated with the truncation and grid level fixed by an
    adaptive run at the central gap, so grid error varies smoothly across
    the stencil and largely cancels in the differences.
    """
    _check_scalar_bc(bc)
    h = 1e-3 * pair.d
    offsets = (-2.0 * h, -h, -0.5 * h, 0.5 * h, h, 2.0 * h)
    gaps = []
    for off in offsets:
        try:
            gaps.append(CylinderPair(pair.kind, pair.a, pair.b,
                                     pair.d + off, pair.L))
        except InvalidGeometry as exc:
            raise StencilDomain(
                f"gap {pair.d + off} outside the valid domain: {exc}") from exc

    sub_tol = max(1e-10, 1e-3 * rel_tol)
    center, n_half, level = _energy_pipeline(pair, bc, sub_tol, n_cap)

    stats = {"p_max": center.p_terms_max}
    tol_elem = max(1e-13, 1e-3 * sub_tol)
    e = [_energy_at(g, bc, n_half, level, tol_elem, stats) for g in gaps]
    em2, em1, emh, eph, ep1, ep2 = e

    d_h = (em2 - 8.0 * em1 + 8.0 * ep1 - ep2) / (12.0 * h)
    d_h2 = (em1 - 8.0 * emh + 8.0 * eph - ep1) / (6.0 * h)
    d_rich = (16.0 * d_h2 - d_h) / 15.0
    force = -d_rich

    err_stencil = abs(d_rich - d_h2)
    err_prop = 3.3 * center.err_est / h
    err_est = err_stencil + err_prop
    return EnergyResult(
        value_per_length=force,
        err_est=err_est,
        n_matrix=n_half,
        p_terms_max=stats["p_max"],
        xi_nodes=center.xi_nodes,
        converged=bool(center.converged and err_est <= rel_tol * abs(force)),
    )
