r"""Exponentially scaled modified Bessel functions of integer order.

The scattering matrix needs I_n and K_n over a huge span of orders and
arguments.  Everything here works with the scaled pair

    itilde_n(z) = e^{-z} I_n(z),        ktilde_n(z) = e^{+z} K_n(z),

whose product carries no exponential growth, plus the corresponding natural
logarithms for the regimes where even the scaled values leave the double
range (large order at small argument).

Three evaluation regimes, selected by s = sqrt(n^2 + z^2):

* ascending power series for I, and for the K_0/K_1 seeds either the
  integer-order log series (z <= 2) or Steed's continued fraction
  (2 < z < ``_S_CUT``), with forward recurrence in the order for K,
* Miller-type downward recurrence, normalized against a directly computed
  order-0 value, for tables of I over many orders at once,
* uniform large-order (Debye) asymptotics, reorganized as a series in 1/s
  with polynomial coefficients in q = n^2/s^2, valid for every n/z ratio
  once s >= ``_S_CUT``.

The Debye coefficient polynomials are generated exactly (rational
arithmetic) at import time from the standard recurrence
u_{k+1}(t) = t^2(1-t^2)u_k'(t)/2 + (1/8)\int_0^t (1-5s^2)u_k(s) ds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral

import numpy as np

from .errors import DomainError

_LOG2 = math.log(2.0)
_NEG_INF = float("-inf")
_RESCALE_LOG = 250.0 * math.log(10.0)

# Regime switch on s = hypot(n, z); tuned against a high-precision oracle so
# that both the truncated Debye series and the series/recurrence region stay
# below ~1e-13 relative error (see tests).
_S_CUT = 50.0
_N_DEBYE_TERMS = 16
_EULER_GAMMA = 0.5772156649015328606


def _build_debye_tables(n_terms: int) -> list[np.ndarray]:
    """Coefficient arrays of P_k(q) = u_k(p)/p^k with q = p^2, exact build."""
    u: dict[int, Fraction] = {0: Fraction(1)}      # u_k as {t-power: coeff}
    tables = []
    for k in range(n_terms + 1):
        coeffs = [Fraction(0)] * (k + 1)
        for power, c in u.items():
            coeffs[(power - k) // 2] = c
        tables.append(np.array([float(c) for c in coeffs]))
        nxt: dict[int, Fraction] = {}
        for power, c in u.items():
            if power:
                d = c * power
                nxt[power + 1] = nxt.get(power + 1, Fraction(0)) + d / 2
                nxt[power + 3] = nxt.get(power + 3, Fraction(0)) - d / 2
            nxt[power + 1] = nxt.get(power + 1, Fraction(0)) + c / Fraction(8 * (power + 1))
            nxt[power + 3] = nxt.get(power + 3, Fraction(0)) - 5 * c / Fraction(8 * (power + 3))
        u = {p: c for p, c in nxt.items() if c}
    return tables


_DEBYE_P = _build_debye_tables(_N_DEBYE_TERMS)


def _debye_pieces(n: float, z: float) -> tuple[float, float, float, float]:
    """s, ln(series for I), ln(series for K), and n*eta(n,z) - z.

    The last piece is the scaled exponent, computed cancellation-free via
    s - z = n^2/(s + z).
    """
    s = math.hypot(n, z)
    q = (n / s) ** 2
    inv_s = 1.0 / s
    sig_i = 0.0
    sig_k = 0.0
    power = 1.0
    sign = 1.0
    for tab in _DEBYE_P:
        pk = 0.0
        for c in tab[::-1]:
            pk = pk * q + c
        sig_i += pk * power
        sig_k += sign * pk * power
        power *= inv_s
        sign = -sign
    eta_minus_z = n * n / (s + z) + (n * math.log(z / (n + s)) if n else 0.0)
    return s, math.log(sig_i), math.log(sig_k), eta_minus_z


def _log_i_uniform(n: float, z: float) -> float:
    s, log_si, _, em = _debye_pieces(n, z)
    return em - 0.5 * math.log(2.0 * math.pi * s) + log_si


def _log_k_uniform(n: float, z: float) -> float:
    s, _, log_sk, em = _debye_pieces(n, z)
    return -em + 0.5 * math.log(math.pi / (2.0 * s)) + log_sk


def _log_i_series(n: int, z: float) -> float:
    """log itilde_n by the ascending series; all terms positive."""
    if z == 0.0:
        return 0.0 if n == 0 else _NEG_INF
    x = 0.25 * z * z
    term = 1.0
    total = 1.0
    for j in range(1, 400):
        term *= x / (j * (n + j))
        total += term
        if term < 1e-18 * total:
            break
    return n * math.log(0.5 * z) - math.lgamma(n + 1.0) + math.log(total) - z


def _k01_series(z: float) -> tuple[float, float]:
    """ktilde_0, ktilde_1 by the integer-order log series; use for z <= 2."""
    x = 0.25 * z * z
    lhalf = math.log(0.5 * z)
    t0 = 1.0          # x^k/(k!)^2
    i0 = 1.0
    s0 = 0.0          # sum_k>=1 t0_k H_k
    t1 = 1.0          # x^k/(k!(k+1)!)
    sum1 = 1.0        # sum_k t1_k  ( = I_1/(z/2) )
    s1 = 1.0          # sum_k t1_k (H_k + H_{k+1}); k=0 term is 1
    hk = 0.0
    hk1 = 1.0
    for k in range(1, 80):
        t0 *= x / (k * k)
        hk += 1.0 / k
        i0 += t0
        s0 += t0 * hk
        t1 *= x / (k * (k + 1))
        hk1 += 1.0 / (k + 1)
        sum1 += t1
        s1 += t1 * (hk + hk1)
        if t0 < 1e-18 * i0 and t1 < 1e-18 * sum1:
            break
    i1 = 0.5 * z * sum1
    k0 = -(lhalf + _EULER_GAMMA) * i0 + s0
    k1 = 1.0 / z + (lhalf + _EULER_GAMMA) * i1 - 0.25 * z * s1
    ez = math.exp(z)
    return ez * k0, ez * k1


def _k01_continued_fraction(z: float) -> tuple[float, float]:
    """ktilde_0, ktilde_1 by Steed's CF2 at order 0; reliable for z >= 2."""
    eps = 1e-16
    b = 2.0 * (1.0 + z)
    d = 1.0 / b
    h = delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 40000):
        a -= 2.0 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) <= eps:
            break
    h = a1 * h
    k0 = math.sqrt(math.pi / (2.0 * z)) / s
    k1 = k0 * (z + 0.5 - h) / z
    return k0, k1


def _log_k_seeds(z: float) -> tuple[float, float]:
    if z >= _S_CUT:
        return _log_k_uniform(0.0, z), _log_k_uniform(1.0, z)
    k0, k1 = _k01_series(z) if z <= 2.0 else _k01_continued_fraction(z)
    return math.log(k0), math.log(k1)


def _check_argument(z, positive: bool) -> float:
    if isinstance(z, bool) or not isinstance(z, (int, float, np.floating, np.integer)) \
            or not math.isfinite(z):
        raise DomainError(f"argument must be a finite real, got {z!r}")
    z = float(z)
    if z < 0.0 or (positive and z == 0.0):
        raise DomainError(f"argument must be {'> 0' if positive else '>= 0'}, got {z}")
    return z


def _check_order(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (Integral, np.integer)):
        raise DomainError(f"order must be an integer, got {n!r}")
    return abs(int(n))


def log_bessel_i_scaled(n: int, z: float) -> float:
    """ln(e^{-z} I_|n|(z)); -inf when the value is exactly 0 (z=0, n != 0)."""
    n = _check_order(n)
    z = _check_argument(z, positive=False)
    if z == 0.0:
        return 0.0 if n == 0 else _NEG_INF
    if math.hypot(n, z) >= _S_CUT:
        return _log_i_uniform(float(n), z)
    return _log_i_series(n, z)


def log_bessel_k_scaled(n: int, z: float) -> float:
    """ln(e^{+z} K_|n|(z))."""
    n = _check_order(n)
    z = _check_argument(z, positive=True)
    if math.hypot(n, z) >= _S_CUT:
        return _log_k_uniform(float(n), z)
    lk0, lk1 = _log_k_seeds(z)
    if n == 0:
        return lk0
    if n == 1:
        return lk1
    scale = max(lk0, lk1)
    v0 = math.exp(lk0 - scale)
    v1 = math.exp(lk1 - scale)
    for k in range(1, n):
        v0, v1 = v1, v0 + (2.0 * k / z) * v1
        if v1 > 1e250:
            v0 *= 1e-250
            v1 *= 1e-250
            scale += _RESCALE_LOG
    return math.log(v1) + scale


def log_bessel_i_prime_scaled(n: int, z: float) -> float:
    """ln(e^{-z} I'_|n|(z)) via I'_n = (I_{n-1} + I_{n+1})/2."""
    n = _check_order(n)
    z = _check_argument(z, positive=False)
    a = log_bessel_i_scaled(abs(n - 1), z)
    b = log_bessel_i_scaled(n + 1, z)
    return float(np.logaddexp(a, b)) - _LOG2


def log_bessel_k_prime_scaled(n: int, z: float) -> float:
    """ln|e^{+z} K'_|n|(z)|; the value itself is always negative."""
    n = _check_order(n)
    z = _check_argument(z, positive=True)
    a = log_bessel_k_scaled(abs(n - 1), z)
    b = log_bessel_k_scaled(n + 1, z)
    return float(np.logaddexp(a, b)) - _LOG2


def bessel_i_scaled(n: int, z: float) -> float:
    """e^{-z} I_|n|(z).  Underflows to 0 where the true value is below the
    double range; use log_bessel_i_scaled in those regimes."""
    lv = log_bessel_i_scaled(n, z)
    return 0.0 if lv == _NEG_INF else math.exp(lv)


def bessel_k_scaled(n: int, z: float) -> float:
    """e^{+z} K_|n|(z).  Saturates to inf outside the double range."""
    try:
        return math.exp(log_bessel_k_scaled(n, z))
    except OverflowError:
        return math.inf


def bessel_i_prime_scaled(n: int, z: float) -> float:
    """e^{-z} I'_|n|(z), positive for z > 0."""
    lv = log_bessel_i_prime_scaled(n, z)
    return 0.0 if lv == _NEG_INF else math.exp(lv)


def bessel_k_prime_scaled(n: int, z: float) -> float:
    """e^{+z} K'_|n|(z), always negative."""
    try:
        return -math.exp(log_bessel_k_prime_scaled(n, z))
    except OverflowError:
        return -math.inf


@dataclass(frozen=True)
class ScaledBessel:
    """Scaled values of both kinds at one (order, argument) point."""

    order: int
    argument: float
    i_scaled: float
    k_scaled: float


def scaled_pair(n: int, z: float) -> ScaledBessel:
    return ScaledBessel(order=abs(int(n)), argument=float(z),
                        i_scaled=bessel_i_scaled(n, z),
                        k_scaled=bessel_k_scaled(n, z))


def log_i_scaled_table(z: float, n_max: int) -> np.ndarray:
    """ln itilde_n(z) for n = 0..n_max as one array.

    Miller downward recurrence with on-the-fly rescaling, normalized against
    the directly evaluated order-0 value.  Cost O(n_max + sqrt(z)).
    """
    z = _check_argument(z, positive=False)
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    if z == 0.0:
        out = np.full(n_max + 1, _NEG_INF)
        out[0] = 0.0
        return out
    start = int(math.ceil(math.sqrt((n_max + 12.0) ** 2 + 42.0 * z))) + 16
    raw = np.empty(n_max + 1)
    slog = np.empty(n_max + 1)
    f_up = 0.0        # f_{k+1}
    f = 1e-280        # f_k
    acc = 0.0         # true value = stored * e^{acc}
    for k in range(start, -1, -1):
        if k <= n_max:
            raw[k] = f
            slog[k] = acc
        if k == 0:
            break
        f_up, f = f, f_up + (2.0 * k / z) * f
        if f > 1e250:
            f *= 1e-250
            f_up *= 1e-250
            acc += _RESCALE_LOG
    with np.errstate(divide="ignore"):
        logs = np.log(raw) + slog
    return logs + (log_bessel_i_scaled(0, z) - logs[0])


def log_k_scaled_table(z: float, n_max: int) -> np.ndarray:
    """ln ktilde_n(z) for n = 0..n_max; forward recurrence from the seeds."""
    z = _check_argument(z, positive=True)
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    lk0, lk1 = _log_k_seeds(z)
    out = np.empty(n_max + 1)
    out[0] = lk0
    if n_max == 0:
        return out
    out[1] = lk1
    scale = max(lk0, lk1)
    v0 = math.exp(lk0 - scale)
    v1 = math.exp(lk1 - scale)
    for k in range(1, n_max):
        v0, v1 = v1, v0 + (2.0 * k / z) * v1
        if v1 > 1e250:
            v0 *= 1e-250
            v1 *= 1e-250
            scale += _RESCALE_LOG
        out[k + 1] = math.log(v1) + scale
    return out


def log_i_prime_scaled_table(z: float, n_max: int) -> np.ndarray:
    """ln(e^{-z} I'_n(z)) for n = 0..n_max."""
    base = log_i_scaled_table(z, n_max + 1)
    lower = np.concatenate(([base[1]], base[:n_max]))      # index |n-1|
    upper = base[1:n_max + 2]                              # index n+1
    return np.logaddexp(lower, upper) - _LOG2


def log_k_prime_scaled_table(z: float, n_max: int) -> np.ndarray:
    """ln|e^{+z} K'_n(z)| for n = 0..n_max (the values are negative)."""
    base = log_k_scaled_table(z, n_max + 1)
    lower = np.concatenate(([base[1]], base[:n_max]))
    upper = base[1:n_max + 2]
    return np.logaddexp(lower, upper) - _LOG2
