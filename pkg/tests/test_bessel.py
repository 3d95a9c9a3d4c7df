import math

import numpy as np
import pytest

from casimir_cylinders.bessel import (
    ScaledBessel,
    bessel_i_prime_scaled,
    bessel_i_scaled,
    bessel_k_prime_scaled,
    bessel_k_scaled,
    log_bessel_i_prime_scaled,
    log_bessel_i_scaled,
    log_bessel_k_prime_scaled,
    log_bessel_k_scaled,
    log_i_prime_scaled_table,
    log_i_scaled_table,
    log_k_prime_scaled_table,
    log_k_scaled_table,
    scaled_pair,
)
from casimir_cylinders.errors import DomainError

# (n, z, ln itilde_n, ln ktilde_n, ln itilde'_n, ln|ktilde'_n|) frozen from a
# 50-digit arbitrary-precision evaluation, rounded to the nearest double.
_SPOT_LOGS = [
    (0, 1.0, -0.76408564149282135, 0.1349356010932119,
     -1.5706479874908313, 0.49234805178924767),
    (1, 1.0, -1.5706479874908313, 0.49234805178924767,
     -1.355380391148862, 1.0226726894677579),
    (5, 0.5, -12.208554618785102, 9.9007937321946314,
     -9.9018176742982353, 12.209577513503645),
    (10, 25.0, -4.5364135026379731, 0.55022634280520238,
     -4.4783857274444869, 0.6402706232138881),
    (40, 10.0, -55.337711772720696, 50.925356794289646,
     -53.92180296518008, 52.342692887217297),
    (60, 60.0, -31.168760137296519, 26.034681784098609,
     -30.825123987277425, 26.38421017529727),
    (137, 89.0, -95.74055723638635, 89.951384437520861,
     -95.134076692694676, 90.559681565981053),
    (300, 10.0, -941.99143115341707, 935.59394624490824,
     -938.58968036725406, 938.99570072865149),
    (500, 1000.0, -127.0004513048602, 119.2879770696609,
     -126.88923736403739, 119.39990655215256),
    (200, 0.001, -2383.4134790995782, 2377.4220145524577,
     -2371.2074064540355, 2389.6280871980004),
    (3, 0.001, -24.595466785354302, 22.803707253626255,
     -16.58909917603739, 30.810074904609821),
    (0, 750.0, -4.2288083585374302, -3.0844118063300071,
     -4.2294754701927413, -3.0837455835655602),
]

_GRID_ORDERS = (0, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 500)
_GRID_ARGS = np.geomspace(1e-3, 1e3, 27)


@pytest.mark.parametrize("n,z,li,lk,lip,lkp", _SPOT_LOGS)
def test_spot_logs(n, z, li, lk, lip, lkp):
    tol = lambda ref: 1e-12 * (1.0 + abs(ref))
    assert abs(log_bessel_i_scaled(n, z) - li) <= tol(li)
    assert abs(log_bessel_k_scaled(n, z) - lk) <= tol(lk)
    assert abs(log_bessel_i_prime_scaled(n, z) - lip) <= tol(lip)
    assert abs(log_bessel_k_prime_scaled(n, z) - lkp) <= tol(lkp)


def test_wronskian_identity_full_grid():
    # z*(I_n K'_n rearranged): e^{li+lkp}z + e^{lip+lk}z = 1, exercised in a
    # form that never underflows because the huge exponents cancel pairwise.
    worst = 0.0
    for n in _GRID_ORDERS:
        for z in _GRID_ARGS:
            lz = math.log(z)
            li = log_bessel_i_scaled(n, z)
            lk = log_bessel_k_scaled(n, z)
            lip = log_bessel_i_prime_scaled(n, z)
            lkp = log_bessel_k_prime_scaled(n, z)
            total = math.exp(li + lkp + lz) + math.exp(lip + lk + lz)
            worst = max(worst, abs(total - 1.0))
    assert worst <= 1e-12


def test_unscaled_spot_values():
    # classic handbook values at z = 1
    e = math.e
    assert abs(bessel_i_scaled(0, 1.0) * e - 1.2660658777520083356) < 1e-15
    assert abs(bessel_k_scaled(0, 1.0) / e - 0.42102443824070833334) < 1e-15
    assert abs(bessel_i_scaled(1, 1.0) * e - 0.56515910399248502721) < 1e-15
    assert abs(bessel_k_scaled(1, 1.0) / e - 0.60190723019723457474) < 1e-15


def test_prime_value_signs():
    assert bessel_i_prime_scaled(3, 2.0) > 0.0
    assert bessel_k_prime_scaled(3, 2.0) < 0.0
    assert abs(bessel_k_prime_scaled(3, 2.0)
               + math.exp(log_bessel_k_prime_scaled(3, 2.0))) == 0.0


@pytest.mark.parametrize("z", [1e-3, 0.4, 2.7, 19.0, 333.0])
def test_tables_match_scalars(z):
    n_max = 60
    ti = log_i_scaled_table(z, n_max)
    tk = log_k_scaled_table(z, n_max)
    tip = log_i_prime_scaled_table(z, n_max)
    tkp = log_k_prime_scaled_table(z, n_max)
    for n in range(n_max + 1):
        for got, ref in (
            (ti[n], log_bessel_i_scaled(n, z)),
            (tk[n], log_bessel_k_scaled(n, z)),
            (tip[n], log_bessel_i_prime_scaled(n, z)),
            (tkp[n], log_bessel_k_prime_scaled(n, z)),
        ):
            assert abs(got - ref) <= 1e-11 * (1.0 + abs(ref))


def test_negative_order_symmetry():
    for n in (1, 4, 17):
        assert log_bessel_i_scaled(-n, 2.5) == log_bessel_i_scaled(n, 2.5)
        assert log_bessel_k_scaled(-n, 2.5) == log_bessel_k_scaled(n, 2.5)
        assert log_bessel_i_prime_scaled(-n, 2.5) == log_bessel_i_prime_scaled(n, 2.5)
        assert log_bessel_k_prime_scaled(-n, 2.5) == log_bessel_k_prime_scaled(n, 2.5)


def test_zero_argument_regular_solution():
    assert log_bessel_i_scaled(0, 0.0) == 0.0
    assert log_bessel_i_scaled(3, 0.0) == -math.inf
    assert bessel_i_scaled(3, 0.0) == 0.0
    table = log_i_scaled_table(0.0, 4)
    assert table[0] == 0.0
    assert np.all(np.isneginf(table[1:]))


def test_zero_argument_irregular_rejected():
    with pytest.raises(DomainError):
        log_bessel_k_scaled(0, 0.0)
    with pytest.raises(DomainError):
        log_k_scaled_table(0.0, 3)


@pytest.mark.parametrize("bad", [-1.0, math.inf, math.nan, "2", None])
def test_bad_arguments_rejected(bad):
    with pytest.raises(DomainError):
        log_bessel_i_scaled(0, bad)


@pytest.mark.parametrize("bad", [1.5, "3", None, True])
def test_bad_orders_rejected(bad):
    with pytest.raises(DomainError):
        log_bessel_k_scaled(bad, 1.0)
    with pytest.raises(DomainError):
        log_bessel_i_scaled(bad, 1.0)


def test_order_monotonicity_at_fixed_argument():
    z = 7.3
    li = log_i_scaled_table(z, 30)
    lk = log_k_scaled_table(z, 30)
    assert np.all(np.diff(li) < 0.0)
    assert np.all(np.diff(lk) > 0.0)


def test_scaled_pair_fields():
    sb = scaled_pair(-2, 3.0)
    assert isinstance(sb, ScaledBessel)
    assert sb.order == 2
    assert sb.argument == 3.0
    assert sb.i_scaled == bessel_i_scaled(2, 3.0)
    assert sb.k_scaled == bessel_k_scaled(2, 3.0)


def test_table_rejects_negative_length():
    with pytest.raises(DomainError):
        log_i_scaled_table(1.0, -1)
