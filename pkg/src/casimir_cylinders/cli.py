"""Command-line front end: point evaluations, sweeps, verification.

Output is machine readable: CSV (versioned header comment, then one row per
record) or JSON (array of flat objects, same keys as the CSV columns).
Numbers are emitted with Python repr semantics, so identical inputs yield
identical bytes; wall_seconds is the one run-dependent field and --no-timing
zeroes it for byte-level comparisons.

Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 non-convergence.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .asymptotics import (
    PfaBias,
    classify_pfa_bias,
    energy_expansion,
    force_expansion,
    limit_consistency_check,
)
from .bessel import (
    log_bessel_i_prime_scaled,
    log_bessel_i_scaled,
    log_bessel_k_prime_scaled,
    log_bessel_k_scaled,
    scaled_pair,
)
from .errors import CasimirCylError, InvalidGeometry, NoConvergence
from .geometry import (
    COMPOSITE_PAIRS,
    SCALAR_PAIRS,
    BoundaryPair,
    CylinderPair,
    Kind,
)
from .oracle import (
    PerturbationPoint,
    b_s_closed,
    b_s_numeric,
    chain_square_backward,
    chain_square_forward,
    chain_square_sum,
    e0_coefficient_check,
    e1_from_b,
    g_hat_closed,
    g_hat_numeric,
    h_hat_closed,
    h_hat_numeric,
    i_endpoint_numeric,
    i_term_numeric,
)
from .pfa import pfa_force_integral, pfa_force_leading
from .scattering import casimir_energy_exact, casimir_force_exact

_CSV_VERSION = "# casimir_cylinders run_record v1"
_FIELDS = ("kind", "bc", "a", "b", "d", "method", "value_per_length",
           "err_est", "n_matrix", "p_terms_max", "xi_nodes", "wall_seconds")
_METHODS = ("exact", "pfa-integral", "pfa-leading", "asymptotic")


class UsageError(Exception):
    pass


def _parse_bc(text: str) -> BoundaryPair:
    try:
        return BoundaryPair[text.upper()]
    except KeyError:
        raise UsageError(f"unknown boundary pair {text!r}") from None


def _parse_methods(raw: list[str] | None) -> list[str]:
    if not raw:
        return ["exact"]
    out = []
    for chunk in raw:
        for method in chunk.split(","):
            method = method.strip()
            if method not in _METHODS:
                raise UsageError(f"unknown method {method!r}")
            if method not in out:
                out.append(method)
    return out


def _check_combo(method: str, bc: BoundaryPair, quantity: str) -> None:
    if method == "exact" and bc in COMPOSITE_PAIRS:
        raise UsageError(
            f"exact method handles scalar pairs only; {bc.value} composes "
            "from two scalar runs")
    if method == "pfa-integral" and quantity == "energy":
        raise UsageError("pfa-integral provides force only")


def _run_task(task: tuple) -> tuple[dict, int, str]:
    """Evaluate one (geometry, method) point.  Returns (record, exit, diag).

    Top-level so sweep workers can pickle it; never raises, so a failed point
    degrades to a NaN record and exit code instead of killing the pool.
    """
    kind_s, bc_s, a, b, d, method, quantity, rel_tol, timing = task
    t0 = time.perf_counter()
    value = err = math.nan
    n_matrix = p_terms = xi_nodes = 0
    code = 0
    diag = ""
    try:
        pair = CylinderPair(Kind(kind_s), a, b, d)
        bc = _parse_bc(bc_s)
        _check_combo(method, bc, quantity)
        if method == "exact":
            fn = casimir_energy_exact if quantity == "energy" else casimir_force_exact
            res = fn(pair, bc, rel_tol)
            value, err = res.value_per_length, res.err_est
            n_matrix, p_terms, xi_nodes = res.n_matrix, res.p_terms_max, res.xi_nodes
            if not res.converged:
                code = 3
                diag = f"not converged at rel_tol={rel_tol}: err_est={err:.3e}"
        elif method == "pfa-integral":
            value, err = pfa_force_integral(pair, bc).force_per_length, 0.0
        elif method == "pfa-leading":
            if quantity == "energy":
                value = energy_expansion(pair, bc).amplitude
            else:
                value = pfa_force_leading(pair, bc).force_per_length
            err = 0.0
        else:
            exp = (energy_expansion if quantity == "energy"
                   else force_expansion)(pair, bc)
            value = exp.amplitude * (1.0 + exp.bracket * d)
            err = 0.0
    except UsageError as exc:
        code, diag = 2, str(exc)
    except (InvalidGeometry,) as exc:
        code, diag = 2, str(exc)
    except NoConvergence as exc:
        code, diag = 3, str(exc)
    except CasimirCylError as exc:
        code, diag = 2, str(exc)
    wall = time.perf_counter() - t0 if timing else 0.0
    record = {
        "kind": kind_s, "bc": bc_s, "a": a, "b": b, "d": d, "method": method,
        "value_per_length": value, "err_est": err, "n_matrix": n_matrix,
        "p_terms_max": p_terms, "xi_nodes": xi_nodes, "wall_seconds": wall,
    }
    return record, code, diag


def _emit(records: list[dict], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        clean = [
            {k: (None if isinstance(v, float) and not math.isfinite(v) else v)
             for k, v in rec.items()}
            for rec in records
        ]
        out.write(json.dumps(clean, indent=2) + "\n")
        return
    out.write(_CSV_VERSION + "\n")
    out.write(",".join(_FIELDS) + "\n")
    for rec in records:
        out.write(",".join(repr(rec[f]) if isinstance(rec[f], float)
                           else str(rec[f]) for f in _FIELDS) + "\n")


def cmd_compute(args) -> int:
    methods = _parse_methods(args.method)
    bc = _parse_bc(args.bc)
    for method in methods:
        _check_combo(method, bc, args.quantity)
    records, worst = [], 0
    for method in methods:
        rec, code, diag = _run_task((args.kind, args.bc, args.a, args.b,
                                     args.d, method, args.quantity,
                                     args.rel_tol, not args.no_timing))
        if diag:
            print(f"{method}: {diag}", file=sys.stderr)
        if code == 2:
            return 2
        records.append(rec)
        worst = max(worst, code)
    _emit(records, args.format)
    return worst


def _parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("--d-grid wants start:stop:count")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"bad --d-grid: {exc}") from None
    if count < 1 or start <= 0 or stop <= 0:
        raise UsageError("--d-grid needs positive endpoints and count >= 1")
    if count == 1:
        return [start]
    return [float(x) for x in np.geomspace(start, stop, count)]


def cmd_sweep(args) -> int:
    methods = _parse_methods(args.method)
    bc = _parse_bc(args.bc)
    for method in methods:
        _check_combo(method, bc, args.quantity)
    grid = _parse_grid(args.d_grid)
    tasks = [(args.kind, args.bc, args.a, args.b, d, method, args.quantity,
              args.rel_tol, not args.no_timing)
             for d in sorted(grid) for method in sorted(methods)]
    workers = args.parallel
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    worst = 0
    records = []
    for rec, code, diag in results:
        if diag:
            print(f"d={rec['d']} {rec['method']}: {diag}", file=sys.stderr)
        if code == 2:
            return 2
        records.append(rec)
        worst = max(worst, code)
    _emit(records, args.format)
    return worst


def _check(name: str, ok: bool, detail: str, lines: list) -> None:
    lines.append(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")
    if not ok:
        lines.append(f"      check failed: {name}")


def _verify_bessel(level: str, lines: list) -> bool:
    ok_all = True
    orders = (0, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 500)
    zs = np.geomspace(1e-3, 1e3, 27)
    worst = 0.0
    for n in orders:
        for z in zs:
            lz = math.log(z)
            s = (math.exp(log_bessel_i_scaled(n, z)
                          + log_bessel_k_prime_scaled(n, z) + lz)
                 + math.exp(log_bessel_i_prime_scaled(n, z)
                            + log_bessel_k_scaled(n, z) + lz))
            worst = max(worst, abs(s - 1.0))
    ok = worst <= 1e-12
    _check("bessel wronskian grid", ok, f"worst {worst:.2e}", lines)
    ok_all &= ok

    e = math.e
    spots = (  # unscaled references from a 50-digit series evaluation
        (scaled_pair(0, 1.0).i_scaled * e, 1.2660658777520083356),
        (scaled_pair(0, 1.0).k_scaled / e, 0.42102443824070833334),
        (scaled_pair(1, 1.0).i_scaled * e, 0.56515910399248502721),
        (scaled_pair(1, 1.0).k_scaled / e, 0.60190723019723457474),
    )
    worst = max(abs(got - ref) / ref for got, ref in spots)
    ok = worst <= 1e-12
    _check("bessel spot values", ok, f"worst {worst:.2e}", lines)
    ok_all &= ok
    return ok_all


def _verify_oracle(level: str, lines: list) -> bool:
    ok_all = True
    const = e0_coefficient_check(0)
    const_alt = e0_coefficient_check(1)
    err = max(abs(const / (math.pi ** 4 / 90.0) - 1.0),
              abs(const_alt / (7.0 * math.pi ** 4 / 720.0) - 1.0),
              abs(const_alt / const - 7.0 / 8.0))
    ok = err <= 1e-12
    _check("zeta sums", ok, f"worst {err:.2e}", lines)
    ok_all &= ok

    rng = np.random.default_rng(20240811)
    worst = 0.0
    for _ in range(200):
        pt = PerturbationPoint(
            s=1, m=float(rng.uniform(0.3, 3.0)), tau=float(rng.uniform(0.05, 1.0)),
            eps=float(rng.uniform(0.0, 0.3)), alpha=float(rng.uniform(0.4, 2.5)))
        ns = rng.uniform(-2.0, 2.0, size=2)
        for bc in SCALAR_PAIRS:
            worst = max(
                worst,
                abs(g_hat_numeric(bc, pt, ns[0], ns[1])
                    - g_hat_closed(bc, pt, ns[0], ns[1])),
                abs(h_hat_numeric(bc, pt, ns[0], ns[1])
                    - h_hat_closed(bc, pt, ns[0], ns[1])))
    ok = worst <= 1e-11
    _check("q-integration closures", ok, f"worst {worst:.2e}", lines)
    ok_all &= ok

    s_top = 3 if level == "slow" else 2
    worst = 0.0
    for s in range(s_top + 1):
        for m in (0.5, 1.0, 2.0):
            for tau in (0.25, 0.75, 1.0):
                for alpha in (0.5, 1.0, 2.0):
                    pt = PerturbationPoint(s=s, m=m, tau=tau, eps=0.1,
                                           alpha=alpha)
                    for bc in SCALAR_PAIRS:
                        worst = max(worst, abs(b_s_numeric(bc, pt)
                                               - b_s_closed(bc, pt)))
    ok = worst <= 1e-8
    _check(f"reflection coefficients s<= {s_top}", ok, f"worst {worst:.2e}",
           lines)
    ok_all &= ok

    worst = 0.0
    for s in range(1, 7):
        inner = [float(v) for v in np.linspace(-1.3, 1.1, s)]
        total = chain_square_sum(inner)
        worst = max(worst, abs(chain_square_forward(inner) - total),
                    abs(chain_square_backward(inner) - total))
    ok = worst <= 1e-12
    _check("partition identities", ok, f"worst {worst:.2e}", lines)
    ok_all &= ok

    pt = PerturbationPoint(s=3, m=0.8, tau=0.6, eps=0.12, alpha=1.5)
    worst = 0.0
    for bc in SCALAR_PAIRS:
        worst = max(worst,
                    abs(i_endpoint_numeric(bc, pt, 0) - i_term_numeric(bc, pt, 0)),
                    abs(i_endpoint_numeric(bc, pt, 3) - i_term_numeric(bc, pt, 3)))
    ok = worst <= 1e-8
    _check("endpoint substitution", ok, f"worst {worst:.2e}", lines)
    ok_all &= ok

    if level == "slow":
        pair = CylinderPair(Kind.INTERIOR, 1.0, 2.0, 0.02)
        worst = 0.0
        for bc in SCALAR_PAIRS:
            theta = e1_from_b(pair, bc)
            table = energy_expansion(pair, bc).bracket
            worst = max(worst, abs(theta - table))
        ok = worst <= 1e-6
        _check("NTLO brackets dual route", ok, f"worst {worst:.2e}", lines)
        ok_all &= ok
    return ok_all


def _verify_asymptotics(level: str, lines: list) -> bool:
    ok_all = True
    mismatch = 0
    for kind in Kind:
        for bc in BoundaryPair:
            pair = CylinderPair(kind, 1.0, 2.3, 0.07)
            if force_expansion(pair, bc).amplitude != \
                    pfa_force_leading(pair, bc).force_per_length:
                mismatch += 1
    ok = mismatch == 0
    _check("PFA amplitude identity", ok, f"{mismatch} mismatches", lines)
    ok_all &= ok

    worst = 0.0
    for bc in SCALAR_PAIRS:
        worst = max(worst, limit_consistency_check(1.0, 1e6, bc))
    ok = worst <= 2e-6
    _check("cylinder-plate limit", ok, f"worst {worst:.2e}", lines)
    ok_all &= ok

    # sign pattern anchored by the dual-route bracket values at the
    # reference interior geometry a=1, b=2 (force brackets are 3/5 of the
    # energy brackets, so the signs +,+,+,- carry over)
    pair = CylinderPair(Kind.INTERIOR, 1.0, 2.0, 0.05)
    expected = {
        BoundaryPair.DD: PfaBias.UNDERESTIMATES,
        BoundaryPair.NN: PfaBias.UNDERESTIMATES,
        BoundaryPair.DN: PfaBias.UNDERESTIMATES,
        BoundaryPair.ND: PfaBias.OVERESTIMATES,
    }
    bad = sum(1 for bc, want in expected.items()
              if classify_pfa_bias(pair, bc) is not want)
    ok = bad == 0
    _check("PFA bias sign pattern", ok, f"{bad} wrong", lines)
    ok_all &= ok

    worst = 0.0
    for kind in Kind:
        for bc in SCALAR_PAIRS:
            pair = CylinderPair(kind, 1.0, 2.0, 0.04)
            e = energy_expansion(pair, bc)
            f = force_expansion(pair, bc)
            worst = max(worst, abs(e.amplitude - f.amplitude * 2.0 * pair.d / 5.0)
                        / abs(e.amplitude))
    ok = worst <= 1e-14
    _check("energy-force amplitude ratio", ok, f"worst {worst:.2e}", lines)
    ok_all &= ok
    return ok_all


def cmd_verify(args) -> int:
    suites = {
        "bessel": _verify_bessel,
        "oracle": _verify_oracle,
        "asymptotics": _verify_asymptotics,
    }
    names = list(suites) if args.suite == "all" else [args.suite]
    lines: list[str] = []
    ok = True
    for name in names:
        lines.append(f"== {name} ==")
        ok &= suites[name](args.level, lines)
    print("\n".join(lines))
    print("verification:", "ok" if ok else "FAILED")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir-cyl",
        description="Casimir interaction of two parallel cylinders "
                    "(units hbar = c = 1; results per unit length)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--kind", choices=("interior", "exterior"),
                       required=True)
        p.add_argument("--bc", required=True,
                       help="dd|nn|dn|nd|pcpc|pcip")
        p.add_argument("--a", type=float, required=True)
        p.add_argument("--b", type=float, required=True)
        p.add_argument("--quantity", choices=("energy", "force"),
                       default="energy")
        p.add_argument("--method", action="append",
                       help="comma-separated subset of "
                            "exact,pfa-integral,pfa-leading,asymptotic")
        p.add_argument("--rel-tol", type=float, default=1e-6)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--no-timing", action="store_true",
                       help="report wall_seconds as 0 for reproducible bytes")

    pc = sub.add_parser("compute", help="one geometry, one or more methods")
    common(pc)
    pc.add_argument("--d", type=float, required=True)
    pc.set_defaults(func=cmd_compute)

    ps = sub.add_parser("sweep", help="log-spaced separation sweep")
    common(ps)
    ps.add_argument("--d-grid", required=True, help="start:stop:count")
    ps.add_argument("--parallel", type=int,
                    default=int(os.environ.get("CASIMIR_CYL_THREADS", "1")))
    ps.set_defaults(func=cmd_sweep)

    pv = sub.add_parser("verify", help="run built-in validation suites")
    pv.add_argument("--suite", choices=("bessel", "oracle", "asymptotics",
                                        "all"), default="all")
    pv.add_argument("--level", choices=("fast", "slow"), default="fast")
    pv.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidGeometry, CasimirCylError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
