"""Acceptance gate: ten numbered end-to-end criteria with stated tolerances.

Each test prints one PASS/FAIL line (visible under pytest -s) carrying
the measured figure of merit next to its tolerance, then asserts.
Criteria with a runtime budget measure and enforce it too.
"""

import math
import time

import numpy as np

from kickedtop import (
    KickedTopParams,
    SpinQuantum,
    analytic_concurrence,
    analytic_concurrence_series,
    blocks_u_pm,
    build_parity_basis,
    chebyshev_step,
    chebyshev_table,
    collective_expectations,
    concurrence_dicke_form,
    concurrence_series,
    concurrence_x_form,
    dicke_concurrence_closed,
    epr_expectations,
    epr_reduce,
    floquet,
    lyapunov,
    number_state,
    parity_operator,
    reduce_symmetric,
    spin_coherent,
    wootters,
)
import kickedtop.cli as cli
from oracles import (
    concurrence_power_iteration,
    epr_expectations_bruteforce,
    fibonacci_sphere,
    random_density,
)


def report(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num:02d} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"criterion {num:02d}: {detail}"


def pair_concurrence(state) -> float:
    return wootters(reduce_symmetric(collective_expectations(state))).concurrence


def spin_flip_product(rho: np.ndarray) -> np.ndarray:
    signs = np.array([-1.0, 1.0, 1.0, -1.0])
    return rho @ (rho.conj()[::-1, ::-1] * np.outer(signs, signs))


def test_criterion_01_dicke_closed_form_matches_pipeline():
    t0 = time.perf_counter()
    worst_bridge = 0.0
    worst_special = 0.0
    for n_qubits in (15, 20, 25, 30):
        for n_exc in range(n_qubits + 1):
            m = n_exc - n_qubits / 2.0
            closed = dicke_concurrence_closed(n_qubits, m)
            numeric = pair_concurrence(number_state(n_qubits, n_exc))
            worst_bridge = max(worst_bridge, abs(closed - numeric))
        if n_qubits % 2 == 0:
            worst_special = max(
                worst_special,
                abs(dicke_concurrence_closed(n_qubits, 0.0) - 1.0 / (n_qubits - 1)),
            )
        worst_special = max(
            worst_special,
            abs(dicke_concurrence_closed(n_qubits, n_qubits / 2.0 - 1.0) - 2.0 / n_qubits),
            abs(dicke_concurrence_closed(n_qubits, 1.0 - n_qubits / 2.0) - 2.0 / n_qubits),
        )
    elapsed = time.perf_counter() - t0
    ok = worst_bridge <= 1e-9 and worst_special <= 1e-12 and elapsed < 5.0
    report(
        1,
        ok,
        f"closed vs pipeline {worst_bridge:.3e} (tol 1e-9), "
        f"special values {worst_special:.3e} (tol 1e-12), {elapsed:.2f}s < 5s",
    )


def test_criterion_02_spin_coherent_states_are_exactly_separable():
    t0 = time.perf_counter()
    worst_c_lambda = -math.inf
    worst_product = 0.0
    for n_qubits in range(2, 31):
        for eta in (0.0, 0.3, 1.0, 2.5):
            dm = reduce_symmetric(collective_expectations(spin_coherent(n_qubits, eta)))
            res = wootters(dm)
            worst_c_lambda = max(worst_c_lambda, res.c_lambda)
            assert res.concurrence == 0.0
            worst_product = max(worst_product, float(np.abs(spin_flip_product(dm.rho)).max()))
    elapsed = time.perf_counter() - t0
    ok = worst_c_lambda <= 1e-10 and worst_product <= 1e-10 and elapsed < 5.0
    report(
        2,
        ok,
        f"max c_lambda {worst_c_lambda:.3e} (tol 1e-10), "
        f"max|rho rho~| {worst_product:.3e} (tol 1e-10), {elapsed:.2f}s < 5s",
    )


def test_criterion_03_shared_singlet_pairs():
    t0 = time.perf_counter()
    worst_c = max(
        abs(wootters(epr_reduce(n)).concurrence - 1.0 / n) for n in range(1, 51)
    )
    worst_closed = 0.0
    for n in range(1, 51):
        jzz, jpp = epr_expectations(n)
        scale = max(1.0, n * n)
        worst_closed = max(
            worst_closed,
            abs(jzz - n * (n + 2) / 12.0) / scale,
            abs(jpp - n * (n + 2) / 6.0) / scale,
        )
    worst_brute = 0.0
    for n in range(1, 7):
        got = epr_expectations(n)
        want = epr_expectations_bruteforce(n)
        worst_brute = max(worst_brute, abs(got[0] - want[0]), abs(got[1] - want[1]))
    elapsed = time.perf_counter() - t0
    ok = worst_c <= 1e-10 and worst_closed <= 1e-12 and worst_brute <= 1e-10 and elapsed < 5.0
    report(
        3,
        ok,
        f"|C - 1/N| {worst_c:.3e} (tol 1e-10), closed sums {worst_closed:.3e}, "
        f"tensor oracle {worst_brute:.3e}, {elapsed:.2f}s < 5s",
    )


def test_criterion_04_three_qubit_simulator_equals_closed_form():
    t0 = time.perf_counter()
    worst = 0.0
    worst_pair = 0.0
    for kappa0 in np.linspace(0.0, 3.0 * math.pi, 50):
        series = concurrence_series(KickedTopParams(SpinQuantum(3), kappa0), 0.0, 0.0, 200)
        sim = np.array([c for _, c in series.entries])
        ana = analytic_concurrence_series(200, kappa0)
        worst = max(worst, float(np.abs(sim - ana).max()))
        worst_pair = max(worst_pair, float(np.abs(sim[0::2] - sim[1::2]).max()))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and worst_pair <= 1e-9 and elapsed < 30.0
    report(
        4,
        ok,
        f"|C_sim - C_analytic| {worst:.3e} (tol 1e-9), odd/even {worst_pair:.3e} "
        f"(tol 1e-9), {elapsed:.1f}s < 30s",
    )


def test_criterion_05_spot_value_after_two_kicks():
    ref = (math.sqrt(13.0) - 1.0) / 8.0
    closed = analytic_concurrence(2, math.pi / 2.0)
    series = concurrence_series(KickedTopParams(SpinQuantum(3), math.pi / 2.0), 0.0, 0.0, 2)
    simulated = dict(series.entries)[2]
    err = max(abs(closed - ref), abs(simulated - ref))
    report(5, err <= 1e-12, f"|C(2, pi/2) - (sqrt(13)-1)/8| = {err:.3e} (tol 1e-12) both paths")


def test_criterion_06_chebyshev_identities():
    worst_pell = 0.0
    worst_bound = 0.0
    worst_norm = 0.0
    for kappa0 in np.linspace(0.0, 3.0 * math.pi, 25):
        chi = math.sin(kappa0 / 3.0) / 2.0
        kappa = kappa0 / 6.0
        t, u = chebyshev_table(10_000, kappa0)
        worst_pell = max(
            worst_pell, float(np.abs(t * t + (1.0 - chi * chi) * u * u - 1.0).max())
        )
        worst_bound = max(worst_bound, float(np.abs(u).max()) - 2.0 / math.sqrt(3.0))
        norms = t * t + (u * u) * (math.cos(2 * kappa) ** 2) / 4.0 + 0.75 * u * u
        worst_norm = max(worst_norm, float(np.abs(norms - 1.0).max()))
    # the per-step dataclass exposes the same alpha/beta normalization
    for n in (0, 1, 2, 17, 395, 10_000):
        st = chebyshev_step(n, 2.4)
        worst_norm = max(worst_norm, abs(abs(st.alpha) ** 2 + abs(st.beta) ** 2 - 1.0))
    ok = worst_pell <= 1e-12 and worst_bound <= 1e-12 and worst_norm <= 1e-12
    report(
        6,
        ok,
        f"Pell residue {worst_pell:.3e} (tol 1e-12), |U| excess {worst_bound:.3e}, "
        f"|alpha|^2+|beta|^2 residue {worst_norm:.3e} (tol 1e-12), n <= 1e4",
    )


def test_criterion_07_unitarity_parity_and_block_structure():
    worst_unitary = 0.0
    for two_j in range(1, 51):
        q = SpinQuantum(two_j)
        for kappa0 in (0.5, 2.5, 6.012):
            u = floquet(KickedTopParams(q, kappa0))
            worst_unitary = max(
                worst_unitary,
                float(np.abs(u.conj().T @ u - np.eye(q.dim)).max()),
            )
    pi_op = parity_operator(SpinQuantum(3))
    basis = build_parity_basis()
    v = np.column_stack(
        [basis.sym_phi1_plus, basis.sym_phi2_plus, basis.sym_phi1_minus, basis.sym_phi2_minus]
    )
    worst_parity = 0.0
    worst_leak = 0.0
    for kappa0 in np.linspace(0.0, 3.0 * math.pi, 40):
        u = floquet(KickedTopParams(SpinQuantum(3), kappa0))
        worst_parity = max(worst_parity, float(np.abs(u @ pi_op - pi_op @ u).max()))
        w = v.conj().T @ u @ v
        worst_leak = max(
            worst_leak, float(np.abs(w[:2, 2:]).max()), float(np.abs(w[2:, :2]).max())
        )
        blocks_u_pm(kappa0)  # must not raise
    ok = worst_unitary <= 1e-11 and worst_parity <= 1e-10 and worst_leak <= 1e-11
    report(
        7,
        ok,
        f"unitarity {worst_unitary:.3e} (tol 1e-11, 2j <= 50), parity "
        f"{worst_parity:.3e} (tol 1e-10), block leakage {worst_leak:.3e} (tol 1e-11)",
    )


def test_criterion_08_eigenvalue_route_against_independent_oracle():
    t0 = time.perf_counter()
    rng = np.random.default_rng(0)
    worst_oracle = 0.0
    for _ in range(10_000):
        rho = random_density(rng)
        worst_oracle = max(
            worst_oracle,
            abs(wootters(rho).concurrence - concurrence_power_iteration(rho)),
        )
    worst_short = 0.0
    for n_qubits in range(3, 13):
        for n_exc in range(n_qubits + 1):
            dm = reduce_symmetric(collective_expectations(number_state(n_qubits, n_exc)))
            worst_short = max(
                worst_short,
                abs(concurrence_dicke_form(dm) - wootters(dm).concurrence),
            )
    for _ in range(200):
        v = rng.random(3)
        v /= v.sum() + v[1]  # diagonal (v0, w, w, v2) must sum to 1
        w = v[1]
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = v[0], w, w, v[2]
        rho[3, 0] = rng.random() * math.sqrt(v[0] * v[2]) * np.exp(2j * math.pi * rng.random())
        rho[0, 3] = rho[3, 0].conjugate()
        rho[2, 1] = rng.random() * w * np.exp(2j * math.pi * rng.random())
        rho[1, 2] = rho[2, 1].conjugate()
        worst_short = max(
            worst_short, abs(concurrence_x_form(rho) - wootters(rho).concurrence)
        )
    elapsed = time.perf_counter() - t0
    ok = worst_oracle <= 1e-8 and worst_short <= 1e-10
    report(
        8,
        ok,
        f"10^4 random states vs power-iteration oracle {worst_oracle:.3e} (tol 1e-8), "
        f"shortcuts vs general route {worst_short:.3e} (tol 1e-10), {elapsed:.1f}s",
    )


def test_criterion_09_classical_chaos_ordering():
    t0 = time.perf_counter()
    start = (math.sin(2.25), 0.0, math.cos(2.25))
    lam0 = lyapunov(0.0, math.pi / 2.0, start, 100_000).lam
    pts = fibonacci_sphere(20)
    medians = []
    for kappa0 in (0.5, 2.0, 6.0):
        lams = [lyapunov(kappa0, math.pi / 2.0, pt, 100_000).lam for pt in pts]
        medians.append(float(np.median(lams)))
    elapsed = time.perf_counter() - t0
    increasing = medians[0] < medians[1] < medians[2]
    ok = abs(lam0) <= 1e-6 and increasing and medians[2] > 0.3 and elapsed < 60.0
    report(
        9,
        ok,
        f"lambda(0) = {lam0:.1e} (tol 1e-6), medians "
        f"{medians[0]:.4f} < {medians[1]:.4f} < {medians[2]:.4f} ({increasing}), "
        f"lambda(6) > 0.3, {elapsed:.1f}s < 60s at 1e5 steps",
    )


def test_criterion_10_figure_csvs_are_deterministic(capsys):
    def run(argv):
        code = cli.main(list(argv))
        out, err = capsys.readouterr()
        assert code == 0 and err == ""
        return out

    invocations = [["dicke", "--N", "15,20,25,30"]]
    for kappa in ("0.2", "0.4", "1.002"):
        invocations.append(
            ["qkt-series", "--j", "1.5", "--kappa", kappa, "--n-max", "200"]
        )
        invocations.append(
            ["qkt-series", "--j", "1.5", "--kappa0", repr(6.0 * float(kappa)), "--n-max", "200"]
        )
    invocations.append(["lyapunov", "--kappa0", "1.2,2.4,6.0", "--steps", "1000"])

    headers = {
        "dicke": "N,M,C_closed,C_numeric",
        "qkt-series": "n,C,C_analytic",
        "lyapunov": "kappa0,seed,n,lambda_running",
    }
    all_ok = True
    for argv in invocations:
        first = run(argv)
        second = run(argv)
        all_ok &= first == second
        all_ok &= first.split("\n")[0] == headers[argv[0]]
    # both torsion spellings of one series produce identical rows
    for kappa in ("0.2", "0.4", "1.002"):
        out_a = run(["qkt-series", "--j", "1.5", "--kappa", kappa, "--n-max", "200"])
        out_b = run(
            ["qkt-series", "--j", "1.5", "--kappa0", repr(6.0 * float(kappa)), "--n-max", "200"]
        )
        all_ok &= out_a == out_b
    report(
        10,
        all_ok,
        "dicke, qkt-series (kappa = 0.2, 0.4, 1.002 under both readings), lyapunov: "
        "documented headers, byte-identical reruns",
    )
