"""Exactly solvable three-qubit kicked top (j = 3/2).

At j = 3/2 the Floquet operator splits over a parity-adapted basis into
two 2x2 blocks, so the dynamics reduces to products of 2x2 unitaries
and everything downstream (the evolved state, the two-qubit reduced
matrix, the concurrence) has a closed form in Chebyshev polynomials of
chi = sin(kappa0/3)/2.

The block decomposition here is always constructed numerically, by
conjugating the full j = 3/2 Floquet matrix into the parity basis.
The Chebyshev route is an independent closed form; agreement between
the two is a test obligation, not an assumption.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BlockLeakage, DomainError
from .kicked_top import KickedTopParams, floquet
from .numerics import unitary_from_hermitian
from .pairwise import TwoQubitDensity
from .spin import SpinQuantum, collective_operators

BLOCK_LEAKAGE_TOL = 1e-9

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class ParityBasis:
    """Parity eigenvectors of the 3-qubit symmetric subspace.

    Each vector is given twice: over the 8-dimensional product basis
    |q1 q2 q3> (index 4*q1 + 2*q2 + q3) and as 4 coordinates over the
    symmetric states ordered by the number of qubits in |0>:
    (|111>, |W-bar>, |W>, |000>).  `embedding` is the 8x4 isometry
    whose columns are those symmetric states in the product basis.
    """

    phi1_plus: np.ndarray
    phi2_plus: np.ndarray
    phi1_minus: np.ndarray
    phi2_minus: np.ndarray
    sym_phi1_plus: np.ndarray
    sym_phi2_plus: np.ndarray
    sym_phi1_minus: np.ndarray
    sym_phi2_minus: np.ndarray
    embedding: np.ndarray


@dataclass(frozen=True)
class ChebyshevStep:
    """Closed-form block data after n kicks.

    t = T_n(chi) and u_prev = U_{n-1}(chi) are the Chebyshev values the
    block entries are made of; alpha and beta are the entries
    themselves (phases of the overall block stripped); gamma is the
    per-kick rotation angle, cos(gamma) = chi.
    """

    n: int
    chi: float
    t: float
    u_prev: float
    alpha: complex
    beta: complex
    gamma: float


def parity_operator(q: SpinQuantum) -> np.ndarray:
    """Flip-all-qubits parity on the symmetric subspace.

    Equals the product of single-qubit sigma_y's restricted to the
    symmetric sector: i^N times the rotation by pi about y.
    """
    ops = collective_operators(q)
    return (1j**q.n_qubits) * unitary_from_hermitian(ops.jy, math.pi)


def build_parity_basis() -> ParityBasis:
    """The four parity eigenvectors spanning the j = 3/2 subspace."""
    dim = 8
    e = np.eye(dim, dtype=complex)
    ket000 = e[0]
    ket111 = e[7]
    w = (e[1] + e[2] + e[4]) / _SQRT3
    w_bar = (e[3] + e[5] + e[6]) / _SQRT3

    s2 = 1.0 / math.sqrt(2.0)
    phi1_plus = s2 * (ket000 - 1j * ket111)
    phi1_minus = s2 * (ket000 + 1j * ket111)
    phi2_plus = s2 * (w + 1j * w_bar)
    phi2_minus = s2 * (w - 1j * w_bar)

    # Symmetric coordinates: index n counts qubits in |0>.
    embedding = np.zeros((dim, 4), dtype=complex)
    for idx in range(dim):
        zeros = 3 - bin(idx).count("1")
        embedding[idx, zeros] = 1.0 / math.sqrt(math.comb(3, zeros))

    def coords(vec: np.ndarray) -> np.ndarray:
        return embedding.conj().T @ vec

    return ParityBasis(
        phi1_plus=phi1_plus,
        phi2_plus=phi2_plus,
        phi1_minus=phi1_minus,
        phi2_minus=phi2_minus,
        sym_phi1_plus=coords(phi1_plus),
        sym_phi2_plus=coords(phi2_plus),
        sym_phi1_minus=coords(phi1_minus),
        sym_phi2_minus=coords(phi2_minus),
        embedding=embedding,
    )


def _chebyshev_pair(n: int, chi: float) -> tuple[float, float]:
    """(T_n(chi), U_{n-1}(chi)) by the three-term recurrence.

    The recurrence, not acos/cos evaluation, keeps the endpoint values
    at chi = +-1/2 exact and stays well-conditioned since |chi| <= 1/2.
    """
    t_prev, t_cur = 1.0, chi  # T_0, T_1
    u_prev, u_cur = 0.0, 1.0  # U_{-1}, U_0
    if n == 0:
        return 1.0, 0.0
    for _ in range(n - 1):
        t_prev, t_cur = t_cur, 2.0 * chi * t_cur - t_prev
        u_prev, u_cur = u_cur, 2.0 * chi * u_cur - u_prev
    return t_cur, u_cur


def chebyshev_table(n_max: int, kappa0: float) -> tuple[np.ndarray, np.ndarray]:
    """Arrays t, u with t[n] = T_n(chi), u[n] = U_{n-1}(chi) for n <= n_max.

    One recurrence pass; meant for sweeps where calling chebyshev_step
    per n would be quadratic.
    """
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    chi = math.sin(kappa0 / 3.0) / 2.0
    t = np.empty(n_max + 1)
    u = np.empty(n_max + 1)
    t[0], u[0] = 1.0, 0.0
    if n_max >= 1:
        t[1], u[1] = chi, 1.0
    for k in range(2, n_max + 1):
        t[k] = 2.0 * chi * t[k - 1] - t[k - 2]
        u[k] = 2.0 * chi * u[k - 1] - u[k - 2]
    return t, u


def chebyshev_step(n: int, kappa0: float) -> ChebyshevStep:
    """Block entries alpha_n, beta_n after n kicks, phases stripped.

    With kappa = kappa0/6 and chi = sin(2*kappa)/2:
        alpha_n = T_n(chi) + (i/2) U_{n-1}(chi) cos(2*kappa)
        beta_n  = (sqrt(3)/2) U_{n-1}(chi) exp(2i*kappa)
    """
    if n < 0:
        raise DomainError(f"kick count must be >= 0, got {n}")
    kappa = kappa0 / 6.0
    chi = math.sin(2.0 * kappa) / 2.0
    t_n, u_prev = _chebyshev_pair(n, chi)
    alpha = complex(t_n, 0.5 * u_prev * math.cos(2.0 * kappa))
    beta = (_SQRT3 / 2.0) * u_prev * complex(math.cos(2.0 * kappa), math.sin(2.0 * kappa))
    gamma = math.acos(max(-1.0, min(1.0, chi)))
    return ChebyshevStep(n=n, chi=chi, t=t_n, u_prev=u_prev, alpha=alpha, beta=beta, gamma=gamma)


def rho12_analytic(n: int, kappa0: float) -> TwoQubitDensity:
    """Closed-form two-qubit reduced matrix after an even number of kicks.

    The evolved |000> state alternates (period 4 in n) between a
    branch concentrated on {|000>, |W-bar>} and one on {|111>, |W>};
    both reduce to an X-shaped matrix with the same spectrum, mirrored
    along the diagonal.  n = 2 mod 4 carries |alpha|^2 on |11><11|,
    n = 0 mod 4 on |00><00|.
    """
    if n < 2 or n % 2 != 0:
        raise DomainError(f"closed form needs even n >= 2, got {n}")
    step = chebyshev_step(n, kappa0)
    a, b = step.alpha, step.beta
    pa = abs(a) ** 2
    pb = abs(b) ** 2 / 3.0
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = rho[2, 2] = pb
    rho[1, 2] = rho[2, 1] = pb
    if n % 4 == 0:
        rho[0, 0] = pa
        rho[3, 3] = pb
        corner = -1j * a * b.conjugate() / _SQRT3
    else:
        rho[0, 0] = pb
        rho[3, 3] = pa
        corner = 1j * a.conjugate() * b / _SQRT3
    rho[0, 3] = corner
    rho[3, 0] = corner.conjugate()
    return TwoQubitDensity.from_matrix(rho)


def _concurrence_from_u(u_prev: float) -> float:
    mag = abs(u_prev)
    inner = math.sqrt(max(0.0, 1.0 - 0.75 * mag * mag))
    return mag * abs(0.5 * mag - inner)


def analytic_concurrence(n: int, kappa0: float) -> float:
    """Closed-form pairwise concurrence after n kicks of the |000> top.

    The closed form lives on even n; odd kicks share the value of the
    following even kick, so n is rounded up to even first.
    """
    if n < 1:
        raise DomainError(f"kick count must be >= 1, got {n}")
    m = n if n % 2 == 0 else n + 1
    step = chebyshev_step(m, kappa0)
    return _concurrence_from_u(step.u_prev)


def analytic_concurrence_series(n_max: int, kappa0: float) -> np.ndarray:
    """analytic_concurrence(n, kappa0) for n = 1..n_max in one pass.

    Same values as the per-n function; the Chebyshev recurrence runs
    once instead of once per n.
    """
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    even_top = n_max if n_max % 2 == 0 else n_max + 1
    _, u = chebyshev_table(even_top, kappa0)
    mag = np.abs(u)
    inner = np.sqrt(np.clip(1.0 - 0.75 * mag * mag, 0.0, None))
    c_even = mag * np.abs(0.5 * mag - inner)
    n = np.arange(1, n_max + 1)
    return c_even[np.where(n % 2 == 0, n, n + 1)]


def first_kick_concurrence(kappa0: float) -> float:
    """Concurrence produced by the very first kick, on kappa0 in [0, 3*pi].

    C = s*(sqrt(1 - (3/4)s^2) - s/2) with s = sin(kappa0/3).  The
    kappa0-dependence is 6*pi periodic; reduce into the window first.
    """
    if not -1e-12 <= kappa0 <= 3.0 * math.pi + 1e-12:
        raise DomainError(f"kappa0 = {kappa0} outside [0, 3*pi]")
    s = math.sin(min(max(kappa0, 0.0), 3.0 * math.pi) / 3.0)
    return s * (math.sqrt(max(0.0, 1.0 - 0.75 * s * s)) - 0.5 * s)


def blocks_u_pm(kappa0: float) -> tuple[np.ndarray, np.ndarray]:
    """The 2x2 parity blocks (U+, U-) of the j = 3/2 Floquet matrix.

    Constructed by conjugation into the parity basis, which is the
    authoritative route; closed forms are checked against it, never
    substituted for it.  Raises BlockLeakage if the off-block coupling
    exceeds 1e-9 (it must vanish by parity symmetry).
    """
    u = floquet(KickedTopParams(SpinQuantum(3), kappa0))
    basis = build_parity_basis()
    v = np.column_stack(
        [basis.sym_phi1_plus, basis.sym_phi2_plus, basis.sym_phi1_minus, basis.sym_phi2_minus]
    )
    w = v.conj().T @ u @ v
    leakage = max(float(np.abs(w[:2, 2:]).max()), float(np.abs(w[2:, :2]).max()))
    if leakage > BLOCK_LEAKAGE_TOL:
        raise BlockLeakage(f"off-block coupling {leakage:.3e} exceeds {BLOCK_LEAKAGE_TOL:.1e}")
    return np.ascontiguousarray(w[:2, :2]), np.ascontiguousarray(w[2:, 2:])
