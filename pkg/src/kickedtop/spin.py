"""Collective spin operators and reference states on the symmetric subspace.

Basis convention used by the whole package: a symmetric N-qubit state
is a vector over |n>, n = 0..N, where n counts the qubits in |0> and
the Jz eigenvalue is m = n - N/2.  So |n=0> is the all-|1> state at
the bottom of the ladder and |n=N> = |00...0> is the top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IndexOutOfRange

# theta this close to pi is treated as the exact bottom-pole basis
# state; the phi dependence is pure global phase there.
POLE_SNAP_TOL = 1e-12


@dataclass(frozen=True)
class SpinQuantum:
    """Spin j = two_j/2 realized as N = two_j symmetric qubits."""

    two_j: int

    def __post_init__(self):
        if self.two_j < 1:
            raise IndexOutOfRange(f"two_j must be >= 1, got {self.two_j}")

    @property
    def j(self) -> float:
        return self.two_j / 2

    @property
    def n_qubits(self) -> int:
        return self.two_j

    @property
    def dim(self) -> int:
        return self.two_j + 1


@dataclass(frozen=True)
class SymmetricState:
    """Normalized amplitudes over |n>, n ascending from 0 to N."""

    amps: np.ndarray = field(repr=False)

    @property
    def n_qubits(self) -> int:
        return len(self.amps) - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


@dataclass(frozen=True)
class CollectiveOps:
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    jplus: np.ndarray
    jminus: np.ndarray


def _fix_global_phase(amps: np.ndarray) -> np.ndarray:
    """Rotate so the lowest-index nonzero amplitude is real non-negative."""
    idx = np.flatnonzero(np.abs(amps) > 0)
    if len(idx) == 0:
        return amps
    ref = amps[idx[0]]
    if ref == 0:
        return amps
    return amps * (abs(ref) / ref)


def collective_operators(q: SpinQuantum) -> CollectiveOps:
    """Jx, Jy, Jz and ladder operators on the (N+1)-dimensional subspace.

    <m+1|J+|m> = sqrt(j(j+1) - m(m+1)) with m = n - N/2 ascending along
    the basis index.
    """
    j = q.j
    dim = q.dim
    m = np.arange(dim) - j
    jz = np.diag(m.astype(complex))
    jplus = np.zeros((dim, dim), dtype=complex)
    for n in range(dim - 1):
        jplus[n + 1, n] = math.sqrt(j * (j + 1) - m[n] * (m[n] + 1))
    jminus = jplus.conj().T
    jx = (jplus + jminus) / 2
    jy = (jplus - jminus) / 2j
    return CollectiveOps(jx=jx, jy=jy, jz=jz, jplus=jplus, jminus=jminus)


def number_state(n_qubits: int, n: int) -> SymmetricState:
    """|n>: exactly n qubits in |0>, an eigenstate of Jz with m = n - N/2."""
    if not 0 <= n <= n_qubits:
        raise IndexOutOfRange(f"n = {n} outside 0..{n_qubits}")
    amps = np.zeros(n_qubits + 1, dtype=complex)
    amps[n] = 1.0
    return SymmetricState(amps=amps)


def spin_coherent(n_qubits: int, eta: complex) -> SymmetricState:
    """Product state of N identical qubits, amplitudes binomial in eta.

    amps[n] = (1+|eta|^2)^(-N/2) * binom(N,n)^(1/2) * eta^n.  eta = 0 is
    the bottom pole |n=0>; |eta| -> infinity approaches the top pole.
    """
    if n_qubits < 1:
        raise IndexOutOfRange(f"n_qubits must be >= 1, got {n_qubits}")
    eta = complex(eta)
    ns = np.arange(n_qubits + 1)
    amps = np.sqrt([math.comb(n_qubits, int(n)) for n in ns]) * eta**ns
    amps = amps.astype(complex) * (1 + abs(eta) ** 2) ** (-n_qubits / 2)
    amps /= np.linalg.norm(amps)  # remove float drift; analytically 1 already
    return SymmetricState(amps=_fix_global_phase(amps))


def coherent_from_angles(n_qubits: int, theta: float, phi: float) -> SymmetricState:
    """Coherent state pointed along (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)).

    theta = 0 is the all-|0> top pole |n=N| with <Jz> = +N/2; theta = pi
    (within POLE_SNAP_TOL) snaps to the exact bottom basis state, where
    phi no longer matters.
    """
    if n_qubits < 1:
        raise IndexOutOfRange(f"n_qubits must be >= 1, got {n_qubits}")
    if abs(theta - math.pi) <= POLE_SNAP_TOL:
        return number_state(n_qubits, 0)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    ns = np.arange(n_qubits + 1)
    amps = np.array(
        [
            math.sqrt(math.comb(n_qubits, int(n))) * c ** int(n) * s ** (n_qubits - int(n))
            for n in ns
        ],
        dtype=complex,
    )
    amps *= np.exp(1j * (n_qubits - ns) * phi)
    amps /= np.linalg.norm(amps)
    return SymmetricState(amps=_fix_global_phase(amps))


def epr_state(n_qubits: int) -> np.ndarray:
    """Two N-qubit ensembles in the diagonal superposition over (n, n).

    Returns the (N+1) x (N+1) amplitude matrix amps[n1, n2], equal to
    1/sqrt(N+1) on the diagonal.  The state is annihilated by
    J1z - J2z since only n1 = n2 carries weight.
    """
    if n_qubits < 1:
        raise IndexOutOfRange(f"n_qubits must be >= 1, got {n_qubits}")
    dim = n_qubits + 1
    amps = np.zeros((dim, dim), dtype=complex)
    np.fill_diagonal(amps, 1 / math.sqrt(dim))
    return amps
