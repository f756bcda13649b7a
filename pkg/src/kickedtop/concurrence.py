"""Two-qubit entanglement measures.

The general route is Wootters' formula: from a two-qubit density matrix
rho, form the spin-flipped product

    R = rho (sigma_y x sigma_y) rho* (sigma_y x sigma_y),

take the descending square roots lambda_1 >= ... >= lambda_4 of its
eigenvalues, and set C = max(0, lambda_1 - lambda_2 - lambda_3 -
lambda_4).  R is similar to a PSD matrix, so its spectrum is real and
non-negative up to roundoff, but R itself is neither Hermitian nor
normal; the eigenvalues come from the general small-matrix solver in
:mod:`.numerics` with ``real_spectrum=True``.

Structured shortcuts (`concurrence_dicke_form`, `concurrence_x_form`)
cover the sparsity patterns produced by :mod:`.pairwise`; they are kept
deliberately independent of `wootters` so either route can check the
other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NotPhysical, NumericalFailure, WrongStructure
from .numerics import hermitian_eigen, eigvals_product_small
from .pairwise import TwoQubitDensity

_EPS = float(np.finfo(float).eps)
_EPS_LD = float(np.finfo(np.longdouble).eps)

# Floor below which a negative eigenvalue of the spin-flip product is a
# numerics bug rather than roundoff.
EIGENVALUE_FLOOR = -1e-7

STRUCTURE_TOL = 1e-10

# sigma_y x sigma_y in the product basis |00>,|01>,|10>,|11> is real:
# antidiag(-1, 1, 1, -1).
SPIN_FLIP = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


@dataclass(frozen=True)
class ConcurrenceResult:
    """Concurrence plus the quantities it is clipped from.

    concurrence = max(0, c_lambda); lambdas are the four descending
    square-rooted eigenvalues of the spin-flip product.  c_lambda is
    kept because its sign separates "entangled" from "how far inside
    the separable ball" and tests pin it directly.
    """

    concurrence: float
    c_lambda: float
    lambdas: np.ndarray


def _density_matrix(rho) -> np.ndarray:
    """Accept a TwoQubitDensity or a raw 4x4 array; validate raw input."""
    if isinstance(rho, TwoQubitDensity):
        return rho.rho
    return TwoQubitDensity.from_matrix(np.asarray(rho)).rho


def _sqrt_descending(vals: np.ndarray, floor: float = EIGENVALUE_FLOOR) -> np.ndarray:
    """Clamp small negative eigenvalues and return descending sqrt."""
    worst = float(vals.min()) if vals.size else 0.0
    if worst < floor:
        raise NumericalFailure(
            f"spin-flip product eigenvalue {worst:.3e} below floor {floor:.1e}"
        )
    lam = np.sqrt(np.maximum(vals, 0.0))
    lam[::-1].sort()
    return lam


def wootters(rho) -> ConcurrenceResult:
    """Concurrence of an arbitrary two-qubit density matrix.

    The spin-flip conjugate of rho is an exact signed permutation of
    rho's entries, so the product R = rho (S rho* S) is the product of
    two matrices known exactly in double precision.  It is handed to
    the eigenvalue routine as that factor pair: R is severely nonnormal
    on the states this package produces, with eigenvalues many orders
    of magnitude below its entry scale, and forming R in working
    precision first would bury exactly the eigenvalues the concurrence
    is built from.

    Eigenvalues whose magnitude is consistent with zero are snapped to
    zero before the square root, in two regimes keyed on the largest
    eigenvalue.  When even that one sits below 64*eps*tr(rho)^2, the
    whole product is formation roundoff of an exactly zero matrix
    (separable states), and every value snaps: without this, sqrt
    turns O(1e-16) noise into O(1e-8) spurious lambdas.  Otherwise the
    top of the spectrum is genuine, and values are kept down to the
    relative depth the factored pipeline actually resolves; the floor
    must scale with the spectrum and not with tr(rho), because
    eigenvalues as small as 1e-16 still contribute sqrt-sized,
    test-visible amounts to C.
    """
    r = _density_matrix(rho)
    signs = np.array([-1.0, 1.0, 1.0, -1.0])
    flipped = r.conj()[::-1, ::-1] * np.outer(signs, signs)
    vals = eigvals_product_small(r, flipped, real_spectrum=True).real.astype(float)

    vmax = float(np.abs(vals).max()) if vals.size else 0.0
    tr2 = float(np.trace(r).real) ** 2
    if vmax <= 64.0 * _EPS * tr2:
        vals[:] = 0.0
    else:
        vals[np.abs(vals) <= 1024.0 * _EPS_LD * vmax] = 0.0

    lam = _sqrt_descending(vals)
    c_lambda = float(lam[0] - lam[1] - lam[2] - lam[3])
    return ConcurrenceResult(max(0.0, c_lambda), c_lambda, lam)


def concurrence_dicke_form(rho) -> float:
    """Concurrence shortcut for the Dicke-state sparsity pattern.

    Valid when the matrix has no corner coherence and no one-flip
    coherences (u = x_plus = x_minus = 0, y real); then
    C = 2 max(0, y - sqrt(v_plus v_minus)).
    """
    dm = rho if isinstance(rho, TwoQubitDensity) else TwoQubitDensity.from_matrix(np.asarray(rho))
    r = dm.rho
    off = max(
        abs(r[3, 0]),
        abs(r[1, 0]),
        abs(r[2, 0]),
        abs(r[3, 1]),
        abs(r[3, 2]),
        abs(dm.y.imag),
    )
    if off > STRUCTURE_TOL:
        raise WrongStructure(
            f"matrix is not in Dicke form: off-pattern magnitude {off:.3e}"
        )
    prod = max(dm.v_plus, 0.0) * max(dm.v_minus, 0.0)
    return 2.0 * max(0.0, dm.y.real - math.sqrt(prod))


def concurrence_x_form(rho) -> float:
    """Concurrence shortcut for X-shaped matrices (x_plus = x_minus = 0).

    C = 2 max(0, |u| - w, |y| - sqrt(v_plus v_minus)).

    The |u| - w term reads a single inner-diagonal value, so the
    formula additionally needs the two inner diagonals equal; that
    holds for every swap-symmetric reduction this package produces.
    """
    dm = rho if isinstance(rho, TwoQubitDensity) else TwoQubitDensity.from_matrix(np.asarray(rho))
    r = dm.rho
    off = max(
        abs(r[1, 0]),
        abs(r[2, 0]),
        abs(r[3, 1]),
        abs(r[3, 2]),
        abs(r[1, 1] - r[2, 2]),
    )
    if off > STRUCTURE_TOL:
        raise WrongStructure(
            f"matrix is not a symmetric X shape: off-pattern magnitude {off:.3e}"
        )
    prod = max(dm.v_plus, 0.0) * max(dm.v_minus, 0.0)
    return 2.0 * max(0.0, abs(dm.u) - dm.w, abs(dm.y) - math.sqrt(prod))


def dicke_concurrence_closed(n_qubits: int, m: float) -> float:
    """Closed-form pairwise concurrence of the N-qubit Dicke state |j, M>.

    With a = N^2 - 4M^2 and b = (N-2)^2 - 4M^2,
    C = max(0, a - sqrt(a*b)) / (2 N (N-1)).  Both a and b are exact
    integers once 2M is, so the special values C(N, 0) = 1/(N-1) and
    C(N, +-(N/2 - 1)) = 2/N come out exact to the last float digit.
    """
    if n_qubits < 2:
        raise DomainError(f"need at least 2 qubits, got {n_qubits}")
    two_m = 2.0 * m
    two_m_int = round(two_m)
    if abs(two_m - two_m_int) > 1e-9:
        raise DomainError(f"M = {m} is not on the half-integer grid")
    if (n_qubits - two_m_int) % 2 != 0:
        raise DomainError(f"M = {m} has the wrong parity for N = {n_qubits}")
    if abs(two_m_int) > n_qubits:
        raise DomainError(f"|M| = {abs(m)} exceeds N/2 = {n_qubits / 2}")
    a = n_qubits**2 - two_m_int**2
    b = (n_qubits - 2) ** 2 - two_m_int**2
    if a == 0:
        return 0.0
    num = a - math.sqrt(a * b)
    return max(0.0, num / (2.0 * n_qubits * (n_qubits - 1)))


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2 (1-x), with h(0) = h(1) = 0."""
    if not -1e-12 <= x <= 1.0 + 1e-12:
        raise DomainError(f"binary entropy argument {x} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    s = 0.0
    if x > 0.0:
        s -= x * math.log2(x)
    if x < 1.0:
        s -= (1.0 - x) * math.log2(1.0 - x)
    return s


def entanglement_of_formation(concurrence: float) -> float:
    """Entanglement of formation from concurrence (two qubits).

    E = h((1 + sqrt(1 - C^2)) / 2).  Monotone in C, so it carries the
    same ordering; the value is in ebits.
    """
    if not -1e-9 <= concurrence <= 1.0 + 1e-9:
        raise DomainError(f"concurrence {concurrence} outside [0, 1]")
    c = min(max(concurrence, 0.0), 1.0)
    return binary_entropy((1.0 + math.sqrt(1.0 - c * c)) / 2.0)


def von_neumann_entropy(rho) -> float:
    """Entropy -sum t log2 t of a density matrix, in bits.

    Eigenvalues are clamped at zero below; anything under -1e-9 means
    the input was not a state and raises NotPhysical.
    """
    a = np.asarray(rho, dtype=complex)
    eig = hermitian_eigen(a)
    t = eig.values
    if t.min() < -1e-9:
        raise NotPhysical(f"eigenvalue {t.min():.3e} is negative")
    tr = float(t.sum())
    if abs(tr - 1.0) > 1e-9:
        raise NotPhysical(f"trace {tr} differs from 1")
    t = np.clip(t, 0.0, None)
    nz = t[t > 0.0]
    return float(-(nz * np.log2(nz)).sum())
