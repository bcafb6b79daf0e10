"""Dense statevector/unitary simulation of qutrit circuits.

This is the verification oracle used throughout the package.  Statevector
application is gate-local (no full-circuit matrices are formed), so
expectation-value evaluation stays cheap well past the dense-unitary cap of
eight qutrits.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionCap, DimensionMismatch
from .gates import Circuit, Gate

OMEGA = np.exp(2j * np.pi / 3)

#: Largest register for which dense 3^N x 3^N unitaries are built.
MAX_DENSE_QUTRITS = 8

X_MATRIX = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)
Z_MATRIX = np.diag([1.0 + 0j, OMEGA, OMEGA**2])
# Uniform-superposition gate fixed by H Z H^dag = X (the omega / omega^2
# layout below is what satisfies that identity; H^dag = H^3, H^4 = 1).
HADAMARD_MATRIX = (-1j / np.sqrt(3)) * np.array(
    [[1, 1, 1], [1, OMEGA**2, OMEGA], [1, OMEGA, OMEGA**2]], dtype=complex
)

_SUBSPACE_PAIRS = {"01": (0, 1), "02": (0, 2), "12": (1, 2)}


def rot_z_matrix(subspace: str, angle: float) -> np.ndarray:
    """diag with e^{-i angle/2} / e^{+i angle/2} on the subspace levels."""
    lo, hi = _SUBSPACE_PAIRS[subspace]
    d = np.ones(3, dtype=complex)
    d[lo] = np.exp(-1j * angle / 2)
    d[hi] = np.exp(1j * angle / 2)
    return np.diag(d)


def rot_x_matrix(subspace: str, angle: float) -> np.ndarray:
    lo, hi = _SUBSPACE_PAIRS[subspace]
    m = np.eye(3, dtype=complex)
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    m[lo, lo] = m[hi, hi] = c
    m[lo, hi] = m[hi, lo] = -1j * s
    return m


def sigma_x_matrix(subspace: str) -> np.ndarray:
    lo, hi = _SUBSPACE_PAIRS[subspace]
    m = np.eye(3, dtype=complex)
    m[lo, lo] = m[hi, hi] = 0
    m[lo, hi] = m[hi, lo] = 1
    return m


def _cx_matrix(power: int) -> np.ndarray:
    # Control is the first tensor factor: blocks 1, X^power, X^2power.
    out = np.zeros((9, 9), dtype=complex)
    for j in range(3):
        out[3 * j : 3 * j + 3, 3 * j : 3 * j + 3] = np.linalg.matrix_power(
            X_MATRIX, (power * j) % 3
        )
    return out


def gate_unitary(g: Gate) -> np.ndarray:
    """Exact 3x3 (or 9x9, control first) matrix of one gate."""
    if g.kind == "X":
        m = X_MATRIX
    elif g.kind == "X2":
        m = X_MATRIX @ X_MATRIX
    elif g.kind == "Z":
        m = Z_MATRIX
    elif g.kind == "Z2":
        m = Z_MATRIX @ Z_MATRIX
    elif g.kind == "H":
        m = HADAMARD_MATRIX
    elif g.kind == "RotZ":
        m = rot_z_matrix(g.subspace, g.angle)
    elif g.kind == "RotX":
        m = rot_x_matrix(g.subspace, g.angle)
    elif g.kind == "SigmaX":
        m = sigma_x_matrix(g.subspace)
    elif g.kind == "CX":
        m = _cx_matrix(1)
    else:  # CXDag
        m = _cx_matrix(2)
    m = m.copy()
    m.flags.writeable = False
    return m


def _apply_gate_tensor(arr: np.ndarray, g: Gate, n: int) -> np.ndarray:
    """Apply ``g`` to axis-factored ``arr`` whose first n axes are qutrits."""
    u = gate_unitary(g)
    if len(g.qutrits) == 1:
        (q,) = g.qutrits
        arr = np.tensordot(u, arr, axes=([1], [q]))
        return np.moveaxis(arr, 0, q)
    ctrl, tgt = g.qutrits
    u4 = u.reshape(3, 3, 3, 3)  # [c', t', c, t]
    arr = np.tensordot(u4, arr, axes=([2, 3], [ctrl, tgt]))
    return np.moveaxis(arr, (0, 1), (ctrl, tgt))


def apply_circuit(state: np.ndarray, circuit: Circuit) -> np.ndarray:
    """Run ``circuit`` on a statevector via per-gate local updates."""
    state = np.asarray(state, dtype=complex)
    n = circuit.num_qutrits
    if state.shape != (3**n,):
        raise DimensionMismatch(
            f"state has dimension {state.shape}, circuit needs ({3**n},)"
        )
    norm = np.linalg.norm(state)
    if abs(norm - 1.0) > 1e-10:
        raise DimensionMismatch(f"state norm {norm} is not 1 within 1e-10")
    arr = state.reshape((3,) * n) if n else state
    for g in circuit.gates:
        arr = _apply_gate_tensor(arr, g, n)
    out = arr.reshape(3**n)
    out.flags.writeable = False
    return out


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense unitary U = U_k ... U_1 for gates applied in temporal order."""
    n = circuit.num_qutrits
    if n > MAX_DENSE_QUTRITS:
        raise DimensionCap(f"dense unitaries capped at {MAX_DENSE_QUTRITS} qutrits")
    dim = 3**n
    arr = np.eye(dim, dtype=complex).reshape((3,) * n + (dim,))
    for g in circuit.gates:
        arr = _apply_gate_tensor(arr, g, n)
    u = arr.reshape(dim, dim)
    _check_unitary(u)
    u.flags.writeable = False
    return u


def _check_unitary(u: np.ndarray, tol: float = 1e-10) -> None:
    dim = u.shape[0]
    if dim <= 729:
        err = np.linalg.norm(u.conj().T @ u - np.eye(dim))
    else:
        # Full d^3 product is too slow here; probe with fixed random vectors.
        rng = np.random.default_rng(0)
        v = rng.normal(size=(dim, 8)) + 1j * rng.normal(size=(dim, 8))
        v /= np.linalg.norm(v, axis=0)
        w = u @ v
        err = np.max(np.abs(w.conj().T @ w - v.conj().T @ v))
    if err > tol:
        raise DimensionMismatch(f"constructed matrix is not unitary ({err:.2e})")


def phase_distance(u: np.ndarray, v: np.ndarray) -> float:
    """1 - |Tr(U^dag V)| / d; zero exactly on global-phase equivalence."""
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape or u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionMismatch(f"shape mismatch {u.shape} vs {v.shape}")
    d = u.shape[0]
    return float(1.0 - abs(np.einsum("ij,ij->", u.conj(), v)) / d)


def basis_state(num_qutrits: int, trits) -> np.ndarray:
    """|t_0 t_1 ... t_{n-1}> with qutrit 0 the leftmost (most significant)."""
    trits = tuple(trits)
    if len(trits) != num_qutrits or any(t not in (0, 1, 2) for t in trits):
        raise DimensionMismatch(f"need {num_qutrits} trits in 0..2, got {trits}")
    idx = 0
    for t in trits:
        idx = 3 * idx + t
    state = np.zeros(3**num_qutrits, dtype=complex)
    state[idx] = 1.0
    return state


def index_to_trits(index: int, num_qutrits: int) -> tuple[int, ...]:
    out = []
    for q in range(num_qutrits):
        out.append((index // 3 ** (num_qutrits - 1 - q)) % 3)
    return tuple(out)


def trit_columns(num_qutrits: int) -> np.ndarray:
    """Array of shape (3^n, n): trit q of every basis index (qutrit 0 leftmost)."""
    dim = 3**num_qutrits
    idx = np.arange(dim)
    cols = [(idx // 3 ** (num_qutrits - 1 - q)) % 3 for q in range(num_qutrits)]
    return np.stack(cols, axis=1) if num_qutrits else np.zeros((1, 0), dtype=int)


def diagonal_exponential(diag: np.ndarray, theta_over: float) -> np.ndarray:
    """exp(-i * theta_over * H) for diagonal Hermitian H given by its diagonal."""
    return np.diag(np.exp(-1j * theta_over * np.asarray(diag)))
