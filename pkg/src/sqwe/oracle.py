"""Dense-matrix cross-checks for small codes (n <= 7).

Nothing here reuses the exact classification or enumeration code.  The
recovery map is evaluated through traces against the code-space projector,
which removes the decoding circuit by cyclicity of the trace:

    W_I(r) = 2^(n-1) Tr(Pi rho^(x)n),   W_L(r) = 2^(n-1) Tr(L Pi rho^(x)n)
"""

from __future__ import annotations

from functools import reduce

import numpy as np

from .code import CosetLabel, LogicalFrame, StabilizerCode, ZERO
from .pauli import PauliOperator

MAX_QUBITS = 7
ATOL = 1e-9
STRUCT_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
_LETTER = {(0, 0): I2, (1, 0): X2, (0, 1): Z2, (1, 1): Y2}
_PHASE = (1, 1j, -1, -1j)


class OracleError(RuntimeError):
    pass


def dense_pauli(p: PauliOperator) -> np.ndarray:
    if p.n > MAX_QUBITS:
        raise OracleError(f"dense oracle limited to {MAX_QUBITS} qubits")
    factors = [_LETTER[(p.x >> j) & 1, (p.z >> j) & 1] for j in range(p.n)]
    mat = reduce(np.kron, factors, np.eye(1, dtype=complex))
    return _PHASE[p.phase_exp] * mat


def m3_matrix() -> np.ndarray:
    """Unitary M with M^dag X M = Y, M^dag Y M = Z, M^dag Z M = X.

    It is a 2pi/3 rotation about the (1,1,1) Bloch axis; the sense of rotation
    is picked by checking the conjugation relations.
    """
    axis = (X2 + Y2 + Z2) / np.sqrt(3)
    for theta in (2 * np.pi / 3, -2 * np.pi / 3):
        m = np.cos(theta / 2) * I2 - 1j * np.sin(theta / 2) * axis
        md = m.conj().T
        if (np.allclose(md @ X2 @ m, Y2) and np.allclose(md @ Y2 @ m, Z2)
                and np.allclose(md @ Z2 @ m, X2)):
            return m
    raise OracleError("no rotation about (1,1,1) satisfies the M3 relations")


def projector(code: StabilizerCode) -> np.ndarray:
    dim = 2 ** code.n
    eye = np.eye(dim, dtype=complex)
    proj = eye
    for g in code.generators:
        proj = proj @ ((eye + dense_pauli(g)) / 2)
    if not np.allclose(proj @ proj, proj, atol=STRUCT_TOL) or not np.allclose(proj, proj.conj().T, atol=STRUCT_TOL):
        raise OracleError("code projector is not an orthogonal projector")
    rank = int(round(np.trace(proj).real))
    if rank != 2:
        raise OracleError(f"code space has dimension {rank}, expected 2")
    return proj


def rho_tensor(rbar: float, n: int) -> np.ndarray:
    rho = I2 / 2 + (rbar / 2) * (X2 + Y2 + Z2)
    return reduce(np.kron, [rho] * n, np.eye(1, dtype=complex))


def oracle_enumerator_values(code: StabilizerCode, frame: LogicalFrame, rbar: float) -> tuple[float, float, float, float]:
    if code.n > MAX_QUBITS:
        raise OracleError(f"dense oracle limited to {MAX_QUBITS} qubits")
    if not 0 <= rbar <= 1 / np.sqrt(3) + 1e-15:
        raise OracleError(f"r̄ = {rbar} is not a physical T-axis state")
    proj = projector(code)
    prod = proj @ rho_tensor(rbar, code.n)
    scale = 2 ** (code.n - 1)
    values = [scale * np.trace(prod)]
    for rep in (frame.xbar, frame.ybar, frame.zbar):
        values.append(scale * np.trace(dense_pauli(rep) @ prod))
    for v in values:
        if abs(v.imag) > ATOL:
            raise OracleError(f"trace has imaginary part {v.imag}")
    return tuple(float(v.real) for v in values)


def recovery_image(p: PauliOperator, code: StabilizerCode, frame: LogicalFrame, proj: np.ndarray | None = None) -> np.ndarray:
    """Coefficients c_Q of R(P) = sum_Q c_Q Q, from c_Q = Tr(Q̄ Pi P) / 2."""
    if proj is None:
        proj = projector(code)
    pm = proj @ dense_pauli(p)
    reps = [np.eye(2 ** code.n, dtype=complex)] + [dense_pauli(r) for r in (frame.xbar, frame.ybar, frame.zbar)]
    return np.array([np.trace(r @ pm) / 2 for r in reps])


def oracle_classify(p: PauliOperator, code: StabilizerCode, frame: LogicalFrame, proj: np.ndarray | None = None) -> CosetLabel:
    if code.n > 5:
        raise OracleError("oracle classification is limited to n <= 5")
    if proj is None:
        proj = projector(code)
    sandwich = proj @ dense_pauli(p) @ proj
    if np.allclose(sandwich, 0, atol=ATOL):
        return ZERO
    coeffs = recovery_image(p, code, frame, proj)
    hits = [k for k, c in enumerate(coeffs) if abs(c) > ATOL]
    if len(hits) != 1:
        raise OracleError(f"recovery image of {p} is not a single Pauli: {coeffs}")
    k = hits[0]
    c = coeffs[k]
    phase = next((e for e, s in enumerate(_PHASE) if abs(c - s) < ATOL), None)
    if phase is None:
        raise OracleError(f"recovery coefficient {c} of {p} is not a unit phase")
    reps = [np.eye(2 ** code.n)] + [dense_pauli(r) for r in (frame.xbar, frame.ybar, frame.zbar)]
    if not np.allclose(sandwich, c * reps[k] @ proj, atol=ATOL):
        raise OracleError(f"Pi P Pi != c Q̄ Pi for {p}")
    return CosetLabel("IXYZ"[k], phase)
