"""Two-qubit density matrices and the PPT entanglement verdict.

Matrices are stored in the probe basis ``(dd, uu, du, ud)`` where the first
letter is probe A, the second probe B, ``d`` the ground and ``u`` the
excited level.  Internally everything is permuted to the tensor-product
order ``(dd, du, ud, uu)`` for partial traces and transposes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, NumericError

BASIS = ("dd", "uu", "du", "ud")

TOL_HERM = 1e-12
TOL_TRACE = 1e-12
TOL_POS = 1e-10
TOL_EIG = 1e-10

# probe-basis index -> tensor-product index (2*a + b)
_TO_TENSOR = np.array([0, 3, 1, 2])

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def to_tensor_order(m):
    """Reorder a probe-basis 4x4 matrix to tensor-product order."""
    m = np.asarray(m)
    out = np.empty_like(m)
    out[np.ix_(_TO_TENSOR, _TO_TENSOR)] = m
    return out


def from_tensor_order(m):
    m = np.asarray(m)
    return m[np.ix_(_TO_TENSOR, _TO_TENSOR)]


@dataclass(frozen=True, eq=False)
class DensityMatrix4:
    """Validated two-probe density matrix in the ``(dd, uu, du, ud)`` basis."""

    entries: np.ndarray
    basis_order: tuple = field(default=BASIS, init=False)

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.shape != (4, 4):
            raise InvalidInputError(f"expected a 4x4 matrix, got shape {m.shape}")
        _validate(m, pos_check=True)
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @classmethod
    def from_tensor(cls, m):
        """Build from a matrix in tensor-product order ``|a b>``."""
        return cls(from_tensor_order(m))

    @property
    def tensor(self):
        return to_tensor_order(self.entries)

    def eigenvalues(self):
        return np.linalg.eigvalsh(self.entries)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


def _validate(m, pos_check):
    if np.max(np.abs(m - m.conj().T)) > TOL_HERM:
        raise InvalidInputError("matrix is not Hermitian")
    tr = np.trace(m)
    if abs(tr - 1.0) > TOL_TRACE:
        raise InvalidInputError(f"trace is {tr.real:.3g}, expected 1")
    if pos_check:
        lo = np.linalg.eigvalsh(m).min()
        if lo < -TOL_POS:
            raise InvalidInputError(f"matrix has negative eigenvalue {lo:.3g}")


def _entries(rho):
    if isinstance(rho, DensityMatrix4):
        return rho.entries
    m = np.asarray(rho, dtype=complex)
    if m.shape != (4, 4):
        raise InvalidInputError(f"expected a 4x4 matrix, got shape {m.shape}")
    _validate(m, pos_check=False)
    return m


def partial_transpose(rho):
    """Transpose on probe B: ``rho[ij, kl] -> rho[il, kj]``.

    Accepts a :class:`DensityMatrix4` or any Hermitian unit-trace 4x4 array
    (PPT-negative matrices must be accepted, so positivity is not checked).
    The result is returned in the probe basis.
    """
    m = to_tensor_order(_entries(rho)).reshape(2, 2, 2, 2)
    pt = m.transpose(0, 3, 2, 1).reshape(4, 4)
    return from_tensor_order(pt)


@dataclass(frozen=True)
class EntanglementReport:
    ppt_min_eigenvalue: float
    negativity: float
    entangled: bool
    ratio12: float = math.nan
    cond_exchange: bool | None = None
    ratio13: float = math.nan
    cond_overlap: bool | None = None
    conditions_agree: bool | None = None


def ppt_eigenvalues(rho):
    try:
        return np.linalg.eigvalsh(partial_transpose(rho))
    except np.linalg.LinAlgError as exc:
        raise NumericError("eigensolver failed on partial transpose",
                           diagnostics={"matrix": np.asarray(_entries(rho)).tolist()}) from exc


def ppt_verdict(rho, tol=TOL_EIG):
    """Peres-Horodecki test: entangled iff the partial transpose has an
    eigenvalue below ``-tol``."""
    ev = ppt_eigenvalues(rho)
    lo = float(ev[0])
    neg = float(-ev[ev < -tol].sum()) + 0.0  # no signed zero
    return EntanglementReport(ppt_min_eigenvalue=lo, negativity=neg, entangled=lo < -tol)


def singlet():
    """``(|ud> - |du>)/sqrt 2`` as a probe-basis vector."""
    v = np.zeros(4, dtype=complex)
    v[BASIS.index("ud")] = 1 / math.sqrt(2)
    v[BASIS.index("du")] = -1 / math.sqrt(2)
    return v


def werner_state(x):
    """``(1 - x)/4 * I + x |singlet><singlet|`` for ``0 <= x <= 1``."""
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise InvalidInputError(f"Werner parameter must lie in [0, 1], got {x}")
    psi = singlet()
    return DensityMatrix4((1 - x) / 4 * np.eye(4) + x * np.outer(psi, psi.conj()))


def pure_state(vec):
    """Projector onto a (normalised) probe-basis state vector."""
    v = np.asarray(vec, dtype=complex).ravel()
    v = v / np.linalg.norm(v)
    return DensityMatrix4(np.outer(v, v.conj()))


def product_state(rho_a, rho_b):
    return DensityMatrix4.from_tensor(np.kron(rho_a, rho_b))


def reduced_state(rho, party):
    """Partial trace leaving probe ``"A"`` or ``"B"``."""
    m = to_tensor_order(_entries(rho)).reshape(2, 2, 2, 2)
    if party == "A":
        return np.einsum("ijkj->ik", m)
    if party == "B":
        return np.einsum("jijk->ik", m)
    raise InvalidInputError(f"party must be 'A' or 'B', got {party!r}")


def von_neumann_entropy(rho_reduced):
    """``-Tr rho ln rho`` in nats (divide by ln 2 for bits)."""
    m = np.asarray(rho_reduced, dtype=complex)
    if m.shape != (2, 2):
        raise InvalidInputError("expected a 2x2 density matrix")
    _validate_2x2(m)
    ev = np.clip(np.linalg.eigvalsh(m), 0.0, None)
    ev = ev[ev > 0]
    return float(-(ev * np.log(ev)).sum())


def _validate_2x2(m):
    if np.max(np.abs(m - m.conj().T)) > TOL_HERM:
        raise InvalidInputError("matrix is not Hermitian")
    if abs(np.trace(m) - 1) > TOL_TRACE:
        raise InvalidInputError("trace must be 1")
    if np.linalg.eigvalsh(m).min() < -TOL_POS:
        raise InvalidInputError("matrix has a negative eigenvalue")


def correlation_matrix(rho):
    """3x3 spin correlations ``T[i, j] = Tr(rho sigma_i (x) sigma_j)``."""
    m = to_tensor_order(_entries(rho))
    return np.array([[np.trace(m @ np.kron(si, sj)).real for sj in PAULIS] for si in PAULIS])


def chsh_max(rho):
    """Largest CHSH value over all spin measurements.

    ``2 sqrt(m1 + m2)`` with ``m1, m2`` the two largest eigenvalues of
    ``T^T T`` (Horodecki criterion); local models are bounded by 2.
    """
    t = correlation_matrix(rho)
    ev = np.sort(np.linalg.eigvalsh(t.T @ t))
    return float(2.0 * math.sqrt(max(ev[-1] + ev[-2], 0.0)))


def correlation_check(rho, obs_a, obs_b):
    """Return ``(<O_A (x) O_B>, <O_A><O_B>)``."""
    m = to_tensor_order(_entries(rho))
    oa = np.asarray(obs_a, dtype=complex)
    ob = np.asarray(obs_b, dtype=complex)
    joint = np.trace(m @ np.kron(oa, ob)).real
    ea = np.trace(reduced_state(rho, "A") @ oa).real
    eb = np.trace(reduced_state(rho, "B") @ ob).real
    return float(joint), float(ea * eb)
