"""Complex linear algebra with explicit tolerance contracts.

Inner products are conjugate-linear in the FIRST argument and linear in
the second.  All functions treat their inputs as immutable values: nothing
is modified in place and every result is freshly allocated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_EPS = 1e-9


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerance for rank, Hermiticity, and positivity decisions.

    Thresholds scale with the magnitude of the operand, floored at 1, so
    tiny and large-norm inputs are judged consistently.
    """

    eps: float = DEFAULT_EPS

    def __post_init__(self):
        eps = float(self.eps)
        if not (np.isfinite(eps) and eps > 0.0):
            raise ValueError(f"eps must be a positive finite real, got {self.eps!r}")
        object.__setattr__(self, "eps", eps)


def as_vector(entries) -> np.ndarray:
    """Coerce to a read-only 1-D complex vector, rejecting NaN/Inf entries."""
    v = np.array(entries, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        raise ValueError(f"expected a non-empty 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    v.flags.writeable = False
    return v


def as_matrix(entries) -> np.ndarray:
    """Coerce to a read-only 2-D complex matrix, rejecting NaN/Inf entries."""
    m = np.array(entries, dtype=complex)
    if m.ndim != 2 or m.size == 0:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    m.flags.writeable = False
    return m


def inner(u, v) -> complex:
    """<u, v> = sum_k conj(u_k) v_k."""
    u = as_vector(u)
    v = as_vector(v)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape[0]} vs {v.shape[0]}")
    return complex(np.vdot(u, v))


def adjoint(m) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(m).conj().T.copy()


def trace(m) -> complex:
    """Sum of the diagonal entries of a square matrix."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"trace requires a square matrix, got shape {m.shape}")
    return complex(np.trace(m))


def rank(m, tol: Tolerance = Tolerance()) -> int:
    """Number of singular values above ``eps * max(1, largest)``."""
    m = as_matrix(m)
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.count_nonzero(s > tol.eps * max(1.0, float(s[0]))))


def is_hermitian(m, tol: Tolerance = Tolerance()) -> bool:
    """Entrywise self-adjointness check, threshold relative to the max entry."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"is_hermitian requires a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.abs(m).max()))
    return bool(np.abs(m - m.conj().T).max() <= tol.eps * scale)


def eig_hermitian(m, tol: Tolerance = Tolerance()) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns:
        values: real eigenvalues in descending order.
        vectors: matrix whose column k is the unit eigenvector for values[k].

    Raises:
        ValueError: if the input fails ``is_hermitian`` at the tolerance.
    """
    m = as_matrix(m)
    if not is_hermitian(m, tol):
        raise ValueError("eig_hermitian requires a Hermitian matrix")
    values, vectors = np.linalg.eigh(m)
    return values[::-1].copy(), vectors[:, ::-1].copy()


def is_positive(m, tol: Tolerance = Tolerance()) -> bool:
    """True iff m is Hermitian with spectrum above ``-eps * max(1, largest)``."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        return False
    if not is_hermitian(m, tol):
        return False
    w = np.linalg.eigvalsh(m)
    return bool(w[0] >= -tol.eps * max(1.0, float(w[-1])))


def factor_positive(t, tol: Tolerance = Tolerance()) -> np.ndarray:
    """Factor a positive operator as ``adjoint(B) @ B``.

    B carries the square roots of the eigenvalues on the diagonal in the
    eigenbasis of the input (i.e. the Hermitian square root), so
    ``adjoint(B) @ B == B @ B`` reconstructs the input.  Eigenvalues in
    the band ``[-eps * max(1, largest), 0]`` are clamped to zero before
    the square root; anything more negative fails the positivity
    precondition and is rejected.
    """
    t = as_matrix(t)
    if not is_positive(t, tol):
        raise ValueError("factor_positive requires a positive operator")
    values, vectors = eig_hermitian(t, tol)
    values = np.where(values < 0.0, 0.0, values)
    return (vectors * np.sqrt(values)) @ vectors.conj().T
