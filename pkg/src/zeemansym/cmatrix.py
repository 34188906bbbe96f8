"""Dense complex-matrix kernel for small operators.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` with shape
``(dim, dim)``. Everything here is a pure function: inputs are never
mutated and results are fresh arrays.

The Hermitian eigensolver is a cyclic complex Jacobi iteration and the
exponential uses an eigendecomposition for (skew-)Hermitian input and
scaling-and-squaring of a truncated Taylor series otherwise. Both are
sized for dimensions up to roughly a hundred.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import RejectedInputError

DEFAULT_TOL = 1e-10
# eigenvalues closer than this are treated as one degenerate cluster
DEGENERACY_TOL = 1e-9

_TAYLOR_TERMS = 24
_MAX_SWEEPS = 64


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite square complex128 array."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise RejectedInputError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise RejectedInputError("matrix contains NaN or infinite entries")
    return m


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=np.complex128)


def zeros(dim: int) -> np.ndarray:
    return np.zeros((dim, dim), dtype=np.complex128)


def _same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise RejectedInputError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")


def mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _same_dim(a, b)
    return a @ b


def commutator(a, b) -> np.ndarray:
    """Return ``ab - ba``."""
    a, b = as_matrix(a), as_matrix(b)
    _same_dim(a, b)
    return a @ b - b @ a


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def max_abs(a) -> float:
    """Entrywise max norm."""
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def hermiticity_residual(a) -> float:
    a = as_matrix(a)
    return max_abs(a - a.conj().T)


def _phase_fix(v: np.ndarray) -> np.ndarray:
    # make the first dominant component real positive for deterministic output
    mags = np.abs(v)
    k = int(np.argmax(mags >= 0.5 * mags.max()))
    return v * (abs(v[k]) / v[k])


def _jacobi(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = h.shape[0]
    a = h.copy()
    v = identity(n)
    scale = max(max_abs(a), np.finfo(float).tiny)
    for _ in range(_MAX_SWEEPS):
        off = max_abs(a - np.diag(np.diag(a)))
        if off <= 1e-17 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                absg = abs(g)
                if absg <= 1e-300:
                    continue
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * absg)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                ph = np.conj(g / absg)
                rot = np.array([[c, s], [-s * ph, c * ph]], dtype=np.complex128)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ rot
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    return np.diag(a).real.copy(), v


def _orthonormalize_clusters(w: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = v.copy()
    start = 0
    n = len(w)
    while start < n:
        stop = start + 1
        while stop < n and w[stop] - w[stop - 1] < DEGENERACY_TOL:
            stop += 1
        if stop - start > 1:
            q, _ = np.linalg.qr(out[:, start:stop])
            out[:, start:stop] = q
        start = stop
    for k in range(n):
        out[:, k] = _phase_fix(out[:, k])
    return out


def hermitian_eigensystem(a, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and unit eigenvectors (as columns) of a Hermitian matrix.

    Raises :class:`RejectedInputError` when ``a`` departs from its adjoint by
    more than ``tol`` in max norm. Eigenvectors inside a degenerate cluster are
    orthonormal but their individual directions carry no meaning.
    """
    a = as_matrix(a)
    resid = hermiticity_residual(a)
    if resid > tol:
        raise RejectedInputError(f"matrix is not Hermitian: residual {resid:.3e} > tol {tol:.3e}")
    h = 0.5 * (a + a.conj().T)
    w, v = _jacobi(h)
    order = np.argsort(w, kind="stable")
    w, v = w[order], v[:, order]
    return w, _orthonormalize_clusters(w, v)


def _expm_taylor(a: np.ndarray) -> np.ndarray:
    norm1 = float(np.max(np.sum(np.abs(a), axis=0)))
    squarings = max(0, math.ceil(math.log2(norm1 / 0.5))) if norm1 > 0.5 else 0
    b = a / (2.0 ** squarings)
    n = a.shape[0]
    result = identity(n)
    term = identity(n)
    for k in range(1, _TAYLOR_TERMS + 1):
        term = term @ b / k
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


def expm(a) -> np.ndarray:
    """Matrix exponential.

    Skew-Hermitian and Hermitian inputs go through the eigensolver, so the
    exponential of a skew-Hermitian matrix is unitary to rounding. Other
    inputs use scaling and squaring.
    """
    a = as_matrix(a)
    scale = max(1.0, max_abs(a))
    if max_abs(a + a.conj().T) <= 1e-14 * scale:
        w, v = hermitian_eigensystem(-1j * a, tol=math.inf)
        return (v * np.exp(1j * w)) @ v.conj().T
    if max_abs(a - a.conj().T) <= 1e-14 * scale:
        w, v = hermitian_eigensystem(a, tol=math.inf)
        return (v * np.exp(w)) @ v.conj().T
    return _expm_taylor(a)


def _clean(x: float) -> float:
    # folds -0.0 into 0.0 so serialized output is stable
    return float(x) + 0.0


def matrix_to_dict(a) -> dict:
    """Encode as ``{"dim": n, "entries": [[re, im], ...]}`` in row-major order."""
    a = as_matrix(a)
    return {
        "dim": int(a.shape[0]),
        "entries": [[_clean(z.real), _clean(z.imag)] for z in a.ravel()],
    }


def matrix_from_dict(d: dict) -> np.ndarray:
    try:
        dim = int(d["dim"])
        entries = d["entries"]
        if dim < 1 or len(entries) != dim * dim:
            raise ValueError(f"expected {dim * dim} entries, got {len(entries)}")
        flat = np.array([complex(float(re), float(im)) for re, im in entries], dtype=np.complex128)
    except (KeyError, TypeError, ValueError) as exc:
        raise RejectedInputError(f"malformed matrix encoding: {exc}") from exc
    return as_matrix(flat.reshape(dim, dim))
