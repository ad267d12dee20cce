"""Small dense linear-algebra helpers: frames, projectors, Haar sampling."""

from __future__ import annotations

import numpy as np

from .models import TOL


def gaussian_matrix(rng: np.random.Generator, rows: int, cols: int, real: bool) -> np.ndarray:
    if real:
        return rng.standard_normal((rows, cols))
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def haar_frame(rng: np.random.Generator, n: int, k: int, real: bool = False) -> np.ndarray:
    """First ``k`` columns of a Haar-random ``n x n`` orthogonal/unitary matrix.

    Gaussian matrix, QR, then the diagonal of R is rotated onto the positive
    reals so the distribution is exactly invariant.
    """
    z = gaussian_matrix(rng, n, k, real)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    phases = diag / np.abs(diag)
    return q * phases


def haar_unitary(rng: np.random.Generator, n: int, real: bool = False) -> np.ndarray:
    return haar_frame(rng, n, n, real)


def span_basis(vectors: np.ndarray, rank_tol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis (as columns) of the column span of ``vectors``."""
    vectors = np.atleast_2d(vectors)
    if vectors.shape[1] == 0:
        return vectors
    u, s, _ = np.linalg.svd(vectors, full_matrices=False)
    rank = int(np.sum(s > rank_tol * max(1.0, s[0] if s.size else 0.0)))
    return u[:, :rank]


def projector(frame: np.ndarray) -> np.ndarray:
    return frame @ frame.conj().T


def eigenspaces(h: np.ndarray, gap: float = 1e-7) -> list[tuple[float, np.ndarray]]:
    """Split a Hermitian matrix into eigenspaces, merging eigenvalues closer than ``gap``."""
    w, v = np.linalg.eigh(h)
    spaces = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > gap:
            spaces.append((float(np.mean(w[start:i])), v[:, start:i]))
            start = i
    return spaces


def range_of_projector(p: np.ndarray) -> np.ndarray:
    """Orthonormal frame for the range of an (approximate) orthogonal projector."""
    w, v = np.linalg.eigh((p + p.conj().T) / 2)
    return v[:, w > 0.5]


def is_unitary(m: np.ndarray, tol: float = TOL) -> bool:
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))) <= tol)


def max_abs(m) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(m))) if m.size else 0.0


def hermitian_coordinates(m: np.ndarray, real: bool) -> np.ndarray:
    """Real coordinates of a self-adjoint matrix in an orthonormal basis.

    Ordering: diagonal entries, then sqrt(2)*Re m[j,k] for j<k, then (complex
    only) sqrt(2)*Im m[j,k] for j<k.  With this basis trace(a @ b) equals the
    dot product of the coordinate vectors.
    """
    n = m.shape[0]
    iu = np.triu_indices(n, 1)
    parts = [np.real(np.diag(m)), np.sqrt(2) * np.real(m[iu])]
    if not real:
        parts.append(np.sqrt(2) * np.imag(m[iu]))
    return np.concatenate(parts)


def from_hermitian_coordinates(c: np.ndarray, n: int, real: bool) -> np.ndarray:
    iu = np.triu_indices(n, 1)
    npairs = len(iu[0])
    m = np.zeros((n, n), dtype=float if real else complex)
    m[np.diag_indices(n)] = c[:n]
    off = c[n:n + npairs] / np.sqrt(2)
    if not real:
        off = off + 1j * c[n + npairs:n + 2 * npairs] / np.sqrt(2)
    m[iu] = off
    m[(iu[1], iu[0])] = np.conj(off)
    return m
