"""Boundary matrices, Dirac operator, Hodge Laplacian, Betti numbers and heat super traces.

Every simplex is oriented by ascending vertex order. Integer matrices are
exact (int64); spectra come from a dense symmetric eigensolver and are
cross-checked against exact ranks.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complex import SimplicialComplex, euler_characteristic
from .errors import DegreeOutOfRange, EigensolverFailure
from .kernels import exact_rank

ZERO_RTOL = 1e-9


def boundary_matrix(K: SimplicialComplex, k: int) -> np.ndarray:
    """Signed incidence matrix from k-simplices (columns) to (k-1)-faces (rows)."""
    if not 1 <= k <= K.dim:
        raise DegreeOutOfRange(f"boundary degree {k} outside 1..{K.dim}")
    rows, cols = K.simplices(k - 1), K.simplices(k)
    B = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, s in enumerate(cols):
        for i in range(len(s)):
            B[K.index(s[:i] + s[i + 1:]), j] = -1 if i % 2 else 1
    return B


def _boundary_or_empty(K: SimplicialComplex, k: int) -> np.ndarray:
    f = K.f_vector
    if 1 <= k <= K.dim:
        return boundary_matrix(K, k)
    rows = f[k - 1] if 0 <= k - 1 < len(f) else 0
    cols = f[k] if 0 <= k < len(f) else 0
    return np.zeros((rows, cols), dtype=np.int64)


def _offsets(K: SimplicialComplex) -> list[int]:
    return list(np.cumsum((0,) + K.f_vector))


def dirac(K: SimplicialComplex) -> np.ndarray:
    """D = d + d* on all forms, ordered by degree then canonical simplex order."""
    off = _offsets(K)
    D = np.zeros((off[-1], off[-1]), dtype=np.int64)
    for k in range(1, K.dim + 1):
        B = boundary_matrix(K, k)
        D[off[k - 1]:off[k], off[k]:off[k + 1]] = B
        D[off[k]:off[k + 1], off[k - 1]:off[k]] = B.T
    return D


@dataclass(frozen=True)
class HodgeLaplacian:
    blocks: tuple[np.ndarray, ...]

    @property
    def total(self) -> np.ndarray:
        n = sum(b.shape[0] for b in self.blocks)
        H = np.zeros((n, n), dtype=np.int64)
        i = 0
        for b in self.blocks:
            H[i:i + b.shape[0], i:i + b.shape[0]] = b
            i += b.shape[0]
        return H


def laplacian_block(K: SimplicialComplex, k: int) -> np.ndarray:
    if not 0 <= k <= K.dim:
        raise DegreeOutOfRange(f"degree {k} outside 0..{K.dim}")
    down = _boundary_or_empty(K, k)
    up = _boundary_or_empty(K, k + 1)
    return down.T @ down + up @ up.T


def hodge_laplacian(K: SimplicialComplex) -> HodgeLaplacian:
    return HodgeLaplacian(tuple(laplacian_block(K, k) for k in range(K.dim + 1)))


def supertrace_of_power(K: SimplicialComplex, power: int) -> int:
    """str(H^power), exact in integer arithmetic."""
    total = 0
    for k, Hk in enumerate(hodge_laplacian(K).blocks):
        M = np.array(Hk, dtype=object)
        P = np.identity(M.shape[0], dtype=object) if power == 0 else M
        for _ in range(power - 1):
            P = P @ M
        total += (-1) ** k * int(np.trace(P)) if M.size else 0
    return total


def ranks(K: SimplicialComplex) -> list[int]:
    """Exact ranks of the boundary maps; entry k is rank of the degree-k boundary (0 for k = 0)."""
    key = ("ranks",)
    if key not in K._cache:
        K._cache[key] = [0] + [exact_rank(boundary_matrix(K, k)) for k in range(1, K.dim + 1)]
    return K._cache[key]


def betti(K: SimplicialComplex) -> tuple[int, ...]:
    """Betti numbers over Q, b_k = f_k - rank d_k - rank d_{k+1}."""
    r = ranks(K) + [0]
    return tuple(f - r[k] - r[k + 1] for k, f in enumerate(K.f_vector))


@dataclass(frozen=True)
class SpectralData:
    degree: int
    eigenvalues: np.ndarray
    kernel_dim: int

    def to_json(self) -> dict:
        return {"degree": self.degree, "eigenvalues": self.eigenvalues.tolist(), "kernel_dim": self.kernel_dim}


def _eigh(K: SimplicialComplex, k: int):
    key = ("eigh", k)
    if key not in K._cache:
        Hk = laplacian_block(K, k).astype(float)
        try:
            w, V = np.linalg.eigh(Hk)
        except np.linalg.LinAlgError as exc:
            raise EigensolverFailure(f"eigensolver failed on degree {k}: {exc}") from exc
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(V))):
            raise EigensolverFailure(f"non-finite spectrum in degree {k}")
        K._cache[key] = (w, V)
    return K._cache[key]


def zero_threshold(K: SimplicialComplex) -> float:
    """Scale-relative kernel cutoff shared by all degrees of ``K``."""
    key = ("threshold",)
    if key not in K._cache:
        lam_max = max((float(_eigh(K, k)[0].max()) for k in range(K.dim + 1) if K.f_vector[k]), default=0.0)
        K._cache[key] = ZERO_RTOL * max(1.0, lam_max)
    return K._cache[key]


def spectrum(K: SimplicialComplex, k: int, verify: bool = True) -> SpectralData:
    """Eigenvalues of the degree-k Laplacian block, ascending.

    With ``verify`` the numerical kernel dimension is compared with the exact
    Betti number and a mismatch raises :class:`EigensolverFailure`.
    """
    if not 0 <= k <= K.dim:
        raise DegreeOutOfRange(f"degree {k} outside 0..{K.dim}")
    w, _ = _eigh(K, k)
    tol = zero_threshold(K)
    if w.size and w[0] < -tol:
        raise EigensolverFailure(f"negative eigenvalue {w[0]} in degree {k}")
    kernel_dim = int(np.sum(w < tol))
    if verify and kernel_dim != betti(K)[k]:
        raise EigensolverFailure(
            f"degree {k}: numerical kernel dimension {kernel_dim} != exact Betti number {betti(K)[k]}"
        )
    return SpectralData(k, np.clip(w, 0.0, None), kernel_dim)


def harmonic_basis(K: SimplicialComplex, k: int) -> np.ndarray:
    """Orthonormal columns spanning the numerical kernel of the degree-k block."""
    w, V = _eigh(K, k)
    return V[:, w < zero_threshold(K)]


def heat_supertrace(K: SimplicialComplex, t: float) -> float:
    """str(exp(-tH)); equals the Euler characteristic for every t >= 0."""
    if t < 0:
        raise ValueError("heat time must be non-negative")
    total = 0.0
    for k in range(K.dim + 1):
        w, _ = _eigh(K, k)
        total += (-1) ** k * float(np.sum(np.exp(-t * np.clip(w, 0.0, None))))
    return total


@dataclass(frozen=True)
class SupersymmetryReport:
    ok: bool
    pairs: list[tuple[float, float]]
    even_unmatched: list[float]
    odd_unmatched: list[float]
    max_gap: float

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "pairs": [list(p) for p in self.pairs],
            "even_unmatched": self.even_unmatched,
            "odd_unmatched": self.odd_unmatched,
            "max_gap": self.max_gap,
        }


def supersymmetry_check(K: SimplicialComplex, tol: float = 1e-8) -> SupersymmetryReport:
    """Pair the positive spectrum on even forms with the one on odd forms."""
    cut = zero_threshold(K)
    even, odd = [], []
    for k in range(K.dim + 1):
        w, _ = _eigh(K, k)
        (even if k % 2 == 0 else odd).extend(float(x) for x in w if x >= cut)
    even.sort()
    odd.sort()
    m = min(len(even), len(odd))
    pairs = list(zip(even[:m], odd[:m]))
    gap = max((abs(a - b) for a, b in pairs), default=0.0)
    ok = len(even) == len(odd) and gap < tol
    return SupersymmetryReport(ok, pairs, even[m:], odd[m:], gap)


def matrix_to_json(M) -> dict:
    """Sparse triplet form of an integer or real matrix."""
    M = np.asarray(M)
    i, j = np.nonzero(M)
    entries = [[int(a), int(b), M[a, b].item()] for a, b in zip(i, j)]
    return {"rows": int(M.shape[0]), "cols": int(M.shape[1]), "entries": entries}


def hodge_agreement(K: SimplicialComplex) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(exact Betti vector, numerical kernel dimensions) for side-by-side comparison."""
    numeric = tuple(spectrum(K, k, verify=False).kernel_dim for k in range(K.dim + 1))
    return betti(K), numeric


__all__ = [
    "HodgeLaplacian",
    "SpectralData",
    "SupersymmetryReport",
    "betti",
    "boundary_matrix",
    "dirac",
    "euler_characteristic",
    "harmonic_basis",
    "heat_supertrace",
    "hodge_agreement",
    "hodge_laplacian",
    "laplacian_block",
    "matrix_to_json",
    "ranks",
    "spectrum",
    "supersymmetry_check",
    "supertrace_of_power",
    "zero_threshold",
]
