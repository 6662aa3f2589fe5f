"""Simplicial automorphisms, their action on forms, and three routes to the Lefschetz number."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .complex import SimplicialComplex
from .errors import InvalidAutomorphism, NonIntegerTrace, NotSimplicial, TooManyVertices
from .hodge import _eigh, harmonic_basis

DEFAULT_T_GRID = (0.0, 0.1, 1.0, 5.0, 20.0)
ROUNDING_RESIDUAL = 1e-6


def permutation_sign(seq: Sequence[int]) -> int:
    """Signature of the permutation that sorts ``seq`` (distinct entries)."""
    seq = list(seq)
    sign = 1
    seen = [False] * len(seq)
    order = sorted(range(len(seq)), key=seq.__getitem__)
    for i in range(len(seq)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True, eq=False)
class Automorphism:
    vertex_map: tuple[int, ...]
    complex: SimplicialComplex = field(repr=False)

    def image(self, simplex) -> tuple[tuple[int, ...], int]:
        """Sorted image of ``simplex`` and the sign of the sort."""
        raw = [self.vertex_map[v] for v in simplex]
        return tuple(sorted(raw)), permutation_sign(raw)

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.vertex_map)
        for v, w in enumerate(self.vertex_map):
            inv[w] = v
        return Automorphism(tuple(inv), self.complex)

    def __matmul__(self, other: "Automorphism") -> "Automorphism":
        """Composition ``self`` after ``other``."""
        return Automorphism(tuple(self.vertex_map[w] for w in other.vertex_map), self.complex)

    def is_identity(self) -> bool:
        return all(v == w for v, w in enumerate(self.vertex_map))

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.vertex_map == other.vertex_map and self.complex == other.complex

    def __hash__(self):
        return hash(self.vertex_map)

    def to_json(self) -> dict:
        return {"perm": list(self.vertex_map)}


def automorphism_from_vertex_map(K: SimplicialComplex, perm: Sequence[int]) -> Automorphism:
    perm = tuple(int(v) for v in perm)
    if sorted(perm) != list(range(K.n_vertices)):
        raise InvalidAutomorphism(f"{list(perm)} is not a permutation of 0..{K.n_vertices - 1}")
    for s in K.all_simplices():
        img = tuple(sorted(perm[v] for v in s))
        if img not in K:
            raise NotSimplicial(s, img)
    return Automorphism(perm, K)


def _vertex_invariants(K: SimplicialComplex) -> list[tuple]:
    # (degree, f-vector of the link) is preserved by every automorphism
    links: list[list[int]] = [[0] * K.dim for _ in range(K.n_vertices)]
    for s in K.all_simplices():
        for v in s:
            if len(s) > 1:
                links[v][len(s) - 2] += 1
    return [tuple(link) for link in links]


def automorphism_group(K: SimplicialComplex, vertex_cap: int = 12) -> list[Automorphism]:
    """All simplicial vertex permutations, in lexicographic order of their one-line notation."""
    n = K.n_vertices
    if n > vertex_cap:
        raise TooManyVertices(f"{n} vertices exceeds the cap of {vertex_cap}")
    inv = _vertex_invariants(K)
    # simplices grouped by their largest vertex: checkable once that vertex is placed
    by_top: list[list] = [[] for _ in range(n)]
    for s in K.all_simplices():
        if len(s) > 1:
            by_top[s[-1]].append(s)
    perm = [-1] * n
    used = [False] * n
    found = []

    def place(v):
        if v == n:
            found.append(Automorphism(tuple(perm), K))
            return
        for w in range(n):
            if used[w] or inv[w] != inv[v]:
                continue
            perm[v] = w
            if all(tuple(sorted(perm[u] for u in s)) in K for s in by_top[v]):
                used[w] = True
                place(v + 1)
                used[w] = False
        perm[v] = -1

    place(0)
    return found


def induced_form_matrix(T: Automorphism, k: int) -> np.ndarray:
    """Signed permutation matrix of ``T`` on k-forms."""
    K = T.complex
    cols = K.simplices(k)
    U = np.zeros((len(cols), len(cols)), dtype=np.int64)
    for j, s in enumerate(cols):
        img, sign = T.image(s)
        U[K.index(img), j] = sign
    return U


def _round_trace(value: float, what: str) -> int:
    n = int(round(value))
    if abs(value - n) >= ROUNDING_RESIDUAL:
        raise NonIntegerTrace(f"{what} = {value!r} is not within {ROUNDING_RESIDUAL} of an integer")
    return n


def lefschetz_number(K: SimplicialComplex, T: Automorphism) -> int:
    """Super trace of the action on harmonic forms (cohomology)."""
    total = 0.0
    for k in range(K.dim + 1):
        P = harmonic_basis(K, k)
        if P.shape[1]:
            total += (-1) ** k * float(np.trace(P.T @ induced_form_matrix(T, k) @ P))
    return _round_trace(total, "harmonic super trace")


def fixed_point_indices(K: SimplicialComplex, T: Automorphism) -> tuple[dict, int]:
    """Index (-1)^dim(x) * sign(T|x) of every setwise-fixed simplex, and their sum."""
    indices = {}
    for s in K.all_simplices():
        img, sign = T.image(s)
        if img == s:
            indices[s] = (-1) ** (len(s) - 1) * sign
    return indices, sum(indices.values())


def form_supertrace(K: SimplicialComplex, T: Automorphism) -> int:
    """str(U_T) as an exact integer matrix super trace."""
    return sum((-1) ** k * int(np.trace(induced_form_matrix(T, k))) for k in range(K.dim + 1))


def heat_interpolation(K: SimplicialComplex, T: Automorphism, t_grid=DEFAULT_T_GRID) -> list[tuple[float, float]]:
    """Pairs (t, str(exp(-tH) U_T)) for each t in the grid.

    At t = 0 the value is the exact integer str(U_T).
    """
    per_degree = []
    for k in range(K.dim + 1):
        w, V = _eigh(K, k)
        U = induced_form_matrix(T, k).astype(float)
        # diagonal of V^T U V: weight of each eigenvector in tr(exp(-tH) U)
        per_degree.append((np.clip(w, 0.0, None), np.einsum("ij,ij->j", V, U @ V)))
    out = []
    for t in t_grid:
        t = float(t)
        if t < 0:
            raise ValueError("heat time must be non-negative")
        if t == 0.0:
            value = float(form_supertrace(K, T))
        else:
            value = sum((-1) ** k * float(np.dot(np.exp(-t * w), d)) for k, (w, d) in enumerate(per_degree))
        out.append((t, value))
    return out


@dataclass(frozen=True)
class LefschetzReport:
    perm: tuple[int, ...]
    lefschetz_number: int
    index_sum: int
    indices: dict
    heat: list[tuple[float, float]]
    form_supertrace: int
    verdict: bool
    tol: float

    @property
    def max_heat_deviation(self) -> float:
        return max((abs(v - self.lefschetz_number) for _, v in self.heat), default=0.0)

    def to_json(self, labels=None) -> dict:
        def name(s):
            return ",".join(str(labels[v] if labels else v) for v in s)

        return {
            "perm": list(self.perm),
            "lefschetz_number": self.lefschetz_number,
            "index_sum": self.index_sum,
            "form_supertrace": self.form_supertrace,
            "indices": {name(s): i for s, i in self.indices.items()},
            "heat": [[t, v] for t, v in self.heat],
            "max_heat_deviation": self.max_heat_deviation,
            "verdict": self.verdict,
        }


def verify_lefschetz(K: SimplicialComplex, T: Automorphism, t_grid=DEFAULT_T_GRID, tol: float = 1e-8) -> LefschetzReport:
    L = lefschetz_number(K, T)
    indices, total = fixed_point_indices(K, T)
    heat = heat_interpolation(K, T, t_grid)
    verdict = L == total and all(abs(v - L) < tol for _, v in heat)
    return LefschetzReport(T.vertex_map, L, total, indices, heat, form_supertrace(K, T), verdict, tol)
