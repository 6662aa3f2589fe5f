"""Finite abstract simplicial complexes, clique complexes and epsilon-graphs."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import (
    DuplicateVertexInFacet,
    EmptyComplex,
    EmptyFacet,
    InvalidAutomorphism,
    NonPositiveThreshold,
    ParseError,
    VertexlessGraph,
)

Simplex = tuple  # strictly increasing tuple of vertex indices


class SimplicialComplex:
    """Immutable simplicial complex on vertices ``0..n-1``.

    Simplices are tuples of sorted vertex indices, stored per dimension in
    lexicographic order. ``labels[i]`` is the external id of vertex ``i``.
    """

    def __init__(self, simplices_by_dim: Sequence[Iterable[Simplex]], labels: Sequence[int]):
        self._simplices = tuple(tuple(sorted(set(map(tuple, level)))) for level in simplices_by_dim)
        while self._simplices and not self._simplices[-1]:
            self._simplices = self._simplices[:-1]
        self._labels = tuple(labels)
        self._index = tuple({s: i for i, s in enumerate(level)} for level in self._simplices)
        # per-instance memo for spectral data; never part of the public state
        self._cache: dict = {}

    @property
    def labels(self) -> tuple[int, ...]:
        return self._labels

    @property
    def n_vertices(self) -> int:
        return len(self._labels)

    @property
    def dim(self) -> int:
        return len(self._simplices) - 1

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self._simplices)

    @property
    def size(self) -> int:
        return sum(self.f_vector)

    def is_empty(self) -> bool:
        return not self._simplices

    def simplices(self, k: int) -> tuple[Simplex, ...]:
        if 0 <= k < len(self._simplices):
            return self._simplices[k]
        return ()

    def all_simplices(self):
        for level in self._simplices:
            yield from level

    def index(self, simplex: Simplex) -> int:
        """Position of ``simplex`` in the canonical order of its dimension."""
        return self._index[len(simplex) - 1][tuple(simplex)]

    def __contains__(self, simplex) -> bool:
        s = tuple(simplex)
        k = len(s) - 1
        return 0 <= k < len(self._index) and s in self._index[k]

    def facets(self) -> list[Simplex]:
        """Maximal simplices, ordered by dimension then lexicographically."""
        covered = set()
        for level in self._simplices[1:]:
            for s in level:
                covered.update(combinations(s, len(s) - 1))
        return [s for s in self.all_simplices() if s not in covered]

    def labeled_simplices(self) -> set[tuple[int, ...]]:
        """Simplex set in external vertex ids, for comparisons across complexes."""
        lab = self._labels
        return {tuple(sorted(lab[v] for v in s)) for s in self.all_simplices()}

    def one_skeleton(self) -> "Graph":
        return Graph(self.n_vertices, frozenset(self.simplices(1)))

    def to_json(self) -> dict:
        lab = self._labels
        return {"facets": [[lab[v] for v in s] for s in self.facets()]}

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._labels == other._labels and self._simplices == other._simplices

    def __hash__(self):
        return hash((self._labels, self._simplices))

    def __repr__(self):
        return f"SimplicialComplex(f={self.f_vector})"


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ParseError("vertex count must be non-negative")
        normalized = set()
        for e in self.edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise ParseError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ParseError(f"edge {(i, j)} out of range for n={self.n}")
            normalized.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(normalized))

    def neighbors(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}


@dataclass(frozen=True)
class PointCloud:
    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise ParseError("point cloud must be a non-empty list of equal-length coordinate vectors")
        if not np.all(np.isfinite(pts)):
            raise ParseError("point coordinates must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.shape[0]

    def to_json(self) -> dict:
        return {"points": self.points.tolist()}


def _closure(facets: Iterable[Sequence[int]], max_dim: int | None = None) -> list[set]:
    levels: list[set] = []
    for facet in facets:
        top = len(facet) if max_dim is None else min(len(facet), max_dim + 1)
        for size in range(1, top + 1):
            while len(levels) < size:
                levels.append(set())
            levels[size - 1].update(combinations(facet, size))
    return levels


def from_facets(facets: Sequence[Sequence[int]]) -> SimplicialComplex:
    """Smallest complex containing every facet, with vertex ids normalized.

    >>> from_facets([[0, 1, 2]]).f_vector
    (3, 3, 1)
    """
    if not facets:
        raise EmptyComplex("a complex needs at least one facet")
    cleaned = []
    for facet in facets:
        facet = list(facet)
        if not facet:
            raise EmptyFacet("facets must be non-empty")
        for v in facet:
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 0:
                raise ParseError(f"vertex ids must be non-negative integers, got {v!r}")
        if len(set(facet)) != len(facet):
            raise DuplicateVertexInFacet(f"facet {facet} repeats a vertex")
        cleaned.append(facet)
    labels = sorted({int(v) for facet in cleaned for v in facet})
    relabel = {v: i for i, v in enumerate(labels)}
    normalized = [tuple(sorted(relabel[int(v)] for v in facet)) for facet in cleaned]
    return SimplicialComplex(_closure(normalized), labels)


def _empty_complex() -> SimplicialComplex:
    # only reachable through fixed_subcomplex; constructors reject it
    return SimplicialComplex([], [])


def whitney_complex(g: Graph, max_dim: int | None = None) -> SimplicialComplex:
    """Clique complex of ``g``, optionally truncated at dimension ``max_dim``."""
    if g.n == 0:
        raise VertexlessGraph("the Whitney complex of a vertexless graph is empty")
    adj = g.neighbors()
    cap = None if max_dim is None else max_dim + 1
    levels: list[list] = [[(v,) for v in range(g.n)]]

    # extend each clique only by larger common neighbours: every clique once
    def expand(clique, candidates):
        if cap is not None and len(clique) >= cap:
            return
        for v in sorted(candidates):
            grown = clique + (v,)
            while len(levels) < len(grown):
                levels.append([])
            levels[len(grown) - 1].append(grown)
            expand(grown, {u for u in candidates & adj[v] if u > v})

    for v in range(g.n):
        expand((v,), {u for u in adj[v] if u > v})
    return SimplicialComplex(levels, range(g.n))


def epsilon_graph(pc: PointCloud, h: float) -> Graph:
    """Graph joining points at Euclidean distance at most ``h`` (inclusive)."""
    if not h > 0:
        raise NonPositiveThreshold(f"threshold must be positive, got {h}")
    n = len(pc)
    if n < 2:
        return Graph(n)
    dist = squareform(pdist(pc.points))
    i, j = np.nonzero(np.triu(dist <= h, k=1))
    return Graph(n, frozenset(zip(i.tolist(), j.tolist())))


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** k * f for k, f in enumerate(K.f_vector))


def fixed_subcomplex(K: SimplicialComplex, generators) -> SimplicialComplex:
    """Simplices whose every vertex is fixed by every generator.

    May be empty: the empty complex is a legitimate fixed set with Euler
    characteristic 0. Vertex labels of ``K`` are kept.
    """
    fixed = set(range(K.n_vertices))
    for T in generators:
        if getattr(T, "complex", None) != K:
            raise InvalidAutomorphism("generator does not act on this complex")
        fixed &= {v for v, w in enumerate(T.vertex_map) if v == w}
    kept = [s for s in K.all_simplices() if fixed.issuperset(s)]
    if not kept:
        return _empty_complex()
    lab = K.labels
    return from_facets([[lab[v] for v in s] for s in kept])


def cycle_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


# -- JSON readers -----------------------------------------------------------


def _reject_constant(name):
    raise ParseError(f"non-finite number {name} in input")


def loads(text: str):
    """``json.loads`` that refuses NaN and Infinity."""
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def complex_from_json(data) -> SimplicialComplex:
    if isinstance(data, dict) and "complex" in data and "facets" not in data:
        data = data["complex"]
    if not isinstance(data, dict) or not isinstance(data.get("facets"), list):
        raise ParseError('complex JSON needs a "facets" list')
    facets = data["facets"]
    if not all(isinstance(f, list) for f in facets):
        raise ParseError("each facet must be a list of vertex ids")
    return from_facets(facets)


def graph_from_json(data) -> Graph:
    try:
        n = data["n"]
        edges = data.get("edges", [])
    except (TypeError, KeyError) as exc:
        raise ParseError('graph JSON needs "n" and "edges"') from exc
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParseError('"n" must be an integer')
    if not all(isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e) for e in edges):
        raise ParseError("edges must be pairs of integers")
    g = Graph(n, frozenset(map(tuple, edges)))
    if len(g.edges) != len(edges):
        raise ParseError("duplicate edges")
    return g


def point_cloud_from_json(data) -> PointCloud:
    if not isinstance(data, dict) or not isinstance(data.get("points"), list):
        raise ParseError('point cloud JSON needs a "points" list')
    pts = data["points"]
    for p in pts:
        if not isinstance(p, list) or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x) for x in p
        ):
            raise ParseError("points must be lists of finite numbers")
    try:
        return PointCloud(np.array(pts, dtype=float))
    except ValueError as exc:
        raise ParseError("points must share one ambient dimension") from exc
