"""Named test complexes and sphere samples."""
from __future__ import annotations

from itertools import combinations

import numpy as np

from .complex import (
    PointCloud,
    SimplicialComplex,
    complete_graph,
    cycle_graph,
    epsilon_graph,
    from_facets,
    whitney_complex,
)

# vertex 0 = +z, 1..4 = +x, +y, -x, -y, 5 = -z; antipodes 0-5, 1-3, 2-4
OCTAHEDRON_FACETS = [
    [pole, e, (e % 4) + 1] for pole in (0, 5) for e in range(1, 5)
]
OCTAHEDRON_QUARTER_TURN = (0, 2, 3, 4, 1, 5)
OCTAHEDRON_ANTIPODAL = (5, 3, 4, 1, 2, 0)


def point() -> SimplicialComplex:
    return from_facets([[0]])


def full_triangle() -> SimplicialComplex:
    return from_facets([[0, 1, 2]])


def hollow_triangle() -> SimplicialComplex:
    return from_facets([[0, 1], [1, 2], [0, 2]])


def octahedron() -> SimplicialComplex:
    return from_facets(OCTAHEDRON_FACETS)


def cycle(n: int) -> SimplicialComplex:
    """Whitney complex of the n-cycle (a filled triangle when n = 3)."""
    return whitney_complex(cycle_graph(n))


def simplex(k: int) -> SimplicialComplex:
    return whitney_complex(complete_graph(k + 1))


def icosahedron_points() -> np.ndarray:
    phi = (1 + 5 ** 0.5) / 2
    pts = []
    for a in (-1.0, 1.0):
        for b in (-phi, phi):
            pts += [(0.0, a, b), (a, b, 0.0), (b, 0.0, a)]
    pts = np.array(pts)
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def _icosahedron_faces(pts: np.ndarray) -> list[tuple[int, int, int]]:
    d = np.linalg.norm(pts[:, None] - pts[None], axis=-1)
    edge = d[d > 1e-9].min()
    adj = np.abs(d - edge) < 1e-6
    return [f for f in combinations(range(len(pts)), 3) if adj[f[0], f[1]] and adj[f[1], f[2]] and adj[f[0], f[2]]]


def geodesic_sphere(subdivisions: int) -> tuple[np.ndarray, list[tuple[int, int, int]]]:
    """Icosahedron split ``subdivisions`` times into four triangles, projected to the unit sphere."""
    if subdivisions < 0:
        raise ValueError("subdivisions must be non-negative")
    pts = list(map(tuple, icosahedron_points()))
    faces = _icosahedron_faces(np.array(pts))
    for _ in range(subdivisions):
        midpoint: dict[tuple[int, int], int] = {}

        def mid(i, j):
            key = (min(i, j), max(i, j))
            if key not in midpoint:
                m = (np.array(pts[i]) + np.array(pts[j])) / 2
                pts.append(tuple(m / np.linalg.norm(m)))
                midpoint[key] = len(pts) - 1
            return midpoint[key]

        refined = []
        for a, b, c in faces:
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            refined += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = refined
    return np.array(pts), faces


def icosahedron() -> SimplicialComplex:
    pts, faces = geodesic_sphere(0)
    return from_facets([list(f) for f in faces])


def sphere_sample(subdivisions: int, h: float, max_dim: int | None = None):
    """Point cloud, epsilon-graph and Whitney complex of a geodesic sphere sample."""
    pts, _ = geodesic_sphere(subdivisions)
    pc = PointCloud(pts)
    g = epsilon_graph(pc, h)
    return pc, g, whitney_complex(g, max_dim)


def random_2_complex(n_vertices: int, n_triangles: int, n_edges: int, seed: int) -> SimplicialComplex:
    """Random 2-complex: chosen triangles and extra edges plus all vertices."""
    rng = np.random.default_rng(seed)
    tris = list(combinations(range(n_vertices), 3))
    edges = list(combinations(range(n_vertices), 2))
    picked = [list(tris[i]) for i in rng.choice(len(tris), size=n_triangles, replace=False)]
    picked += [list(edges[i]) for i in rng.choice(len(edges), size=n_edges, replace=False)]
    picked += [[v] for v in range(n_vertices)]
    return from_facets(picked)


def suite() -> dict[str, SimplicialComplex]:
    """The named complexes the acceptance checks run over."""
    out = {
        "point": point(),
        "triangle": full_triangle(),
        "hollow_triangle": hollow_triangle(),
    }
    for n in range(3, 8):
        out[f"C{n}"] = cycle(n)
    out["octahedron"] = octahedron()
    out["icosahedron"] = icosahedron()
    out["tetrahedron_boundary"] = from_facets([list(f) for f in combinations(range(4), 3)])
    for seed in range(3):
        out[f"random{seed}"] = random_2_complex(8 + 2 * seed, 6 + 2 * seed, 4, seed)
    return out
