import numpy as np
import pytest

from lefschetz_lab import samples
from lefschetz_lab.complex import euler_characteristic, from_facets
from lefschetz_lab.errors import InvalidAutomorphism, NonIntegerTrace, NotSimplicial, TooManyVertices
from lefschetz_lab.hodge import hodge_laplacian, laplacian_block
from lefschetz_lab.lefschetz import (
    automorphism_from_vertex_map,
    automorphism_group,
    fixed_point_indices,
    form_supertrace,
    heat_interpolation,
    induced_form_matrix,
    lefschetz_number,
    permutation_sign,
    verify_lefschetz,
)
from oracles import brute_automorphisms, expm_supertrace, inversion_sign

QUARTER = samples.OCTAHEDRON_QUARTER_TURN
ANTIPODAL = samples.OCTAHEDRON_ANTIPODAL


def test_permutation_sign_matches_inversions():
    from itertools import permutations

    for n in range(1, 6):
        for p in permutations(range(n)):
            assert permutation_sign(p) == inversion_sign(p)
    assert permutation_sign([7, 3]) == -1


class TestAutomorphism:
    def test_identity(self, suite):
        for K in suite.values():
            assert automorphism_from_vertex_map(K, range(K.n_vertices)).is_identity()

    def test_cycle_rotation(self):
        automorphism_from_vertex_map(samples.cycle(4), [1, 2, 3, 0])

    def test_swap_on_disconnected_pieces(self):
        K = from_facets([[0], [1], [2]])
        automorphism_from_vertex_map(K, [1, 0, 2])

    def test_not_simplicial_names_simplex(self):
        path = from_facets([[0, 2]])  # vertices relabelled 0, 1
        K = from_facets([[0, 2], [1]])  # 0-2 edge plus isolated vertex; normalized (0, 2), (1,)
        with pytest.raises(NotSimplicial) as info:
            automorphism_from_vertex_map(K, [1, 0, 2])
        assert info.value.simplex == (0, 2)
        assert path.f_vector == (2, 1)

    def test_not_a_permutation(self):
        with pytest.raises(InvalidAutomorphism):
            automorphism_from_vertex_map(samples.full_triangle(), [0, 0, 1])

    def test_composition_and_inverse(self, octahedron):
        A = automorphism_from_vertex_map(octahedron, QUARTER)
        B = automorphism_from_vertex_map(octahedron, ANTIPODAL)
        assert (A @ A.inverse()).is_identity()
        for k in range(3):
            assert (induced_form_matrix(A @ B, k) == induced_form_matrix(A, k) @ induced_form_matrix(B, k)).all()


class TestGroup:
    @pytest.mark.parametrize("name, order", [("triangle", 6), ("C4", 8), ("octahedron", 48), ("C5", 10)])
    def test_against_brute_force(self, suite, name, order):
        K = suite[name]
        brute = brute_automorphisms(K.all_simplices(), K.n_vertices)
        assert len(brute) == order
        found = automorphism_group(K)
        assert [T.vertex_map for T in found] == sorted(brute)

    def test_cap(self):
        with pytest.raises(TooManyVertices):
            automorphism_group(samples.cycle(13))
        assert len(automorphism_group(samples.cycle(13), vertex_cap=13)) == 26


class TestInducedForms:
    def test_identity(self, octahedron):
        T = automorphism_from_vertex_map(octahedron, range(6))
        for k in range(3):
            assert (induced_form_matrix(T, k) == np.eye(octahedron.f_vector[k])).all()

    def test_edge_swap_sign(self):
        K = from_facets([[0, 1]])
        U = induced_form_matrix(automorphism_from_vertex_map(K, [1, 0]), 1)
        assert U.tolist() == [[-1]]

    def test_three_cycle_on_triangle(self):
        K = samples.full_triangle()
        U = induced_form_matrix(automorphism_from_vertex_map(K, [1, 2, 0]), 2)
        assert U.tolist() == [[1]]

    def test_signed_permutation_commuting_with_laplacian(self, suite):
        for name in ("octahedron", "C4", "triangle", "icosahedron"):
            K = suite[name]
            for T in automorphism_group(K)[:24]:
                for k in range(K.dim + 1):
                    U = induced_form_matrix(T, k)
                    assert (np.abs(U).sum(axis=0) == 1).all() and (np.abs(U).sum(axis=1) == 1).all()
                    assert (U @ U.T == np.eye(U.shape[0], dtype=int)).all()
                    assert (U @ induced_form_matrix(T.inverse(), k) == np.eye(U.shape[0], dtype=int)).all()
                    H = laplacian_block(K, k)
                    assert (U @ H == H @ U).all()


class TestLefschetzNumber:
    def test_identity_gives_euler(self, suite):
        for K in suite.values():
            assert lefschetz_number(K, automorphism_from_vertex_map(K, range(K.n_vertices))) == euler_characteristic(K)

    def test_c4_rotation(self):
        K = samples.cycle(4)
        assert lefschetz_number(K, automorphism_from_vertex_map(K, [1, 2, 3, 0])) == 0

    def test_antipodal(self, octahedron):
        assert lefschetz_number(octahedron, automorphism_from_vertex_map(octahedron, ANTIPODAL)) == 0

    def test_inverse_has_same_number(self, octahedron):
        for T in automorphism_group(octahedron):
            assert lefschetz_number(octahedron, T) == lefschetz_number(octahedron, T.inverse())

    def test_non_integer_trace_is_caught(self):
        K = samples.cycle(4)
        T = automorphism_from_vertex_map(K, [1, 2, 3, 0])
        lefschetz_number(K, T)
        w, V = K._cache[("eigh", 0)]
        broken = V.copy()
        broken[:, np.argmin(w)] = np.array([1.0, 1.0, 0.0, 0.0]) / np.sqrt(2)  # not T-invariant
        K._cache[("eigh", 0)] = (w, broken)
        with pytest.raises(NonIntegerTrace):
            lefschetz_number(K, T)


class TestIndices:
    def test_identity_octahedron(self, octahedron):
        idx, total = fixed_point_indices(octahedron, automorphism_from_vertex_map(octahedron, range(6)))
        assert len(idx) == 26 and total == 2

    def test_quarter_turn(self, octahedron):
        idx, total = fixed_point_indices(octahedron, automorphism_from_vertex_map(octahedron, QUARTER))
        assert idx == {(0,): 1, (5,): 1} and total == 2

    def test_edge_swap_on_triangle(self):
        K = samples.full_triangle()
        idx, total = fixed_point_indices(K, automorphism_from_vertex_map(K, [1, 0, 2]))
        assert idx == {(2,): 1, (0, 1): 1, (0, 1, 2): -1}
        assert total == 1 == lefschetz_number(K, automorphism_from_vertex_map(K, [1, 0, 2]))

    def test_matrix_supertrace_equals_combinatorial(self, suite):
        for name in ("octahedron", "C4", "triangle", "C5"):
            K = suite[name]
            for T in automorphism_group(K):
                assert form_supertrace(K, T) == fixed_point_indices(K, T)[1]


class TestHeatInterpolation:
    def test_identity(self, octahedron):
        T = automorphism_from_vertex_map(octahedron, range(6))
        assert all(abs(v - 2) < 1e-8 for _, v in heat_interpolation(octahedron, T, [0.0, 0.5, 3.0]))

    def test_quarter_turn_against_expm(self, octahedron):
        T = automorphism_from_vertex_map(octahedron, QUARTER)
        blocks = hodge_laplacian(octahedron).blocks
        U = [induced_form_matrix(T, k) for k in range(3)]
        for t, value in heat_interpolation(octahedron, T, [0.0, 1.0, 5.0]):
            assert abs(value - 2) < 1e-8
            assert abs(expm_supertrace(blocks, t, U) - 2) < 1e-8

    def test_antipodal_at_zero(self, octahedron):
        T = automorphism_from_vertex_map(octahedron, ANTIPODAL)
        assert heat_interpolation(octahedron, T, [0.0])[0][1] == 0.0

    def test_negative_time(self, octahedron):
        with pytest.raises(ValueError):
            heat_interpolation(octahedron, automorphism_from_vertex_map(octahedron, range(6)), [-1.0])


class TestReport:
    def test_octahedron_identity(self, octahedron):
        rep = verify_lefschetz(octahedron, automorphism_from_vertex_map(octahedron, range(6)))
        assert rep.verdict and rep.lefschetz_number == 2

    def test_c5_rotation(self, suite):
        K = suite["C5"]
        rep = verify_lefschetz(K, automorphism_from_vertex_map(K, [1, 2, 3, 4, 0]))
        assert (rep.lefschetz_number, rep.index_sum, rep.verdict) == (0, 0, True)
        assert rep.indices == {}

    def test_json(self, octahedron):
        rep = verify_lefschetz(octahedron, automorphism_from_vertex_map(octahedron, QUARTER))
        out = rep.to_json(octahedron.labels)
        assert out["indices"] == {"0": 1, "5": 1}
        assert out["verdict"] is True
        assert [t for t, _ in out["heat"]] == [0.0, 0.1, 1.0, 5.0, 20.0]
