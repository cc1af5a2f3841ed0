"""Tests for tableaux, chain divisor construction, and shape checks."""
from fractions import Fraction

import pytest

from tropdiv import (BNParams, Divisor, canonical_divisor,
                     default_generic_chain, make_chain)
from tropdiv.chainbn import (DyckPath, Tableau, adjoint_divisor, build_Dj,
                             build_Ek, canonical_shape_check,
                             chips_on_each_loop_check, enumerate_tableaux,
                             gp_rho_zero_experiment, hook_length_count,
                             is_wg_reduced_shape, shape_profile,
                             tableau_to_divisor, tableau_to_dyck)
from tropdiv.errors import (GenericityError, GraphError, PreconditionError,
                            TheoremViolation)
from tropdiv.plfunc import PLFunction, in_R
from tropdiv.reduce import is_equivalent, rank, v_reduce


class TestTableau:
    def test_validation(self):
        Tableau(((1, 2), (3, 4)))
        with pytest.raises(PreconditionError):
            Tableau(((1, 3), (2, 2)))      # repeated entry
        with pytest.raises(PreconditionError):
            Tableau(((2, 1), (3, 4)))      # row not increasing
        with pytest.raises(PreconditionError):
            Tableau(((1, 4), (2, 3)))      # column not increasing

    def test_transpose_involution(self):
        T = Tableau(((1, 3), (2, 5), (4, 6)))
        assert T.transpose().transpose() == T
        assert T.transpose().rows == T.cols

    def test_position(self):
        T = Tableau(((1, 3), (2, 5), (4, 6)))
        assert T.position(1) == (0, 0)
        assert T.position(5) == (1, 1)

    def test_params_rho(self):
        # 2x2 at g=4 is the rho = 0 case (g,r,d) = (4,1,3)
        p = Tableau(((1, 2), (3, 4))).params()
        assert (p.g, p.r, p.d) == (4, 1, 3)
        assert p.rho == 0
        assert BNParams(6, 3, 5).rho == -10

    @pytest.mark.parametrize("rows,cols", [(2, 2), (2, 3), (3, 2), (2, 4)])
    def test_enumeration_matches_hook_length(self, rows, cols):
        ts = enumerate_tableaux(rows, cols)
        assert len(ts) == hook_length_count(rows, cols)
        assert len(set(ts)) == len(ts)

    def test_dyck_path_endpoints(self):
        T = Tableau(((1, 2), (3, 4)))
        path = tableau_to_dyck(T)
        r = T.cols - 1
        # the path starts and ends at the top chamber point
        for j in range(r):
            assert path.coord(0, j) == r - j
            assert path.coord(T.size, j) == r - j


class TestTableauDivisors:
    def test_requires_matching_genus(self, chain3):
        with pytest.raises(PreconditionError):
            tableau_to_divisor(Tableau(((1, 2), (3, 4))), chain3)

    def test_requires_generic_chain(self):
        bad = make_chain(4, [1] * 4, [1] * 4, [1] * 3)
        with pytest.raises(GenericityError):
            tableau_to_divisor(Tableau(((1, 2), (3, 4))), bad)

    @pytest.mark.parametrize("idx", [0, 1])
    def test_g4_divisors_have_expected_rank(self, chain4, idx):
        T = enumerate_tableaux(2, 2)[idx]
        D = tableau_to_divisor(T, chain4)
        assert D.degree == 3
        assert D.is_effective
        assert rank(chain4.graph, D) == 1

    def test_adjunction(self, chain4):
        T = enumerate_tableaux(2, 2)[0]
        D = tableau_to_divisor(T, chain4)
        E = adjoint_divisor(T, chain4)
        K = canonical_divisor(chain4.graph)
        assert (D + E).degree == K.degree
        assert is_equivalent(chain4.graph, D + E, K) is not None

    def test_v1_reduced_fixpoint(self, chain4):
        # the tableau divisor is already reduced at v_1
        T = enumerate_tableaux(2, 2)[0]
        D = tableau_to_divisor(T, chain4)
        assert v_reduce(chain4.graph, D, chain4.v(1)).reduced == D


class TestBuildDj:
    @pytest.mark.parametrize("j", [0, 1])
    def test_witness_and_twist(self, chain4, j):
        T = enumerate_tableaux(2, 2)[0]
        D = tableau_to_divisor(T, chain4)
        Dj, phi = build_Dj(T, chain4, j)
        r = T.cols - 1
        wg = chain4.w(4)
        assert D + phi.divisor() == Dj
        assert phi(wg) == 0
        shift = Divisor({chain4.v(1): j, wg: r - j})
        assert (Dj - shift).is_effective

    def test_out_of_range(self, chain4):
        T = enumerate_tableaux(2, 2)[0]
        with pytest.raises(PreconditionError):
            build_Dj(T, chain4, 5)

    def test_Ek_is_adjoint_build(self, chain4):
        T = enumerate_tableaux(2, 2)[0]
        Ek, psi = build_Ek(T, chain4, 0)
        E = adjoint_divisor(T, chain4)
        assert E + psi.divisor() == Ek


class TestShapes:
    def test_wg_reduced_shape_of_reduction(self, chain3, rng):
        from tropdiv.sampling import random_effective_divisor
        G = chain3.graph
        wg = chain3.w(3)
        for _ in range(10):
            D = random_effective_divisor(G, rng, rng.randint(0, 4))
            red = v_reduce(G, D, wg, track_witness=False).reduced
            assert is_wg_reduced_shape(red, chain3)
            prof = shape_profile(red, chain3)
            assert not any(prof.bridges)

    def test_canonical_shape_check_finds_empty_cell(self, chain3):
        K = canonical_divisor(chain3.graph)
        i = canonical_shape_check(K, chain3)
        assert 1 <= i <= 3

    def test_canonical_shape_check_requires_canonical(self, chain3):
        with pytest.raises(PreconditionError):
            canonical_shape_check(Divisor({chain3.v(1): 1}), chain3)


class TestChipsOnEachLoop:
    def test_constant_family_passes(self, chain2):
        G = chain2.graph
        D = Divisor({chain2.v(2): 1})
        f0 = PLFunction.constant(G, 0)
        from tropdiv.plfunc import distance_function
        f1 = distance_function(G, chain2.v(2), cap=Fraction(1, 4))
        assert chips_on_each_loop_check(chain2, D, [f0], 2)

    def test_distinct_slopes_required(self, chain2):
        G = chain2.graph
        D = Divisor({chain2.v(2): 1})
        f0 = PLFunction.constant(G, 0)
        with pytest.raises(PreconditionError):
            chips_on_each_loop_check(chain2, D, [f0, f0], 2)

    def test_loop_one_needs_extended_chain(self, chain2):
        with pytest.raises(PreconditionError):
            chips_on_each_loop_check(chain2, Divisor(), [], 1)

    def test_degree_bound(self, chain2):
        D = Divisor({chain2.v(2): 5})
        with pytest.raises(PreconditionError):
            chips_on_each_loop_check(chain2, D, [], 2)


class TestGPExperiment:
    def test_g4_both_tableaux_independent(self, chain4):
        for T in enumerate_tableaux(2, 2):
            rep = gp_rho_zero_experiment(T, chain4)
            assert rep.verdict == "independent"
            assert rep.certificate is None
            # the empty-cell table is a bijection onto the loops
            assert sorted(rep.empty_cell_table.values()) == [1, 2, 3, 4]

    def test_rho_nonzero_rejected(self, chain4):
        # 2x2 tableau against a genus-3 chain
        ch3 = default_generic_chain(3)
        with pytest.raises(PreconditionError):
            gp_rho_zero_experiment(Tableau(((1, 2), (3, 4))), ch3)

    def test_non_generic_chain_rejected(self):
        bad = make_chain(4, [1] * 4, [1] * 4, [1] * 3)
        with pytest.raises(GenericityError):
            gp_rho_zero_experiment(Tableau(((1, 2), (3, 4))), bad)
