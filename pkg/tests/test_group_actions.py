import random

import pytest

from k3lattice.exact_linalg import IntMatrix, vec_mat
from k3lattice.group_actions import (
    GroupAction,
    invariant_and_coinvariant,
    k3_symplectic_order_allowed,
    picard_bound_from_action,
    validate_action,
)
from k3lattice.lattices import Lattice, LatticeError, Sublattice, is_primitive, make_standard
from oracles import hyperbolic_sum, random_signed_block_permutation

U = make_standard("U")
UU = U + U
SWAP = IntMatrix.from_rows([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])


class TestValidate:
    def test_identity(self):
        assert validate_action(GroupAction(U, [IntMatrix.identity(2)])).valid

    def test_swap(self):
        assert validate_action(GroupAction(UU, [SWAP])).valid

    def test_bad(self):
        r = validate_action(GroupAction(U, [[[2, 0], [0, 1]]]))
        assert not r.valid and len(r.violations) == 2

    def test_shape(self):
        with pytest.raises(LatticeError):
            GroupAction(U, [IntMatrix.identity(3)])


class TestInvariantCoinvariant:
    def test_swap(self):
        fixed, coinv = invariant_and_coinvariant(GroupAction(UU, [SWAP]))
        assert fixed.same_span(Sublattice(UU, [[1, 0, 1, 0], [0, 1, 0, 1]]))
        assert coinv.same_span(Sublattice(UU, [[1, 0, -1, 0], [0, 1, 0, -1]]))
        assert fixed.gram.tolist() == [[0, 2], [2, 0]]
        assert coinv.gram.tolist() == [[0, 2], [2, 0]]

    def test_identity(self):
        fixed, coinv = invariant_and_coinvariant(GroupAction(U, [IntMatrix.identity(2)]))
        assert fixed.rank == 2 and coinv.rank == 0

    def test_minus_identity(self):
        fixed, coinv = invariant_and_coinvariant(GroupAction(U, [IntMatrix.identity(2).scale(-1)]))
        assert fixed.rank == 0 and coinv.rank == 2

    def test_invalid(self):
        with pytest.raises(LatticeError, match="invalid action"):
            invariant_and_coinvariant(GroupAction(U, [[[2, 0], [0, 1]]]))

    def test_no_generators(self):
        fixed, coinv = invariant_and_coinvariant(GroupAction(U, []))
        assert fixed.rank == 2 and coinv.rank == 0

    def test_random_actions(self):
        rng = random.Random(3)
        for _ in range(60):
            k = rng.randint(1, 4)
            lat = Lattice(IntMatrix.from_rows(hyperbolic_sum(k)))
            gens = [IntMatrix.from_rows(random_signed_block_permutation(rng, k)) for _ in range(rng.randint(1, 2))]
            action = GroupAction(lat, gens)
            assert validate_action(action).valid
            fixed, coinv = invariant_and_coinvariant(action)
            assert fixed.rank + coinv.rank == lat.rank
            assert is_primitive(fixed) and is_primitive(coinv)
            if fixed.rank and coinv.rank:
                assert not any((fixed.basis @ lat.gram @ coinv.basis.T).entries)
            for g in gens:
                for row in coinv.basis:
                    image = vec_mat(list(row), g)
                    # image stays in S_G: it is orthogonal to every fixed vector
                    assert all(lat.pair(image, f) == 0 for f in fixed.basis)
            trivial = all(g == IntMatrix.identity(lat.rank) for g in gens)
            assert (coinv.rank == 0) == trivial


class TestPicardBound:
    def test_identity(self):
        assert picard_bound_from_action(GroupAction(U, [IntMatrix.identity(2)])) == 0

    def test_swap(self):
        assert picard_bound_from_action(GroupAction(UU, [SWAP])) == 2

    def test_swap_with_fixed_class(self):
        assert picard_bound_from_action(GroupAction(UU, [SWAP]), [[1, 1, 1, 1]]) == 2

    def test_unfixed_class(self):
        with pytest.raises(LatticeError, match="not fixed by generator 0"):
            picard_bound_from_action(GroupAction(U, [IntMatrix.identity(2).scale(-1)]), [[1, 0]])


class TestOrderGate:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_allowed(self, n):
        assert k3_symplectic_order_allowed(n)

    @pytest.mark.parametrize("n", [9, 10, 11, 12, 16])
    def test_forbidden(self, n):
        assert not k3_symplectic_order_allowed(n)

    def test_zero(self):
        with pytest.raises(ValueError):
            k3_symplectic_order_allowed(0)
