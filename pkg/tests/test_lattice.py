import warnings
from fractions import Fraction

import pytest

from k3v.exact.matrix import RatMatrix
from k3v.lattice import (DomainError, GramLattice, burnside_warnings, eigenrank, epsilon, is_isometry, mu,
                         picard_lower_bound, symplectic_trace)

U = [[0, 1], [1, 0]]


def test_epsilon_formula():
    assert epsilon(1) == 24 and epsilon(6) == 2 and epsilon(7) == 3
    with pytest.warns(UserWarning):
        assert epsilon(9) == Fraction(24, 12)


def test_symplectic_trace_domain():
    assert symplectic_trace(2) == 6
    with pytest.raises(DomainError):
        symplectic_trace(9)


def test_mu_and_bound():
    assert mu({1: 1, 2: 1}) == 16
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert picard_lower_bound({1: 1, 2: 1}) == 9
    assert burnside_warnings({1: 1, 3: 1}) == ["order 3 does not divide |G| = 2",
                                                "1 elements of order 3 is not a multiple of phi(3) = 2"]
    with pytest.raises(ValueError):
        mu({2: 1})
    with pytest.raises(DomainError):
        mu({1: 1, 11: 10})


def test_gram_lattice_and_isometry():
    L = GramLattice(U)
    assert L.signature() == (1, 1, 0)
    assert L.pair([1, 0], [0, 1]) == 1
    swap = RatMatrix([[0, 1], [1, 0]])
    assert is_isometry(swap, L)
    assert not is_isometry(RatMatrix([[2, 0], [0, 1]]), L)
    assert eigenrank(swap, 1) == 1 and eigenrank(swap, -1) == 1
