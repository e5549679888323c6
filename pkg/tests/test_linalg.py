import random

import pytest

from thetagroups.linalg import Matrix, Span, inverse, nullspace, rank, restrict
from thetagroups.roots import CycNumber, QmodZ


def c(k, n=4):
    return CycNumber.root(k, n)


def test_monomial_product_and_trace():
    A = Matrix.monomial([1, 0], [QmodZ(1, 4), QmodZ(0)], 4)
    assert (A @ A) == Matrix.monomial([0, 1], [QmodZ(1, 4), QmodZ(1, 4)], 4)
    assert (A @ A).trace() == c(1) + c(1)


def test_nullspace_and_rank():
    M = Matrix(2, 3, 4, [{0: c(0), 1: c(1)}, {2: c(2)}])
    ns = nullspace(M)
    assert len(ns) == 1 and rank(M) == 2
    assert not any(M.apply(ns[0]).values())


def test_inverse_round_trip():
    rng = random.Random(0)
    for _ in range(5):
        perm = list(range(4))
        rng.shuffle(perm)
        A = Matrix.monomial(perm, [QmodZ(rng.randrange(6), 6) for _ in range(4)], 6)
        B = A + Matrix.identity(4, 6)
        if rank(B) == 4:
            assert (B @ inverse(B)).is_identity()


def test_singular_inverse_raises():
    with pytest.raises(ValueError):
        inverse(Matrix.zeros(2, 2, 3))


def test_span_membership_and_restriction():
    S = Span([{0: c(0), 1: c(0)}])
    assert S.contains({0: c(1), 1: c(1)})
    assert not S.contains({0: c(0)})
    swap = Matrix.monomial([1, 0, 2], [QmodZ(0)] * 3, 4)
    R = restrict(swap, S)
    assert R.nrows == 1 and R.trace() == c(0)
