from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetagroups.errors import InvalidArgument
from thetagroups.roots import CycNumber, QmodZ, cyc_inner_step, nth_root, qmz_add

fractions = st.builds(QmodZ, st.integers(-200, 200), st.integers(1, 60))


def z(k, n):
    return CycNumber.root(k, n)


class TestQmodZ:
    def test_normalizes_to_reduced_representative(self):
        q = QmodZ(-3, 6)
        assert (q.num, q.den) == (1, 2)
        assert QmodZ(6, 3) == QmodZ(0)
        assert (QmodZ(0, 7).num, QmodZ(0, 7).den) == (0, 1)

    @pytest.mark.parametrize("a, b, want", [
        (QmodZ(1, 4), QmodZ(1, 4), QmodZ(1, 2)),
        (QmodZ(1, 2), QmodZ(1, 2), QmodZ(0)),
        (QmodZ(1, 6), QmodZ(1, 10), QmodZ(4, 15)),
    ])
    def test_add(self, a, b, want):
        assert qmz_add(a, b) == want

    def test_parse_and_str(self):
        assert QmodZ.parse("3/4") == QmodZ(3, 4)
        assert QmodZ.parse("-1/4") == QmodZ(3, 4)
        assert str(QmodZ(5, 4)) == "1/4"
        assert str(QmodZ(2)) == "0"

    def test_order(self):
        assert QmodZ(2, 6).order == 3
        assert QmodZ(0).order == 1

    def test_accepts_fractions(self):
        assert QmodZ(Fraction(7, 3)) == QmodZ(1, 3)

    @pytest.mark.parametrize("x, n, want", [
        (QmodZ(1, 2), 2, QmodZ(1, 4)),
        (QmodZ(0), 5, QmodZ(0)),
        (QmodZ(2, 3), 3, QmodZ(2, 9)),
    ])
    def test_nth_root(self, x, n, want):
        assert nth_root(x, n) == want

    def test_nth_root_rejects_zero(self):
        with pytest.raises(InvalidArgument):
            nth_root(QmodZ(1, 2), 0)

    @given(fractions, fractions, fractions)
    def test_group_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a + QmodZ(0) == a
        assert a + (-a) == QmodZ(0)

    @given(fractions, st.integers(1, 20))
    def test_nth_root_is_right_inverse(self, x, n):
        assert nth_root(x, n) * n == x


class TestCycNumber:
    @pytest.mark.parametrize("acc, a, b, want", [
        (CycNumber.zero(3), z(1, 3), z(1, 3), CycNumber.one(3)),
        (CycNumber.zero(4), CycNumber.one(4) + z(1, 4), CycNumber.one(4) + z(1, 4), CycNumber.rational(2, 4)),
    ])
    def test_inner_step(self, acc, a, b, want):
        assert cyc_inner_step(acc, a, b) == want

    def test_cube_roots_sum_to_zero(self):
        assert (CycNumber.one(3) + z(1, 3) + z(2, 3)).is_zero()

    def test_i_squared(self):
        assert z(1, 4) * z(1, 4) == CycNumber.rational(-1, 4)

    def test_embedding_of_qmodz(self):
        assert CycNumber.from_qmodz(QmodZ(1, 2), 12) == z(6, 12)
        with pytest.raises(InvalidArgument):
            CycNumber.from_qmodz(QmodZ(1, 5), 12)

    def test_from_roots(self):
        total = CycNumber.from_roots([QmodZ(k, 5) for k in range(5)], 5)
        assert total.is_zero()

    def test_relevel_preserves_value(self):
        w = z(1, 3) + CycNumber.rational(Fraction(1, 2), 3)
        assert w.relevel(12) == z(4, 12) + CycNumber.rational(Fraction(1, 2), 12)

    def test_inverse_and_division(self):
        w = CycNumber.one(5) + z(1, 5)
        assert w * w.inverse() == CycNumber.one(5)
        assert (z(2, 5) / w) * w == z(2, 5)

    def test_conjugate_is_galois_minus_one(self):
        w = z(1, 8) + z(3, 8)
        assert w.conjugate() == w.galois(-1)
        assert (w * w.conjugate()).is_rational()

    def test_json_round_trip(self):
        w = z(1, 7) - CycNumber.rational(Fraction(2, 3), 7)
        assert CycNumber.from_json(w.to_json()) == w

    @given(st.integers(1, 60), st.data())
    def test_ring_axioms(self, level, data):
        roots = st.builds(lambda k, c: z(k, level) * CycNumber.rational(c, level),
                          st.integers(0, level - 1), st.integers(-3, 3))
        elems = st.lists(roots, min_size=1, max_size=3).map(lambda xs: sum(xs[1:], xs[0]))
        a, b, c = data.draw(elems), data.draw(elems), data.draw(elems)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(st.integers(1, 60), st.data())
    def test_embedding_turns_addition_into_multiplication(self, level, data):
        p = st.builds(QmodZ, st.integers(0, level - 1), st.just(level))
        a, b = data.draw(p), data.draw(p)
        emb = CycNumber.from_qmodz
        assert emb(a + b, level) == emb(a, level) * emb(b, level)

    @given(st.lists(st.integers(0, 11), min_size=1, max_size=6))
    def test_character_norm_is_sum_of_squared_multiplicities(self, ks):
        # the representation of Z/12 sending 1 to diag(zeta^k for k in ks)
        chars = [CycNumber.from_roots([QmodZ(k * j, 12) for k in ks], 12) for j in range(12)]
        acc = CycNumber.zero(12)
        for c in chars:
            acc = cyc_inner_step(acc, c, c)
        assert acc.is_rational()
        norm = acc.as_rational() / 12
        assert norm == sum(ks.count(k) ** 2 for k in set(ks))
