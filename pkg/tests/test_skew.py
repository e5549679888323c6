import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetagroups.abelian import FinAbGroup, span
from thetagroups.errors import DegenerateForm, InvalidForm
from thetagroups.roots import QmodZ
from thetagroups.skew import (
    SkewForm,
    all_maximal_isotropic,
    form_type,
    is_maximal_isotropic,
    is_nondegenerate,
    maximal_isotropic,
    quotient_by_radical,
    radical,
    radical_by_enumeration,
    random_nondegenerate_form,
    reconstruction_check,
    standard_form,
    symplectic_decompose,
    zero_form,
)

HYP2 = standard_form((2,))
B24 = SkewForm(FinAbGroup((2, 4)), [["0", "1/2"], ["1/2", "0"]])
Z3 = SkewForm(FinAbGroup((3, 3)), [["0", "1/3"], ["2/3", "0"]])


class TestSkewForm:
    def test_eval(self):
        assert HYP2.eval((1, 0), (0, 1)) == QmodZ(1, 2)
        assert B24.eval((1, 1), (1, 2)) == QmodZ(1, 2)
        assert B24.eval((1, 3), (0, 0)) == QmodZ(0)

    def test_rejects_non_alternating(self):
        with pytest.raises(InvalidForm):
            SkewForm(FinAbGroup((2, 2)), [["1/2", "0"], ["0", "0"]])
        with pytest.raises(InvalidForm):
            SkewForm(FinAbGroup((3, 3)), [["0", "1/3"], ["1/3", "0"]])

    def test_rejects_entry_of_wrong_order(self):
        with pytest.raises(InvalidForm):
            SkewForm(FinAbGroup((2, 4)), [["0", "1/4"], ["3/4", "0"]])

    def test_json_round_trip_and_upper_triangle(self):
        data = {"divisors": [4, 4], "gram": [["0", "1/4"], ["0", "0"]]}
        form = SkewForm.from_json(data)
        assert form.eval((0, 1), (1, 0)) == QmodZ(3, 4)
        assert SkewForm.from_json(form.to_json()) == form


class TestRadical:
    @pytest.mark.parametrize("form, want", [
        (zero_form(FinAbGroup((2, 2))), [(0, 0), (1, 0), (0, 1), (1, 1)]),
        (HYP2, [(0, 0)]),
        (B24, [(0, 0), (0, 2)]),
    ])
    def test_examples(self, form, want):
        assert sorted(radical(form)) == sorted(want)
        assert sorted(radical_by_enumeration(form)) == sorted(want)

    def test_quotient_by_radical_is_nondegenerate(self):
        qform, sq = quotient_by_radical(B24)
        assert qform.base.order == 4 and is_nondegenerate(qform)
        assert form_type(qform) == (2,)


class TestDecompose:
    def test_hyperbolic_plane(self):
        dec = symplectic_decompose(HYP2)
        assert dec.type == (2,)
        assert dec.k1_gens == [(1, 0)] and dec.k2_gens == [(0, 1)]

    def test_block_sum_has_type_2_4(self):
        form = SkewForm(FinAbGroup((2, 2, 4, 4)),
                        [["0", "1/2", "0", "0"], ["1/2", "0", "0", "0"],
                         ["0", "0", "0", "1/4"], ["0", "0", "3/4", "0"]])
        dec = symplectic_decompose(form)
        assert dec.type == (2, 4)
        dec.verify()
        assert reconstruction_check(dec)

    def test_z3_squared(self):
        dec = symplectic_decompose(Z3)
        assert dec.type == (3,)
        assert Z3.eval(dec.k1_gens[0], dec.k2_gens[0]) == QmodZ(1, 3)

    def test_degenerate_raises_with_radical(self):
        with pytest.raises(DegenerateForm) as info:
            symplectic_decompose(B24)
        assert sorted(info.value.radical) == [(0, 0), (0, 2)]

    def test_degenerate_allowed_modulo_radical(self):
        dec = symplectic_decompose(B24, quotient_radical=True)
        assert dec.type == (2,)

    def test_mixed_type_from_non_standard_presentation(self):
        # Z/6 x Z/6 with [e1, e2] = 1/6 has type (6)
        form = SkewForm(FinAbGroup((6, 6)), [["0", "1/6"], ["5/6", "0"]])
        assert form_type(form) == (6,)

    @given(st.integers(0, 10_000))
    def test_random_forms_reconstruct(self, seed):
        form = random_nondegenerate_form(random.Random(seed), max_order=1024)
        dec = symplectic_decompose(form)
        dec.verify()
        assert reconstruction_check(dec)
        n = 1
        for d in dec.type:
            n *= d
        assert n * n == form.base.order


class TestMaximalIsotropic:
    def test_hyperbolic_plane(self):
        H = maximal_isotropic(HYP2)
        assert sorted(H) == [(0, 0), (1, 0)]
        assert len(H) ** 2 == 4

    def test_type_2_4(self):
        form = standard_form((2, 4))
        H = maximal_isotropic(form)
        assert len(H) == 8 and is_maximal_isotropic(form, H)

    def test_z3_every_line(self):
        Hs = all_maximal_isotropic(Z3)
        assert len(Hs) == 4  # the four lines of F_3^2
        assert all(len(H) == 3 for H in Hs)

    def test_degenerate_requires_flag(self):
        with pytest.raises(DegenerateForm):
            maximal_isotropic(B24)
        H = maximal_isotropic(B24, allow_degenerate=True)
        assert is_maximal_isotropic(B24, H)

    def test_non_isotropic_is_not_maximal(self):
        assert not is_maximal_isotropic(HYP2, span(HYP2.base, [(1, 0), (0, 1)]))

    @pytest.mark.parametrize("type_", [(2,), (4,), (2, 2), (2, 4), (3, 3)])
    def test_order_law_exhaustive(self, type_):
        form = standard_form(type_)
        for H in all_maximal_isotropic(form):
            assert len(H) ** 2 == form.base.order
