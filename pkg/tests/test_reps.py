import random
from fractions import Fraction

import pytest

from thetagroups.errors import InvalidArgument, InvalidCharacter, InvalidModule, NotHomogeneous, SizeError
from thetagroups.linalg import Matrix
from thetagroups.reps import (
    DenseRep,
    GPrime,
    Heisenberg,
    all_irreps,
    build_irrep,
    character_norm,
    classify_irreps,
    count_irreps,
    decompose_weight_module,
    direct_sum,
    gprime_class_count,
    induce,
    induce_with_intertwiner,
    inner_product,
    is_irreducible,
    isomorphic,
    k1_weight_spaces,
    random_monomial,
    weight_data,
    weight_decompose,
)
from thetagroups.roots import QmodZ
from thetagroups.theta import coboundary, heisenberg_of_type, random_cochain, ThetaGroup

Q0 = QmodZ(0)


def labels(result):
    return sorted((iso.y, iso.chi, iso.multiplicity) for iso in result)


class TestHeisenberg:
    def test_group_law(self):
        H = Heisenberg((4,))
        g, h = (Q0, (1,), (0,)), (Q0, (0,), (1,))
        assert H.mul(g, h) == (QmodZ(1, 4), (1,), (1,))
        assert H.mul(h, g) == (Q0, (1,), (1,))
        for a in [(QmodZ(1, 3), (2,), (3,)), g, h]:
            assert H.mul(a, H.inv(a)) == H.identity()

    def test_from_theta_group(self):
        K = heisenberg_of_type((2,)).base
        G = ThetaGroup((heisenberg_of_type((2,)).cocycle + coboundary(K, random_cochain(K, random.Random(5)))).tabulate())
        H = Heisenberg.of(G)
        assert H.type == (2,)
        # the coordinate map is a homomorphism
        elems = [G.element(QmodZ(k, 2), u) for u in K.elements() for k in range(2)]
        for a in elems:
            for b in elems:
                assert H.to_standard(G.mul(a, b)) == H.mul(H.to_standard(a), H.to_standard(b))


class TestGPrime:
    @pytest.mark.parametrize("type_, order, classes", [((2,), 8, 5), ((3,), 27, 11), ((2, 2), 32, 17)])
    def test_class_count(self, type_, order, classes):
        Gp = GPrime(Heisenberg(type_))
        assert Gp.order == order
        assert gprime_class_count(type_) == Gp.class_formula() == classes

    def test_cap(self):
        with pytest.raises(SizeError):
            gprime_class_count((4, 4), cap=100)


class TestBuildIrrep:
    def test_type_2_weight_1(self):
        W = build_irrep((2,), 1, (0,))
        assert W.dim == 2
        assert W.action((Q0, (1,), (0,))) == ([0, 1], [Q0, QmodZ(1, 2)])
        assert W.action((Q0, (0,), (1,))) == ([1, 0], [Q0, Q0])
        W.check_homomorphism()

    def test_weight_zero_is_a_character(self):
        W = build_irrep((6,), 0, (5,))
        assert W.dim == 1
        for x in range(6):
            assert W.action((Q0, (x,), (0,)))[1] == [QmodZ(5 * x, 6)]

    def test_type_4_weight_2_basis(self):
        W = build_irrep((4,), 2, (0,))
        assert W.labels == [(0,), (2,)]
        pairs = [(g, h) for g in GPrime(W.heis).elements() for h in W.heis.generators()]
        W.check_homomorphism(pairs)

    def test_scalar_acts_by_weight(self):
        W = build_irrep((2, 4), 3, (1, 1))
        perm, phases = W.action((QmodZ(1, 4), (0, 0), (0, 0)))
        assert perm == list(range(W.dim)) and set(phases) == {QmodZ(3, 4)}

    def test_character_from_values(self):
        data = weight_data((4,), 2)
        chi = build_irrep((4,), 2, (0,), {(0,): "0", (2,): "1/2"}).chi
        assert chi.coeffs == (1,)
        with pytest.raises(InvalidCharacter):
            build_irrep((4,), 2, (0,), {(0,): "1/2", (2,): "1/2"})
        with pytest.raises(InvalidCharacter):
            build_irrep((4,), 2, (0,), (1, 1))
        assert data.kernel == ((0,), (2,))

    def test_bad_section(self):
        with pytest.raises(InvalidArgument):
            weight_data((4,), 2, {(0,): (0,), (2,): (2,)})

    def test_other_section_gives_isomorphic_module(self):
        rng = random.Random(2)
        data = weight_data((2, 4), 2)
        sec = data.random_section(rng)
        for y in [(0, 0), (1, 3)]:
            assert character_norm(build_irrep((2, 4), 2, y, (1, 0), sec)) == 1
            A = build_irrep((2, 4), 2, y, (1, 0))
            B = build_irrep((2, 4), 2, y, (1, 0), sec)
            assert inner_product(A, B) == 1

    def test_json(self):
        W = build_irrep((2,), 1, (0,))
        data = W.to_json()
        assert data["weight"] == 1 and data["basis"] == [[0], [1]]
        assert data["generators"]["w0"]["perm"] == [1, 0]


class TestCounting:
    @pytest.mark.parametrize("type_, n, want", [((2,), 1, (1, 2)), ((2, 4), 2, (16, 2)), ((6,), 3, (9, 2)),
                                                ((6,), 0, (36, 1))])
    def test_formula(self, type_, n, want):
        assert count_irreps(type_, n) == want
        c = classify_irreps(type_, n)
        assert (len(c.classes), c.dims) == (want[0], {want[1]})

    @pytest.mark.parametrize("type_", [(2,), (3,), (2, 2), (2, 4)])
    def test_weight_one_is_unique(self, type_):
        c = classify_irreps(type_, 1)
        d = 1
        for x in type_:
            d *= x
        assert len(c.classes) == 1 and c.dims == {d}


class TestIrreducibility:
    def test_norms(self):
        W = build_irrep((2,), 1, (0,))
        assert is_irreducible(W) and character_norm(W) == 1
        WW = direct_sum([W, W])
        assert not is_irreducible(WW) and character_norm(WW) == 4

    def test_distinct_labels(self):
        A, B = build_irrep((4,), 2, (0,)), build_irrep((4,), 2, (1,))
        V = direct_sum([A, B])
        assert not is_irreducible(V) and character_norm(V) == 2
        assert inner_product(A, B) == 0

    def test_mixed_weights_rejected(self):
        V = direct_sum([build_irrep((2,), 1, (0,)), build_irrep((2,), 0, (0,))])
        with pytest.raises(NotHomogeneous):
            is_irreducible(V)

    def test_isomorphism_criterion(self):
        a = build_irrep((4,), 2, (0,))
        assert isomorphic(a, build_irrep((4,), 2, (2,)))
        assert not isomorphic(a, build_irrep((4,), 2, (1,)))
        assert not isomorphic(a, build_irrep((4,), 2, (0,), (1,)))
        with pytest.raises(InvalidArgument):
            isomorphic(a, build_irrep((4,), 1, (0,)))

    def test_orthogonality_across_all_labels(self):
        reps = all_irreps((2, 2), 2)
        for A in reps:
            for B in reps:
                want = 1 if A.label_class() == B.label_class() else 0
                assert inner_product(A, B) == want


class TestDenseRep:
    def test_validation_catches_broken_relation(self):
        W = build_irrep((2,), 1, (0,)).to_dense()
        with pytest.raises(InvalidModule):
            DenseRep(W.heis, W.level, W.X, W.X, W.projectors)

    def test_validation_catches_non_laurent_scalars(self):
        W = build_irrep((2,), 1, (0,)).to_dense()
        P = Matrix.identity(2, W.level)
        with pytest.raises(InvalidModule):
            DenseRep(W.heis, W.level, W.X, W.Y, {0: P, 1: P})

    def test_matrix_matches_monomial_action(self):
        W = build_irrep((2, 4), 2, (1, 2), (1, 1))
        D = W.to_dense()
        for g in list(GPrime(W.heis).elements())[::7]:
            assert D.matrix(g) == W.matrix(g)
        D.check_homomorphism()

    def test_json_round_trip(self):
        D = direct_sum([build_irrep((3,), 1, (0,)), build_irrep((3,), 0, (2,))])
        D2 = DenseRep.from_json(D.to_json())
        assert D2.weights == [0, 1]
        for g in D.heis.generators():
            assert D2.matrix(g) == D.matrix(g)

    def test_conjugate_preserves_character(self):
        W = build_irrep((4,), 2, (1,)).to_dense()
        Q, Qi = random_monomial(W.dim, W.level, random.Random(0))
        assert inner_product(W.conjugate(Q, Qi), W) == 1


class TestWeights:
    def test_weight_decompose(self):
        W, T = build_irrep((2,), 1, (0,)), build_irrep((2,), 0, (0,))
        parts = weight_decompose(direct_sum([W, T]))
        assert sorted(parts) == [0, 1]
        assert parts[1].dim == 2 and parts[0].dim == 1
        assert list(weight_decompose(W.to_dense())) == [1]

    def test_mixed_sum_dimensions(self):
        reps = [build_irrep((2,), n, (0,)) for n in (0, 1, 2)] * 2
        parts = weight_decompose(direct_sum(reps))
        assert {n: V.dim for n, V in parts.items()} == {0: 2, 1: 4, 2: 2}

    def test_k1_weight_spaces(self):
        spaces = k1_weight_spaces(build_irrep((2,), 1, (0,)).to_dense())
        assert sorted(spaces) == [(0,), (1,)] and all(len(v) == 1 for v in spaces.values())
        assert sorted(k1_weight_spaces(build_irrep((4,), 2, (1,)).to_dense())) == [(1,), (3,)]
        assert sorted(k1_weight_spaces(build_irrep((3,), 0, (0,)).to_dense())) == [(0,)]


@pytest.mark.parametrize("method", ["weights", "averaging"])
class TestDecomposition:
    def test_irreducible_is_itself(self, method):
        W = build_irrep((2, 4), 2, (1, 1), (0, 1))
        assert labels(decompose_weight_module(W.to_dense(), method=method)) == [((1, 1), (0, 1), 1)]

    def test_conjugated_sum_collapses_equivalent_labels(self, method):
        V = direct_sum([build_irrep((4,), 2, (0,)), build_irrep((4,), 2, (2,))])
        Q, Qi = random_monomial(V.dim, V.level, random.Random(4))
        assert labels(decompose_weight_module(V.conjugate(Q, Qi), 2, method=method)) == [((0,), (0,), 2)]

    def test_sum_of_all_weight_one_irreps(self, method):
        V = direct_sum(all_irreps((2,), 1))
        assert labels(decompose_weight_module(V, method=method)) == [((0,), (), 2)]

    def test_rejects_wrong_weight(self, method):
        with pytest.raises(NotHomogeneous):
            decompose_weight_module(build_irrep((2,), 1, (0,)).to_dense(), 2, method=method)


class TestInduction:
    def test_type_2_weight_1(self):
        ind = induce_with_intertwiner((2,), 1, (0,))
        assert ind.rep.dim == 2
        assert inner_product(ind.rep, build_irrep((2,), 1, (0,))) == 1

    def test_weight_zero(self):
        assert induce((3,), 0, (1,)).dim == 1

    def test_type_4_weight_2(self):
        ind = induce_with_intertwiner((4,), 2, (1,), (1,))
        assert ind.rep.dim == 2
        for g in GPrime(ind.irrep.heis).elements():
            assert ind.intertwiner @ ind.rep.matrix(g) == ind.irrep.matrix(g) @ ind.intertwiner

    def test_norm_is_one(self):
        assert character_norm(induce((2, 4), 3, (1, 2))) == Fraction(1)
