import random
from fractions import Fraction
from math import gcd

import pytest

from toriclg import errors
from toriclg.lattice import Cone, cone_index
from toriclg.linalg import mat_mul
from toriclg.quotsing import (
    CyclicQuotient,
    HypersurfaceTerminalType,
    QuotientDecomposition,
    age,
    classify,
    element_class_in_cone,
    kawamata_type,
    quotient_from_cone,
)


class TestAge:
    def test_half_point(self):
        assert age(CyclicQuotient(2, (1, 1, 1)), 1) == Fraction(3, 2)

    def test_third_point_both_elements(self):
        q = CyclicQuotient(3, (1, 1, 2))
        assert age(q, 1) == Fraction(4, 3)
        assert age(q, 2) == Fraction(5, 3)

    def test_surface_du_val(self):
        assert age(CyclicQuotient(2, (1, 1)), 1) == 1

    def test_identity_rejected(self):
        with pytest.raises(errors.IdentityElement):
            age(CyclicQuotient(4, (1, 3)), 0)
        with pytest.raises(errors.IdentityElement):
            age(CyclicQuotient(4, (1, 3)), 4)

    def test_root_choice_must_be_coprime(self):
        with pytest.raises(errors.InvalidParameters):
            age(CyclicQuotient(4, (1, 1)), 1, u=2)

    def test_pairing_sums_to_coordinate_count(self):
        # age(g) + age(g^-1) = k whenever every weight is coprime to n
        for n in range(2, 51):
            weights = tuple(w for w in (1, n - 1, (n + 1) // 2, 3) if gcd(w, n) == 1)[:4]
            if len(weights) < 2:
                continue
            q = CyclicQuotient(n, weights)
            for j in range(1, n):
                assert age(q, j) + age(q, n - j) == len(weights)


class TestClassify:
    def test_terminal_third_point(self):
        cls = classify(CyclicQuotient(3, (1, 1, 2)))
        assert cls.is_terminal and cls.is_canonical and not cls.is_gorenstein

    def test_du_val_surface_point(self):
        cls = classify(CyclicQuotient(2, (1, 1)))
        assert not cls.is_terminal
        assert cls.is_canonical
        assert cls.is_gorenstein
        assert cls.min_age == 1

    def test_half_point(self):
        cls = classify(CyclicQuotient(2, (1, 1, 1)))
        assert cls.is_terminal
        assert not cls.is_gorenstein  # weight sum 3 is odd

    def test_smooth(self):
        cls = classify(CyclicQuotient(1, ()))
        assert cls.is_smooth and cls.min_age is None

    def test_terminal_implies_canonical(self):
        rng = random.Random(4)
        for _ in range(60):
            n = rng.randint(2, 12)
            weights = tuple(rng.randint(0, n - 1) for _ in range(3))
            try:
                cls = classify(CyclicQuotient(n, weights))
            except errors.NonSmallGroup:
                continue
            if cls.is_terminal:
                assert cls.is_canonical

    def test_quasi_reflection_rejected(self):
        with pytest.raises(errors.NonSmallGroup):
            classify(CyclicQuotient(2, (1, 0, 0)))
        with pytest.raises(errors.NonSmallGroup):
            classify(CyclicQuotient(3, (2,)))

    def test_gorenstein_matches_determinant(self):
        # weight-sum test vs explicit determinant (sum of all weights mod n)
        # on every element of the cyclic group
        rng = random.Random(8)
        for _ in range(40):
            n = rng.randint(2, 10)
            weights = tuple(rng.randint(0, n - 1) for _ in range(4))
            q = CyclicQuotient(n, weights)
            try:
                cls = classify(q)
            except errors.NonSmallGroup:
                continue
            in_sl = all(sum(j * w for w in weights) % n == 0 for j in range(1, n))
            assert cls.is_gorenstein == in_sl

    def test_product_group_not_factorwise(self):
        dec = QuotientDecomposition(
            (CyclicQuotient(2, (1, 1, 0)), CyclicQuotient(2, (0, 1, 1)))
        )
        cls = classify(dec)
        # the element acting by (1,0,1) has age 1: canonical, not terminal
        assert not cls.is_terminal
        assert cls.is_canonical


class TestQuotientFromCone:
    def test_half_point_cone(self):
        dec = quotient_from_cone(Cone([(1, 1, 0), (1, 0, 1), (0, 1, 1)]))
        assert dec.factors == (CyclicQuotient(2, (1, 1, 1)),)
        assert classify(dec).is_terminal

    def test_smooth_cone(self):
        dec = quotient_from_cone(Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
        assert dec.is_trivial

    def test_weighted_blowup_y_chart(self):
        # y-chart of the (1,2,3,1) blow-up of the 4-space family:
        # quotient 1/2(1,-1,3,1), i.e. 1/2(1,1,1,1)
        cone = Cone([(1, 0, 0, 0), (1, 2, 3, 1), (0, 0, 1, 0), (0, 0, 0, 1)])
        dec = quotient_from_cone(cone)
        assert dec.factors == (CyclicQuotient(2, (1, -1, 3, 1)),)
        assert dec.factors[0].weights == (1, 1, 1, 1)

    def test_total_order_equals_cone_index(self):
        rng = random.Random(13)
        checked = 0
        while checked < 50:
            gens = [tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(3)]
            try:
                cone = Cone(gens)
                if not (cone.is_simplicial and cone.is_full_dimensional):
                    continue
                dec = quotient_from_cone(cone)
            except errors.ToricLGError:
                continue
            checked += 1
            assert dec.total_order == cone_index(cone)

    def test_non_simplicial_rejected(self):
        with pytest.raises(errors.NotSimplicial):
            quotient_from_cone(Cone([(0, 1, 0), (0, 1, 1), (-1, 0, 0), (-1, 0, -1)]))

    def test_gl_invariance_of_classification(self):
        rng = random.Random(17)

        def random_unimodular(n):
            m = [[int(i == j) for j in range(n)] for i in range(n)]
            for _ in range(6):
                i, j = rng.sample(range(n), 2)
                q = rng.randint(-2, 2)
                for col in range(n):
                    m[i][col] += q * m[j][col]
            return m

        base = Cone([(1, 1, 0), (1, 0, 1), (0, 1, 1)])
        ref = classify(quotient_from_cone(base))
        for _ in range(25):
            u = random_unimodular(3)
            gens = mat_mul([list(g) for g in base.generators], u)
            cls = classify(quotient_from_cone(Cone(gens)))
            assert (cls.is_terminal, cls.is_canonical, cls.is_gorenstein, cls.min_age) == (
                ref.is_terminal,
                ref.is_canonical,
                ref.is_gorenstein,
                ref.min_age,
            )


class TestKawamataType:
    def test_examples(self):
        assert kawamata_type(3, 1) == CyclicQuotient(3, (1, 2, 1))
        assert kawamata_type(2, 1) == CyclicQuotient(2, (1, 1, 1))

    def test_invalid(self):
        with pytest.raises(errors.InvalidParameters):
            kawamata_type(4, 2)
        with pytest.raises(errors.InvalidParameters):
            kawamata_type(3, 0)

    def test_always_terminal_up_to_50(self):
        for n in range(2, 51):
            for s in range(1, n):
                if gcd(s, n) == 1:
                    assert classify(kawamata_type(n, s)).is_terminal


class TestTextForm:
    def test_parse_reduces_negative_residues(self):
        assert CyclicQuotient.parse("1/2(1,-1,3,1)") == CyclicQuotient(2, (1, 1, 1, 1))

    def test_round_trip(self):
        q = CyclicQuotient(5, (1, 2, 3))
        assert CyclicQuotient.parse(str(q)) == q

    def test_garbage_rejected(self):
        with pytest.raises(errors.ParseError):
            CyclicQuotient.parse("2/3(1)")

    def test_normal_form_sorts(self):
        q = CyclicQuotient(7, (5, 1, 3))
        assert q.normal_form.weights == (1, 3, 5)


class TestElementClass:
    def test_half_point_generator(self):
        order, weights = element_class_in_cone(Cone([(1, 1, 0), (1, 0, 1), (0, 1, 1)]), (1, 0, 0))
        assert order == 2 and weights == (1, 1, 1)

    def test_lattice_element_is_trivial(self):
        order, weights = element_class_in_cone(Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)]), (2, 5, -1))
        assert order == 1


def test_type_tags_are_metadata():
    assert HypersurfaceTerminalType("cAx/4").is_ordinary is False
    ordinary = [t for t in HypersurfaceTerminalType if t.is_ordinary]
    assert len(ordinary) == len(HypersurfaceTerminalType) - 1
