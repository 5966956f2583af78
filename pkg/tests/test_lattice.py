import itertools
import random

import pytest

from toriclg import errors
from toriclg.lattice import (
    Cone,
    Fan,
    cone_index,
    fan_polytope,
    is_gorenstein_cone,
    is_smooth_cone,
    primitivize,
    star_subdivision_pieces,
    validate_subdivision,
)

from oracles import brute_gorenstein, laplace_det, qhull_vertices

P3_RAYS = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]
P3_CONES = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


def p3_fan():
    return Fan(3, P3_RAYS, P3_CONES)


class TestPrimitivize:
    def test_gcd_division(self):
        assert primitivize((2, 4, 6)) == ((1, 2, 3), 2)

    def test_identity(self):
        assert primitivize((1, 0, 0)) == ((1, 0, 0), 1)

    def test_zero_rejected(self):
        with pytest.raises(errors.DegenerateInput):
            primitivize((0, 0, 0))

    def test_idempotent(self):
        rng = random.Random(2)
        for _ in range(50):
            v = tuple(rng.randint(-9, 9) for _ in range(rng.randint(1, 5)))
            if all(x == 0 for x in v):
                continue
            p, _ = primitivize(v)
            assert primitivize(p) == (p, 1)


class TestConeIndex:
    def test_unimodular_basis(self):
        assert cone_index(Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])) == 1

    def test_half_point_cone(self):
        c = Cone([(1, 1, 0), (1, 0, 1), (0, 1, 1)])
        assert cone_index(c) == abs(laplace_det([list(g) for g in c.generators])) == 2

    def test_kawamata_chart_cone(self):
        c = Cone([(1, 1, 0), (1, 0, 1), (1, 1, 1)])
        assert cone_index(c) == 1
        assert is_smooth_cone(c)

    def test_non_simplicial_rejected(self):
        quad = Cone([(0, 1, 0), (0, 1, 1), (-1, 0, 0), (-1, 0, -1)])
        with pytest.raises(errors.NotSimplicial):
            cone_index(quad)
        with pytest.raises(errors.NotSimplicial):
            is_smooth_cone(quad)

    def test_smoothness(self):
        assert is_smooth_cone(Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
        assert not is_smooth_cone(Cone([(1, 1, 0), (1, 0, 1), (0, 1, 1)]))


class TestGorenstein:
    def test_smooth_cone(self):
        assert is_gorenstein_cone(Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))

    def test_half_point_cone_is_not(self):
        assert not is_gorenstein_cone(Cone([(1, 1, 0), (1, 0, 1), (0, 1, 1)]))

    def test_quadrilateral_cone(self):
        # m = (-1, 1, 0) evaluates to 1 on all four generators, so this
        # cone is Gorenstein (the independent box-search oracle agrees).
        gens = [(0, 1, 0), (0, 1, 1), (-1, 0, 0), (-1, 0, -1)]
        assert is_gorenstein_cone(Cone(gens))
        assert brute_gorenstein(gens)

    def test_against_brute_force(self):
        rng = random.Random(9)
        checked = 0
        while checked < 40:
            gens = [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(3)]
            try:
                cone = Cone(gens)
            except errors.ToricLGError:
                continue
            checked += 1
            assert is_gorenstein_cone(cone) == brute_gorenstein(cone.generators, box=6)


class TestStarSubdivide:
    def test_blowup_point_p3(self):
        bl = p3_fan().star_subdivide((0, 1, 2), (1, 1, 1))
        assert (1, 1, 1) in bl.rays
        got = {frozenset(bl.rays[i] for i in c) for c in bl.cones}
        want = {
            frozenset(s)
            for s in [
                [(1, 0, 0), (0, 1, 0), (1, 1, 1)],
                [(1, 0, 0), (0, 0, 1), (1, 1, 1)],
                [(0, 1, 0), (0, 0, 1), (1, 1, 1)],
                [(1, 0, 0), (0, 1, 0), (-1, -1, -1)],
                [(1, 0, 0), (0, 0, 1), (-1, -1, -1)],
                [(0, 1, 0), (0, 0, 1), (-1, -1, -1)],
            ]
        }
        assert got == want

    def test_half_point_cone_subdivides_into_listed_triples(self):
        pieces = star_subdivision_pieces(Cone([(1, 1, 0), (1, 0, 1), (0, 1, 1)]), (1, 1, 1))
        got = {c for c in pieces}
        want = {
            Cone([(1, 1, 0), (1, 0, 1), (1, 1, 1)]),
            Cone([(1, 1, 0), (0, 1, 1), (1, 1, 1)]),
            Cone([(1, 0, 1), (0, 1, 1), (1, 1, 1)]),
        }
        assert got == want

    def test_non_primitive_ray(self):
        with pytest.raises(errors.NonPrimitiveRay):
            p3_fan().star_subdivide((0, 1, 2), (2, 2, 2))

    def test_boundary_ray(self):
        with pytest.raises(errors.NotInterior):
            p3_fan().star_subdivide((0, 1, 2), (1, 1, 0))

    def test_preserves_support(self):
        rng = random.Random(21)
        for _ in range(15):
            cone = Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
            w = tuple(rng.randint(1, 4) for _ in range(3))
            w, _ = primitivize(w)
            pieces = star_subdivision_pieces(cone, w)
            assert validate_subdivision(cone, pieces).ok

    def test_order_independence_of_collinear_subdivisions(self):
        # rays along the diagonal line (r, r, 1): the refinement is
        # independent of insertion order
        rays = [(1, 1, 1), (2, 2, 1), (3, 3, 1)]
        outcomes = set()
        for perm in itertools.permutations(rays):
            fan = Fan(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], [(0, 1, 2)])
            for w in perm:
                fan = fan.subdivide_at_ray(w)
            outcomes.add(frozenset(frozenset(fan.rays[i] for i in c) for c in fan.cones))
        assert len(outcomes) == 1


class TestValidateSubdivision:
    def test_star_pieces_valid(self):
        parent = Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        pieces = star_subdivision_pieces(parent, (1, 2, 3))
        assert validate_subdivision(parent, pieces).ok

    def test_missing_piece_has_gap_witness(self):
        parent = Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        pieces = star_subdivision_pieces(parent, (1, 1, 1))
        rep = validate_subdivision(parent, pieces[:-1])
        assert not rep.ok
        message, witness = rep.failures[0]
        assert witness is not None
        assert parent.contains(witness)
        assert not any(p.contains(witness) for p in pieces[:-1])

    def test_overlapping_pieces_detected(self):
        parent = Cone([(1, 0), (0, 1)])
        pieces = [Cone([(1, 0), (1, 1)]), Cone([(1, 0), (0, 1)])]
        rep = validate_subdivision(parent, pieces)
        assert not rep.ok

    def test_non_simplicial_parent(self):
        # star subdivision of a cone over a quadrilateral: four pieces
        parent = Cone([(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)])
        pieces = star_subdivision_pieces(parent, (1, 1, 1))
        assert len(pieces) == 4
        assert validate_subdivision(parent, pieces).ok
        rep = validate_subdivision(parent, pieces[:-1])
        assert not rep.ok

    def test_listed_degeneration_stages(self):
        # the four-piece and three-piece stage subdivisions used by the
        # scripted pipeline validate against their stated parents
        from toriclg.verify import (
            STAGE1_PARENT,
            STAGE1_PIECES,
            STAGE2_PARENT,
            STAGE2_PIECES,
            STAGE3A_PARENT,
            STAGE3A_PIECES,
        )

        assert validate_subdivision(Cone(STAGE1_PARENT), [Cone(p) for p in STAGE1_PIECES]).ok
        assert validate_subdivision(Cone(STAGE2_PARENT), [Cone(p) for p in STAGE2_PIECES]).ok
        assert validate_subdivision(Cone(STAGE3A_PARENT), [Cone(p) for p in STAGE3A_PIECES]).ok
        # dropping a quadrilateral piece leaves a witnessed gap
        rep = validate_subdivision(Cone(STAGE2_PARENT), [Cone(p) for p in STAGE2_PIECES[:-1]])
        assert not rep.ok
        assert any(w is not None for _, w in rep.failures)

    def test_generator_outside_parent(self):
        parent = Cone([(1, 0), (0, 1)])
        rep = validate_subdivision(parent, [Cone([(1, 0), (-1, 1)])])
        assert not rep.ok
        assert rep.failures[0][1] == (-1, 1)

    def test_dim_mismatch(self):
        with pytest.raises(errors.DimMismatch):
            validate_subdivision(Cone([(1, 0), (0, 1)]), [Cone([(1, 0, 0)])])


class TestFanPolytope:
    def test_p3_simplex(self):
        vertices, others = p3_fan().fan_polytope()
        assert vertices == [(-1, -1, -1), (0, 0, 1), (0, 1, 0), (1, 0, 0)]
        assert others == []

    def test_blowup_has_five_vertices(self):
        bl = p3_fan().star_subdivide((0, 1, 2), (1, 1, 1))
        vertices, others = fan_polytope(bl)
        assert (1, 1, 1) in vertices and len(vertices) == 5
        assert vertices == qhull_vertices(bl.rays)

    def test_interior_ray_reported_separately(self):
        fan = Fan(
            3,
            [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1), (1, 1, 1), (1, 1, -1), (1, 1, 0)],
            [(0, 1, 4), (0, 1, 5), (6,)],
        )
        vertices, others = fan.fan_polytope()
        assert others == [(1, 1, 0)]

    def test_degenerate_rays(self):
        fan = Fan(3, [(1, 0, 0), (0, 1, 0)], [(0, 1)])
        with pytest.raises(errors.DegenerateInput):
            fan.fan_polytope()


class TestFan:
    def test_json_round_trip(self):
        fan = p3_fan()
        again = Fan.from_json(fan.to_json())
        assert again.rays == fan.rays and again.cones == fan.cones

    def test_load_rejects_non_primitive(self):
        with pytest.raises(errors.NonPrimitiveRay):
            Fan.from_json('{"dim": 2, "rays": [[2, 0], [0, 1]], "cones": [[0, 1]]}')

    def test_load_rejects_missing_field(self):
        with pytest.raises(errors.DegenerateInput):
            Fan.from_json('{"dim": 2, "rays": [[1, 0]]}')

    def test_validate_fan_accepts_genuine_fans(self):
        assert p3_fan().validate().ok
        bl = p3_fan().star_subdivide((0, 1, 2), (1, 1, 1))
        assert bl.validate().ok

    def test_validate_fan_rejects_overlap(self):
        bad = Fan(2, [(1, 0), (0, 1), (1, 1), (-1, 0)], [(0, 1), (2, 3)])
        rep = bad.validate()
        assert not rep.ok

    def test_cones_must_be_strongly_convex(self):
        with pytest.raises(errors.DegenerateInput):
            Fan(2, [(1, 0), (-1, 0)], [(0, 1)])

    def test_cone_index_lookup(self):
        fan = p3_fan()
        with pytest.raises(errors.DegenerateInput):
            fan.cone((0, 1))  # not listed
