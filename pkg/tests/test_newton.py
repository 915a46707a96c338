"""Newton polygon, lattice counts, and the triangle / face gates."""

import random

from jaccoord import (
    BiPoly,
    FaceForm,
    face_binomial_power,
    lattice_counts,
    newton_polygon,
    parse_poly,
    rat,
    triangle_face,
)
from jaccoord.newton import (
    ObstructionFaceNotBinomialPower,
    ObstructionPolygonNotTriangle,
    edge_faces,
)


def rand_polygon(rng, max_coord=8, npts=6):
    t = {}
    for _ in range(npts):
        t[(rng.randint(0, max_coord), rng.randint(0, max_coord))] = rat(1)
    return newton_polygon(BiPoly(t))


class TestPolygon:
    def test_triangle_example(self):
        N = newton_polygon(parse_poly("x^2*y + x"))
        assert N.dim == 2
        assert N.vertices == ((0, 0), (1, 0), (2, 1))

    def test_origin_always_included(self):
        # no constant term, origin still a vertex
        N = newton_polygon(parse_poly("x*y"))
        assert (0, 0) in N.vertices

    def test_segment(self):
        N = newton_polygon(parse_poly("x*y - 1"))
        assert N.dim == 1
        assert N.vertices == ((0, 0), (1, 1))

    def test_point(self):
        N = newton_polygon(parse_poly("7"))
        assert N.dim == 0
        assert N.vertices == ((0, 0),)

    def test_ccw_orientation(self):
        rng = random.Random(10)
        for _ in range(50):
            N = rand_polygon(rng)
            if N.dim < 2:
                continue
            v = N.vertices
            n = len(v)
            area2 = sum(
                v[k][0] * v[(k + 1) % n][1] - v[(k + 1) % n][0] * v[k][1]
                for k in range(n)
            )
            assert area2 > 0
            assert v[0] == (0, 0)


class TestLatticeCounts:
    def test_cusp_triangle(self):
        N = newton_polygon(parse_poly("y^2 - x^3"))
        assert lattice_counts(N) == (1, 6, 6)

    def test_small_triangle(self):
        N = newton_polygon(parse_poly("y + x^2"))
        assert lattice_counts(N) == (0, 4, 2)

    def test_segment_and_point(self):
        assert lattice_counts(newton_polygon(parse_poly("x*y - 1"))) == (0, 2, 0)
        assert lattice_counts(newton_polygon(parse_poly("5"))) == (0, 1, 0)

    def test_pick_identity(self):
        # 2A = 2I + B - 2; interior counted by enumeration, so this is a test
        rng = random.Random(11)
        checked = 0
        for _ in range(300):
            N = rand_polygon(rng)
            if N.dim != 2:
                continue
            interior, boundary, a2 = lattice_counts(N)
            assert a2 == 2 * interior + boundary - 2
            checked += 1
        assert checked >= 200

    def test_scaling(self):
        # doubling a triangle: area x4, structured boundary growth
        N1 = newton_polygon(parse_poly("y + x"))
        N2 = newton_polygon(parse_poly("y^2 + x^2"))
        _, b1, a1 = lattice_counts(N1)
        _, b2, a2 = lattice_counts(N2)
        assert a2 == 4 * a1
        assert b2 == 2 * b1


class TestTriangleGate:
    def test_coordinate_shape(self):
        tf = triangle_face(parse_poly("y + x^3"))
        assert tf.dx == 3 and tf.dy == 1
        assert tf.E == parse_poly("y + x^3")

    def test_missing_vertex(self):
        ob = triangle_face(parse_poly("x*y"))
        assert isinstance(ob, ObstructionPolygonNotTriangle)
        assert ob.missing_vertex is not None

    def test_point_above_hypotenuse(self):
        ob = triangle_face(parse_poly("x^2 + y + x^2*y"))
        assert isinstance(ob, ObstructionPolygonNotTriangle)
        assert ob.point == (2, 1)

    def test_missing_pure_power(self):
        ob = triangle_face(parse_poly("x + y + x*y^2"))
        assert isinstance(ob, ObstructionPolygonNotTriangle)

    def test_edge_collects_only_face_terms(self):
        tf = triangle_face(parse_poly("y^2 - x^3 + x + 1"))
        assert tf.E == parse_poly("y^2 - x^3")


class TestFaceGate:
    def test_binomial_cube(self):
        tf = triangle_face(parse_poly("(y - 2*x)^3 + x"))
        ff = face_binomial_power(tf)
        assert isinstance(ff, FaceForm)
        assert (ff.p, ff.q, ff.m) == (1, 1, 3)
        assert ff.C == rat(1) and ff.a == rat(2)

    def test_expand_round_trip(self):
        rng = random.Random(12)
        for _ in range(40):
            p, q = rng.choice([(1, 1), (1, 2), (2, 1), (2, 3), (3, 2), (3, 1)])
            m = rng.randint(1, 3)
            a = rat(rng.randint(1, 5), rng.randint(1, 3))
            C = rat(rng.choice([-3, -1, 1, 2]), 1)
            base = BiPoly({(0, q): rat(1), (p, 0): -a})
            E = base ** m * C
            tf = triangle_face(E + BiPoly.const(0) + BiPoly({(0, 0): rat(1)}))
            if isinstance(tf, ObstructionPolygonNotTriangle):
                continue
            ff = face_binomial_power(tf)
            assert isinstance(ff, FaceForm)
            assert ff.expand() == E

    def test_sum_of_cubes_fails(self):
        tf = triangle_face(parse_poly("x^3 + y^3"))
        ff = face_binomial_power(tf)
        assert isinstance(ff, ObstructionFaceNotBinomialPower)
        assert ff.k == 1

    def test_cusp_face_form(self):
        tf = triangle_face(parse_poly("y^2 - x^3"))
        ff = face_binomial_power(tf)
        assert isinstance(ff, FaceForm)
        assert (ff.p, ff.q, ff.m) == (3, 2, 1)


class TestEdgeFaces:
    def test_faces_cover_all_edges(self):
        P = parse_poly("y^2 - x^3 - 1")
        N = newton_polygon(P)
        faces = edge_faces(P, N)
        assert len(faces) == len(N.edges())
        for f in faces:
            assert f["e"].deg <= f["full_length"]

    def test_face_endpoint_coefficients(self):
        P = parse_poly("y^2 - x^2")
        N = newton_polygon(P)
        for f in edge_faces(P, N):
            if f["v0"] == (2, 0) and f["v1"] == (0, 2):
                assert f["full_length"] == 2
                assert f["e"].coeffs == (rat(-1), rat(0), rat(1))
