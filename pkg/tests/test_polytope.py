from fractions import Fraction

import pytest

from gcladder.ladder import (
    BOTTOM,
    DiagramFace,
    build_diagram,
    compositions_of,
    enumerate_faces,
)
from gcladder.polytope import (
    GCSystem,
    Spectrum,
    build_system,
    canonical_spectrum,
    face_counts_by_dim,
    face_lattice,
    phi,
    polytope_vertices,
    psi,
    representative_point,
    representative_strictness,
    verify_isomorphism,
)


def halved_spectrum(comp):
    """Second spectrum per composition: strictly decreasing half-integers."""
    values = []
    s = len(comp)
    for i, part in enumerate(comp, start=1):
        values.extend([Fraction(2 * (s - i) + 1, 2)] * part)
    return Spectrum(values)


class TestSpectrum:
    def test_parse(self):
        sp = Spectrum.parse("3/2,3/2,0")
        assert sp.values == (Fraction(3, 2), Fraction(3, 2), Fraction(0))
        assert sp.composition == (2, 1)

    def test_rejects_increase(self):
        with pytest.raises(ValueError):
            Spectrum((0, 1))

    def test_blocks(self):
        assert Spectrum((5, 5, 5)).composition == (3,)
        assert Spectrum((2, 1, 0)).composition == (1, 1, 1)

    def test_canonical(self):
        assert canonical_spectrum((1, 1, 1)).values == (2, 1, 0)
        assert canonical_spectrum((2, 1)).values == (2, 2, 1)


class TestSystem:
    def test_shape_210(self):
        sys = build_system(Spectrum((2, 1, 0)))
        assert sys.d == 3 and sys.num_constraints == 6

    def test_constraint_edges_align_with_diagram(self):
        sys = build_system(Spectrum((2, 1, 0)))
        diagram = build_diagram((1, 1, 1))
        for con in sys.constraints:
            assert diagram.edge_bit(*con.edge) != 0
        ups = [c for c in sys.constraints if c.kind == "up"]
        downs = [c for c in sys.constraints if c.kind == "down"]
        assert [c.edge[1] for c in ups] == sorted(c.edge[1] for c in ups)
        assert sys.constraints[: len(ups)] == tuple(ups)
        assert sys.constraints[len(ups) :] == tuple(downs)

    def test_point_polytope(self):
        sys = build_system(Spectrum((4, 4, 4)))
        verts = polytope_vertices(sys)
        assert len(verts) == 1
        assert all(v == 4 for v in verts[0])

    def test_triangle(self):
        sys = build_system(Spectrum((1, 1, 0)))
        assert len(polytope_vertices(sys)) == 3
        counts = face_counts_by_dim(face_lattice(sys))
        assert counts == {0: 3, 1: 3, 2: 1}

    def test_oracle_bound(self):
        sys = build_system(canonical_spectrum((1, 1, 1, 1, 1)))
        with pytest.raises(ValueError, match="capped"):
            face_lattice(sys)


class TestLattice:
    def test_210_counts(self):
        sys = build_system(Spectrum((2, 1, 0)))
        counts = face_counts_by_dim(face_lattice(sys))
        assert counts == {0: 7, 1: 11, 2: 6, 3: 1}

    def test_empty_face_present(self):
        sys = build_system(Spectrum((2, 1, 0)))
        empties = [f for f in face_lattice(sys) if f.is_empty]
        assert len(empties) == 1 and empties[0].dim == -1

    def test_single_point(self):
        sys = build_system(Spectrum((3, 3)))
        faces = face_lattice(sys)
        assert face_counts_by_dim(faces) == {0: 1}
        assert len(faces) == 2  # vertex and empty face

    def test_representative_in_relative_interior(self):
        sys = build_system(Spectrum((2, 1, 0)))
        for face in face_lattice(sys):
            if face.is_empty:
                assert face.representative() is None
                continue
            point = face.representative()
            for idx, con in enumerate(sys.constraints):
                val = con.value_at(point)
                assert val >= 0
                if face.tight_mask >> idx & 1:
                    assert val == 0
                else:
                    # interior point is strict on every non-tight constraint
                    assert val > 0


class TestPhiPsi:
    def test_top_maps_to_top(self):
        sys = build_system(Spectrum((2, 1, 0)))
        top = max(face_lattice(sys), key=lambda f: f.dim)
        image = phi(sys, top)
        assert image.is_full()

    def test_empty_maps_to_bottom(self):
        sys = build_system(Spectrum((2, 1, 0)))
        empty = next(f for f in face_lattice(sys) if f.is_empty)
        assert phi(sys, empty) is BOTTOM

    def test_vertices_map_to_vertex_faces(self):
        sys = build_system(Spectrum((2, 1, 0)))
        vertex_faces = [f for f in face_lattice(sys) if f.dim == 0]
        images = {phi(sys, f).mask for f in vertex_faces}
        diagram = build_diagram((1, 1, 1))
        zero_dim = {f.mask for f in enumerate_faces(diagram) if f.dim == 0}
        assert images == zero_dim

    def test_point_spectrum_full_face(self):
        sys = build_system(Spectrum((4, 4, 4)))
        top = max(face_lattice(sys), key=lambda f: f.dim)
        image = phi(sys, top)
        assert image.diagram.composition == (3,)
        assert image.is_full()

    def test_round_trips_210(self):
        sys = build_system(Spectrum((2, 1, 0)))
        diagram = build_diagram((1, 1, 1))
        for face in face_lattice(sys):
            if face.is_empty:
                continue
            assert psi(diagram, phi(sys, face), sys) == face
        for gamma in enumerate_faces(diagram):
            assert phi(sys, psi(diagram, gamma, sys)).mask == gamma.mask

    def test_psi_rejects_mismatched_composition(self):
        diagram = build_diagram((1, 1, 1))
        face = enumerate_faces(diagram)[0]
        with pytest.raises(ValueError, match="composition"):
            psi(diagram, face, GCSystem(Spectrum((1, 1, 0))))


class TestRepresentativePoint:
    def test_half_integer_average(self):
        d = build_diagram((1, 1))
        full = DiagramFace(d, d.full_mask)
        pt = representative_point(full, Spectrum((1, 0)))
        assert pt[(1, 1)] == Fraction(1, 2)

    def test_tree_faces_take_boundary_values(self):
        d = build_diagram((1, 1, 1))
        sp = Spectrum((2, 1, 0))
        for face in enumerate_faces(d):
            if face.dim != 0:
                continue
            pt = representative_point(face, sp)
            for (i, j), val in pt.items():
                if i + j <= sp.n:
                    assert val in sp.values

    def test_full_face_all_strict(self):
        d = build_diagram((1, 1, 1))
        full = DiagramFace(d, d.full_mask)
        sp = Spectrum((2, 1, 0))
        pt = representative_point(full, sp)
        ordered = [pt[(1, 1)], pt[(1, 2)], pt[(2, 1)]]
        assert len(set(ordered)) == 3
        assert representative_strictness(full, sp) == []

    @pytest.mark.parametrize("comp", [(1, 1), (2, 1), (1, 1, 1), (2, 2)])
    def test_strictness_iff_edges(self, comp):
        sp = canonical_spectrum(comp)
        for face in enumerate_faces(build_diagram(comp)):
            assert representative_strictness(face, sp) == []

    def test_integral_spectrum_gives_dyadic_coordinates(self):
        # repeated halving of integer boundary values
        for comp in [(1, 1), (1, 1, 1), (2, 2)]:
            sp = canonical_spectrum(comp)
            for face in enumerate_faces(build_diagram(comp)):
                for value in representative_point(face, sp).values():
                    q = value.denominator
                    assert q & (q - 1) == 0

    def test_representative_lies_in_psi_face(self):
        comp = (1, 1, 1)
        sp = Spectrum((2, 1, 0))
        sys = GCSystem(sp)
        diagram = build_diagram(comp)
        for gamma in enumerate_faces(diagram):
            values = representative_point(gamma, sp)
            point = tuple(values[p] for p in sys.index_set)
            target = psi(diagram, gamma, sys)
            for idx, con in enumerate(sys.constraints):
                val = con.value_at(point)
                assert val >= 0
                if target.tight_mask >> idx & 1:
                    assert val == 0


class TestIsomorphism:
    def test_210(self):
        report = verify_isomorphism(Spectrum((2, 1, 0)))
        assert report.passed and report.face_count == 25
        assert report.diagram_counts == ((0, 7), (1, 11), (2, 6), (3, 1))

    def test_triangle(self):
        report = verify_isomorphism(Spectrum((1, 1, 0)))
        assert report.passed and report.face_count == 7

    def test_point(self):
        report = verify_isomorphism(Spectrum((2, 2, 2)))
        assert report.passed and report.face_count == 1

    def test_dimension_formula(self):
        for comp in [(1, 1), (2, 1), (1, 1, 1), (2, 2)]:
            sp = canonical_spectrum(comp)
            sys = build_system(sp)
            top = max(f.dim for f in face_lattice(sys))
            n = sp.n
            assert top == (n * n - sum(p * p for p in comp)) // 2

    def test_lattice_depends_only_on_composition(self):
        for comp in [(1, 1, 1), (2, 1), (2, 2)]:
            first = build_system(canonical_spectrum(comp))
            second = build_system(halved_spectrum(comp))
            image_first = {
                (phi(first, f).mask, f.dim)
                for f in face_lattice(first)
                if not f.is_empty
            }
            image_second = {
                (phi(second, f).mask, f.dim)
                for f in face_lattice(second)
                if not f.is_empty
            }
            assert image_first == image_second

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_all_compositions_small(self, n):
        for comp in compositions_of(n):
            report = verify_isomorphism(canonical_spectrum(comp))
            assert report.passed, report.summary()
