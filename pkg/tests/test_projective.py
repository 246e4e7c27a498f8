"""Exact projective geometry: points, determinants, frames, shears, snaps."""

from fractions import Fraction

import pytest

from projbraid.projective import (
    Configuration,
    DegenerateFrameError,
    ProjectivePoint,
    ProjectiveTransform,
    base_configuration,
    det,
    det_subset,
    general_position_violation,
    is_general_position,
    shear_family,
    sign_snap_geodesic,
    sign_string_of,
    singular_subsets,
    standardize_frame,
)
from projbraid.words import GroupParams

F = Fraction
P43 = GroupParams(4, 3)
P54 = GroupParams(5, 4)


def pt(*coords) -> ProjectivePoint:
    return ProjectivePoint(tuple(F(c) for c in coords))


def config43(*rows) -> Configuration:
    return Configuration(P43, tuple(pt(*row) for row in rows))


E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


class TestPoints:
    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            pt(0, 0, 0)

    def test_canonical_scales_last_nonzero_to_one(self):
        assert pt(2, 4, -2).canonical().coords == (F(-1), F(-2), F(1))
        assert pt(3, 0, 0).canonical().coords == (F(1), F(0), F(0))

    def test_same_point_ignores_scale(self):
        assert pt(1, 2, 3).same_point(pt(-2, -4, -6))
        assert not pt(1, 2, 3).same_point(pt(1, 2, 4))

    def test_ratio_to(self):
        assert pt(-2, -4, -6).ratio_to(pt(1, 2, 3)) == F(-2)
        assert pt(1, 0, 0).ratio_to(pt(0, 1, 0)) is None
        assert pt(2, 0, 4).ratio_to(pt(1, 0, 2)) == F(2)


class TestDeterminants:
    def test_det(self):
        rows = ((F(2), F(0), F(1)), (F(1), F(1), F(0)), (F(0), F(3), F(1)))
        assert det(rows) == F(5)
        assert det(((F(1), F(2)), (F(2), F(4)))) == 0

    def test_det_subset_on_base(self):
        base = base_configuration(P43, (1, 1))
        assert det_subset(base, (1, 2, 3)) == 1
        assert det_subset(base, (1, 2, 4)) == 1
        assert det_subset(base, (1, 3, 4)) == -1
        assert det_subset(base, (2, 3, 4)) == 1
        assert singular_subsets(base) == []

    def test_det_subset_sees_stored_representatives(self):
        doubled = config43(E1, E2, E3, (2, 2, 2))
        assert det_subset(doubled, (1, 2, 4)) == 2

    def test_transform_covariance(self):
        config = config43(E1, E2, (1, 2, 3), (1, 1, 1))
        t = ProjectiveTransform(((F(1), F(2), F(0)), (F(0), F(1), F(1)), (F(1), F(0), F(3))))
        moved = t.apply_to_configuration(config)
        scale = t.determinant()
        for subset in ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)):
            assert det_subset(moved, subset) == scale * det_subset(config, subset)

    def test_subset_validation(self):
        base = base_configuration(P43, (1, 1))
        with pytest.raises(ValueError):
            det_subset(base, (1, 2))
        with pytest.raises(ValueError):
            det_subset(base, (2, 1, 3))
        with pytest.raises(ValueError):
            det_subset(base, (1, 2, 5))


class TestGeneralPosition:
    def test_repeated_direction_detected(self):
        config = config43(E1, E2, (2, 0, 0), (1, 1, 1))
        assert general_position_violation(config) == (1, 3)
        assert not is_general_position(config)

    def test_base_is_general(self):
        assert is_general_position(base_configuration(P43, (-1, 1)))

    def test_coplanar_triple_at_k4(self):
        points = tuple(
            pt(*row)
            for row in ((1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 1))
        )
        config = Configuration(P54, points)
        assert general_position_violation(config) == (1, 2, 3)


class TestTransforms:
    def test_singular_matrix_rejected(self):
        with pytest.raises(ValueError):
            ProjectiveTransform(((F(1), F(2)), (F(2), F(4))))

    def test_inverse_roundtrip(self):
        t = ProjectiveTransform(((F(2), F(1), F(0)), (F(0), F(1), F(0)), (F(1), F(0), F(1))))
        p = pt(3, -1, 2)
        assert t.inverse().apply(t.apply(p)).coords == p.coords

    def test_apply_is_linear_on_representatives(self):
        t = ProjectiveTransform(((F(0), F(1), F(0)), (F(1), F(0), F(0)), (F(0), F(0), F(1))))
        assert t.apply(pt(1, 2, 3)).coords == (F(2), F(1), F(3))


class TestStandardizeFrame:
    def test_maps_frame_to_reference(self):
        frame = (pt(*E1), pt(*E2), pt(*E3), pt(2, 1, 1))
        t = standardize_frame(frame)
        assert t.apply(frame[3]).coords == (F(1), F(1), F(1))
        for i, p in enumerate(frame[:3]):
            image = t.apply(p).canonical().coords
            assert image == tuple(F(int(j == i)) for j in range(3))

    def test_general_frame(self):
        frame = (pt(1, 1, 0), pt(0, 1, 1), pt(1, 0, 1), pt(1, 1, 1))
        t = standardize_frame(frame)
        assert t.apply(frame[3]).coords == (F(1), F(1), F(1))
        assert t.apply(frame[0]).same_point(pt(*E1))

    def test_degenerate_last_point(self):
        with pytest.raises(DegenerateFrameError):
            standardize_frame((pt(*E1), pt(*E2), pt(*E3), pt(1, 1, 0)))

    def test_degenerate_base(self):
        with pytest.raises(DegenerateFrameError):
            standardize_frame((pt(*E1), pt(*E1), pt(*E3), pt(1, 1, 1)))


class TestBaseAndSigns:
    def test_base_configuration_layout(self):
        base = base_configuration(P43, (-1, 1))
        assert [p.coords for p in base.points[:3]] == [
            (F(1), F(0), F(0)),
            (F(0), F(1), F(0)),
            (F(0), F(0), F(1)),
        ]
        assert base.points[3].coords == (F(-1), F(1), F(1))

    def test_sign_string_roundtrip(self):
        for signs in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            assert sign_string_of(base_configuration(P43, signs)) == signs

    def test_sign_string_ignores_representative_scale(self):
        config = config43(E1, E2, (0, 0, -3), (2, -2, -2))
        assert sign_string_of(config) == (-1, 1)

    def test_sign_string_needs_unit_points(self):
        with pytest.raises(ValueError):
            sign_string_of(config43(E1, E2, (1, 1, 1), (1, 1, 1)))

    def test_sign_string_rejects_boundary(self):
        with pytest.raises(DegenerateFrameError):
            sign_string_of(config43(E1, E2, E3, (0, 1, 1)))


class TestShear:
    def test_frozen_example(self):
        config = config43(E1, E2, (-2, -2, -1), (1, 1, 1))
        transforms, sheared = shear_family(config)
        assert transforms[0].matrix == ProjectiveTransform.identity(3).matrix
        assert sheared.points[2].coords == (F(0), F(0), F(-1))
        assert sheared.points[3].coords == (F(-1), F(-1), F(1))
        assert sheared.points[0].coords == (F(1), F(0), F(0))
        assert transforms[-1].determinant() == 1

    def test_fixes_hyperplane_points(self):
        config = config43(E1, E2, (1, 2, 3), (0, 1, 2))
        _, sheared = shear_family(config)
        assert sheared.points[0].coords == (F(1), F(0), F(0))
        assert sheared.points[1].coords == (F(0), F(1), F(0))
        assert sheared.points[2].same_point(pt(*E3))

    def test_rejects_point_on_hyperplane(self):
        with pytest.raises(DegenerateFrameError):
            shear_family(config43(E1, E2, (1, 1, 0), (1, 1, 1)))

    def test_needs_pinned_frame(self):
        with pytest.raises(ValueError):
            shear_family(config43(E1, (1, 1, 0), E3, (1, 1, 1)))


class TestSignSnap:
    def test_frozen_example(self):
        config = config43(E1, E2, E3, (3, -2, 1))
        start, end = sign_snap_geodesic(config)
        assert start.points == config.points
        assert end.points[3].coords == (F(1), F(-1), F(1))

    def test_scaled_representative(self):
        config = config43(E1, E2, E3, (6, -4, 2))
        _, end = sign_snap_geodesic(config)
        assert end.points[3].same_point(pt(1, -1, 1))

    def test_requires_positive_last_coordinate(self):
        with pytest.raises(ValueError):
            sign_snap_geodesic(config43(E1, E2, E3, (3, -2, -1)))

    def test_rejects_coordinate_zero(self):
        with pytest.raises(DegenerateFrameError):
            sign_snap_geodesic(config43(E1, E2, E3, (0, 2, 1)))
