import random
from fractions import Fraction

import pytest

from eigencone import cone


def test_orthant():
    h = cone.HRep(3, inequalities=[(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    rays = cone.extremal_rays(h)
    assert rays == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_redundant_inequality_dropped():
    h = cone.HRep(
        2, inequalities=[(1, 0), (0, 1), (1, 1), (2, 0)]
    )
    assert cone.extremal_rays(h) == [(0, 1), (1, 0)]
    # (2,0) normalizes to (1,0) and is deduped on construction
    assert (1, 0) in h.inequalities and (2, 0) not in h.inequalities


def test_triangle_cone_over_simplex():
    # cone over the triangle x >= -1, y >= -1, x + y <= 1 at height 1
    h = cone.HRep(
        3,
        inequalities=[(1, 0, 1), (0, 1, 1), (-1, -1, 1)],
    )
    rays = cone.extremal_rays(h)
    assert set(rays) == {(-1, -1, 1), (-1, 2, 1), (2, -1, 1)}


def test_equalities_cut_dimension():
    h = cone.HRep(
        3,
        inequalities=[(1, 0, 0), (0, 1, 0), (0, 0, 1)],
        equalities=[(1, 1, -1)],
    )
    rays = cone.extremal_rays(h)
    assert set(rays) == {(1, 0, 1), (0, 1, 1)}


def test_restrict_to_face():
    h = cone.HRep(3, inequalities=[(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    f = cone.restrict_to_face(h, [0])
    assert f.equalities == [(1, 0, 0)]
    assert cone.extremal_rays(f) == [(0, 0, 1), (0, 1, 0)]


def test_contains():
    h = cone.HRep(2, inequalities=[(1, -1), (0, 1)])
    assert cone.contains(h, (2, 1))
    assert cone.contains(h, (1, 1))
    assert not cone.contains(h, (0, 1))
    assert cone.contains(h, (Fraction(1, 2), Fraction(1, 3)))


def test_is_extremal():
    h = cone.HRep(3, inequalities=[(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert cone.is_extremal(h, (1, 0, 0))
    assert cone.is_extremal(h, (3, 0, 0))
    assert not cone.is_extremal(h, (1, 1, 0))
    assert not cone.is_extremal(h, (0, 0, 0))
    with pytest.raises(ValueError):
        cone.is_extremal(h, (-1, 0, 0))


def test_not_pointed():
    h = cone.HRep(2, inequalities=[(1, 0)])
    with pytest.raises(cone.NotPointedError) as err:
        cone.extremal_rays(h)
    v = err.value.vector
    assert v[0] == 0 and v[1] != 0


def test_not_pointed_whole_space():
    h = cone.HRep(2)
    with pytest.raises(cone.NotPointedError):
        cone.extremal_rays(h)


def test_halfplane_pair_is_line():
    h = cone.HRep(2, inequalities=[(1, 0), (-1, 0)])
    with pytest.raises(cone.NotPointedError):
        cone.extremal_rays(h)


def test_zero_dimensional_solution_set():
    h = cone.HRep(2, equalities=[(1, 0), (0, 1)])
    assert cone.extremal_rays(h) == []


def test_random_membership_of_combinations():
    rng = random.Random(3)
    rows = [
        (1, 2, 0, -1),
        (0, 1, 1, 0),
        (1, 0, 0, 1),
        (0, 0, 1, 1),
        (2, -1, 0, 0),
        (0, 1, 0, 2),
    ]
    h = cone.HRep(4, inequalities=rows)
    rays = cone.extremal_rays(h)
    assert rays
    for _ in range(30):
        combo = [0, 0, 0, 0]
        for r in rays:
            c = rng.randrange(0, 4)
            combo = [a + c * b for a, b in zip(combo, r)]
        assert cone.contains(h, combo)
        assert cone.is_extremal(h, rays[rng.randrange(len(rays))])


def test_regeneration_round_trip():
    # rays -> dual description -> rays reproduces the input cone
    rows = [(1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1), (2, 1, 1)]
    h = cone.HRep(3, inequalities=rows)
    rays = cone.extremal_rays(h)
    # the dual cone of the dual cone: treat rays as inequality normals
    dual = cone.HRep(3, inequalities=rays)
    dual_rays = cone.extremal_rays(dual)
    back = cone.extremal_rays(cone.HRep(3, inequalities=dual_rays))
    assert back == rays


def test_hrep_text_round_trip():
    h = cone.HRep(
        3,
        inequalities=[(1, 0, -2), (0, 1, 1)],
        equalities=[(1, 1, 1)],
    )
    text = cone.hrep_to_text(h)
    back = cone.hrep_from_text(text)
    assert back.dim == 3
    assert back.inequalities == h.inequalities
    assert back.equalities == h.equalities


def test_rays_text_round_trip():
    rays = [(1, 0, 2), (-1, 3, 0)]
    text = cone.rays_to_text(rays)
    assert cone.rays_from_text(text) == rays
    assert cone.rays_from_text("# comment\n1 0 2 # note\n") == [(1, 0, 2)]
