import pytest

from eigencone import weyl as wl
from eigencone.rootdata import ParabolicSpec, build_root_system


def test_simple_reflection_fixes_other_fundamentals(d4):
    for i in range(1, 5):
        s = wl.simple_reflection(d4, i)
        for j in range(1, 5):
            if i != j:
                assert s.act(d4.omega(j)).coords == d4.omega(j).coords


def test_moved_omega2_values(d4, uvw):
    u, v, w = uvw
    om2 = d4.omega(2)
    assert tuple(map(int, u.act(om2).coords)) == (-1, 2, -1, -1)
    assert tuple(map(int, v.act(om2).coords)) == (-1, 0, -1, 1)
    assert tuple(map(int, w.act(om2).coords)) == (-1, 0, 1, -1)


def test_compose_inverse_length(d4, uvw):
    u, v, w = uvw
    assert u.length == 4 and v.length == 7 and w.length == 7
    assert (u.compose(u.inverse())).is_identity()
    assert u.inverse().inverse() == u
    assert (u.compose(v)).length <= u.length + v.length


@pytest.mark.parametrize("label,size", [("A1", 2), ("A2", 6), ("B2", 8), ("A3", 24), ("D4", 192), ("G2", 12)])
def test_weyl_group_sizes(label, size):
    assert len(wl.weyl_group(build_root_system(label))) == size


def test_enumeration_order_is_graded(d4):
    W = wl.weyl_group(d4)
    lengths = [w.length for w in W.elements]
    assert lengths == sorted(lengths)
    assert W.longest.length == 12


def test_minimal_reps_counts(d4, p2):
    a1 = build_root_system("A1")
    borel = ParabolicSpec.borel(a1)
    assert [w.word_str() for w in wl.minimal_reps(borel)] == ["e", "s1"]
    reps = wl.minimal_reps(p2)
    assert len(reps) == 24
    for k in (1, 3, 4):
        assert len(wl.minimal_reps(ParabolicSpec.maximal(d4, k))) == 8


def test_uvw_are_minimal_reps(p2, uvw):
    for x in uvw:
        assert x.is_minimal_rep(p2)


def test_covers_of_v(d4, p2, uvw):
    _, v, _ = uvw
    s3v = wl.simple_reflection(d4, 3).compose(v)
    cv = wl.covers(v, p2)
    hit = [c for c in cv if c.lower == s3v]
    assert len(hit) == 1
    assert hit[0].simple and hit[0].beta == (0, 0, 1, 0)
    for c in cv:
        assert c.upper == v
        assert c.lower.length == v.length - 1
        assert wl.reflection(d4, c.beta).compose(c.lower) == v


def test_covers_a1():
    a1 = build_root_system("A1")
    borel = ParabolicSpec.borel(a1)
    s = wl.simple_reflection(a1, 1)
    cv = wl.covers(s, borel)
    assert len(cv) == 1
    assert cv[0].lower.is_identity() and cv[0].simple


def test_total_simple_cover_count(p2, uvw):
    q = sum(1 for x in uvw for c in wl.covers(x, p2) if c.simple)
    assert q == 7


def test_covers_rejects_non_rep(d4, p2):
    s2 = wl.simple_reflection(d4, 2)
    w = s2.compose(wl.simple_reflection(d4, 1))  # s2 s1 is not in W^P2
    if not w.is_minimal_rep(p2):
        with pytest.raises(ValueError):
            wl.covers(w, p2)


def test_cover_test_examples(d4, p2, uvw):
    u, _, _ = uvw
    assert wl.cover_test(u, 2, p2) is True
    assert wl.cover_test(u, 1, p2) is False
    a1 = build_root_system("A1")
    assert wl.cover_test(wl.identity(a1), 1, ParabolicSpec.borel(a1)) is True


@pytest.mark.parametrize("label,k", [("D4", 2), ("D4", 4), ("A3", 1)])
def test_cover_test_criteria_agree_exhaustively(label, k):
    # the positivity and length criteria are asserted equal inside
    rs = build_root_system(label)
    P = ParabolicSpec.maximal(rs, k)
    for u in wl.minimal_reps(P):
        for ell in range(1, rs.rank + 1):
            wl.cover_test(u, ell, P)


def test_inversion_sets(d4, uvw):
    _, v, _ = uvw
    e = wl.identity(d4)
    assert wl.inversion_set(e) == set()
    assert wl.inversion_set(wl.simple_reflection(d4, 3)) == {(0, 0, 1, 0)}
    assert len(wl.inversion_set(v)) == 7


@pytest.mark.parametrize("label", ["A2", "B2", "A3"])
def test_length_equals_inversion_count_exhaustively(label):
    for w in wl.weyl_group(build_root_system(label)):
        assert len(wl.inversion_set(w)) == w.length


def test_lemma_super_identity(d4):
    # for every simple cover v -> w inside W^P: s_beta Phi_v union {beta}
    # equals Phi_w
    for k in (2, 4):
        P = ParabolicSpec.maximal(d4, k)
        for w in wl.minimal_reps(P):
            for c in wl.covers(w, P):
                if not c.simple:
                    continue
                s = wl.reflection(d4, c.beta)
                moved = {
                    tuple(s.act_root(b)) for b in wl.inversion_set(c.lower)
                }
                phi_w = wl.inversion_set(w)
                assert moved <= phi_w
                assert phi_w - moved == {c.beta}


def test_simple_cover_bijection(d4, p2):
    # simple covers of w correspond to simple roots with negative preimage
    for w in wl.minimal_reps(p2):
        simple_covers = [c for c in wl.covers(w, p2) if c.simple]
        winv = w.inverse()
        descents = [
            i
            for i in range(1, 5)
            if any(
                x < 0
                for x in winv.act_root(tuple(int(t == i - 1) for t in range(4)))
            )
        ]
        assert sorted(c.beta.index(1) + 1 for c in simple_covers) == descents


def test_delta_sets(d4, p2, uvw):
    _, v, _ = uvw
    e = wl.identity(d4)
    big_e, small_e = wl.delta_sets(e, p2)
    assert small_e == set()
    borel = ParabolicSpec.borel(d4)
    w0 = wl.weyl_group(d4).longest
    big0, small0 = wl.delta_sets(w0, borel)
    assert small0 == {1, 2, 3, 4}
    big_v, small_v = wl.delta_sets(v, p2)
    assert 3 in small_v
    assert small_v <= big_v


def test_word_parsing(d4):
    v = wl.parse_word(d4, "s3 s1 s2 s4 s3 s1 s2")
    assert wl.parse_word(d4, v.word_str()) == v
    assert wl.parse_word(d4, "e").is_identity()
    assert wl.parse_word(d4, "1").is_identity()
    assert wl.parse_word(d4, "s2s4") == wl.parse_word(d4, "s2 s4")
    with pytest.raises(ValueError):
        wl.parse_word(d4, "t1 t2")
    with pytest.raises(ValueError):
        wl.parse_word(d4, "s5")


def test_word_composition_order(d4):
    # leftmost letter acts last: "s4 s3 s1 s2" means s4(s3(s1(s2(.))))
    u = wl.parse_word(d4, "s4 s3 s1 s2")
    step = d4.omega(2)
    for i in (2, 1, 3, 4):
        step = wl.simple_reflection(d4, i).act(step)
    assert u.act(d4.omega(2)).coords == step.coords
