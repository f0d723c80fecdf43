import itertools
import random

import pytest

from eigencone import schubert as sc
from eigencone.rootdata import ParabolicSpec, build_root_system
from eigencone.weyl import identity, minimal_reps, parse_word, weyl_group


def test_codim(d4, p2, uvw):
    u, v, w = uvw
    assert sc.codim(u, p2) == 5
    assert sc.codim(v, p2) == 2
    assert sc.codim(w, p2) == 2
    assert sc.codim(identity(d4), p2) == 9


def test_main_triple_intersection(p2, uvw):
    u, v, w = uvw
    assert sc.multi_coeff([u, v, w], p2) == 1


def test_vanishing_balanced_triple(d4, p2):
    triple = [
        parse_word(d4, "s1 s2 s3 s2 s1 s4 s2"),
        parse_word(d4, "s2 s1 s3 s2 s4 s2 s1 s3 s2"),
        parse_word(d4, "s1 s2"),
    ]
    assert sum(sc.codim(x, p2) for x in triple) == p2.dim_flag
    assert sc.multi_coeff(triple, p2) == 0


def test_cover_triple_intersection(d4, p2, uvw):
    u, v, w = uvw
    s3v = parse_word(d4, "s1 s2 s4 s3 s1 s2")
    assert sc.multi_coeff([parse_word(d4, "s2").compose(u), s3v, w], p2) == 1


def test_codim_mismatch_raises(p2, uvw):
    u, v, _ = uvw
    with pytest.raises(sc.CodimensionError):
        sc.multi_coeff([u, v], p2)


def test_non_rep_rejected(d4, p2):
    bad = parse_word(d4, "s2 s1")
    if not bad.is_minimal_rep(p2):
        with pytest.raises(ValueError):
            sc.cup(bad, identity(d4), p2)


def test_fundamental_class_is_unit(d4, p2, uvw):
    # codimension indexing: the longest minimal rep carries codim 0 and is
    # the unit, while the identity is the point class
    u = uvw[0]
    top = max(minimal_reps(p2), key=lambda w: w.length)
    assert sc.codim(top, p2) == 0
    res = sc.cup(top, u, p2)
    assert res.coeffs == {u: 1} and res.grade == sc.codim(u, p2)


def test_a1_point_squared_is_zero():
    a1 = build_root_system("A1")
    borel = ParabolicSpec.borel(a1)
    e = identity(a1)  # the point class, codim 1
    assert sc.cup(e, e, borel).is_zero()
    s = parse_word(a1, "s1")
    assert sc.multi_coeff([s, e], borel) == 1


def test_grassmannian_gr24_pieri():
    # G/P1 for A3 is Gr(1,4) = P^3; G/P2 is Gr(2,4)
    a3 = build_root_system("A3")
    P = ParabolicSpec.maximal(a3, 2)
    reps = minimal_reps(P)
    assert len(reps) == 6
    # the codimension-1 class squared splits into the two codim-2 classes
    h = [w for w in reps if sc.codim(w, P) == 1]
    assert len(h) == 1
    sq = sc.cup(h[0], h[0], P)
    assert sorted(sq.coeffs.values()) == [1, 1]
    # degree of Gr(2,4): h^4 = 2 [point]
    assert sc.multi_coeff([h[0]] * 4, P) == 2


def test_p3_degree():
    a3 = build_root_system("A3")
    P = ParabolicSpec.maximal(a3, 1)
    h = [w for w in minimal_reps(P) if sc.codim(w, P) == 1][0]
    assert sc.multi_coeff([h, h, h], P) == 1


@pytest.mark.parametrize("label,k", [("D4", 2), ("A3", 2)])
def test_poincare_duality(label, k):
    rs = build_root_system(label)
    P = ParabolicSpec.maximal(rs, k)
    reps = minimal_reps(P)
    n = P.dim_flag
    for u in reps:
        matches = [
            v
            for v in reps
            if sc.codim(u, P) + sc.codim(v, P) == n
            and sc.multi_coeff([u, v], P) != 0
        ]
        assert len(matches) == 1
        assert sc.multi_coeff([u, matches[0]], P) == 1


@pytest.mark.parametrize("k", [2, 4])
def test_positivity_exhaustive(d4, k):
    P = ParabolicSpec.maximal(d4, k)
    for u, v in itertools.combinations_with_replacement(minimal_reps(P), 2):
        res = sc.cup(u, v, P)
        assert all(c > 0 for c in res.coeffs.values())


def test_positivity_sampled_borel(d4):
    rng = random.Random(7)
    borel = ParabolicSpec.borel(d4)
    W = list(weyl_group(d4))
    for _ in range(40):
        u, v = rng.choice(W), rng.choice(W)
        res = sc.cup(u, v, borel)
        assert all(c > 0 for c in res.coeffs.values())


def test_commutativity_and_associativity(d4, p2):
    rng = random.Random(11)
    reps = minimal_reps(p2)
    for _ in range(15):
        u, v, w = rng.choice(reps), rng.choice(reps), rng.choice(reps)
        assert sc.cup(u, v, p2) == sc.cup(v, u, p2)
        table = sc.product_table(d4)
        a = table.product_vec(
            table.product_ids(
                sc._dual_id(u, p2, table), sc._dual_id(v, p2, table)
            ),
            {sc._dual_id(w, p2, table): 1},
        )
        b = table.product_vec(
            {sc._dual_id(u, p2, table): 1},
            table.product_ids(
                sc._dual_id(v, p2, table), sc._dual_id(w, p2, table)
            ),
        )
        assert a == b


def test_chi_identity_element(d4, p2):
    e = identity(d4)
    got = sc.chi(e, p2)
    assert got.coords == (d4.rho - p2.rho_L().scale(2) + d4.rho).coords


def test_degree_gaps_main_triple(p2, uvw):
    gaps = sc.degree_gaps(list(uvw), p2)
    assert set(gaps) == {2}
    assert all(g == 0 for g in gaps.values())


def test_levi_movable_main_triple(p2, uvw):
    assert sc.levi_movable(list(uvw), p2) == (True, 1)


def test_levi_movable_nonzero_but_deformed_to_zero(d4, p2):
    # a triple with intersection number 2 whose degree gap is negative:
    # the product survives classically but not in the deformed ring
    triple = [
        parse_word(d4, "s1 s3 s2 s4 s2 s1 s3 s2"),
        parse_word(d4, "s1 s2 s3 s4 s2"),
        parse_word(d4, "s1 s2 s3 s4 s2"),
    ]
    flag, c = sc.levi_movable(triple, p2)
    assert c == 2 and not flag


@pytest.mark.parametrize("k", [2, 4])
def test_degree_gaps_nonpositive_when_nonzero(d4, k):
    P = ParabolicSpec.maximal(d4, k)
    reps = minimal_reps(P)
    by_codim = {}
    for w in reps:
        by_codim.setdefault(sc.codim(w, P), []).append(w)
    n = P.dim_flag
    for c1 in sorted(by_codim):
        for c2 in sorted(by_codim):
            c3 = n - c1 - c2
            if c3 < c2 or c3 not in by_codim:
                continue
            for triple in itertools.product(
                by_codim[c1], by_codim[c2], by_codim[c3]
            ):
                if sc.multi_coeff(list(triple), P) == 0:
                    continue
                gaps = sc.degree_gaps(list(triple), P)
                # with codimension-indexed reps the gap has a uniform sign:
                # the classical nonnegativity, flipped by dualization
                assert all(g <= 0 for g in gaps.values())


def test_cache_round_trip(tmp_path, d4):
    table = sc.ProductTable(d4, cache_dir=str(tmp_path))
    uid = table.W.id_of(parse_word(d4, "s2 s1"))
    vid = table.W.id_of(parse_word(d4, "s3 s4"))
    vec = table.product_ids(uid, vid)
    table.save_cache()
    reload = sc.ProductTable(d4, cache_dir=str(tmp_path))
    assert reload._products[(min(uid, vid), max(uid, vid))] == vec or reload._products[(uid, vid)] == vec
