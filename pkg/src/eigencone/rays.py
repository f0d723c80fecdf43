"""Ray production and classification for faces of the tensor cone.

Two mechanisms produce rays on a face F(w, P):

* basic divisor classes: one ray D(j, v) per simple cover v -> w_j inside
  W^P, with coordinates given by ordinary intersection numbers;
* induction from the Levi: the linear map sending a degree-0 tuple of Levi
  weights mu to (w_1 mu_1, .., w_s mu_s) minus its basic-class corrections.

``classify_face`` combines both with the polyhedral engine to reproduce the
complete extremal-ray inventory of a face, and ``invariant_dim`` is the
independent representation-theoretic oracle (tensor invariant dimensions via
weight-diagram summation).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import cone, faces, linalg, schubert
from .linalg import clear_denominators
from .rootdata import (
    ParabolicSpec,
    Weight,
    build_root_system,
    eval_x,
    kappa,
    kappa_inv,
    pair,
)
from .weyl import covers, cover_test, minimal_reps, simple_reflection, weyl_group

__all__ = [
    "RayTuple",
    "FaceReport",
    "basic_divisor_class",
    "classify_nonsimple",
    "shift_to_degree0",
    "induction_image",
    "induct",
    "induct_coweights",
    "levi_cone_rays",
    "decompose_on_face",
    "classify_face",
    "invariant_dim",
    "OracleLimitError",
]


class OracleLimitError(RuntimeError):
    """The tensor-invariant oracle was asked for more than its bounds allow."""


@dataclass(frozen=True)
class RayTuple:
    """An s-tuple of weights spanning a ray (or point) of the tensor cone."""

    weights: tuple  # of Weight
    tag: str = "user"  # basic | induced | dd | user

    @property
    def root_system(self):
        return self.weights[0].root_system

    @property
    def s(self):
        return len(self.weights)

    def to_vector(self):
        """Stacked fundamental coordinates, lambda_1 then lambda_2 etc."""
        out = []
        for w in self.weights:
            out.extend(w.coords)
        return tuple(out)

    @classmethod
    def from_vector(cls, rs, s, vec, tag="user"):
        r = rs.rank
        assert len(vec) == s * r
        ws = tuple(
            Weight(rs, tuple(vec[j * r : (j + 1) * r])) for j in range(s)
        )
        return cls(ws, tag)

    def primitive(self):
        """Jointly clear denominators and divide by the content."""
        vec = clear_denominators(self.to_vector())
        return RayTuple.from_vector(self.root_system, self.s, vec, self.tag)

    def is_zero(self):
        return all(w.is_zero() for w in self.weights)

    def __add__(self, other):
        return RayTuple(
            tuple(a + b for a, b in zip(self.weights, other.weights)), self.tag
        )

    def __sub__(self, other):
        return RayTuple(
            tuple(a - b for a, b in zip(self.weights, other.weights)), self.tag
        )

    def scale(self, c):
        return RayTuple(tuple(w.scale(c) for w in self.weights), self.tag)

    def same_ray(self, other):
        return self.primitive().to_vector() == other.primitive().to_vector()

    def to_json(self):
        prim = self.primitive()
        return {
            "weights": [[int(c) for c in w.coords] for w in prim.weights],
            "tag": self.tag,
        }

    @classmethod
    def from_json(cls, rs, data):
        if isinstance(data, str):
            data = json.loads(data)
        ws = tuple(Weight(rs, tuple(row)) for row in data["weights"])
        return cls(ws, data.get("tag", "user"))

    def __repr__(self):
        return f"RayTuple({[tuple(w.coords) for w in self.weights]}, {self.tag})"


@dataclass
class FaceReport:
    face: object
    q: int
    basic_rays: list
    type2_rays: list
    levi_rays: list  # (levi RayTuple, induced image RayTuple)
    zero_count: int
    exotic: list
    total: int


def _find_cover(face, j, v):
    """The CoverDatum v -> w_j, or None."""
    for c in covers(face.words[j - 1], face.P):
        if c.lower == v:
            return c
    return None


def _divisor_formula(face, j, v):
    """Intersection-number coordinates of the divisor attached to replacing
    w_j by its codimension-one sub-cell v."""
    rs = face.root_system
    P = face.P
    us = list(face.words)
    us[j - 1] = v
    lams = []
    for kpos in range(face.s):
        coords = [0] * rs.rank
        for ell in range(1, rs.rank + 1):
            if not cover_test(us[kpos], ell, P):
                continue
            hatted = list(us)
            hatted[kpos] = simple_reflection(rs, ell).compose(us[kpos])
            coords[ell - 1] = schubert.multi_coeff(hatted, P)
        lams.append(rs.weight(coords))
    return RayTuple(tuple(lams), "basic")


def basic_divisor_class(face, j, v):
    """The ray D(j, v) attached to a simple cover v -> w_j of the face."""
    c = _find_cover(face, j, v)
    if c is None:
        raise ValueError(
            f"{v.word_str()} is not a codimension-one sub-cell of "
            f"{face.words[j - 1].word_str()} in W^P"
        )
    if not c.simple:
        raise ValueError(
            f"cover through non-simple root {c.beta}; no divisor class"
        )
    return _divisor_formula(face, j, v)


def classify_nonsimple(face, j, v):
    """Run the divisor formulas on a NON-simple cover; the result is a
    consistency check and should always be the zero tuple."""
    c = _find_cover(face, j, v)
    if c is None:
        raise ValueError(
            f"{v.word_str()} is not a codimension-one sub-cell of "
            f"{face.words[j - 1].word_str()} in W^P"
        )
    if c.simple:
        raise ValueError("simple cover: use basic_divisor_class")
    return _divisor_formula(face, j, v)


@lru_cache(maxsize=None)
def _face_basic_rays(face):
    return tuple(
        (j, v, ell, basic_divisor_class(face, j, v))
        for (j, v, ell) in faces.typeI_pairs(face)
    )


def shift_to_degree0(x, P):
    """Shift each entry by a combination of the omega_k, k outside Delta(P),
    so that every x_k evaluation vanishes; Levi restriction is unchanged."""
    rs = P.root_system
    ks = P.complement
    mat = [[eval_x(rs.omega(k), kp) for k in ks] for kp in ks]
    out = []
    for mu in x.weights:
        rhs = [eval_x(mu, kp) for kp in ks]
        t = linalg.solve(mat, rhs)
        shift = rs.zero_weight()
        for c, k in zip(t, ks):
            shift = shift + rs.omega(k).scale(c)
        out.append(mu - shift)
    return RayTuple(tuple(out), x.tag)


def induction_image(face, x):
    """The raw induction formula: (w_j mu_j)_j minus basic-class corrections
    weighted by the simple-coroot evaluations at the cover pairs."""
    rs = face.root_system
    moved = [w.act(mu) for w, mu in zip(face.words, x.weights)]
    result = RayTuple(tuple(moved), "induced")
    for j, v, ell, delta in _face_basic_rays(face):
        alpha = tuple(int(i == ell - 1) for i in range(rs.rank))
        coeff = pair(moved[j - 1], alpha)
        if coeff:
            result = result - delta.scale(coeff)
    return RayTuple(result.weights, "induced")


def induct(face, x):
    """Induction of a degree-0 Levi weight tuple; rejects non-degree-0 input."""
    for j, mu in enumerate(x.weights, start=1):
        for k in face.P.complement:
            val = eval_x(mu, k)
            if val != 0:
                raise ValueError(
                    f"entry {j} is not degree-0: x_{k} evaluation is {val}"
                )
    out = induction_image(face, x)
    for w in out.weights:
        assert w.is_dominant()
    return out


def induct_coweights(face, hs):
    """Eigencone-side induction: same formula after transport through the
    weight/coweight isomorphism; both routes are computed and compared."""
    x = RayTuple(tuple(kappa_inv(h) for h in hs), "user")
    lam = induct(face, x)
    rs = face.root_system
    moved = [w.act(mu) for w, mu in zip(face.words, x.weights)]
    direct = [kappa(m) for m in moved]
    for j, v, ell, delta in _face_basic_rays(face):
        alpha = tuple(int(i == ell - 1) for i in range(rs.rank))
        c = Fraction(2) / (2 * rs.root_norm_half(alpha))
        coeff = c * kappa(moved[j - 1]).eval_root(alpha)
        if coeff:
            direct = [
                rs.coweight(
                    [a - coeff * b for a, b in zip(d.coords, kappa(w).coords)]
                )
                for d, w in zip(direct, delta.weights)
            ]
    via_kappa = tuple(kappa(w) for w in lam.weights)
    assert all(d.coords == v.coords for d, v in zip(direct, via_kappa))
    return via_kappa


def _gamma_hrep(rs, s):
    """Full H-representation of the tensor cone: dominance plus every
    regular facet inequality."""
    n = s * rs.rank
    ineqs = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    for f in faces.enumerate_regular_facets(s, rs):
        for k in f.P.complement:
            ineqs.append(faces.inequality_row(f, k))
    return cone.HRep(n, ineqs)


@lru_cache(maxsize=None)
def gamma_hrep(rs, s):
    return _gamma_hrep(rs, s)


@lru_cache(maxsize=None)
def _levi_cone_rays_cached(P, s):
    rs = P.root_system
    out = []
    for comp in P.levi_components():
        sub, nodes = P.levi_factor(comp)
        h = gamma_hrep(sub, s)
        sub_rays = cone.extremal_rays(h)
        r = sub.rank
        for ray in sub_rays:
            coords = [[0] * rs.rank for _ in range(s)]
            flat = [ray[t * r : (t + 1) * r] for t in range(s)]
            for t in range(s):
                for pos, node in enumerate(nodes):
                    coords[t][node - 1] = flat[t][pos]
            out.append(
                RayTuple(tuple(rs.weight(c) for c in coords), "user")
            )
    return tuple(out)


def levi_cone_rays(P, s):
    """Extremal rays of the product of the Levi factors' tensor cones,
    embedded in G's fundamental-weight coordinates (supported on Delta(P))."""
    return list(_levi_cone_rays_cached(P, s))


def _on_face(face, x):
    if not all(w.is_dominant() for w in x.weights):
        return False
    return all(
        faces.eval_inequality(face, x, k) == 0 for k in face.P.complement
    )


def _pair_evals(face, x):
    rs = face.root_system
    out = []
    for j, v, ell, _ in _face_basic_rays(face):
        alpha = tuple(int(i == ell - 1) for i in range(rs.rank))
        out.append(pair(x.weights[j - 1], alpha))
    return out


def decompose_on_face(face, x):
    """Split a face member into basic-class coefficients plus a residual
    vanishing at every cover pair (the type II part)."""
    if not _on_face(face, x):
        raise ValueError("tuple does not lie on the face")
    basics = _face_basic_rays(face)
    coeffs = _pair_evals(face, x)
    residual = x
    for a, (_, _, _, delta) in zip(coeffs, basics):
        if a:
            residual = residual - delta.scale(a)
    if any(e != 0 for e in _pair_evals(face, residual)):
        raise RuntimeError("residual fails to vanish at the cover pairs")
    if not residual.is_zero():
        if not faces.tens_membership(residual.primitive().weights):
            raise RuntimeError("residual left the cone; decomposition bug")
    return coeffs, RayTuple(residual.weights, x.tag)


def face_extremal_rays(face):
    """All extremal rays of the face, via the polyhedral engine."""
    rs = face.root_system
    h = gamma_hrep(rs, face.s).copy()
    for k in face.P.complement:
        h.equalities.append(
            clear_denominators(faces.inequality_row(face, k))
        )
    h = cone.HRep(h.dim, h.inequalities, h.equalities)
    return [
        RayTuple.from_vector(rs, face.s, r, "dd")
        for r in cone.extremal_rays(h)
    ]


def classify_face(face):
    """Full inventory of a face: basic rays, polyhedral extremal rays,
    Levi-ray inductions with zero and exotic counts, and the consistency
    identities tying them together."""
    P = face.P
    basics = _face_basic_rays(face)
    q = len(basics)
    basic_rays = [delta.primitive() for (_, _, _, delta) in basics]
    all_rays = face_extremal_rays(face)
    basic_set = {r.to_vector() for r in basic_rays}
    type2 = []
    for r in all_rays:
        if r.primitive().to_vector() in basic_set:
            continue
        assert all(e == 0 for e in _pair_evals(face, r))
        type2.append(r)
    levi = levi_cone_rays(P, face.s)
    zero_count = 0
    exotic = []
    pairs = []
    ray_set = {r.primitive().to_vector() for r in all_rays}
    matched = set()
    for mu in levi:
        image = induct(face, shift_to_degree0(mu, P))
        pairs.append((mu, image))
        if image.is_zero():
            zero_count += 1
            continue
        prim = image.primitive()
        if prim.to_vector() in ray_set:
            matched.add(prim.to_vector())
        else:
            exotic.append(prim)
    assert zero_count == q - (face.s - 1) * len(P.complement)
    for r in type2:
        assert r.primitive().to_vector() in matched, (
            "type II ray is not an induction image"
        )
    return FaceReport(
        face=face,
        q=q,
        basic_rays=basic_rays,
        type2_rays=type2,
        levi_rays=pairs,
        zero_count=zero_count,
        exotic=exotic,
        total=len(all_rays),
    )


# -- tensor-invariant oracle ------------------------------------------


def _dominant_rep(rs, coords):
    """The dominant W-translate of a weight (no sign tracking)."""
    c = list(coords)
    a = rs.cartan_matrix
    n = rs.rank
    while True:
        i = next((i for i in range(n) if c[i] < 0), None)
        if i is None:
            return tuple(c)
        ci = c[i]
        for r in range(n):
            c[r] -= ci * a[r][i]


def _dominant_rep_signed(rs, coords):
    """(dominant translate, sign) for a regular weight; (None, 0) if some
    reflection fixes it."""
    c = list(coords)
    a = rs.cartan_matrix
    n = rs.rank
    sign = 1
    while True:
        if any(x == 0 for x in c):
            return None, 0
        i = next((i for i in range(n) if c[i] < 0), None)
        if i is None:
            return tuple(c), sign
        ci = c[i]
        for r in range(n):
            c[r] -= ci * a[r][i]
        sign = -sign


@lru_cache(maxsize=None)
def _weight_mults(rs, lam_coords):
    """Dominant weight multiplicities of the irreducible with highest weight
    lam, by the standard recursive multiplicity formula."""
    lam = rs.weight(lam_coords)
    lam_rc = lam.to_root_basis()
    n = rs.rank
    bounds = [int(x) for x in lam_rc]
    dominants = []
    for ks in itertools.product(*(range(b + 1) for b in bounds)):
        coords = list(lam.coords)
        for i, k in enumerate(ks):
            if k:
                for r in range(n):
                    coords[r] -= k * rs.cartan_matrix[r][i]
        if all(c >= 0 for c in coords):
            dominants.append((sum(ks), tuple(int(c) for c in coords)))
    dominants.sort()
    mults = {}

    def norm2(coords):
        w = rs.weight(coords)
        m = w.to_root_basis()
        return sum(w.coords[i] * rs.d[i] * m[i] for i in range(n))

    rho = tuple(1 for _ in range(n))
    top = norm2(tuple(a + b for a, b in zip(lam.coords, rho)))
    for depth, mu in dominants:
        if depth == 0:
            mults[mu] = 1
            continue
        denom = top - norm2(tuple(a + b for a, b in zip(mu, rho)))
        acc = Fraction(0)
        for beta in rs.positive_roots:
            bw = rs.root_to_weight(beta)
            t = 1
            while True:
                cand = tuple(
                    int(a + t * b) for a, b in zip(mu, bw.coords)
                )
                dom = _dominant_rep(rs, cand)
                m = mults.get(dom, 0)
                if m:
                    # (mu + t beta, beta)
                    wcand = rs.weight(cand)
                    ip = sum(
                        wcand.coords[i] * rs.d[i] * beta[i] for i in range(n)
                    )
                    acc += m * ip
                else:
                    # above the top weight in this direction once the chain
                    # leaves the weight diagram it never returns
                    diff = [
                        a - b
                        for a, b in zip(
                            lam_rc, rs.weight(cand).to_root_basis()
                        )
                    ]
                    if any(d < 0 for d in diff):
                        break
                t += 1
        val = 2 * acc / denom
        assert val.denominator == 1
        mults[mu] = int(val)
    return mults


def _orbit(rs, coords):
    seen = {tuple(coords)}
    frontier = [tuple(coords)]
    a = rs.cartan_matrix
    n = rs.rank
    while frontier:
        nxt = []
        for c in frontier:
            for i in range(n):
                if c[i] == 0:
                    continue
                new = list(c)
                ci = c[i]
                for r in range(n):
                    new[r] -= ci * a[r][i]
                new = tuple(new)
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    return seen


@lru_cache(maxsize=None)
def _full_weight_diagram(rs, lam_coords):
    out = {}
    for mu, m in _weight_mults(rs, lam_coords).items():
        for w in _orbit(rs, mu):
            out[w] = m
    return out


def _tensor_decompose(rs, acc, lam_coords):
    """Decompose (sum of irreducibles in acc) tensor V_lam, by summing the
    weight diagram of V_lam with shifted dominance reflections."""
    diagram = _full_weight_diagram(rs, lam_coords)
    rho = tuple(1 for _ in range(rs.rank))
    out = {}
    for nu, mult in acc.items():
        for mu, m in diagram.items():
            shifted = tuple(
                a + b + c for a, b, c in zip(nu, mu, rho)
            )
            dom, sign = _dominant_rep_signed(rs, shifted)
            if sign == 0:
                continue
            res = tuple(a - b for a, b in zip(dom, rho))
            out[res] = out.get(res, 0) + sign * mult * m
    return {k: v for k, v in out.items() if v}


def invariant_dim(x, max_height=20):
    """dim of the invariant subspace of V_{lambda_1} x .. x V_{lambda_s}."""
    rs = x.root_system if isinstance(x, RayTuple) else x[0].root_system
    ws = x.weights if isinstance(x, RayTuple) else tuple(x)
    for w in ws:
        if not (w.is_dominant() and w.is_integral()):
            raise ValueError(f"{tuple(w.coords)} is not dominant integral")
        if w.height() > max_height:
            raise OracleLimitError(
                f"weight height {w.height()} exceeds the bound {max_height}"
            )
    coords = [tuple(int(c) for c in w.coords) for w in ws]
    # fold the cheapest diagrams first, leaving the largest for the final
    # dual-pairing step
    coords.sort(key=lambda c: sum(c))
    last = coords[-1]
    acc = {coords[0]: 1}
    for lam in coords[1:-1]:
        acc = _tensor_decompose(rs, acc, lam)
    w0 = weyl_group(rs).longest
    dual = tuple(
        int(c) for c in w0.act(rs.weight(last)).scale(-1).coords
    )
    return acc.get(dual, 0)
