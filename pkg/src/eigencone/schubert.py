"""Schubert calculus on G/P, ordinary and deformed.

Products are computed once in H*(G/B) and restricted to G/P afterwards.
Internally classes are graded by length (sigma_u has degree l(u)); the
public API uses the codimension indexing, where the class attached to an
element w of W^P has codimension dim G/P - l(w). The two are glued by the
dual index w |-> w_0 w w_{0,P}.

The multiplication engine is the Chevalley rule for degree-one classes plus
the fact that H*(G/B;Q) is generated in degree two: every basis class is a
rational combination of (degree-one class) * (shorter class), solved exactly
degree by degree, and arbitrary products recurse through that expression.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .rootdata import ParabolicSpec, pair, eval_x
from .weyl import (
    WeylElem,
    identity,
    reflection,
    simple_reflection,
    weyl_group,
)

__all__ = [
    "SchubertClass",
    "ProductTable",
    "product_table",
    "cup",
    "multi_coeff",
    "chi",
    "levi_movable",
    "CodimensionError",
]

CACHE_ENV_VAR = "EIGENCONE_CACHE_DIR"
CACHE_FORMAT_VERSION = 1


class CodimensionError(ValueError):
    """Codimensions do not add up to the expected total."""


@dataclass
class SchubertClass:
    """Integer combination of basis classes of H*(G/P), one codimension."""

    parabolic: ParabolicSpec
    coeffs: dict  # WeylElem (in W^P) -> int
    grade: int  # codimension

    def __post_init__(self):
        assert all(c != 0 for c in self.coeffs.values())

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, w):
        return self.coeffs.get(w, 0)

    def __eq__(self, other):
        return (
            isinstance(other, SchubertClass)
            and self.parabolic == other.parabolic
            and self.coeffs == other.coeffs
        )


def _default_cache_dir():
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return env
    return os.path.join(
        os.environ.get("XDG_CACHE_HOME", os.path.expanduser("~/.cache")),
        "eigencone",
    )


class ProductTable:
    """Memoized H*(G/B) structure constants for one root system.

    Internal basis vectors are dicts {element_id: integer}; ids index the
    canonical enumeration of W.
    """

    def __init__(self, rs, cache_dir=None):
        self.root_system = rs
        self.W = weyl_group(rs)
        self.cache_dir = cache_dir if cache_dir is not None else _default_cache_dir()
        self._products = {}  # (id_u, id_v) sorted -> dict id -> int
        self._chevalley = {}  # id_x -> list of (beta, id_xs)
        self._expressions = {}  # id_u -> list of (Fraction, k, id_shorter)
        self._by_length = {}
        for i, w in enumerate(self.W.elements):
            self._by_length.setdefault(w.length, []).append(i)
        self._reflections = [
            self.W.id_of(reflection(rs, beta)) for beta in rs.positive_roots
        ]
        self._dirty = False
        self._load_cache()

    # -- cache ---------------------------------------------------------

    def _cache_path(self):
        return os.path.join(
            self.cache_dir, f"products-{self.root_system.cartan_label}.txt"
        )

    def _load_cache(self):
        path = self._cache_path()
        try:
            with open(path) as fh:
                header = fh.readline().split()
                if header != [
                    "eigencone-products",
                    self.root_system.cartan_label,
                    f"v{CACHE_FORMAT_VERSION}",
                    str(len(self.W)),
                ]:
                    return
                for line in fh:
                    parts = line.split()
                    u, v, npairs = int(parts[0]), int(parts[1]), int(parts[2])
                    vec = {}
                    for t in range(npairs):
                        vec[int(parts[3 + 2 * t])] = int(parts[4 + 2 * t])
                    self._products[(u, v)] = vec
        except (OSError, ValueError, IndexError):
            self._products = {}

    def save_cache(self):
        if not self._dirty:
            return
        path = self._cache_path()
        os.makedirs(self.cache_dir, exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            fh.write(
                f"eigencone-products {self.root_system.cartan_label} "
                f"v{CACHE_FORMAT_VERSION} {len(self.W)}\n"
            )
            for (u, v), vec in sorted(self._products.items()):
                items = " ".join(f"{w} {c}" for w, c in sorted(vec.items()))
                fh.write(f"{u} {v} {len(vec)} {items}\n")
        os.replace(tmp, path)
        self._dirty = False

    # -- internal multiplication --------------------------------------

    def _chev_data(self, xid):
        """Pairs (beta, id of x*s_beta) with l(x s_beta) = l(x) + 1."""
        got = self._chevalley.get(xid)
        if got is None:
            x = self.W.elements[xid]
            got = []
            for beta, rid in zip(
                self.root_system.positive_roots, self._reflections
            ):
                xs = x.compose(self.W.elements[rid])
                if xs.length == x.length + 1:
                    got.append((beta, self.W.id_of(xs)))
            self._chevalley[xid] = got
        return got

    def _mult_degree_one(self, k, vec):
        """Multiply a basis combination by the degree-one class of s_k."""
        rs = self.root_system
        omega = rs.omega(k)
        out = {}
        for xid, c in vec.items():
            for beta, yid in self._chev_data(xid):
                coeff = pair(omega, beta)
                assert coeff.denominator == 1
                if coeff:
                    out[yid] = out.get(yid, 0) + c * int(coeff)
        return {w: c for w, c in out.items() if c}

    def _expression(self, uid):
        """sigma_u as sum of c * sigma_{s_k} * sigma_{shorter}, exact."""
        got = self._expressions.get(uid)
        if got is None:
            self._solve_degree(self.W.elements[uid].length)
            got = self._expressions[uid]
        return got

    def _solve_degree(self, d):
        rs = self.root_system
        basis = self._by_length[d]
        pos = {w: i for i, w in enumerate(basis)}
        cols = []  # one column per candidate product, as dense vectors
        tags = []
        for xid in self._by_length[d - 1]:
            for k in range(1, rs.rank + 1):
                prod = self._mult_degree_one(k, {xid: 1})
                col = [0] * len(basis)
                for w, c in prod.items():
                    col[pos[w]] = c
                cols.append(col)
                tags.append((k, xid))
        # solve M x = e_u for all u at once: rref of [M | I]
        nb, nc = len(basis), len(cols)
        aug = [
            [Fraction(cols[j][i]) for j in range(nc)]
            + [Fraction(int(i == t)) for t in range(nb)]
            for i in range(nb)
        ]
        rows, pivots = linalg.rref(aug)
        assert all(p < nc for p in pivots), "degree-two generation failed"
        for t, uid in enumerate(basis):
            expr = []
            for r, pc in enumerate(pivots):
                val = rows[r][nc + t]
                if val:
                    k, xid = tags[pc]
                    expr.append((val, k, xid))
            self._expressions[uid] = expr

    def product_ids(self, uid, vid):
        """sigma_u * sigma_v as a dict {id: int}."""
        if self.W.elements[uid].length > self.W.elements[vid].length:
            uid, vid = vid, uid
        key = (uid, vid)
        got = self._products.get(key)
        if got is not None:
            return got
        lu = self.W.elements[uid].length
        if lu == 0:
            result = {vid: 1}
        elif lu == 1:
            k = self.W.elements[uid].word()[0]
            result = self._mult_degree_one(k, {vid: 1})
        else:
            acc = {}
            for coeff, k, xid in self._expression(uid):
                inner = self.product_ids(xid, vid)
                step = self._mult_degree_one(k, inner)
                for w, c in step.items():
                    acc[w] = acc.get(w, 0) + coeff * c
            result = {}
            for w, c in acc.items():
                if c:
                    assert c.denominator == 1
                    result[w] = int(c)
        self._products[key] = result
        self._dirty = True
        return result

    def product_vec(self, vec_a, vec_b):
        out = {}
        for uid, a in vec_a.items():
            for vid, b in vec_b.items():
                for w, c in self.product_ids(uid, vid).items():
                    out[w] = out.get(w, 0) + a * b * c
        return {w: c for w, c in out.items() if c}


@lru_cache(maxsize=None)
def product_table(rs, cache_dir=None):
    return ProductTable(rs, cache_dir=cache_dir)


@lru_cache(maxsize=None)
def _longest_levi(P):
    """Longest element of W_P."""
    gens = [simple_reflection(P.root_system, i) for i in sorted(P.delta_P)]
    best = identity(P.root_system)
    frontier = [best]
    seen = {best}
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                ws = w.compose(s)
                if ws not in seen:
                    seen.add(ws)
                    nxt.append(ws)
                    if ws.length > best.length:
                        best = ws
        frontier = nxt
    return best


def _dual_id(w, P, table):
    """Internal index of the pullback to G/B of the class of w in W^P."""
    w0 = table.W.longest
    w0p = _longest_levi(P)
    return table.W.id_of(w0.compose(w).compose(w0p))


def _undual(xid, P, table):
    w0 = table.W.longest
    w0p = _longest_levi(P)
    y = w0.compose(table.W.elements[xid]).compose(w0p)
    assert y.is_minimal_rep(P)
    return y


def codim(w, P):
    """Codimension of the cell of w in G/P."""
    return P.dim_flag - w.length


def cup(u, v, P):
    """Ordinary cup product of the classes of u and v in H*(G/P)."""
    for x in (u, v):
        if not x.is_minimal_rep(P):
            raise ValueError(f"{x.word_str()} is not in W^P")
    table = product_table(P.root_system)
    vec = table.product_ids(_dual_id(u, P, table), _dual_id(v, P, table))
    coeffs = {_undual(xid, P, table): c for xid, c in vec.items()}
    return SchubertClass(P, coeffs, codim(u, P) + codim(v, P))


def multi_coeff(words, P):
    """The integer c with product of the classes of w_i equal to c [point].

    Requires codimensions summing exactly to dim G/P; a mismatch is an
    error, not zero.
    """
    for x in words:
        if not x.is_minimal_rep(P):
            raise ValueError(f"{x.word_str()} is not in W^P")
    total = sum(codim(w, P) for w in words)
    if total != P.dim_flag:
        raise CodimensionError(
            f"codimensions sum to {total}, expected {P.dim_flag}"
        )
    table = product_table(P.root_system)
    vec = {_dual_id(words[0], P, table): 1}
    for w in words[1:]:
        vec = table.product_vec(vec, {_dual_id(w, P, table): 1})
    point = _dual_id(identity(P.root_system), P, table)
    assert all(xid == point for xid in vec), "product left the expected span"
    return vec.get(point, 0)


def chi(w, P):
    """The weight rho - 2 rho^L + w^-1 rho."""
    if not w.is_minimal_rep(P):
        raise ValueError(f"{w.word_str()} is not in W^P")
    rs = P.root_system
    return rs.rho - P.rho_L().scale(2) + w.inverse().act(rs.rho)


def degree_gaps(words, P):
    """The values (sum_j chi_{w_j} - chi_e)(x_k) for k outside Delta(P)."""
    rs = P.root_system
    total = words[0].root_system.zero_weight()
    for w in words:
        total = total + chi(w, P)
    total = total - chi(identity(rs), P)
    return {k: eval_x(total, k) for k in P.complement}


def levi_movable(words, P):
    """(flag, c): c is the ordinary intersection number; the flag says
    whether it survives in the deformed product (c nonzero and all degree
    gaps vanish)."""
    c = multi_coeff(words, P)
    if c == 0:
        return False, 0
    gaps = degree_gaps(words, P)
    return all(g == 0 for g in gaps.values()), c
