"""Finite root systems with exact rational arithmetic.

A :class:`RootSystem` packages the combinatorial data of one finite Cartan
type (products of simple types included): Cartan matrix, positive roots,
fundamental weights, the invariant form normalized so that long roots in each
simple factor have squared length 2, and the Killing-form isomorphism between
weights and coweights.

Conventions:

* simple-root indices are 1-based (Bourbaki numbering) in the public API,
  stored 0-based in vectors;
* roots are integer vectors in the simple-root basis;
* weights are canonically stored in the fundamental-weight basis, so the
  i-th coordinate of a weight ``lam`` is ``<lam, alpha_i^vee>``;
* coweights are stored in the basis {x_i} dual to the simple roots.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg

__all__ = [
    "RootSystem",
    "Weight",
    "Coweight",
    "ParabolicSpec",
    "build_root_system",
    "pair",
    "eval_x",
    "kappa",
    "kappa_inv",
    "rho_L",
]


class CartanLabelError(ValueError):
    """Raised for an unrecognized or unsupported Cartan label."""


def _chain_edges(n):
    return [(i, i + 1) for i in range(1, n)]


def _simple_cartan_matrix(family, n):
    """Cartan matrix a[i][j] = <alpha_j, alpha_i^vee> (0-based), Bourbaki."""
    if family == "A":
        edges = _chain_edges(n)
    elif family in ("B", "C"):
        if n < 2:
            raise CartanLabelError(f"{family}{n}: rank must be >= 2")
        edges = _chain_edges(n)
    elif family == "D":
        if n < 3:
            raise CartanLabelError(f"D{n}: rank must be >= 3")
        edges = _chain_edges(n - 1) + [(n - 2, n)]
    elif family == "E":
        if n not in (6, 7, 8):
            raise CartanLabelError(f"E{n}: rank must be 6, 7 or 8")
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, n)]
    elif family == "F":
        if n != 4:
            raise CartanLabelError(f"F{n}: only F4 exists")
        edges = _chain_edges(4)
    elif family == "G":
        if n != 2:
            raise CartanLabelError(f"G{n}: only G2 exists")
        edges = [(1, 2)]
    else:
        raise CartanLabelError(f"unknown family {family!r}")

    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        a[i - 1][j - 1] = -1
        a[j - 1][i - 1] = -1
    # double/triple bonds with Bourbaki arrow conventions
    if family == "B":
        a[n - 1][n - 2] = -2  # alpha_n short
    elif family == "C":
        a[n - 2][n - 1] = -2  # alpha_n long
    elif family == "F":
        a[2][1] = -2  # alpha_3, alpha_4 short
    elif family == "G":
        a[0][1] = -3  # alpha_1 short
    return a


def _symmetrizer(cartan):
    """Half squared lengths d_i with long roots per connected component at 1."""
    n = len(cartan)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        comp = [start]
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and cartan[i][j] != 0 and d[j] is None:
                    # d_j / d_i = a_ij / a_ji
                    d[j] = d[i] * cartan[i][j] / cartan[j][i]
                    comp.append(j)
                    stack.append(j)
        top = max(d[i] for i in comp)
        for i in comp:
            d[i] /= top
    return tuple(d)


def _positive_roots(cartan):
    """Closure of the simple roots under simple reflections, positives only."""
    n = len(cartan)
    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                c = sum(beta[j] * cartan[i][j] for j in range(n))
                refl = list(beta)
                refl[i] -= c
                refl = tuple(refl)
                if all(x >= 0 for x in refl) and refl not in seen:
                    seen.add(refl)
                    nxt.append(refl)
        frontier = nxt
    return tuple(sorted(seen, key=lambda b: (sum(b), b)))


class RootSystem:
    """Immutable root datum for one finite Cartan type (possibly a product)."""

    def __init__(self, cartan, label, factor_slices=None):
        self.cartan_label = label
        self.rank = len(cartan)
        self.cartan_matrix = tuple(tuple(int(x) for x in row) for row in cartan)
        self.d = _symmetrizer(self.cartan_matrix)
        self.positive_roots = _positive_roots(self.cartan_matrix)
        self._positive_set = set(self.positive_roots)
        self._cartan_inv = tuple(
            tuple(row) for row in linalg.inverse(self.cartan_matrix)
        )
        # slices of simple indices belonging to each simple factor (0-based)
        if factor_slices is None:
            factor_slices = [tuple(range(self.rank))]
        self.factor_slices = tuple(tuple(s) for s in factor_slices)

    # -- basic vectors -------------------------------------------------

    def weight(self, coords):
        return Weight(self, tuple(Fraction(c) for c in coords))

    def coweight(self, coords):
        return Coweight(self, tuple(Fraction(c) for c in coords))

    def zero_weight(self):
        return self.weight([0] * self.rank)

    def omega(self, i):
        """Fundamental weight omega_i (1-based)."""
        return self.weight([int(j == i - 1) for j in range(self.rank)])

    def alpha(self, i):
        """Simple root alpha_i as a Weight (1-based)."""
        return self.weight([self.cartan_matrix[j][i - 1] for j in range(self.rank)])

    @property
    def rho(self):
        return self.weight([1] * self.rank)

    # -- root utilities (roots are tuples in the simple-root basis) ----

    def is_root(self, beta):
        beta = tuple(beta)
        return beta in self._positive_set or tuple(-x for x in beta) in self._positive_set

    def is_positive_root(self, beta):
        return tuple(beta) in self._positive_set

    def root_pairing(self, beta, i):
        """<beta, alpha_i^vee> for a root-basis vector beta (1-based i)."""
        return sum(m * self.cartan_matrix[i - 1][j] for j, m in enumerate(beta))

    def reflect_root(self, i, beta):
        """s_i(beta) in the simple-root basis (1-based i)."""
        c = self.root_pairing(beta, i)
        out = list(beta)
        out[i - 1] -= c
        return tuple(out)

    def root_to_weight(self, beta):
        """A root (simple-root basis) as a Weight."""
        coords = [
            sum(self.cartan_matrix[i][j] * m for j, m in enumerate(beta))
            for i in range(self.rank)
        ]
        return self.weight(coords)

    def root_norm_half(self, beta):
        """(beta, beta) / 2."""
        n = self.rank
        val = Fraction(0)
        for i in range(n):
            if beta[i] == 0:
                continue
            for j in range(n):
                if beta[j]:
                    val += beta[i] * beta[j] * self.d[i] * self.cartan_matrix[i][j]
        return val / 2

    def __repr__(self):
        return f"RootSystem({self.cartan_label})"


@dataclass(frozen=True)
class Weight:
    """Exact rational weight, stored in the fundamental-weight basis."""

    root_system: RootSystem
    coords: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "coords", tuple(Fraction(c) for c in self.coords)
        )

    def __add__(self, other):
        assert self.root_system is other.root_system
        return Weight(
            self.root_system,
            tuple(a + b for a, b in zip(self.coords, other.coords)),
        )

    def __sub__(self, other):
        assert self.root_system is other.root_system
        return Weight(
            self.root_system,
            tuple(a - b for a, b in zip(self.coords, other.coords)),
        )

    def __neg__(self):
        return Weight(self.root_system, tuple(-a for a in self.coords))

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        return Weight(self.root_system, tuple(scalar * a for a in self.coords))

    def scale(self, scalar):
        return Fraction(scalar) * self

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_dominant(self):
        return all(c >= 0 for c in self.coords)

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coords)

    def to_root_basis(self):
        """Coordinates in the simple-root basis (tuple of Fraction)."""
        inv = self.root_system._cartan_inv
        n = self.root_system.rank
        return tuple(
            sum(inv[j][i] * self.coords[i] for i in range(n)) for j in range(n)
        )

    def height(self):
        """Sum of simple-root coordinates (the usual height for weights)."""
        return sum(self.to_root_basis())

    def __repr__(self):
        return f"Weight({self.coords})"


@dataclass(frozen=True)
class Coweight:
    """Exact rational coweight in the basis {x_i} dual to the simple roots."""

    root_system: RootSystem
    coords: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "coords", tuple(Fraction(c) for c in self.coords)
        )

    def eval_root(self, beta):
        """alpha(h) for a root-basis vector beta: linear in the coordinates."""
        return sum(Fraction(m) * c for m, c in zip(beta, self.coords))

    def __repr__(self):
        return f"Coweight({self.coords})"


_LABEL_RE = re.compile(r"^([A-G])([0-9]+)$")


@lru_cache(maxsize=None)
def build_root_system(label):
    """Construct the root system for a Cartan label like "D4" or "A1xA1xA1".

    Products of simple types are separated by "x". Each factor must be a
    valid finite type of rank <= 8.
    """
    parts = label.replace(" ", "").split("x")
    blocks = []
    for part in parts:
        m = _LABEL_RE.match(part)
        if not m:
            raise CartanLabelError(f"cannot parse Cartan label token {part!r}")
        family, n = m.group(1), int(m.group(2))
        if not 1 <= n <= 8:
            raise CartanLabelError(f"{part}: rank must be between 1 and 8")
        blocks.append(_simple_cartan_matrix(family, n))
    total = sum(len(b) for b in blocks)
    cartan = [[0] * total for _ in range(total)]
    slices = []
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                cartan[off + i][off + j] = b[i][j]
        slices.append(tuple(range(off, off + k)))
        off += k
    return RootSystem(cartan, "x".join(parts), factor_slices=slices)


def root_system_from_cartan(cartan, label):
    """Root system directly from a (symmetrizable) Cartan matrix."""
    return RootSystem(cartan, label)


def pair(lam, beta):
    """<lam, beta^vee> = 2 (lam, beta) / (beta, beta), exact.

    ``beta`` is a root in the simple-root basis; rejects non-roots.
    """
    rs = lam.root_system
    beta = tuple(beta)
    if not rs.is_root(beta):
        raise ValueError(f"{beta} is not a root of {rs.cartan_label}")
    num = sum(
        lam.coords[i] * Fraction(beta[i]) * rs.d[i] for i in range(rs.rank)
    )
    return num / rs.root_norm_half(beta)


def eval_x(lam, k):
    """lam(x_k): the alpha_k-coefficient of lam in the simple-root basis."""
    return lam.to_root_basis()[k - 1]


def invariant_form(lam, mu):
    """(lam, mu) under the normalized invariant form."""
    rs = lam.root_system
    m = mu.to_root_basis()
    # (lam, alpha_i) = coords_i * d_i
    return sum(lam.coords[i] * rs.d[i] * m[i] for i in range(rs.rank))


def kappa(lam):
    """Killing-form isomorphism weight -> coweight: alpha_i(kappa(lam)) = (lam, alpha_i)."""
    rs = lam.root_system
    return rs.coweight([lam.coords[i] * rs.d[i] for i in range(rs.rank)])


def kappa_inv(h):
    """Inverse of :func:`kappa`."""
    rs = h.root_system
    return rs.weight([h.coords[i] / rs.d[i] for i in range(rs.rank)])


class ParabolicSpec:
    """A standard parabolic, specified by its subset Delta(P) of simple roots.

    Indices in ``delta_P`` are 1-based. Derived data: the positive roots of
    the Levi, rho^L, and the decomposition of the Levi semisimple part into
    connected Dynkin components.
    """

    def __init__(self, root_system, delta_P):
        self.root_system = root_system
        self.delta_P = frozenset(int(i) for i in delta_P)
        for i in self.delta_P:
            if not 1 <= i <= root_system.rank:
                raise ValueError(f"simple-root index {i} out of range")

    @classmethod
    def maximal(cls, root_system, k):
        """The standard maximal parabolic P_k with Delta(P) = Delta - {alpha_k}."""
        return cls(root_system, set(range(1, root_system.rank + 1)) - {k})

    @classmethod
    def borel(cls, root_system):
        return cls(root_system, set())

    @property
    def complement(self):
        """Simple indices outside Delta(P), sorted."""
        return tuple(
            k for k in range(1, self.root_system.rank + 1) if k not in self.delta_P
        )

    @property
    def levi_positive_roots(self):
        """Positive roots supported on Delta(P)."""
        return tuple(
            b
            for b in self.root_system.positive_roots
            if all(b[i - 1] == 0 for i in self.complement)
        )

    @property
    def dim_flag(self):
        """dim G/P = number of positive roots outside the Levi."""
        return len(self.root_system.positive_roots) - len(self.levi_positive_roots)

    def rho_L(self):
        """Half sum of the positive roots of the Levi."""
        rs = self.root_system
        total = [Fraction(0)] * rs.rank
        for b in self.levi_positive_roots:
            w = rs.root_to_weight(b)
            total = [t + c for t, c in zip(total, w.coords)]
        return rs.weight([t / 2 for t in total])

    def levi_components(self):
        """Connected components of Delta(P), each a sorted tuple of 1-based nodes."""
        nodes = sorted(self.delta_P)
        cartan = self.root_system.cartan_matrix
        comps = []
        unvisited = set(nodes)
        while unvisited:
            start = min(unvisited)
            comp = {start}
            stack = [start]
            unvisited.remove(start)
            while stack:
                i = stack.pop()
                for j in list(unvisited):
                    if cartan[i - 1][j - 1] != 0:
                        comp.add(j)
                        unvisited.remove(j)
                        stack.append(j)
            comps.append(tuple(sorted(comp)))
        return comps

    def levi_factor(self, component):
        """Root system of one Levi component; nodes map positionally."""
        nodes = tuple(component)
        sub = [
            [self.root_system.cartan_matrix[i - 1][j - 1] for j in nodes]
            for i in nodes
        ]
        label = classify_cartan(sub)
        return root_system_from_cartan(sub, label), nodes

    def levi_labels(self):
        """Cartan labels of the Levi components, e.g. ["A1", "A1", "A1"]."""
        return [classify_cartan(
            [[self.root_system.cartan_matrix[i - 1][j - 1] for j in comp]
             for i in comp])
            for comp in self.levi_components()]

    def __repr__(self):
        return (
            f"ParabolicSpec({self.root_system.cartan_label}, "
            f"delta_P={sorted(self.delta_P)})"
        )

    def __eq__(self, other):
        return (
            isinstance(other, ParabolicSpec)
            and self.root_system is other.root_system
            and self.delta_P == other.delta_P
        )

    def __hash__(self):
        return hash((id(self.root_system), self.delta_P))


def rho_L(P):
    """Half sum of the positive roots of the Levi of ``P``."""
    return P.rho_L()


def classify_cartan(cartan):
    """Identify the Cartan label of a connected simple Cartan matrix."""
    n = len(cartan)
    if n == 1:
        return "A1"
    degs = [sum(1 for j in range(n) if j != i and cartan[i][j] != 0) for i in range(n)]
    offdiag = sorted(
        cartan[i][j] for i in range(n) for j in range(n) if i != j and cartan[i][j] != 0
    )
    if min(offdiag) == -3:
        return "G2"
    if min(offdiag) == -2:
        if max(degs) > 2:
            raise CartanLabelError("unrecognized multiply-laced branched diagram")
        double = [
            (i, j)
            for i in range(n)
            for j in range(n)
            if i != j and cartan[i][j] == -2
        ]
        if len(double) != 1:
            raise CartanLabelError("unrecognized doubly-laced diagram")
        short, lng = double[0]  # cartan[i][j] = -2 means alpha_i is short
        if degs[short] == 2 and degs[lng] == 2:
            if n == 4:
                return "F4"
            raise CartanLabelError("interior double bond outside rank 4")
        # chain with the double bond at one end: the short root sits at the
        # high end for B, at the low end for C (positional convention)
        return f"B{n}" if short > lng else f"C{n}"
    if max(degs) <= 2:
        return f"A{n}"
    if degs.count(3) != 1:
        raise CartanLabelError("unrecognized branched diagram")
    branch = degs.index(3)
    arms = []
    for j in range(n):
        if j != branch and cartan[branch][j] != 0:
            length = 1
            prev, cur = branch, j
            while True:
                nxts = [
                    k for k in range(n)
                    if k not in (prev, cur) and cartan[cur][k] != 0
                ]
                if not nxts:
                    break
                prev, cur = cur, nxts[0]
                length += 1
            arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"D{n}"
    if arms[0] == 1 and arms[1] == 2 and n in (6, 7, 8):
        return f"E{n}"
    raise CartanLabelError("unrecognized simply-laced branched diagram")
