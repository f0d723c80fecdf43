"""Exact polyhedral cone engine.

Double description over exact integers: convert a homogeneous system of
inequalities and equalities into the minimal generating set of extremal
rays. This is the independent verifier for every ray claim made elsewhere:
nothing in here knows about root systems.

Only pointed cones are handled (pointedness after restricting to the
equality subspace is asserted); all cones in scope are cut out inside a
dominant chamber, so this is not a restriction in practice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .linalg import clear_denominators

__all__ = [
    "HRep",
    "Ray",
    "extremal_rays",
    "is_extremal",
    "restrict_to_face",
    "contains",
    "hrep_to_text",
    "hrep_from_text",
    "rays_to_text",
    "rays_from_text",
    "NotPointedError",
]


class NotPointedError(ValueError):
    """The cone contains a line; carries one lineality vector."""

    def __init__(self, vector):
        self.vector = tuple(vector)
        super().__init__(f"cone is not pointed; lineality vector {self.vector}")


Ray = tuple  # primitive integer tuple


def _normalize_rows(rows):
    seen = []
    out = []
    for row in rows:
        prim = clear_denominators(row)
        if all(x == 0 for x in prim):
            continue
        if prim not in seen:
            seen.append(prim)
            out.append(prim)
    return out


@dataclass
class HRep:
    """Homogeneous system {x : ineq . x >= 0, eq . x = 0}."""

    dim: int
    inequalities: list = field(default_factory=list)
    equalities: list = field(default_factory=list)

    def __post_init__(self):
        self.inequalities = _normalize_rows(self.inequalities)
        self.equalities = _normalize_rows(self.equalities)
        for row in self.inequalities + self.equalities:
            assert len(row) == self.dim

    def copy(self):
        return HRep(self.dim, list(self.inequalities), list(self.equalities))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def contains(h, x):
    """Exact membership of the vector x."""
    return all(_dot(row, x) == 0 for row in h.equalities) and all(
        _dot(row, x) >= 0 for row in h.inequalities
    )


def restrict_to_face(h, tight):
    """Turn the chosen inequality indices into equalities."""
    tight = set(tight)
    ineqs = [row for i, row in enumerate(h.inequalities) if i not in tight]
    eqs = list(h.equalities) + [
        row for i, row in enumerate(h.inequalities) if i in tight
    ]
    return HRep(h.dim, ineqs, eqs)


def _subspace_basis(h):
    """Columns spanning the equality subspace (as row vectors here)."""
    if not h.equalities:
        return [
            tuple(int(i == j) for j in range(h.dim)) for i in range(h.dim)
        ]
    null = linalg.nullspace([list(r) for r in h.equalities])
    return [clear_denominators(v) for v in null]


def _independent_rows(rows, ncols):
    """Indices of a maximal linearly independent subset, greedy in order."""
    chosen = []
    mat = []
    for i, row in enumerate(rows):
        cand = mat + [list(row)]
        if linalg.rank(cand) > len(mat):
            mat = cand
            chosen.append(i)
            if len(chosen) == ncols:
                break
    return chosen


def _dd(rows, n):
    """Double description for {y in Q^n : row . y >= 0}, rows spanning rank n.

    Returns (rays, zerosets) where zerosets[i] is the bitmask of rows tight
    at ray i.
    """
    start = _independent_rows(rows, n)
    if len(start) < n:
        null = linalg.nullspace([list(r) for r in rows], ncols=n)
        raise NotPointedError(clear_denominators(null[0]))
    init = [rows[i] for i in start]
    inv = linalg.inverse(init)
    rays = [
        clear_denominators([inv[r][c] for r in range(n)]) for c in range(n)
    ]
    order = start + [i for i in range(len(rows)) if i not in start]
    zsets = []
    for ray in rays:
        z = 0
        for pos, idx in enumerate(order[:n]):
            if _dot(rows[idx], ray) == 0:
                z |= 1 << pos
        zsets.append(z)
    nproc = n
    for pos in range(n, len(order)):
        row = rows[order[pos]]
        vals = [_dot(row, r) for r in rays]
        pos_i = [i for i, v in enumerate(vals) if v > 0]
        neg_i = [i for i, v in enumerate(vals) if v < 0]
        zer_i = [i for i, v in enumerate(vals) if v == 0]
        if not neg_i:
            for i in zer_i:
                zsets[i] |= 1 << pos
            nproc += 1
            continue
        new_rays = []
        new_z = []
        for i in pos_i:
            for j in neg_i:
                common = zsets[i] & zsets[j]
                if bin(common).count("1") < n - 2:
                    continue
                adjacent = True
                for t in range(len(rays)):
                    if t != i and t != j and common & ~zsets[t] == 0:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                combo = tuple(
                    vals[i] * rays[j][c] - vals[j] * rays[i][c]
                    for c in range(n)
                )
                prim = clear_denominators(combo)
                z = 0
                for p, idx in enumerate(order[: pos + 1]):
                    if _dot(rows[idx], prim) == 0:
                        z |= 1 << p
                new_rays.append(prim)
                new_z.append(z)
        keep_r = [rays[i] for i in pos_i + zer_i]
        keep_z = [
            zsets[i] | ((1 << pos) if i in zer_i else 0) for i in pos_i + zer_i
        ]
        # the zero bit for kept positive rays stays 0 for this row
        rays = keep_r + new_rays
        zsets = keep_z + new_z
        nproc += 1
        # dedupe (combinatorially distinct parents can give the same ray)
        seen = {}
        for r, z in zip(rays, zsets):
            if r in seen:
                seen[r] |= z
            else:
                seen[r] = z
        rays = list(seen.keys())
        zsets = [seen[r] for r in rays]
    return rays, zsets


def extremal_rays(h):
    """Minimal generating rays of the cone, primitive and lex sorted."""
    basis = _subspace_basis(h)
    n = len(basis)
    if n == 0:
        return []
    proj = _normalize_rows(
        [[_dot(row, b) for b in basis] for row in h.inequalities]
    )
    if linalg.rank([list(r) for r in proj]) < n:
        if not proj:
            null = basis
        else:
            null = [
                clear_denominators(
                    [
                        sum(Fraction(v[i]) * basis[i][c] for i in range(n))
                        for c in range(h.dim)
                    ]
                )
                for v in linalg.nullspace([list(r) for r in proj], ncols=n)
            ]
        raise NotPointedError(null[0])
    rays_sub, _ = _dd(proj, n)
    out = set()
    for r in rays_sub:
        amb = tuple(
            sum(r[i] * basis[i][c] for i in range(n)) for c in range(h.dim)
        )
        out.add(clear_denominators(amb))
    result = sorted(out)
    for r in result:
        assert contains(h, r)
    return result


def is_extremal(h, r):
    """Is r on an extremal ray: tight constraints cut out a line."""
    if not contains(h, r):
        raise ValueError(f"{r} does not satisfy the system")
    if all(x == 0 for x in r):
        return False
    tight = [list(row) for row in h.equalities] + [
        list(row) for row in h.inequalities if _dot(row, r) == 0
    ]
    if not tight:
        return h.dim == 1
    return len(linalg.nullspace(tight)) == 1


# -- text round trip ---------------------------------------------------


def hrep_to_text(h):
    lines = [f"# hrep dim={h.dim}", "# equalities"]
    for row in h.equalities:
        lines.append(" ".join(str(x) for x in row))
    lines.append("# inequalities")
    for row in h.inequalities:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def hrep_from_text(text):
    eqs, ineqs = [], []
    target = None
    dim = None
    for raw in text.splitlines():
        line = raw.split("#", 1)
        comment = line[1].strip() if len(line) > 1 else ""
        body = line[0].strip()
        if comment.startswith("hrep dim="):
            dim = int(comment.split("=")[1])
        if comment == "equalities":
            target = eqs
        elif comment == "inequalities":
            target = ineqs
        if body:
            assert target is not None, "row before a section header"
            target.append(tuple(int(x) for x in body.split()))
    if dim is None:
        dim = len((eqs + ineqs)[0])
    return HRep(dim, ineqs, eqs)


def rays_to_text(rays):
    return "".join(" ".join(str(x) for x in r) + "\n" for r in rays)


def rays_from_text(text):
    out = []
    for raw in text.splitlines():
        body = raw.split("#", 1)[0].strip()
        if body:
            out.append(tuple(int(x) for x in body.split()))
    return out
