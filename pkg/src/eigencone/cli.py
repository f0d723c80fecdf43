"""Command-line front end.

Subcommands: facets, face-rays, divisor, induct, membership, cone-rays,
reproduce. Exit codes: 0 success, 2 argument/parse error, 3 mathematical
precondition failure, 4 golden-value mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from . import cone, faces, rays, schubert
from .rootdata import CartanLabelError, ParabolicSpec, build_root_system
from .weyl import parse_word, simple_reflection

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_MATH = 3
EXIT_GOLDEN = 4


class ParseFailure(Exception):
    pass


def _parser():
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--cache-dir", help="product-table cache directory")
    shared.add_argument(
        "--format", choices=("text", "json"), default="text", dest="fmt"
    )
    shared.add_argument(
        "--oracle-max-n",
        type=int,
        default=0,
        metavar="N",
        help="also certify membership with the invariant oracle up to N",
    )
    p = argparse.ArgumentParser(
        prog="eigencone",
        description="Extremal rays of saturated tensor cones, exactly.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, words=False, parabolic=False):
        sp.add_argument("--type", required=True, dest="cartan")
        sp.add_argument("--s", type=int, default=3)
        if parabolic:
            sp.add_argument(
                "--parabolic",
                required=True,
                help="dropped simple indices, e.g. '2' or '1,2'",
            )
        if words:
            sp.add_argument(
                "--words", required=True, help="semicolon-separated Weyl words"
            )

    sp = sub.add_parser("facets", parents=[shared], help="enumerate regular facet data")
    common(sp)
    sp.add_argument("--quotient-symmetry", action="store_true")

    sp = sub.add_parser("face-rays", parents=[shared], help="full ray inventory of one face")
    common(sp, words=True, parabolic=True)

    sp = sub.add_parser("divisor", parents=[shared], help="basic divisor class of a cover pair")
    common(sp, words=True, parabolic=True)
    sp.add_argument("--pair", required=True, help="j:word for the sub-cell")

    sp = sub.add_parser("induct", parents=[shared], help="induction of a Levi weight tuple")
    common(sp, words=True, parabolic=True)
    sp.add_argument("--input", required=True, help="JSON list of weight rows")
    sp.add_argument(
        "--raw",
        action="store_true",
        help="apply the raw formula without the degree-0 shift",
    )

    sp = sub.add_parser("membership", parents=[shared], help="saturated tensor cone membership")
    common(sp)
    sp.add_argument("--input", required=True, help="JSON list of weight rows")

    sp = sub.add_parser("cone-rays", parents=[shared], help="all extremal rays of the cone")
    common(sp)

    sp = sub.add_parser("reproduce", parents=[shared], help="check a stored table")
    sp.add_argument(
        "target", choices=("ex1", "subbie", "apples", "p4-table")
    )
    return p


def _root_system(label):
    try:
        return build_root_system(label)
    except CartanLabelError as e:
        raise ParseFailure(str(e))


def _parabolic(rs, text):
    try:
        dropped = {int(t) for t in text.split(",")}
    except ValueError:
        raise ParseFailure(f"cannot parse parabolic spec {text!r}")
    for k in dropped:
        if not 1 <= k <= rs.rank:
            raise ParseFailure(f"simple index {k} out of range")
    return ParabolicSpec(rs, set(range(1, rs.rank + 1)) - dropped)


def _words(rs, text, s):
    parts = [t.strip() for t in text.split(";")]
    if len(parts) != s:
        raise ParseFailure(f"expected {s} words, got {len(parts)}")
    try:
        return tuple(parse_word(rs, t) for t in parts)
    except ValueError as e:
        raise ParseFailure(str(e))


def _face(args):
    rs = _root_system(args.cartan)
    P = _parabolic(rs, args.parabolic)
    words = _words(rs, args.words, args.s)
    for w in words:
        if not w.is_minimal_rep(P):
            raise ValueError(f"{w.word_str()} is not in W^P")
    return faces.FaceSpec(args.s, P, words)


def _weight_tuple(rs, text, s):
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseFailure(f"bad JSON input: {e}")
    if (
        not isinstance(rows, list)
        or len(rows) != s
        or any(len(r) != rs.rank for r in rows)
    ):
        raise ParseFailure(
            f"expected {s} rows of {rs.rank} coordinates"
        )
    return rays.RayTuple(tuple(rs.weight(r) for r in rows))


def _ray_text(rt):
    return " ; ".join(
        " ".join(str(c) for c in w.coords) for w in rt.weights
    )


def _emit(args, payload, text_lines):
    if args.fmt == "json":
        print(json.dumps(payload, indent=2, default=str))
    else:
        for line in text_lines:
            print(line)


def _report_payload(rep):
    return {
        "face": faces.face_to_json(rep.face),
        "q": rep.q,
        "c": rep.zero_count,
        "total": rep.total,
        "type1": [r.to_json() for r in rep.basic_rays],
        "type2": [r.primitive().to_json() for r in rep.type2_rays],
        "exotic": [r.to_json() for r in rep.exotic],
        "induction": [
            [mu.primitive().to_json(), None if img.is_zero() else img.primitive().to_json()]
            for mu, img in rep.levi_rays
        ],
    }


def _report_lines(rep):
    lines = [
        f"face: {'; '.join(w.word_str() for w in rep.face.words)}  "
        f"(dropped nodes {list(rep.face.P.complement)})",
        f"q = {rep.q}   c = {rep.zero_count}   "
        f"exotic = {len(rep.exotic)}   total rays = {rep.total}",
        "type I rays:",
    ]
    lines += [f"  {_ray_text(r)}" for r in rep.basic_rays]
    lines.append("type II rays:")
    lines += [f"  {_ray_text(r.primitive())}" for r in rep.type2_rays]
    if rep.exotic:
        lines.append("exotic induced rays:")
        lines += [f"  {_ray_text(r)}" for r in rep.exotic]
    lines.append("induction of Levi rays:")
    for mu, img in rep.levi_rays:
        rhs = "0" if img.is_zero() else _ray_text(img.primitive())
        lines.append(f"  {_ray_text(mu.primitive())}  ->  {rhs}")
    return lines


def _cmd_facets(args):
    rs = _root_system(args.cartan)
    out = faces.enumerate_regular_facets(
        args.s, rs, quotient_symmetry=args.quotient_symmetry
    )
    payload = [faces.face_to_json(f) for f in out]
    lines = [
        f"P-{list(f.P.complement)}: " + " ; ".join(w.word_str() for w in f.words)
        for f in out
    ]
    lines.append(f"# {len(out)} facet data")
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_face_rays(args):
    face = _face(args).validate()
    rep = rays.classify_face(face)
    _emit(args, _report_payload(rep), _report_lines(rep))
    return EXIT_OK


def _cmd_divisor(args):
    face = _face(args).validate()
    if ":" not in args.pair:
        raise ParseFailure("--pair must look like j:word")
    jtxt, word = args.pair.split(":", 1)
    try:
        j = int(jtxt)
    except ValueError:
        raise ParseFailure(f"bad pair index {jtxt!r}")
    if not 1 <= j <= face.s:
        raise ParseFailure(f"pair index {j} out of range")
    try:
        v = parse_word(face.root_system, word)
    except ValueError as e:
        raise ParseFailure(str(e))
    ray = rays.basic_divisor_class(face, j, v)
    _emit(args, ray.to_json(), [_ray_text(ray)])
    return EXIT_OK


def _cmd_induct(args):
    face = _face(args).validate()
    x = _weight_tuple(face.root_system, args.input, args.s)
    if args.raw:
        out = rays.induction_image(face, x)
    else:
        out = rays.induct(face, rays.shift_to_degree0(x, face.P))
    _emit(args, out.to_json(), [_ray_text(out)])
    return EXIT_OK


def _cmd_membership(args):
    rs = _root_system(args.cartan)
    x = _weight_tuple(rs, args.input, args.s)
    member = faces.tens_membership(x.weights)
    payload = {"member": member}
    lines = [f"member: {member}"]
    if member and args.oracle_max_n > 0:
        found = None
        for n in range(1, args.oracle_max_n + 1):
            if rays.invariant_dim(x.scale(n), max_height=200) > 0:
                found = n
                break
        payload["invariant_witness_n"] = found
        lines.append(f"invariant witness at N = {found}")
    _emit(args, payload, lines)
    return EXIT_OK


def _cmd_cone_rays(args):
    rs = _root_system(args.cartan)
    h = rays.gamma_hrep(rs, args.s)
    out = cone.extremal_rays(h)
    tuples = [rays.RayTuple.from_vector(rs, args.s, r, "dd") for r in out]
    payload = [t.to_json() for t in tuples]
    lines = [_ray_text(t) for t in tuples] + [f"# {len(out)} rays"]
    _emit(args, payload, lines)
    return EXIT_OK


# -- reproduce ---------------------------------------------------------


def _golden(name):
    ref = resources.files("eigencone").joinpath(f"golden/{name}.json")
    return json.loads(ref.read_text())


def _coords(rt):
    prim = rt.primitive()
    return [[int(c) for c in w.coords] for w in prim.weights]


class _Checks:
    def __init__(self):
        self.failures = []
        self.lines = []

    def check(self, label, got, want):
        ok = got == want
        self.lines.append(f"{'ok  ' if ok else 'FAIL'} {label}: {got}")
        if not ok:
            self.failures.append(f"{label}: got {got!r}, expected {want!r}")

    def finish(self):
        for line in self.lines:
            print(line)
        if self.failures:
            print("mismatches:")
            for f in self.failures:
                print(f"  - {f}")
            return EXIT_GOLDEN
        return EXIT_OK


def _golden_face(g):
    rs = build_root_system(g["type"])
    P = ParabolicSpec(
        rs, set(range(1, rs.rank + 1)) - set(g["parabolic"])
    )
    words = tuple(parse_word(rs, t) for t in g["words"])
    return faces.FaceSpec(g["s"], P, words)


def _reproduce_ex1():
    g = _golden("ex1")
    face = _golden_face(g)
    rs = face.root_system
    ck = _Checks()
    movable, c = schubert.levi_movable(list(face.words), face.P)
    ck.check("deformed product coefficient", [movable, c], [True, g["deformed_coefficient"]])
    u, v, w = face.words
    s2u = simple_reflection(rs, 2).compose(u)
    s3v = simple_reflection(rs, 3).compose(v)
    ck.check(
        "ordinary triple (s2u, s3v, w)",
        schubert.multi_coeff([s2u, s3v, w], face.P),
        g["ordinary_triple_s2u_s3v_w"],
    )
    movable2, _ = schubert.levi_movable([s2u, s3v, w], face.P)
    deformed2 = schubert.multi_coeff([s2u, s3v, w], face.P) if movable2 else 0
    ck.check(
        "deformed triple (s2u, s3v, w)", deformed2, g["deformed_triple_s2u_s3v_w"]
    )
    j, word = g["divisor_pair"]
    ray = rays.basic_divisor_class(face, j, parse_word(rs, word))
    ck.check("divisor class", _coords(ray), g["divisor"])
    return ck.finish()


def _reproduce_subbie():
    g = _golden("subbie")
    face = _golden_face(g).validate()
    rep = rays.classify_face(face)
    ck = _Checks()
    ck.check("q", rep.q, g["q"])
    ck.check("c", rep.zero_count, g["c"])
    ck.check("total rays", rep.total, g["total"])
    ck.check("countem identity", rep.zero_count,
             rep.q - (face.s - 1) * len(face.P.complement))
    got1 = sorted(_coords(r) for r in rep.basic_rays)
    ck.check("type I rays", got1, sorted(g["type1"]))
    got2 = sorted(_coords(r) for r in rep.type2_rays)
    ck.check("type II rays", got2, sorted(g["type2"]))
    table = {
        tuple(map(tuple, mu)): img for mu, img in
        (( _coords(m), None if i.is_zero() else _coords(i)) for m, i in rep.levi_rays)
    }
    for mu, img in g["induction_table"]:
        key = tuple(map(tuple, mu))
        ck.check(f"induction of {mu}", table.get(key, "missing"), img)
    return ck.finish()


def _reproduce_apples():
    g = _golden("apples")
    face = _golden_face(g)
    rs = face.root_system
    ck = _Checks()
    om2 = rs.omega(2)
    for j, w in enumerate(face.words):
        ck.check(
            f"w_{j + 1} . omega_2",
            [int(c) for c in w.act(om2).coords],
            g["moved_omega2"][j],
        )
    zero = rs.zero_weight()
    induced = None
    for j in range(face.s):
        entries = [zero] * face.s
        entries[j] = om2
        out = rays.induction_image(face, rays.RayTuple(tuple(entries)))
        ck.check(
            f"single-entry induction, slot {j + 1}",
            [[int(c) for c in w.coords] for w in out.weights],
            g["induced"],
        )
        induced = out
    ck.check(
        "inequality value at x_2",
        int(faces.eval_inequality(face, induced, 2)),
        g["inequality_value_at_x2"],
    )
    ck.check(
        "membership", faces.tens_membership(induced.weights), g["member"]
    )
    return ck.finish()


def _reproduce_p4():
    g = _golden("p4_table")
    rs = build_root_system(g["type"])
    P = ParabolicSpec(rs, set(range(1, rs.rank + 1)) - set(g["parabolic"]))
    ck = _Checks()
    ck.check(
        "Levi ray count", len(rays.levi_cone_rays(P, g["s"])), g["levi_ray_count"]
    )
    for row in g["rows"]:
        words = tuple(parse_word(rs, t) for t in row["words"])
        face = faces.FaceSpec(g["s"], P, words).validate()
        rep = rays.classify_face(face)
        label = "(" + ", ".join(row["words"]) + ")"
        ck.check(
            f"{label} [q, c, exotic, total]",
            [rep.q, rep.zero_count, len(rep.exotic), rep.total],
            [row["q"], row["c"], row["exotic"], row["total"]],
        )
        if "exotic_ray" in row:
            ck.check(
                f"{label} exotic ray",
                sorted(_coords(r) for r in rep.exotic),
                sorted([row["exotic_ray"]]),
            )
            parts = [
                rays.RayTuple(tuple(rs.weight(r) for r in part))
                for part in row["exotic_sum_of"]
            ]
            total = parts[0] + parts[1]
            ck.check(
                f"{label} exotic decomposition adds up",
                _coords(total),
                row["exotic_ray"],
            )
            ray_set = {
                r.primitive().to_vector() for r in rays.face_extremal_rays(face)
            }
            ck.check(
                f"{label} decomposition parts extremal",
                all(p.primitive().to_vector() in ray_set for p in parts),
                True,
            )
    return ck.finish()


def _cmd_reproduce(args):
    target = {
        "ex1": _reproduce_ex1,
        "subbie": _reproduce_subbie,
        "apples": _reproduce_apples,
        "p4-table": _reproduce_p4,
    }[args.target]
    return target()


def main(argv=None):
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if e.code is not None else EXIT_PARSE
    if args.cache_dir:
        os.environ[schubert.CACHE_ENV_VAR] = args.cache_dir
    handlers = {
        "facets": _cmd_facets,
        "face-rays": _cmd_face_rays,
        "divisor": _cmd_divisor,
        "induct": _cmd_induct,
        "membership": _cmd_membership,
        "cone-rays": _cmd_cone_rays,
        "reproduce": _cmd_reproduce,
    }
    try:
        return handlers[args.command](args)
    except ParseFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, rays.OracleLimitError, cone.NotPointedError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
