"""Command-line front end: JSON in, JSON/DOT/text out.

Every randomized artifact embeds the seed, the field modulus, and a
confidence label; output is byte-identical for identical inputs and seed.
Exit codes: 0 success, 2 validation error, 3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .algebra_core import (
    TruncatedAlgebra,
    algebra_from_json,
    realizable,
    sequence_from_json,
    sequence_to_json,
    enumerate_sequences,
)
from .components import component_report, report_to_json
from .errors import EnumerationCapError, GenrepError, ValidationError
from .generic_builder import (
    bundle_report_to_json,
    bundle_tower,
    critical_report_json,
    generic_presentation,
    hypergraph,
    hypergraph_to_json,
    presentation_to_json,
)
from .homology import iterated_syzygy, profile_to_json, projdim_to_json, projective_dimension
from .matrix_rep import (
    RATIONALS,
    FieldSpec,
    distinguished_skeleta_of,
    decomposability,
    ext_dim_detail,
    generic_end_dim,
    generic_hom_dim,
    generic_socle,
    materialize,
    module_point_from_json,
    seeded_assignment,
)
from .skeleta import (
    DEFAULT_CAP,
    canonical_skeleton,
    count_skeleta,
    critical_paths,
    enumerate_skeleta,
    skeleton_to_json,
)

PAIR_SEED_OFFSET = 0x9E3779B9


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}") from None


def _algebra(args) -> TruncatedAlgebra:
    return algebra_from_json(_load_json(args.algebra))


def _sequence(args, alg):
    if getattr(args, "layers", None):
        try:
            rows = json.loads(args.layers)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed --layers value: {exc}") from None
        return sequence_from_json({"layers": rows}, alg)
    if getattr(args, "seq", None):
        return sequence_from_json(_load_json(args.seq), alg)
    raise ValidationError("a sequence is required (--seq FILE or --layers JSON)")


def _sequence2(args, alg):
    if getattr(args, "seq2", None):
        return sequence_from_json(_load_json(args.seq2), alg)
    return None


def _field(args) -> FieldSpec:
    if getattr(args, "exact", False):
        return RATIONALS
    if getattr(args, "modulus", None):
        return FieldSpec(args.modulus)
    return FieldSpec()


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("GENREP_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValidationError("GENREP_SEED must be an integer") from None
    return 0


def _seeds(args) -> tuple[int, int, int]:
    s = _seed(args)
    return (s, s + 1, s + 2)


def _dimvec(raw: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in raw.split(","))
    except ValueError:
        raise ValidationError(f"malformed dimension vector {raw!r}") from None


def _emit(data) -> int:
    print(json.dumps(data, indent=2))
    return 0


def _stamp(data: dict, args, fs: FieldSpec, confidence: str) -> dict:
    data["seed"] = _seed(args)
    data["field_modulus"] = fs.modulus
    data["confidence"] = confidence
    data["version"] = __version__
    return data


# ---------------------------------------------------------------------------
# DOT and text rendering
# ---------------------------------------------------------------------------

def _el_id(el) -> str:
    r, p = el
    return f"z{r}" + ("_" + "_".join(p.arrows) if p.arrows else "")


def skeleton_dot(alg, sk, with_critical=False, with_hyperedges=False,
                 presentation=None) -> str:
    lines = ["digraph skeleton {", '  rankdir=TB;']
    for el in sk.elements:
        lines.append(f'  "{_el_id(el)}" [label="{sk.end(el)}"];')
    for el in sk.elements:
        r, p = el
        if p.length == 0:
            continue
        parent = (r, p.initial_subpath(p.length - 1))
        lines.append(f'  "{_el_id(parent)}" -> "{_el_id(el)}" '
                     f'[label="{p.arrows[0]}", style=solid];')
    if with_critical or with_hyperedges:
        sets = critical_paths(alg, sk)
        for i, sset in enumerate(sets):
            crit = sset.critical
            cid = f"crit{i}"
            end = alg.path_end(crit.path(alg))
            lines.append(f'  "{cid}" [label="{end}"];')
            lines.append(f'  "{_el_id(crit.parent)}" -> "{cid}" '
                         f'[label="{crit.arrow}", style=dashed];')
            if with_hyperedges:
                members = sset.members
                if presentation is not None:
                    rel = presentation.relations[i]
                    members = tuple(mem for mem, _ in rel.terms)
                if not members:
                    continue
                hid = f"hyper{i}"
                lines.append(f'  "{hid}" [shape=point];')
                lines.append(f'  "{hid}" -> "{cid}" [style=dotted, dir=none];')
                for mem in members:
                    lines.append(f'  "{hid}" -> "{_el_id(mem)}" [style=dotted, dir=none];')
    lines.append("}")
    return "\n".join(lines)


def hasse_dot(report) -> str:
    lines = ["digraph dominance {", "  rankdir=BT;"]
    for i, S in enumerate(report.sequences):
        label = "|".join("".join(str(x) for x in row) for row in S.layers)
        lines.append(f'  "s{i}" [label="{label}"];')
    for lo, hi in report.poset.hasse_edges:
        lines.append(f'  "s{lo}" -> "s{hi}";')
    lines.append("}")
    return "\n".join(lines)


def skeleton_text(alg, sk) -> str:
    children: dict = {el: [] for el in sk.elements}
    roots = []
    for el in sk.elements:
        r, p = el
        if p.length == 0:
            roots.append(el)
        else:
            children[(r, p.initial_subpath(p.length - 1))].append(el)
    lines = []

    def walk(el, depth):
        r, p = el
        tag = f"z{r} <{sk.end(el)}>" if p.length == 0 else f"{p.arrows[0]} -> {sk.end(el)}"
        lines.append("  " * depth + tag)
        for child in children[el]:
            walk(child, depth + 1)

    for root in roots:
        walk(root, 0)
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_realizable(args):
    alg = _algebra(args)
    S = _sequence(args, alg)
    return _emit({"realizable": realizable(alg, S)})


def cmd_sequences(args):
    alg = _algebra(args)
    top = _dimvec(args.top) if args.top else None
    seqs = enumerate_sequences(alg, _dimvec(args.dimvec), top=top)
    return _emit({"count": len(seqs), "sequences": [sequence_to_json(S) for S in seqs]})


def cmd_skeleta(args):
    alg = _algebra(args)
    S = _sequence(args, alg)
    if args.count_only:
        return _emit({"count": count_skeleta(alg, S)})
    sks = enumerate_skeleta(alg, S, cap=args.cap)
    if args.format == "dot":
        if not 0 <= args.index < len(sks):
            raise ValidationError(f"skeleton index {args.index} out of range "
                                  f"(found {len(sks)})")
        print(skeleton_dot(alg, sks[args.index]))
        return 0
    if args.format == "text":
        for i, sk in enumerate(sks):
            print(f"# skeleton {i}")
            print(skeleton_text(alg, sk))
        return 0
    return _emit({"count": len(sks), "skeleta": [skeleton_to_json(sk) for sk in sks]})


def cmd_critical(args):
    alg = _algebra(args)
    S = _sequence(args, alg)
    sk = canonical_skeleton(alg, S)
    if args.format == "dot":
        print(skeleton_dot(alg, sk, with_critical=True))
        return 0
    return _emit(critical_report_json(alg, sk))


def cmd_generic(args):
    alg = _algebra(args)
    S = _sequence(args, alg)
    pres = generic_presentation(alg, S, graded=args.graded)
    if args.format == "dot":
        print(skeleton_dot(alg, pres.skeleton, with_critical=True,
                           with_hyperedges=True, presentation=pres))
        return 0
    return _emit(presentation_to_json(pres))


def cmd_hypergraph(args):
    alg = _algebra(args)
    S = _sequence(args, alg)
    pres = generic_presentation(alg, S, graded=args.graded)
    if args.format == "dot":
        print(skeleton_dot(alg, pres.skeleton, with_critical=True,
                           with_hyperedges=True, presentation=pres))
        return 0
    return _emit(hypergraph_to_json(hypergraph(pres)))


def cmd_geometry(args):
    alg = _algebra(args)
    S = _sequence(args, alg)
    return _emit(bundle_report_to_json(bundle_tower(alg, S)))


def cmd_syzygy(args):
    alg = _algebra(args)
    S = _sequence(args, alg)
    return _emit(profile_to_json(iterated_syzygy(alg, S, args.k)))


def cmd_projdim(args):
    alg = _algebra(args)
    S = _sequence(args, alg)
    return _emit(projdim_to_json(projective_dimension(alg, S)))


def cmd_socle(args):
    alg = _algebra(args)
    S = _sequence(args, alg)
    fs = _field(args)
    soc = generic_socle(alg, S, seeds=_seeds(args), fs=fs)
    return _emit(_stamp({"socle": list(soc)}, args, fs, "seeded-generic"))


def cmd_hom(args):
    alg = _algebra(args)
    S = _sequence(args, alg)
    S2 = _sequence2(args, alg)
    fs = _field(args)
    if S2 is None:
        value = generic_end_dim(alg, S, seeds=_seeds(args), fs=fs)
    else:
        value = generic_hom_dim(alg, S, S2, seeds=_seeds(args), fs=fs,
                                seed_offset=PAIR_SEED_OFFSET)
    return _emit(_stamp({"hom_dim": value}, args, fs, "seeded-generic"))


def cmd_ext(args):
    alg = _algebra(args)
    S = _sequence(args, alg)
    S2 = _sequence2(args, alg)
    fs = _field(args)
    seeds = _seeds(args)
    if S2 is None:
        # self-Ext: resolve G(S) against the same materialized module
        details = []
        for sd in seeds:
            pres = generic_presentation(alg, S)
            rep_n = materialize(pres, seeded_assignment(pres, sd, fs), fs)
            details.append(ext_dim_detail(alg, S, rep_n, args.k, [sd], fs))
        values = {d["value"] for d in details}
        if len(values) > 1:
            raise GenrepError(f"ext value varies across seeds: {details}")
        data = {"ext_dim": values.pop(), "k": args.k,
                "per_seed": [d["per_seed"][0] for d in details]}
    else:
        pres2 = generic_presentation(alg, S2)
        rep_n = materialize(
            pres2, seeded_assignment(pres2, _seed(args) + PAIR_SEED_OFFSET, fs), fs)
        detail = ext_dim_detail(alg, S, rep_n, args.k, seeds, fs)
        data = {"ext_dim": detail["value"], "k": args.k, "per_seed": detail["per_seed"]}
    return _emit(_stamp(data, args, fs, "seeded-generic"))


def cmd_decompose(args):
    alg = _algebra(args)
    S = _sequence(args, alg)
    fs = _field(args)
    v = decomposability(alg, S, graded=args.graded, seeds=_seeds(args), fs=fs)
    return _emit(_stamp({"verdict": v.verdict, "witness": v.witness},
                        args, fs, v.confidence))


def cmd_components(args):
    alg = _algebra(args)
    top = _dimvec(args.top) if args.top else None
    fs = _field(args)
    rep = component_report(alg, _dimvec(args.dimvec), top=top,
                           max_top_dim=args.max_top_dim, seeds=_seeds(args), fs=fs)
    if args.format == "dot":
        print(hasse_dot(rep))
        return 0
    data = report_to_json(rep)
    data["version"] = __version__
    return _emit(data)


def cmd_point_skeleta(args):
    alg = _algebra(args)
    fs = RATIONALS if not args.modulus else FieldSpec(args.modulus)
    rep = module_point_from_json(_load_json(args.module), alg, fs)
    sks = distinguished_skeleta_of(rep, cap=args.cap)
    return _emit({"count": len(sks), "skeleta": [skeleton_to_json(sk) for sk in sks]})


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genrep",
        description="Generic-module invariants of truncated path algebras.")
    parser.add_argument("--version", action="version", version=f"genrep {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seq=True):
        p.add_argument("--algebra", required=True, help="algebra JSON file")
        if seq:
            p.add_argument("--seq", help="semisimple sequence JSON file")
            p.add_argument("--layers", help="inline sequence, e.g. '[[1,1],[0,1],[1,0]]'")
        p.add_argument("--seed", type=int, default=None,
                       help="seed (fallback: GENREP_SEED, then 0)")
        p.add_argument("--modulus", type=int, default=None, help="prime field modulus")
        p.add_argument("--exact", action="store_true", help="exact rational arithmetic")
        p.add_argument("--format", choices=["json", "dot", "text"], default="json")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap")

    p = sub.add_parser("realizable", help="test realizability of a sequence")
    common(p)
    p.set_defaults(func=cmd_realizable)

    p = sub.add_parser("sequences", help="enumerate realizable sequences")
    common(p, seq=False)
    p.add_argument("--dimvec", required=True, help="comma-separated dimension vector")
    p.add_argument("--top", help="restrict to this top (comma-separated)")
    p.set_defaults(func=cmd_sequences)

    p = sub.add_parser("skeleta", help="enumerate compatible skeleta")
    common(p)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--index", type=int, default=0, help="skeleton index for DOT output")
    p.set_defaults(func=cmd_skeleta)

    p = sub.add_parser("critical", help="critical paths and sigma-sets")
    common(p)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("generic", help="generic projective presentation")
    common(p)
    p.add_argument("--graded", action="store_true")
    p.set_defaults(func=cmd_generic)

    p = sub.add_parser("hypergraph", help="hypergraph of the generic module")
    common(p)
    p.add_argument("--graded", action="store_true")
    p.add_argument("--dot", dest="format", action="store_const", const="dot")
    p.set_defaults(func=cmd_hypergraph)

    p = sub.add_parser("geometry", help="bundle-tower dimensions N, N0, N1")
    common(p)
    p.set_defaults(func=cmd_geometry)

    p = sub.add_parser("syzygy", help="iterated syzygy profile")
    common(p)
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_syzygy)

    p = sub.add_parser("projdim", help="generic projective dimension")
    common(p)
    p.set_defaults(func=cmd_projdim)

    p = sub.add_parser("socle", help="generic socle (seeded)")
    common(p)
    p.set_defaults(func=cmd_socle)

    p = sub.add_parser("hom", help="generic Hom / End dimension (seeded)")
    common(p)
    p.add_argument("--seq2", help="second sequence file (independent generic copy)")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("ext", help="generic Ext dimension (seeded, two methods at k=1)")
    common(p)
    p.add_argument("--seq2", help="second sequence file (independent generic copy)")
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("decompose", help="(in)decomposability verdict")
    common(p)
    p.add_argument("--graded", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("components", help="irreducible-component sifting report")
    common(p, seq=False)
    p.add_argument("--dimvec", required=True)
    p.add_argument("--top", help="restrict to this top (comma-separated)")
    p.add_argument("--max-top-dim", type=int, default=None)
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("point-skeleta", help="distinguished skeleta of a module point")
    common(p, seq=False)
    p.add_argument("--module", required=True, help="module point JSON file")
    p.set_defaults(func=cmd_point_skeleta)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except GenrepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
