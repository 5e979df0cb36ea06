"""Command-line surface: build, classify, rigidity, oracle, export.

Exit codes: 0 success, 2 validation or precondition failure, 3 budget
exhaustion or an unresolved (unknown) search, 4 internal invariant
violation.  All outputs are deterministic for a fixed seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import dot as dot_export
from . import jsonio
from .config import caps_from_env, set_caps
from .embeddings import (EmbeddingInstance, build_dual_construction,
                         build_sum_construction, classify)
from .errors import (BudgetExhaustedError, GrassmannLabError, InternalInvariantError,
                     ValidationError)
from .fields import GF
from .grassmannian import GrassmannianSpec
from .independence import Ambient, canonical_simplex, search_m_independent
from .jsonio import dump_json, load_json
from .linalg import identity, nullspace
from .oracle import SearchConfig, cross_validate, enumerate_embeddings
from .rigidity import is_rigid
from .subspaces import Subspace, annihilator, from_coords_in, lift_from_quotient

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


class UnknownOutcome(GrassmannLabError):
    """A search ended without a certificate either way (exit 3)."""


def _field(args) -> GF:
    return GF.get(args.p, args.e)


def _basis_line(field: GF, n: int, i: int) -> Subspace:
    return Subspace.line(field, tuple(1 if j == i else 0 for j in range(n)))


def _span_of_first(field: GF, n: int, count: int) -> Subspace:
    return Subspace.from_rows(field, n, identity(n)[:count])


def _search_points(field: GF, dim: int, independence: int, size: int,
                   budget: int):
    result = search_m_independent(Ambient("primal", field, dim),
                                  min(independence, size), size, budget)
    if result.status == "infeasible":
        raise ValidationError(
            f"no {min(independence, size)}-independent set of {size} points exists "
            f"in dimension {dim} over GF({field.q})")
    if result.status == "unknown":
        raise UnknownOutcome(
            f"point search exhausted its budget of {budget} nodes without a certificate")
    return result.points


def _load_pointset_rows(path: str, field: GF, dim: int):
    ps = jsonio.pointset_from_json(load_json(path))
    if ps.ambient.field != field:
        raise ValidationError(f"point set field {ps.ambient.field} does not match --p/--e")
    if ps.ambient.dim != dim:
        raise ValidationError(
            f"point set coordinate dimension {ps.ambient.dim}, expected {dim}")
    return [p.rows[0] for p in ps.points]


def cmd_build(args) -> int:
    field = _field(args)
    n, k = args.n, args.k
    if args.kind == "apartment":
        frame = [_basis_line(field, n, i) for i in range(n)]
        if 2 * k <= n:
            inst = build_sum_construction(Subspace.zero(field, n), frame, k)
        else:
            hyperplanes = [annihilator(p) for p in frame]
            inst = build_dual_construction(Subspace.full(field, n), hyperplanes, k)
    elif args.kind == "simplex-faces":
        if 2 * k <= n:
            pts = canonical_simplex(field, n, n).points
            gens = [Subspace(field, n, p.rows) for p in pts]
            inst = build_sum_construction(Subspace.zero(field, n), gens, k)
        else:
            pts = canonical_simplex(field, n, n).points
            hyperplanes = [annihilator(Subspace(field, n, p.rows)) for p in pts]
            inst = build_dual_construction(Subspace.full(field, n), hyperplanes, k)
    elif args.kind == "sum":
        m = args.m if args.m is not None else k
        if not 1 < m <= k:
            raise ValidationError(f"sum construction needs 1 < m <= k, got m={m}")
        base = _span_of_first(field, n, k - m)
        quot_dim = n - (k - m)
        if args.points:
            rows = _load_pointset_rows(args.points, field, quot_dim)
        else:
            if args.l is None:
                raise ValidationError("sum construction needs --l or --points")
            found = _search_points(field, quot_dim, 2 * m, args.l, args.budget)
            rows = [p.rows[0] for p in found.points]
        gens = [lift_from_quotient(base, (row,)) for row in rows]
        inst = build_sum_construction(base, gens, k)
    elif args.kind == "dual":
        m = args.m if args.m is not None else n - k
        if not 1 < m <= k:
            raise ValidationError(f"dual construction needs 1 < m <= k, got m={m}")
        cover = _span_of_first(field, n, k + m)
        if args.points:
            rows = _load_pointset_rows(args.points, field, k + m)
        elif args.l is None or args.l == k + m + 1:
            pts = canonical_simplex(field, k + m, k + m)
            rows = [p.rows[0] for p in pts.points]
        else:
            found = _search_points(field, k + m, 2 * m, args.l, args.budget)
            rows = [p.rows[0] for p in found.points]
        gens = [from_coords_in(cover, nullspace(field, (row,), k + m)) for row in rows]
        inst = build_dual_construction(cover, gens, k)
    else:  # pragma: no cover - argparse restricts choices
        raise ValidationError(f"unknown build kind {args.kind}")
    text = dump_json(jsonio.embedding_to_json(inst), args.output)
    if not args.output:
        print(text)
    return EXIT_OK


def _load_embedding_or_classification(path: str):
    obj = load_json(path)
    if "map" in obj:
        return jsonio.embedding_from_json(obj)
    if "case" in obj:
        return jsonio.classification_from_json(obj)
    raise ValidationError(f"{path}: neither an embedding nor a classification document")


def cmd_classify(args) -> int:
    loaded = _load_embedding_or_classification(args.input)
    cls = loaded if not isinstance(loaded, EmbeddingInstance) else classify(loaded)
    text = dump_json(jsonio.classification_to_json(cls), args.output)
    if not args.output:
        print(text)
    return EXIT_OK


def cmd_rigidity(args) -> int:
    loaded = _load_embedding_or_classification(args.input)
    report = is_rigid(loaded, seed=args.seed)
    text = dump_json(jsonio.rigidity_report_to_json(report, args.dump_certificates),
                     args.output)
    if not args.output:
        print(text)
    if report.is_rigid is None:
        raise UnknownOutcome("some extension searches ended unresolved")
    return EXIT_OK


def cmd_oracle(args) -> int:
    cfg = SearchConfig(l=args.l, m=args.m, n=args.n, k=args.k, p=args.p, e=args.e,
                       budget=args.budget, symmetry_reduction=args.symmetry_reduction,
                       jobs=args.jobs)
    result = enumerate_embeddings(cfg)
    if args.jsonl:
        with open(args.jsonl, "w", encoding="utf-8") as handle:
            for image in sorted(result.images):
                handle.write(json.dumps(
                    {"ids": list(image),
                     "rows": [[list(r) for r in result.spec.by_id(i).rows]
                              for i in image]}) + "\n")
    report = cross_validate(cfg, result)
    text = dump_json(report.summary(), args.output)
    if not args.output:
        print(text)
    if not report.complete:
        raise BudgetExhaustedError(
            f"enumeration exceeded the budget of {cfg.budget} nodes")
    if not report.ok:
        raise InternalInvariantError("cross-validation failed; see failures in the summary")
    return EXIT_OK


def cmd_export(args) -> int:
    if args.format == "json":
        if args.graph != "grassmann":
            raise ValidationError("json export provides Grassmannian index tables; "
                                  "use --graph grassmann")
        spec = GrassmannianSpec(_field(args), args.n, args.k)
        text = dump_json(jsonio.index_table_to_json(spec), args.dot)
        if not args.dot:
            print(text)
        return EXIT_OK
    if args.input:
        loaded = _load_embedding_or_classification(args.input)
        image = loaded.image
        text = dot_export.induced_dot(image)
    elif args.graph == "johnson":
        if args.l is None or args.m is None:
            raise ValidationError("johnson export needs --l and --m")
        text = dot_export.johnson_dot(args.l, args.m)
    elif args.graph == "grassmann":
        spec = GrassmannianSpec(_field(args), args.n, args.k)
        text = dot_export.grassmann_dot(spec)
    else:
        raise ValidationError("export needs --input or --graph")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        print(text, end="")
    return EXIT_OK


def _add_field_args(parser, require_nk: bool = True):
    parser.add_argument("--p", type=int, required=True, help="field characteristic")
    parser.add_argument("--e", type=int, default=1, help="field extension degree")
    parser.add_argument("--n", type=int, required=require_nk, help="ambient dimension")
    parser.add_argument("--k", type=int, required=require_nk, help="subspace dimension")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grassmann-lab",
        description="Exact workbench for Johnson-graph images in Grassmann graphs "
                    "over finite fields.")
    parser.add_argument("--q-cap", type=int, help="override the field order cap")
    parser.add_argument("--n-cap", type=int, help="override the ambient dimension cap")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="construct a verified embedding")
    p_build.add_argument("kind", choices=["sum", "dual", "apartment", "simplex-faces"])
    _add_field_args(p_build)
    p_build.add_argument("--m", type=int, help="Johnson subset size (defaults per kind)")
    p_build.add_argument("--l", type=int, help="ground set size")
    p_build.add_argument("--points", help="point set JSON for the generators")
    p_build.add_argument("--budget", type=int, default=2_000_000,
                         help="node budget for generator search")
    p_build.add_argument("--output", help="write the embedding JSON here")
    p_build.set_defaults(func=cmd_build)

    p_classify = sub.add_parser("classify", help="classify an embedding or image")
    p_classify.add_argument("--input", required=True)
    p_classify.add_argument("--output")
    p_classify.set_defaults(func=cmd_classify)

    p_rig = sub.add_parser("rigidity", help="test extendability of all automorphisms")
    p_rig.add_argument("--input", required=True)
    p_rig.add_argument("--output")
    p_rig.add_argument("--seed", type=int, default=0,
                       help="seed for randomized solver fallbacks")
    p_rig.add_argument("--dump-certificates", action="store_true",
                       help="include infeasibility diagnostics (rank defects)")
    p_rig.set_defaults(func=cmd_rigidity)

    p_oracle = sub.add_parser("oracle", help="exhaustively enumerate embeddings")
    _add_field_args(p_oracle)
    p_oracle.add_argument("--l", type=int, required=True)
    p_oracle.add_argument("--m", type=int, required=True)
    p_oracle.add_argument("--budget", type=int, default=10_000_000)
    p_oracle.add_argument("--jobs", type=int, default=1)
    p_oracle.add_argument("--symmetry-reduction", action="store_true")
    p_oracle.add_argument("--jsonl", help="stream images to this JSON-lines file")
    p_oracle.add_argument("--output", help="write the summary JSON here")
    p_oracle.set_defaults(func=cmd_oracle)

    p_export = sub.add_parser("export", help="emit DOT graphs")
    p_export.add_argument("--input", help="embedding or classification JSON")
    p_export.add_argument("--graph", choices=["grassmann", "johnson"])
    p_export.add_argument("--p", type=int)
    p_export.add_argument("--e", type=int, default=1)
    p_export.add_argument("--n", type=int)
    p_export.add_argument("--k", type=int)
    p_export.add_argument("--l", type=int)
    p_export.add_argument("--m", type=int)
    p_export.add_argument("--format", choices=["dot", "json"], default="dot",
                          help="dot graphs, or the json index table of a Grassmannian")
    p_export.add_argument("--dot", help="write the output here instead of stdout")
    p_export.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    caps_from_env()
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.q_cap or args.n_cap:
        set_caps(q_max=args.q_cap, n_max=args.n_cap)
    try:
        return args.func(args)
    except (BudgetExhaustedError, UnknownOutcome) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except GrassmannLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
