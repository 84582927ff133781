"""Operator entry point: extract, preprocess, stats, export-json,
export-svg, serve.

Exit codes: 0 success, 1 operation error, 2 usage error. An optional JSON
config file supplies defaults; explicit flags override it.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from kgatlas.errors import KgError
from kgatlas.extraction import (
    HttpBackend,
    LowValueLexicon,
    StubBackend,
    extract_triplets,
    filter_low_value,
    group_and_select,
)
from kgatlas.graph import build_graph, compute_stats, graph_to_json
from kgatlas.ingest import (
    parse_abbreviations,
    parse_merge_map,
    parse_triplets,
    serialize_triplets,
)
from kgatlas.layout import LayoutConfig, run_layout
from kgatlas.model import AbbrevTable, MergeMap
from kgatlas.preprocess import (
    PipelineConfig,
    apply_merge_map,
    consolidate_rare_relations,
    deduplicate,
    propose_merge_candidates,
    run_pipeline,
)
from kgatlas.svg import RenderOptions, render_svg


def _add_common_io(p: argparse.ArgumentParser):
    p.add_argument("--input", required=True, help="input triples file")
    p.add_argument("--format", choices=["delimited", "json-lines"], default="delimited")
    p.add_argument("--tab", action="store_true", help="tab-delimited input/output")
    p.add_argument("--header", action="store_true", help="input has a header row")


def _delim(args) -> str:
    return "\t" if args.tab else ","


def _read_triples(args):
    data = Path(args.input).read_bytes()
    return parse_triplets(data, format=args.format, delimiter=_delim(args), has_header=args.header)


def _read_abbrev(path: Optional[str], delimiter: str) -> AbbrevTable:
    if not path:
        return AbbrevTable()
    return parse_abbreviations(Path(path).read_bytes(), delimiter=delimiter)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kgatlas", description=__doc__)
    parser.add_argument("--config", help="JSON config file; flags override its values")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="run triple extraction over a document")
    p.add_argument("--input", required=True, help="document text file")
    p.add_argument("--output", required=True, help="triples file to write")
    p.add_argument("--backend", default="stub", help="'stub' or a backend name for --endpoint")
    p.add_argument("--endpoint", help="HTTP extraction endpoint (required unless stub)")
    p.add_argument("--timeout", type=float, default=30.0)
    p.add_argument("--lexicon", help="low-value term file, one term per line")
    p.add_argument("--no-filter", action="store_true", help="skip low-value filtering")
    p.add_argument("--select-preferred", action="store_true",
                   help="keep one preferred candidate per (subject, predicate)")

    p = sub.add_parser("preprocess", help="run the four-stage cleaning pipeline")
    _add_common_io(p)
    p.add_argument("--output", required=True, help="cleaned triples file")
    p.add_argument("--report", help="pipeline report JSON path")
    p.add_argument("--merge-candidates", help="merge-proposal review file path")
    p.add_argument("--abbrev", help="abbreviation table file")
    p.add_argument("--merge-map", help="merge map file (variant,canonical)")
    p.add_argument("--min-relation-count", type=int, default=3)
    p.add_argument("--long-tail-action", choices=["drop", "relabel"], default="relabel")
    p.add_argument("--other-label", default="other")
    p.add_argument("--similarity-threshold", type=float, default=0.6)
    p.add_argument("--second-consolidation-pass", action="store_true")
    p.add_argument("--only-stage", type=int, choices=[1, 2, 3, 4],
                   help="run a single stage instead of the full pipeline")

    p = sub.add_parser("stats", help="print graph statistics")
    _add_common_io(p)
    p.add_argument("--abbrev", help="abbreviation table file")

    p = sub.add_parser("export-json", help="write the graph JSON payload")
    _add_common_io(p)
    p.add_argument("--output", required=True)
    p.add_argument("--abbrev", help="abbreviation table file")

    p = sub.add_parser("export-svg", help="render a static SVG of the graph")
    _add_common_io(p)
    p.add_argument("--output", required=True)
    p.add_argument("--abbrev", help="abbreviation table file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--width", type=float, default=800.0)
    p.add_argument("--height", type=float, default=600.0)
    p.add_argument("--no-labels", action="store_true")
    p.add_argument("--repulsion-strength", type=float, default=1000.0)
    p.add_argument("--spring-rest-length", type=float, default=60.0)
    p.add_argument("--spring-stiffness", type=float, default=0.08)
    p.add_argument("--centering-strength", type=float, default=0.05)
    p.add_argument("--velocity-decay", type=float, default=0.4)
    p.add_argument("--max-iterations", type=int, default=300)
    p.add_argument("--displacement-epsilon", type=float, default=0.1)

    p = sub.add_parser("serve", help="serve the HTTP API and UI bundle")
    _add_common_io(p)
    p.add_argument("--abbrev", help="abbreviation table file")
    p.add_argument("--addr", default=os.environ.get("KGATLAS_ADDR", "127.0.0.1"))
    p.add_argument("--port", type=int,
                   default=int(os.environ.get("KGATLAS_PORT", "8000")))
    p.add_argument("--static-dir", help="directory with the explorer UI bundle")

    return parser


def _apply_config_file(parser: argparse.ArgumentParser, argv: List[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if args.config:
        overrides = json.loads(Path(args.config).read_text())
        explicit = {a.lstrip("-").split("=")[0].replace("-", "_") for a in argv if a.startswith("--")}
        for key, value in overrides.items():
            attr = key.replace("-", "_")
            if hasattr(args, attr) and attr not in explicit:
                setattr(args, attr, value)
    return args


def cmd_extract(args) -> int:
    document = Path(args.input).read_text(encoding="utf-8")
    if args.backend == "stub":
        backend = StubBackend()
    else:
        if not args.endpoint:
            print("error: --endpoint is required for non-stub backends", file=sys.stderr)
            return 2
        backend = HttpBackend(name=args.backend, endpoint=args.endpoint, timeout=args.timeout)
    triples = extract_triplets(document, backend)
    if not args.no_filter:
        lexicon = (
            LowValueLexicon.from_stream(Path(args.lexicon).read_bytes())
            if args.lexicon else LowValueLexicon()
        )
        triples = filter_low_value(triples, lexicon)
    if args.select_preferred:
        triples = group_and_select(triples)
    Path(args.output).write_bytes(serialize_triplets(triples))
    print(f"wrote {len(triples)} triples to {args.output}")
    return 0


def cmd_preprocess(args) -> int:
    parsed = _read_triples(args)
    delimiter = _delim(args)
    abbrev = _read_abbrev(args.abbrev, delimiter)
    merge_map = (
        parse_merge_map(Path(args.merge_map).read_bytes(), delimiter=delimiter)
        if args.merge_map else MergeMap()
    )
    config = PipelineConfig(
        min_relation_count=args.min_relation_count,
        long_tail_action=args.long_tail_action,
        other_label=args.other_label,
        similarity_threshold=args.similarity_threshold,
        merge_map=merge_map,
        abbrev=abbrev,
        second_consolidation_pass=args.second_consolidation_pass,
    )

    if args.only_stage == 1:
        cleaned, _ = consolidate_rare_relations(
            parsed.triples, config.min_relation_count,
            config.long_tail_action, config.other_label,
        )
        report = None
    elif args.only_stage == 2:
        cleaned = apply_merge_map(parsed.triples, merge_map)
        report = None
    elif args.only_stage == 3:
        cleaned = deduplicate(parsed.triples)
        report = None
    elif args.only_stage == 4:
        from kgatlas.ingest import check_integrity

        cleaned = parsed.triples
        report = None
        integrity = check_integrity(cleaned, abbrev, parsed.rows_rejected)
        for warning in integrity.warnings:
            print(f"warning: {warning}", file=sys.stderr)
    else:
        cleaned, pipeline_report = run_pipeline(parsed.triples, config)
        report = pipeline_report.to_dict()
        report["rows_rejected"] = parsed.rows_rejected

    Path(args.output).write_bytes(
        serialize_triplets(cleaned, delimiter=delimiter, include_multiplicity=True)
    )
    if args.report and report is not None:
        Path(args.report).write_text(json.dumps(report, indent=2) + "\n")
    if args.merge_candidates:
        labels = sorted({t.key[1] for t in cleaned})
        proposals = propose_merge_candidates(labels, config.similarity_threshold)
        with open(args.merge_candidates, "w", newline="") as fh:
            writer = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
            for a, b, score in proposals:
                writer.writerow([a, b, f"{score:.6f}"])
    print(f"wrote {len(cleaned)} triples to {args.output}")
    return 0


def _graph_from_args(args):
    parsed = _read_triples(args)
    abbrev = _read_abbrev(getattr(args, "abbrev", None), _delim(args))
    triples = deduplicate(parsed.triples)
    return build_graph(triples, abbrev), abbrev


def cmd_stats(args) -> int:
    graph, _ = _graph_from_args(args)
    print(json.dumps(compute_stats(graph).to_dict(), indent=2))
    return 0


def cmd_export_json(args) -> int:
    graph, _ = _graph_from_args(args)
    Path(args.output).write_text(json.dumps(graph_to_json(graph), indent=2) + "\n")
    print(f"wrote graph payload to {args.output}")
    return 0


def cmd_export_svg(args) -> int:
    graph, _ = _graph_from_args(args)
    config = LayoutConfig(
        repulsion_strength=args.repulsion_strength,
        spring_rest_length=args.spring_rest_length,
        spring_stiffness=args.spring_stiffness,
        centering_strength=args.centering_strength,
        velocity_decay=args.velocity_decay,
        max_iterations=args.max_iterations,
        displacement_epsilon=args.displacement_epsilon,
        seed=args.seed,
    )
    result = run_layout(graph, config)
    options = RenderOptions(
        width=args.width, height=args.height, show_labels=not args.no_labels
    )
    Path(args.output).write_text(render_svg(graph, result.positions, options))
    print(
        f"wrote SVG to {args.output} "
        f"(converged={result.converged}, iterations={result.iterations})"
    )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from kgatlas.service import create_app

    graph, abbrev = _graph_from_args(args)
    app = create_app(graph, abbrev, static_dir=args.static_dir)
    uvicorn.run(app, host=args.addr, port=args.port, log_level="info")
    return 0


_COMMANDS = {
    "extract": cmd_extract,
    "preprocess": cmd_preprocess,
    "stats": cmd_stats,
    "export-json": cmd_export_json,
    "export-svg": cmd_export_svg,
    "serve": cmd_serve,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = _apply_config_file(parser, argv if argv is not None else sys.argv[1:])
    try:
        return _COMMANDS[args.command](args)
    except KgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
