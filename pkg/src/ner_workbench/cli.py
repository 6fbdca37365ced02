"""Batch driver: annotate a corpus headlessly, inspect stats, export, serve.

Exit codes are stable for scripting: 0 success, 1 domain error, 2 usage.
Analytics printed as JSON are byte-compatible with the HTTP API payloads;
tables are ASCII-aligned with double-width CJK columns taken into account.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import unicodedata
from pathlib import Path

from ner_workbench import backends, charts, exporter, model, store
from ner_workbench.analytics import DisplayFilter
from ner_workbench.errors import WorkbenchError

DEFAULT_STORE = "projects"


def display_width(text: str) -> int:
    return sum(2 if unicodedata.east_asian_width(ch) in ("W", "F") else 1 for ch in text)


def format_table(headers: list[str], rows: list[list[str]]) -> str:
    table = [headers] + rows
    widths = [max(display_width(row[i]) for row in table) for i in range(len(headers))]
    lines = []
    for row in table:
        cells = [
            cell + " " * (widths[i] - display_width(cell)) for i, cell in enumerate(row)
        ]
        lines.append("  ".join(cells).rstrip())
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _gather_inputs(paths: list[str]) -> list[Path]:
    files: list[Path] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            files.extend(sorted(path.glob("*.txt")))
        elif path.exists():
            files.append(path)
        else:
            raise WorkbenchError(f"input {raw!r} does not exist")
    return files


def _filter_from_args(args: argparse.Namespace) -> DisplayFilter:
    selected = None
    if args.ids:
        selected = frozenset(i for i in args.ids.split(",") if i)
    return DisplayFilter(
        mode=args.mode or "instance",
        selected_ids=selected,
        apply_alias=args.apply_alias,
    )


def _print_frequency_table(payload: dict) -> None:
    rows = [
        [
            r["instance_id"],
            r["surface"],
            r["class_label"],
            str(r["frequency"]),
            str(r["display_frequency"]),
            "" if r["alias"] is None else f"{r['alias']['name']} ({r['alias']['frequency']})",
        ]
        for r in payload["rows"]
    ]
    print(format_table(["ID", "Entity", "Class", "Freq", "Shown", "Alias"], rows))


def cmd_annotate(args: argparse.Namespace) -> int:
    files = _gather_inputs(args.inputs)
    if not files:
        print("no documents", file=sys.stderr)
        return 1
    project = model.new_project(args.project_id)
    for path in files:
        try:
            text = path.read_text(encoding="utf-8-sig")
        except UnicodeDecodeError as exc:
            raise WorkbenchError(f"{path}: not UTF-8: {exc}")
        model.add_document(project, path.name, text, max_documents=args.max_documents)

    if args.dict:
        definition = backends.parse_definition_csv(Path(args.dict).read_bytes())
        backends.apply_definition(project, definition, replace=args.replace)
    if args.predictions:
        backend = backends.load_predictions(Path(args.predictions).read_bytes())
        backends.run_auto_annotation(project, backend)
    elif args.backend == "gazetteer":
        backends.run_auto_annotation(project, backends.GazetteerBackend(project))
    elif args.backend == "external":
        if not args.annotator_url:
            raise WorkbenchError("--backend external needs --annotator-url")
        backends.run_auto_annotation(project, backends.ExternalBackend(args.annotator_url))

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    store.save_snapshot(project, out / "project.json")
    tables = {}
    for doc in project.documents_in_order():
        bundle = exporter.export_document(project, doc.doc_id)
        target = out / doc.doc_id
        target.mkdir(parents=True, exist_ok=True)
        (target / "data.zip").write_bytes(bundle.zip_bytes())
        tables[doc.doc_id] = charts.frequency_payload(
            project, doc.doc_id, None, sort_by_frequency=True
        )

    if args.format == "json":
        print(json.dumps(
            {"project_id": project.project_id, "documents": sorted(tables), "tables": tables},
            ensure_ascii=False,
            indent=2,
        ))
    else:
        for doc_id, payload in tables.items():
            print(f"\n# {doc_id}")
            _print_frequency_table(payload)
    return 0


def _load_project(args: argparse.Namespace) -> model.Project:
    candidate = Path(args.project)
    if candidate.is_file():
        return store.load_snapshot(candidate)
    return store.ProjectStore(args.store_root).load(args.project)


def cmd_stats(args: argparse.Namespace) -> int:
    project = _load_project(args)
    flt = _filter_from_args(args)
    if args.chart == "series":
        if not args.target:
            raise WorkbenchError("--chart series needs --target")
        payload = charts.series_payload(project, args.target)
    elif args.chart == "overview":
        payload = charts.overview_payload(project, _doc_or_fail(args))
    elif args.chart == "positions":
        payload = charts.positions_payload(project, _doc_or_fail(args), flt)
    else:
        payload = charts.frequency_payload(
            project, _doc_or_fail(args), flt, args.sort_by_frequency
        )

    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False, indent=2))
        return 0
    if args.chart == "series":
        rows = [[p["doc_id"], str(p["frequency"])] for p in payload["points"]]
        print(format_table(["Document", "Freq"], rows))
    elif args.chart == "overview":
        rows = [[c["class_label"], str(c["distinct_instances"])] for c in payload["classes"]]
        print(format_table(["Class", "Instances"], rows))
    elif args.chart == "positions":
        rows = [[p["instance_id"], p["surface"], str(p["start"])] for p in payload["points"]]
        print(format_table(["ID", "Entity", "Start"], rows))
    else:
        _print_frequency_table(payload)
    return 0


def _doc_or_fail(args: argparse.Namespace) -> str:
    if not args.doc:
        raise WorkbenchError("this chart needs --doc")
    return args.doc


def cmd_export(args: argparse.Namespace) -> int:
    project = _load_project(args)
    doc_ids = [args.doc] if args.doc else [d.doc_id for d in project.documents_in_order()]
    out = Path(args.out)
    for doc_id in doc_ids:
        bundle = exporter.export_document(project, doc_id)
        target = out / doc_id
        target.mkdir(parents=True, exist_ok=True)
        (target / "data.zip").write_bytes(bundle.zip_bytes())
        print(f"wrote {target / 'data.zip'}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from ner_workbench.api import ServeConfig, serve

    config = ServeConfig(
        host=args.host,
        port=args.port if args.port is not None else int(os.environ.get("NER_WB_PORT", 8765)),
        store_root=Path(
            args.store_root
            if args.store_root != DEFAULT_STORE
            else os.environ.get("NER_WB_STORE", DEFAULT_STORE)
        ),
        annotator_url=args.annotator_url or os.environ.get("NER_WB_ANNOTATOR"),
        max_documents=args.max_documents,
        ui_dir=Path(args.ui) if args.ui else None,
    )
    serve(config)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ner-workbench",
        description="entity annotation workbench for Chinese corpora",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--store-root", default=DEFAULT_STORE, help="snapshot directory")
    common.add_argument("--format", choices=("table", "json"), default="table")

    annotate = sub.add_parser("annotate", parents=[common], help="batch-annotate documents")
    annotate.add_argument("--in", dest="inputs", nargs="+", required=True,
                          help="TXT files or directories of TXT files")
    annotate.add_argument("--dict", help="class-definition CSV to apply")
    annotate.add_argument("--replace", action="store_true",
                          help="wipe non-definition instances before applying the dictionary")
    annotate.add_argument("--backend", choices=("none", "gazetteer", "external"), default="none")
    annotate.add_argument("--annotator-url")
    annotate.add_argument("--predictions", help="offline predictions JSON file")
    annotate.add_argument("--out", required=True, help="output directory for bundles")
    annotate.add_argument("--project-id", default="cli")
    annotate.add_argument("--max-documents", type=int, default=100)
    annotate.set_defaults(func=cmd_annotate)

    stats = sub.add_parser("stats", parents=[common], help="print analytics for a saved project")
    stats.add_argument("project", help="snapshot path or project id under --store-root")
    stats.add_argument("--doc")
    stats.add_argument("--chart", choices=("frequency", "overview", "positions", "series"),
                       default="frequency")
    stats.add_argument("--mode", choices=("instance", "class", "group", "alias"))
    stats.add_argument("--ids", help="comma-separated ids for --mode")
    stats.add_argument("--apply-alias", action="store_true")
    stats.add_argument("--sort-by-frequency", action="store_true")
    stats.add_argument("--target", help="instance id or alias name for --chart series")
    stats.set_defaults(func=cmd_stats)

    export = sub.add_parser("export", parents=[common], help="write data.zip bundles")
    export.add_argument("project", help="snapshot path or project id under --store-root")
    export.add_argument("--doc", help="export one document instead of all")
    export.add_argument("--out", required=True)
    export.set_defaults(func=cmd_export)

    serve = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=None)
    serve.add_argument("--annotator-url")
    serve.add_argument("--max-documents", type=int, default=100)
    serve.add_argument("--ui", help="directory of built frontend assets to serve at /")
    serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except WorkbenchError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
