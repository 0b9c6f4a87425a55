"""Command-line pipeline over one analysis workspace.

Each subcommand reads its declared inputs from the workspace and writes
its declared outputs, so individual analyses are re-runnable in
isolation.  A stage whose inputs are missing exits with code 2 and
names the prerequisite subcommand.  Exit codes: 0 success, 1 usage
error, 2 missing prerequisite stage, 3 backend/adapter failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__, corpus, relevance
from .backends import (
    ArgumentLabel,
    BackendError,
    Lexicon,
    ReferenceBackend,
    classify as classify_op,
    default_lexicon,
    detect_aspects,
    eval_f1,
    eval_kappa,
    launch_adapter,
)
from .clustering import ClusterSet, cluster_arguments
from .corpus import Workspace, ingest_file
from .deliberation import dis as dis_fn, dis_ccdf, profile_subset
from .report_export import (
    EXPORT_FORMATS,
    args_vs_size,
    csv_text,
    distribution_csv,
    export_thread,
    length_ccdf,
    stance_histogram,
    upvote_distribution,
)
from .relevance import BUILTIN_TOPICS, ThreadSubset, TopicConfig, filter_by_min_posts, select_threads
from .threadgraph import build_graph, compute_metrics, postrank, stance_dependence

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISSING_STAGE = 2
EXIT_BACKEND = 3


class StageError(Exception):
    """A prerequisite stage has not produced its outputs yet."""

    def __init__(self, message: str, prerequisite: str):
        super().__init__(message)
        self.prerequisite = prerequisite


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we reserve that
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parallel_map(fn, items, jobs: int):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# -- workspace plumbing --------------------------------------------------------


def _load_topic(ws: Workspace, spec: str) -> TopicConfig:
    """Topic from a JSON path, a workspace topic name, or a built-in."""
    path = Path(spec)
    if path.exists():
        return TopicConfig.from_dict(ws.read_json(path))
    ws_path = ws.topics_dir / f"{spec}.json"
    if ws_path.exists():
        return TopicConfig.from_dict(ws.read_json(ws_path))
    if spec in BUILTIN_TOPICS:
        return BUILTIN_TOPICS[spec]()
    raise FileNotFoundError(f"no topic file or built-in topic named {spec!r}")


def _save_topic(ws: Workspace, topic: TopicConfig) -> Path:
    path = ws.topics_dir / f"{topic.topic_name}.json"
    ws.write_json(path, topic.to_dict())
    return path


def _current_topic(ws: Workspace, args) -> TopicConfig:
    spec = getattr(args, "topic", None) or ws.load_config().get("default_topic")
    if not spec:
        raise StageError("no topic configured; run the filter stage first", "filter")
    try:
        return _load_topic(ws, spec)
    except FileNotFoundError:
        raise StageError(f"topic {spec!r} not found in workspace; run the filter stage", "filter")


def _subset_label(ws: Workspace, args) -> str:
    label = getattr(args, "subset", None) or ws.load_config().get("default_subset")
    if not label:
        raise StageError("no thread subset selected; run the filter stage first", "filter")
    return label


def _load_subset(ws: Workspace, label: str) -> ThreadSubset:
    path = ws.subsets_dir / f"{label}.json"
    if not path.exists():
        raise StageError(f"subset {label!r} not found; run the filter stage", "filter")
    return ThreadSubset.from_dict(ws.read_json(path))


def _require_ingested(ws: Workspace) -> None:
    if not ws.is_ingested():
        raise StageError("workspace has no ingested corpus; run the ingest stage", "ingest")


def _labels_path(ws: Workspace, label: str) -> Path:
    return ws.labels_dir / f"{label}.jsonl"


def _save_labels(ws: Workspace, label: str, labels: list[ArgumentLabel]) -> Path:
    path = _labels_path(ws, label)
    text = "".join(
        json.dumps(l.to_dict(), sort_keys=True) + "\n"
        for l in sorted(labels, key=lambda l: l.post_id)
    )
    ws.write_text(path, text)
    return path


def _load_labels(ws: Workspace, label: str) -> dict[str, ArgumentLabel]:
    path = _labels_path(ws, label)
    if not path.exists():
        raise StageError(f"no labels for subset {label!r}; run the classify stage", "classify")
    out = {}
    for line in path.read_text("utf-8").splitlines():
        if line.strip():
            lab = ArgumentLabel.from_dict(json.loads(line))
            out[lab.post_id] = lab
    return out


def _load_lexicon(ws: Workspace) -> Lexicon:
    try:
        return Lexicon.load(ws.lexicons_dir)
    except FileNotFoundError:
        lex = default_lexicon()
        lex.save(ws.lexicons_dir)
        return lex


def _make_backend(ws: Workspace, args):
    """Backend per --backend: the built-in deterministic one, or an adapter
    child process from --adapter-cmd."""
    choice = getattr(args, "backend", None) or ws.load_config().get("backend", "lexicon")
    if choice == "lexicon":
        return ReferenceBackend(lexicon=_load_lexicon(ws))
    cmd = getattr(args, "adapter_cmd", None) or ws.load_config().get("adapter_cmd")
    if not cmd:
        raise BackendError("--backend adapter requires --adapter-cmd (or adapter_cmd in config)")
    return launch_adapter(cmd, timeout=args.timeout, batch_size=args.batch_size)


def _classification_aspects(topic: TopicConfig) -> list[relevance.Aspect]:
    """The topic itself anchors arguments too, so it participates as the
    first candidate aspect ahead of the configured ones."""
    topic_aspect = relevance.Aspect(
        name=topic.topic_name, keywords=list(topic.topic_keywords), provenance="expert"
    )
    return [topic_aspect] + list(topic.aspects)


def _subset_posts(ws: Workspace, subset: ThreadSubset) -> dict[str, list[corpus.Post]]:
    groups = ws.posts_by_thread()
    return {tid: groups[tid] for tid in sorted(subset.thread_ids) if tid in groups}


# -- stages ---------------------------------------------------------------------


def cmd_ingest(ws: Workspace, args) -> int:
    field_map = json.loads(args.field_map) if args.field_map else None
    stats = ingest_file(
        ws,
        args.input,
        orphan_policy=args.orphan_policy,
        salt=args.salt,
        field_map=field_map,
    )
    _load_lexicon(ws)  # materialize editable default lexicons alongside the corpus
    print(json.dumps(stats.to_dict(), sort_keys=True))
    return EXIT_OK


def cmd_filter(ws: Workspace, args) -> int:
    _require_ingested(ws)
    try:
        topic = _load_topic(ws, args.topic)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _save_topic(ws, topic)

    subset = select_threads(ws.iter_posts(), topic, label=args.label)
    ws.write_json(ws.subsets_dir / f"{subset.label}.json", subset.to_dict())
    print(f"{subset.label}: {len(subset)} threads")
    final_label = subset.label
    if args.min_posts is not None:
        sizes = {tid: meta["n_posts"] for tid, meta in ws.thread_index().items()}
        filtered = filter_by_min_posts(subset, args.min_posts, sizes)
        ws.write_json(ws.subsets_dir / f"{filtered.label}.json", filtered.to_dict())
        print(f"{filtered.label}: {len(filtered)} threads")
        final_label = filtered.label

    cfg = ws.load_config()
    cfg["default_topic"] = topic.topic_name
    cfg["default_subset"] = final_label
    ws.save_config(cfg)
    return EXIT_OK


def cmd_aspects(ws: Workspace, args) -> int:
    _require_ingested(ws)
    label = _subset_label(ws, args)
    subset = _load_subset(ws, label)
    topic = _current_topic(ws, args)
    backend = _make_backend(ws, args)
    try:
        index = ws.thread_index()
        roots = []
        by_thread = _subset_posts(ws, subset)
        for tid, posts in by_thread.items():
            root_id = index[tid]["root_id"]
            roots.extend(p for p in posts if p.post_id == root_id)
        found = detect_aspects(roots, args.min_count, backend)
    finally:
        if hasattr(backend, "close"):
            backend.close()

    known = {a.name.casefold() for a in topic.aspects} | {topic.topic_name.casefold()}
    added = [a for a in found if a.name.casefold() not in known]
    topic.aspects.extend(added)
    _save_topic(ws, topic)
    for aspect in found:
        marker = "+" if aspect in added else "="
        print(f"{marker} {aspect.name} ({', '.join(aspect.keywords)})")
    print(f"{len(added)} new aspects added to topic {topic.topic_name!r}")
    return EXIT_OK


def cmd_classify(ws: Workspace, args) -> int:
    _require_ingested(ws)
    label = _subset_label(ws, args)
    subset = _load_subset(ws, label)
    topic = _current_topic(ws, args)
    aspects = _classification_aspects(topic)
    posts = [p for group in _subset_posts(ws, subset).values() for p in group]
    backend = _make_backend(ws, args)
    try:
        labels = classify_op(posts, aspects, backend)
    except BackendError as exc:
        if exc.partial:
            _save_labels(ws, label, list(exc.partial))
            print(f"kept {len(exc.partial)} labels from the processed prefix", file=sys.stderr)
        raise
    finally:
        if hasattr(backend, "close"):
            backend.close()
    path = _save_labels(ws, label, labels)
    n_arg = sum(1 for l in labels if l.is_argumentative)
    print(f"{path}: {len(labels)} labels, {n_arg} argumentative (backend {backend.backend_id})")
    return EXIT_OK


def cmd_cluster(ws: Workspace, args) -> int:
    _require_ingested(ws)
    label = _subset_label(ws, args)
    subset = _load_subset(ws, label)
    labels = _load_labels(ws, label)
    backend = _make_backend(ws, args)
    by_thread = _subset_posts(ws, subset)
    stances = {pid: l.stance for pid, l in labels.items()}

    def thread_args(posts):
        return [
            (p.post_id, p.text)
            for p in posts
            if p.post_id in labels and labels[p.post_id].is_argumentative
        ]

    try:
        def run_one(tid):
            return tid, cluster_arguments(
                thread_args(by_thread[tid]),
                backend,
                threshold=args.threshold,
                mode=args.mode,
                counted_singletons=args.count_singletons,
                stances=stances,
            )

        per_thread = dict(_parallel_map(run_one, sorted(by_thread), args.jobs))
        doc = {
            "subset": label,
            "mode": args.mode,
            "threshold": args.threshold,
            "counted_singletons": args.count_singletons,
            "threads": {tid: cs.to_dict() for tid, cs in per_thread.items()},
            "global": None,
        }
        if args.scope == "global":
            all_args = [a for tid in sorted(by_thread) for a in thread_args(by_thread[tid])]
            doc["global"] = cluster_arguments(
                all_args,
                backend,
                threshold=args.threshold,
                mode=args.mode,
                counted_singletons=args.count_singletons,
                stances=stances,
            ).to_dict()
    finally:
        if hasattr(backend, "close"):
            backend.close()

    path = ws.clusters_dir / f"{label}.json"
    ws.write_json(path, doc)
    multi = sum(len(cs.clusters) for cs in per_thread.values())
    print(f"{path}: {len(per_thread)} threads, {multi} multi-member clusters")
    return EXIT_OK


def _load_cluster_sets(ws: Workspace, label: str) -> dict[str, ClusterSet]:
    path = ws.clusters_dir / f"{label}.json"
    if not path.exists():
        raise StageError(f"no clusters for subset {label!r}; run the cluster stage", "cluster")
    doc = ws.read_json(path)
    return {tid: ClusterSet.from_dict(d) for tid, d in doc.get("threads", {}).items()}


def _subset_graphs(ws: Workspace, subset: ThreadSubset):
    for tid, posts in _subset_posts(ws, subset).items():
        yield build_graph(posts)


def cmd_metrics(ws: Workspace, args) -> int:
    _require_ingested(ws)
    label = _subset_label(ws, args)
    subset = _load_subset(ws, label)
    labels = _load_labels(ws, label)
    by_thread = _subset_posts(ws, subset)

    def run_one(tid):
        graph = build_graph(by_thread[tid])
        return tid, compute_metrics(graph, labels)

    rows = []
    for tid, m in _parallel_map(run_one, sorted(by_thread), args.jobs):
        rows.append((tid, m.n_posts, m.n_argumentative, m.depth, m.fan_out, m.sub_threads, m.avg_degree))
    path = ws.metrics_dir / "threads.csv"
    ws.write_text(
        path,
        csv_text(
            ["thread_id", "n_posts", "n_argumentative", "depth", "fan_out", "sub_threads", "avg_degree"],
            rows,
        ),
    )
    print(f"{path}: {len(rows)} threads")
    return EXIT_OK


def cmd_dis(ws: Workspace, args) -> int:
    _require_ingested(ws)
    label = _subset_label(ws, args)
    subset = _load_subset(ws, label)
    labels = _load_labels(ws, label)
    cluster_sets = _load_cluster_sets(ws, label)

    sizes = {tid: meta["n_posts"] for tid, meta in ws.thread_index().items()}
    labels_by_thread: dict[str, list[ArgumentLabel]] = {}
    for tid, posts in _subset_posts(ws, subset).items():
        labels_by_thread[tid] = [labels[p.post_id] for p in posts if p.post_id in labels]

    result = profile_subset(subset.thread_ids, sizes, labels_by_thread, cluster_sets)
    rows = [
        (p.thread_id, p.n_posts, p.n_arguments, p.n_clusters, p.d_cluster, p.d_arg, p.sigma1, p.sigma2, p.dis)
        for p in result.profiles
    ]
    path = ws.metrics_dir / "deliberation.csv"
    ws.write_text(
        path,
        csv_text(
            ["thread_id", "n_posts", "n_arguments", "n_clusters", "d_cluster", "d_arg", "sigma1", "sigma2", "dis"],
            rows,
        ),
    )
    ccdf_path = ws.reports_dir / "dis_ccdf.csv"
    ws.write_text(ccdf_path, csv_text(["x", "ccdf"], dis_ccdf(result.profiles)))
    print(f"{path}: {len(rows)} profiles ({result.skipped} threads skipped)")
    return EXIT_OK


def cmd_stance(ws: Workspace, args) -> int:
    _require_ingested(ws)
    label = _subset_label(ws, args)
    subset = _load_subset(ws, label)
    labels = _load_labels(ws, label)
    table = stance_dependence(_subset_graphs(ws, subset), labels, same_aspect_only=not args.any_aspect)
    path = ws.metrics_dir / "stance_dependence.json"
    ws.write_json(path, table.to_dict())
    print(f"{path}: counts {table.counts}")
    return EXIT_OK


def cmd_export(ws: Workspace, args) -> int:
    _require_ingested(ws)
    label = _subset_label(ws, args)
    labels = _load_labels(ws, label)
    by_thread = ws.posts_by_thread()
    if args.thread:
        if args.thread not in by_thread:
            raise corpus.ThreadNotFound(f"thread {args.thread!r} not in workspace")
        thread_ids = [args.thread]
    else:
        thread_ids = sorted(_load_subset(ws, label).thread_ids & set(by_thread))

    def run_one(tid):
        graph = build_graph(by_thread[tid])
        ranks = postrank(graph, damping=args.damping)
        content = export_thread(graph, labels, ranks, args.format)
        path = ws.exports_dir / f"{tid}.{args.format}"
        ws.write_text(path, content)
        return path

    for path in _parallel_map(run_one, thread_ids, args.jobs):
        print(str(path))
    return EXIT_OK


def cmd_report(ws: Workspace, args) -> int:
    _require_ingested(ws)
    label = _subset_label(ws, args)
    subset = _load_subset(ws, label)
    labels = _load_labels(ws, label)
    by_thread = _subset_posts(ws, subset)
    posts = [p for group in by_thread.values() for p in group]

    ws.write_text(
        ws.reports_dir / "length_ccdf.csv",
        distribution_csv(length_ccdf(posts, labels), "x", "ccdf"),
    )
    ws.write_text(
        ws.reports_dir / "upvote_dist.csv",
        distribution_csv(upvote_distribution(posts, labels), "score", "probability"),
    )
    hist = stance_histogram(sorted(labels.values(), key=lambda l: l.post_id))
    ws.write_text(
        ws.reports_dir / "stance_histogram.csv",
        csv_text(["scope", "key", "category", "count", "percentage"], hist.to_rows()),
    )

    # corpus-level graph properties (reference-report shape: node/edge
    # counts, average degree, average and maximum tree depth)
    graphs = list(_subset_graphs(ws, subset))
    metrics = [compute_metrics(g, labels) for g in graphs]
    n_nodes = sum(m.n_posts for m in metrics)
    n_edges = sum(len(g.edges) for g in graphs)
    summary_row = (
        len(graphs),
        n_nodes,
        n_edges,
        (n_edges / n_nodes) if n_nodes else 0.0,
        (sum(m.depth for m in metrics) / len(metrics)) if metrics else 0.0,
        max((m.depth for m in metrics), default=0),
    )
    ws.write_text(
        ws.reports_dir / "graph_summary.csv",
        csv_text(
            ["n_threads", "n_nodes", "n_edges", "avg_degree", "avg_tree_depth", "max_tree_depth"],
            [summary_row],
        ),
    )

    # scatter + fit need deliberation profiles
    dis_path = ws.metrics_dir / "deliberation.csv"
    if not dis_path.exists():
        raise StageError("no deliberation profiles; run the dis stage first", "dis")
    profiles = []
    with dis_path.open("r", encoding="utf-8", newline="") as fh:
        for row in list(csv.reader(fh))[1:]:
            tid, n_posts, n_args, n_clusters = row[0], int(row[1]), int(row[2]), int(row[3])
            # dis() is pure, so recomputing from the stored counts restores
            # the full profile the dis stage wrote
            profiles.append(dis_fn(n_posts, n_args, n_clusters, thread_id=tid))
    scatter_rows = [(p.n_posts, p.n_arguments, p.dis) for p in sorted(profiles, key=lambda p: p.thread_id)]
    ws.write_text(
        ws.reports_dir / "args_vs_size.csv",
        csv_text(["n_posts", "n_arguments", "dis"], scatter_rows),
    )
    fit_rows = []
    if len(profiles) >= 2:
        scatter = args_vs_size(profiles)
        for name, fit in (("arguments_vs_posts", scatter.fit_arguments), ("dis_vs_posts", scatter.fit_dis)):
            if fit is None:
                fit_rows.append((name, "", "", "", "false"))
            else:
                fit_rows.append((name, fit.slope, fit.intercept, fit.r, "true"))
    else:
        fit_rows = [("arguments_vs_posts", "", "", "", "false"), ("dis_vs_posts", "", "", "", "false")]
    ws.write_text(
        ws.reports_dir / "args_vs_size_fit.csv",
        csv_text(["target", "slope", "intercept", "r", "defined"], fit_rows),
    )
    print(f"reports written to {ws.reports_dir}")
    return EXIT_OK


def _read_label_file(path: str) -> list[ArgumentLabel]:
    out = []
    for line in Path(path).read_text("utf-8").splitlines():
        if line.strip():
            out.append(ArgumentLabel.from_dict(json.loads(line)))
    return out


def cmd_eval(ws: Workspace, args) -> int:
    predicted = _read_label_file(args.pred)
    gold = _read_label_file(args.gold)
    report = eval_f1(predicted, gold)
    kappa = eval_kappa(predicted, gold)
    doc = {"f1": report.to_dict(), "kappa": kappa}
    print(json.dumps(doc, sort_keys=True, indent=2))
    if args.out:
        ws.write_json(Path(args.out), doc)
    return EXIT_OK


# -- argument parsing ------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="argusense", description=__doc__)
    parser.add_argument("--version", action="version", version=f"argusense {__version__}")
    parser.add_argument("-w", "--workspace", default="ws", help="workspace directory (default: ws)")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized utilities")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse a forum dump into the workspace store")
    p.add_argument("--input", required=True, help="newline-delimited JSON dump")
    p.add_argument("--orphan-policy", choices=corpus.ORPHAN_POLICIES, default="attach-root")
    p.add_argument("--salt", default=None, help="anonymization salt (stored in config)")
    p.add_argument("--field-map", default=None, help="JSON object renaming input fields")

    p = sub.add_parser("filter", help="select topic-relevant threads")
    p.add_argument("--topic", required=True, help="topic JSON path, workspace topic, or built-in name")
    p.add_argument("--min-posts", type=int, default=None, help="also keep threads with more than N posts")
    p.add_argument("--label", default=None, help="subset label override")

    def backend_flags(p, default="lexicon"):
        p.add_argument("--backend", choices=("lexicon", "adapter"), default=default)
        p.add_argument("--adapter-cmd", default=None, help="launch command for the adapter process")
        p.add_argument("--timeout", type=float, default=60.0, help="adapter timeout per batch (s)")
        p.add_argument("--batch-size", type=int, default=32)

    p = sub.add_parser("aspects", help="discover aspects from thread-starting posts")
    p.add_argument("--subset", default=None)
    p.add_argument("--topic", default=None)
    p.add_argument("--min-count", type=int, default=2, help="minimum distinct threads per aspect")
    backend_flags(p)

    p = sub.add_parser("classify", help="label posts with aspect-anchored stances")
    p.add_argument("--subset", default=None)
    p.add_argument("--topic", default=None)
    backend_flags(p)

    p = sub.add_parser("cluster", help="cluster similar arguments per thread")
    p.add_argument("--subset", default=None)
    p.add_argument("--threshold", type=float, default=0.75)
    p.add_argument("--mode", choices=("components", "strict"), default="components")
    p.add_argument("--count-singletons", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--scope", choices=("thread", "global"), default="thread")
    p.add_argument("--jobs", type=int, default=1)
    backend_flags(p)

    p = sub.add_parser("metrics", help="reply-tree metrics per thread")
    p.add_argument("--subset", default=None)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("dis", help="deliberation profiles and DIS CCDF")
    p.add_argument("--subset", default=None)

    p = sub.add_parser("stance", help="stance dependence between replies and parents")
    p.add_argument("--subset", default=None)
    p.add_argument("--any-aspect", action="store_true", help="count pairs across different aspects too")

    p = sub.add_parser("export", help="export annotated thread graphs")
    p.add_argument("--subset", default=None)
    p.add_argument("--thread", default=None, help="single thread id (default: whole subset)")
    p.add_argument("--format", choices=EXPORT_FORMATS, default="gexf")
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("report", help="distribution tables and corpus summaries")
    p.add_argument("--subset", default=None)

    p = sub.add_parser("eval", help="compare two label files (F1, Cohen's kappa)")
    p.add_argument("--pred", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--out", default=None, help="also write the report as JSON")

    return parser


_COMMANDS = {
    "ingest": cmd_ingest,
    "filter": cmd_filter,
    "aspects": cmd_aspects,
    "classify": cmd_classify,
    "cluster": cmd_cluster,
    "metrics": cmd_metrics,
    "dis": cmd_dis,
    "stance": cmd_stance,
    "export": cmd_export,
    "report": cmd_report,
    "eval": cmd_eval,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is not None:
        random.seed(args.seed)
    ws = Workspace(args.workspace)
    try:
        return _COMMANDS[args.command](ws, args)
    except StageError as exc:
        print(f"error: {exc} (prerequisite: argusense {exc.prerequisite})", file=sys.stderr)
        return EXIT_MISSING_STAGE
    except BackendError as exc:
        detail = f" (failed post ids: {', '.join(exc.failed_ids)})" if exc.failed_ids else ""
        print(f"backend error: {exc}{detail}", file=sys.stderr)
        return EXIT_BACKEND
    except (ValueError, FileNotFoundError, corpus.CorpusError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
