"""Command-line front end: ``rbx verify|exstar|delta-star|sweep|pictogram|construct``.

Exit status is 0 unless a lemma check fails (1) or an input cannot be
parsed or is out of range (2).  Budget-limited answers are reported in the
output with ``exact: false`` and still exit 0.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .colorings import (coordinate_coloring, dump_coloring, enumerate_matching_partitions,
                        random_proper_coloring, xor_coloring)
from .embedding import (applicable_cases, count_rainbow_hamiltonian_paths, find_rainbow, fork_graph,
                        h0_construction)
from .embedding.aux import AuxGraph
from .errors import RbxError, save_dump
from .extremal import (EXACT_EDGE_GUARD, bound_deltastar, bound_exstar, deltastar_exact, describe_host,
                       exstar_exact)
from .graph import Graph, complete_graph, dump_graph, hypercube, load_graph
from .harness import FAMILIES, SUITES, SuiteReport, run_trials
from .trees import (Tree, describe_tree, dump_tree, enumerate_trees, load_tree, parse_tree_spec, path_tree,
                    tree_stats)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
MAX_HAMPATH_P = 3
VERIFY_SUITES = ("coordinate-lemma", "greedy-2k", "xor-no-rainbow-hampath", "fork", "p4-lemma",
                 "k2r-embed", "min-degree")


@dataclass
class RunConfig:
    command: str
    host: str | None = None
    tree: str | None = None
    seed: int = 0
    trials: int = 100
    budget_nodes: int | None = None
    out: str | None = None
    format: str = "json"
    exact: bool = False
    suite: str | None = None
    p: int = 3
    k: int | None = None
    case: str | None = None
    what: str | None = None
    scheme: str = "coordinate"


# -- spec parsing -------------------------------------------------------------

def parse_host(spec: str) -> Graph:
    kind, _, arg = spec.partition(":")
    if kind in ("qn", "kn") and arg:
        try:
            n = int(arg)
        except ValueError:
            raise RbxError(f"bad host size in {spec!r}") from None
        return hypercube(n) if kind == "qn" else complete_graph(n)
    path = Path(spec)
    if not path.is_file():
        raise RbxError(f"host {spec!r} is neither qn:<n>, kn:<n> nor a graph file")
    return load_graph(path.read_text())


def parse_tree(spec: str) -> Tree:
    if ":" not in spec and Path(spec).is_file():
        return load_tree(Path(spec).read_text())
    return parse_tree_spec(spec)


# -- output ---------------------------------------------------------------

def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key, val in obj.items():
            if isinstance(val, (dict, list)) and val:
                lines.append(f"{pad}{key}:")
                lines.extend(_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {val}")
    elif isinstance(obj, list):
        for val in obj:
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(val, indent + 1))
            else:
                lines.append(f"{pad}- {val}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def emit(cfg: RunConfig, payload) -> None:
    if isinstance(payload, str):
        text = payload
    elif cfg.format == "text":
        text = "\n".join(_text(payload)) + "\n"
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _counterexample_dir(cfg: RunConfig) -> Path:
    return Path(cfg.out).parent / "counterexamples" if cfg.out else Path("counterexamples")


# -- verify -------------------------------------------------------------------

def _suite_json(report: SuiteReport, cfg: RunConfig) -> dict:
    body = report.to_json()
    body["outcomes"] = [o for o in body["outcomes"] if not o["ok"]]
    saved = [str(save_dump(o.counterexample, _counterexample_dir(cfg)))
             for o in report.failures if o.counterexample]
    body["counterexamples"] = saved
    return body


def cmd_verify(cfg: RunConfig) -> tuple[int, dict]:
    suite = cfg.suite
    if suite == "xor-no-rainbow-hampath":
        if not 2 <= cfg.p <= MAX_HAMPATH_P:
            raise RbxError(f"exhaustive Hamiltonian-path check supports p in 2..{MAX_HAMPATH_P}")
        G, phi = xor_coloring(cfg.p)
        total, rainbow = count_rainbow_hamiltonian_paths(G, phi)
        ok = rainbow == 0
        return (EXIT_OK if ok else EXIT_VIOLATION,
                {"suite": suite, "p": cfg.p, "vertices": G.vertex_count, "paths_checked": total,
                 "rainbow_paths": rainbow, "ok": ok})
    if suite == "fork":
        G = fork_graph()
        total = found = 0
        for phi in enumerate_matching_partitions(G):
            total += 1
            found += find_rainbow(G, phi, path_tree(3)).found
        ok = found == total
        return (EXIT_OK if ok else EXIT_VIOLATION,
                {"suite": suite, "partitions": total, "with_rainbow_p3": found, "ok": ok})

    params: dict = {}
    tree = parse_tree(cfg.tree) if cfg.tree else None
    if tree is not None:
        params["tree"] = tree
    if cfg.host is not None:
        G = parse_host(cfg.host)
        if suite in ("coordinate-lemma", "k2r-embed"):
            if not G.is_hypercube:
                raise RbxError(f"{suite} draws subgraphs of a hypercube host; use qn:<n>")
            params["n"] = G.cube_dim
    if suite == "coordinate-lemma":
        if tree is not None and not applicable_cases(tree):
            raise RbxError(f"tree {describe_tree(tree)} has no coordinate-lemma case")
        if tree is not None and params.get("n", tree.k) < tree.k:
            raise RbxError("host dimension is below k, no subgraph has minimum degree k")
        runs = [dict(params)] if tree is not None else [dict(params, family=f) for f in FAMILIES]
        reports = [run_trials(suite, SUITES[suite], cfg.trials, cfg.seed, p) for p in runs]
    elif suite in ("greedy-2k", "p4-lemma", "k2r-embed", "min-degree"):
        reports = [run_trials(suite, SUITES[suite], cfg.trials, cfg.seed, params)]
    else:
        raise RbxError(f"unknown suite {suite!r}")
    bodies = []
    for rep, p in zip(reports, runs if suite == "coordinate-lemma" else [params]):
        body = _suite_json(rep, cfg)
        if "family" in p:
            body["family"] = p["family"]
        bodies.append(body)
    ok = all(r.ok for r in reports)
    payload = {"suite": suite, "ok": ok, "runs": bodies}
    return (EXIT_OK if ok else EXIT_VIOLATION), payload


# -- bounds ---------------------------------------------------------------------

def cmd_bound(cfg: RunConfig) -> dict:
    if not cfg.host or not cfg.tree:
        raise RbxError("--host and --tree are required")
    G, T = parse_host(cfg.host), parse_tree(cfg.tree)
    label = cfg.host if cfg.host.startswith(("qn:", "kn:")) else describe_host(G)
    if cfg.command == "exstar":
        rep = exstar_exact(G, T, cfg.budget_nodes, label) if cfg.exact else bound_exstar(G, T, label)
    else:
        rep = deltastar_exact(G, T, cfg.budget_nodes, label) if cfg.exact else bound_deltastar(G, T, label)
    return rep.to_json()


def cmd_sweep(cfg: RunConfig) -> dict:
    if cfg.k is None or not cfg.host:
        raise RbxError("--k and --host are required")
    G = parse_host(cfg.host)
    k = cfg.k
    if k < 1:
        raise RbxError("--k must be at least 1")
    trees = enumerate_trees(k)
    exact = cfg.exact and G.m <= EXACT_EDGE_GUARD
    entries = []
    for T in trees:
        stats = tree_stats(T)
        cases = applicable_cases(T)
        entry = {"tree": describe_tree(T), "parent": list(T.parent[1:]),
                 "tags": sorted(stats.tags), "coordinate_cases": cases,
                 "exstar": bound_exstar(G, T, cfg.host).to_json(),
                 "deltastar": bound_deltastar(G, T, cfg.host).to_json()}
        if exact:
            entry["exstar"] = exstar_exact(G, T, cfg.budget_nodes, cfg.host).to_json()
            entry["deltastar"] = deltastar_exact(G, T, cfg.budget_nodes, cfg.host).to_json()
        entries.append(entry)

    star = entries[next(i for i, T in enumerate(trees) if max(T.degrees) == k)]
    s_lo, s_hi = star["exstar"]["lower"], star["exstar"]["upper"]
    same_ex, contradictions = [], []
    for e in entries:
        lo, hi = e["exstar"]["lower"], e["exstar"]["upper"]
        if hi < s_lo or lo > s_hi:
            contradictions.append(f"ex* of {e['tree']} in [{lo}, {hi}] cannot equal the star's [{s_lo}, {s_hi}]")
        same_ex.append(lo == hi == s_lo == s_hi)
    dims = G.cube_dim if G.is_hypercube else None
    delta_applicable = dims is not None and dims >= k - 1
    if delta_applicable:
        for e in entries:
            lo, hi = e["deltastar"]["lower"], e["deltastar"]["upper"]
            if hi < k - 1 or lo > k - 1:
                contradictions.append(f"delta* of {e['tree']} in [{lo}, {hi}] excludes k-1 = {k - 1}")
    open_cases = [e["tree"] for e in entries if not e["coordinate_cases"]]
    return {"k": k, "host": cfg.host, "exact": exact, "trees": entries,
            "exstar_equal_to_star": all(same_ex),
            "deltastar_check": "applied" if delta_applicable else "not applicable: host dimension below k-1",
            "contradictions": contradictions, "open_cases": open_cases}


# -- pictogram and constructions -------------------------------------------------

def render_pictogram(H: AuxGraph) -> str:
    k = H.k
    labels = [f"e{i}" for i in range(1, k + 1)]
    w = max(len(s) for s in labels) + 1
    lines = [" " * w + "".join(s.rjust(w) for s in labels)]
    for i in range(1, k + 1):
        row = []
        for j in range(1, k + 1):
            if j <= i:
                row.append(" ")
            elif (i, j) in H.h0:
                row.append("#")
            elif (i, j) in H.intersecting:
                row.append("+")
            else:
                row.append(".")
        lines.append((labels[i - 1].ljust(w) + "".join(c.rjust(w) for c in row)).rstrip())
    return "\n".join(lines) + "\n"


def cmd_pictogram(cfg: RunConfig) -> str:
    if not cfg.tree:
        raise RbxError("--tree is required")
    T = parse_tree(cfg.tree)
    ordering, H = h0_construction(T, cfg.case)
    head = f"# {describe_tree(T)} ordering {' '.join(map(str, ordering.order))}\n"
    return head + render_pictogram(H)


def cmd_construct(cfg: RunConfig) -> str:
    what = cfg.what
    if what == "tree":
        if not cfg.tree:
            raise RbxError("--tree is required")
        return dump_tree(parse_tree(cfg.tree))
    if what == "xor":
        G, phi = xor_coloring(cfg.p)
        return dump_graph(G) + dump_coloring(phi)
    if not cfg.host:
        raise RbxError("--host is required")
    G = parse_host(cfg.host)
    if what == "graph":
        return dump_graph(G)
    if what == "coloring":
        if cfg.scheme == "coordinate":
            return dump_coloring(coordinate_coloring(G))
        if cfg.scheme in ("greedy", "random"):
            pick = "least" if cfg.scheme == "greedy" else "random"
            return dump_coloring(random_proper_coloring(G, cfg.seed, pick=pick))
        raise RbxError(f"unknown coloring scheme {cfg.scheme!r}")
    raise RbxError(f"unknown construction {what!r}")


# -- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--host", help="qn:<n>, kn:<n> or a graph file")
    common.add_argument("--tree", help="path:k, star:k, spider:a,b,..., spider3:t, broom:l,h, "
                                       "pendant:<treefile>,<m>[,<v>] or a tree file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--budget-nodes", type=int, default=None, dest="budget_nodes")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")

    ap = argparse.ArgumentParser(prog="rbx", description="Rainbow tree embeddings in hypercube hosts.")
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run a lemma verification suite")
    v.add_argument("suite", choices=VERIFY_SUITES)
    v.add_argument("--p", type=int, default=3, help="clique exponent for xor-no-rainbow-hampath")
    for name in ("exstar", "delta-star"):
        b = sub.add_parser(name, parents=[common], help=f"bound report for {name}")
        b.add_argument("--exact", action="store_true", help="run the exhaustive oracle")
    s = sub.add_parser("sweep", parents=[common], help="bounds for every tree on k edges")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--exact", action="store_true")
    pg = sub.add_parser("pictogram", parents=[common], help="render the auxiliary graph of a tree")
    pg.add_argument("--case", choices=("path", "pendant", "leaves", "even_spider", "three_spider"))
    c = sub.add_parser("construct", parents=[common], help="emit graphs, colorings or trees")
    c.add_argument("what", choices=("graph", "coloring", "tree", "xor"))
    c.add_argument("--scheme", choices=("coordinate", "greedy", "random"), default="coordinate")
    c.add_argument("--p", type=int, default=2)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    return RunConfig(**fields)


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    try:
        if cfg.command == "verify":
            code, payload = cmd_verify(cfg)
            emit(cfg, payload)
            return code
        if cfg.command in ("exstar", "delta-star"):
            emit(cfg, cmd_bound(cfg))
        elif cfg.command == "sweep":
            emit(cfg, cmd_sweep(cfg))
        elif cfg.command == "pictogram":
            emit(cfg, cmd_pictogram(cfg))
        elif cfg.command == "construct":
            emit(cfg, cmd_construct(cfg))
    except RbxError as exc:
        print(f"rbx: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
