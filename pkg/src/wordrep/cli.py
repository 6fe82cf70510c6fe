"""Command-line entry point binding the whole library.

Machine-readable results go to standard output as JSON; short human
summaries go to standard error.  Exit codes: 0 for a positive result
(semi-transitive, accepted, found, all stages passed), 1 for a
negative one, 2 for an exhausted search budget, 64 for usage errors.

The ``WORDREP_BUDGET`` environment variable overrides the default
search budget of every budgeted subcommand; an explicit ``--budget``
flag overrides both.  Budgets accept scientific notation (``2e7``).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor

from .coloring import COLOR_NAMES, color_s_n_2, exact_chromatic_number
from .debruijn import (
    DEFAULT_SIZE_LIMIT,
    DeBruijnDigraph,
    SizeLimitExceeded,
    build_debruijn,
    build_simplified,
    simplified_to_dot,
)
from .graphs import (
    LabeledGraph,
    build_wheel,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    induced_subgraph,
    is_proper_coloring,
)
from .orientations import brute_force_semitransitive
from .solver import (
    BudgetExceeded,
    NonSemiTransitive,
    SemiTransitive,
    SolverConfig,
    solve,
)
from .subiso import find_induced_embedding
from .traces import (
    Preamble,
    ProofTrace,
    TraceSyntaxError,
    emit_trace,
    extract_graph,
    load_witness_trace,
    parse_trace,
    verify_trace,
)
from .words import BudgetExceeded as WordBudgetExceeded
from .words import find_uniform_representant, represents

__all__ = ["run", "main"]

BUDGET_ENV = "WORDREP_BUDGET"

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as exceptions, not exits."""

    def error(self, message):
        raise _UsageError(message)


def _emit(payload) -> None:
    print(json.dumps(payload, indent=2))


def _say(message: str) -> None:
    print(message, file=sys.stderr)


def _parse_budget(text: str) -> int:
    try:
        value = int(float(text))
    except ValueError:
        raise _UsageError(f"budget {text!r} is not a number") from None
    if value <= 0:
        raise _UsageError("budget must be positive")
    return value


def _default_budget(fallback: int) -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return fallback
    return _parse_budget(raw)


def _resolve_budget(flag: str | None, fallback: int) -> int:
    if flag is not None:
        return _parse_budget(flag)
    return _default_budget(fallback)


def _load_graph(path: str) -> LabeledGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise _UsageError(f"{path} is not valid JSON: {exc}") from None
    try:
        return graph_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise _UsageError(f"{path} is not a graph: {exc}") from None


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from None


def _parse_arc(text: str) -> tuple[str, str]:
    cleaned = text.replace("→", "->")
    head, sep, tail = cleaned.partition("->")
    if not sep or not head.strip() or not tail.strip():
        raise _UsageError(f"arc {text!r} must look like HEAD->TAIL")
    return head.strip(), tail.strip()


def _arc_labels(arc: tuple[str, str] | None) -> str | None:
    return None if arc is None else f"{arc[0]}->{arc[1]}"


# ---------------------------------------------------------------------------
# subcommands


def _digraph_to_dot(b: DeBruijnDigraph, name: str = "b") -> str:
    lines = [f"digraph {name} {{"]
    for label in b.vertices:
        lines.append(f'  "{label}";')
    for t, h in b.arcs:
        lines.append(f'  "{b.vertices[t]}" -> "{b.vertices[h]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_debruijn(ns) -> int:
    try:
        if ns.simplified:
            s = build_simplified(ns.n, ns.k, ns.size_limit)
            graph = s.graph
            _say(
                f"S({ns.n},{ns.k}): {graph.n} vertices, {len(graph.edges)} edges"
            )
            if ns.format == "dot":
                print(simplified_to_dot(s), end="")
            else:
                _emit(graph_to_json(graph))
        else:
            b = build_debruijn(ns.n, ns.k, ns.size_limit)
            _say(f"B({ns.n},{ns.k}): {len(b.vertices)} vertices, {len(b.arcs)} arcs")
            if ns.format == "dot":
                print(_digraph_to_dot(b), end="")
            else:
                _emit(
                    {
                        "n": b.n,
                        "k": b.k,
                        "vertices": list(b.vertices),
                        "arcs": [
                            [b.vertices[t], b.vertices[h]] for t, h in b.arcs
                        ],
                    }
                )
    except (ValueError, SizeLimitExceeded) as exc:
        raise _UsageError(str(exc)) from None
    return EXIT_POSITIVE


def _cmd_color3(ns) -> int:
    try:
        s, colors = color_s_n_2(ns.n)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    graph = s.graph
    proper = is_proper_coloring(graph, colors)
    _emit(
        {
            "n": ns.n,
            "vertices": graph.n,
            "edges": len(graph.edges),
            "proper": proper,
            "coloring": {
                graph.labels[v]: COLOR_NAMES[colors[v]] for v in range(graph.n)
            },
        }
    )
    _say(
        f"S({ns.n},2): {graph.n} vertices, 3-coloring "
        + ("proper" if proper else "IMPROPER")
    )
    return EXIT_POSITIVE if proper else EXIT_NEGATIVE


def _cmd_chromatic(ns) -> int:
    g = _load_graph(ns.graph)
    try:
        number = exact_chromatic_number(g, ns.max)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    _emit({"max_colors": ns.max, "chromatic_number": number})
    if number is None:
        _say(f"chromatic number exceeds {ns.max}")
        return EXIT_NEGATIVE
    _say(f"chromatic number {number}")
    return EXIT_POSITIVE


def _cmd_check(ns) -> int:
    g = _load_graph(ns.graph)
    source = None if ns.source == "maxdeg" else ns.source
    try:
        cfg = SolverConfig(
            source=source,
            budget=_resolve_budget(ns.budget, SolverConfig().budget),
            cycle_len=ns.cycle_len,
        )
        verdict = solve(g, cfg)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None

    if isinstance(verdict, SemiTransitive):
        arcs = verdict.orientation.arcs
        labels = verdict.orientation.graph.labels
        _emit(
            {
                "verdict": "semi-transitive",
                "orientation": [[labels[t], labels[h]] for t, h in arcs],
            }
        )
        _say("semi-transitive")
        return EXIT_POSITIVE
    if isinstance(verdict, NonSemiTransitive):
        trace = verdict.trace
        payload = {
            "verdict": "not-semi-transitive",
            "lines": len(trace.lines),
            "source": trace.preamble.source_vertex,
            "wlog": _arc_labels(trace.preamble.wlog_arc),
        }
        if ns.trace:
            with open(ns.trace, "w", encoding="utf-8") as fh:
                fh.write(emit_trace(trace))
            payload["trace_file"] = ns.trace
        _emit(payload)
        _say(f"not semi-transitive ({len(trace.lines)} proof lines)")
        return EXIT_NEGATIVE
    assert isinstance(verdict, BudgetExceeded)
    _emit({"verdict": "budget-exceeded", "nodes": verdict.nodes})
    _say(f"budget exceeded after {verdict.nodes} nodes")
    return EXIT_BUDGET


def _cmd_oracle(ns) -> int:
    g = _load_graph(ns.graph)
    budget = _resolve_budget(ns.budget, 20_000_000)
    result = brute_force_semitransitive(g, budget)
    certificate = None
    if result.certificate is not None:
        labels = result.certificate.graph.labels
        certificate = [[labels[t], labels[h]] for t, h in result.certificate.arcs]
    _emit(
        {
            "verdict": result.verdict,
            "examined": result.examined,
            "certificate": certificate,
        }
    )
    _say(f"{result.verdict} after {result.examined} orientations")
    if result.verdict == "exists":
        return EXIT_POSITIVE
    if result.verdict == "notexists":
        return EXIT_NEGATIVE
    return EXIT_BUDGET


def _cmd_verify_trace(ns) -> int:
    g = _load_graph(ns.graph)
    wlog = _parse_arc(ns.wlog) if ns.wlog else None
    if wlog is not None:
        for label in wlog:
            if label not in g.index:
                raise _UsageError(f"wlog endpoint {label!r} is not a vertex")
    if ns.source is not None and ns.source not in g.index:
        raise _UsageError(f"source {ns.source!r} is not a vertex")
    try:
        parsed = parse_trace(_read_text(ns.trace))
    except TraceSyntaxError as exc:
        raise _UsageError(f"{ns.trace}: {exc}") from None
    trace = ProofTrace(Preamble(wlog, ns.source), parsed.lines)
    report = verify_trace(g, trace)
    _emit(
        {
            "accepted": report.accepted,
            "lines": len(report.line_statuses),
            "failures": [
                {"line": s.line_number, "reason": s.reason}
                for s in report.failures()
            ],
        }
    )
    _say("accepted" if report.accepted else "REJECTED")
    return EXIT_POSITIVE if report.accepted else EXIT_NEGATIVE


def _cmd_extract_graph(ns) -> int:
    try:
        trace = parse_trace(_read_text(ns.trace))
    except TraceSyntaxError as exc:
        raise _UsageError(f"{ns.trace}: {exc}") from None
    g = extract_graph(trace)
    payload = graph_to_json(g)
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    else:
        _emit(payload)
    _say(f"{g.n} vertices, {len(g.edges)} edges")
    return EXIT_POSITIVE


def _cmd_findsub(ns) -> int:
    pattern = _load_graph(ns.pattern)
    host = _load_graph(ns.host)
    anchors: dict[str, str] = {}
    for text in ns.anchor or []:
        key, sep, value = text.partition("=")
        if not sep or not key or not value:
            raise _UsageError(f"anchor {text!r} must look like PATTERN=HOST")
        anchors[key] = value
    try:
        embedding = find_induced_embedding(pattern, host, anchors)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    if embedding is None:
        _emit({"found": False})
        _say("no induced embedding")
        return EXIT_NEGATIVE
    _emit({"found": True, "mapping": embedding.as_label_map()})
    _say("found")
    return EXIT_POSITIVE


def _cmd_represent_check(ns) -> int:
    g = _load_graph(ns.graph)
    word: list[int] = []
    for token in ns.word.split():
        if token not in g.index:
            raise _UsageError(f"word letter {token!r} is not a vertex")
        word.append(g.index[token])
    ok = represents(word, g)
    _emit({"represents": ok, "length": len(word)})
    _say("represents" if ok else "does not represent")
    return EXIT_POSITIVE if ok else EXIT_NEGATIVE


def _cmd_word_search(ns) -> int:
    g = _load_graph(ns.graph)
    budget = _resolve_budget(ns.budget, 5_000_000)
    try:
        word = find_uniform_representant(g, ns.kmax, budget)
    except WordBudgetExceeded:
        _emit({"found": None, "budget_exceeded": True})
        _say("budget exceeded")
        return EXIT_BUDGET
    if word is None:
        _emit({"found": False, "k_max": ns.kmax})
        _say(f"no uniform representant with k <= {ns.kmax}")
        return EXIT_NEGATIVE
    k = len(word) // g.n if g.n else 0
    _emit({"found": True, "k": k, "word": [g.labels[v] for v in word]})
    _say(f"{k}-uniform representant of length {len(word)}")
    return EXIT_POSITIVE


# ---------------------------------------------------------------------------
# repro


def _stage_coloring(n: int) -> dict:
    s, colors = color_s_n_2(n)
    return {
        "n": n,
        "vertices": s.graph.n,
        "proper": is_proper_coloring(s.graph, colors),
    }


def _repro_stage_colorings(jobs: int) -> tuple[bool, dict]:
    ns = range(1, 11)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_stage_coloring, ns))
    else:
        rows = [_stage_coloring(n) for n in ns]
    return all(r["proper"] for r in rows), {"instances": rows}


def _repro_stage_small_witnesses() -> tuple[bool, dict]:
    detail = {}
    ok = True
    for name, g in (("W5", build_wheel(5)), ("S(2,3)", build_simplified(2, 3).graph)):
        verdict = solve(g)
        negative = isinstance(verdict, NonSemiTransitive)
        certified = negative and verify_trace(g, verdict.trace).accepted
        oracle = brute_force_semitransitive(g).verdict == "notexists"
        detail[name] = {
            "solver": "not-semi-transitive" if negative else "other",
            "trace_verified": certified,
            "oracle": "notexists" if oracle else "other",
        }
        ok = ok and negative and certified and oracle
    return ok, detail


def _repro_stage_bundled_trace() -> tuple[bool, dict]:
    trace = load_witness_trace()
    witness = extract_graph(trace)
    verified = verify_trace(witness, trace).accepted

    s33 = build_simplified(3, 3).graph
    embedding = find_induced_embedding(witness, s33, {"1": "102", "2": "210"})
    embedded = embedding is not None

    reverified = False
    if embedded:
        image = induced_subgraph(s33, set(embedding.mapping))
        back = {host: pat for pat, host in embedding.as_label_map().items()}
        relabeled = LabeledGraph(
            [back[label] for label in image.labels], image.edge_list()
        )
        reverified = verify_trace(relabeled, trace).accepted

    verdict = solve(witness)
    solved = isinstance(verdict, NonSemiTransitive)
    resolved = solved and verify_trace(witness, verdict.trace).accepted

    detail = {
        "lines": len(trace.lines),
        "vertices": witness.n,
        "trace_verified": verified,
        "embedded_in_s33": embedded,
        "reverified_against_image": reverified,
        "solver_agrees": resolved,
    }
    return verified and embedded and reverified and resolved, detail


def _repro_stage_sampled(seed: int, samples: int) -> tuple[bool, dict]:
    rng = random.Random(seed)
    agree = 0
    for _ in range(samples):
        n = rng.choice((5, 6))
        edges = [
            (a, b)
            for a in range(n)
            for b in range(a + 1, n)
            if rng.random() < 0.5
        ]
        g = LabeledGraph([str(v) for v in range(n)], edges)
        positive = isinstance(solve(g), SemiTransitive)
        expected = brute_force_semitransitive(g).verdict == "exists"
        if positive == expected:
            agree += 1
    return agree == samples, {"samples": samples, "agreed": agree}


def _cmd_repro(ns) -> int:
    stages = [
        ("3-coloring S(n,2) for n=1..10", lambda: _repro_stage_colorings(ns.jobs)),
        ("W5 and S(2,3) verdicts", _repro_stage_small_witnesses),
        ("bundled 17-vertex proof", _repro_stage_bundled_trace),
        (
            "sampled solver/oracle agreement",
            lambda: _repro_stage_sampled(ns.seed, ns.samples),
        ),
    ]
    rows = []
    all_ok = True
    for name, runner in stages:
        ok, detail = runner()
        rows.append({"stage": name, "ok": ok, "detail": detail})
        all_ok = all_ok and ok
        _say(f"{'PASS' if ok else 'FAIL'}  {name}")
    _emit({"ok": all_ok, "seed": ns.seed, "stages": rows})
    _say("all stages passed" if all_ok else "SOME STAGES FAILED")
    return EXIT_POSITIVE if all_ok else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# wiring


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="wordrep",
        description="Decide word-representability via semi-transitive "
        "orientation search; build simplified de Bruijn graphs; verify "
        "elimination-proof traces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("debruijn", help="build B(n,k) or its simplified graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--simplified", action="store_true")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--size-limit", type=int, default=DEFAULT_SIZE_LIMIT)
    p.set_defaults(func=_cmd_debruijn)

    p = sub.add_parser("color3", help="3-color S(n,2) and verify properness")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_color3)

    p = sub.add_parser("chromatic", help="exact chromatic number (bounded)")
    p.add_argument("--graph", required=True)
    p.add_argument("--max", type=int, default=4)
    p.set_defaults(func=_cmd_chromatic)

    p = sub.add_parser("check", help="search for a semi-transitive orientation")
    p.add_argument("--graph", required=True)
    p.add_argument("--source", default="maxdeg")
    p.add_argument("--trace", help="write the refutation trace here")
    p.add_argument("--budget")
    p.add_argument("--cycle-len", type=int, default=SolverConfig().cycle_len)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("oracle", help="exhaust all orientations")
    p.add_argument("--graph", required=True)
    p.add_argument("--budget")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify-trace", help="check a refutation trace")
    p.add_argument("--graph", required=True)
    p.add_argument("--trace", required=True)
    p.add_argument("--wlog", help='first-branch arc, e.g. "15->17"')
    p.add_argument("--source", help="vertex all of whose edges point outward")
    p.set_defaults(func=_cmd_verify_trace)

    p = sub.add_parser("extract-graph", help="recover the graph a trace mentions")
    p.add_argument("--trace", required=True)
    p.add_argument("-o", "--out")
    p.set_defaults(func=_cmd_extract_graph)

    p = sub.add_parser("findsub", help="anchored induced-subgraph search")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--anchor", action="append", metavar="PATTERN=HOST")
    p.set_defaults(func=_cmd_findsub)

    p = sub.add_parser("represent-check", help="does this word represent the graph?")
    p.add_argument("--graph", required=True)
    p.add_argument("--word", required=True, help='space-separated labels, e.g. "0 1 0 1"')
    p.set_defaults(func=_cmd_represent_check)

    p = sub.add_parser("word-search", help="search for a uniform representant")
    p.add_argument("--graph", required=True)
    p.add_argument("--kmax", type=int, default=2)
    p.add_argument("--budget")
    p.set_defaults(func=_cmd_word_search)

    p = sub.add_parser("repro", help="run the full reproduction pipeline")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_repro)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        _say(f"error: {exc}")
        return EXIT_USAGE
    except SystemExit as exc:  # --help prints and exits 0
        return EXIT_POSITIVE if exc.code in (0, None) else EXIT_USAGE
    try:
        return ns.func(ns)
    except _UsageError as exc:
        _say(f"error: {exc}")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
