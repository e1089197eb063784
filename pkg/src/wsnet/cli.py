"""`wsnet` command line: ingestion, extraction, analysis, baselines, fits, search and conversion"""

import argparse
import logging
import sys
from dataclasses import dataclass, fields, replace

from fastcore.utils import Path

from .compose import forward_chain, plan_lines, prune_plan, request_from_text
from .config import EmptyScopeError, PowerLawFitError, UsageError, WsnetError, ws_cfg
from .corpus import Corpus, corpus_stats, write_wsc
from .extract import DependencyNetwork, InteractionMode, build_network, provenance_lines
from .matching import MatchMode
from .netstats import Scope, largest_component, topology_report
from .powerlaw import degree_distribution_report
from .randgraph import ErEnsembleStats, er_ensemble_stats
from .report import DASH, render_tables
from .wsdl import ingest_directory, load_corpus

__all__ = ["RunConfig", "build_parser", "run", "main"]

logger = logging.getLogger(__name__)


@dataclass
class RunConfig:
    "Everything a command needs, with the defaults used when a flag is not given"

    command: str
    corpus: str | None = None
    matching: str = "syntactic"
    model: str = "dependency"
    interaction: str = "full"
    directed: bool = True
    scope: str = "largest"
    seed: int = ws_cfg.seed
    samples: int = ws_cfg.samples
    replicates: int = ws_cfg.replicates
    fmt: str = "text"
    export: str | None = None
    trim: bool = False
    workers: int = ws_cfg.n_workers
    provided: str = ""
    desired: str = ""
    prune: bool = False
    nodes: int | None = None
    links: int | None = None
    output: str | None = None
    verbose: int = 0

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        kw = {k: v for k, v in vars(ns).items() if k in known and v is not None}
        if getattr(ns, "model", None) == "dependency" and getattr(ns, "interaction", None) is not None:
            raise UsageError("--interaction only applies to --model interaction or all")
        cfg = cls(**kw)
        for flag in ("samples", "replicates", "workers"):
            if getattr(cfg, flag) < 0:
                raise UsageError(f"--{flag} must not be negative")
        return cfg


class _HelpFormatter(argparse.ArgumentDefaultsHelpFormatter):
    "Appends defaults only to options that take a value and have one"

    def _get_help_string(self, action):
        if action.default in (None, "") or action.required or (action.nargs == 0 and action.const is not None):
            return action.help
        return super()._get_help_string(action)


def _defaults(p: argparse.ArgumentParser):
    p.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging on stderr")
    p.add_argument("--workers", type=int, default=ws_cfg.n_workers, help="Parallel workers, 0 runs serially")


def _corpus_args(p: argparse.ArgumentParser, model: bool = True, all_: bool = False):
    "`all_` adds an `all` choice to `--matching` and `--model`"
    more = ["all"] if all_ else []
    p.add_argument("--corpus", required=True, help="WSDL directory, WSDL file or WSC file")
    p.add_argument(
        "--matching", choices=[str(o) for o in MatchMode] + more, default="syntactic", help="Parameter matching"
    )
    if model:
        p.add_argument(
            "--model", choices=["dependency", "interaction"] + more, default="dependency", help="Network model"
        )
        p.add_argument(
            "--interaction",
            choices=[str(o) for o in InteractionMode],
            default=None,
            help="Interaction mode for the interaction model (full when omitted)",
        )


def _stat_args(p: argparse.ArgumentParser, samples: bool = True, replicates: bool = True):
    p.add_argument("--seed", type=int, default=ws_cfg.seed, help="Base seed for ER samples and bootstrap replicates")
    if samples:
        p.add_argument("--samples", type=int, default=ws_cfg.samples, help="ER ensemble size, 0 skips the baseline")
    if replicates:
        p.add_argument(
            "--replicates", type=int, default=ws_cfg.replicates, help="Bootstrap replicates, 0 skips p-values"
        )


def _scope_args(p: argparse.ArgumentParser):
    p.add_argument(
        "--undirected", dest="directed", action="store_false", help="Undirected distances (directed when omitted)"
    )
    p.add_argument(
        "--whole-graph",
        dest="scope",
        action="store_const",
        const="whole",
        default="largest",
        help="Fit degrees on the whole graph (largest component when omitted)",
    )


def build_parser() -> argparse.ArgumentParser:
    fmt = _HelpFormatter
    parser = argparse.ArgumentParser(prog="wsnet", description="Web-service composition network toolkit")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("extract", help="Build a network and export it", formatter_class=fmt)
    _corpus_args(p)
    p.add_argument("--export", help="Output prefix for .edges.tsv, .nodes.tsv and .dot files")
    p.add_argument("--trim", action="store_true", help="Leave isolated nodes out of the DOT export")
    _defaults(p)

    p = sub.add_parser("analyze", help="Topology tables with ER baseline and degree fits", formatter_class=fmt)
    _corpus_args(p, all_=True)
    _stat_args(p)
    _scope_args(p)
    p.add_argument("--format", dest="fmt", choices=["text", "csv"], default="text", help="Report format")
    _defaults(p)

    er_help = "Erdős–Rényi ensemble statistics for N nodes, L links"
    p = sub.add_parser("er-baseline", help=er_help, formatter_class=fmt)
    p.add_argument("--nodes", type=int, required=True, help="Node count N")
    p.add_argument("--links", type=int, required=True, help="Directed link count L")
    _stat_args(p, replicates=False)
    p.add_argument(
        "--undirected", dest="directed", action="store_false", help="Undirected distances (directed when omitted)"
    )
    _defaults(p)

    p = sub.add_parser("fit-degrees", help="Power-law fits of in-, out- and total-degree", formatter_class=fmt)
    _corpus_args(p)
    _stat_args(p, samples=False)
    _scope_args(p)
    p.add_argument("--export", help="Output prefix for <prefix>.<kind>.hist.tsv degree histograms")
    _defaults(p)

    p = sub.add_parser("search", help="Forward-chaining composition search", formatter_class=fmt)
    _corpus_args(p, model=False)
    p.add_argument("--in", dest="provided", default="", help="Provided names or concept URIs, comma-separated")
    p.add_argument("--out", dest="desired", required=True, help="Desired names or concept URIs, comma-separated")
    p.add_argument("--prune", action="store_true", help="Drop operations that do not contribute to the request")
    _defaults(p)

    p = sub.add_parser("convert", help="Write a WSDL directory as one WSC file", formatter_class=fmt)
    p.add_argument("--corpus", required=True, help="WSDL directory")
    p.add_argument("--output", required=True, help="WSC file to write")
    _defaults(p)
    return parser


def _network(cfg: RunConfig, corpus: Corpus):
    return build_network(corpus, cfg.model, MatchMode(cfg.matching), InteractionMode(cfg.interaction))


def _name(cfg: RunConfig) -> str:
    model = cfg.model if cfg.model == "dependency" else f"{cfg.interaction}-interaction"
    return f"{cfg.matching}-{model}"


def _cmd_extract(cfg: RunConfig, out) -> int:
    net = _network(cfg, load_corpus(cfg.corpus))
    g = net.graph
    out.write(f"# {_name(cfg)}\nnodes\t{g.n}\nlinks\t{g.m}\n")
    if cfg.export:
        paths = g.export(cfg.export, trim=cfg.trim)
        if isinstance(net, DependencyNetwork):
            p = Path(cfg.export + ".provenance.tsv")
            p.write_bytes(provenance_lines(net).encode("utf-8"))
            paths.append(p)
        for p in paths:
            out.write(f"wrote\t{p}\n")
    return 0


def _baseline(cfg: RunConfig, n: int, l: int) -> ErEnsembleStats | None:
    if not cfg.samples:
        return None
    return er_ensemble_stats(n, l, cfg.samples, cfg.seed, cfg.directed, cfg.workers)


def _expand(cfg: RunConfig) -> list[RunConfig]:
    "One config per requested network, dependency networks first"
    models = ["dependency", "interaction"] if cfg.model == "all" else [cfg.model]
    matchings = [str(o) for o in MatchMode] if cfg.matching == "all" else [cfg.matching]
    return [replace(cfg, model=model, matching=m) for model in models for m in matchings]


def _cmd_analyze(cfg: RunConfig, out) -> int:
    corpus = load_corpus(cfg.corpus)
    reports, fits = [], {}
    for c in _expand(cfg):
        g = _network(c, corpus).graph
        name = _name(c)
        logger.info("Analyzing %s: %d nodes, %d links", name, g.n, g.m)
        try:
            lc = largest_component(g)
        except EmptyScopeError:
            lc = None
        baseline = _baseline(c, lc.n, lc.m) if lc is not None else None
        reports.append(topology_report(g, name, c.directed, baseline))
        if lc is not None:
            fits[name] = degree_distribution_report(
                g, Scope(c.scope), c.replicates, c.seed, strict=False, n_workers=c.workers
            )
    out.write(render_tables(reports, fits, fmt=cfg.fmt))
    return 0


def _cmd_er_baseline(cfg: RunConfig, out) -> int:
    if cfg.samples < 1:
        raise UsageError("--samples must be at least 1")
    if cfg.nodes < 0 or not 0 <= cfg.links <= cfg.nodes * (cfg.nodes - 1):
        raise UsageError(f"--links must lie in [0, {max(cfg.nodes * (cfg.nodes - 1), 0)}] for {cfg.nodes} nodes")
    er = er_ensemble_stats(cfg.nodes, cfg.links, cfg.samples, cfg.seed, cfg.directed, cfg.workers)
    analytic = DASH if er.analytic_distance is None else f"{er.analytic_distance:.4f}"
    out.write(
        f"# ER n={er.n} l={er.l} samples={er.samples} seed={er.seed} directed={er.directed}\n"
        f"average distance\t{er.average_distance}\n"
        f"diameter\t{er.diameter}\n"
        f"transitivity\t{er.transitivity}\n"
        f"ln N / ln(L/N)\t{analytic}\n"
        f"skipped samples\t{er.skipped}\n"
    )
    return 0


def _cmd_fit_degrees(cfg: RunConfig, out) -> int:
    g = _network(cfg, load_corpus(cfg.corpus)).graph
    rep = degree_distribution_report(g, Scope(cfg.scope), cfg.replicates, cfg.seed, n_workers=cfg.workers, strict=False)
    out.write(f"# {_name(cfg)} scope={rep.scope} replicates={cfg.replicates} seed={cfg.seed}\n")
    out.write("kind\tgamma\tse\txmin\tntail\tks\tp-value\n")
    for df in rep:
        f = df.fit
        if f is None:
            out.write(f"{df.kind}\tn/a\t\t\t\t\t\t# {df.error}\n")
            continue
        p = DASH if f.pvalue is None else f"{f.pvalue:.3f}"
        out.write(f"{df.kind}\t{f.alpha:.4f}\t{f.alpha_se:.4f}\t{f.xmin}\t{f.ntail}\t{f.ks:.4f}\t{p}\n")
    if cfg.export:
        for df in rep:
            p = Path(f"{cfg.export}.{df.kind}.hist.tsv")
            p.parent.mkdir(parents=True, exist_ok=True)
            p.write_bytes(df.histogram_lines().encode("utf-8"))
    if all(df.fit is None for df in rep):
        raise PowerLawFitError("No degree sequence could be fitted")
    return 0


def _cmd_search(cfg: RunConfig, out) -> int:
    corpus = load_corpus(cfg.corpus)
    req = request_from_text(cfg.provided, cfg.desired, MatchMode(cfg.matching))
    plan = forward_chain(corpus, req)
    if cfg.prune and plan.satisfied:
        plan = prune_plan(corpus, plan, req)
    out.write(plan_lines(plan))
    return 0


def _cmd_convert(cfg: RunConfig, out) -> int:
    corpus, report = ingest_directory(cfg.corpus, n_workers=cfg.workers)
    write_wsc(corpus, cfg.output)
    s = corpus_stats(corpus)
    out.write(f"services\t{s.services}\noperations\t{s.operations}\nskipped files\t{len(report.skipped)}\n")
    for f, why in report.skipped:
        logger.warning("skipped %s: %s", f, why)
    return 0


_COMMANDS = {
    "extract": _cmd_extract,
    "analyze": _cmd_analyze,
    "er-baseline": _cmd_er_baseline,
    "fit-degrees": _cmd_fit_degrees,
    "search": _cmd_search,
    "convert": _cmd_convert,
}


def _setup_logging(verbose: int):
    level = logging.WARNING if verbose <= 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def run(argv: list[str] | None = None, out=None) -> int:
    "Parse `argv` and run one command; 0 on success, 2 on usage errors, 1 on data errors"
    out = out or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = RunConfig.from_args(ns)
        _setup_logging(cfg.verbose)
        return _COMMANDS[cfg.command](cfg, out)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"wsnet: error: {e}", file=sys.stderr)
        return 2
    except (WsnetError, OSError, ValueError) as e:
        print(f"wsnet: {e}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())
