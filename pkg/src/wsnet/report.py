"""Text and CSV rendering of topology reports as five table blocks"""

import csv
import io
from collections.abc import Mapping, Sequence

from .netstats import TopologyReport
from .powerlaw import DegreeDistributionReport, DegreeFit
from .randgraph import ErEnsembleStats

__all__ = ["TABLES", "DASH", "table_rows", "render_tables"]

DASH = "—"

TABLES = {
    "components": "Component organisation",
    "distances": "Average distance and diameter",
    "degrees": "Degree distribution power-law fits",
    "transitivity": "Transitivity",
    "correlation": "Degree correlation",
}

Row = tuple[str, str, str, str]


def _num(x, digits: int = 4) -> str:
    return DASH if x is None else f"{x:.{digits}f}"


def _pct(x) -> str:
    return DASH if x is None else f"{100 * x:.2f}%"


def _component_cells(r: TopologyReport) -> list[tuple[str, str]]:
    c = r.components
    small = f"{c.small_size_min}-{c.small_size_max}" if c.small_components else DASH
    return [
        ("nodes", str(c.nodes)),
        ("links", str(c.links)),
        ("isolated nodes", str(c.isolated)),
        ("isolated % of all nodes", _pct(c.isolated_fraction)),
        ("isolated % of non-isolated nodes", _pct(c.isolated_fraction_trimmed)),
        ("small components", str(c.small_components)),
        ("small component sizes", small),
        ("largest component nodes", str(c.largest_size)),
        ("largest component links", str(c.largest_links)),
        ("largest % of all nodes", _pct(c.largest_node_fraction)),
        ("largest % of non-isolated nodes", _pct(c.largest_node_fraction_trimmed)),
        ("largest % of links", _pct(c.largest_link_fraction)),
        ("largest component density", _num(c.largest_density)),
    ]


def _distance_cells(r: TopologyReport, er: ErEnsembleStats | None) -> list[tuple[str, str]]:
    d = r.distances
    sw = r.small_world
    verdict = DASH if sw is None else ("yes" if sw.verdict else "no")
    return [
        ("average distance", _num(d and d.mean)),
        ("diameter", DASH if d is None else str(d.diameter)),
        ("ER average distance", DASH if er is None else str(er.average_distance)),
        ("ER diameter", DASH if er is None else str(er.diameter)),
        ("ER ln N / ln(L/N)", _num(er and er.analytic_distance)),
        ("small-world", verdict),
    ]


def _fit_cells(df: DegreeFit) -> list[tuple[str, str]]:
    names = [f"{df.kind}-degree {m}" for m in ("gamma", "p-value", "xmin")]
    fit = df.fit
    if fit is None:
        # unfittable sequence
        return [(o, "n/a") for o in names]
    return list(zip(names, (_num(fit.alpha, 2), _num(fit.pvalue, 2), str(fit.xmin))))


def _degree_cells(fits: DegreeDistributionReport | None) -> list[tuple[str, str]]:
    if fits is None:
        return [(f"{k}-degree {m}", DASH) for k in ("in", "out", "total") for m in ("gamma", "p-value", "xmin")]
    return [o for df in fits for o in _fit_cells(df)]


def _transitivity_cells(r: TopologyReport, er: ErEnsembleStats | None) -> list[tuple[str, str]]:
    has = r.distances is not None
    return [
        ("transitivity", _num(r.transitivity) if has else DASH),
        ("ER transitivity", DASH if er is None else str(er.transitivity)),
    ]


def _correlation_cells(r: TopologyReport) -> list[tuple[str, str]]:
    if r.distances is None:
        corr = DASH
    else:
        corr = "undefined" if r.degree_correlation is None else _num(r.degree_correlation)
    top = lambda kind: ";".join(f"{lbl}({deg})" for lbl, deg in r.hubs.get(kind, [])) or DASH  # noqa: E731
    return [("degree correlation", corr), ("hubs", top("hubs")), ("authorities", top("authorities"))]


def _listify(reports) -> list[TopologyReport]:
    return [reports] if isinstance(reports, TopologyReport) else list(reports)


def table_rows(
    reports: TopologyReport | Sequence[TopologyReport],
    fits: Mapping[str, DegreeDistributionReport] | None = None,  # Keyed by report name
    er: Mapping[str, ErEnsembleStats] | None = None,  # Keyed by report name; defaults to each report's baseline
) -> list[Row]:
    "One (table, metric, network, value) row per cell, tables in display order"
    fits, er = fits or {}, er or {}
    rows: list[Row] = []
    for r in _listify(reports):
        base = er.get(r.name, r.er_baseline)
        cells = {
            "components": _component_cells(r),
            "distances": _distance_cells(r, base),
            "degrees": _degree_cells(fits.get(r.name)),
            "transitivity": _transitivity_cells(r, base),
            "correlation": _correlation_cells(r),
        }
        rows += [(t, m, r.name, v) for t, cs in cells.items() for m, v in cs]
    order = list(TABLES)
    return sorted(rows, key=lambda o: order.index(o[0]))


def _meta(reports: list[TopologyReport], fits, er) -> dict[str, str]:
    meta = {}
    bases = [o for o in ((er or {}).get(r.name, r.er_baseline) for r in reports) if o is not None]
    if bases:
        meta["distances"] = meta["transitivity"] = ", ".join(
            sorted({f"ER samples={b.samples} seed={b.seed}" for b in bases})
        )
    boot = [df.fit for f in (fits or {}).values() for df in f if df.fit is not None and df.fit.pvalue is not None]
    if boot:
        meta["degrees"] = ", ".join(sorted({f"replicates={o.replicates} seed={o.seed}" for o in boot}))
    conv = reports[0].conventions if reports else {}
    if conv:
        meta["components"] = ", ".join(f"{k}={v}" for k, v in conv.items())
    return meta


def _grid(rows: list[Row], networks: list[str]) -> list[str]:
    metrics = list(dict.fromkeys(m for _, m, _, _ in rows))
    cell = {(m, n): v for _, m, n, v in rows}
    table = [["metric", *networks]] + [[m, *(cell.get((m, n), DASH) for n in networks)] for m in metrics]
    widths = [max(len(r[i]) for r in table) for i in range(len(table[0]))]
    return [
        "  ".join([r[0].ljust(widths[0]), *(v.rjust(w) for v, w in zip(r[1:], widths[1:]))]).rstrip() for r in table
    ]


def render_tables(
    reports: TopologyReport | Sequence[TopologyReport],
    fits: Mapping[str, DegreeDistributionReport] | None = None,
    er: Mapping[str, ErEnsembleStats] | None = None,
    fmt: str = "text",  # "text" or "csv"
) -> str:
    "Component, distance, power-law, transitivity and degree-correlation blocks, in that order"
    reports = _listify(reports)
    rows = table_rows(reports, fits, er)
    meta = _meta(reports, fits, er)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["table", "metric", "network", "value"])
        w.writerows([("meta", t, "", v) for t, v in meta.items()])
        w.writerows(rows)
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"Unknown format {fmt!r}; expected 'text' or 'csv'")
    networks = [r.name for r in reports]
    out = []
    for t, title in TABLES.items():
        head = f"== {title} ==" + (f"  [{meta[t]}]" if t in meta else "")
        out += [head, *_grid([o for o in rows if o[0] == t], networks), ""]
    return "\n".join(out)
