"""Rendering of fit, crosstab, and link-comparison reports.

Text reports follow the compact journal convention for coefficient
cells, ``estimate<stars>(se)`` with reference rows printed as ``-``,
a two-row deviance/AIC block, and a final ``selected:`` line.  Estimates
and standard errors are shown to 3 decimals, deviance and AIC to 2;
CSV and JSON carry full precision.  All renderers are pure functions of
their inputs, so identical inputs give byte-identical output.
"""

import json

from .design import INTERCEPT_LABEL
from .glm import ComparisonReport, FitResult

__all__ = [
    "render_fit",
    "render_crosstab",
    "render_comparison",
]


def _f3(value: float) -> str:
    return f"{value:.3f}"


def _f2(value: float) -> str:
    return f"{value:.2f}"


def _full(value: float) -> str:
    return repr(float(value))


def _cell(estimate: float, stars: str, se: float) -> str:
    return f"{_f3(estimate)}{stars}({_f3(se)})"


def _table(rows: list[list[str]], right_from: int = 1) -> str:
    """Fixed-width table: first column left-justified, the rest right."""
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    out = []
    for row in rows:
        cells = []
        for c, text in enumerate(row):
            if c == 0:
                cells.append(text.ljust(widths[c]))
            elif c < right_from:
                cells.append(text.ljust(widths[c]))
            else:
                cells.append(text.rjust(widths[c]))
        out.append("  ".join(cells).rstrip())
    return "\n".join(out)


def _term_rows(report: ComparisonReport):
    """Report rows: (display label, term index or None for reference)."""
    if not report.specs:
        return [(label, i) for i, label in enumerate(report.term_labels)]
    index = {label: i for i, label in enumerate(report.term_labels)}
    rows = [(INTERCEPT_LABEL, index[INTERCEPT_LABEL])]
    for spec in report.specs:
        for level in spec.coded_levels:
            label = f"{spec.name}={level}"
            rows.append((label, index[label]))
        rows.append((f"{spec.name}={spec.reference} (ref)", None))
    return rows


# ---------------------------------------------------------------------------
# link comparison (coefficients per link, deviance/AIC block, selection)
# ---------------------------------------------------------------------------


def render_comparison(report: ComparisonReport, output_format: str = "text") -> str:
    if output_format == "text":
        return _comparison_text(report)
    if output_format == "csv":
        return _comparison_csv(report)
    if output_format == "json":
        return _comparison_json(report)
    raise ValueError(f"unknown output format {output_format!r}")


def _comparison_text(report: ComparisonReport) -> str:
    header = ["term"] + [entry.link for entry in report.fits]
    rows = [header]
    for label, idx in _term_rows(report):
        row = [label]
        for entry in report.fits:
            if idx is None:
                row.append("-")
            elif entry.result is None:
                row.append("failed")
            else:
                r = entry.result
                row.append(_cell(r.coefficients[idx], r.stars[idx], r.std_errors[idx]))
        rows.append(row)
    blocks = ["Coefficients (estimate, significance, standard error)", _table(rows)]

    gof = [["statistic"] + [entry.link for entry in report.fits]]
    for name, getter in (("deviance", lambda r: r.deviance), ("AIC", lambda r: r.aic)):
        row = [name]
        for entry in report.fits:
            row.append("failed" if entry.result is None else _f2(getter(entry.result)))
        gof.append(row)
    blocks += ["", "Goodness of fit", _table(gof)]

    if report.warnings:
        blocks += ["", "Warnings"]
        blocks += [f"- {w}" for w in report.warnings]
    blocks += ["", f"selected: {report.selected if report.selected else 'none'}"]
    return "\n".join(blocks) + "\n"


def _comparison_csv(report: ComparisonReport) -> str:
    lines = ["link,term,estimate,se,p,stars"]
    for entry in report.fits:
        if entry.result is None:
            lines.append(f"{entry.link},__failed__,,,,")
            continue
        r = entry.result
        for i, term in enumerate(report.term_labels):
            lines.append(
                f"{entry.link},{term},{_full(r.coefficients[i])},"
                f"{_full(r.std_errors[i])},{_full(r.p_values[i])},{r.stars[i]}"
            )
        lines.append(f"{entry.link},deviance,{_full(r.deviance)},,,")
        lines.append(f"{entry.link},aic,{_full(r.aic)},,,")
    lines.append(f"{report.selected if report.selected else ''},selected,,,,")
    return "\n".join(lines) + "\n"


def _fit_payload(result: FitResult) -> dict:
    return {
        "link": result.link,
        "converged": result.converged,
        "iterations": result.iterations,
        "coefficients": [
            {
                "term": term,
                "estimate": float(result.coefficients[i]),
                "se": float(result.std_errors[i]),
                "z": float(result.z_values[i]),
                "p": float(result.p_values[i]),
                "stars": result.stars[i],
            }
            for i, term in enumerate(result.column_labels)
        ],
        "log_likelihood": float(result.log_likelihood),
        "deviance": float(result.deviance),
        "aic": float(result.aic),
    }


def _comparison_json(report: ComparisonReport) -> str:
    payload = {
        "terms": list(report.term_labels),
        "links": [
            {"link": entry.link, "error": entry.error}
            if entry.result is None
            else _fit_payload(entry.result)
            for entry in report.fits
        ],
        "selected": report.selected,
        "warnings": list(report.warnings),
    }
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------------------
# single fit
# ---------------------------------------------------------------------------


def render_fit(result: FitResult, output_format: str = "text") -> str:
    if output_format == "text":
        rows = [["term", "estimate", "se", "z", "p"]]
        for i, term in enumerate(result.column_labels):
            rows.append(
                [
                    term,
                    f"{_f3(result.coefficients[i])}{result.stars[i]}",
                    _f3(result.std_errors[i]),
                    _f3(result.z_values[i]),
                    _f3(result.p_values[i]),
                ]
            )
        summary = [
            ["log-likelihood", _f3(result.log_likelihood)],
            ["deviance", _f2(result.deviance)],
            ["AIC", _f2(result.aic)],
            ["iterations", str(result.iterations)],
            ["converged", "yes" if result.converged else "no"],
        ]
        return (
            f"Binomial regression ({result.link})\n"
            + _table(rows)
            + "\n\n"
            + _table(summary)
            + "\n"
        )
    if output_format == "csv":
        lines = ["link,term,estimate,se,p,stars"]
        for i, term in enumerate(result.column_labels):
            lines.append(
                f"{result.link},{term},{_full(result.coefficients[i])},"
                f"{_full(result.std_errors[i])},{_full(result.p_values[i])},"
                f"{result.stars[i]}"
            )
        lines.append(f"{result.link},log_likelihood,{_full(result.log_likelihood)},,,")
        lines.append(f"{result.link},deviance,{_full(result.deviance)},,,")
        lines.append(f"{result.link},aic,{_full(result.aic)},,,")
        return "\n".join(lines) + "\n"
    if output_format == "json":
        return json.dumps(_fit_payload(result), indent=2) + "\n"
    raise ValueError(f"unknown output format {output_format!r}")


# ---------------------------------------------------------------------------
# crosstab screening (one row per variable)
# ---------------------------------------------------------------------------


def render_crosstab(entries, output_format: str = "text") -> str:
    """Render per-variable chi-square rows.

    ``entries`` is a sequence of (variable_name, ChiSqResult | None,
    error_message | None) triples in declaration order.
    """
    if output_format == "text":
        rows = [["variable", "chi2", "df", "p-value"]]
        notes = []
        for name, result, error in entries:
            if result is None:
                rows.append([name, "-", "-", "-"])
                notes.append(f"{name}: {error}")
            else:
                rows.append(
                    [
                        name,
                        f"{_f3(result.chi2)}{result.star}",
                        str(result.df),
                        _f3(result.p_value),
                    ]
                )
                if result.low_expected_warning:
                    notes.append(f"{name}: some expected cell counts are below 5")
        text = "Chi-square association screening\n" + _table(rows)
        if notes:
            text += "\n\nWarnings\n" + "\n".join(f"- {n}" for n in notes)
        return text + "\n"
    if output_format == "csv":
        lines = ["variable,chi2,df,p_value,stars,low_expected,error"]
        for name, result, error in entries:
            if result is None:
                lines.append(f"{name},,,,,,{error}")
            else:
                lines.append(
                    f"{name},{_full(result.chi2)},{result.df},"
                    f"{_full(result.p_value)},{result.star},"
                    f"{str(result.low_expected_warning).lower()},"
                )
        return "\n".join(lines) + "\n"
    if output_format == "json":
        payload = []
        for name, result, error in entries:
            if result is None:
                payload.append({"variable": name, "error": error})
            else:
                payload.append(
                    {
                        "variable": name,
                        "chi2": float(result.chi2),
                        "df": int(result.df),
                        "p_value": float(result.p_value),
                        "stars": result.star,
                        "low_expected": bool(result.low_expected_warning),
                    }
                )
        return json.dumps(payload, indent=2) + "\n"
    raise ValueError(f"unknown output format {output_format!r}")
