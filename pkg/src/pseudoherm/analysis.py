"""End-to-end analysis of one matrix and report rendering.

The pipeline runs eig -> classify -> fundamental metric -> eta-normalize ->
diagonalizer -> eta_plus -> biorthonormal basis -> symmetry suite ->
inner products. A failure stops it and the report keeps what was computed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .core import DEFAULT_TOL, Tolerance, as_square, condition_number, fro
from .errors import (
    MetricError,
    MixedSpectrum,
    PseudoHermError,
    SpectralError,
    SymmetryError,
    ZeroEtaNorm,
)
from .matrixio import complex_to_json, matrix_to_json
from .metric import (
    choose_fundamental_metric,
    classify_metric,
    metric_conjugate_paired,
    metric_from_diagonalizer,
    pseudo_hermiticity_residual,
    solve_metric_space,
)
from .products import gram_report
from .spectral import (
    SpectrumClass,
    auto_phase,
    build_biortho,
    classify_spectrum,
    decompose,
    eig,
    pairing_permutation,
)
from .symmetry import build_suite, verify_suite

STAGES = ("spectral", "metric", "suite")


@dataclass(frozen=True)
class AnalysisOptions:
    tol: Tolerance = DEFAULT_TOL
    eta: np.ndarray = None
    ordering: tuple = None
    phases: np.ndarray = None
    pinned_vectors: np.ndarray = None
    conjugate_pairs: bool = False
    seed: int = 0


@dataclass(eq=False)
class AnalysisReport:
    """Everything the pipeline produced, plus verdicts backed by residuals.

    ``error`` is ``None`` on a complete run, otherwise
    ``{"stage": ..., "type": ..., "message": ...}``.
    """

    input: dict
    spectrum: dict = None
    metrics: dict = None
    suite: dict = None
    products: dict = None
    verdicts: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    error: dict = None

    @property
    def ok(self):
        return self.error is None and all(self.verdicts.values())

    @property
    def failed_stage(self):
        if self.error is not None:
            return self.error["stage"]
        bad = [k for k, v in self.verdicts.items() if not v]
        if not bad:
            return None
        return "metric" if all(k.startswith("metric.") for k in bad) else "suite"

    def to_dict(self):
        return {
            "input": self.input,
            "spectrum": self.spectrum,
            "metrics": self.metrics,
            "suite": self.suite,
            "products": self.products,
            "verdicts": self.verdicts,
            "residuals": self.residuals,
            "error": self.error,
        }


def _stage_of(exc):
    if isinstance(exc, SpectralError):
        return "spectral"
    if isinstance(exc, MetricError):
        return "metric"
    if isinstance(exc, SymmetryError):
        return "suite"
    return "internal"


def _verdict(report, name, value, bound):
    report.residuals[name] = float(value)
    report.verdicts[name] = bool(value <= bound)


def _flags(eta, tol):
    return classify_metric(eta, tol).as_dict()


def analyze(H, options=None):
    """Run the full pipeline on ``H`` and return an :class:`AnalysisReport`.

    Never raises for errors from the numerical stages; they are recorded in
    ``report.error`` with the stage that failed.
    """
    opts = options or AnalysisOptions()
    tol = opts.tol
    H = as_square(H, "H")
    report = AnalysisReport(input={
        "n": int(H.shape[0]),
        "H": matrix_to_json(H),
        "eta": None if opts.eta is None else matrix_to_json(opts.eta),
        "options": {
            "tol": {"abs": tol.abs, "rel": tol.rel},
            "ordering": None if opts.ordering is None else [int(k) for k in opts.ordering],
            "phases": None if opts.phases is None else [complex_to_json(p) for p in opts.phases],
            "pinned_vectors": opts.pinned_vectors is not None,
            "conjugate_pairs": bool(opts.conjugate_pairs),
        },
        "version": __version__,
    })
    try:
        _run(H, opts, report)
    except PseudoHermError as exc:
        report.error = {"stage": _stage_of(exc), "type": type(exc).__name__, "message": str(exc)}
    return report


def _run(H, opts, report):
    tol = opts.tol
    evals, raw = eig(H, tol, ordering=opts.ordering)
    cls, pairs = classify_spectrum(evals, tol)
    report.spectrum = {
        "eigenvalues": [complex_to_json(e) for e in evals],
        "class": cls.value,
        "pairs": None if pairs is None else [list(p) for p in pairs],
    }
    if cls is SpectrumClass.MIXED:
        raise MixedSpectrum("spectrum mixes real eigenvalues with complex ones")

    family = solve_metric_space(H, tol)
    report.metrics = {
        "family": {
            "dimension": family.dimension,
            "basis": [matrix_to_json(B) for B in family.basis],
            "flags": [_flags(B, tol) for B in family.basis],
        },
    }

    if cls is SpectrumClass.CONJUGATE_PAIRED:
        if not opts.conjugate_pairs:
            raise ZeroEtaNorm(
                "all eigenvalues are complex, every eigenvector has zero eta-norm; "
                "use the conjugate-pair metric instead")
        order = pairing_permutation(pairs)
        D = np.column_stack([auto_phase(raw[:, k]) for k in order])
        adjacent = [(k, k + 1) for k in range(0, len(order), 2)]
        eta_bar = metric_conjugate_paired(D, adjacent, tol)
        report.metrics["conjugate_pair_metric"] = {
            "matrix": matrix_to_json(eta_bar.matrix),
            "flags": eta_bar.flags.as_dict(),
            "pairing": [list(p) for p in pairs],
        }
        _verdict(report, "metric.conjugate_pair_pseudo_hermitian",
                 pseudo_hermiticity_residual(H, eta_bar.matrix, tol),
                 tol.bound(condition_number(eta_bar.matrix)))
        return

    if opts.eta is not None:
        eta, choice = as_square(opts.eta, "eta"), "supplied"
    else:
        eta, choice = choose_fundamental_metric(H, family, tol, seed=opts.seed)
        if eta is None:
            raise MetricError("no Hermitian invertible metric in the solved family")
    eta_res = pseudo_hermiticity_residual(H, eta, tol)
    report.metrics["fundamental"] = {
        "matrix": matrix_to_json(eta),
        "choice": choice,
        "flags": _flags(eta, tol),
        "in_family_defect": float(family.projection_defect(eta)) if family.dimension else 1.0,
    }
    _verdict(report, "metric.fundamental_pseudo_hermitian", eta_res,
             tol.bound(condition_number(eta)))
    if not report.verdicts["metric.fundamental_pseudo_hermitian"]:
        raise MetricError(f"supplied metric violates pseudo-Hermiticity (residual {eta_res:.3g})")

    sd = decompose(H, eta, tol, ordering=opts.ordering if opts.pinned_vectors is None else None,
                   phases=opts.phases, vectors=opts.pinned_vectors)
    report.spectrum.update({
        "eigenvalues": [complex_to_json(e) for e in sd.eigenvalues],
        "signs": list(sd.signs),
        "vectors": matrix_to_json(sd.vectors),
        "diagonalizer_condition": sd.condition,
    })

    eta_plus = metric_from_diagonalizer(sd.diagonalizer, tol)
    report.metrics["eta_plus"] = {
        "matrix": matrix_to_json(eta_plus.matrix),
        "flags": eta_plus.flags.as_dict(),
    }
    _verdict(report, "metric.eta_plus_pseudo_hermitian",
             pseudo_hermiticity_residual(H, eta_plus.matrix, tol),
             tol.bound(condition_number(eta_plus.matrix)))
    report.residuals["metric.eta_plus_positive_definite"] = float(
        np.linalg.eigvalsh(eta_plus.matrix).min())
    report.verdicts["metric.eta_plus_positive_definite"] = eta_plus.flags.positive_definite

    bio = build_biortho(sd.vectors, eta, eta_plus.matrix, tol)
    report.residuals["spectral.biorthonormality"] = fro(bio.gram() - np.eye(bio.dim))

    suite = build_suite(bio, eta=eta, eta_plus=eta_plus.matrix, tol=tol)
    check = verify_suite(H, suite, bio, tol, strict=False)
    report.suite = {
        name: {"matrix": matrix_to_json(op.matrix), "antilinear": op.antilinear}
        for name, op in suite.operators().items()
    }
    for name, value in check["residuals"].items():
        report.residuals[f"suite.{name}"] = float(value)
    for name, passed in check["passed"].items():
        report.verdicts[f"suite.{name}"] = passed

    grams = gram_report(bio, eta, eta_plus.matrix, suite, tol)
    report.products = {
        name: {
            "values": matrix_to_json(g.values),
            "real_definite": g.real_definite,
            "diagonal_signs": list(g.diagonal_signs),
        }
        for name, g in grams.items()
    }
    for name in ("X:C", "X:PT", "X:CPT"):
        g = grams[name].values
        report.residuals[f"products.{name}.real_definite"] = float(np.abs(g.imag).max())
        report.verdicts[f"products.{name}.real_definite"] = grams[name].real_definite


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def emit_report(report, fmt="json"):
    """Render a report as ``"json"`` (stable key order) or ``"markdown"``."""
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, allow_nan=True)
    if fmt == "markdown":
        return _markdown(report)
    raise ValueError(f"unknown format {fmt!r}")


def _fmt_complex(z):
    re, im = z
    if im == 0:
        return f"{re:.12g}"
    if re == 0:
        return f"{im:.12g}i"
    sign = "+" if im >= 0 else "-"
    return f"{re:.12g}{sign}{abs(im):.12g}i"


def _md_matrix(m):
    lines = []
    for row in m:
        lines.append("| " + " | ".join(_fmt_complex(z) for z in row) + " |")
    header = "| " + " | ".join(f"col {j}" for j in range(len(m))) + " |"
    sep = "|" + "---|" * len(m)
    return "\n".join([header, sep, *lines])


def _markdown(report):
    out = ["# Pseudo-Hermiticity analysis", ""]
    out.append(f"dimension: {report.input['n']}")
    out.append("")
    out.append("## Spectrum")
    if report.spectrum:
        out.append(f"class: {report.spectrum['class']}")
        for k, e in enumerate(report.spectrum["eigenvalues"]):
            sign = ""
            if "signs" in report.spectrum:
                sign = f" (eta-norm sign {report.spectrum['signs'][k]:+d})"
            out.append(f"- E{k} = {_fmt_complex(e)}{sign}")
    else:
        out.append("not computed")
    out.append("")
    out.append("## Metrics")
    if report.metrics:
        out.append(f"metric family dimension: {report.metrics['family']['dimension']}")
        for key, title in (("fundamental", "Fundamental metric"),
                           ("eta_plus", "Positive-definite metric eta_plus"),
                           ("conjugate_pair_metric", "Conjugate-pair metric")):
            if key in report.metrics:
                entry = report.metrics[key]
                out += ["", f"### {title}"]
                if "choice" in entry:
                    out.append(f"choice: {entry['choice']}")
                out.append(_md_matrix(entry["matrix"]))
                flags = ", ".join(k for k, v in entry["flags"].items() if v) or "none"
                out.append(f"flags: {flags}")
    else:
        out.append("metric family dimension: 0")
    out.append("")
    out.append("## Symmetry operators")
    if report.suite:
        for name, entry in report.suite.items():
            kind = "antilinear (times K0)" if entry["antilinear"] else "linear"
            out += ["", f"### {name}, {kind}", _md_matrix(entry["matrix"])]
    else:
        out.append("not computed")
    out.append("")
    out.append("## Inner products")
    if report.products:
        for name, entry in report.products.items():
            signs = ", ".join(str(s) for s in entry["diagonal_signs"])
            out.append(f"- {name}: real-definite={entry['real_definite']}, diagonal=({signs})")
    else:
        out.append("not computed")
    out.append("")
    out.append("## Verdicts")
    for name, passed in report.verdicts.items():
        value = report.residuals.get(name)
        tail = f" (residual {value:.3e})" if value is not None else ""
        out.append(f"- {'PASS' if passed else 'FAIL'} {name}{tail}")
    if report.error:
        out += ["", f"**error** in stage {report.error['stage']}: "
                    f"{report.error['type']}: {report.error['message']}"]
    return "\n".join(out) + "\n"
