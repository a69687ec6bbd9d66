"""Random real-spectrum matrices and the command line round trip.

A random H = D diag(lam) D^-1 with real lam is pseudo-Hermitian with respect
to (D D^dagger)^-1. The full analysis needs no metric from the user: it
solves the metric family and chooses one itself. The last part writes a
matrix file and runs the ``pseudoherm`` command on it.

Run:  python3 demos/04_random_and_cli.py
"""

import json
import tempfile
from pathlib import Path

import numpy as np

from pseudoherm import fixtures
from pseudoherm.analysis import AnalysisOptions, analyze, emit_report
from pseudoherm.cli import main
from pseudoherm.metric import pseudo_hermiticity_residual

H, D, lam = fixtures.random_real_spectrum(4, seed=7)
print("constructed eigenvalues:", lam)
print("residual of (DD^+)^-1: %.2e" % pseudo_hermiticity_residual(H, np.linalg.inv(D @ D.conj().T)))

report = analyze(H)
print("analysis ok:", report.ok)
print("metric choice:", report.metrics["fundamental"]["choice"])
print("worst must-pass residual: %.2e" % max(report.residuals[k] for k in report.verdicts
                                             if k.startswith("suite.")))

# A conjugate-paired spectrum has no real-definite eigenvector norms, only the
# pair metric (D S D^dagger)^-1.
Hc, _, _ = fixtures.random_conjugate_paired(1, seed=3)
plain = analyze(Hc)
print("without the pair option:", plain.error["type"])
paired = analyze(Hc, AnalysisOptions(conjugate_pairs=True))
print("\n".join(l for l in emit_report(paired, "markdown").splitlines()
                if l.startswith(("class", "- PASS", "- FAIL"))))

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "i1.json"
    main(["export", "I1", "--param", "r=2", "-o", str(path)])
    out = Path(tmp) / "report.json"
    code = main(["analyze", str(path), "-o", str(out)])
    data = json.loads(out.read_text())
    print("exit code:", code)
    print("C from the report:", data["suite"]["C"]["matrix"])
