"""JSON matrix files.

Format::

    {"n": 2,
     "H": [[[re, im], [re, im]], [[re, im], [re, im]]],
     "eta": <same shape, optional>,
     "phases": [[re, im], ...]  (optional, one unit complex per eigenvector)}

Complex numbers are ``[re, im]`` pairs and matrices are row-major nested
lists. Floats are written with ``repr`` so a write/parse cycle is exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import NonSquare, ParseError


@dataclass(frozen=True, eq=False)
class MatrixFile:
    H: np.ndarray
    eta: np.ndarray = None
    phases: np.ndarray = None

    @property
    def n(self):
        return self.H.shape[0]


def _complex(obj, where):
    if (not isinstance(obj, (list, tuple)) or len(obj) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj)):
        raise ParseError(f"expected a [re, im] pair of numbers, got {obj!r}", where)
    re, im = float(obj[0]), float(obj[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ParseError("non-finite number", where)
    return complex(re, im)


def _matrix(obj, n, key):
    if not isinstance(obj, list) or not obj:
        raise ParseError("expected a non-empty list of rows", key)
    rows = len(obj)
    out = []
    for i, row in enumerate(obj):
        if not isinstance(row, list):
            raise ParseError("expected a list of [re, im] entries", f"{key}[{i}]")
        if len(row) != rows:
            raise NonSquare(f"row has {len(row)} entries but the matrix has {rows} rows",
                            f"{key}[{i}]")
        out.append([_complex(x, f"{key}[{i}][{j}]") for j, x in enumerate(row)])
    if n is not None and rows != n:
        raise ParseError(f"declared n={n} but matrix is {rows}x{rows}", key)
    return np.array(out, dtype=complex)


def parse_matrix_text(text, source="<string>"):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from exc
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object", source)
    if "n" not in data:
        raise ParseError("missing field", f"{source}: n")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"n must be a positive integer, got {n!r}", f"{source}: n")
    if "H" not in data:
        raise ParseError("missing field", f"{source}: H")
    H = _matrix(data["H"], n, "H")
    eta = _matrix(data["eta"], n, "eta") if data.get("eta") is not None else None
    phases = None
    if data.get("phases") is not None:
        ph = data["phases"]
        if not isinstance(ph, list) or len(ph) != n:
            raise ParseError(f"expected {n} phases", "phases")
        phases = np.array([_complex(p, f"phases[{k}]") for k, p in enumerate(ph)])
        if np.any(np.abs(np.abs(phases) - 1) > 1e-9):
            raise ParseError("phases must have unit modulus", "phases")
    return MatrixFile(H=H, eta=eta, phases=phases)


def parse_matrix_file(path):
    """Read a matrix file.

    Raises
    ------
    ParseError
        Malformed JSON or fields; the message carries line or field location.
    NonSquare
        A matrix row length differs from the row count.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(str(exc), str(path)) from exc
    return parse_matrix_text(text, str(path))


def complex_to_json(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def matrix_to_json(a):
    return [[complex_to_json(z) for z in row] for row in np.asarray(a)]


def dumps_matrix(H, eta=None, phases=None):
    H = np.asarray(H, dtype=complex)
    data = {"n": int(H.shape[0]), "H": matrix_to_json(H)}
    if eta is not None:
        data["eta"] = matrix_to_json(eta)
    if phases is not None:
        data["phases"] = [complex_to_json(p) for p in phases]
    return json.dumps(data)


def write_matrix_file(path, H, eta=None, phases=None):
    Path(path).write_text(dumps_matrix(H, eta, phases) + "\n")


def fixture_phases(fixture, tol=None):
    """Phases of the fixture's pinned vectors relative to the auto convention.

    Writing these to a matrix file lets the command line reproduce the
    reference operators exactly.
    """
    from .spectral import auto_phase

    if fixture.pinned_eigenvectors is None:
        return None
    out = []
    for v in np.asarray(fixture.pinned_eigenvectors).T:
        w = auto_phase(v)
        k = int(np.argmax(np.abs(w)))
        out.append(v[k] / w[k])
    return np.array(out)


def write_fixture(path, fixture, include_metric=True, include_phases=True):
    write_matrix_file(
        path,
        fixture.hamiltonian,
        eta=fixture.fundamental_metric if include_metric else None,
        phases=fixture_phases(fixture) if include_phases else None,
    )
