"""JSON and CSV encodings of operators, measures and reports."""

from __future__ import annotations

import csv
import io as _io
import json
import math
from pathlib import Path

import numpy as np

from .errors import InvalidInputError
from .linalg import as_hermitian
from .mu_region import BoundaryCurve, EmbeddingReport, ErrorPoint, KernelJoint
from .observables import ArcSet
from .spectral import GroundStateReport, LenardReport
from .transport import WEIGHT_SUM_TOL, ProbCircle, ProbInt


def _require(d, key, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise InvalidInputError(f"missing field {key!r}")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise InvalidInputError(f"field {key!r} has the wrong type")
    return v


# -- matrices ---------------------------------------------------------------

def matrix_to_json(A) -> dict:
    A = np.asarray(A)
    n = A.shape[0]
    return {
        "dim": int(n),
        "re": [float(x) for x in np.real(A).ravel()],
        "im": [float(x) for x in np.imag(A).ravel()],
    }


def matrix_from_json(d: dict) -> np.ndarray:
    n = _require(d, "dim", int)
    re = _require(d, "re", list)
    im = _require(d, "im", list)
    if n < 1 or len(re) != n * n or len(im) != n * n:
        raise InvalidInputError("matrix JSON: 're' and 'im' must each hold dim*dim numbers")
    try:
        A = np.asarray(re, dtype=float) + 1j * np.asarray(im, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError("matrix JSON: non-numeric entry") from exc
    return as_hermitian(A.reshape(n, n))


# -- arc sets and measures --------------------------------------------------

def arcset_to_json(X: ArcSet) -> dict:
    return {"arcs": [[a, b] for a, b in X.arcs]}


def arcset_from_json(d: dict) -> ArcSet:
    return ArcSet.from_intervals(_require(d, "arcs", list))


def _atoms(d) -> tuple[list, list]:
    atoms = _require(d, "atoms", list)
    if not atoms:
        raise InvalidInputError("measure has no atoms")
    try:
        pos = [a[0] for a in atoms]
        wts = [float(a[1]) for a in atoms]
    except (TypeError, IndexError, ValueError) as exc:
        raise InvalidInputError("atoms must be [position, weight] pairs") from exc
    if any(w < 0 or not math.isfinite(w) for w in wts):
        raise InvalidInputError("weights must be finite and nonnegative")
    if abs(sum(wts) - 1.0) > WEIGHT_SUM_TOL:
        raise InvalidInputError(f"weights sum to {sum(wts)!r}, not 1")
    return pos, wts


def probcircle_to_json(mu: ProbCircle) -> dict:
    return {"atoms": [[a, w] for a, w in mu.atoms]}


def probcircle_from_json(d: dict) -> ProbCircle:
    pos, wts = _atoms(d)
    return ProbCircle.from_atoms(pos, wts)


def probint_to_json(nu: ProbInt) -> dict:
    return {"atoms": [[k, w] for k, w in nu.atoms.items()]}


def probint_from_json(d: dict) -> ProbInt:
    pos, wts = _atoms(d)
    if any(not isinstance(k, int) or isinstance(k, bool) for k in pos):
        raise InvalidInputError("integer measure atoms must have integer positions")
    return ProbInt.from_atoms(pos, wts)


def kernel_joint_from_json(d: dict) -> KernelJoint:
    phase = [probcircle_from_json(p) for p in _require(d, "phase_kernel", list)]
    if "number_kernel" in d:
        number = [probint_from_json(q) for q in _require(d, "number_kernel", list)]
        return KernelJoint(tuple(phase), tuple(number))
    return KernelJoint.sharp_number(phase)


# -- reports ----------------------------------------------------------------

def ground_report_to_json(r: GroundStateReport) -> dict:
    return {
        "space": r.space,
        "weight": r.weight,
        "dims": list(r.dims),
        "alphas": [float(a) for a in r.alphas],
        "value": float(r.value),
        "indices": [int(k) for k in r.indices],
        "vector": [[float(np.real(c)), float(np.imag(c))] for c in r.vector],
        "converged": bool(r.converged),
    }


def ground_report_from_json(d: dict) -> GroundStateReport:
    vec = np.array([complex(re, im) for re, im in _require(d, "vector", list)])
    indices = d.get("indices")
    if indices is None:
        indices = list(range(vec.size))
    return GroundStateReport(
        space=d.get("space", "fock"),
        dims=list(_require(d, "dims", list)),
        alphas=list(_require(d, "alphas", list)),
        value=float(_require(d, "value")),
        vector=vec,
        indices=np.asarray(indices),
        converged=bool(_require(d, "converged")),
        weight=d.get("weight"),
    )


def lenard_report_to_json(r: LenardReport) -> dict:
    return {"a_plus": r.a_plus, "bound": r.bound, "truncated_sup": r.truncated_sup}


def error_point_to_json(p: ErrorPoint) -> dict:
    return {"d1": p.d1, "d2": p.d2, "source": p.source}


def error_point_from_json(d: dict) -> ErrorPoint:
    return ErrorPoint(float(_require(d, "d1")), float(_require(d, "d2")), str(d.get("source", "")))


def embedding_report_to_json(r: EmbeddingReport) -> dict:
    return {
        "window": [r.window.kmin, r.window.kmax],
        "distributions": {str(k): probint_to_json(v) for k, v in r.distributions.items()},
        "errors": {str(k): v for k, v in r.errors.items()},
        "source_errors": {str(k): v for k, v in r.source_errors.items()},
        "sup_embedded": r.sup_embedded,
        "sup_source": r.sup_source,
        "max_deviation": r.max_deviation,
    }


BOUNDARY_HEADER = ("t", "d1", "d2", "energy", "converged")


def boundary_to_csv(curve: BoundaryCurve) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BOUNDARY_HEADER)
    for p in curve.points:
        writer.writerow([repr(p.t), repr(p.point.d1), repr(p.point.d2), repr(p.energy),
                         "true" if p.converged else "false"])
    return buf.getvalue()


def boundary_from_csv(text: str, space: str = "torus") -> BoundaryCurve:
    from .mu_region import BoundaryPoint

    rows = list(csv.reader(_io.StringIO(text)))
    if not rows or tuple(rows[0]) != BOUNDARY_HEADER:
        raise InvalidInputError("boundary CSV has the wrong header")
    curve = BoundaryCurve(space)
    for row in rows[1:]:
        t, d1, d2, energy, conv = row
        curve.points.append(BoundaryPoint(float(t), ErrorPoint(float(d1), float(d2)), float(energy),
                                          conv == "true"))
    return curve


# -- files ------------------------------------------------------------------

def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def write_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def read_json(path):
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: invalid JSON ({exc.msg})") from exc
