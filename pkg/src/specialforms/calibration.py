"""Numerical comass estimation for sign-valued forms.

`evaluate` computes the pairing of a form with an orthonormal p-frame as a
sum of p x p determinants.  `comass` estimates the supremum of that pairing
over all frames by multi-start projected gradient ascent on the Stiefel
manifold; the support's coordinate planes are always included as starting
points, so the reported maximum is at least the best coordinate value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PreconditionError
from .forms import SpecialForm

ORTHONORMALITY_ATOL = 1e-10

DEFAULT_RESTARTS = 200
DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 500


@dataclass(frozen=True, eq=False)
class Frame:
    """p orthonormal vectors in R^d, stored as the rows of a (p, d) array."""

    vectors: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.vectors, dtype=float)
        if v.ndim != 2:
            raise DomainError("frame must be a 2-dimensional array")
        p, d = v.shape
        if p < 1 or p > d:
            raise DomainError(f"frame shape {v.shape} is not p x d with p <= d")
        gram = v @ v.T
        if float(np.max(np.abs(gram - np.eye(p)))) > ORTHONORMALITY_ATOL:
            raise PreconditionError("frame rows are not orthonormal")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @property
    def p(self) -> int:
        return self.vectors.shape[0]

    @property
    def d(self) -> int:
        return self.vectors.shape[1]

    @classmethod
    def coordinate(cls, d: int, indices) -> "Frame":
        """The coordinate plane spanned by the given axes, in order."""
        idx = [int(i) for i in indices]
        if any(not 1 <= i <= d for i in idx):
            raise DomainError(f"axes {idx} outside [1, {d}]")
        rows = np.zeros((len(idx), d))
        for a, i in enumerate(idx):
            rows[a, i - 1] = 1.0
        return cls(rows)


def evaluate(form: SpecialForm, frame: Frame) -> float:
    """Pairing of the form with the oriented plane spanned by the frame."""
    if frame.d != form.d:
        raise DomainError(f"frame lives in R^{frame.d}, form in R^{form.d}")
    if frame.p != form.p:
        raise DomainError(f"frame has {frame.p} vectors, form degree is {form.p}")
    if form.weight == 0:
        return 0.0
    idx = np.array([s.indices for s, _ in form.terms], dtype=int) - 1
    signs = np.array([g for _, g in form.terms], dtype=float)
    mats = np.transpose(frame.vectors[:, idx], (1, 0, 2))
    return float(signs @ np.linalg.det(mats))


def calibrated_coordinate_planes(
    form: SpecialForm,
) -> tuple[tuple, ...]:
    """The coordinate planes where the form attains value exactly +-1:
    precisely its support, with the stored orientation signs."""
    return form.terms


def _cofactors(mats: np.ndarray) -> np.ndarray:
    w, p, _ = mats.shape
    if p == 1:
        return np.ones_like(mats)
    if p == 2:
        c = np.empty_like(mats)
        c[:, 0, 0] = mats[:, 1, 1]
        c[:, 0, 1] = -mats[:, 1, 0]
        c[:, 1, 0] = -mats[:, 0, 1]
        c[:, 1, 1] = mats[:, 0, 0]
        return c
    cof = np.empty_like(mats)
    rows = list(range(p))
    for a in range(p):
        ra = rows[:a] + rows[a + 1 :]
        sub = mats[:, ra, :]
        for b in range(p):
            cb = rows[:b] + rows[b + 1 :]
            cof[:, a, b] = ((-1) ** (a + b)) * np.linalg.det(sub[:, :, cb])
    return cof


def _retract(a: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(a)
    s = np.sign(np.diag(r))
    s[s == 0] = 1.0
    return q * s


def _ascend(x, idx, signs, max_iter):
    """Projected gradient ascent with QR retraction and step halving."""

    def value(y):
        return float(signs @ np.linalg.det(y[idx, :]))

    def gradient(y):
        cof = _cofactors(y[idx, :])
        g = np.zeros_like(y)
        for t in range(len(signs)):
            g[idx[t], :] += signs[t] * cof[t]
        return g

    val = value(x)
    step = 1.0
    for _ in range(max_iter):
        g = gradient(x)
        xtg = x.T @ g
        xi = g - x @ ((xtg + xtg.T) / 2.0)
        if float(np.linalg.norm(xi)) < 1e-10:
            break
        step = min(step * 2.0, 1.0)
        improved = False
        while step > 1e-14:
            y = _retract(x + step * xi)
            nv = value(y)
            if nv > val + 1e-14:
                x, val = y, nv
                improved = True
                break
            step *= 0.5
        if not improved:
            break
    return x, val


@dataclass(frozen=True)
class ComassReport:
    """Outcome of the comass search.

    `restart_values` holds the final value of every start: first one entry
    per support plane, then one per random restart.  `calibrated` means the
    maximum equals 1 within the tolerance; `achieved_on_coordinate_plane`
    means no frame beat the best coordinate plane."""

    max_value: float
    calibrated: bool
    achieved_on_coordinate_plane: bool
    n_restarts: int
    restart_values: tuple[float, ...]
    frame: Frame

    def to_dict(self) -> dict:
        return {
            "max_value": self.max_value,
            "calibrated": self.calibrated,
            "achieved_on_coordinate_plane": self.achieved_on_coordinate_plane,
            "n_restarts": self.n_restarts,
            "restart_values": list(self.restart_values),
            "frame": [[float(x) for x in row] for row in self.frame.vectors],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ComassReport":
        try:
            return cls(
                max_value=float(data["max_value"]),
                calibrated=bool(data["calibrated"]),
                achieved_on_coordinate_plane=bool(
                    data["achieved_on_coordinate_plane"]
                ),
                n_restarts=int(data["n_restarts"]),
                restart_values=tuple(float(x) for x in data["restart_values"]),
                frame=Frame(np.array(data["frame"], dtype=float)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed comass report: {exc}") from exc


def comass(
    form: SpecialForm,
    restarts: int = DEFAULT_RESTARTS,
    tol: float = DEFAULT_TOL,
    *,
    seed: int = 0,
    max_iter: int = DEFAULT_MAX_ITER,
) -> ComassReport:
    """Best evaluation over orthonormal frames found by gradient ascent.

    Deterministic for a fixed seed.  Ties between frames reaching the same
    maximum are broken by the lexicographically smallest rounded frame.
    """
    if restarts < 0:
        raise DomainError(f"restart count must be >= 0, got {restarts}")
    if not 0.0 < tol <= 1e-2:
        raise DomainError(f"tolerance must lie in (0, 1e-2], got {tol}")
    d, p = form.d, form.p
    if form.weight == 0:
        return ComassReport(
            max_value=0.0,
            calibrated=False,
            achieved_on_coordinate_plane=False,
            n_restarts=restarts,
            restart_values=(),
            frame=Frame.coordinate(d, range(1, p + 1)),
        )
    idx = np.array([s.indices for s, _ in form.terms], dtype=int) - 1
    signs = np.array([g for _, g in form.terms], dtype=float)
    rng = np.random.default_rng(seed)

    starts = []
    for s, g in form.terms:
        x0 = np.zeros((d, p))
        for a, i in enumerate(s.indices):
            x0[i - 1, a] = 1.0
        if g < 0:
            x0[:, 0] *= -1.0
        starts.append(x0)
    for _ in range(restarts):
        starts.append(_retract(rng.standard_normal((d, p))))

    coord_best = 1.0  # each support plane evaluates to exactly +-1
    best_val = -np.inf
    best_x = None
    values = []
    for x0 in starts:
        x, val = _ascend(x0, idx, signs, max_iter)
        values.append(val)
        if val > best_val + 1e-12:
            best_val, best_x = val, x
        elif abs(val - best_val) <= 1e-12:
            if np.round(x, 9).tobytes() < np.round(best_x, 9).tobytes():
                best_x = x
    return ComassReport(
        max_value=best_val,
        calibrated=abs(best_val - 1.0) <= tol,
        achieved_on_coordinate_plane=best_val <= coord_best + tol,
        n_restarts=restarts,
        restart_values=tuple(values),
        frame=Frame(best_x.T),
    )
