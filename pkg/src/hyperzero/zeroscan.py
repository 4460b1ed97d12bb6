"""Empirical zero exploration: polar disk scans of |Z|, real negative-axis
roots, and minimum-modulus roots from exact coefficients.

Scans produce evidence tables; they certify nothing beyond the sampled points.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .bounds import hypergraph_radius
from .exact import BudgetExceeded, dc_coeffs, dc_eval_many
from .hypergraph import Hypergraph
from .poly import min_modulus_root, relative_residuals

DEFAULT_RESOLUTION = 256
ENVELOPE_RTOL = 1e-9
EVALUATORS = ("dc", "coeffs", "closed_form")


def polar_grid(radius: float, resolution: int, center: complex = 0j) -> np.ndarray:
    """resolution x resolution points, radius-major: radii 0..radius inclusive,
    angles 2 pi j / resolution."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    radii = np.linspace(0.0, radius, resolution) if resolution > 1 else np.array([radius])
    angles = 2 * np.pi * np.arange(resolution) / resolution
    return center + (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()


def envelope(G: Hypergraph) -> float:
    """(1 - 1/(Delta+1))^n, the modulus floor on the hypergraph zero-free disk."""
    d = max(G.max_degree, 1)
    return math.exp(G.vertex_count * math.log1p(-1 / (d + 1)))


@dataclass
class ScanResult:
    center: complex
    radius: float
    resolution: int
    evaluator: str
    points: np.ndarray
    values: np.ndarray
    envelope: float
    envelope_radius: float
    errors: list = field(default_factory=list)

    @property
    def abs_z(self) -> np.ndarray:
        return np.abs(self.values)

    @property
    def arg_z(self) -> np.ndarray:
        return np.angle(self.values)

    @property
    def min_index(self) -> int:
        a = np.where(np.isnan(self.abs_z), np.inf, self.abs_z)
        return int(np.argmin(a))

    @property
    def min_location(self) -> complex:
        return complex(self.points[self.min_index])

    @property
    def min_abs(self) -> float:
        return float(self.abs_z[self.min_index])

    @property
    def below_envelope(self) -> list[int]:
        """Indices of all points with |Z| under the envelope, wherever they are."""
        floor = self.envelope * (1 - ENVELOPE_RTOL)
        return [int(i) for i in np.flatnonzero(self.abs_z < floor)]

    @property
    def violations(self) -> list[int]:
        """Points under the envelope that lie inside the zero-free disk."""
        inside = np.abs(self.points) <= self.envelope_radius * (1 + 1e-12)
        return [i for i in self.below_envelope if inside[i]]

    def rows(self):
        for z, v in zip(self.points, self.values):
            yield z.real, z.imag, abs(v), math.atan2(v.imag, v.real) if v == v else math.nan

    def to_csv(self, out=None) -> str | None:
        """Write `re,im,abs_z,arg_z` rows (17 significant digits); return text if `out` is None."""
        buf = io.StringIO() if out is None else out
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["re", "im", "abs_z", "arg_z"])
        for row in self.rows():
            w.writerow([f"{x:.17g}" for x in row])
        return buf.getvalue() if out is None else None

    def summary(self) -> dict:
        m = self.min_location
        return {"center": [self.center.real, self.center.imag], "radius": self.radius,
                "resolution": self.resolution, "evaluator": self.evaluator,
                "points": int(self.points.size), "min_abs": self.min_abs,
                "min_location": [m.real, m.imag], "envelope": self.envelope,
                "envelope_radius": self.envelope_radius,
                "below_envelope": len(self.below_envelope),
                "violations": [[complex(self.points[i]).real, complex(self.points[i]).imag]
                               for i in self.violations],
                "errors": self.errors}

    def to_json(self) -> str:
        return json.dumps(self.summary())


def _horner(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(z)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def _eval_chunk(G: Hypergraph, z: np.ndarray, budget: int | None):
    try:
        return dc_eval_many(G, z, budget=budget), None
    except BudgetExceeded as exc:
        return np.full(z.shape, np.nan + 0j), str(exc)


def scan_disk(G: Hypergraph, radius: float, resolution: int = DEFAULT_RESOLUTION,
              evaluator: str = "dc", workers: int = 1, center: complex = 0j,
              Zfn: Callable | None = None, budget: int | None = None) -> ScanResult:
    """Evaluate Z_G on a polar grid and compare |Z| with the envelope.

    ``dc`` evaluates the whole grid as one vectorized deletion/contraction
    (split across `workers` processes); ``coeffs`` computes exact
    coefficients once and uses Horner; ``closed_form`` calls `Zfn` on the
    grid.  A budget refusal marks the affected points NaN and is recorded in
    ``errors``.  Results do not depend on `workers`.
    """
    if evaluator not in EVALUATORS:
        raise ValueError(f"evaluator must be one of {EVALUATORS}")
    pts = polar_grid(radius, resolution, complex(center))
    errors = []
    if evaluator == "closed_form":
        if Zfn is None:
            raise ValueError("closed_form evaluator needs Zfn")
        vals = np.asarray(Zfn(pts), dtype=complex)
    elif evaluator == "coeffs":
        try:
            vals = _horner(dc_coeffs(G, budget=budget).to_numpy(), pts)
        except BudgetExceeded as exc:
            vals = np.full(pts.shape, np.nan + 0j)
            errors.append(str(exc))
    else:
        chunks = np.array_split(pts, max(1, workers))
        if workers > 1:
            with ProcessPoolExecutor(workers) as pool:
                parts = list(pool.map(_eval_chunk, [G] * len(chunks), chunks,
                                      [budget] * len(chunks)))
        else:
            parts = [_eval_chunk(G, c, budget) for c in chunks]
        vals = np.concatenate([v for v, _ in parts])
        errors.extend(e for _, e in parts if e)
    return ScanResult(complex(center), float(radius), resolution, evaluator, pts, vals,
                      envelope(G), hypergraph_radius(max(G.max_degree, 1)), errors)


def negative_axis_root(Zfn: Callable[[float], float], hi: float, tol: float = 1e-12,
                       samples: int = 4096) -> float | None:
    """Real root of smallest magnitude on [-hi, 0), or None without a sign change.

    Samples `samples` points outward from 0 and bisects the first bracket.
    """
    if hi <= 0:
        raise ValueError("hi must be positive")
    prev_x, prev = 0.0, Zfn(0.0)
    for i in range(1, samples + 1):
        x = -hi * i / samples
        fx = Zfn(x)
        if fx == 0:
            return x
        if (fx < 0) != (prev < 0):
            lo, hi_ = x, prev_x
            flo = fx
            while hi_ - lo > tol:
                mid = 0.5 * (lo + hi_)
                fm = Zfn(mid)
                if fm == 0:
                    return mid
                if (fm < 0) == (flo < 0):
                    lo, flo = mid, fm
                else:
                    hi_ = mid
            return 0.5 * (lo + hi_)
        prev_x, prev = x, fx
    return None


@dataclass(frozen=True)
class MinRoot:
    root: complex
    modulus: float
    residual: float
    degree: int

    def __complex__(self):
        return self.root

    def to_dict(self) -> dict:
        return {"root": [self.root.real, self.root.imag], "modulus": self.modulus,
                "residual": self.residual, "degree": self.degree}


def min_root_of(G: Hypergraph, budget: int | None = None) -> MinRoot:
    """Minimum-modulus root of Z_G with its relative residual certificate."""
    p = dc_coeffs(G, budget=budget)
    if p.degree < 1:
        raise ValueError("Z_G is constant; no roots")
    rho = min_modulus_root(p)
    res = float(relative_residuals(p, np.array([rho]))[0])
    return MinRoot(rho, abs(rho), res, p.degree)
