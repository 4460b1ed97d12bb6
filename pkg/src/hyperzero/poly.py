"""Dense univariate polynomials, log power series, and simultaneous root finding.

Coefficients are stored in ascending degree.  Polynomials whose coefficients
are all Python ints use the exact backend; everything else is complex-float.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
import numpy as np

DEFAULT_TOL = 1e-10
EPS = np.finfo(float).eps


class RootFindingError(RuntimeError):
    """The root finder hit its iteration cap; `best` holds the last iterate."""

    def __init__(self, message: str, best: np.ndarray):
        super().__init__(message)
        self.best = best


def _is_int(c) -> bool:
    return isinstance(c, (int, np.integer)) and not isinstance(c, bool)


@dataclass(frozen=True)
class DensePolynomial:
    coeffs: tuple
    exact: bool = field(default=False)

    def __init__(self, coeffs: Iterable, exact: bool | None = None):
        cs = list(coeffs)
        all_int = all(_is_int(c) for c in cs)
        if exact is None:
            exact = all_int
        if exact:
            if not all_int:
                raise ValueError("exact backend needs integer coefficients")
            cs = [int(c) for c in cs]
        else:
            cs = [complex(c) for c in cs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0 if exact else 0j]
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "exact", exact)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if any(self.coeffs) else -1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, j):
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def __call__(self, z, compensated: bool = False):
        return self.eval(z, compensated)

    def eval(self, z, compensated: bool = False):
        """Horner evaluation.

        With `compensated`, the sum is formed in exact rational arithmetic from
        the binary values of `z` and the coefficients and rounded once.  `z`
        may be a numpy array for vectorized evaluation (not compensated).
        """
        if compensated and not isinstance(z, np.ndarray):
            zc = complex(z)
            zr, zi = Fraction(zc.real), Fraction(zc.imag)
            ar, ai = Fraction(0), Fraction(0)
            for c in reversed(self.coeffs):
                cc = complex(c) if not self.exact else c
                cr = Fraction(cc.real) if not self.exact else Fraction(c)
                ci = Fraction(cc.imag) if not self.exact else Fraction(0)
                ar, ai = ar * zr - ai * zi + cr, ar * zi + ai * zr + ci
            return complex(float(ar), float(ai))
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __add__(self, other: "DensePolynomial") -> "DensePolynomial":
        n = max(len(self), len(other))
        return DensePolynomial([self[j] + other[j] for j in range(n)],
                               exact=self.exact and other.exact)

    def __mul__(self, other: "DensePolynomial") -> "DensePolynomial":
        if self.exact and other.exact:
            out = [0] * (len(self) + len(other) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return DensePolynomial(out, exact=True)
        return DensePolynomial(np.convolve(self.to_numpy(), other.to_numpy()), exact=False)

    def to_numpy(self) -> np.ndarray:
        """Complex-float coefficient array; the only lossy conversion."""
        if self.exact:
            return np.array([float(c) for c in self.coeffs], dtype=complex)
        return np.array(self.coeffs, dtype=complex)

    def to_complex(self) -> "DensePolynomial":
        return DensePolynomial(self.to_numpy(), exact=False)

    def truncate(self, r: int) -> "DensePolynomial":
        return DensePolynomial(self.coeffs[: r + 1], exact=self.exact)

    def scale_at(self, radius: float) -> float:
        """Coefficient-magnitude envelope sum_j |c_j| radius^j."""
        return float(sum(abs(complex(c)) * radius ** j if not self.exact
                         else abs(c) * radius ** j for j, c in enumerate(self.coeffs)))

    def to_json(self) -> str:
        if self.exact:
            return json.dumps([str(c) for c in self.coeffs])
        return json.dumps([[c.real, c.imag] for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> "DensePolynomial":
        data = json.loads(text)
        if all(isinstance(c, str) for c in data):
            return cls([int(c) for c in data], exact=True)
        return cls([complex(a, b) for a, b in data], exact=False)

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return f"DensePolynomial({list(self.coeffs)}, {kind})"


# ---------------------------------------------------------------------------
# power series


@dataclass(frozen=True)
class LogTruncation:
    """First `order` Taylor coefficients c_1..c_r of log p at 0."""

    order: int
    coeffs: tuple
    source_degree: int
    radius: float | None = None

    def __post_init__(self):
        if len(self.coeffs) != self.order:
            raise ValueError("coefficient count must equal the truncation order")

    def __call__(self, z):
        """T_r(z) = sum_j c_j z^j, evaluated by Horner."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc + complex(c)) * z
        return acc

    @property
    def power_sums(self) -> tuple:
        """j * c_j, which are integers for an integer polynomial."""
        return tuple(j * c for j, c in enumerate(self.coeffs, 1))

    def to_dict(self) -> dict:
        def enc(c):
            if isinstance(c, Fraction):
                return str(c)
            c = complex(c)
            return [c.real, c.imag]
        return {"order": self.order, "coeffs": [enc(c) for c in self.coeffs],
                "source_degree": self.source_degree, "radius": self.radius}


def log_power_sums(coeffs: Sequence, r: int) -> list:
    """q_j = j c_j for j = 1..r via the Newton recurrence.

    q_j = j i_j - sum_{m<j} q_m i_{j-m}; exact for integer input.
    """
    i = list(coeffs)
    if i[0] != 1:
        raise ValueError("series_log needs constant coefficient 1")
    get = lambda j: i[j] if j < len(i) else 0
    q = [0] * (r + 1)
    for j in range(1, r + 1):
        acc = j * get(j)
        for m in range(1, j):
            if q[m]:
                acc -= q[m] * get(j - m)
        q[j] = acc
    return q[1:]


def series_log(p: DensePolynomial | Sequence, r: int) -> LogTruncation:
    """Taylor coefficients of log p up to order `r`.

    Exact rationals (Fractions) for the exact backend, complex otherwise.
    """
    if r < 1:
        raise ValueError("order must be positive")
    if not isinstance(p, DensePolynomial):
        p = DensePolynomial(p)
    q = log_power_sums(p.coeffs, r)
    if p.exact:
        cs = tuple(Fraction(qj, j) for j, qj in enumerate(q, 1))
    else:
        cs = tuple(complex(qj) / j for j, qj in enumerate(q, 1))
    return LogTruncation(r, cs, max(p.degree, 0))


def series_exp(coeffs: Sequence, r: int) -> list:
    """Coefficients e_0..e_r of exp(sum_j c_j x^j) (c_1 first), via n e_n = sum m c_m e_{n-m}."""
    c = [0] + list(coeffs)
    exact = all(isinstance(x, (int, Fraction)) for x in coeffs)
    e = [Fraction(1) if exact else 1.0 + 0j] + [0] * r
    for n in range(1, r + 1):
        acc = 0
        for m in range(1, min(n, len(c) - 1) + 1):
            acc += m * c[m] * e[n - m]
        e[n] = acc / n
    return e


# ---------------------------------------------------------------------------
# roots


def _initial_guesses(logabs: np.ndarray, n: int) -> np.ndarray:
    """Starting points on circles read off the Newton polygon of log|c_j|.

    `logabs[j]` is log|c_j| (-inf for zero coefficients); c_0 and c_n nonzero.
    """
    pts = [(j, logabs[j]) for j in range(n + 1) if np.isfinite(logabs[j])]
    hull: list[tuple[int, float]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    z = np.empty(n, dtype=complex)
    sigma = 0.7
    for (a, la), (b, lb) in zip(hull, hull[1:]):
        m = b - a
        u = math.exp((la - lb) / m)
        ang = 2 * np.pi * np.arange(m) / m + 2 * np.pi * a / n + sigma
        z[a:b] = u * np.exp(1j * ang)
    return z


def _ratio_float(c: np.ndarray, dc: np.ndarray, z: np.ndarray) -> np.ndarray:
    """p(z)/p'(z), using the reversed polynomial where |z| > 1 to avoid overflow."""
    n = len(c) - 1
    out = np.empty_like(z)
    small = np.abs(z) <= 1
    if small.any():
        zs = z[small]
        p = np.full_like(zs, c[-1])
        dp = np.full_like(zs, dc[-1])
        for j in range(n - 1, -1, -1):
            p = p * zs + c[j]
        for j in range(n - 2, -1, -1):
            dp = dp * zs + dc[j]
        with np.errstate(divide="ignore", invalid="ignore"):
            out[small] = p / dp
    big = ~small
    if big.any():
        y = 1 / z[big]
        # q(y) = y^n p(1/y) has coefficients c reversed; p/p' = 1/(n/z - y^2 q'(y)/q(y))
        rc = c[::-1]
        q = np.full_like(y, rc[-1])
        dq = np.full_like(y, n * rc[-1])
        for j in range(n - 1, -1, -1):
            q = q * y + rc[j]
        for j in range(n - 1, 0, -1):
            dq = dq * y + j * rc[j]
        with np.errstate(divide="ignore", invalid="ignore"):
            out[big] = 1 / (n * y - y * y * dq / q)
    return out


def _aberth_float(c: np.ndarray, z: np.ndarray, max_iter: int):
    n = len(c) - 1
    dc = c[1:] * np.arange(1, n + 1)
    active = np.ones(n, dtype=bool)
    it = 0
    for it in range(1, max_iter + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        w = _ratio_float(c, dc, z[idx])
        diff = z[idx, None] - z[None, :]
        diff[np.arange(idx.size), idx] = np.inf
        s = (1 / diff).sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = w / (1 - w * s)
        step[~np.isfinite(step)] = 0
        z[idx] -= step
        done = np.abs(step) <= 4 * EPS * np.maximum(np.abs(z[idx]), np.finfo(float).tiny)
        active[idx[done]] = False
    return z, not active.any(), it


def _aberth_mp(coeffs: list[int], z0: np.ndarray, prec: int, max_iter: int):
    """Aberth iteration in `prec`-bit arithmetic with exact integer coefficients."""
    n = len(coeffs) - 1
    with gmpy2.context(gmpy2.get_context(), precision=prec):
        c = [gmpy2.mpz(a) for a in coeffs]
        dc = [gmpy2.mpz(j * c[j]) for j in range(1, n + 1)]
        z = [gmpy2.mpc(complex(x)) for x in z0]
        one = gmpy2.mpc(1)
        thresh = gmpy2.mpfr(2) ** -64
        active = list(range(n))
        for it in range(1, max_iter + 1):
            steps = {}
            for i in active:
                zi = z[i]
                p = c[n] + 0 * zi
                for j in range(n - 1, -1, -1):
                    p = p * zi + c[j]
                dp = dc[n - 1] + 0 * zi
                for j in range(n - 2, -1, -1):
                    dp = dp * zi + dc[j]
                if p == 0:
                    steps[i] = 0 * zi
                    continue
                w = p / dp
                s = 0 * zi
                for j in range(n):
                    if j != i:
                        s += one / (zi - z[j])
                steps[i] = w / (one - w * s)
            nxt = []
            for i in active:
                z[i] = z[i] - steps[i]
                if abs(steps[i]) > thresh * abs(z[i]):
                    nxt.append(i)
            active = nxt
            if not active:
                return z, True, it
        return z, False, max_iter


def _scaled_float_coeffs(coeffs: list[int]) -> tuple[np.ndarray, float]:
    """Float coefficients of p(t x)/M with t balancing |c_0| and |c_n| (log-domain)."""
    n = len(coeffs) - 1
    logs = np.array([math.log(abs(a)) if a else -np.inf for a in coeffs])
    logt = (logs[0] - logs[n]) / n
    scaled = logs + logt * np.arange(n + 1)
    top = scaled[np.isfinite(scaled)].max()
    mags = np.exp(scaled - top)
    signs = np.array([1.0 if a > 0 else (-1.0 if a < 0 else 0.0) for a in coeffs])
    return (mags * signs).astype(complex), math.exp(logt)


def _solve_simple(cs: list, exact: bool, max_iter: int, prec: int | None) -> tuple[np.ndarray, bool]:
    """Aberth on a polynomial with nonzero constant term; returns (roots, converged)."""
    m = len(cs) - 1
    if exact:
        fc, t = _scaled_float_coeffs(cs)
    else:
        fc = np.array(cs, dtype=complex)
        t = abs(fc[0] / fc[-1]) ** (1 / m)
        fc = fc * t ** np.arange(m + 1)
        fc = fc / np.abs(fc).max()
    with np.errstate(divide="ignore"):
        logabs = np.log(np.abs(fc))
    z0 = _initial_guesses(logabs, m)
    if m == 1:
        z0 = np.array([-fc[0] / fc[1]])
    z, ok, _ = _aberth_float(fc, z0, min(max_iter, 500) if exact else max_iter)
    z = z * t
    if not exact:
        return z, ok
    bits = max(abs(a).bit_length() for a in cs)
    prec = prec or max(128, 2 * bits + 64)
    for _ in range(4):
        zm, ok, _ = _aberth_mp(cs, z, prec, max(100, min(max_iter, 400)))
        if ok:
            break
        prec *= 2
    return np.array([complex(x) for x in zm]), ok


def _square_free_parts(cs: list[int]) -> list[tuple[list[int], int]]:
    """Square-free factorization of an integer polynomial (ascending coefficients)."""
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(cs)), x, domain="ZZ")
    _, factors = poly.sqf_list()
    return [([int(a) for a in reversed(f.all_coeffs())], mult) for f, mult in factors]


def roots(p: DensePolynomial | Sequence, tol: float = DEFAULT_TOL,
          max_iter: int | None = None, prec: int | None = None) -> np.ndarray:
    """All deg(p) roots by simultaneous Aberth iteration (no deflation).

    Float-backend polynomials are solved in double precision.  Exact-backend
    polynomials are split into square-free parts, solved in double precision
    on a rescaled copy, then refined in multiprecision with the exact
    coefficients; that refinement is what makes roots of large, badly
    conditioned integer polynomials trustworthy.  Every returned root satisfies
    |p(rho)| <= tol * sum_j |c_j| |rho|^j.
    """
    if not isinstance(p, DensePolynomial):
        p = DensePolynomial(p)
    n = p.degree
    if n < 1:
        raise ValueError("need degree >= 1")
    cs = list(p.coeffs[: n + 1])
    nzero = next(j for j, c in enumerate(cs) if c != 0)
    cs = cs[nzero:]
    found = [np.zeros(nzero, dtype=complex)]
    max_iter = max_iter or 200 * n
    ok = True
    if len(cs) > 1:
        if p.exact:
            for part, mult in _square_free_parts(cs):
                if len(part) < 2:
                    continue
                z, good = _solve_simple(part, True, max_iter, prec)
                ok &= good
                found.extend([z] * mult)
        else:
            z, ok = _solve_simple(cs, False, max_iter, prec)
            found.append(z)
    out = np.concatenate(found)
    res = relative_residuals(p, out)
    if not ok and (p.exact or np.any(res > tol)):
        raise RootFindingError("Aberth iteration did not converge", out)
    if np.any(res > tol):
        raise RootFindingError(f"root residual {res.max():.3g} exceeds tol {tol:g}", out)
    return out


def relative_residuals(p: DensePolynomial, z: np.ndarray) -> np.ndarray:
    """|p(z)| / sum_j |c_j||z|^j for each root estimate."""
    out = np.empty(len(z))
    if p.exact:
        bits = max(abs(a).bit_length() for a in p.coeffs)
        with gmpy2.context(gmpy2.get_context(), precision=2 * bits + 128):
            for k, x in enumerate(z):
                zz = gmpy2.mpc(complex(x))
                r = abs(zz)
                acc = 0 * zz
                env = gmpy2.mpfr(0)
                for c in reversed(p.coeffs):
                    acc = acc * zz + c
                    env = env * r + abs(c)
                out[k] = float(abs(acc) / env) if env else 0.0
        return out
    c = np.array(p.coeffs, dtype=complex)
    for k, x in enumerate(z):
        r = abs(x)
        if r <= 1:
            val = np.polyval(c[::-1], x)
            env = np.polyval(np.abs(c[::-1]), r)
        else:
            # reversed form keeps magnitudes in range
            y = 1 / x
            val = np.polyval(c, y)
            env = np.polyval(np.abs(c), 1 / r)
        out[k] = abs(val) / env if env else 0.0
    return out


def min_modulus_root(p: DensePolynomial | Sequence, tol: float = DEFAULT_TOL) -> complex:
    """Root of smallest modulus; near-ties go to the smallest argument in [0, 2pi)."""
    rs = roots(p, tol)
    mods = np.abs(rs)
    m = mods.min()
    ties = rs[mods <= m * (1 + 1e-12) + 1e-300]
    args = np.mod(np.angle(ties), 2 * np.pi)
    return complex(ties[np.argmin(args)])
