"""Truncated cluster expansion of log Z with a certified error bound.

Two coefficient backends compute the Taylor coefficients c_1..c_r of log Z_G:

* ``global``: exact coefficients of Z_G by deletion/contraction, then the
  Newton recurrence.
* ``local``: a sum over connected vertex sets S with |S| <= r of Moebius
  weights d(S), each obtained from the induced subhypergraph G[S] alone.
  Connectivity means connectivity through edges lying inside S.

Both work with the integer power sums q_j = j c_j, so they agree exactly.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from .bounds import hypergraph_radius
from .exact import BudgetExceeded, brute_force_coeffs, dc_coeffs
from .hypergraph import Hypergraph
from .poly import LogTruncation, log_power_sums

DEFAULT_DELTA = 0.05
LOCAL_BUDGET = 2_000_000
LOCAL_MAX_ORDER = 8


def truncation_error_bound(N: int, B: float, lambda_abs: float, r: int) -> float:
    """Bound on |T_r(lam) - log Z(lam)| for a degree-N polynomial zero-free on |lam| <= B."""
    if not 0 <= lambda_abs < B:
        raise ValueError(f"|lambda| = {lambda_abs} must lie in [0, B = {B})")
    if N < 1 or r < 0:
        raise ValueError("need N >= 1 and r >= 0")
    x = lambda_abs / B
    return N * x ** (r + 1) / ((r + 1) * (1 - x))


def error_budget(eps: float, fraction: float = 0.5) -> float:
    """Share of log(1+eps) reserved for truncation; the rest covers rounding."""
    return fraction * math.log1p(eps)


def choose_r(N: int, B: float, lambda_abs: float, eps: float, delta: float = DEFAULT_DELTA,
             fraction: float = 0.5) -> int:
    """Smallest r >= 1 whose truncation bound fits the error budget."""
    if lambda_abs > (1 - delta) * B:
        raise ValueError(f"|lambda| = {lambda_abs:.6g} exceeds (1 - delta) B with delta = {delta}")
    if eps <= 0:
        raise ValueError("eps must be positive")
    budget = error_budget(eps, fraction)
    r = 1
    while truncation_error_bound(N, B, lambda_abs, r) > budget:
        r += 1
    return r


# ---------------------------------------------------------------------------
# coefficient backends


def _global_power_sums(G: Hypergraph, r: int, budget: int | None) -> list[int]:
    return log_power_sums(dc_coeffs(G, budget=budget).coeffs, r)


def connected_sets(G: Hypergraph, r: int, budget: int = LOCAL_BUDGET) -> list[int]:
    """All vertex sets (as bitmasks over vertex positions) of size <= r that are
    connected through edges inside them, singletons included.

    Sets are grown from singletons by adding an edge that meets the current
    set; every connected set arises that way.
    """
    pos = {v: i for i, v in enumerate(G.vertices)}
    masks = [sum(1 << pos[v] for v in e) for e in G.edges]
    incident: dict[int, list[int]] = {}
    for e in masks:
        x = e
        while x:
            low = x & -x
            incident.setdefault(low.bit_length() - 1, []).append(e)
            x ^= low
    seen = set()
    stack = []
    for i in range(G.vertex_count):
        seen.add(1 << i)
        stack.append(1 << i)
    while stack:
        S = stack.pop()
        x = S
        while x:
            low = x & -x
            x ^= low
            for e in incident.get(low.bit_length() - 1, ()):
                T = S | e
                if T != S and T not in seen and T.bit_count() <= r:
                    seen.add(T)
                    if len(seen) > budget:
                        raise BudgetExceeded("connected-set enumeration budget exhausted",
                                             {"sets": len(seen), "budget": budget, "order": r})
                    stack.append(T)
    return sorted(seen, key=lambda s: (s.bit_count(), s))


def _local_power_sums(G: Hypergraph, r: int, budget: int) -> list[int]:
    sets = connected_sets(G, r, budget)
    verts = G.vertices
    d: dict[int, list[int]] = {}
    total = [0] * r
    for S in sets:
        members = [verts[i] for i in range(S.bit_length()) if S >> i & 1]
        q = log_power_sums(brute_force_coeffs(G.induced(members)).coeffs, r)
        # subtract the weights of every connected proper subset
        sub = (S - 1) & S
        while sub:
            dq = d.get(sub)
            if dq is not None:
                for j in range(r):
                    q[j] -= dq[j]
            sub = (sub - 1) & S
        d[S] = q
        for j in range(r):
            total[j] += q[j]
    return total


def taylor_coeffs(G: Hypergraph, r: int, backend: str = "global",
                  budget: int | None = None) -> LogTruncation:
    """Exact Taylor coefficients c_1..c_r of log Z_G at 0 (as Fractions).

    The j-th local weight d_j(S) vanishes for |S| > j, so restricting the
    local backend to |S| <= r loses nothing.
    """
    if r < 1:
        raise ValueError("order must be >= 1")
    if backend == "global":
        q = _global_power_sums(G, r, budget)
    elif backend == "local":
        q = _local_power_sums(G, r, budget or LOCAL_BUDGET)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return LogTruncation(r, tuple(Fraction(x, j) for j, x in enumerate(q, 1)), G.vertex_count)


# ---------------------------------------------------------------------------
# the approximation


@dataclass(frozen=True)
class ApproxResult:
    value: complex
    r_used: int
    error_bound: float
    radius: float
    lam: complex
    eps: float
    backend: str

    @property
    def certified(self) -> bool:
        return self.error_bound <= error_budget(self.eps)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["value"] = [self.value.real, self.value.imag]
        out["lam"] = [self.lam.real, self.lam.imag]
        out["certified"] = self.certified
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def approx_Z(G: Hypergraph, lam: complex, eps: float, B: float | None = None,
             delta: float = DEFAULT_DELTA, backend: str = "auto",
             r: int | None = None, budget: int | None = None) -> ApproxResult:
    """exp(T_r(lam)), an eps-relative approximation of Z_G(lam) when Z_G has
    no zeros on |lam| <= B.

    B defaults to the zero-free radius for the maximum degree of G.  The
    ``auto`` backend uses ``local`` for orders up to LOCAL_MAX_ORDER and
    ``global`` beyond, falling back to ``global`` if the local enumeration
    exceeds its budget.
    """
    lam = complex(lam)
    if B is None:
        B = hypergraph_radius(max(G.max_degree, 1))
    N = max(G.vertex_count, 1)
    if abs(lam) == 0:
        return ApproxResult(1 + 0j, 1, 0.0, B, lam, eps, "trivial")
    r_used = r or choose_r(N, B, abs(lam), eps, delta)
    if backend == "auto":
        backend = "local" if r_used <= LOCAL_MAX_ORDER else "global"
        try:
            trunc = taylor_coeffs(G, r_used, backend, budget)
        except BudgetExceeded:
            backend = "global"
            trunc = taylor_coeffs(G, r_used, backend, budget)
    else:
        trunc = taylor_coeffs(G, r_used, backend, budget)
    value = cmath.exp(trunc(lam))
    bound = truncation_error_bound(N, B, abs(lam), r_used)
    return ApproxResult(value, r_used, bound, B, lam, eps, backend)
