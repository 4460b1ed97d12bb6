"""Extremal and random hypergraph families, with closed forms where they exist."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from math import comb
from typing import Callable, Sequence

import numpy as np

from .hypergraph import Hypergraph, HypergraphError


class InfeasibleError(ValueError):
    """Generator parameters admit no (or no findable) instance."""


@dataclass(frozen=True)
class ConstructionSpec:
    family: str
    k: int | None = None
    delta: int | None = None
    s: int | None = None
    depth: int | None = None
    n: int | None = None
    m: int | None = None
    seed: int | None = None

    FAMILIES = ("samotij", "star", "regular_tree", "random_hypertree", "random_hypergraph")

    def build(self) -> Hypergraph:
        f = self.family
        if f not in self.FAMILIES:
            raise HypergraphError(f"unknown family {f!r}")
        if f.startswith("random") and self.seed is None:
            raise HypergraphError("random families need an explicit seed")
        if f == "samotij":
            return build_samotij(self.k, self.s)
        if f == "star":
            return build_star(self.k, self.delta)
        if f == "regular_tree":
            return build_regular_tree_truncation(self.delta, self.depth)
        if f == "random_hypertree":
            return build_random_linear_hypertree(self.k, self.delta, self.n, self.seed)
        return build_random_hypergraph(self.k, self.delta, self.n, self.m, self.seed)


# ---------------------------------------------------------------------------
# Samotij's construction


def _check_samotij(k: int, s: int) -> None:
    if k < 3 or k % 2 == 0:
        raise HypergraphError(f"Samotij construction needs odd k >= 3, got k={k}")
    if s < 1:
        raise HypergraphError("cloud size s must be >= 1")


def build_samotij(k: int, s: int) -> Hypergraph:
    """H_{k,s}: core x_0..x_{k-1} (ids 0..k-1); cloud i holds ids k+i*s .. k+i*s+s-1.

    Each edge is the core minus x_i plus one vertex of cloud i, so every core
    vertex has degree (k-1)s and every cloud vertex degree 1.
    """
    _check_samotij(k, s)
    core = list(range(k))
    edges = []
    for i in range(k):
        base = [x for x in core if x != i]
        for j in range(s):
            edges.append(base + [k + i * s + j])
    return Hypergraph.from_edges(edges, n=k + k * s)


def samotij_Z_closed_form(k: int, s: int, lam):
    """Z_{H_{k,s}}(lam), grouping independent sets by how many core vertices they use."""
    _check_samotij(k, s)
    total = sum(comb(k, l) * lam ** l for l in range(k - 1)) * (1 + lam) ** (s * k)
    total += k * lam ** (k - 1) * (1 + lam) ** (s * (k - 1))
    return total + lam ** k


def _samotij_real(k: int, s: int, lam: float) -> float:
    """Real closed form for -1 < lam < 0, powers of (1+lam) taken in log space."""
    l1p = math.log1p(lam)
    head = sum(comb(k, l) * lam ** l for l in range(k - 1))
    return (head * math.exp(s * k * l1p) + k * lam ** (k - 1) * math.exp(s * (k - 1) * l1p)
            + lam ** k)


@dataclass(frozen=True)
class ProbeResult:
    k: int
    param: int
    lambda_probe: float
    value: float
    verdict: bool
    in_range: bool
    normalized: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def samotij_negativity_probe(k: int, s: int) -> ProbeResult:
    """Evaluate Z_{H_{k,s}} at lam = -k log(Delta)/Delta with Delta = (k-1)s.

    Probes with lam <= -1 are reported out of range (verdict False).
    """
    _check_samotij(k, s)
    delta = (k - 1) * s
    lam = -k * math.log(delta) / delta
    if not -1 < lam < 0:
        return ProbeResult(k, s, lam, float(samotij_Z_closed_form(k, s, lam)), False, False)
    val = _samotij_real(k, s, lam)
    return ProbeResult(k, s, lam, val, val < 0, True)


def samotij_threshold(k: int, s_max: int = 10 ** 6, confirm: int = 4) -> int | None:
    """Smallest s whose probe is negative and stays negative on [s, confirm*s].

    The confirmation range is sampled at every integer up to 10^4 points and
    geometrically beyond that.
    """
    for s in range(1, s_max + 1):
        if samotij_negativity_probe(k, s).verdict:
            hi = min(confirm * s, s_max)
            grid = _sample_range(s, hi)
            if all(samotij_negativity_probe(k, t).verdict for t in grid):
                return s
    return None


def _sample_range(lo: int, hi: int, dense: int = 10_000) -> np.ndarray:
    if hi - lo <= dense:
        return np.arange(lo, hi + 1)
    return np.unique(np.concatenate([np.arange(lo, lo + dense),
                                     np.geomspace(lo + dense, hi, 2000).astype(np.int64),
                                     [hi]]))


# ---------------------------------------------------------------------------
# k-uniform star


def build_star(k: int, delta: int) -> Hypergraph:
    """S^k_Delta: Delta edges of size k sharing vertex 0; 1 + (k-1)Delta vertices."""
    if k < 2 or delta < 1:
        raise HypergraphError("star needs k >= 2 and Delta >= 1")
    edges = [[0] + [1 + i * (k - 1) + j for j in range(k - 1)] for i in range(delta)]
    return Hypergraph.from_edges(edges, n=1 + (k - 1) * delta)


def star_Z_closed_form(k: int, delta: int, lam):
    if k < 2 or delta < 1:
        raise HypergraphError("star needs k >= 2 and Delta >= 1")
    return (1 + lam) ** ((k - 1) * delta) + lam * ((1 + lam) ** (k - 1) - lam ** (k - 1)) ** delta


def star_normalized(k: int, delta, lam):
    """Z_{S^k_Delta}(lam) / (1+lam)^{(k-1)Delta} = 1 + lam (1 - (lam/(1+lam))^{k-1})^Delta.

    Same sign as the closed form for -1 < lam; vectorizes over numpy `delta`/`lam`.
    """
    ratio = lam / (1 + lam)
    return 1 + lam * np.exp(delta * np.log1p(-ratio ** (k - 1)))


def _star_probe_lambda(k: int, delta):
    f = (np.log(delta) / delta) ** (1 / (k - 1))
    return -f / (1 + f), f


def star_negativity_probe(k: int, delta: int) -> ProbeResult:
    """Evaluate the star at lam = -f/(1+f), f = (log Delta / Delta)^{1/(k-1)}."""
    if k < 4 or k % 2:
        raise HypergraphError(f"star probe needs even k >= 4, got k={k}")
    if delta < 2:
        raise HypergraphError("star probe needs Delta >= 2")
    lam, f = _star_probe_lambda(k, float(delta))
    lam = float(lam)
    norm = float(1 + lam * (1 + f ** (k - 1)) ** delta)
    log_scale = (k - 1) * delta * math.log1p(lam)
    value = norm * math.exp(log_scale) if log_scale > -700 else math.copysign(0.0, norm)
    return ProbeResult(k, delta, lam, value, norm < 0, True, norm)


def star_threshold(k: int, delta_max: int = 10 ** 6) -> int | None:
    """Smallest Delta0 with the probe negative for every Delta in [Delta0, delta_max]."""
    if k < 4 or k % 2:
        raise HypergraphError(f"star probe needs even k >= 4, got k={k}")
    d = np.arange(2, delta_max + 1, dtype=float)
    lam, f = _star_probe_lambda(k, d)
    norm = 1 + lam * np.exp(d * np.log1p(f ** (k - 1)))
    bad = np.flatnonzero(norm >= 0)
    if bad.size == 0:
        return 2
    if bad[-1] == d.size - 1:
        return None
    return int(d[bad[-1] + 1])


# ---------------------------------------------------------------------------
# trees and random instances


def build_regular_tree_truncation(delta: int, depth: int) -> Hypergraph:
    """Depth-`depth` ball of the infinite Delta-regular tree, numbered in BFS order."""
    if delta < 2 or depth < 0:
        raise HypergraphError("regular tree needs Delta >= 2 and depth >= 0")
    edges = []
    level = [0]
    nxt_id = 1
    for d in range(depth):
        new_level = []
        for u in level:
            for _ in range(delta if d == 0 else delta - 1):
                edges.append((u, nxt_id))
                new_level.append(nxt_id)
                nxt_id += 1
        level = new_level
    return Hypergraph.from_edges(edges, n=nxt_id)


def build_random_linear_hypertree(k: int, delta: int, n_target: int, seed: int) -> Hypergraph:
    """Grow a k-uniform linear hypertree edge by edge.

    Each new edge attaches at a uniformly chosen vertex of residual degree and
    brings k-1 fresh vertices, until at least `n_target` vertices exist.
    """
    if k < 2 or delta < 1 or n_target < 1:
        raise HypergraphError("need k >= 2, Delta >= 1, n_target >= 1")
    rng = np.random.default_rng(seed)
    deg = [0]
    edges = []
    while len(deg) < n_target:
        open_ = [v for v, d in enumerate(deg) if d < delta]
        if not open_:
            raise InfeasibleError(f"no vertex with residual degree (Delta={delta})")
        v = open_[rng.integers(len(open_))]
        new = list(range(len(deg), len(deg) + k - 1))
        deg[v] += 1
        deg.extend([1] * (k - 1))
        edges.append([v] + new)
    return Hypergraph.from_edges(edges, n=len(deg))


def build_random_hypergraph(k: int | Sequence[int], delta: int, n: int, m: int, seed: int,
                            max_attempts: int | None = None) -> Hypergraph:
    """Rejection-sample m distinct edges on n vertices with all degrees <= delta.

    `k` is an edge size or a sequence of sizes drawn uniformly per edge.
    """
    sizes = [k] if isinstance(k, int) else list(k)
    if min(sizes) < 2 or max(sizes) > n:
        raise InfeasibleError(f"edge sizes {sizes} impossible on {n} vertices")
    if m * min(sizes) > n * delta:
        raise InfeasibleError(f"{m} edges of size >= {min(sizes)} exceed degree budget n*Delta")
    rng = np.random.default_rng(seed)
    deg = np.zeros(n, dtype=int)
    chosen: set[tuple[int, ...]] = set()
    attempts = max_attempts or 200 * (m + 1)
    for _ in range(attempts):
        if len(chosen) == m:
            break
        size = sizes[rng.integers(len(sizes))]
        avail = np.flatnonzero(deg < delta)
        if avail.size < size:
            break
        e = tuple(sorted(int(x) for x in rng.choice(avail, size, replace=False)))
        if e in chosen:
            continue
        chosen.add(e)
        deg[list(e)] += 1
    if len(chosen) < m:
        raise InfeasibleError(f"found only {len(chosen)} of {m} edges under the degree cap")
    return Hypergraph.from_edges(chosen, n=n)


def bisect_root(fn: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12) -> float:
    """Root of `fn` on [lo, hi] given a sign change."""
    flo = fn(lo)
    if flo == 0:
        return lo
    if (flo < 0) == (fn(hi) < 0):
        raise ValueError("no sign change on the bracket")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = fn(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)
