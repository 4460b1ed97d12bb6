"""Exact independence polynomials: brute force and memoized deletion/contraction.

Internally a subproblem is a tuple of original vertex labels (sorted) plus a
tuple of edges written as bitmasks over label positions.  Edge sets are kept
*minimal* (no edge contains another), which leaves Z unchanged and makes
isomorphic-by-order subproblems share memo entries.
"""

from __future__ import annotations

import os
import sys
from collections import OrderedDict
from dataclasses import dataclass
from numbers import Number
from typing import Iterable, Mapping, Sequence

import numpy as np

from .hypergraph import Hypergraph, HypergraphError
from .poly import DensePolynomial

BRUTE_FORCE_CAP = 28
CACHE_SIZE = 1 << 22
IDENTITY_RTOL = 1e-9


class BudgetExceeded(RuntimeError):
    """An exponential-cost routine refused to continue past its budget."""

    def __init__(self, message: str, stats: dict | None = None):
        super().__init__(message)
        self.stats = stats or {}


def default_budget() -> int:
    return int(os.environ.get("HYPERZERO_MEMO_BUDGET", 10_000_000))


# ---------------------------------------------------------------------------
# activities


def activity_map(G: Hypergraph, w) -> dict | None:
    """Normalize an activity argument to {vertex: value}, or None for a scalar.

    `w` may be a scalar, a mapping keyed by vertex id, or a sequence.  A
    sequence of length ``vertex_count`` is read by position in ``G.vertices``;
    a longer one is indexed by vertex id (the restriction convention used when
    G is a subhypergraph of the instance the activities were drawn for).
    """
    if isinstance(w, (Number, np.number)) or (isinstance(w, np.ndarray) and w.ndim == 0):
        return None
    if isinstance(w, Mapping):
        return {v: w[v] for v in G.vertices}
    w = list(w)
    if len(w) == G.vertex_count:
        return dict(zip(G.vertices, w))
    if G.vertices and len(w) > G.vertices[-1]:
        return {v: w[v] for v in G.vertices}
    raise HypergraphError(f"activity vector of length {len(w)} does not fit {G.vertex_count} vertices")


# ---------------------------------------------------------------------------
# brute force


def _edge_masks(G: Hypergraph) -> tuple[list[int], list[int]]:
    pos = {v: i for i, v in enumerate(G.vertices)}
    return list(G.vertices), [sum(1 << pos[v] for v in e) for e in G.edges]


def _independent_chunks(n: int, masks: list[int], lo_bits: int = 20):
    """Yield (hi, ok) where ok[lo] says whether subset hi<<lo_bits | lo is independent."""
    lo = min(n, lo_bits)
    hi_count = 1 << (n - lo)
    low = np.arange(1 << lo, dtype=np.int64)
    lo_mask = (1 << lo) - 1
    for hi in range(hi_count):
        ok = np.ones(1 << lo, dtype=bool)
        for e in masks:
            e_lo, e_hi = e & lo_mask, e >> lo
            if hi & e_hi != e_hi:
                continue
            if e_lo == 0:
                ok[:] = False
                break
            ok &= (low & e_lo) != e_lo
        yield hi, ok


def _check_cap(G: Hypergraph, cap: int) -> None:
    if G.vertex_count > cap:
        raise BudgetExceeded(f"brute force refused: {G.vertex_count} vertices exceeds cap {cap}",
                             {"vertex_count": G.vertex_count, "cap": cap})


def brute_force_Z(G: Hypergraph, w, cap: int = BRUTE_FORCE_CAP) -> complex:
    """Z_G(w) by summing over every vertex subset that contains no edge."""
    _check_cap(G, cap)
    labels, masks = _edge_masks(G)
    n = len(labels)
    amap = activity_map(G, w)
    vals = [w] * n if amap is None else [amap[v] for v in labels]
    lo = min(n, 20)
    weights = np.ones(1, dtype=complex)
    for i in range(lo):
        weights = np.concatenate([weights, weights * complex(vals[i])])
    total = 0j
    for hi, ok in _independent_chunks(n, masks):
        hw = 1 + 0j
        for i in range(n - lo):
            if hi >> i & 1:
                hw *= complex(vals[lo + i])
        total += hw * weights[ok].sum()
    return complex(total)


def brute_force_coeffs(G: Hypergraph, cap: int = BRUTE_FORCE_CAP) -> DensePolynomial:
    """Exact counts i_j of independent sets of each size, by enumeration."""
    _check_cap(G, cap)
    labels, masks = _edge_masks(G)
    n = len(labels)
    lo = min(n, 20)
    sizes = np.array([bin(x).count("1") for x in range(1 << lo)], dtype=np.int64) if lo <= 12 else \
        _popcounts(lo)
    counts = [0] * (n + 1)
    for hi, ok in _independent_chunks(n, masks):
        shift = bin(hi).count("1")
        binc = np.bincount(sizes[ok], minlength=lo + 1)
        for j, c in enumerate(binc):
            counts[j + shift] += int(c)
    return DensePolynomial(counts, exact=True)


def _popcounts(bits: int) -> np.ndarray:
    out = np.zeros(1 << bits, dtype=np.int64)
    for b in range(bits):
        out[1 << b: 1 << (b + 1)] = out[: 1 << b] + 1
    return out


# ---------------------------------------------------------------------------
# deletion/contraction engine


def _minimal(edges: Iterable[int]) -> tuple[int, ...]:
    es = sorted(set(edges), key=lambda e: (e.bit_count(), e))
    keep: list[int] = []
    for e in es:
        if not any(f & e == f for f in keep):
            keep.append(e)
    return tuple(sorted(keep))


def _compact(labels: tuple, keep: int, edges: Iterable[int]) -> tuple[tuple, tuple[int, ...]]:
    """Restrict to the positions in `keep` and renumber them 0..m-1."""
    newbit = {}
    new_labels = []
    x, j = keep, 0
    while x:
        low = x & -x
        p = low.bit_length() - 1
        newbit[p] = 1 << j
        new_labels.append(labels[p])
        j += 1
        x ^= low
    out = []
    for e in edges:
        nm = 0
        while e:
            low = e & -e
            nm |= newbit[low.bit_length() - 1]
            e ^= low
        out.append(nm)
    return tuple(new_labels), tuple(sorted(out))


def _components(full: int, edges: tuple[int, ...]) -> list[tuple[int, list[int]]]:
    groups: list[list] = []  # [vertex mask, edges]
    for e in edges:
        hit = [g for g in groups if g[0] & e]
        if not hit:
            groups.append([e, [e]])
            continue
        g0 = hit[0]
        g0[0] |= e
        g0[1].append(e)
        for g in hit[1:]:
            g0[0] |= g[0]
            g0[1].extend(g[1])
            groups.remove(g)
    return [(m, es) for m, es in groups]


class _ScalarRing:
    def __init__(self, lam):
        self.lam = lam
        self.one_plus = 1 + lam

    def leaf(self, labels):
        return self.one_plus ** len(labels)

    def times(self, label, val):
        return self.lam * val


class _VectorRing:
    def __init__(self, amap: dict):
        self.amap = amap

    def leaf(self, labels):
        out = 1
        for v in labels:
            out = out * (1 + self.amap[v])
        return out

    def times(self, label, val):
        return self.amap[label] * val


class _PackedPolyRing:
    """Integer polynomials packed into one int, `width` bits per coefficient."""

    def __init__(self, width: int):
        self.width = width
        self.base = (1 << width) | 1
        self._pows = [1]

    def leaf(self, labels):
        m = len(labels)
        while len(self._pows) <= m:
            self._pows.append(self._pows[-1] * self.base)
        return self._pows[m]

    def times(self, label, val):
        return val << self.width

    def unpack(self, packed: int) -> list[int]:
        mask = (1 << self.width) - 1
        out = []
        while packed:
            out.append(packed & mask)
            packed >>= self.width
        return out or [0]


class _DeletionContraction:
    def __init__(self, ring, by_label: bool, budget: int, cache_size: int):
        self.ring = ring
        self.by_label = by_label
        self.budget = budget
        self.cache_size = cache_size
        self.memo: OrderedDict = OrderedDict()
        self.expanded = 0
        self.hits = 0

    def stats(self) -> dict:
        return {"expanded": self.expanded, "hits": self.hits, "cached": len(self.memo),
                "budget": self.budget}

    def solve(self, labels: tuple, edges: tuple[int, ...]):
        ring = self.ring
        if not edges:
            return ring.leaf(labels)
        full = (1 << len(labels)) - 1
        comps = _components(full, edges)
        covered = 0
        for m, _ in comps:
            covered |= m
        if len(comps) == 1 and covered == full:
            return self._connected(labels, edges)
        out = None
        if covered != full:
            out = ring.leaf([labels[p] for p in range(len(labels)) if not covered >> p & 1])
        for m, es in comps:
            sub = self._connected(*_compact(labels, m, es))
            out = sub if out is None else out * sub
        return out

    def _connected(self, labels: tuple, edges: tuple[int, ...]):
        key = (labels, edges) if self.by_label else edges
        memo = self.memo
        if key in memo:
            self.hits += 1
            memo.move_to_end(key)
            return memo[key]
        self.expanded += 1
        if self.expanded > self.budget:
            raise BudgetExceeded("deletion/contraction memo budget exhausted", self.stats())

        n = len(labels)
        deg = [0] * n
        for e in edges:
            while e:
                low = e & -e
                deg[low.bit_length() - 1] += 1
                e ^= low
        v = max(range(n), key=lambda p: (deg[p], -p))
        vb = 1 << v
        full = (1 << n) - 1

        rest = [e for e in edges if not e & vb]
        minus = self.solve(*_compact(labels, full & ~vb, rest))

        closure = 0
        shrunk = []
        for e in edges:
            if e & vb:
                r = e ^ vb
                if r.bit_count() == 1:
                    closure |= r
                else:
                    shrunk.append(r)
        kept = [e for e in rest + shrunk if not e & closure]
        if shrunk:
            kept = _minimal(kept)
        contract = self.solve(*_compact(labels, full & ~vb & ~closure, kept))

        val = minus + self.ring.times(labels[v], contract)
        memo[key] = val
        if len(memo) > self.cache_size:
            memo.popitem(last=False)
        return val


def _prepare(G: Hypergraph) -> tuple[tuple, tuple[int, ...]]:
    labels, masks = _edge_masks(G)
    return tuple(labels), _minimal(masks)


def _run(engine: _DeletionContraction, G: Hypergraph):
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20 * G.vertex_count + 1000))
    try:
        return engine.solve(*_prepare(G))
    finally:
        sys.setrecursionlimit(limit)


def dc_eval(G: Hypergraph, w, budget: int | None = None, cache_size: int = CACHE_SIZE):
    """Z_G(w) by deletion/contraction: Z_G = Z_{G-v} + w_v Z_{G/v}.

    The pivot is a vertex of maximum degree (ties: smallest id); connected
    components are split at every level and memoized.  A scalar `w` may be a
    complex number or a Fraction (exact rational result); a sequence, mapping
    or numpy array gives per-vertex activities (see `activity_map`).
    """
    amap = activity_map(G, w)
    ring = _ScalarRing(w) if amap is None else _VectorRing(amap)
    engine = _DeletionContraction(ring, amap is not None, budget or default_budget(), cache_size)
    return _run(engine, G)


def dc_eval_many(G: Hypergraph, lams, budget: int | None = None,
                 cache_size: int = CACHE_SIZE) -> np.ndarray:
    """Z_G at each scalar activity in `lams`, in one vectorized recursion."""
    lams = np.asarray(lams, dtype=complex)
    ring = _ScalarRing(lams)
    engine = _DeletionContraction(ring, False, budget or default_budget(), cache_size)
    return np.broadcast_to(np.asarray(_run(engine, G), dtype=complex), lams.shape).copy()


def dc_coeffs(G: Hypergraph, budget: int | None = None,
              cache_size: int = CACHE_SIZE) -> DensePolynomial:
    """Exact coefficients i_0..i_n of Z_G(lambda) by deletion/contraction.

    Polynomials are packed one coefficient per (n+1)-bit slot of a Python int;
    every coefficient of every subproblem counts independent sets, so it is
    below 2^n and the slots never overflow.
    """
    ring = _PackedPolyRing(G.vertex_count + 1)
    engine = _DeletionContraction(ring, False, budget or default_budget(), cache_size)
    return DensePolynomial(ring.unpack(_run(engine, G)), exact=True)


# ---------------------------------------------------------------------------
# identity checks


@dataclass(frozen=True)
class IdentityCheck:
    lhs: complex
    rhs: complex
    residual: float
    relative: float
    holds: bool
    degenerate: bool = False


def _evaluator(name: str):
    if name == "brute":
        return brute_force_Z
    if name == "dc":
        return dc_eval
    raise ValueError(f"unknown evaluator {name!r}")


def _check(lhs, rhs, rtol, degenerate=False) -> IdentityCheck:
    lhs, rhs = complex(lhs), complex(rhs)
    res = abs(lhs - rhs)
    rel = res / abs(lhs) if lhs else res
    return IdentityCheck(lhs, rhs, res, rel, rel <= rtol, degenerate)


def _restricted(w, G: Hypergraph, H: Hypergraph):
    amap = activity_map(G, w)
    return w if amap is None else {v: amap[v] for v in H.vertices}


def verify_vertex_identity(G: Hypergraph, v: int, w, evaluator: str = "brute",
                           rtol: float = IDENTITY_RTOL) -> IdentityCheck:
    """Check Z_G = Z_{G-v} + w_v Z_{G/v}."""
    Z = _evaluator(evaluator)
    amap = activity_map(G, w)
    wv = w if amap is None else amap[v]
    minus, contr = G.delete_vertex(v), G.contract_vertex(v)
    rhs = Z(minus, _restricted(w, G, minus)) + wv * Z(contr, _restricted(w, G, contr))
    return _check(Z(G, w), rhs, rtol)


def verify_edge_identity(G: Hypergraph, A: Sequence[int], w, evaluator: str = "brute",
                         rtol: float = IDENTITY_RTOL) -> IdentityCheck:
    """Check Z_G = Z_{G+A} + (prod_{x in A} w_x) Z_{G/A}.

    If A already contains an edge the identity degenerates to Z_{G+A} = Z_G,
    which is what gets checked (and flagged) instead.
    """
    Z = _evaluator(evaluator)
    A = tuple(sorted(set(A)))
    plus = G.add_edge(A)
    if G.contains_edge_within(A):
        return _check(Z(G, w), Z(plus, w), rtol, degenerate=True)
    amap = activity_map(G, w)
    prod = 1
    for x in A:
        prod *= w if amap is None else amap[x]
    contr = G.contract_set(A)
    rhs = Z(plus, w) + prod * Z(contr, _restricted(w, G, contr))
    return _check(Z(G, w), rhs, rtol)
