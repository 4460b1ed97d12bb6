"""Zero-free radii for bounded-degree (hyper)graphs and checks of the
sufficient-condition inequalities behind them.

Radii are evaluated in the log domain with mpmath and returned as floats, so
Delta in the millions is fine.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from numbers import Rational

import mpmath

from .hypergraph import Hypergraph

_DPS = 40
CONSTRAINT_RTOL = 1e-12


def _check_int(name: str, value, lo: int) -> None:
    if int(value) != value or value < lo:
        raise ValueError(f"{name} must be an integer >= {lo}, got {value}")


def shearer_radius(delta: int) -> float:
    """(Delta-1)^(Delta-1) / Delta^Delta, the optimal zero-free radius for graphs."""
    _check_int("Delta", delta, 2)
    with mpmath.workdps(_DPS):
        d = mpmath.mpf(delta)
        return float(mpmath.exp((d - 1) * mpmath.log(d - 1) - d * mpmath.log(d)))


def hypergraph_radius(delta: int) -> float:
    """Zero-free radius for every hypergraph of maximum degree Delta: the
    graph radius at Delta + 1."""
    _check_int("Delta", delta, 1)
    return shearer_radius(delta + 1)


def _tree_parts(delta: int, k: int):
    _check_int("Delta", delta, 2)
    _check_int("k", k, 2)
    with mpmath.workdps(_DPS):
        d = mpmath.mpf(delta)
        root = d ** (-mpmath.mpf(1) / (k - 1))
        lead = mpmath.exp((d - 1) * mpmath.log((d - 1) / d))
        return lead, root


def hypertree_radius(delta: int, k: int) -> float:
    """((Delta-1)/Delta)^(Delta-1) (1 - Delta^(-1/(k-1))) Delta^(-1/(k-1))."""
    lead, root = _tree_parts(delta, k)
    with mpmath.workdps(_DPS):
        return float(lead * (1 - root) * root)


def hypertree_simple(delta: int, k: int) -> float:
    """log(2)/(2k) * Delta^(-1/(k-1)), a smaller radius implying the one above."""
    _, root = _tree_parts(delta, k)
    return float(math.log(2) / (2 * k) * root)


def bcr_radius(delta: int) -> float:
    """2^-Delta, the earlier hypergraph zero-free radius kept as a baseline."""
    _check_int("Delta", delta, 1)
    return 2.0 ** -delta


# ---------------------------------------------------------------------------
# constraint verifiers


@dataclass(frozen=True)
class ConstraintWitness:
    R: float
    s: tuple
    delta: int
    k: int | None
    residuals: dict
    verdict: bool
    binding: str
    notes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["R"] = float(self.R)
        out["s"] = [float(x) for x in self.s]
        out["residuals"] = {k: float(v) for k, v in self.residuals.items()}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check_s(values) -> None:
    for x in values:
        if not 0 < x < 1:
            raise ValueError(f"s values must lie in (0, 1), got {x}")


def _exact(*xs) -> bool:
    return all(isinstance(x, Rational) for x in xs)


def _mpf(x):
    if isinstance(x, Rational):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def verify_constraints_general(R, s, delta: int) -> ConstraintWitness:
    """Check R <= s (1-s)^Delta, the common-s form of the vertex and edge
    conditions.  Exact for int/Fraction inputs; otherwise within a relative
    tolerance of CONSTRAINT_RTOL.  The canonical witness (s = 1/(Delta+1),
    R = hypergraph_radius(Delta)) is reported in ``notes``.
    """
    _check_s([s])
    _check_int("Delta", delta, 0)
    if R <= 0:
        raise ValueError("R must be positive")
    if _exact(R, s):
        s, R = Fraction(s), Fraction(R)
        rhs = s * (1 - s) ** delta
        residual = rhs - R
        ok = residual >= 0
    else:
        with mpmath.workdps(_DPS):
            rhs = _mpf(s) * (1 - _mpf(s)) ** delta
            residual = rhs - _mpf(R)
            ok = residual >= -CONSTRAINT_RTOL * rhs
    canon_s = Fraction(1, delta + 1)
    notes = {"canonical_s": float(canon_s),
             "canonical_R": float(canon_s * (1 - canon_s) ** delta)}
    return ConstraintWitness(R, (s,), delta, None, {"general": residual}, bool(ok),
                             "general", notes)


def tree_witness(delta: int, k: int) -> tuple[float, tuple[float, ...]]:
    """(R, (s_1..s_{k-1})) with s_1 = ... = s_{k-2} = Delta^(-1/(k-1)), s_{k-1} = 1/Delta."""
    _, root = _tree_parts(delta, k)
    s = tuple([float(root)] * (k - 2) + [1.0 / delta])
    return hypertree_radius(delta, k), s


def verify_constraints_tree(R, s_list, delta: int, k: int, refined: bool = False,
                            rtol: float = CONSTRAINT_RTOL) -> ConstraintWitness:
    """Check the vertex-step and edge-step conditions for k-uniform linear hypertrees.

    vertex step, for 1 <= j <= k-2:  R <= s_1 (1 - s_j) (1 - s_{k-1})^Delta
    edge step,   for 2 <= j <= k-1:  R^j <= s_j (1 - s_1)^j (1 - s_{k-1})^{j(Delta-1)}

    The verdict covers the vertex step for 2 <= j <= k-2.  It is also
    evaluated at j = 1 and reported separately: ``notes["verdict_with_j1"]``
    gives the verdict over the wider range 1 <= j <= k-2.  With `refined`,
    the vertex step uses the degree count a vertex actually has (one short
    edge plus at most Delta-1 full edges, so exponent Delta-1), together with
    the case of no short edge, R <= s_1 (1 - s_{k-1})^Delta.

    Residuals are relative, rhs/lhs - 1, so a residual >= -rtol is satisfied.
    ``binding`` names the checked constraint with the smallest residual and
    ``notes["tight"]`` lists every checked constraint within rtol of it.
    """
    _check_int("k", k, 3)
    _check_int("Delta", delta, 2)
    if len(s_list) != k - 1:
        raise ValueError(f"need k-1 = {k - 1} values s_1..s_(k-1)")
    _check_s(s_list)
    if R <= 0:
        raise ValueError("R must be positive")
    residuals = {}
    with mpmath.workdps(_DPS):
        Rm = _mpf(R)
        s = [None] + [_mpf(x) for x in s_list]
        big = 1 - s[k - 1]
        vexp = delta - 1 if refined else delta
        for j in range(1, k - 1):
            rhs = s[1] * (1 - s[j]) * big ** vexp
            residuals[f"vertex[j={j}]"] = float(rhs / Rm - 1)
        if refined:
            residuals["vertex[no short edge]"] = float(s[1] * big ** delta / Rm - 1)
        for j in range(2, k):
            rhs = s[j] * (1 - s[1]) ** j * big ** (j * (delta - 1))
            residuals[f"edge[j={j}]"] = float(rhs / Rm ** j - 1)
    checked = [n for n in residuals if n != "vertex[j=1]"]
    verdict = all(residuals[n] >= -rtol for n in checked)
    binding = min(checked, key=lambda n: (residuals[n], n))
    tight = [n for n in checked if residuals[n] <= residuals[binding] + rtol]
    notes = {"verdict_with_j1": verdict and residuals["vertex[j=1]"] >= -rtol,
             "tight": tight, "refined": refined}
    return ConstraintWitness(R, tuple(s_list), delta, k, residuals, verdict, binding, notes)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class BoundReport:
    delta: int
    k: int | None
    shearer: float
    hypergraph_thm2: float
    hypertree_thm4: float | None
    hypertree_simple: float | None
    bcr_baseline: float
    applicable: dict

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @property
    def best_applicable(self) -> float:
        vals = {"shearer": self.shearer, "hypergraph_thm2": self.hypergraph_thm2,
                "hypertree_thm4": self.hypertree_thm4, "bcr_baseline": self.bcr_baseline}
        return max(vals[n] for n, ok in self.applicable.items() if ok and vals[n] is not None)


def bound_table(delta: int, k: int | None = None) -> BoundReport:
    """All radii for given Delta (and k); applicability left to the caller.

    Delta below a formula's range is raised to its minimum (a hypergraph of
    max degree Delta also has max degree <= Delta' for Delta' >= Delta).
    """
    tree = (hypertree_radius(max(delta, 2), k), hypertree_simple(max(delta, 2), k)) \
        if k is not None and k >= 2 else (None, None)
    return BoundReport(delta, k, shearer_radius(max(delta, 2)), hypergraph_radius(max(delta, 1)),
                       tree[0], tree[1], bcr_radius(max(delta, 1)),
                       {"shearer": False, "hypergraph_thm2": True,
                        "hypertree_thm4": False, "bcr_baseline": True})


def bound_report(G: Hypergraph) -> BoundReport:
    """Radii for G's maximum degree, flagged by which hypotheses G satisfies."""
    st = G.stats()
    k = st.uniformity
    rep = bound_table(st.max_degree, k)
    applicable = dict(rep.applicable)
    applicable["shearer"] = G.is_graph
    applicable["hypertree_thm4"] = bool(k is not None and k >= 2 and st.is_linear_hypertree)
    return BoundReport(rep.delta, rep.k, rep.shearer, rep.hypergraph_thm2, rep.hypertree_thm4,
                       rep.hypertree_simple, rep.bcr_baseline, applicable)
