"""Command-line front end: ``hyperzero <subcommand> ...``.

Exit status is 0 on success, 1 on a domain or input error and 2 when an
exponential-cost computation exceeds its budget (see HYPERZERO_MEMO_BUDGET).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import bounds, cluster, constructions, exact, zeroscan
from .hypergraph import Hypergraph, HypergraphError, load, to_hg, to_json
from .poly import RootFindingError

DEFAULT_DIGITS = 17
_COMPLEX_RE = re.compile(r"^[+-]?[0-9.eE+-]*[ij]?$")


# ---------------------------------------------------------------------------
# parsing and formatting


def parse_complex(text: str) -> complex:
    """Parse `a`, `a+bi`, `bi` (also with j); no spaces."""
    s = text.strip()
    if not s or " " in s or not _COMPLEX_RE.match(s):
        raise ValueError(f"cannot parse complex number {text!r}")
    s = s.replace("i", "j")
    if s in ("j", "+j", "-j"):
        s = s.replace("j", "1j")
    try:
        return complex(s)
    except ValueError:
        raise ValueError(f"cannot parse complex number {text!r}") from None


def format_complex(z, digits: int = DEFAULT_DIGITS) -> str:
    """`a` for real values, `a+bi` otherwise."""
    if isinstance(z, Fraction):
        return str(z)
    z = complex(z)
    re_ = f"{z.real:.{digits}g}"
    if z.imag == 0:
        return re_
    sign = "-" if z.imag < 0 or (z.imag == 0 and str(z.imag).startswith("-")) else "+"
    return f"{re_}{sign}{abs(z.imag):.{digits}g}i"


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError:
        raise ValueError(f"expected comma-separated numbers, got {text!r}") from None


def _real(text: str):
    """Float, or Fraction for `p/q` literals."""
    return Fraction(text) if "/" in text else float(text)


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    input_path: str | None
    construction: constructions.ConstructionSpec | None
    lam: complex | None
    eps: float | None
    r: int | None
    radius: float | None
    resolution: int | None
    seed: int | None
    output: str | None
    fmt: str
    digits: int
    threads: int
    budget: int | None

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "CliConfig":
        spec = None
        if getattr(ns, "family", None) and "depth" in ns:
            spec = constructions.ConstructionSpec(ns.family, ns.k, ns.delta, ns.s, ns.depth,
                                                  ns.n, ns.m, ns.seed)
        inp = getattr(ns, "input", None)
        if inp and spec is not None:
            raise ValueError("give either --in or --family, not both")
        lam = getattr(ns, "lam", None)
        if lam is not None and not getattr(ns, "exact", False):
            lam = parse_complex(lam)
        elif lam is not None:
            lam = None
        return cls(ns.command, inp, spec, lam,
                   getattr(ns, "eps", None), getattr(ns, "r", None),
                   getattr(ns, "radius", None), getattr(ns, "resolution", None),
                   getattr(ns, "seed", None), ns.out, ns.format, ns.digits, ns.threads,
                   ns.budget)

    def hypergraph(self) -> Hypergraph:
        if self.input_path:
            return load(self.input_path)
        if self.construction is not None:
            return self.construction.build()
        raise ValueError("an input is required: --in PATH or --family NAME")

    def require_lambda(self) -> complex:
        if self.lam is None:
            raise ValueError("--lambda is required")
        return self.lam


def _table(rows: Sequence[Sequence]) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def _emit(cfg: CliConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(cfg: CliConfig, data: dict) -> None:
    if cfg.fmt == "table":
        _emit(cfg, _table([[k, _cell(v, cfg.digits)] for k, v in data.items()]))
    elif cfg.fmt == "csv":
        _emit(cfg, ",".join(data) + "\n" + ",".join(_cell(v, cfg.digits) for v in data.values()))
    else:
        _emit(cfg, json.dumps(data))


def _cell(v, digits: int) -> str:
    if isinstance(v, float):
        return f"{v:.{digits}g}"
    if isinstance(v, complex):
        return format_complex(v, digits)
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v)
    return str(v)


def _cjson(z: complex) -> list[float]:
    return [complex(z).real, complex(z).imag]


# ---------------------------------------------------------------------------
# subcommands


def _closed_form(cfg: CliConfig):
    spec = cfg.construction
    if spec is None or spec.family not in ("samotij", "star"):
        raise ValueError("closed_form evaluator needs --family samotij or star")
    if spec.family == "samotij":
        return lambda lam: constructions.samotij_Z_closed_form(spec.k, spec.s, lam)
    return lambda lam: constructions.star_Z_closed_form(spec.k, spec.delta, lam)


def cmd_eval(cfg: CliConfig, ns) -> None:
    G = cfg.hypergraph()
    if ns.exact:
        if ns.lam is None:
            raise ValueError("--lambda is required")
        try:
            lam = Fraction(ns.lam)
        except ValueError:
            raise ValueError(f"--exact needs a rational lambda, got {ns.lam!r}") from None
    else:
        lam = cfg.require_lambda()
    if ns.evaluator == "dc":
        val = exact.dc_eval(G, lam, budget=cfg.budget)
    elif ns.evaluator == "brute":
        val = exact.brute_force_coeffs(G).eval(lam) if ns.exact else exact.brute_force_Z(G, lam)
    elif ns.evaluator == "coeffs":
        val = exact.dc_coeffs(G, budget=cfg.budget).eval(lam, compensated=not ns.exact)
    else:
        val = _closed_form(cfg)(lam)
    if cfg.fmt == "json":
        _emit(cfg, json.dumps({"lambda": str(lam) if ns.exact else _cjson(lam),
                               "value": str(val) if ns.exact else _cjson(val),
                               "evaluator": ns.evaluator}))
    else:
        _emit(cfg, format_complex(val, cfg.digits))


def cmd_coeffs(cfg: CliConfig, ns) -> None:
    G = cfg.hypergraph()
    p = exact.dc_coeffs(G, budget=cfg.budget)
    if cfg.fmt == "csv":
        _emit(cfg, "j,coeff\n" + "\n".join(f"{j},{c}" for j, c in enumerate(p.coeffs)))
    elif cfg.fmt == "table":
        _emit(cfg, _table([["j", "coeff"]] + [[j, c] for j, c in enumerate(p.coeffs)]))
    else:
        _emit(cfg, json.dumps({"n": G.vertex_count, "coeffs": list(p.coeffs)}))


def cmd_logcoeffs(cfg: CliConfig, ns) -> None:
    G = cfg.hypergraph()
    if not cfg.r:
        raise ValueError("--r is required")
    trunc = cluster.taylor_coeffs(G, cfg.r, ns.backend, cfg.budget)
    if cfg.fmt == "json":
        out = trunc.to_dict()
        out["backend"] = ns.backend
        _emit(cfg, json.dumps(out))
    else:
        rows = [["j", "c_j"]] + [[j, c] for j, c in enumerate(trunc.coeffs, 1)]
        _emit(cfg, _table(rows) if cfg.fmt == "table"
              else "\n".join(",".join(map(str, r)) for r in rows))


def cmd_approx(cfg: CliConfig, ns) -> None:
    G = cfg.hypergraph()
    eps = cfg.eps if cfg.eps is not None else 1e-3
    res = cluster.approx_Z(G, cfg.require_lambda(), eps, B=ns.B, delta=ns.slack,
                           backend=ns.backend, r=cfg.r, budget=cfg.budget)
    data = res.to_dict()
    if cfg.fmt == "json":
        _emit(cfg, json.dumps(data))
    else:
        data["value"] = res.value
        data["lam"] = res.lam
        _dump(cfg, data)


def _exact_radius(value: float, delta: int, name: str) -> str:
    if name in ("shearer", "hypergraph_thm2"):
        d = max(delta, 2) if name == "shearer" else max(delta, 1) + 1
        if d <= 40:
            return str(Fraction((d - 1) ** (d - 1), d ** d))
    if name == "bcr_baseline" and delta <= 60:
        return str(Fraction(1, 2 ** max(delta, 1)))
    return ""


def cmd_bounds(cfg: CliConfig, ns) -> None:
    have_graph = bool(cfg.input_path or cfg.construction)
    if have_graph:
        rep = bounds.bound_report(cfg.hypergraph())
    else:
        if ns.delta is None:
            raise ValueError("--delta (or an input hypergraph) is required")
        rep = bounds.bound_table(ns.delta, ns.k)
    if cfg.fmt == "json":
        _emit(cfg, rep.to_json())
        return
    rows = [["bound", "radius", "exact"] + (["applicable"] if have_graph else [])]
    for name in ("shearer", "hypergraph_thm2", "hypertree_thm4", "hypertree_simple",
                 "bcr_baseline"):
        v = getattr(rep, name)
        if v is None:
            continue
        row = [name, f"{v:.{cfg.digits}g}", _exact_radius(v, rep.delta, name)]
        if have_graph:
            row.append(rep.applicable["hypertree_thm4" if name == "hypertree_simple" else name])
        rows.append(row)
    if cfg.fmt == "csv":
        _emit(cfg, "\n".join(",".join(map(str, r)) for r in rows))
    else:
        _emit(cfg, f"Delta = {rep.delta}" + (f", k = {rep.k}" if rep.k else "") + "\n"
              + _table(rows))


def cmd_verify(cfg: CliConfig, ns) -> None:
    if ns.kind == "general":
        if ns.delta is None:
            raise ValueError("--delta is required")
        s = _real(ns.s) if ns.s else Fraction(1, ns.delta + 1)
        R = _real(ns.R) if ns.R else s * (1 - s) ** ns.delta
        w = bounds.verify_constraints_general(R, s, ns.delta)
        _dump(cfg, w.to_dict())
    elif ns.kind == "tree":
        if ns.delta is None or ns.k is None:
            raise ValueError("--delta and --k are required")
        R0, s0 = bounds.tree_witness(ns.delta, ns.k)
        s = _float_list(ns.s) if ns.s else list(s0)
        R = float(_real(ns.R)) if ns.R else R0
        w = bounds.verify_constraints_tree(R, s, ns.delta, ns.k, refined=ns.refined)
        _dump(cfg, w.to_dict())
    else:
        G = cfg.hypergraph()
        lam = cfg.require_lambda()
        if (ns.vertex is None) == (ns.set is None):
            raise ValueError("give exactly one of --vertex or --set")
        if ns.vertex is not None:
            chk = exact.verify_vertex_identity(G, ns.vertex, lam, evaluator=ns.evaluator)
        else:
            chk = exact.verify_edge_identity(G, _int_list(ns.set), lam, evaluator=ns.evaluator)
        _dump(cfg, {"lhs": _cjson(chk.lhs), "rhs": _cjson(chk.rhs), "residual": chk.residual,
                    "relative": chk.relative, "holds": chk.holds,
                    "degenerate": chk.degenerate})
    return None


def cmd_construct(cfg: CliConfig, ns) -> None:
    if cfg.construction is None:
        raise ValueError("--family is required")
    G = cfg.construction.build()
    _emit(cfg, to_json(G) if cfg.fmt == "json" else to_hg(G))


def cmd_probe(cfg: CliConfig, ns) -> None:
    if ns.family == "samotij":
        if ns.threshold:
            data = {"family": "samotij", "k": ns.k,
                    "s0": constructions.samotij_threshold(ns.k, ns.max)}
        else:
            data = constructions.samotij_negativity_probe(ns.k, ns.s).to_dict()
    else:
        if ns.threshold:
            data = {"family": "star", "k": ns.k,
                    "delta0": constructions.star_threshold(ns.k, ns.max), "delta_max": ns.max}
        else:
            data = constructions.star_negativity_probe(ns.k, ns.delta).to_dict()
    _dump(cfg, data)


def cmd_scan(cfg: CliConfig, ns) -> None:
    G = cfg.hypergraph()
    if not cfg.radius:
        raise ValueError("--radius is required")
    zfn = _closed_form(cfg) if ns.evaluator == "closed_form" else None
    res = zeroscan.scan_disk(G, cfg.radius, cfg.resolution or zeroscan.DEFAULT_RESOLUTION,
                             ns.evaluator, workers=cfg.threads, Zfn=zfn, budget=cfg.budget)
    if ns.summary:
        with open(ns.summary, "w") as fh:
            fh.write(res.to_json() + "\n")
    if cfg.fmt == "json":
        _emit(cfg, res.to_json())
    elif cfg.fmt == "table":
        _dump(cfg, res.summary())
    else:
        _emit(cfg, res.to_csv())


def cmd_root(cfg: CliConfig, ns) -> None:
    G = cfg.hypergraph()
    if ns.mode == "min":
        mr = zeroscan.min_root_of(G, budget=cfg.budget)
        data = mr.to_dict()
        if cfg.fmt != "json":
            data["root"] = mr.root
    else:
        if ns.hi is None:
            raise ValueError("--hi is required for the negative-axis search")
        p = exact.dc_coeffs(G, budget=cfg.budget)
        root = zeroscan.negative_axis_root(lambda x: p.eval(x, compensated=True).real,
                                           ns.hi, ns.tol, ns.samples)
        data = {"root": root, "hi": ns.hi, "tol": ns.tol}
    _dump(cfg, data)


COMMANDS = {"eval": cmd_eval, "coeffs": cmd_coeffs, "logcoeffs": cmd_logcoeffs,
            "approx": cmd_approx, "bounds": cmd_bounds, "verify": cmd_verify,
            "construct": cmd_construct, "probe": cmd_probe, "scan": cmd_scan,
            "root": cmd_root}


# ---------------------------------------------------------------------------
# argument grammar


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "table"), default=None)
    common.add_argument("--digits", type=int, default=DEFAULT_DIGITS,
                        help="significant digits for floats")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--budget", type=int, default=None,
                        help="deletion/contraction expansion budget")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--in", dest="input", help=".hg or .json hypergraph file")
    source.add_argument("--family", choices=constructions.ConstructionSpec.FAMILIES)
    source.add_argument("--k", type=int)
    source.add_argument("--delta", type=int)
    source.add_argument("--s", type=int)
    source.add_argument("--depth", type=int)
    source.add_argument("--n", type=int)
    source.add_argument("--m", type=int)
    source.add_argument("--seed", type=int)

    p = argparse.ArgumentParser(prog="hyperzero",
                                description="Independence polynomials of hypergraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, parents=(common, source), fmt="table"):
        sp = sub.add_parser(name, help=help_, parents=list(parents))
        sp.set_defaults(default_format=fmt)
        return sp

    sp = add("eval", "exact Z_G(lambda)")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--evaluator", choices=("dc", "brute", "coeffs", "closed_form"), default="dc")
    sp.add_argument("--exact", action="store_true", help="rational lambda such as 1/3")

    add("coeffs", "independent-set counts i_0..i_n", fmt="json")

    sp = add("logcoeffs", "Taylor coefficients of log Z_G", fmt="json")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--backend", choices=("global", "local"), default="global")

    sp = add("approx", "cluster-expansion approximation with certificate", fmt="json")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--eps", type=float, default=1e-3)
    sp.add_argument("--r", type=int)
    sp.add_argument("--B", type=float, help="zero-free radius (default from max degree)")
    sp.add_argument("--slack", type=float, default=cluster.DEFAULT_DELTA,
                    help="require |lambda| <= (1 - slack) B")
    sp.add_argument("--backend", choices=("auto", "global", "local"), default="auto")

    add("bounds", "zero-free radii for Delta (and k) or an input hypergraph")

    sp = add("verify", "constraint witnesses or identity spot-checks", parents=(common,))
    sp.add_argument("kind", choices=("general", "tree", "identity"))
    sp.add_argument("--in", dest="input", help="hypergraph for identity checks")
    sp.add_argument("--delta", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--R", help="radius (float or p/q); default: the standard witness")
    sp.add_argument("--s", dest="s", help="s (general) or s_1,..,s_(k-1) (tree)")
    sp.add_argument("--refined", action="store_true")
    sp.add_argument("--lambda", dest="lam")
    sp.add_argument("--vertex", type=int)
    sp.add_argument("--set", help="comma-separated vertex set A")
    sp.add_argument("--evaluator", choices=("brute", "dc"), default="dc")

    add("construct", "emit a hypergraph from a named family", fmt="hg")

    sp = add("probe", "negativity probes for the extremal families", parents=(common,))
    sp.add_argument("family", choices=("samotij", "star"))
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--s", type=int)
    sp.add_argument("--delta", type=int)
    sp.add_argument("--threshold", action="store_true",
                    help="search for the smallest parameter with a negative probe")
    sp.add_argument("--max", type=int, default=10 ** 6)

    sp = add("scan", "|Z| over a polar grid", fmt="csv")
    sp.add_argument("--radius", type=float, required=True)
    sp.add_argument("--resolution", type=int, default=zeroscan.DEFAULT_RESOLUTION)
    sp.add_argument("--evaluator", choices=zeroscan.EVALUATORS, default="dc")
    sp.add_argument("--summary", help="also write the JSON summary here")

    sp = add("root", "minimum-modulus or negative-axis root")
    sp.add_argument("--mode", choices=("min", "negative"), default="min")
    sp.add_argument("--hi", type=float)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--samples", type=int, default=4096)
    return p


_NEG_VALUE = re.compile(r"^-[0-9.]")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn `--opt -0.1+0.2i` into `--opt=-0.1+0.2i`; argparse would read the
    value as an option."""
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEG_VALUE.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    ns = parser.parse_args(_glue_negative_values(argv))
    if ns.format is None:
        ns.format = ns.default_format if ns.default_format != "hg" else "table"
    try:
        cfg = CliConfig.from_namespace(ns)
        COMMANDS[ns.command](cfg, ns)
    except exact.BudgetExceeded as exc:
        print(f"hyperzero: budget exceeded: {exc} {json.dumps(exc.stats)}", file=sys.stderr)
        return 2
    except (HypergraphError, ValueError, RootFindingError, OSError, ZeroDivisionError) as exc:
        print(f"hyperzero: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
