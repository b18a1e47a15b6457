"""Command-line front end.

Exit status 0 on success, 1 on domain errors (bad input, empty variety,
budget), 2 on correctness alarms.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from importlib.resources import files
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import charvar, fforacle, kacpoly, predict, qvbetti
from .exact import LaurentPoly
from .errors import CorrectnessAlarm, DomainError, EmptyVariety, OracleMismatch, ParseError
from .quiver import ParabolicType, Quiver, dim_quiver_variety, parse_quiver, parse_vector


@dataclass
class RunConfig:
    command: str
    options: Dict[str, Any]
    fmt: str = "text"
    threads: int = 1
    budget: Optional[int] = None

    def __post_init__(self):
        if self.fmt not in ("text", "json", "csv"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.threads < 1:
            raise ValueError("--threads must be at least 1")
        if self.budget is not None and self.budget <= 0:
            raise ValueError("--budget must be positive")


@dataclass
class Report:
    inputs: Dict[str, Any]
    results: Dict[str, Any] = field(default_factory=dict)
    lines: List[str] = field(default_factory=list)


class UsageError(DomainError):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors are domain errors (exit 1); exit 2 is reserved for alarms
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_quiver_file(path: str) -> Quiver:
    """Read a quiver file; a bare name such as ``d4tilde`` falls back to the bundled quivers."""
    p = Path(path)
    if p.is_file():
        return parse_quiver(p.read_text(encoding="utf-8"))
    name = p.name if p.suffix == ".quiver" else p.name + ".quiver"
    bundled = files("quiverhodge.data.quivers").joinpath(name)
    if bundled.is_file():
        return parse_quiver(bundled.read_text(encoding="utf-8"))
    raise ParseError(f"no such quiver file: {path}")


def _budget(cfg: RunConfig, default: int) -> int:
    return cfg.budget if cfg.budget is not None else default


def _poly(p) -> Dict[str, str]:
    return {"terms": p.to_terms(), "pretty": p.pretty()}


def _vec(v) -> str:
    return ",".join(map(str, v))


# -- subcommands ---------------------------------------------------------------

def _cmd_betti(cfg: RunConfig) -> Report:
    o = cfg.options
    quiver = parse_quiver_file(o["quiver"])
    w = parse_vector(o["w"])
    budget = _budget(cfg, qvbetti.DEFAULT_BUDGET)
    rep = Report({"quiver": o["quiver"], "v": o["v"], "w": o["w"], "cap": o["cap"]})
    if o["v"] is not None:
        v = parse_vector(o["v"])
        poly = qvbetti.poincare_polynomial(quiver, v, w, budget)
        rep.results = {"v": _vec(v), "dim": poly.dim, "poincare": _poly(poly.as_poly()),
                       "middle_betti": poly.middle}
        rep.lines = [f"P(t) = {poly}", f"dim = {poly.dim}", f"b_mid = {poly.middle}"]
        return rep
    if o["cap"] is None:
        raise UsageError("betti needs --v or --cap")
    table = qvbetti.betti_table(quiver, w, parse_vector(o["cap"]), budget)
    rows = []
    for v, entry in table.items():
        p = entry.poincare
        rows.append({"v": _vec(v), "dim": entry.dim,
                     "poincare": None if p is None else _poly(p.as_poly()),
                     "middle_betti": None if p is None else p.middle})
        rep.lines.append(f"v=({_vec(v)})  dim={entry.dim}  P(t) = {'empty' if p is None else p}")
    rep.results = {"table": rows}
    return rep


def _cmd_kac(cfg: RunConfig) -> Report:
    o = cfg.options
    quiver = parse_quiver_file(o["quiver"])
    v = parse_vector(o["v"])
    cap = parse_vector(o["cap"]) if o["cap"] else None
    budget = _budget(cfg, qvbetti.DEFAULT_BUDGET)
    a = kacpoly.kac_polynomial(quiver, v, cap, budget)
    m = kacpoly.weight_multiplicity(quiver, v, budget)
    pos = kacpoly.kac_positivity_report(quiver, v, budget)
    rep = Report({"quiver": o["quiver"], "v": o["v"], "cap": o["cap"]})
    rep.results = {"A": _poly(a.poly), "m_v": m.value, "m_v_formal": m.formal,
                   "connected_support": a.connected_support, "nonnegative": pos.nonnegative}
    rep.lines = [f"A = {a}", f"m_v = {m.value}"]
    if m.formal:
        rep.lines.append("note: the quiver has loops; m_v = A(v, 0) is formal")
    rep.lines.append(f"non-negative coefficients: {'yes' if pos.nonnegative else 'no'}")
    return rep


_SHOW = ("H", "P", "E", "pure", "chi", "cross", "purity", "families")


def _cmd_charvar(cfg: RunConfig) -> Report:
    o = cfg.options
    g = o["g"]
    qs = list(parse_vector(o["q"])) if o["q"] else []
    show = [s.strip() for s in o["show"].split(",")] if o["show"] else (
        ["H", "P", "E", "pure", "chi"] + (["cross"] if qs else []) if g >= 2 else ["cross"])
    for s in show:
        if s not in _SHOW:
            raise UsageError(f"unknown --show item {s!r}; choose from {', '.join(_SHOW)}")
    if ("cross" in show or "families" in show) and not qs:
        qs = [3, 5, 7, 9]
    rep = Report({"g": g, "q": qs, "show": show})
    h = charvar.mixed_hodge_pgl2(g) if any(s in show for s in ("H", "P", "E", "pure", "chi", "purity")) else None
    for s in show:
        if s == "H":
            rep.results["H"] = _poly(h.poly)
            rep.results["H"]["terms_count"] = len(h.poly)
            rep.lines.append(f"H = {h.poly.pretty()}")
        elif s == "P":
            p = charvar.poincare_from_H(h)
            rep.results["P"] = _poly(p)
            rep.lines.append(f"P = {p.pretty()}")
        elif s == "E":
            e = charvar.e_polynomial(h)
            rep.results["E"] = _poly(e)
            rep.lines.append(f"E = {e.pretty(ascending=False)}")
        elif s == "pure":
            pp = charvar.pure_part(h)
            rep.results["pure"] = {"terms": pp.to_terms(), "pretty": pp.pretty(ascending=True)}
            text = pp.pretty(ascending=True)
            rep.lines.append(text if len(show) == 1 else f"pure = {text}")
        elif s == "chi":
            c = charvar.chi_l2_pgl2(g)
            rep.results["chi_L2"] = c
            rep.lines.append(f"chi_L2 = {c}")
        elif s == "purity":
            r = charvar.purity_check(g)
            rep.results["purity"] = {"half_dim": r.half_dim, "pure": r.pure.to_terms(),
                                     "predicted": r.predicted.to_terms(), "agree": r.agree}
            rep.lines.append(f"purity: pure part {r.pure.pretty()} vs q^{r.half_dim} A(1/q) = "
                             f"{r.predicted.pretty()}: {'agree' if r.agree else 'DIFFER'}")
        elif s == "families":
            fams = {}
            for q in qs:
                fams[str(q)] = [{"kind": f.kind, "degree": f.degree, "plus": f.plus, "minus": f.minus}
                                for f in charvar.gl2_character_families(q)]
                desc = ", ".join(f"{f.kind} deg {f.degree} (+{f.plus}/-{f.minus})"
                                 for f in charvar.gl2_character_families(q))
                rep.lines.append(f"q={q}: {desc}")
            rep.results["families"] = fams
        elif s == "cross":
            e = charvar.e_polynomial(charvar.mixed_hodge_pgl2(g)) if g >= 2 else None
            rows = []
            for q in qs:
                count = charvar.count_char_variety_pgl2(g, q)
                value = None if e is None else int(e(q))
                if value is not None and value != count:
                    raise OracleMismatch(f"g={g}, q={q}: character sum {count} != E(q) {value}")
                rows.append({"q": q, "count": count, "E": value})
                rep.lines.append(f"q={q}  count={count}" + ("" if value is None else f"  E(q)={value}  ok"))
            rep.results["cross"] = rows
    return rep


def _cmd_predict(cfg: RunConfig) -> Report:
    o = cfg.options
    verb = o["verb"]
    rep = Report({"verb": verb})
    if verb == "sen":
        rep.inputs.update(k=o["k"], d=o["d"])
        pred = predict.sen_l2_dim(o["k"], o["d"])
    elif verb == "segal-selby":
        rep.inputs.update(k=o["k"])
        value = predict.segal_selby_bound(o["k"])
        pred = predict.L2Prediction(f"reduced monopole moduli, charge {o['k']}", "middle", value,
                                    "Segal-Selby lower bound")
    elif verb == "main":
        mu = ParabolicType.parse(o["mu"])
        rep.inputs.update(g=o["g"], mu=str(mu))
        pred = predict.conjecture_main(o["g"], mu, _budget(cfg, qvbetti.DEFAULT_BUDGET))
    else:
        quiver = parse_quiver_file(o["quiver"])
        rep.inputs.update(quiver=o["quiver"], v=o["v"], w=o["w"])
        pred = predict.vafa_witten(quiver, parse_vector(o["v"]), parse_vector(o["w"]),
                                   _budget(cfg, qvbetti.DEFAULT_BUDGET))
    rep.results = {"dimension": pred.dimension, "target": pred.target, "degree": pred.degree,
                   "provenance": pred.provenance}
    rep.lines = [str(pred.dimension), f"# {pred.provenance}: {pred.target}, degree {pred.degree}"]
    return rep


def _cmd_oracle(cfg: RunConfig) -> Report:
    o = cfg.options
    verb = o["verb"]
    budget = _budget(cfg, fforacle.DEFAULT_BUDGET)
    rep = Report({"verb": verb})
    if verb == "manifest":
        if o["manifest"]:
            entries = fforacle.parse_manifest(Path(o["manifest"]).read_text(encoding="utf-8"))
        else:
            entries = fforacle.load_default_manifest()
        rep.inputs["manifest"] = o["manifest"] or "bundled"
        rows = []
        for e in entries:
            dim = dim_quiver_variety(e.quiver, e.v, e.w)
            formula = qvbetti.poincare_polynomial(e.quiver, e.v, e.w).as_poly()
            records, oracle = fforacle.oracle_poincare(e, dim, budget=budget, workers=cfg.threads)
            if formula != oracle:
                raise OracleMismatch(f"{e.name}: formula {formula} != oracle {oracle}")
            rows.append({"name": e.name, "dim": dim, "formula": formula.to_terms(),
                         "oracle": oracle.to_terms(),
                         "counts": [[r.p, r.quotient, r.level] for r in records]})
            rep.lines.append(f"{e.name:14s} dim={dim}  P(t) = {formula.pretty()}  oracle agrees")
        rep.results["instances"] = rows
        return rep
    quiver = parse_quiver_file(o["quiver"])
    v = parse_vector(o["v"])
    primes = list(parse_vector(o["q"])) if o["q"] else [2, 3, 5]
    rep.inputs.update(quiver=o["quiver"], v=o["v"], q=primes)
    if verb == "kac":
        a = kacpoly.kac_polynomial(quiver, v).poly
        rows = []
        for p in primes:
            brute = fforacle.brute_kac(quiver, v, p, budget=budget)
            if brute != a(p):
                raise OracleMismatch(f"p={p}: brute force {brute} != A(v, p) {a(p)}")
            rows.append({"p": p, "brute": brute, "A": int(a(p))})
            rep.lines.append(f"p={p}  brute={brute}  A(v,p)={a(p)}  ok")
        rep.results["counts"] = rows
        return rep
    w = parse_vector(o["w"])
    rep.inputs["w"] = o["w"]
    records = [fforacle.count_moment_fiber(quiver, v, w, p, budget=budget, workers=cfg.threads,
                                           level=o["level"], shortcut=not o["no_shortcut"])
               for p in primes]
    rep.results["counts"] = [{"p": r.p, "raw": r.raw, "quotient": r.quotient, "level": r.level}
                             for r in records]
    rep.lines = [f"p={r.p}  raw={r.raw}  |M(F_p)|={r.quotient}  level={r.level}" for r in records]
    dim = dim_quiver_variety(quiver, v, w)
    if dim >= 0 and len(records) >= dim // 2 + 1:
        oracle = fforacle.counts_to_poincare(records, dim)
        try:
            formula = qvbetti.poincare_polynomial(quiver, v, w).as_poly()
        except EmptyVariety:
            formula = LaurentPoly(0, "t")
        if formula != oracle:
            raise OracleMismatch(f"formula {formula} != oracle {oracle}")
        rep.results["poincare"] = _poly(oracle)
        rep.lines.append(f"interpolated P(t) = {oracle.pretty()}  (matches the generating function)")
    return rep


_COMMANDS = {"betti": _cmd_betti, "kac": _cmd_kac, "charvar": _cmd_charvar,
             "predict": _cmd_predict, "oracle": _cmd_oracle}


# -- parser ----------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--threads", type=int, default=1, help="worker processes for enumeration")
    p.add_argument("--budget", type=int, default=None, help="enumeration budget")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quiverhodge", description="Exact Betti numbers, Kac polynomials, character "
                     "varieties and L2 predictions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("betti", help="Poincare polynomials of Nakajima quiver varieties",
                       description="Betti numbers of M(v, w) from the generating function "
                                   "sum_v P(M(v,w)) t^-d T^v = numerator / denominator, a sum over "
                                   "multipartitions of v.")
    p.add_argument("--quiver", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--v")
    p.add_argument("--cap")
    _common(p)

    p = sub.add_parser("kac", help="Kac A-polynomial and weight multiplicity",
                       description="A(v, q) as (q - 1) times the plethystic logarithm of the "
                                   "denominator of the Betti generating function (Hua's formula); "
                                   "m_v = A(v, 0), the root multiplicity in the Kac denominator formula.")
    p.add_argument("--quiver", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--cap")
    _common(p)

    p = sub.add_parser("charvar", help="twisted PGL_2 character varieties",
                       description="Mixed Hodge polynomial H(M_B(PGL_2); q, t) of the twisted character "
                                   "variety from its four-term closed form (one term per type of "
                                   "irreducible character of GL_2(F_q)); E-polynomial E(q) = "
                                   "q^d H(1/q, -1) checked against the character-sum point count.")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--q", help="odd prime powers for the point count")
    p.add_argument("--show", help="comma list of " + ",".join(_SHOW))
    _common(p)

    p = sub.add_parser("predict", help="L2 cohomology predictions")
    verbs = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    s = verbs.add_parser("sen", description="Sen's conjecture: L2 harmonic d-forms on the reduced "
                                            "charge-k monopole space, phi(k) in the middle degree 2k-2.")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    _common(s)
    s = verbs.add_parser("segal-selby", description="Segal-Selby lower bound phi(k) on middle L2 cohomology.")
    s.add_argument("--k", type=int, required=True)
    _common(s)
    s = verbs.add_parser("main", description="L2 conjecture for parabolic character varieties: "
                                             "chi_L2 = 0 (g > 1), 1 (g = 1), m_v of the crab quiver (g = 0).")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--mu", required=True, help='parabolic type, e.g. "2,1;1,1,1"')
    _common(s)
    s = verbs.add_parser("vafa-witten", description="Vafa-Witten prediction: middle L2 dimension of "
                                                    "M(v, w) equals its middle Betti number.")
    s.add_argument("--quiver", required=True)
    s.add_argument("--v", required=True)
    s.add_argument("--w", required=True)
    _common(s)

    p = sub.add_parser("oracle", help="finite-field brute-force checks")
    verbs = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    s = verbs.add_parser("count", description="Count M(v, w)(F_p) from the complex moment-map fibre "
                                              "and interpolate Betti numbers (Katz's theorem).")
    s.add_argument("--quiver", required=True)
    s.add_argument("--v", required=True)
    s.add_argument("--w", required=True)
    s.add_argument("--q", help="primes, default 2,3,5")
    s.add_argument("--level", choices=["auto", "identity", "stable"], default="auto")
    s.add_argument("--no-shortcut", action="store_true", help="enumerate the framing maps too")
    _common(s)
    s = verbs.add_parser("kac", description="Count absolutely indecomposable representations over F_p "
                                            "and compare with A(v, p).")
    s.add_argument("--quiver", required=True)
    s.add_argument("--v", required=True)
    s.add_argument("--q", help="primes, default 2,3,5")
    _common(s)
    s = verbs.add_parser("manifest", description="Run every oracle instance of a manifest against "
                                                 "the Betti generating function.")
    s.add_argument("--manifest", help="manifest file, default the bundled one")
    _common(s)
    return parser


# -- output ------------------------------------------------------------------------

def _flatten(prefix: str, value, out: List[List[str]]) -> None:
    if isinstance(value, dict):
        for k, x in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), x, out)
    elif isinstance(value, list):
        for i, x in enumerate(value):
            _flatten(f"{prefix}[{i}]", x, out)
    else:
        out.append([prefix, "" if value is None else str(value)])


def _emit(cfg: RunConfig, rep: Report, alarms: List[str], out) -> None:
    if cfg.fmt == "json":
        obj = {"command": cfg.command, "inputs": rep.inputs, "results": rep.results, "alarms": alarms}
        out.write(json.dumps(obj, sort_keys=True) + "\n")
    elif cfg.fmt == "csv":
        rows: List[List[str]] = []
        _flatten("", rep.results, rows)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        writer.writerows(rows)
        out.write(buf.getvalue())
    else:
        for line in rep.lines:
            out.write(line + "\n")


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        rep = _COMMANDS[cfg.command](cfg)
    except CorrectnessAlarm as exc:
        msg = f"{type(exc).__name__}: {exc}"
        if cfg.fmt == "json":
            _emit(cfg, Report({}), [msg], out)
        err.write(f"CORRECTNESS ALARM: {msg}\n")
        return 2
    except (DomainError, ValueError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    _emit(cfg, rep, [], out)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        opts = {k: v for k, v in vars(ns).items() if k not in ("command", "format", "threads", "budget")}
        cfg = RunConfig(ns.command, opts, ns.format, ns.threads, ns.budget)
    except (DomainError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
