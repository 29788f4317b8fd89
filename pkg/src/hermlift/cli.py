"""Command line front end.

Every subcommand writes one JSON document to standard output (complex
numbers as ``{"re": .., "im": ..}``, floats with 17 significant digits) and a
short human-readable table to standard error.

Exit codes: 0 success / identity within tolerance, 2 tolerance failure,
1 operational error.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .chartools import chi_Q, genus_subsets, is_squarefree
from .eigenforms import (BUNDLED, NewformSeries, default_cache_dir, fetch_newform,
                         ingest_newform, level1_eigenform, twist_fQ)
from .exact import QuadElement
from .lvalue import AfeConfig, central_value, dirichlet_L1, rankin_coefficients
from .maasslift import LiftTable
from .pullback import petersson_norm, pullback_c0
from .quadfield import ClassGroup, IdealClassRep, class_group

log = logging.getLogger("hermlift")

EXIT_OK, EXIT_ERROR, EXIT_TOLERANCE = 0, 1, 2

DEFAULTS = {
    "tol": 1e-6,
    "nmax": None,
    "cache_dir": None,
    "c": 1.5,
    "h": 0.1,
    "T": None,
    "width": 64.0,
    "afe_tol": 1e-12,
}
_CONVERT = {"tol": float, "nmax": int, "cache_dir": str, "c": float, "h": float,
            "T": float, "width": float, "afe_tol": float}
DEFAULT_FIXTURE = {3: "example1", 15: "example2"}


# ---------------------------------------------------------------------------
# JSON with fixed float formatting


def _num(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"non-finite value {x!r} in report")
    s = format(x, ".17g")
    if "e" not in s and "." not in s:
        s += ".0"
    return s


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON: complex as ``{"re", "im"}``, floats as ``%.17g``."""
    import json

    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, Fraction):
        return json.dumps(str(obj))
    if isinstance(obj, QuadElement):
        return to_json({"u": obj.u, "v": obj.v, "d0": obj.d0, "value": complex(obj)}, indent, _level)
    if isinstance(obj, complex):
        return to_json({"re": obj.real, "im": obj.imag}, indent, _level)
    if hasattr(obj, "item"):  # numpy scalar
        return to_json(obj.item(), indent, _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, str)) for v in obj):
            return "[" + ", ".join(to_json(v) for v in obj) + "]"
        items = [pad + to_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _table(rows: list[tuple[str, object]]) -> None:
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        if isinstance(v, complex):
            v = f"{v.real:.15g} {v.imag:+.15g}i"
        print(f"{k:<{width}}  {v}", file=sys.stderr)


# ---------------------------------------------------------------------------
# configuration


def read_config(path) -> dict:
    """``key = value`` lines; ``#`` starts a comment; keys use ``_`` or ``-``."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        k, v = (t.strip() for t in line.split("=", 1))
        k = k.replace("-", "_")
        if k not in _CONVERT:
            raise ValueError(f"{path}:{lineno}: unknown key {k!r}")
        out[k] = _CONVERT[k](v)
    return out


def resolve_settings(args: argparse.Namespace, **overrides) -> dict:
    """Flags > config file > defaults (``overrides`` replace the defaults)."""
    conf = read_config(args.config) if getattr(args, "config", None) else {}
    out = {}
    for k, default in {**DEFAULTS, **overrides}.items():
        flag = getattr(args, k, None)
        out[k] = flag if flag is not None else conf.get(k, default)
    return out


def afe_config(settings: dict) -> AfeConfig:
    return AfeConfig(c=settings["c"], h=settings["h"], T=settings["T"],
                     width=settings["width"], tol=settings["afe_tol"])


def _load_f(fixture: Optional[str], D: Optional[int], settings: dict, fetch: bool = False) -> NewformSeries:
    if fixture is None:
        if D not in DEFAULT_FIXTURE:
            raise ValueError(f"no bundled fixture for D={D}; pass --fixture")
        fixture = DEFAULT_FIXTURE[D]
    return ingest_newform(fixture, cache_dir=settings["cache_dir"], fetch=fetch)


def _check_f(f: NewformSeries, D: Optional[int], kappa: Optional[int]) -> None:
    if D is not None and f.D != D:
        raise ValueError(f"fixture {f.label} has D={f.D}, not {D}")
    if kappa is not None and f.kappa != kappa:
        raise ValueError(f"fixture {f.label} has kappa={f.kappa}, not {kappa}")


def _rep_json(rep: IdealClassRep) -> dict:
    a, b, c = rep.form
    return {"form": [a, b, c], "norm": rep.norm_C}


# ---------------------------------------------------------------------------
# reports


@dataclass
class VerificationReport:
    inputs: dict
    lhs: complex
    normalized_lhs: complex
    per_class: list  # [{"form", "norm", "c0"}]
    rhs_average: complex
    abs_discrepancy: float
    rel_discrepancy: float
    settings: dict = field(default_factory=dict)
    components: dict = field(default_factory=dict)

    @staticmethod
    def discrepancies(normalized_lhs: complex, rhs_average: complex) -> tuple[float, float]:
        gap = abs(normalized_lhs - rhs_average)
        return gap, gap / abs(rhs_average)

    def recomputed(self) -> tuple[float, float]:
        return self.discrepancies(self.normalized_lhs, self.rhs_average)

    def within(self, tol: float) -> bool:
        return self.rel_discrepancy <= tol

    def to_dict(self) -> dict:
        return asdict(self)


def _lhs(f: NewformSeries, g, settings: dict):
    n = settings["nmax"] or f.n_max
    series = rankin_coefficients(f, g, min(n, f.n_max))
    return central_value(series, f, afe_config(settings))


def verify(D: int, kappa: int, fixture: Optional[str] = None, settings: Optional[dict] = None,
           conjugate: bool = False) -> VerificationReport:
    """Both sides of the central value / period identity for one newform."""
    settings = {**DEFAULTS, **(settings or {})}
    f = _load_f(fixture, D, settings)
    _check_f(f, D, kappa)
    if conjugate:
        f = f.conjugate()
    g = level1_eigenform(2 * kappa + 2, f.n_max)
    cg = class_group(D)
    pet = petersson_norm(g)
    rep = _lhs(f, g, settings)
    L1 = dirichlet_L1(D)
    aD = f.a(D)
    pref = L1 * (4 * math.pi) ** (2 * kappa + 1) / math.factorial(2 * kappa)
    normalized = rep.value * aD / (pref * pet.value)
    per_class = []
    for r in cg.reps:
        c0 = complex(pullback_c0(LiftTable(f, r), g).c0)
        per_class.append({**_rep_json(r), "c0": c0})
    avg = sum(p["c0"] for p in per_class) / cg.h_K
    gap, rel = VerificationReport.discrepancies(normalized, avg)
    return VerificationReport(
        inputs={"D": D, "kappa": kappa, "f": f.label, "f_sha256": f.digest,
                "embedding": f.embedding, "g_weight": g.weight, "h_K": cg.h_K},
        lhs=rep.value, normalized_lhs=normalized, per_class=per_class, rhs_average=avg,
        abs_discrepancy=gap, rel_discrepancy=rel,
        settings={"tol": settings["tol"], "afe": asdict(rep.config), "afe_terms": rep.n_terms},
        components={"L1_chi": L1, "petersson": pet.value, "petersson_error": pet.error,
                    "a_f_D": aD, "root_number": rep.root_number, "lhs_error": rep.error,
                    "afe_residual": rep.residual},
    )


def corollary(D: int, kappa: int, C: int, fixture: Optional[str] = None,
              settings: Optional[dict] = None) -> dict:
    """``sum_Q chi_Q(-C) a_{f_Q}(D) L(1/2, f_Q x g)`` against the class-square average."""
    settings = {**DEFAULTS, **(settings or {})}
    if math.gcd(C, 2 * D) != 1 or not is_squarefree(C):
        raise ValueError(f"class norm {C} must be squarefree and prime to {2 * D}")
    f = _load_f(fixture, D, settings)
    _check_f(f, D, kappa)
    g = level1_eigenform(2 * kappa + 2, f.n_max)
    cg = class_group(D)
    crep = cg.rep_with_norm(C)
    ci = cg.index_of(crep.reduced)
    pet = petersson_norm(g)
    terms = []
    lhs = 0j
    for Q in genus_subsets(D):
        s = chi_Q(D, Q, -C)
        fQ = twist_fQ(f, Q)
        LQ = _lhs(fQ, g, settings)
        term = s * fQ.a(D) * LQ.value
        lhs += term
        terms.append({"Q": sorted(Q), "chi_Q": s, "a_fQ_D": fQ.a(D), "L_half": LQ.value,
                      "term": term})
    classes = [cg.multiply(i, ci) for i in cg.squares]
    c0s = [complex(pullback_c0(LiftTable(f, cg.reps[j]), g).c0) for j in classes]
    pref = 2 * dirichlet_L1(D) * (4 * math.pi) ** (2 * kappa + 1) / math.factorial(2 * kappa)
    rhs = pref * sum(c0s) / len(c0s) * pet.value
    gap = abs(lhs - rhs)
    return {
        "inputs": {"D": D, "kappa": kappa, "f": f.label, "f_sha256": f.digest,
                   "class_norm": C, "class_rep": _rep_json(crep)},
        "q_sum": lhs, "terms": terms,
        "square_classes": [{**_rep_json(cg.reps[j]), "c0": c} for j, c in zip(classes, c0s)],
        "rhs": rhs, "abs_discrepancy": gap, "rel_discrepancy": gap / abs(rhs),
        "settings": {"tol": settings["tol"]},
    }


# ---------------------------------------------------------------------------
# subcommands


def _emit(doc, args) -> None:
    text = to_json(doc)
    if getattr(args, "json", None):
        Path(args.json).write_text(text + "\n")
    print(text)


def cmd_verify(args) -> int:
    settings = resolve_settings(args)
    t0 = time.perf_counter()
    rep = verify(args.D, args.kappa, args.fixture, settings, conjugate=args.conjugate)
    _emit(rep.to_dict(), args)
    _table([("L(1/2, f x g)", rep.lhs), ("normalised L-value", rep.normalized_lhs)]
           + [(f"c0 {p['form']}", p["c0"]) for p in rep.per_class]
           + [("class average", rep.rhs_average), ("relative gap", f"{rep.rel_discrepancy:.3e}"),
              ("seconds", f"{time.perf_counter() - t0:.2f}")])
    return EXIT_OK if rep.within(settings["tol"]) else EXIT_TOLERANCE


def cmd_corollary(args) -> int:
    settings = resolve_settings(args)
    doc = corollary(args.D, args.kappa, args.class_norm, args.fixture, settings)
    _emit(doc, args)
    _table([("Q-sum", doc["q_sum"]), ("class-square side", doc["rhs"]),
            ("relative gap", f"{doc['rel_discrepancy']:.3e}")])
    return EXIT_OK if doc["rel_discrepancy"] <= settings["tol"] else EXIT_TOLERANCE


def cmd_pullback(args) -> int:
    settings = resolve_settings(args)
    f = _load_f(args.fixture, args.D, settings)
    _check_f(f, args.D, args.kappa)
    cg = class_group(args.D)
    if not 0 <= args.class_index < cg.h_K:
        raise ValueError(f"class index must be in [0, {cg.h_K})")
    rep = cg.reps[args.class_index]
    res = pullback_c0(LiftTable(f, rep, exact=args.exact))
    doc = {"D": args.D, "kappa": args.kappa, "f": f.label, "class": _rep_json(rep),
           "c0": res.c0 if args.exact else complex(res.c0), "points": res.term_count,
           "terms": [{"N_H": n, "count": c} for n, c in res.terms]}
    _emit(doc, args)
    _table([("class", rep.form), ("points", res.term_count), ("c0", complex(res.c0))])
    return EXIT_OK


def cmd_lvalue(args) -> int:
    settings = resolve_settings(args)
    f = _load_f(args.fixture, None, settings)
    g = level1_eigenform(f.weight + 1, f.n_max)
    rep = _lhs(f, g, settings)
    doc = {"f": f.label, "f_sha256": f.digest, "L_half": rep.value, "error": rep.error,
           "terms": rep.n_terms, "root_number": rep.root_number, "primal_sum": rep.primal_sum,
           "dual_sum": rep.dual_sum, "residual": rep.residual, "afe": asdict(rep.config)}
    _emit(doc, args)
    _table([("L(1/2, f x g)", rep.value), ("error", f"{rep.error:.2e}"), ("terms", rep.n_terms)])
    return EXIT_OK


def cmd_classgroup(args) -> int:
    cg: ClassGroup = class_group(args.D)
    doc = {"D": cg.D.D, "h_K": cg.h_K, "w_K": cg.w_K, "reps": [_rep_json(r) for r in cg.reps],
           "squares": list(cg.squares), "genus_index": cg.genus_index}
    _emit(doc, args)
    _table([("h_K", cg.h_K)] + [(f"class {i}", r.form) for i, r in enumerate(cg.reps)])
    return EXIT_OK


def cmd_petersson(args) -> int:
    settings = resolve_settings(args, tol=1e-13)
    g = level1_eigenform(args.weight, settings["nmax"] or 60)
    pn = petersson_norm(g, tol=settings["tol"])
    doc = {"weight": args.weight, "value": pn.value, "error": pn.error,
           "upper": pn.upper, "strip": pn.strip, "nodes": pn.nodes}
    _emit(doc, args)
    _table([("<g, g>", f"{pn.value:.17g}"), ("error", f"{pn.error:.2e}")])
    return EXIT_OK


def cmd_ingest(args) -> int:
    settings = resolve_settings(args)
    cache = settings["cache_dir"] or str(default_cache_dir())
    if args.fetch:
        fetch_newform(args.label, cache)
    elif args.label not in BUNDLED and not (Path(cache) / f"{args.label}.json").exists():
        raise FileNotFoundError(f"{args.label!r} is not cached; rerun with --fetch")
    f = ingest_newform(args.label, cache_dir=cache)
    doc = {"label": f.label, "D": f.D, "kappa": f.kappa, "n_max": f.n_max,
           "sha256": f.digest, "embedding": f.embedding, "exact": f.is_exact}
    _emit(doc, args)
    _table([("label", f.label), ("coefficients", f.n_max), ("sha256", f.digest[:16])])
    return EXIT_OK


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=None, help="tolerance for the comparison")
    p.add_argument("--nmax", type=int, default=None, help="cap on coefficients used")
    p.add_argument("--cache-dir", dest="cache_dir", default=None)
    p.add_argument("--config", default=None, help="key=value settings file")
    p.add_argument("--json", default=None, help="also write the report to this path")


def _afe(p: argparse.ArgumentParser) -> None:
    p.add_argument("--c", type=float, default=None, help="AFE contour abscissa")
    p.add_argument("--h", type=float, default=None, help="AFE trapezoid step")
    p.add_argument("--T", type=float, default=None, help="AFE half-length of the line")
    p.add_argument("--width", type=float, default=None, help="Gaussian regulator width")
    p.add_argument("--afe-tol", dest="afe_tol", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hermlift", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check L(1/2, f x g) against the pullback periods")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--fixture", default=None)
    p.add_argument("--conjugate", action="store_true", help="use the conjugate embedding")
    _common(p)
    _afe(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corollary", help="genus-twisted sum of central values")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--class-norm", dest="class_norm", type=int, default=1)
    p.add_argument("--fixture", default=None)
    _common(p)
    _afe(p)
    p.set_defaults(func=cmd_corollary)

    p = sub.add_parser("pullback", help="diagonal coefficient c0 for one class")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--class-index", dest="class_index", type=int, default=0)
    p.add_argument("--fixture", default=None)
    p.add_argument("--exact", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_pullback)

    p = sub.add_parser("lvalue", help="central value L(1/2, f x g)")
    p.add_argument("--fixture", required=True)
    _common(p)
    _afe(p)
    p.set_defaults(func=cmd_lvalue)

    p = sub.add_parser("classgroup", help="class group representatives")
    p.add_argument("D", type=int)
    p.add_argument("--json", default=None)
    p.set_defaults(func=cmd_classgroup)

    p = sub.add_parser("petersson", help="Petersson norm of the level one eigenform")
    p.add_argument("--weight", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_petersson)

    p = sub.add_parser("ingest", help="load or fetch a newform fixture")
    p.add_argument("--label", required=True)
    p.add_argument("--fetch", action="store_true", help="allow network access")
    _common(p)
    p.set_defaults(func=cmd_ingest)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - reported as an operational error
        print(f"hermlift: error: {exc}", file=sys.stderr)
        if args.verbose:
            raise
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
