"""Command-line driver: ``padicdist <command> [flags]``.

Exit codes: 0 when every check passes, 1 when a verification fails,
2 for usage or configuration errors.  A ``--config`` file holds
``key = value`` lines using the long flag names; explicit flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import interp
from .characters import DirichletCharacter, gauss_sum, gauss_sum_guard
from .coherent_seq import NormCoherentSequence, lambda_chi, lambda_from_sequence, verify_norm_coherence
from .cyclo_field import CycloElement, field
from .group_ring import GroupRingElement
from .padic_core import DEFAULT_PREC, PadicScalar, PrecisionError, residual_of
from .volkenborn import (
    MahlerFunction,
    TabulatedDistribution,
    check_distribution_relation,
    defect_by_level,
    dirac,
    fourier_bound,
    fourier_coefficient,
    from_group_ring,
    haar,
    mahler_coeffs,
    transform_identity_check,
    volkenborn_defect,
    volkenborn_integral,
)

SCHEMA_VERSION = 1

COMMANDS = ("check-dist", "defect", "integrate", "mahler", "fourier", "transform-verify",
            "coherence", "gauss", "lp1", "interp-verify", "unit-ratio", "annihilator",
            "regulator")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    p: int = 5
    n: int = 1
    depth: int = 2
    prec: int = DEFAULT_PREC
    chi: int = 2
    psi: int = 0
    t: int = 0
    c: int | None = None
    dist: str = "haar"
    measure: str = "dirac:0"
    seq: str = "one-minus-zeta"
    f: str = "x"
    m: int = 8
    expect: str | None = None
    format: str = "json"
    out: str | None = None

    def validate(self):
        if self.p < 3 or self.p > 13 or self.p % 2 == 0 or any(self.p % d == 0 for d in (3, 5, 7, 11) if d < self.p):
            raise UsageError(f"p must be an odd prime with 3 <= p <= 13, got {self.p}")
        for name in ("n", "depth"):
            v = getattr(self, name)
            if not 0 <= v <= 3:
                raise UsageError(f"{name} must satisfy 0 <= {name} <= 3, got {v}")
        if self.prec < 16:
            raise UsageError(f"precision must be >= 16, got {self.prec}")
        if self.m < 0 or self.m > 200:
            raise UsageError("m must lie in 0..200")
        if self.format not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {self.format!r}")
        return self


# -- parsing ---------------------------------------------------------------------


def _parser():
    ap = argparse.ArgumentParser(prog="padicdist", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config")
    ap.add_argument("--p", type=int)
    ap.add_argument("--n", type=int)
    ap.add_argument("--depth", type=int)
    ap.add_argument("--prec", type=int)
    ap.add_argument("--chi", type=int, help="tame exponent j of omega^j")
    ap.add_argument("--psi", type=int, help="wild exponent u, psi(1+p) = zeta_{p^n}^u")
    ap.add_argument("--t", type=int, help="tame index of the cyclotomic-unit sequence")
    ap.add_argument("--c", type=int, help="tame index of the Upsilon sequence")
    ap.add_argument("--dist", help="haar | dirac:C | lambda:SEQ | lambda-chi:SEQ | group-ring:C0,C1,.. | json:PATH")
    ap.add_argument("--measure", help="second distribution for transform-verify")
    ap.add_argument("--seq", help="one-minus-zeta | cyclo-unit:c=K")
    ap.add_argument("--f", help="polynomial in x, binomial(x, m), or root:K/J for x -> zeta_{p^J}^(K x)")
    ap.add_argument("--m", type=int, help="number of coefficients")
    ap.add_argument("--expect", help="rational the integral should approach")
    ap.add_argument("--format", choices=("json", "csv", "text"))
    ap.add_argument("--out")
    return ap


def _read_config(path):
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            if key in ("config", "command"):
                raise UsageError(f"{path}:{lineno}: {key} cannot be set in a config file")
            out.append((key, value))
    return out


def parse_config(argv):
    ap = _parser()
    ns = ap.parse_args(argv)
    values = {}
    if ns.config:
        allowed = {f for f in RunConfig.__dataclass_fields__} - {"command"}
        conv = {a.dest: a.type for a in ap._actions if a.dest in allowed}
        for key, raw in _read_config(ns.config):
            key = key.replace("-", "_")
            if key not in allowed:
                raise UsageError(f"unknown config key {key!r}")
            try:
                values[key] = conv[key](raw) if conv.get(key) else raw
            except ValueError as exc:
                raise UsageError(f"bad value for {key}: {raw!r}") from exc
    for key, v in vars(ns).items():
        if key not in ("config", "command") and v is not None:
            values[key] = v
    return RunConfig(ns.command, **values).validate()


# -- builders ----------------------------------------------------------------------


def parse_function(text, p, prec):
    m = re.fullmatch(r"\s*root:(-?\d+)/(\d+)\s*", text)
    if m:
        k, j = int(m.group(1)), int(m.group(2))
        return MahlerFunction.power(field(p, max(j - 1, 0), prec).zeta(k, p**j))
    import sympy

    x = sympy.Symbol("x")
    try:
        expr = sympy.sympify(text.replace("^", "**"), locals={"x": x, "binomial": sympy.binomial})
        poly = sympy.Poly(sympy.expand_func(expr), x)
    except (sympy.SympifyError, sympy.PolynomialError, TypeError) as exc:
        raise UsageError(f"cannot read function {text!r}") from exc
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    return MahlerFunction.polynomial(coeffs)


def build_distribution(spec, cfg):
    p, N, W = cfg.p, cfg.depth, cfg.prec
    if spec == "haar":
        return haar(p, N, W)
    kind, _, arg = spec.partition(":")
    if kind == "dirac":
        return dirac(int(arg), p, N, W)
    if kind == "lambda":
        return lambda_from_sequence(NormCoherentSequence.from_spec(arg, p, W), N)
    if kind == "lambda-chi":
        return lambda_chi(NormCoherentSequence.from_spec(arg, p, W), DirichletCharacter(p, 0, cfg.chi), N)
    if kind == "group-ring":
        coeffs = [Fraction(s) for s in arg.split(",")]
        level = round(math.log(len(coeffs), p))
        if p**level != len(coeffs):
            raise UsageError("group-ring coefficient count must be a power of p")
        return from_group_ring(GroupRingElement(p, level, coeffs), N)
    if kind == "json":
        with open(arg, encoding="utf-8") as fh:
            return TabulatedDistribution.from_json(json.load(fh))
    raise UsageError(f"unknown distribution {spec!r}")


def _val(x):
    if isinstance(x, (PadicScalar, CycloElement)):
        return {"repr": repr(x), "json": x.to_json()}
    if isinstance(x, Fraction):
        return str(x)
    return x


def _digits(r):
    return None if r.digits == math.inf else r.digits


# -- commands -----------------------------------------------------------------------


def cmd_check_dist(cfg):
    r = check_distribution_relation(build_distribution(cfg.dist, cfg))
    return {"residual": r.to_json()}, r.vanishes()


def cmd_defect(cfg):
    mu = build_distribution(cfg.dist, cfg)
    return {"defect": volkenborn_defect(mu), "by_level": defect_by_level(mu)}, True


def cmd_integrate(cfg):
    mu = build_distribution(cfg.dist, cfg)
    f = parse_function(cfg.f, cfg.p, cfg.prec)
    rep = volkenborn_integral(f, mu)
    defect = None if rep.cauchy_defect == math.inf else rep.cauchy_defect
    out = {"value": _val(rep.value), "cauchy_defect": defect, "levels_used": rep.levels_used}
    ok = True
    if cfg.expect is not None:
        r = residual_of([rep.value - Fraction(cfg.expect)], cfg.p)
        need = max(cfg.depth - 1, 0)
        ok = r.agrees(need, cfg.p)
        out["expect"] = {"value": cfg.expect, "residual": r.to_json(), "digits_required": need}
    return out, ok


def cmd_mahler(cfg):
    f = parse_function(cfg.f, cfg.p, cfg.prec)
    return {"coefficients": [_val(a) for a in mahler_coeffs(f, cfg.m)]}, True


def cmd_fourier(cfg):
    mu = build_distribution(cfg.dist, cfg)
    c = fourier_bound(mu)
    rows = []
    ok = True
    for m in range(cfg.m + 1):
        fc = fourier_coefficient(mu, m, c)
        ok &= fc.within_bound
        rows.append({"m": m, "value": _val(fc.value),
                     "cauchy_defect": None if fc.cauchy_defect == math.inf else fc.cauchy_defect,
                     "bound": fc.bound, "within_bound": fc.within_bound})
    return {"c": c, "coefficients": rows}, ok


def cmd_transform(cfg):
    nu = build_distribution(cfg.dist, cfg)
    mu = build_distribution(cfg.measure, cfg)
    rep = transform_identity_check(nu, mu, cfg.depth, cfg.m)
    return rep.to_json(), rep.passed()


def cmd_coherence(cfg):
    r = verify_norm_coherence(NormCoherentSequence.from_spec(cfg.seq, cfg.p, cfg.prec), max(cfg.depth, 1))
    return {"residual": r.to_json()}, r.vanishes()


def _character(cfg):
    return DirichletCharacter(cfg.p, cfg.n, cfg.chi, cfg.psi)


def cmd_gauss(cfg):
    phi = _character(cfg)
    ctx = field(cfg.p, cfg.n, cfg.prec)
    tau = gauss_sum(phi, ctx)
    guard = residual_of([gauss_sum_guard(phi, ctx)], cfg.p)
    return {"character": str(phi), "conductor": phi.conductor(), "tau": _val(tau),
            "pi_valuation": tau.pi_valuation(), "guard": guard.to_json()}, guard.vanishes()


def cmd_lp1(cfg):
    phi = _character(cfg)
    ctx = field(cfg.p, cfg.n, cfg.prec)
    out = {"character": str(phi)}
    if not phi.is_even():
        r = residual_of([interp.log_sum(phi, 0, ctx)], cfg.p)
        out.update(odd=True, log_sum=r.to_json())
        return out, r.vanishes()
    out["odd"] = False
    out["value"] = _val(interp.leopoldt_lp1(phi, ctx))
    ok = True
    quad = phi.u == 0 and phi.j == (cfg.p - 1) // 2
    if quad and cfg.p in interp._QUADRATIC_UNITS:
        o = interp.class_number_oracle(cfg.p, cfg.prec)
        signs = o.matching_signs(10)
        out["class_number_oracle"] = {"plus": o.plus.to_json(), "minus": o.minus.to_json(),
                                      "matching_signs": signs}
        ok = len(signs) == 1
    return out, ok


def cmd_interp(cfg):
    rep = interp.verify_interpolation(cfg.p, cfg.n, cfg.chi, cfg.psi, cfg.t, cfg.prec)
    out = {"character": rep.phi, "odd": rep.odd, "residual": rep.residual.to_json(),
           "corollary": None if rep.corollary is None else rep.corollary.to_json(),
           "digits": rep.digits}
    row = [cfg.p, cfg.n, cfg.chi, cfg.psi, cfg.t, _digits(rep.residual)]
    return out, rep.passed(min(10, cfg.prec - 6)), (
        ["p", "n", "chi_exp", "psi_exp", "c", "residual_valuation"], [row])


def cmd_unit_ratio(cfg):
    rows = interp.unit_ratio_table(cfg.p, cfg.n, cfg.chi, cfg.prec)
    c = interp.select_tame_index(rows)
    out = {"rows": [dict(zip(interp.SCHEMA_COLUMNS, r.as_row())) for r in rows], "selected_c": c}
    return out, c is not None, (list(interp.SCHEMA_COLUMNS), [r.as_row() for r in rows])


def _selected_c(cfg):
    if cfg.c is not None:
        return cfg.c
    if cfg.n == 0:
        return 1
    c = interp.select_tame_index(interp.unit_ratio_table(cfg.p, cfg.n, cfg.chi, cfg.prec))
    if c is None:
        raise ArithmeticError("no tame index with unit ratios")
    return c


def cmd_annihilator(cfg):
    rep = interp.annihilator_M(cfg.p, cfg.chi, _selected_c(cfg), cfg.n, cfg.prec)
    ok = rep.integral and rep.digits >= 8
    return rep.to_json(), ok


def cmd_regulator(cfg):
    rep = interp.regulator_product_check(cfg.p, cfg.chi, _selected_c(cfg), cfg.n, cfg.prec)
    return rep.to_json(), rep.ratio_valuation == 0 and rep.det_residual.vanishes()


HANDLERS = {
    "check-dist": cmd_check_dist, "defect": cmd_defect, "integrate": cmd_integrate,
    "mahler": cmd_mahler, "fourier": cmd_fourier, "transform-verify": cmd_transform,
    "coherence": cmd_coherence, "gauss": cmd_gauss, "lp1": cmd_lp1,
    "interp-verify": cmd_interp, "unit-ratio": cmd_unit_ratio,
    "annihilator": cmd_annihilator, "regulator": cmd_regulator,
}


# -- output ---------------------------------------------------------------------------


def _scalar_text(d):
    if d["valuation"] is None:
        return "0" if d["precision"] is None else f"O({d['prime']}^{d['precision']})"
    unit = sum(x * d["prime"] ** i for i, x in enumerate(d["digits"]))
    return f"{unit}*{d['prime']}^{d['valuation']} + O({d['prime']}^{d['precision']})"


def _compact(v):
    if isinstance(v, dict) and "repr" in v:
        return v["repr"]
    if isinstance(v, dict) and set(v) == {"prime", "valuation", "digits", "precision"}:
        return _scalar_text(v)
    if isinstance(v, dict) and set(v) == {"p", "level", "coeffs"}:
        return "pi-coords[" + ", ".join(_scalar_text(c) for c in v["coeffs"]) + "]"
    return None


def _flatten(d, prefix=""):
    for k in sorted(d):
        v = d[k]
        key = f"{prefix}{k}"
        if _compact(v) is not None:
            yield key, _compact(v)
        elif isinstance(v, dict):
            yield from _flatten(v, key + ".")
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            for i, item in enumerate(v):
                if _compact(item) is not None:
                    yield f"{key}[{i}]", _compact(item)
                else:
                    yield from _flatten(item, f"{key}[{i}].")
        else:
            yield key, json.dumps(v) if isinstance(v, list) else v


def render(cfg, result, passed, table=None):
    if cfg.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": cfg.command, "config": asdict(cfg),
               "passed": passed, "result": result}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    if cfg.format == "csv":
        w = csv.writer(buf, lineterminator="\n")
        if table is not None:
            w.writerow(table[0])
            w.writerows(table[1])
        else:
            w.writerow(["key", "value"])
            w.writerows(_flatten(result))
        return buf.getvalue()
    buf.write(f"{cfg.command}: {'PASS' if passed else 'FAIL'}\n")
    for k, v in _flatten(result):
        buf.write(f"  {k.rstrip('.')} = {v}\n")
    return buf.getvalue()


def run(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    except (UsageError, OSError) as exc:
        print(f"padicdist: {exc}", file=sys.stderr)
        return 2
    try:
        got = HANDLERS[cfg.command](cfg)
    except (UsageError, ValueError) as exc:
        print(f"padicdist: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, PrecisionError) as exc:
        print(f"padicdist: verification aborted: {exc}", file=sys.stderr)
        return 1
    result, passed = got[0], got[1]
    table = got[2] if len(got) > 2 else None
    text = render(cfg, result, passed, table)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not passed:
        print(f"padicdist: {cfg.command} failed", file=sys.stderr)
    return 0 if passed else 1


def main():
    sys.exit(run())
