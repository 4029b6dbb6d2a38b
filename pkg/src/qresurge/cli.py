"""Command-line front end: ``qresurge gen|scan|fit|candidates|gevrey|check``.

Coefficient files are JSON::

    {"meta": {"object": ..., "model": ..., "bits": ..., "nmax": ..., "config": {...}},
     "coeffs": ["num/den", ["re", "im"], ...]}

Exact rationals are stored as "num/den" strings and complex numbers as pairs
of decimal strings carrying the full working precision.  Every output embeds
the run configuration; passing such a file back through ``--config`` replays
the run.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from .precision import PrecisionContext, default_bits

log = logging.getLogger("qresurge")

OBJECTS = "3_1, 4_1, s3, verlinde:<g>, sp:<eps,c,r^p,...>, multisum:<file>, frandom, twist:<file>"


class CliError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    bits: int
    out: str | None = None
    nmax: int | None = None
    inputs: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def validate(self):
        if self.bits < 53:
            raise CliError(f"--bits must be at least 53, got {self.bits}")
        if self.nmax is not None and self.nmax < 1:
            raise CliError(f"--nmax must be positive, got {self.nmax}")
        for path in self.inputs:
            if not Path(path).exists():
                raise CliError(f"input file not found: {path}")
        return self

    def to_dict(self) -> dict:
        return asdict(self)


# serialization ---------------------------------------------------------------

def encode_scalar(x, digits: int):
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"
    return [_nstr(x.real, digits), _nstr(getattr(x, "imag", 0), digits)]


def _nstr(v, digits):
    from mpmath import nstr

    return nstr(v, digits, strip_zeros=False, min_fixed=-1, max_fixed=-1) if v else "0.0"


def decode_scalar(v, ctx: PrecisionContext, where: str):
    mp = ctx.mp
    if isinstance(v, str):
        try:
            num, den = v.split("/")
            return Fraction(int(num), int(den))
        except ValueError:
            raise CliError(f"{where}: expected 'num/den', got {v!r}") from None
    if isinstance(v, list) and len(v) == 2 and all(isinstance(p, str) for p in v):
        try:
            return mp.mpc(mp.mpf(v[0]), mp.mpf(v[1]))
        except ValueError:
            raise CliError(f"{where}: bad decimal pair {v!r}") from None
    raise CliError(f"{where}: a coefficient must be 'num/den' or ['re', 'im'], got {v!r}")


def digits_for(bits: int) -> int:
    return int(bits * 0.30103) + 2


def write_atomic(path: str | Path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(path, payload: dict):
    write_atomic(path, json.dumps(payload, indent=1, sort_keys=True) + "\n")


def save_sequence(path, coeffs, meta: dict, bits: int):
    digits = digits_for(bits)
    dump_json(path, {"meta": meta, "coeffs": [encode_scalar(c, digits) for c in coeffs]})


def load_sequence(path, ctx: PrecisionContext | None = None):
    from .resurge import CoeffSequence

    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise CliError(f"input file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}:{exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(data, dict) or "coeffs" not in data or "meta" not in data:
        raise CliError(f"{path}: expected an object with 'meta' and 'coeffs'")
    meta = data["meta"]
    if not isinstance(meta, dict):
        raise CliError(f"{path}: 'meta' must be an object")
    if ctx is None:
        ctx = PrecisionContext(int(meta.get("bits", default_bits())))
    coeffs = [decode_scalar(v, ctx, f"{path}: coeffs[{i}]") for i, v in enumerate(data["coeffs"])]
    return CoeffSequence(coeffs, meta)


# generation --------------------------------------------------------------------

def _habiro_object(name: str):
    from .knotgen import (SumProductSpec, frandom_element, habiro_from_spec, kashaev_31, kashaev_41,
                          load_twist_data, twist_knot_element)

    if name == "3_1":
        return kashaev_31()
    if name == "4_1":
        return kashaev_41()
    if name == "frandom":
        return frandom_element()
    if name.startswith("sp:"):
        return habiro_from_spec(SumProductSpec.parse(name[3:]))
    if name.startswith("twist:"):
        return twist_knot_element(load_twist_data(name[6:]))
    return None


def generate(obj: str, model: str, nmax: int, ctx: PrecisionContext) -> list:
    from .knotgen import BalancedTerm, lp_series, multisum, verlinde_sum, wrt_s3
    from .qcore import habiro_np_coeffs

    if model not in ("np", "p"):
        raise CliError(f"model must be 'np' or 'p', got {model!r}")
    try:
        f = _habiro_object(obj)
    except (ValueError, OSError) as exc:
        raise CliError(f"object {obj!r}: {exc}") from None
    if f is not None:
        if model == "p":
            return list(lp_series(f, nmax + 1).coeffs)
        try:
            return habiro_np_coeffs(f, nmax, ctx)
        except IndexError as exc:
            raise CliError(f"object {obj!r}: {exc}") from None
    if model == "p":
        raise CliError(f"object {obj!r} has no 'p' model; use np")
    if obj == "s3":
        return [ctx.mp.mpf(1)] + [wrt_s3(n, ctx) for n in range(1, nmax + 1)]
    if obj.startswith("verlinde:"):
        try:
            g = int(obj.split(":", 1)[1])
        except ValueError:
            raise CliError(f"malformed genus in {obj!r}") from None
        return [verlinde_sum(g, n) for n in range(nmax + 1)]
    if obj.startswith("multisum:"):
        try:
            t = BalancedTerm.load(obj.split(":", 1)[1])
        except (ValueError, OSError, KeyError) as exc:
            raise CliError(f"object {obj!r}: {exc}") from None
        return [multisum(t, n) for n in range(nmax + 1)]
    raise CliError(f"unknown object {obj!r}; expected one of {OBJECTS}")


# commands --------------------------------------------------------------------

def _ctx(cfg: RunConfig) -> PrecisionContext:
    return PrecisionContext(cfg.bits)


def _out(cfg: RunConfig, default: str) -> str:
    return cfg.out or default


def _window(text):
    if text in (None, ""):
        return None
    try:
        a, b = str(text).split(":")
        return (int(a), int(b))
    except ValueError:
        raise CliError(f"window must look like 'n0:n1', got {text!r}") from None


def _floats(text) -> list:
    if text in (None, ""):
        return []
    try:
        return [float(Fraction(x)) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise CliError(f"expected a comma-separated list of numbers, got {text!r}") from None


def cmd_gen(cfg: RunConfig) -> int:
    ctx = _ctx(cfg)
    obj, model = cfg.params["object"], cfg.params["model"]
    coeffs = generate(obj, model, cfg.nmax, ctx)
    meta = {"object": obj, "model": model, "bits": cfg.bits, "nmax": cfg.nmax, "config": cfg.to_dict()}
    out = _out(cfg, f"{obj.replace(':', '_').replace('/', '_')}_{model}.json")
    save_sequence(out, coeffs, meta, cfg.bits)
    print(f"wrote {len(coeffs)} coefficients to {out}")
    return 0


def cmd_scan(cfg: RunConfig) -> int:
    from .resurge import angular_scan, scan_values
    from .resurge.scan import DivergentScanError

    ctx = _ctx(cfg)
    s = load_sequence(cfg.inputs[0], ctx)
    p = cfg.params
    try:
        peaks = angular_scan(s, p["r"], p["grid"], ctx, k=p["k"], deriv=p["deriv"])
        if p["deriv"]:
            mp = ctx.mp
            from .resurge import CoeffSequence

            weighted = CoeffSequence([v * mp.mpf(n) ** p["deriv"] for n, v in enumerate(s.numeric(ctx))])
            mod = scan_values(weighted, p["r"], p["grid"], ctx)
        else:
            mod = scan_values(s, p["r"], p["grid"], ctx)
    except DivergentScanError as exc:
        raise CliError(str(exc)) from None
    out = _out(cfg, Path(cfg.inputs[0]).stem + "_scan.json")
    report = {"meta": {"source": s.meta.get("object"), "config": cfg.to_dict()},
              "peaks": [{"t0": pk.t0, "strength": pk.strength, "merged": pk.merged} for pk in peaks]}
    dump_json(out, report)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "modulus"])
    for j, m in enumerate(mod):
        w.writerow([f"{j / len(mod):.10f}", f"{m:.12e}"])
    csv_path = str(Path(out).with_suffix(".csv"))
    write_atomic(csv_path, buf.getvalue())
    for pk in peaks:
        print(f"peak t0={pk.t0:.6f} strength={pk.strength:.6g}{' merged' if pk.merged else ''}")
    print(f"wrote {out} and {csv_path}")
    return 0


def cmd_fit(cfg: RunConfig) -> int:
    from .resurge import FitConfig, asym_fit, radius_estimate

    ctx = _ctx(cfg)
    s = load_sequence(cfg.inputs[0], ctx)
    p = cfg.params
    fc = FitConfig(d=p["order"], window=_window(p["window"]), validation=_window(p["validation"]))
    t0s = _floats(p["t0"]) or [0.0]
    report = {"meta": {"source": s.meta.get("object"), "config": cfg.to_dict()}, "fits": []}
    try:
        rad = radius_estimate(s, fc, ctx)
        report["radius"] = rad.radius
        report["radius_flags"] = rad.flags
        print(f"radius {rad.radius:.12g} {' '.join(rad.flags)}".rstrip())
    except ValueError as exc:
        report["radius"] = None
        report["radius_flags"] = [str(exc)]
    report["peaks"] = [{"t0": t} for t in t0s]
    for t in t0s:
        others = [u for u in t0s if u != t]
        f = asym_fit(s, t, fc, ctx, other_peaks=others, method=p["method"])
        report["fits"].append({"t0": t, "lambda": [repr(f.lam.real), repr(f.lam.imag)],
                               "abs_lambda": f.abs_lambda, "direction": f.direction, "alpha": f.alpha,
                               "c0": [repr(f.c0.real), repr(f.c0.imag)], "d": f.d, "method": f.method,
                               "residual": f.residual, "flags": f.flags})
        print(f"t0={t:.6f} |lambda|={f.abs_lambda:.12g} alpha={f.alpha:.10g} "
              f"c0={f.c0:.6g} d={f.d} ({f.method}) residual={f.residual:.3g}")
    out = _out(cfg, Path(cfg.inputs[0]).stem + "_fit.json")
    dump_json(out, report)
    print(f"wrote {out}")
    return 0


def cmd_candidates(cfg: RunConfig) -> int:
    from .knotgen import FIGURE_EIGHT_SPEC, TREFOIL_SPEC, SumProductSpec, singular_candidates

    ctx = _ctx(cfg)
    obj = cfg.params["object"]
    specs = {"3_1": TREFOIL_SPEC, "4_1": FIGURE_EIGHT_SPEC}
    try:
        spec = specs[obj] if obj in specs else SumProductSpec.parse(obj[3:] if obj.startswith("sp:") else obj)
    except ValueError as exc:
        raise CliError(f"object {obj!r}: {exc}") from None
    cs = singular_candidates(spec, branches=cfg.params["branches"], ctx=ctx)
    digits = digits_for(cfg.bits)

    def enc(xs):
        return [encode_scalar(x, digits) for x in xs]

    report = {"meta": {"object": obj, "spec": spec.format(), "heuristic": cs.heuristic, "config": cfg.to_dict()},
              "roots_phi1": enc(cs.roots_phi1), "roots_phi0": enc(cs.roots_phi0),
              "lambda": enc(cs.lambda_values), "elambda": enc(cs.elambda),
              "moduli": [_nstr(m, digits) for m in cs.moduli()]}
    out = _out(cfg, f"{obj.replace(':', '_')}_candidates.json")
    dump_json(out, report)
    for z in cs.elambda:
        print(f"eLambda point {complex(z):.12g} |.|={float(abs(z)):.12g}")
    print(f"wrote {out}")
    return 0


def cmd_gevrey(cfg: RunConfig) -> int:
    from .resurge import gevrey_probe

    s = load_sequence(cfg.inputs[0], _ctx(cfg))
    if not s.exact:
        raise CliError(f"{cfg.inputs[0]}: the Gevrey probe needs exact 'num/den' coefficients")
    rep = gevrey_probe(s, _window(cfg.params["window"]))
    report = {"meta": {"source": s.meta.get("object"), "config": cfg.to_dict()},
              "r": f"{rep.r_est.numerator}/{rep.r_est.denominator}",
              "s": f"{rep.s_est.numerator}/{rep.s_est.denominator}",
              "C": rep.C_est, "r_raw": rep.r_raw, "flags": rep.flags}
    out = _out(cfg, Path(cfg.inputs[0]).stem + "_gevrey.json")
    dump_json(out, report)
    print(f"(r, s) = ({rep.r_est}, {rep.s_est}), C ~ {rep.C_est:.6g} {' '.join(rep.flags)}".rstrip())
    print(f"wrote {out}")
    return 0


def cmd_check(cfg: RunConfig) -> int:
    from .acceptance import run_all

    only = [int(x) for x in _floats(cfg.params["only"])] or None
    results = run_all(only, echo=print)
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    if cfg.out:
        dump_json(cfg.out, {"meta": {"config": cfg.to_dict()},
                            "results": [{"number": r.number, "title": r.title, "passed": r.passed,
                                         "detail": r.detail} for r in results]})
    return 1 if failed else 0


COMMANDS = {"gen": cmd_gen, "scan": cmd_scan, "fit": cmd_fit, "candidates": cmd_candidates,
            "gevrey": cmd_gevrey, "check": cmd_check}


# argument handling -------------------------------------------------------------

def read_config(path: str) -> dict:
    """Options from a key=value file, or the config embedded in an output file."""
    p = Path(path)
    if not p.exists():
        raise CliError(f"config file not found: {path}")
    text = p.read_text()
    if p.suffix == ".json":
        data = json.loads(text)
        cfg = data.get("meta", {}).get("config")
        if not cfg:
            raise CliError(f"{path}: no embedded config")
        out = {k: v for k, v in cfg.items() if k not in ("command", "params")}
        out.update(cfg.get("params", {}))
        return out
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (x.strip() for x in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qresurge", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, nmax=False):
        p.add_argument("--bits", type=int, default=None,
                       help="working precision in bits (default: $QRESURGE_BITS or 256)")
        p.add_argument("--out", default=None, help="output path")
        p.add_argument("--config", default=None, help="key=value file, or a previous JSON output to replay")
        if nmax:
            p.add_argument("--nmax", type=int, default=None, help="last coefficient index")

    g = sub.add_parser("gen", help="generate a coefficient file")
    g.add_argument("object", nargs="?", default=None, help=OBJECTS)
    g.add_argument("model", nargs="?", default=None, choices=["np", "p"])
    common(g, nmax=True)

    s = sub.add_parser("scan", help="angular blow-up scan of a coefficient file")
    s.add_argument("input", nargs="?", default=None)
    s.add_argument("--r", type=float, default=None, help="scan radius (default 0.98)")
    s.add_argument("--grid", type=int, default=None, help="grid points (default 4096)")
    s.add_argument("--k", type=float, default=None, help="threshold: median + k IQR (default 5)")
    s.add_argument("--deriv", type=int, default=None, help="scan z^m f^(m) instead of f (default 0)")
    common(s)

    f = sub.add_parser("fit", help="radius and asymptotic fits")
    f.add_argument("input", nargs="?", default=None)
    f.add_argument("--t0", default=None, help="comma-separated directions, fractions allowed (default 0)")
    f.add_argument("--order", type=int, default=None, help="acceleration order d (default 10)")
    f.add_argument("--window", default=None, help="fit window n0:n1")
    f.add_argument("--validation", default=None, help="validation window n0:n1")
    f.add_argument("--method", default=None, choices=["auto", "richardson", "lsq"])
    common(f)

    c = sub.add_parser("candidates", help="candidate singularities of a sum-product spec")
    c.add_argument("object", nargs="?", default=None, help="3_1, 4_1 or sp:<eps,c,r^p,...>")
    c.add_argument("--branches", type=int, default=None)
    common(c)

    v = sub.add_parser("gevrey", help="mixed Gevrey type of an exact coefficient file")
    v.add_argument("input", nargs="?", default=None)
    v.add_argument("--window", default=None)
    common(v)

    k = sub.add_parser("check", help="run the acceptance suite")
    k.add_argument("--suite", default=None, choices=["acceptance"])
    k.add_argument("--only", default=None, help="comma-separated criterion numbers")
    common(k)
    return parser


DEFAULTS = {
    "gen": {"nmax": 100},
    "scan": {"r": 0.98, "grid": 4096, "k": 5.0, "deriv": 0},
    "fit": {"t0": "0", "order": 10, "window": None, "validation": None, "method": "auto"},
    "candidates": {"branches": 2},
    "gevrey": {"window": None},
    "check": {"suite": "acceptance", "only": None},
}
POSITIONAL = {"gen": ["object", "model"], "scan": ["input"], "fit": ["input"],
              "candidates": ["object"], "gevrey": ["input"], "check": []}
TYPES = {"nmax": int, "bits": int, "grid": int, "deriv": int, "order": int, "branches": int,
         "r": float, "k": float}


def resolve(args: argparse.Namespace) -> RunConfig:
    """Merge command line (first), config file, then defaults."""
    cmd = args.command
    filecfg = read_config(args.config) if args.config else {}
    values = dict(DEFAULTS[cmd])
    for key in list(values) + POSITIONAL[cmd] + ["bits", "out", "input", "object", "model"]:
        if key in filecfg and filecfg[key] is not None:
            values[key] = filecfg[key]
    if "inputs" in filecfg and filecfg["inputs"] and POSITIONAL[cmd] == ["input"]:
        values.setdefault("input", filecfg["inputs"][0])
    for key, val in vars(args).items():
        if key in ("command", "config", "verbose"):
            continue
        if val is not None:
            values[key] = val
    for key, typ in TYPES.items():
        if values.get(key) is not None:
            try:
                values[key] = typ(values[key])
            except (TypeError, ValueError):
                raise CliError(f"option {key}: cannot read {values[key]!r} as {typ.__name__}") from None
    for key in POSITIONAL[cmd]:
        if values.get(key) in (None, ""):
            raise CliError(f"{cmd}: missing {key}")
    bits = values.pop("bits", None) or default_bits()
    out = values.pop("out", None)
    nmax = values.pop("nmax", None) if cmd == "gen" else None
    inputs = [values.pop("input")] if "input" in POSITIONAL[cmd] else []
    params = {k: values[k] for k in sorted(values) if k in DEFAULTS[cmd] or k in POSITIONAL[cmd]}
    return RunConfig(cmd, int(bits), out, nmax, inputs, params).validate()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve(args)
        return COMMANDS[cfg.command](cfg)
    except CliError as exc:
        print(f"qresurge {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
