"""Command-line front end.

Every run is described by one key-value config file (``key = value``
lines, ``#`` comments) plus ``--set key=value`` overrides.  ``qmcbrs
describe`` prints every key with its default.

Exit codes: 0 success, 1 verification failure, 2 config error,
3 certification error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import os
import sys
import tempfile
from fractions import Fraction

from .brs import GammaSpec, cond_check, delta_profile, star_discrepancy_exact
from .digital import DigitalSequence, dual_space, matrices_from_json, niederreiter_matrices
from .digits import DEFAULT_PRECISION
from .field import FieldError, parse_field
from .polyring import PolyError, parse_poly
from .radinv import (
    CantorBase,
    ConfigurationError,
    HaltonTypeSequence,
    HellekalekSequence,
    PlaceList,
    TezukaSequence,
)
from .verify import CertificationError, admissibility, exact_t_value, is_net, weak_admissibility

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_CERT = 0, 1, 2, 3

KINDS = ("niederreiter", "halton", "hellekalek", "tezuka", "halton-type", "explicit-matrices")

# key -> (default, description)
DEFAULTS: dict[str, tuple[str, str]] = {
    "kind": ("niederreiter", "one of " + ", ".join(KINDS)),
    "field": ("GF(2)", "GF(q) or GF(q)=GF(p)[x]/(modulus)"),
    "polys": ("x+1", "niederreiter/tezuka: polynomials separated by ';'"),
    "bases": ("2|3", "hellekalek: coordinates separated by '|', each a cycled radix list '2,3,5'"),
    "places": ("x+1", "halton-type: coordinates separated by '|', each a cycled list of "
                      "monic irreducible polynomials separated by ';'"),
    "matrices": ("", "explicit-matrices: path of a JSON matrix file"),
    "precision": (str(DEFAULT_PRECISION), "digits per coordinate"),
    "m": ("8", "generate/verify/t-value/admissibility/dual work on b^m points"),
    "start": ("0", "generate: first index"),
    "count": ("", "generate/discrepancy: number of points (default b^m)"),
    "block": ("0", "verify/t-value: check points k*b^m .. (k+1)*b^m-1"),
    "t": ("auto", "verify: claimed t (auto = sum(deg p_i) - s for polynomial kinds)"),
    "d": ("auto", "verify/admissibility: d for d-admissibility (auto = sum(deg p_i))"),
    "gamma": ("1/2", "brs: boxes separated by ';', coordinates by ','; "
                     "each coordinate 'p/q', a decimal, or 'b:0.pre(period)' base-b digits"),
    "m_max": ("12", "brs: profile over N <= b^m_max"),
    "seed": ("0", "recorded in outputs for reproducibility"),
    "output": ("-", "output path ('-' for stdout)"),
    "format": ("json", "csv or json"),
}


class ConfigError(ValueError):
    pass


def parse_config_text(text: str) -> dict[str, str]:
    parser = configparser.ConfigParser(
        delimiters=("=",), comment_prefixes=("#",), inline_comment_prefixes=("#",),
        interpolation=None, default_section="__none__",
    )
    parser.optionxform = str
    try:
        parser.read_string("[run]\n" + text)
    except configparser.DuplicateOptionError as exc:
        raise ConfigError(f"line {exc.lineno - 1}: key {exc.option!r} given twice") from None
    except configparser.ParsingError as exc:
        lineno, line = exc.errors[0]
        raise ConfigError(f"line {lineno - 1}: expected 'key = value', got {line}") from None
    except configparser.Error as exc:
        raise ConfigError(" ".join(str(exc).split())) from None
    if parser.sections() != ["run"]:
        raise ConfigError("config files have no [section] headers")
    out = dict(parser["run"])
    for key in out:
        if key not in DEFAULTS:
            raise ConfigError(f"unknown key {key!r}")
    return out


def load_config(path: str | None, overrides: list[str]) -> dict[str, str]:
    cfg = {k: v for k, (v, _) in DEFAULTS.items()}
    if path:
        try:
            with open(path) as fh:
                cfg.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc.strerror}") from None
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        k, v = (p.strip() for p in item.split("=", 1))
        if k not in DEFAULTS:
            raise ConfigError(f"unknown key {k!r}")
        cfg[k] = v
    if cfg["kind"] not in KINDS:
        raise ConfigError(f"unknown kind {cfg['kind']!r}")
    if cfg["format"] not in ("csv", "json"):
        raise ConfigError("format must be csv or json")
    return cfg


def _int(cfg, key) -> int:
    try:
        return int(cfg[key])
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {cfg[key]!r}") from None


def _polys(cfg, field):
    return [parse_poly(s, field) for s in cfg["polys"].split(";") if s.strip()]


def build_sequence(cfg: dict[str, str]):
    """Sequence object (``base``, ``dimension``, ``points(start, count)``) and the polynomial degrees."""
    kind = cfg["kind"]
    L = _int(cfg, "precision")
    degrees = None
    if kind in ("halton", "hellekalek"):
        coords = [c for c in cfg["bases"].split("|") if c.strip()]
        try:
            radix_lists = [[int(q) for q in c.split(",")] for c in coords]
        except ValueError:
            raise ConfigError(f"bad bases {cfg['bases']!r}") from None
        if kind == "halton" and any(len(r) != 1 for r in radix_lists):
            raise ConfigError("halton takes one base per coordinate")
        return HellekalekSequence([CantorBase((), tuple(r)) for r in radix_lists], L), None
    field = parse_field(cfg["field"])
    if kind == "niederreiter":
        polys = _polys(cfg, field)
        degrees = [p.degree for p in polys]
        return DigitalSequence(niederreiter_matrices(polys, precision=L)), degrees
    if kind == "tezuka":
        polys = _polys(cfg, field)
        degrees = [p.degree for p in polys]
        return TezukaSequence(polys, L), degrees
    if kind == "halton-type":
        coords = []
        for c in cfg["places"].split("|"):
            coords.append([parse_poly(s, field) for s in c.split(";") if s.strip()])
        return HaltonTypeSequence(PlaceList(field, coords), L), None
    path = cfg["matrices"]
    if not path:
        raise ConfigError("explicit-matrices needs matrices = <path>")
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read matrices: {exc.strerror}") from None
    try:
        return DigitalSequence(matrices_from_json(text, L)), None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"matrix file is not JSON: {exc.msg}") from None


def _require_base(seq) -> int:
    if seq.base is None:
        raise ConfigError("this command needs a single-base sequence (not hellekalek/halton)")
    return seq.base


def _auto(cfg, key, degrees, fallback):
    if cfg[key] != "auto":
        return _int(cfg, key)
    if degrees is None:
        return fallback
    return sum(degrees) - (len(degrees) if key == "t" else 0)


def _digit_text(ds) -> str:
    if ds.base is not None and ds.base <= 10:
        return "".join(map(str, ds.digits))
    return ":".join(map(str, ds.digits))


def _dec(v: Fraction) -> str:
    return repr(float(v))


def cmd_generate(cfg, seq, degrees):
    start = _int(cfg, "start")
    count = _int(cfg, "count") if cfg["count"] else (
        _require_base(seq) ** _int(cfg, "m"))
    if start < 0 or count < 0:
        raise ConfigError("start and count must be nonnegative")
    if count == 0:
        return "", EXIT_OK
    P = seq.points(start, count)
    vals = P.values()
    if cfg["format"] == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        header = ["n"]
        for i in range(P.dimension):
            header += [f"x{i + 1}_digits", f"x{i + 1}"]
        w.writerow(header)
        for r in range(len(P)):
            row = [start + r]
            for i, ds in enumerate(P.point(r)):
                row += [_digit_text(ds), _dec(vals[r][i])]
            w.writerow(row)
        return buf.getvalue(), EXIT_OK
    rows = []
    for r in range(len(P)):
        rows.append({
            "n": start + r,
            "digits": [_digit_text(ds) for ds in P.point(r)],
            "decimal": [_dec(v) for v in vals[r]],
        })
    doc = {"schema_version": SCHEMA_VERSION, "kind": cfg["kind"], "seed": _int(cfg, "seed"),
           "exact": P.exact, "points": rows}
    return json.dumps(doc, sort_keys=True) + "\n", EXIT_OK


def _block(cfg, seq):
    b = _require_base(seq)
    m = _int(cfg, "m")
    k = _int(cfg, "block")
    return b, m, seq.points(k * b**m, b**m)


def cmd_verify(cfg, seq, degrees):
    b, m, P = _block(cfg, seq)
    t = _auto(cfg, "t", degrees, 0)
    if not 0 <= t <= m:
        raise ConfigError(f"claimed t={t} outside [0, m={m}]")
    report = is_net(P, b, t, m)
    doc = {"schema_version": SCHEMA_VERSION, "net": report.to_dict()}
    ok = report.verified
    d = _auto(cfg, "d", degrees, None)
    if d is not None:
        adm = admissibility(P)
        if not adm.certified and adm.passes(d):
            raise CertificationError("admissibility undecided at this precision")
        doc["admissibility"] = dict(adm.to_dict(), d=d, passed=adm.passes(d))
        ok = ok and adm.passes(d)
    doc["passed"] = ok
    return json.dumps(doc, sort_keys=True) + "\n", EXIT_OK if ok else EXIT_FAIL


def cmd_t_value(cfg, seq, degrees):
    b, m, P = _block(cfg, seq)
    doc = {"schema_version": SCHEMA_VERSION, "b": b, "m": m, "block": _int(cfg, "block"),
           "t_value": exact_t_value(P, b, m)}
    return json.dumps(doc, sort_keys=True) + "\n", EXIT_OK


def cmd_admissibility(cfg, seq, degrees):
    b, m, P = _block(cfg, seq)
    kappa = weak_admissibility(P)
    adm = admissibility(P)
    doc = {"schema_version": SCHEMA_VERSION, "b": b, "m": m, "kappa_m": str(kappa),
           "weakly_admissible": kappa > 0, "pairwise": adm.to_dict()}
    ok = kappa > 0
    d = _auto(cfg, "d", degrees, None)
    if d is not None:
        if not adm.certified and adm.passes(d):
            raise CertificationError("admissibility undecided at this precision")
        doc["d"] = d
        doc["d_admissible"] = adm.passes(d)
        ok = ok and adm.passes(d)
    return json.dumps(doc, sort_keys=True) + "\n", EXIT_OK if ok else EXIT_FAIL


def _gammas(cfg, b, s):
    out = []
    for text in cfg["gamma"].split(";"):
        if not text.strip():
            continue
        g = GammaSpec.parse(text, b)
        if g.dimension != s:
            raise ConfigError(f"gamma {text.strip()!r} has {g.dimension} coordinates, sequence has {s}")
        out.append(g)
    if not out:
        raise ConfigError("brs needs at least one gamma")
    return out


def cmd_brs(cfg, seq, degrees, log=None):
    log = log or sys.stderr
    b = seq.base if seq.base is not None else 2
    m_max = _int(cfg, "m_max")
    profiles = [delta_profile(seq, g, m_max, cfg["kind"]) for g in _gammas(cfg, b, seq.dimension)]
    status = EXIT_OK
    for p in profiles:
        verdict = "true" if p.bounded() else "false"
        cond = "true" if cond_check(p.gamma) else "false"
        line = f"gamma={p.gamma} bounded: {verdict} cond: {cond}"
        if p.anomaly():
            line = "ANOMALY " + line
            status = EXIT_FAIL
        print(line, file=log)
    if cfg["format"] == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["gamma", "m", "N_at_sup", "sup_abs_delta_num", "sup_abs_delta_den"])
        for p in profiles:
            for r in p.rows():
                w.writerow([str(p.gamma), r["m"], r["N_at_sup"], r["sup_abs_delta_num"],
                            r["sup_abs_delta_den"]])
        return buf.getvalue(), status
    doc = {"schema_version": SCHEMA_VERSION, "seed": _int(cfg, "seed"), "m_max": m_max,
           "experiments": [p.to_dict() for p in profiles]}
    return json.dumps(doc, sort_keys=True) + "\n", status


def cmd_discrepancy(cfg, seq, degrees):
    count = _int(cfg, "count") if cfg["count"] else _require_base(seq) ** _int(cfg, "m")
    # for inexact sequences this is D* of the points truncated to the precision
    P = seq.points(0, count)
    D = star_discrepancy_exact(P)
    doc = {"schema_version": SCHEMA_VERSION, "N": count, "star_discrepancy": str(D),
           "decimal": _dec(D), "points_exact": P.exact}
    return json.dumps(doc, sort_keys=True) + "\n", EXIT_OK


def cmd_dual(cfg, seq, degrees):
    if not isinstance(seq, DigitalSequence):
        raise ConfigError("dual needs a digital sequence (niederreiter or explicit-matrices)")
    m = _int(cfg, "m")
    D = dual_space(seq.cfg, m)
    doc = {"schema_version": SCHEMA_VERSION, "m": m, "s": seq.dimension, "field": str(seq.field),
           "row_rank": D.row_rank, "dual_dim": D.dim, "basis": D.vectors.tolist()}
    return json.dumps(doc, sort_keys=True) + "\n", EXIT_OK


def describe() -> str:
    lines = ["# qmcbrs configuration keys (key = default  # meaning)"]
    for k, (v, doc) in DEFAULTS.items():
        lines.append(f"{k} = {v}  # {doc}")
    lines += [
        "",
        "# polynomials: 'x^2+x+1' with coefficients in Z_p over a prime field,",
        "#   or '[c_d,...,c_0]' digit vectors (required for extension fields)",
        "# exit codes: 0 ok, 1 verification failure, 2 config error, 3 certification error",
    ]
    return "\n".join(lines) + "\n"


COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "t-value": cmd_t_value,
    "admissibility": cmd_admissibility,
    "brs": cmd_brs,
    "discrepancy": cmd_discrepancy,
    "dual": cmd_dual,
}


def write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qmcbrs-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmcbrs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in list(COMMANDS) + ["describe"]:
        p = sub.add_parser(name)
        p.add_argument("-c", "--config", help="key-value config file")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override one config key (repeatable)")
        p.add_argument("-o", "--output", help="output path (overrides the config key)")
        p.add_argument("--format", choices=("csv", "json"), help="output format")
    return parser


def _fail(code: int, kind: str, msg: str) -> int:
    print(f"qmcbrs: {kind}: {' '.join(str(msg).split())}", file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        overrides = list(args.set)
        if args.output:
            overrides.append(f"output={args.output}")
        if args.format:
            overrides.append(f"format={args.format}")
        cfg = load_config(args.config, overrides)
        if args.command == "describe":
            text, status = describe(), EXIT_OK
        else:
            seq, degrees = build_sequence(cfg)
            text, status = COMMANDS[args.command](cfg, seq, degrees)
        if cfg["output"] == "-":
            sys.stdout.write(text)
        else:
            write_atomic(cfg["output"], text)
        return status
    except CertificationError as exc:
        return _fail(EXIT_CERT, "certification-error", exc)
    except (ConfigError, ConfigurationError, FieldError, PolyError, ValueError) as exc:
        return _fail(EXIT_CONFIG, "config-error", exc)


if __name__ == "__main__":
    sys.exit(main())
