"""Command-line front end.

    vortex-atlas solve   --gamma4 1/2 --family collinear
    vortex-atlas census  --gamma4 1
    vortex-atlas sweep   --range -1:2 --samples 7 --format csv
    vortex-atlas certify config.json
    vortex-atlas curves  --plot f-zero --bounds -3:3
    vortex-atlas rhombus --range -5:3 --samples 33

Exit status: 0 on success, 2 on usage errors, 3 when a certificate fails,
the stored eliminant fails its cross-check, or a solver leaves candidates
unresolved.  Artifacts are written atomically; identical inputs give
byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from . import census, collinear, kite, rhombus, special
from .vortexcore import PlanarConfiguration, Vorticities, certify

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_MATH = 0, 2, 3
COMMANDS = ("solve", "census", "sweep", "certify", "curves", "rhombus")
FAMILIES = ("all", "collinear", "kite", "rhombus", "special")
SOLVE_COLUMNS = ("family", "gamma4", "geometry", "x1", "y1", "x2", "y2", "x3", "y3", "x4", "y4", "lambda", "verdict")
_VALUED = ("--gamma4", "--range", "--bounds", "--eps")


class UsageError(ValueError):
    pass


class MathFailure(RuntimeError):
    pass


def parse_rational(text: str) -> Fraction:
    """'p/q' or a decimal literal, converted digit by digit (never via float)."""
    try:
        q = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc
    return q


def parse_interval(text: str) -> tuple:
    sep = ":" if ":" in text else ","
    parts = text.split(sep)
    if len(parts) != 2:
        raise UsageError(f"interval must be lo:hi, got {text!r}")
    lo, hi = (parse_rational(p) for p in parts)
    if not lo < hi:
        raise UsageError(f"interval needs lo < hi, got {text!r}")
    return lo, hi


def read_config(path: str) -> dict:
    """Flat key=value file; '#' starts a comment, keys use flag names without dashes."""
    out = {}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _join_negative_values(argv: list) -> list:
    # "--gamma4 -1/2" would otherwise be read as an unknown option
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUED and i + 1 < len(argv) and argv[i + 1].startswith("-") and len(argv[i + 1]) > 1 \
                and (argv[i + 1][1].isdigit() or argv[i + 1][1] == "."):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vortex-atlas", description="Relative equilibria of four vortices "
                                "with strengths (1, 1, 1, G4).")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="configuration JSON for certify")
    p.add_argument("--gamma4")
    p.add_argument("--range", dest="range_")
    p.add_argument("--samples", type=int)
    p.add_argument("--eps")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--out")
    p.add_argument("--workers", type=int)
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--plot", choices=("f-zero",))
    p.add_argument("--bounds")
    p.add_argument("--config")
    return p


_DEFAULTS = {"samples": 9, "eps": None, "format": "json", "family": "all", "plot": "f-zero",
             "bounds": "-3:3"}


def resolve_options(ns: argparse.Namespace) -> dict:
    """Merge flags over the config file over defaults."""
    opts = dict(_DEFAULTS)
    env = os.environ.get("VORTEX_ATLAS_WORKERS")
    opts["workers"] = env if env else "1"
    if ns.config:
        try:
            cfg = read_config(ns.config)
        except OSError as exc:
            raise UsageError(str(exc)) from exc
        cfg["range_"] = cfg.pop("range", cfg.get("range_"))
        opts.update({k: v for k, v in cfg.items() if v is not None})
    for key in ("input", "gamma4", "range_", "samples", "eps", "format", "out", "workers", "family", "plot", "bounds"):
        v = getattr(ns, key)
        if v is not None:
            opts[key] = v
    try:
        opts["samples"] = int(opts["samples"])
        opts["workers"] = int(opts["workers"])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if opts["workers"] < 1:
        raise UsageError("--workers must be positive")
    if opts["format"] not in ("json", "csv"):
        raise UsageError(f"unknown format {opts['format']!r}")
    if opts["family"] not in FAMILIES:
        raise UsageError(f"unknown family {opts['family']!r}")
    if opts["eps"] is not None:
        opts["eps"] = parse_rational(str(opts["eps"]))
        if opts["eps"] <= 0:
            raise UsageError("--eps must be positive")
    return opts


# ---------------------------------------------------------------------------
# output


def atomic_write(path: str, text: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps({"schema": SCHEMA, **obj}, indent=2, sort_keys=False, default=str) + "\n"


def _emit(opts: dict, text: str) -> None:
    if opts.get("out"):
        atomic_write(opts["out"], text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def _need_gamma4(opts) -> Fraction:
    if opts.get("gamma4") is None:
        raise UsageError("--gamma4 is required")
    return parse_rational(str(opts["gamma4"]))


def _solve_row(family, g, geometry, cfg, cert) -> dict:
    row = {"family": family, "gamma4": str(g), "geometry": geometry,
           "lambda": cert.lam if cert else "", "verdict": ("pass" if cert.verdict else "fail") if cert else ""}
    for n, (x, y) in enumerate(cfg.positions, 1):
        row[f"x{n}"], row[f"y{n}"] = float(x), float(y)
    return row


def cmd_solve(opts) -> tuple:
    g = _need_gamma4(opts)
    fam = opts["family"]
    eps = opts["eps"] or Fraction(1, 10**12)
    out, rows, failed = {}, [], 0
    if fam in ("all", "collinear"):
        sols = collinear.solve(g, eps=eps)
        out["collinear"] = [s.to_json() for s in sols]
        for s in sols:
            rows.append(_solve_row("collinear", g, "symmetric" if s.symmetric else "asymmetric",
                                   s.configuration(), s.certificate))
            failed += not (s.certificate and s.certificate.verdict)
        out["collinear_census"] = {"root_count": collinear.census(g).root_count,
                                   "solution_count": collinear.census(g).solution_count}
    if fam in ("all", "kite"):
        sols = kite.solve_kite(g, eps=float(eps))
        out["kite"] = [s.to_json() for s in sols]
        for s in sols:
            rows.append(_solve_row("kite", g, s.cls, s.configuration(), s.certificate))
            failed += not (s.resolved and s.certificate and s.certificate.verdict)
    if fam in ("all", "rhombus"):
        fams = rhombus.enumerate_families(g)
        out["rhombus"] = [f.to_json() for f in fams]
        for f in fams:
            rows.append(_solve_row("rhombus", g, f"family-{f.family}", f.configuration, f.certificate))
            # rhombi are reported as-is; only an explicit rhombus request treats failure as fatal
            failed += fam == "rhombus" and not f.certified
    if fam in ("all", "special"):
        v = Vorticities.three_unit(g)
        res = []
        if v.angular_momentum == 0:
            res.append(special.absolute_equilibria(v))
        if v.total == 0:
            res.append(special.rigid_translation_search(v, workers=opts["workers"]))
        out["special"] = [r.to_json() for r in res]
        for r in res:
            for cfg, cert in zip(r.configurations, r.certificates):
                rows.append(_solve_row("special", g, r.kind, cfg, cert))
                failed += not cert.verdict
    n = sum(len(v) for k, v in out.items() if isinstance(v, list))
    if opts["format"] == "csv":
        text = _csv(rows, SOLVE_COLUMNS)
    else:
        text = _json({"command": "solve", "gamma4": str(g), "family": fam, "count": n, "failed": failed, **out})
    return text, (EXIT_MATH if failed else EXIT_OK)


def _census_output(opts, rows, extra=None) -> tuple:
    incomplete = [r for r in rows if not r.complete]
    if opts["format"] == "csv":
        text = census.rows_to_csv(rows)
    else:
        body = {"command": opts["command"], "rows": [r.to_json(with_records=len(rows) == 1) for r in rows]}
        if extra:
            body.update(extra)
        text = _json(body)
    return text, (EXIT_MATH if incomplete else EXIT_OK)


def cmd_census(opts) -> tuple:
    if opts.get("gamma4") is not None:
        return _census_output(opts, [census.census_at(_need_gamma4(opts))])
    if opts.get("range_") is None:
        raise UsageError("census needs --gamma4 or --range")
    return cmd_sweep(opts)


def cmd_sweep(opts) -> tuple:
    if opts.get("range_") is None:
        raise UsageError("--range is required")
    lo, hi = parse_interval(str(opts["range_"]))
    if opts["samples"] < 2:
        raise UsageError("--samples must be at least 2")
    res = census.sweep(lo, hi, opts["samples"], workers=opts["workers"])
    extra = res.to_json()
    extra.pop("rows")
    return _census_output(opts, list(res.rows), extra)


def cmd_certify(opts) -> tuple:
    if not opts.get("input"):
        raise UsageError("certify needs a configuration JSON path")
    try:
        obj = json.loads(Path(opts["input"]).read_text())
        cfg = PlanarConfiguration.from_json(obj)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read configuration: {exc}") from exc
    cert = certify(cfg, float(opts["eps"]) if opts["eps"] else 1e-10)
    if opts["format"] == "csv":
        row = _solve_row("input", cfg.vorticities.gamma4, cert.kind, cfg, cert)
        text = _csv([row], SOLVE_COLUMNS)
    else:
        text = _json({"command": "certify", "configuration": cfg.to_json(), "certificate": cert.to_json()})
    return text, (EXIT_OK if cert.verdict else EXIT_MATH)


def cmd_curves(opts) -> tuple:
    lo, hi = parse_interval(str(opts["bounds"]))
    rows = kite.curve_samples(bounds=(float(lo), float(hi)))
    if opts["format"] == "json":
        return _json({"command": "curves", "plot": opts["plot"], "bounds": [str(lo), str(hi)], "samples": rows}), 0
    return _csv(rows, ("curve", "k", "l", "arc")), EXIT_OK


def cmd_rhombus(opts) -> tuple:
    if opts.get("gamma4") is not None:
        g = _need_gamma4(opts)
        fams = rhombus.enumerate_families(g)
        rows = rhombus.sweep_rows(float(g), float(g), 1)
        if opts["format"] == "csv":
            return _csv(rows, rhombus.SWEEP_COLUMNS), EXIT_OK
        chk = rhombus.exact_check(g) if rhombus.family_of(g) else None
        body = {"command": "rhombus", "gamma4": str(g), "families": [f.to_json() for f in fams]}
        if chk is not None:
            body["exact"] = {"distance_relation": str(chk.relation_residual), "lambda_scaled": str(chk.lambda_scaled),
                             "dziobek_residuals": [str(r) for r in chk.dziobek_residuals]}
        return _json(body), EXIT_OK
    lo, hi = parse_interval(str(opts.get("range_") or "-5:3"))
    rows = rhombus.sweep_rows(float(lo), float(hi), max(opts["samples"], 2))
    if opts["format"] == "csv":
        return _csv(rows, rhombus.SWEEP_COLUMNS), EXIT_OK
    return _json({"command": "rhombus", "range": [str(lo), str(hi)], "rows": rows}), EXIT_OK


HANDLERS = {"solve": cmd_solve, "census": cmd_census, "sweep": cmd_sweep, "certify": cmd_certify,
            "curves": cmd_curves, "rhombus": cmd_rhombus}


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        opts = resolve_options(ns)
        opts["command"] = ns.command
        text, status = HANDLERS[ns.command](opts)
    except UsageError as exc:
        print(f"vortex-atlas: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (collinear.TranscriptionError, kite.TranscriptionFailure, MathFailure) as exc:
        print(f"vortex-atlas: {exc}", file=sys.stderr)
        return EXIT_MATH
    _emit(opts, text)
    return status


def main() -> None:
    sys.exit(run())
