"""Command-line interface: ``analyze``, ``sweep`` and ``generate``.

Exit codes: 0 success, 1 internal error, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__, matrixfile
from .bounds import SpectraPair, discord_bounds, entanglement_bounds
from .criteria import moment_limit, ppt_test, sipt_moment_test, sipt_test
from .errors import ValidationError
from .oracles import (OracleOptions, SeparableOptions, StateSpec, deficit_oracle,
                      gqd_oracle, make_state, separable_upper_search)
from .oracles.states import Family
from .report import analyze_state
from .spectra import negativity_stats
from .tolerances import PROFILES, Tolerances, default_tolerances

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID = 0, 1, 2

INT_PARAMS = {"d", "rank", "k", "seed"}
TOL_FIELDS = ("herm", "trace", "psd", "eig", "basis", "support", "sipt", "moment")
ORACLES = ("gqd", "deficit", "separable")

SWEEP_COLUMNS = (
    "negativity", "n_plus", "n_minus", "ppt_witness", "sipt_witness", "moment_witness",
    "l_ppt", "l_ppt_prime", "l_sipt", "combined", "deficit_bound_bits",
    "e_hs_lemma", "e_hs_ratio", "e_hs_floor", "e_hs_literature", "e_re_bound_bits",
    "exact", "gqd_oracle", "deficit_oracle", "separable_upper",
)


class UsageError(ValidationError):
    pass


# -- argument plumbing ---------------------------------------------------------

def _add_state_args(p: argparse.ArgumentParser, with_file: bool = True) -> None:
    g = p.add_argument_group("state selection")
    if with_file:
        g.add_argument("--file", help="matrix file (JSON with dims and matrix)")
    g.add_argument("--family", choices=[f.value for f in Family])
    g.add_argument("--d", type=int, help="local dimension (max-entangled, isotropic)")
    g.add_argument("--p", type=float, help="Werner weight")
    g.add_argument("--f", type=float, help="isotropic fidelity")
    for c in ("c1", "c2", "c3"):
        g.add_argument(f"--{c}", type=float, help="Bell-diagonal correlation")
    g.add_argument("--x", metavar="A,B,C,D,Z,W",
                   help="X-state entries; Z and W may be complex, e.g. 0.1+0.05j")
    g.add_argument("--dims", help="bipartite dims as MxN for random families")
    g.add_argument("--rank", type=int)
    g.add_argument("--k", type=int, help="number of mixture terms")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                   help="extra family parameter (repeatable)")


def _add_tol_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("tolerances")
    g.add_argument("--tol-profile", choices=sorted(PROFILES),
                   help="base profile (default from $PTDISCORD_TOL_PROFILE)")
    for name in TOL_FIELDS:
        g.add_argument(f"--tol-{name}", type=float, dest=f"tol_{name}")


def _add_oracle_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("oracles")
    g.add_argument("--restarts", type=int, help="random restarts for sides of dimension >= 3")
    g.add_argument("--oracle-seed", type=int, default=0)


def _tolerances(args) -> Tolerances:
    tol = PROFILES[args.tol_profile] if args.tol_profile else default_tolerances()
    changes = {n: getattr(args, f"tol_{n}") for n in TOL_FIELDS
               if getattr(args, f"tol_{n}") is not None}
    return tol.replace(**changes)


def _parse_value(key: str, text: str):
    if key in INT_PARAMS:
        return int(text)
    try:
        return float(text)
    except ValueError:
        try:
            return complex(text.replace(" ", ""))
        except ValueError:
            return text


def _spec_from_args(args) -> StateSpec:
    if args.family is None:
        raise UsageError("give --file or --family")
    params = {}
    for key in ("d", "p", "f", "c1", "c2", "c3", "rank", "k", "seed"):
        v = getattr(args, key, None)
        if v is not None:
            params[key] = v
    if args.dims:
        try:
            params["dims"] = [int(x) for x in args.dims.lower().replace(",", "x").split("x")]
        except ValueError:
            raise UsageError(f"--dims: expected MxN, got {args.dims!r}") from None
    if args.x:
        parts = args.x.split(",")
        if len(parts) != 6:
            raise UsageError("--x needs six comma-separated values A,B,C,D,Z,W")
        for key, text in zip("abcdzw", parts):
            v = complex(text.strip())
            params[key] = v.real if key in "abcd" else v
    for item in args.param:
        if "=" not in item:
            raise UsageError(f"--param expects KEY=VALUE, got {item!r}")
        key, text = item.split("=", 1)
        params[key.strip()] = _parse_value(key.strip(), text.strip())
    return StateSpec(args.family, params)


def _oracle_opts(args) -> OracleOptions:
    return OracleOptions().with_(restarts=args.restarts, seed=args.oracle_seed)


def _run_oracle(name: str, rho, args) -> dict:
    if name == "gqd":
        return gqd_oracle(rho, _oracle_opts(args)).to_dict()
    if name == "deficit":
        return deficit_oracle(rho, _oracle_opts(args)).to_dict()
    return separable_upper_search(rho, SeparableOptions(seed=args.oracle_seed)).to_dict()


def _oracle_names(selected: list[str] | None) -> list[str]:
    names = []
    for s in selected or []:
        if s == "none":
            continue
        for n in (ORACLES if s == "all" else (s,)):
            if n not in names:
                names.append(n)
    return names


# -- commands --------------------------------------------------------------------

def cmd_analyze(args, out) -> int:
    tol = _tolerances(args)
    if args.file:
        rho = matrixfile.read(args.file, tol)
        state_id = args.state_id or args.file
    else:
        spec = _spec_from_args(args)
        rho = make_state(spec, tol)
        state_id = args.state_id or spec.describe()
    n_limit = moment_limit(rho.dims.total, args.moment_rule)
    rep = analyze_state(rho, state_id, tol, n_limit)
    for name in _oracle_names(args.oracle):
        rep.oracles[name] = _run_oracle(name, rho, args)
    out.write((rep.to_json() if args.format == "json" else rep.to_text()) + "\n")
    return EXIT_OK


def _frange(start: float, stop: float, step: float) -> list[float]:
    if step <= 0:
        raise UsageError("--step must be positive")
    if stop < start:
        return []
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def _sweep_values(args) -> list:
    if args.values is not None:
        text = args.values.strip()
        vals = [_parse_value(args.param_name, t.strip()) for t in text.split(",")] if text else []
    else:
        if args.start is None or args.stop is None or args.step is None:
            raise UsageError("give --values or all of --start/--stop/--step")
        vals = _frange(args.start, args.stop, args.step)
    if args.param_name in INT_PARAMS:
        vals = [int(round(v)) for v in vals]
    return vals


def _row(value, base: StateSpec, args, columns: list[str], tol: Tolerances) -> list:
    params = dict(base.params)
    params[args.param_name] = value
    spec = StateSpec(base.family, params)
    rho = make_state(spec, tol)
    pair = SpectraPair.of(rho, tol)
    stats = negativity_stats(pair.transposed)
    db = discord_bounds(pair)
    eb = entanglement_bounds(rho, tol)
    def get(col):
        if col in ("negativity", "n_plus", "n_minus"):
            return getattr(stats, col)
        if col in db.to_dict():
            return getattr(db, col)
        if col in ("e_hs_lemma", "e_hs_ratio", "e_hs_floor", "e_hs_literature", "e_re_bound_bits"):
            return getattr(eb, col)
        if col == "ppt_witness":
            return ppt_test(rho, tol).witness_value
        if col == "sipt_witness":
            return sipt_test(rho, tol).witness_value
        if col == "moment_witness":
            return sipt_moment_test(rho, moment_limit(rho.dims.total, args.moment_rule),
                                    tol).witness_value
        if col == "exact":
            return 1 - 1 / spec.params.get("d", 2) if spec.family is Family.MAX_ENTANGLED else ""
        if col == "gqd_oracle":
            return _run_oracle("gqd", rho, args)["value"]
        if col == "deficit_oracle":
            return _run_oracle("deficit", rho, args)["value"]
        if col == "separable_upper":
            return _run_oracle("separable", rho, args)["value"]
        raise UsageError(f"unknown column {col!r}")  # pragma: no cover

    return [value] + [_fmt(get(c)) for c in columns]


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return v


def cmd_sweep(args, out) -> int:
    tol = _tolerances(args)
    base = _spec_from_args(args)
    columns = [c.strip() for c in args.columns.split(",") if c.strip()]
    bad = [c for c in columns if c not in SWEEP_COLUMNS]
    if bad:
        raise UsageError(f"unknown column(s) {bad}; choose from {', '.join(SWEEP_COLUMNS)}")
    values = _sweep_values(args)
    # resolve every state up front so bad parameters fail before any output
    for v in values:
        make_state(StateSpec(base.family, {**base.params, args.param_name: v}), tol)
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        rows = list(pool.map(lambda v: _row(v, base, args, columns, tol), values))
    buf = io.StringIO()
    buf.write(f"# seed={base.params.get('seed', args.oracle_seed)}, version={__version__}, "
              f"family={base.family.value}, oracle_seed={args.oracle_seed}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([args.param_name] + columns)
    w.writerows(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        out.write(buf.getvalue())
    return EXIT_OK


def cmd_generate(args, out) -> int:
    tol = _tolerances(args)
    spec = _spec_from_args(args)
    rho = make_state(spec, tol)
    matrixfile.write(args.out, rho, state_id=args.state_id or spec.describe(),
                     spec=spec.to_dict())
    out.write(f"wrote {args.out} ({rho.dims.dim_a}x{rho.dims.dim_b})\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptdiscord",
        description="Discord and entanglement diagnostics from partial transposition.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="criteria and bounds for one state")
    _add_state_args(a)
    _add_tol_args(a)
    _add_oracle_args(a)
    a.add_argument("--oracle", action="append", choices=ORACLES + ("all", "none"),
                   help="run an oracle (repeatable)")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.add_argument("--moment-rule", choices=("newton", "conservative"), default="newton",
                   help="highest moment checked: MN (newton) or MN+2 (conservative)")
    a.add_argument("--state-id")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sweep", help="tabulate quantities over a parameter range")
    _add_state_args(s, with_file=False)
    _add_tol_args(s)
    _add_oracle_args(s)
    s.add_argument("--param-name", "--vary", dest="param_name", required=True,
                   help="family parameter to vary, e.g. p or d")
    s.add_argument("--start", type=float)
    s.add_argument("--stop", type=float)
    s.add_argument("--step", type=float)
    s.add_argument("--values", help="explicit comma-separated values")
    s.add_argument("--columns", default="negativity,l_ppt,l_sipt,combined")
    s.add_argument("--moment-rule", choices=("newton", "conservative"), default="newton")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out", help="CSV path (default: stdout)")
    s.set_defaults(func=cmd_sweep)

    g = sub.add_parser("generate", help="write a family state to a matrix file")
    _add_state_args(g, with_file=False)
    _add_tol_args(g)
    g.add_argument("--out", required=True)
    g.add_argument("--state-id")
    g.set_defaults(func=cmd_generate)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except FileNotFoundError as exc:
        err.write(f"error: file not found: {exc.filename}\n")
    except (ValidationError, ValueError) as exc:
        err.write(f"error: {exc}\n")
    except OSError as exc:
        err.write(f"error: {exc}\n")
    except Exception as exc:  # noqa: BLE001
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
