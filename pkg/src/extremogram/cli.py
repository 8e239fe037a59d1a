"""
Command-line front end.

Subcommands: ``extremogram``, ``cross``, ``spectrum``, ``simulate``,
``tailindex`` and ``oracle``. Exit codes: 0 success, 1 usage error,
2 data problem (unreadable input, no exceedances), 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import warnings
from xml.sax.saxutils import escape

import numpy as np

from extremogram.core.config import BandMethod, EstimatorConfig
from extremogram.core.regions import parse_region
from extremogram.core.series import TimeSeries
from extremogram.core.threshold import select_threshold
from extremogram.errors import (
    CsvParseError,
    DimensionMismatch,
    DivergentCoefficients,
    EmptyFile,
    ExtremogramError,
    IngestError,
    InvalidParameter,
    LagTooLarge,
    NoExceedances,
    NonCausal,
    NonStationary,
    NoRoot,
    NotBoundedAwayFromZero,
    NotConverged,
    RegionSemanticError,
    RegionSyntaxError,
    TooFewBlocks,
    TruncationTooLarge,
    UnsupportedRegion,
    ZeroDenominator,
)
from extremogram.estimators.extremogram import cross_extremogram_matrix, empirical_extremogram
from extremogram.models import oracles
from extremogram.models.noise import NoiseSpec
from extremogram.models.simulate import simulate, simulate_filtered
from extremogram.models.spec import Family, ModelSpec
from extremogram.models.tail_index import solve_garch_tail_index
from extremogram.spectral import lag_window

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3

_DATA_ERRORS = (IngestError, CsvParseError, EmptyFile, NoExceedances, DimensionMismatch,
                LagTooLarge, NotBoundedAwayFromZero, TooFewBlocks, TruncationTooLarge)
_NUMERIC_ERRORS = (NoRoot, NotConverged, NonCausal, NonStationary, ZeroDenominator,
                   DivergentCoefficients)
_USAGE_ERRORS = (InvalidParameter, RegionSyntaxError, RegionSemanticError, UnsupportedRegion)


class UsageError(Exception):
    pass


# input ---------------------------------------------------------------------

def _parse_row(cells, row):
    values = []
    for cell in cells:
        try:
            v = float(cell.strip())
        except ValueError:
            raise CsvParseError(f"non-numeric value {cell.strip()!r}", row) from None
        if not math.isfinite(v):
            raise CsvParseError(f"non-finite value {cell.strip()!r}", row)
        values.append(v)
    return values


def _is_numeric(cells) -> bool:
    try:
        _parse_row(cells, 0)
    except CsvParseError:
        return False
    return True


def ingest_csv(path) -> TimeSeries:
    """
    Read a numeric series from a CSV file, one observation per row.

    A single leading non-numeric row is taken as a header. Blank lines are
    skipped. Every data row must have as many columns as the first one.

    Raises
    ------
    IngestError
        The file cannot be read.
    CsvParseError
        A data row is malformed; ``row`` is its 1-based line number.
    EmptyFile
        No data rows.
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            lines = list(csv.reader(fh))
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError:
        raise IngestError(f"{path} is not a text file") from None
    rows = [(i + 1, cells) for i, cells in enumerate(lines) if any(c.strip() for c in cells)]
    if rows and not _is_numeric(rows[0][1]):
        rows = rows[1:]
    if not rows:
        raise EmptyFile(f"{path} contains no data rows")
    width = len(rows[0][1])
    data = []
    for row, cells in rows:
        if len(cells) != width:
            raise CsvParseError(f"expected {width} column(s), found {len(cells)}", row)
        data.append(_parse_row(cells, row))
    return TimeSeries(np.asarray(data, dtype=float))


def _load_model(text: str) -> ModelSpec:
    if os.path.exists(text):
        try:
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise IngestError(f"cannot read {text}: {exc.strerror or exc}") from None
    return ModelSpec.from_json(text)


def _require_seed(args, what: str) -> int:
    if args.seed is None:
        raise UsageError(f"{what} is stochastic; pass --seed")
    return args.seed


def _series(args) -> TimeSeries:
    if (args.input is None) == (args.model is None):
        raise UsageError("give exactly one of --input or --model")
    if args.input is not None:
        if args.filter_ar:
            raise UsageError("--filter-ar applies to --model input only")
        return ingest_csv(args.input)
    seed = _require_seed(args, "simulated input")
    if args.n is None:
        raise UsageError("--model input needs --n")
    spec = _load_model(args.model)
    if args.filter_ar:
        return simulate_filtered(spec, args.filter_ar, args.n, seed)
    return simulate(spec, args.n, seed)


def _config(args, series: TimeSeries) -> EstimatorConfig:
    band = BandMethod(args.bands)
    if band is BandMethod.PERMUTATION:
        _require_seed(args, "permutation bands")
    return EstimatorConfig(quantile_level=args.quantile, max_lag=args.lags,
                           block_length=args.block, band_method=band,
                           num_permutations=args.perms, confidence_level=args.level,
                           seed=args.seed)


# output --------------------------------------------------------------------

def _emit(text: str, out):
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IngestError(f"cannot write {out}: {exc.strerror or exc}") from None


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def render_svg(lags, rho, baseline=None, lo=None, hi=None, *, title: str = "",
               width: int = 640, height: int = 360) -> str:
    """Minimal stem plot of ``rho`` against ``lags``, with baseline and band polylines."""
    lags = np.asarray(lags, dtype=float)
    rho = np.asarray(rho, dtype=float)
    left, right, top, bottom = 50.0, 15.0, 30.0, 40.0
    pw, ph = width - left - right, height - top - bottom
    span = max(lags[-1] - lags[0], 1.0) if lags.size else 1.0
    curves = [rho] + [np.asarray(c, dtype=float) for c in (lo, hi) if c is not None]
    ymin = min(0.0, *(float(np.min(c)) for c in curves))
    ymax = max(1.0, *(float(np.max(c)) for c in curves))

    def x(v):
        return left + (v - lags[0]) / span * pw

    def y(v):
        return top + (ymax - v) / (ymax - ymin) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        "<style>.stem{stroke:#1f4e79;stroke-width:2}.axis{stroke:#000}"
        ".baseline{stroke:#b22222;stroke-dasharray:4 3}"
        ".band{fill:none;stroke:#888;stroke-dasharray:2 2}</style>",
        f'<text x="{width / 2:.1f}" y="18" text-anchor="middle" font-size="13">{escape(title)}</text>',
        f'<line class="axis" x1="{left:.2f}" y1="{y(0):.2f}" x2="{left + pw:.2f}" y2="{y(0):.2f}"/>',
        f'<line class="axis" x1="{left:.2f}" y1="{top:.2f}" x2="{left:.2f}" y2="{top + ph:.2f}"/>',
    ]
    for tick in sorted({ymin, 0.0, 0.5 * (ymin + ymax), ymax}):
        out.append(f'<text x="{left - 6:.1f}" y="{y(tick) + 4:.2f}" text-anchor="end" '
                   f'font-size="10">{tick:.2f}</text>')
    for tick in np.unique(np.linspace(lags[0], lags[-1], min(lags.size, 6)).round()):
        out.append(f'<text x="{x(tick):.2f}" y="{top + ph + 15:.2f}" text-anchor="middle" '
                   f'font-size="10">{int(tick)}</text>')
    for curve in (lo, hi):
        if curve is not None:
            pts = " ".join(f"{x(a):.2f},{y(b):.2f}" for a, b in zip(lags, curve))
            out.append(f'<polyline class="band" points="{pts}"/>')
    if baseline is not None:
        out.append(f'<line class="baseline" x1="{left:.2f}" y1="{y(baseline):.2f}" '
                   f'x2="{left + pw:.2f}" y2="{y(baseline):.2f}"/>')
    for a, b in zip(lags, rho):
        out.append(f'<line class="stem" x1="{x(a):.2f}" y1="{y(0):.2f}" '
                   f'x2="{x(a):.2f}" y2="{y(b):.2f}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _format_result(result, fmt: str, title: str) -> str:
    if fmt == "json":
        return result.to_json()
    if fmt == "csv":
        return result.to_csv()
    d = result.to_dict()
    return render_svg(d["lags"], d["rho"], d["baseline"], d["band_lo"], d["band_hi"], title=title)


# commands ------------------------------------------------------------------

def cmd_extremogram(args) -> int:
    A = parse_region(args.a_set)
    B = parse_region(args.b_set or args.a_set)
    series = _series(args)
    result = empirical_extremogram(series, A, B, _config(args, series))
    _emit(_format_result(result, args.format, f"extremogram A={A} B={B}"), args.out)
    return EXIT_OK


def cmd_cross(args) -> int:
    A = parse_region(args.a_set)
    B = parse_region(args.b_set or args.a_set)
    series = _series(args)
    results = cross_extremogram_matrix(series, A, B, _config(args, series))
    if args.format == "json":
        text = _json({key: r.to_dict() for key, r in results.items()})
    elif args.format == "csv":
        lines = ["pair,lag,rho,lo,hi,baseline"]
        for key, r in results.items():
            lines += [",".join([key] + [str(v) for v in row]) for row in r.csv_rows()]
        text = "\n".join(lines) + "\n"
    else:
        raise UsageError("cross supports --format csv or json")
    _emit(text, args.out)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    C = parse_region(args.a_set)
    series = _series(args)
    threshold = select_threshold(series, args.quantile)
    est = lag_window(series, C, threshold, args.lags, centering=args.centering)
    if args.format == "json":
        text = _json(dict(est.to_dict(), a_set=C.to_text(), quantile_level=args.quantile))
    else:
        text = est.to_csv()
    _emit(text, args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.model is None:
        raise UsageError("simulate needs --model")
    if args.n is None:
        raise UsageError("simulate needs --n")
    if args.input is not None:
        raise UsageError("simulate takes --model, not --input")
    series = _series(args)
    lines = ["x" if series.dim == 1 else ",".join(f"x{i + 1}" for i in range(series.dim))]
    lines += [",".join(repr(float(v)) for v in row) for row in series.values]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _noise_from_args(args) -> NoiseSpec:
    if args.noise == "t":
        if args.nu is None:
            raise UsageError("Student-t noise needs --nu")
        return NoiseSpec(law="t", nu=args.nu)
    return NoiseSpec()


def cmd_tailindex(args) -> int:
    seed = _require_seed(args, "the tail-index solver")
    res = solve_garch_tail_index(args.alpha1, args.beta1, _noise_from_args(args),
                                 mc_replicates=args.draws, seed=seed)
    if args.format == "json":
        text = _json({"alpha": res.alpha, "h_se": res.h_se, "replicates": res.replicates})
    else:
        text = f"{res.alpha:.4f} +- {res.h_se:.4f}\n"
    _emit(text, args.out)
    return EXIT_OK


def _half_line_bound(text: str) -> float:
    """Lower end ``a`` of a region ``(a, inf)``."""
    pieces = parse_region(text).intervals_1d()
    if len(pieces) != 1 or not math.isinf(pieces[0][1]) or not pieces[0][0] > 0:
        raise UsageError(f"this oracle needs a region of the form (a,inf) with a > 0, got {text!r}")
    return float(pieces[0][0])


def _oracle_from_model(spec: ModelSpec, args):
    H = args.lags
    if spec.family is Family.SV:
        noise = spec.driving_noise()
        return oracles.sv_extremogram(args.a_set, args.b_set or args.a_set,
                                      noise.tail_index, noise.p, H)
    a = _half_line_bound(args.a_set)
    b = _half_line_bound(args.b_set or args.a_set)
    if spec.family is Family.GARCH11:
        seed = _require_seed(args, "the GARCH oracle")
        # raw-scale sets on |X| become squared-scale sets on X^2
        return oracles.garch11_extremogram(spec.alpha0, spec.alpha1, spec.beta1,
                                           spec.driving_noise(), a * a, b * b, H,
                                           mc_replicates=args.draws, seed=seed)
    alpha = spec.alpha if spec.alpha is not None else spec.driving_noise().tail_index
    if not math.isfinite(alpha):
        raise UsageError("the linear oracle needs regularly varying noise or --alpha")
    if spec.family is Family.ARMA:
        return oracles.arma_extremogram(spec.phi, spec.theta, alpha, H, a, b)
    if spec.lambda_ou is not None:
        return oracles.sas_ou_extremogram(spec.lambda_ou, alpha, a, b, H)
    return oracles.linear_process_extremogram(spec.psi, alpha, a, b, H)


def cmd_oracle(args) -> int:
    kind = args.kind
    if kind == "band":
        res = oracles.band_example_oracle(args.L, args.U, _need(args.alpha, "--alpha"))
        _emit(_json(res._asdict()), args.out)
        return EXIT_OK
    if kind is None:
        if args.model is None:
            raise UsageError("oracle needs a kind or --model")
        result = _oracle_from_model(_load_model(args.model), args)
    elif kind == "ar1":
        result = oracles.ar1_extremogram(_need(args.phi, "--phi")[0], _need(args.alpha, "--alpha"),
                                         args.lags, _half_line_bound(args.a_set),
                                         _half_line_bound(args.b_set or args.a_set))
    elif kind == "arma":
        spec = ModelSpec(family="arma", phi=args.phi or (), theta=args.theta or (),
                         alpha=_need(args.alpha, "--alpha"))
        result = _oracle_from_model(spec, args)
    elif kind == "ou":
        spec = ModelSpec(family="sas_linear", lambda_ou=_need(args.lambda_ou, "--lambda-ou"),
                         alpha=_need(args.alpha, "--alpha"))
        result = _oracle_from_model(spec, args)
    elif kind == "sv":
        result = oracles.sv_extremogram(args.a_set, args.b_set or args.a_set,
                                        _need(args.alpha, "--alpha"), args.p, args.lags)
    else:
        spec = ModelSpec(family=kind, alpha0=args.alpha0, alpha1=_need(args.alpha1, "--alpha1"),
                         beta1=args.beta1, noise=_noise_from_args(args))
        result = _oracle_from_model(spec, args)
    if args.format == "json":
        text = result.to_json()
    elif args.format == "csv":
        text = result.to_csv()
    else:
        d = result.to_dict()
        text = render_svg(d["lags"], d["rho"], None, d["band_lo"], d["band_hi"],
                          title=f"{result.params.get('model', kind)} oracle")
    _emit(text, args.out)
    return EXIT_OK


def _need(value, flag):
    if value is None:
        raise UsageError(f"missing {flag}")
    return value


# parser --------------------------------------------------------------------

def _probability(text: str) -> float:
    v = float(text)
    if not 0.0 < v < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {text}")
    return v


def _floats(text: str) -> tuple:
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {text}")
    return v


def _add_source(p):
    p.add_argument("--input", help="CSV file with one observation per row")
    p.add_argument("--model", help="model spec as JSON text or a path to a JSON file")
    p.add_argument("--n", type=_nonneg_int, help="length of the simulated series")
    p.add_argument("--filter-ar", type=_floats, default=None,
                   help="AR coefficients applied to the simulated path, comma separated")
    p.add_argument("--seed", type=int)


def _add_estimator(p, lags_default=40):
    p.add_argument("--a-set", default="(1,inf)")
    p.add_argument("--b-set", default=None, help="defaults to --a-set")
    p.add_argument("--quantile", type=_probability, default=0.98)
    p.add_argument("--lags", type=_nonneg_int, default=lags_default)
    p.add_argument("--block", type=int, default=None)
    p.add_argument("--bands", choices=["clt", "perm", "none"], default="none")
    p.add_argument("--perms", type=int, default=99)
    p.add_argument("--level", type=_probability, default=0.95)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="extremogram",
                                     description="Extremogram estimation for heavy-tailed series.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (("extremogram", "empirical extremogram of one pair of sets"),
                            ("cross", "AA, AB, BA and BB extremograms")):
        p = sub.add_parser(name, help=help_text)
        _add_source(p)
        _add_estimator(p)
        p.add_argument("--format", choices=["csv", "json", "svg"], default="csv")
        p.add_argument("--out")

    p = sub.add_parser("spectrum", help="lag-window spectral estimate of exceedances")
    _add_source(p)
    p.add_argument("--a-set", default="(1,inf)")
    p.add_argument("--quantile", type=_probability, default=0.98)
    p.add_argument("--lags", type=_nonneg_int, default=20, help="truncation point r")
    p.add_argument("--centering", choices=["centered", "mixed"], default="centered")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")

    p = sub.add_parser("simulate", help="simulate a model and write a CSV series")
    _add_source(p)
    p.add_argument("--out")

    p = sub.add_parser("tailindex", help="GARCH(1,1) tail index from the moment equation")
    p.add_argument("--alpha1", type=float, required=True)
    p.add_argument("--beta1", type=float, default=0.0)
    p.add_argument("--noise", choices=["gaussian", "t"], default="gaussian")
    p.add_argument("--nu", type=float)
    p.add_argument("--draws", type=int, default=1_000_000)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")

    p = sub.add_parser("oracle", help="theoretical extremogram of a model")
    p.add_argument("kind", nargs="?", choices=["ar1", "arma", "ou", "sv", "arch1", "garch11", "band"])
    p.add_argument("--model")
    p.add_argument("--phi", type=_floats)
    p.add_argument("--theta", type=_floats)
    p.add_argument("--alpha", type=float)
    p.add_argument("--p", type=float, default=0.5, help="tail balance for the SV oracle")
    p.add_argument("--lambda-ou", type=float)
    p.add_argument("--alpha0", type=float, default=1.0)
    p.add_argument("--alpha1", type=float)
    p.add_argument("--beta1", type=float, default=0.0)
    p.add_argument("--noise", choices=["gaussian", "t"], default="gaussian")
    p.add_argument("--nu", type=float)
    p.add_argument("--L", type=float, default=0.5)
    p.add_argument("--U", type=float, default=2.0)
    p.add_argument("--a-set", default="(1,inf)")
    p.add_argument("--b-set", default=None)
    p.add_argument("--lags", type=_nonneg_int, default=20)
    p.add_argument("--draws", type=int, default=200_000)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=["csv", "json", "svg"], default="json")
    p.add_argument("--out")
    return parser


_COMMANDS = {
    "extremogram": cmd_extremogram,
    "cross": cmd_cross,
    "spectrum": cmd_spectrum,
    "simulate": cmd_simulate,
    "tailindex": cmd_tailindex,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except _NUMERIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ExtremogramError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
