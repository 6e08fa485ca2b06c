"""Command-line front end.

Usage:
    tauberlab validate --a 2 --b 0.5 --c -1
    tauberlab predict --a 2 --b 0.5 --c -1 --psi 100 --order corrected
    tauberlab verify --classical kohlbecker --alpha 2 --B 2 \
        --psi-min 10 --psi-max 1000 --n 16 --out report.txt --csv sweep.csv
    tauberlab verify --a -1 --b -1 --c -1
    tauberlab invert --a 2 --b 0.5 --c -1
    tauberlab sweep --a 2 --b 0.5 --c -1 --csv sweep.csv
    tauberlab classical --variant kasahara --alpha 0.5 --B 1
    tauberlab ck-index --input samples.tsv --tau 3 --epsilon 0.5
    tauberlab measure --file atoms.tsv --variant kohlbecker --lam 10

Exit codes: 0 success / verification passed, 1 verification failed,
2 input or configuration error.

Options may also come from a config file of ``key = value`` lines via
``--config``; explicit flags override file values.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import asymptotics, classical, measures, params, report, targets, transform
from .errors import ConfigParseError, TauberError

__all__ = ["main", "cli"]

_EXIT_VERIFY_FAILED = 1
_EXIT_INPUT_ERROR = 2


def _fail(message: str) -> "click.exceptions.Exit":
    click.echo(f"error: {message}", err=True)
    return click.exceptions.Exit(_EXIT_INPUT_ERROR)


def _load_config(path: str | None) -> dict[str, str]:
    if path is None:
        return {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigParseError(f"cannot read config file {path}: {exc}") from exc
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigParseError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def _pick(flag, cfg: dict[str, str], key: str, cast, default=None):
    """Flag value if given, else config-file value, else default."""
    if flag is not None:
        return flag
    if key in cfg:
        try:
            return cast(cfg[key])
        except ValueError as exc:
            raise ConfigParseError(f"config key {key!r}: {exc}") from exc
    return default


def _build_params(a, b, c, offset, variant, alpha, big_b, beta, rate, cfg):
    """Resolve either raw (a, b, c, offset) or a classical spec to parameters."""
    a = _pick(a, cfg, "a", float)
    b = _pick(b, cfg, "b", float)
    c = _pick(c, cfg, "c", float)
    offset = _pick(offset, cfg, "offset", float, 0.0)
    variant = _pick(variant, cfg, "classical", str)
    raw_given = any(v is not None for v in (a, b, c))
    if variant is not None and raw_given:
        raise ConfigParseError("give either raw --a/--b/--c or --classical, not both")
    if variant is None:
        if a is None or b is None or c is None:
            raise ConfigParseError("need --a, --b and --c (or --classical ...)")
        return params.validate(a, b, c, offset)
    spec = _build_classical(variant, alpha, big_b, beta, rate, cfg)
    return classical.to_unified(spec).params


def _build_classical(variant, alpha, big_b, beta, rate, cfg):
    variant = variant.lower()
    alpha = _pick(alpha, cfg, "alpha", float)
    big_b = _pick(big_b, cfg, "B", float)
    beta = _pick(beta, cfg, "beta", float)
    rate = _pick(rate, cfg, "rate", float, 1.0)
    if variant == "kohlbecker":
        if alpha is None or big_b is None:
            raise ConfigParseError("kohlbecker needs --alpha and --B")
        return classical.Kohlbecker(alpha=alpha, B=big_b)
    if variant == "debruijn":
        if beta is None or big_b is None:
            raise ConfigParseError("debruijn needs --beta and --B")
        return classical.DeBruijn(beta=beta, B=big_b, rate=rate)
    if variant == "kasahara":
        if alpha is None or big_b is None:
            raise ConfigParseError("kasahara needs --alpha and --B")
        return classical.Kasahara(alpha=alpha, B=big_b)
    raise ConfigParseError(
        f"unknown classical variant {variant!r}; "
        "choose kohlbecker, debruijn or kasahara"
    )


def _write(path: str | None, text: str) -> None:
    if path is not None:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


_param_options = [
    click.option("--a", "a", type=float, default=None, help="primal coefficient a"),
    click.option("--b", "b", type=float, default=None, help="primal exponent b"),
    click.option("--c", "c", type=float, default=None, help="kernel rate c"),
    click.option("--offset", type=float, default=None, help="transform offset"),
    click.option(
        "--classical",
        "variant",
        type=str,
        default=None,
        help="classical variant: kohlbecker | debruijn | kasahara",
    ),
    click.option("--alpha", type=float, default=None, help="classical alpha"),
    click.option("--B", "big_b", type=float, default=None, help="classical B"),
    click.option("--beta", type=float, default=None, help="classical beta"),
    click.option("--rate", type=float, default=None, help="de Bruijn rate constant"),
    click.option("--config", type=str, default=None, help="key = value config file"),
]


def _with_param_options(fn):
    for opt in reversed(_param_options):
        fn = opt(fn)
    return fn


def _grid_options(fn):
    for opt in reversed(
        [
            click.option("--psi-min", type=float, default=None),
            click.option("--psi-max", type=float, default=None),
            click.option("--n", type=int, default=None),
        ]
    ):
        fn = opt(fn)
    return fn


@click.group()
def cli():
    """Numerical laboratory for exponential-type Tauberian equivalences."""


@cli.command("validate")
@_with_param_options
def cmd_validate(a, b, c, offset, variant, alpha, big_b, beta, rate, config):
    """Validate parameters and print the derived dual quantities."""
    try:
        cfg = _load_config(config)
        p = _build_params(a, b, c, offset, variant, alpha, big_b, beta, rate, cfg)
        saddle = params.saddle_analysis(p)
        stated, consistent = params.d_variants(p.a, p.b, p.c)
    except TauberError as exc:
        raise _fail(f"{type(exc).__name__}: {exc}")
    for key, value in (
        ("a", p.a),
        ("b", p.b),
        ("c", p.c),
        ("offset", p.offset),
        ("regime", p.regime.value),
        ("d", p.d),
        ("dual_exp", p.dual_exp),
        ("x_peak", saddle.x_peak),
        ("curvature", saddle.curvature),
        ("d_stated_variant", stated),
    ):
        if isinstance(value, float):
            click.echo(f"{key} = {report.fmt(value)}")
        else:
            click.echo(f"{key} = {value}")


@cli.command("predict")
@_with_param_options
@click.option("--psi", type=float, required=True, help="regime variable psi")
@click.option(
    "--order",
    type=click.Choice(["leading", "corrected"]),
    default="corrected",
    show_default=True,
)
def cmd_predict(a, b, c, offset, variant, alpha, big_b, beta, rate, config, psi, order):
    """Closed-form prediction of log f at a given psi."""
    try:
        cfg = _load_config(config)
        p = _build_params(a, b, c, offset, variant, alpha, big_b, beta, rate, cfg)
        value = transform.predict_log_f(p, psi, order)
    except TauberError as exc:
        raise _fail(f"{type(exc).__name__}: {exc}")
    click.echo(f"predict_log_f({order}) = {report.fmt(value)}")


def _run_verification(a, b, c, offset, variant, alpha, big_b, beta, rate, config,
                      psi_min, psi_max, n, quad_tol):
    cfg = _load_config(config)
    p = _build_params(a, b, c, offset, variant, alpha, big_b, beta, rate, cfg)
    psi_min = _pick(psi_min, cfg, "psi-min", float, 10.0)
    psi_max = _pick(psi_max, cfg, "psi-max", float, 1000.0)
    n = _pick(n, cfg, "n", int, 16)
    grid = asymptotics.make_grid(psi_min, psi_max, n)
    profile = asymptotics.ToleranceProfile(quad_tol=quad_tol)
    target = targets.PurePower(p.a, p.b)
    return asymptotics.verify_equivalence(p, target, grid, profile)


@cli.command("verify")
@_with_param_options
@_grid_options
@click.option("--quad-tol", type=float, default=1e-8, show_default=True)
@click.option("--out", type=str, default=None, help="write report to this path")
@click.option("--csv", "csv_path", type=str, default=None, help="write sample CSV")
def cmd_verify(a, b, c, offset, variant, alpha, big_b, beta, rate, config,
               psi_min, psi_max, n, quad_tol, out, csv_path):
    """Sweep the transform and check the equivalence forward and backward."""
    try:
        rep = _run_verification(a, b, c, offset, variant, alpha, big_b, beta, rate,
                                config, psi_min, psi_max, n, quad_tol)
    except TauberError as exc:
        raise _fail(f"{type(exc).__name__}: {exc}")
    text = report.render_report(rep, title="verify")
    click.echo(text, nl=False)
    _write(out, text)
    _write(csv_path, report.render_samples_csv(rep))
    if not rep.passed:
        raise click.exceptions.Exit(_EXIT_VERIFY_FAILED)


@cli.command("sweep")
@_with_param_options
@_grid_options
@click.option("--quad-tol", type=float, default=1e-8, show_default=True)
@click.option("--csv", "csv_path", type=str, default=None, help="write sample CSV")
def cmd_sweep(a, b, c, offset, variant, alpha, big_b, beta, rate, config,
              psi_min, psi_max, n, quad_tol, csv_path):
    """Emit the sweep sample table without pass/fail judgment."""
    try:
        rep = _run_verification(a, b, c, offset, variant, alpha, big_b, beta, rate,
                                config, psi_min, psi_max, n, quad_tol)
    except TauberError as exc:
        raise _fail(f"{type(exc).__name__}: {exc}")
    csv_text = report.render_samples_csv(rep)
    click.echo(csv_text, nl=False)
    _write(csv_path, csv_text)


@cli.command("invert")
@_with_param_options
@_grid_options
@click.option("--quad-tol", type=float, default=1e-8, show_default=True)
@click.option("--out", type=str, default=None, help="write report to this path")
def cmd_invert(a, b, c, offset, variant, alpha, big_b, beta, rate, config,
               psi_min, psi_max, n, quad_tol, out):
    """Recover (a, b) from the fitted transform sweep and report the gaps."""
    try:
        rep = _run_verification(a, b, c, offset, variant, alpha, big_b, beta, rate,
                                config, psi_min, psi_max, n, quad_tol)
    except TauberError as exc:
        raise _fail(f"{type(exc).__name__}: {exc}")
    text = report.render_report(rep, title="invert")
    click.echo(text, nl=False)
    _write(out, text)
    if rep.a_hat is None:
        raise click.exceptions.Exit(_EXIT_VERIFY_FAILED)
    inverse_ok = all(
        chk.passed
        for chk in rep.checks
        if chk.name.startswith("inverse_") and chk.passed is not None
    )
    if not inverse_ok:
        raise click.exceptions.Exit(_EXIT_VERIFY_FAILED)


@cli.command("classical")
@click.option("--variant", type=str, required=True)
@click.option("--alpha", type=float, default=None)
@click.option("--B", "big_b", type=float, default=None)
@click.option("--beta", type=float, default=None)
@click.option("--rate", type=float, default=None)
@click.option("--config", type=str, default=None)
def cmd_classical(variant, alpha, big_b, beta, rate, config):
    """Reduce a classical spec and certify its coefficient identity."""
    try:
        cfg = _load_config(config)
        spec = _build_classical(variant, alpha, big_b, beta, rate, cfg)
        red = classical.to_unified(spec)
        d, coeff, gap = classical.coefficient_identity_check(spec)
    except TauberError as exc:
        raise _fail(f"{type(exc).__name__}: {exc}")
    p = red.params
    for key, value in (
        ("variant", variant.lower()),
        ("a", p.a),
        ("b", p.b),
        ("c", p.c),
        ("offset", p.offset),
        ("regime", p.regime.value),
        ("unified_d", d),
        ("classical_coefficient", coeff),
        ("rel_gap", gap),
        ("lambda_exponent", red.lambda_exponent),
        ("lambda_map", red.lambda_map),
    ):
        if isinstance(value, float):
            click.echo(f"{key} = {report.fmt(value)}")
        else:
            click.echo(f"{key} = {value}")


@cli.command("ck-index")
@click.option("--input", "input_path", type=str, required=True,
              help="two-column file: x<TAB>U(x)")
@click.option("--tau", type=float, default=None,
              help="run the pinching diagnostic at this index")
@click.option("--epsilon", "eps", type=float, multiple=True,
              help="epsilons for the diagnostic (repeatable)")
def cmd_ck_index(input_path, tau, eps):
    """Log-quotient index estimates from tabulated (x, U) samples."""
    try:
        m = measures.load_measure(input_path)  # same two-column format
        samples = list(zip(m.locations, m.masses))
        result = asymptotics.ck_index(samples)
    except TauberError as exc:
        raise _fail(f"{type(exc).__name__}: {exc}")
    click.echo("x tau_hat")
    for x, t in result.points:
        click.echo(f"{report.fmt(x)} {report.fmt(t)}")
    click.echo(f"tau_at_top = {report.fmt(result.tau_at_top)}")
    click.echo(f"spread_last_quarter = {report.fmt(result.spread_last_quarter)}")
    if tau is None:
        return
    try:
        diag = asymptotics.class_m_check(samples, tau, tuple(eps) or (0.5, 1.0))
    except TauberError as exc:
        raise _fail(f"{type(exc).__name__}: {exc}")
    for chk in diag.epsilon_checks:
        click.echo(
            f"epsilon {report.fmt(chk.epsilon)}: upper {chk.upper_verdict.value}, "
            f"lower {chk.lower_verdict.value}"
        )
    click.echo(f"consistent_with_tau = {diag.consistent}")
    if not diag.consistent:
        raise click.exceptions.Exit(_EXIT_VERIFY_FAILED)


@cli.command("measure")
@click.option("--file", "path", type=str, required=True,
              help="two-column atom file: location<TAB>mass")
@click.option("--variant", type=click.Choice(["kohlbecker", "kasahara"]),
              required=True)
@click.option("--lam", type=float, multiple=True, required=True,
              help="transform argument lambda (repeatable)")
def cmd_measure(path, variant, lam):
    """Exponential transform of a tabulated measure at given lambdas."""
    try:
        m = measures.load_measure(path)
        fn = (
            measures.measure_transform_kohlbecker
            if variant == "kohlbecker"
            else measures.measure_transform_kasahara
        )
        values = [(x, fn(m, x)) for x in lam]
    except TauberError as exc:
        raise _fail(f"{type(exc).__name__}: {exc}")
    click.echo("lambda log_M")
    for x, v in values:
        click.echo(f"{report.fmt(x)} {report.fmt(v)}")


def main() -> None:
    try:
        # With standalone_mode off, click returns Exit codes instead of
        # calling sys.exit, letting us own the exit-code contract.
        rv = cli.main(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(_EXIT_INPUT_ERROR)
    except click.exceptions.Abort:
        sys.exit(_EXIT_INPUT_ERROR)
    if isinstance(rv, int) and rv != 0:
        sys.exit(rv)


if __name__ == "__main__":
    main()
