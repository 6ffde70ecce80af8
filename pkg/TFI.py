"""
Command-line interface for the Thomas-Fermi ion series.

Usage:
    python TFI.py tables 1                   # K-series coefficients
    python TFI.py tables t-matrix            # T(-2/3)
    python TFI.py eval --N 0.5 --Z 26        # ion state, with physical units
    python TFI.py plotdata 9 --samples 50    # successive approximations of b(N)
    python TFI.py validate                   # all checks against the published values
    python TFI.py config --set grid 40001    # persist a setting
"""
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional

import click
import pandas as pd

from exceptions import ConvergenceError, DomainError, OracleError, TFIonError
from ion.improved_series import IMPROVED, METHODS, convert_units
from output.document import FORMATS, OutputDocument, git_describe
from output.plot_data import DEFAULT_SAMPLES, FIGURES, plot_data
from output.tables import NEUTRAL_K, TABLES, build_table
from pipeline.pipeline import Pipeline
from reference.reference_tables import REFERENCE_VERSION
from toolbox.Toolbox import Toolbox
from tools.Limit_Checks import LIMIT_CHECKS
from tools.Oracle_Checks import ORACLE_CHECKS
from tools.Series_Checks import SERIES_CHECKS
from tools.Table_Checks import TABLE_CHECKS

# Application constants
VERSION_INFO = "1.0.0"
PROG_NAME = "TFI"
CONFIG_FILE = "config.json"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]
DEFAULT_CHECKS = TABLE_CHECKS + SERIES_CHECKS + LIMIT_CHECKS + ORACLE_CHECKS
DEFAULT_CONFIG = {
    "order": 6,
    "grid": 20001,
    "format": "csv",
    "tol": 1e-4,
    "neutral_K": NEUTRAL_K,
    "x_max": 200.0,
    "rtol": 1e-10,
    "atol": 1e-12,
    "start_offset": 1e-6,
    "limit_tol": 1e-7,
    "limit_t_max": 1e4,
    "limit_max_iter": 200,
    "log_level": "WARNING",
}

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

logger = logging.getLogger(__name__)


class Config:
    """
    Manages application configuration with persistence.
    """

    def __init__(self, config_file: str = CONFIG_FILE):
        """
        Initialize configuration manager.

        Args:
            config_file: Path to the configuration file
        """
        self.config_file = config_file
        self.config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """
        Load configuration from file or create default.

        Keys missing from the file take their default values.

        Returns:
            Dictionary containing configuration
        """
        try:
            if os.path.exists(self.config_file):
                with open(self.config_file, 'r') as f:
                    return {**DEFAULT_CONFIG, **json.load(f)}
            else:
                default_config = dict(DEFAULT_CONFIG)
                self._save_config(default_config)
                return default_config
        except Exception as e:
            logger.error(f"Error loading configuration: {str(e)}")
            # Return default config on error
            return dict(DEFAULT_CONFIG)

    def _save_config(self, config: Dict[str, Any]) -> None:
        """
        Save configuration to file.

        Args:
            config: Configuration dictionary to save
        """
        try:
            with open(self.config_file, 'w') as f:
                json.dump(config, f, indent=4)
        except Exception as e:
            logger.error(f"Error saving configuration: {str(e)}")

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value.

        Args:
            key: Configuration key
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        return self.config.get(key, default)

    def set(self, key: str, value: Any) -> None:
        """
        Set configuration value and save.

        Args:
            key: Configuration key
            value: Configuration value
        """
        self.config[key] = value
        self._save_config(self.config)

    def get_all(self) -> Dict[str, Any]:
        """
        Get all configuration values.

        Returns:
            Dictionary containing all configuration
        """
        return self.config.copy()


def setup_logging(level: str) -> None:
    """Log to stderr at the given level; stdout is reserved for output documents."""
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level.upper())


def parse_value(text: str) -> Any:
    """JSON value if it parses as one, else the text itself."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def document_meta(ctx: click.Context, command: str, **extra) -> Dict[str, Any]:
    settings = ctx.obj["settings"]
    meta = {"command": command, "version": VERSION_INFO, "git": git_describe()}
    meta.update(ctx.obj["pipeline"].describe())
    meta.update({key: settings[key] for key in ("tol", "rtol", "atol")})
    meta.update(extra)
    return meta


def emit(frame: pd.DataFrame, meta: Dict[str, Any], fmt: str) -> None:
    click.echo(OutputDocument(frame, meta, fmt).render(), nl=False)


@click.group()
@click.option("--order", type=int, default=None, help="Order M of the K-series (default from config, 6)")
@click.option("--grid", type=int, default=None, help="Odd node count of the t-grid (default from config, 20001)")
@click.option("--config", "config_file", type=click.Path(dir_okay=False), default=CONFIG_FILE,
              show_default=True, help="Configuration file")
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
              help="Logging level on stderr")
@click.pass_context
def cli(ctx: click.Context, order: Optional[int], grid: Optional[int], config_file: str,
        log_level: Optional[str]):
    """Thomas-Fermi ion radius, ionization potential, binding energy and initial slope as series in N."""
    config = Config(config_file)
    settings = config.get_all()
    if order is not None:
        settings["order"] = order
    if grid is not None:
        settings["grid"] = grid
    setup_logging(log_level or settings["log_level"])
    logger.debug(f"effective settings: {settings}")
    ctx.obj = {"config": config, "settings": settings,
               "pipeline": Pipeline(settings["order"], settings["grid"])}


def format_option(func):
    return click.option("--format", "fmt", type=click.Choice(FORMATS), default=None,
                        help="Output format (default from config, csv)")(func)


@cli.command()
@click.argument("which", type=click.Choice(list(TABLES)))
@format_option
@click.pass_context
def tables(ctx: click.Context, which: str, fmt: Optional[str]) -> int:
    """Print one of the tables: 1, 2, 3, 4, t-matrix or sec5."""
    settings = ctx.obj["settings"]
    options = {"K": settings["neutral_K"]} if which == "2" else {"N": 1.0} if which == "4" else {}
    frame = build_table(which, ctx.obj["pipeline"], **options)
    emit(frame, document_meta(ctx, f"tables {which}", **options), fmt or settings["format"])
    return EXIT_OK


@cli.command(name="eval")
@click.option("--N", "N", type=float, required=True, help="e:p-ratio in (0, 1]")
@click.option("--order", type=int, default=None, help="Truncation order of the N-series (default M-1)")
@click.option("--method", type=click.Choice(METHODS), default=IMPROVED, show_default=True)
@click.option("--Z", "Z", type=int, default=None, help="Nuclear charge, adds physical units")
@format_option
@click.pass_context
def evaluate(ctx: click.Context, N: float, order: Optional[int], method: str, Z: Optional[int],
             fmt: Optional[str]) -> int:
    """Evaluate N, X, b, B, a and K for one ion."""
    state = ctx.obj["pipeline"].state(N, order, method)
    row = {"N": state.N, "X": state.X, "b": state.b, "B": state.B, "a": state.a, "K": state.K}
    if Z is not None:
        physical = convert_units(state, Z)
        row.update({
            "Z": physical.Z,
            "X_bohr": physical.radius_bohr,
            "b_Ry": physical.ionization_rydberg,
            "b_eV": physical.ionization_ev,
            "ZB_Ry": physical.binding_rydberg,
            "ZB_eV": physical.binding_ev,
        })
    meta = document_meta(ctx, "eval", method=method,
                         n_order=ctx.obj["pipeline"].order - 1 if order is None else order)
    emit(pd.DataFrame([row]), meta, fmt or ctx.obj["settings"]["format"])
    return EXIT_OK


@cli.command()
@click.argument("figure", type=click.Choice(list(FIGURES)))
@click.option("--samples", type=click.IntRange(min=1), default=DEFAULT_SAMPLES, show_default=True)
@format_option
@click.pass_context
def plotdata(ctx: click.Context, figure: str, samples: int, fmt: Optional[str]) -> int:
    """Print the sampled curves of one figure, one column per order."""
    frame = plot_data(figure, ctx.obj["pipeline"], samples)
    emit(frame, document_meta(ctx, f"plotdata {figure}", samples=samples), fmt or ctx.obj["settings"]["format"])
    return EXIT_OK


@cli.command()
@click.option("--list", "list_checks", is_flag=True, help="List the checks and exit")
@click.option("--check", "selected", multiple=True, help="Run only this check (repeatable)")
@click.option("--tol", type=float, default=None, help="Bisection tolerance of the critical slope")
@click.pass_context
def validate(ctx: click.Context, list_checks: bool, selected: List[str], tol: Optional[float]) -> int:
    """Run the checks against the published values; exit 0 iff all pass."""
    toolbox = Toolbox(DEFAULT_CHECKS)
    if list_checks:
        click.echo(toolbox.prepare_tool_descriptions())
        return EXIT_OK
    for name in selected:
        if not toolbox.check_tool_exists(name):
            raise click.BadParameter(f"unknown check {name!r}", param_hint="--check")

    settings = dict(ctx.obj["settings"])
    if tol is not None:
        settings["tol"] = tol
    pipeline = ctx.obj["pipeline"]
    if selected:
        results = [toolbox.execute_tool(name, pipeline, settings) for name in selected]
    else:
        results = toolbox.run_all(pipeline, settings)

    for result in results:
        click.echo(result.summary())
        if not result.passed:
            for item, deviation in result.details.items():
                click.echo(f"    {item}: {deviation:.3e}")
    passed = sum(result.passed for result in results)
    click.echo(f"{passed}/{len(results)} checks passed")

    if passed == len(results):
        return EXIT_OK
    if any(isinstance(result.error, (ConvergenceError, OracleError)) for result in results):
        return EXIT_NUMERICAL
    return EXIT_VALIDATION


@cli.command(name="config")
@click.option("--set", "assignment", nargs=2, default=None, metavar="KEY VALUE",
              help="Persist a configuration value")
@click.pass_context
def show_config(ctx: click.Context, assignment: Optional[tuple]) -> int:
    """Print the effective configuration, or persist one value with --set."""
    if assignment:
        key, value = assignment
        ctx.obj["config"].set(key, parse_value(value))
        logger.info(f"configuration {key} set to {value}")
        return EXIT_OK
    click.echo(json.dumps(ctx.obj["settings"], indent=4))
    return EXIT_OK


@cli.command()
def version() -> int:
    """Print the program version, reference data version and build."""
    click.echo(f"{PROG_NAME} {VERSION_INFO} (reference data {REFERENCE_VERSION}, build {git_describe()})")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the command line and map the outcome to an exit code.

    Returns:
        0 success, 1 usage error, 2 validation failure, 3 numerical non-convergence
    """
    try:
        result = cli.main(args=argv, prog_name=PROG_NAME, standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except (DomainError, KeyError, ValueError) as e:
        logger.error(f"Usage error: {str(e)}")
        click.echo(f"Error: {e}", err=True)
        return EXIT_USAGE
    except (ConvergenceError, OracleError) as e:
        logger.error(f"Numerical error: {str(e)}")
        click.echo(f"Error: {e}", err=True)
        return EXIT_NUMERICAL
    except TFIonError as e:
        logger.error(f"Error: {str(e)}")
        click.echo(f"Error: {e}", err=True)
        return EXIT_USAGE
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
