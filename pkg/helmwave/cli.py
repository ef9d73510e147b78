import sys
import time
import platform
from pathlib import Path

import click
import numpy
import pandas
import scipy
from loguru import logger
from rich.logging import RichHandler
from pyinspect.utils import timestamp

from fcutils.path import to_json

from helmwave import __version__, paths
from helmwave.experiments.config import ExperimentConfig, ConfigError
from helmwave.experiments.tables import run_table
from helmwave.experiments.figures import run_figure
from helmwave.experiments.summary import (
    print_table_summary,
    print_figure_summary,
)

EXIT_OK, EXIT_CONFIG, EXIT_INTERNAL = 0, 1, 2


def setup_loggers(output_dir, verbose):
    """ console at info (debug when verbose) plus a log file per run """
    logger.configure(
        handlers=[
            {
                "sink": RichHandler(markup=True),
                "format": "{message}",
                "level": "DEBUG" if verbose else "INFO",
            }
        ]
    )
    return logger.add(
        str(output_dir / "helmwave.log"),
        level="DEBUG",
        format="{time:YYYY-MM-DD at HH:mm} | {level} | {message}",
    )


def _output_dir(config, output_dir):
    if output_dir is not None:
        folder = Path(output_dir)
    elif config.output_path is not None:
        folder = Path(config.output_path)
    else:
        folder = paths.default_output_folder / config.experiment
    folder.mkdir(parents=True, exist_ok=True)
    return folder


def _versions():
    return dict(
        helmwave=__version__,
        python=platform.python_version(),
        numpy=numpy.__version__,
        scipy=scipy.__version__,
        pandas=pandas.__version__,
    )


# ---------------------------------------------------------------------------- #
#                                    running                                   #
# ---------------------------------------------------------------------------- #


def run_experiment(
    config_file,
    output_dir=None,
    override_size_guard=False,
    verbose=False,
    figures_only=False,
):
    """
        Runs one experiment and writes its CSV, the log and the manifest.

        Arguments:
            config_file: str. Path to a config or name of a bundled one
            output_dir: str. Output folder, overrides the config's
            override_size_guard: bool. Accept runs above the DOF guard
            verbose: bool. Debug logging, residual histories, cycle trace
            figures_only: bool. Reject solver tables

        Returns:
            exit_code: int. 0 success, 1 invalid config, 2 internal error
    """
    sink = None
    try:
        config = ExperimentConfig.load(config_file)
        if figures_only and not config.is_figure:
            raise ConfigError(
                "experiment",
                f"{config.experiment} is not a Fourier analysis figure",
            )
        config.check_size(override=override_size_guard)

        folder = _output_dir(config, output_dir)
        sink = setup_loggers(folder, verbose)
        with logger.contextualize(experiment=config.experiment):
            logger.info(
                f"Starting {config.experiment} at {timestamp()} in {folder}"
            )
            logger.debug(str(config))
            written = _execute(config, folder, verbose)
    except ConfigError as error:
        logger.error(str(error))
        return EXIT_CONFIG
    except Exception as error:
        logger.exception(f"Experiment failed: {error}")
        return EXIT_INTERNAL
    finally:
        if sink is not None:
            logger.remove(sink)

    logger.info(f"Wrote {len(written)} files to {folder}")
    return EXIT_OK


def _execute(config, folder, verbose):
    start = time.perf_counter()
    results = folder / f"{config.experiment}.csv"
    if config.is_figure:
        curves = run_figure(config)
        curves.to_csv(results, index=False, lineterminator="\n")
        print_figure_summary(curves, title=config.experiment)
        written = [results]
    else:
        table, written = run_table(config, output_dir=folder, verbose=verbose)
        table.to_csv(results, index=False, lineterminator="\n")
        print_table_summary(table, title=config.experiment)
        written = [results] + written

    manifest = folder / "manifest.json"
    written.append(manifest)
    to_json(
        manifest,
        dict(
            experiment=config.experiment,
            config_file=config.source,
            parameters=config.to_dict(),
            versions=_versions(),
            finished=timestamp(),
            wall_time=time.perf_counter() - start,
            files=[str(path.name) for path in written],
        ),
    )
    return written


# ---------------------------------------------------------------------------- #
#                                   commands                                   #
# ---------------------------------------------------------------------------- #


@click.group(name="helmwave")
@click.version_option(__version__)
def cli():
    """ Multilevel preconditioners for Helmholtz problems: experiments """


@cli.command()
@click.argument("config")
@click.option("-o", "--output-dir", default=None, help="Output folder.")
@click.option(
    "--override-size-guard",
    is_flag=True,
    default=False,
    help="Allow runs above 5e6 fine DOFs.",
)
@click.option("-v", "--verbose", is_flag=True, default=False)
def run(config, output_dir, override_size_guard, verbose):
    """ Runs a table or figure experiment from a config file """
    sys.exit(
        run_experiment(
            config,
            output_dir=output_dir,
            override_size_guard=override_size_guard,
            verbose=verbose,
        )
    )


@cli.command()
@click.argument("config")
@click.option("-o", "--output-dir", default=None, help="Output folder.")
@click.option("-v", "--verbose", is_flag=True, default=False)
def lfa(config, output_dir, verbose):
    """ Computes the Fourier analysis curves of a figure config """
    sys.exit(
        run_experiment(
            config, output_dir=output_dir, verbose=verbose, figures_only=True
        )
    )


def main():
    cli()


if __name__ == "__main__":
    main()
