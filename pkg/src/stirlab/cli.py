r"""
Command-Line Interface (:mod:`~stirlab.cli`)
==========================================================================

Run experiments from the command line and write their convergence
reports.

Examples
--------
To tabulate the Stirling ratio on powers of two up to 4096 as CSV, run:

.. code-block:: console

    $ stirlab stirling --n-min 1 --n-max 4096 --format csv

To check the acceptance properties of the Wallis experiment, run:

.. code-block:: console

    $ stirlab wallis --n-max 10000 --assert

Exit codes are 0 on success, 1 on an internal error, 2 on invalid
arguments and 3 on a failed acceptance check; when running ``all``, the
worst code wins.

.. autosummary::
    configure
    run
    main
    write_csv
    write_json
    write_gnuplot

"""
import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np
from tqdm import tqdm

from .convergence import EvaluationError
from .exact_arith import DomainError, PrecisionContext, PrecisionError
from .experiments import EXPERIMENTS, AcceptanceError, run_experiment
from .logger import setup_logger
from .parameters import (
    EXPERIMENT_NAMES,
    FORMATS,
    GRID_KINDS,
    InvalidParameterError,
    RunConfig,
)


EXIT_SUCCESS = 0
EXIT_INTERNAL_ERROR = 1
EXIT_INVALID_ARGUMENTS = 2
EXIT_ACCEPTANCE_FAILURE = 3

CSV_HEADER = 'experiment,n,c,value,target,abs_error,rel_error'

_INVALID_ARGUMENT_ERRORS = (
    InvalidParameterError, DomainError, PrecisionError,
)


# ========================================================================
# Configuration
# ========================================================================

def _build_parser():
    parser = argparse.ArgumentParser(
        prog='stirlab',
        description=(
            "Tabulate Stirling-type limits against exact and "
            "high-precision oracles."
        ),
    )

    parser.add_argument(
        'experiment', type=str, nargs='?', choices=EXPERIMENT_NAMES,
        metavar='EXPERIMENT',
        help="experiment name, or 'all' (may be set in --config instead)"
    )

    parser.add_argument(
        '--config', type=str, default=None, metavar='FILE',
        help="YAML run configuration file; flags take precedence"
    )

    parser.add_argument(
        '--n-min', type=int, default=None,
        help="smallest grid point (default: experiment default)"
    )
    parser.add_argument(
        '--n-max', type=int, default=None,
        help="largest grid point (default: experiment default)"
    )
    parser.add_argument(
        '--grid', type=str, choices=GRID_KINDS, default=None,
        dest='grid_kind',
        help="grid kind (default: geometric)"
    )
    parser.add_argument(
        '--points', type=int, default=None,
        help="number of grid points (default: powers of two)"
    )

    parser.add_argument(
        '--c', type=str, default=None,
        help="truncation level, a positive rational or 'inf' (default: 1)"
    )
    parser.add_argument(
        '--precision', type=int, default=None, dest='precision_bits',
        help="precision in bits (default: $STIRLAB_PRECISION_BITS or 256)"
    )
    parser.add_argument(
        '--workers', type=int, default=None,
        help="number of worker threads per grid (default: 1)"
    )

    parser.add_argument(
        '--format', type=str, choices=FORMATS, default=None,
        help="report format (default: csv)"
    )
    parser.add_argument(
        '-o', '--output', type=str, default=None, dest='output_path',
        help="report file path (default: standard output)"
    )
    parser.add_argument(
        '--gnuplot', type=str, default=None, dest='gnuplot_path',
        help="gnuplot script path for a log-log error plot of the report"
    )

    parser.add_argument(
        '--assert', action='store_true', default=None, dest='assert_',
        help="check acceptance properties and exit with code 3 on failure"
    )
    parser.add_argument(
        '--progress', action='store_true', default=None,
        help="show progress bars"
    )
    parser.add_argument(
        '--verbose', type=int, default=None,
        help="logging level as an integer (default: 20)"
    )

    return parser


def configure(argv=None, environ=None):
    """Configure an experiment run from command-line arguments.

    Parameters
    ----------
    argv : list of str, optional
        Command-line arguments (default is `None`, meaning
        :data:`sys.argv`).
    environ : dict, optional
        Environment (default is `None`, meaning :data:`os.environ`).

    Returns
    -------
    :class:`~stirlab.parameters.RunConfig`
        Run configuration.

    Raises
    ------
    :class:`~stirlab.parameters.InvalidParameterError`
        When the configuration is invalid.
    SystemExit
        On argument usage errors (exit code 2) or ``--help``.

    """
    args = vars(_build_parser().parse_args(argv))

    config_filepath = args.pop('config')
    if config_filepath is not None:
        return RunConfig.from_file(
            config_filepath, overrides=args, environ=environ
        )
    return RunConfig.from_dict(args, environ=environ)


# ========================================================================
# Output
# ========================================================================

def write_csv(reports, stream):
    """Write reports as CSV with a single header row.

    Parameters
    ----------
    reports : list of :class:`~stirlab.convergence.ConvergenceReport`
        Reports.
    stream : file-like
        Text stream.

    """
    rows = [row for report in reports for row in report.csv_rows()]
    ncol = CSV_HEADER.count(',') + 1
    table = np.array(rows, dtype=object).reshape(-1, ncol)
    np.savetxt(
        stream, table, fmt='%s', delimiter=',', newline='\n',
        header=CSV_HEADER, comments=''
    )


def write_json(reports, stream):
    """Write reports as a JSON document ``{"reports": [...]}``.

    """
    json.dump(
        {'reports': [report.to_dict() for report in reports]}, stream,
        indent=2
    )
    stream.write('\n')


def write_gnuplot(reports, csv_filepath, script_filepath):
    """Write a gnuplot script plotting |error| against n on log-log
    axes for every sequence in a CSV report.

    Parameters
    ----------
    reports : list of :class:`~stirlab.convergence.ConvergenceReport`
        Reports written to `csv_filepath`.
    csv_filepath : str or :class:`pathlib.Path`
        CSV report file path.
    script_filepath : str or :class:`pathlib.Path`
        Script file path.

    """
    csv_filepath = Path(csv_filepath)
    lines = [
        "# Log-log absolute error plot of a Stirlab CSV report.",
        "set datafile separator ','",
        "set logscale xy",
        "set format y '%.0e'",
        "set xlabel 'n'",
        "set ylabel '|value - target|'",
        "set key outside right",
    ]

    names = [report.name for report in reports if report.rows]
    if names:
        series = [
            f"'{csv_filepath.as_posix()}' skip 1 "
            f"using (strcol(1) eq '{name}' ? $2 : NaN):6 "
            f"with linespoints title '{name}'"
            for name in names
        ]
        lines.append("plot " + ", \\\n     ".join(series))

    Path(script_filepath).write_text("\n".join(lines) + "\n")


def _write_reports(reports, config):
    writer = write_csv if config.format == 'csv' else write_json
    if config.output_path is None:
        writer(reports, sys.stdout)
    else:
        with open(config.output_path, 'w', newline='') as output_file:
            writer(reports, output_file)

    if config.gnuplot_path is not None:
        write_gnuplot(reports, config.output_path, config.gnuplot_path)


# ========================================================================
# Run
# ========================================================================

def _exit_code(err):
    if isinstance(err, _INVALID_ARGUMENT_ERRORS):
        return EXIT_INVALID_ARGUMENTS
    if isinstance(err, EvaluationError) \
            and isinstance(err.__cause__, _INVALID_ARGUMENT_ERRORS):
        return EXIT_INVALID_ARGUMENTS
    return EXIT_INTERNAL_ERROR


def _report_error(message, logger):
    if logger:
        logger.error(message)
    else:
        print(message, file=sys.stderr)


def _experiment_config(config, name):
    if config.experiment != 'all':
        return config
    return dataclasses.replace(
        config, experiment=name, n_min=None, n_max=None,
        grid_kind='geometric', points=None
    )


def run(config, logger=None):
    """Run the configured experiment(s) and write the report(s).

    Parameters
    ----------
    config : :class:`~stirlab.parameters.RunConfig`
        Validated run configuration.
    logger : :class:`logging.LoggerAdapter`, optional
        Logger from :func:`~stirlab.logger.setup_logger` (default is
        `None`); errors go to standard error either way.

    Returns
    -------
    int
        Exit code, the worst over all experiments run.

    """
    if config.gnuplot_path is not None \
            and (config.format != 'csv' or config.output_path is None):
        _report_error(
            "A gnuplot script requires a CSV report written with --output.",
            logger
        )
        return EXIT_INVALID_ARGUMENTS

    try:
        ctx = PrecisionContext(bits=config.precision_bits)
    except PrecisionError as err:
        _report_error(str(err), logger)
        return EXIT_INVALID_ARGUMENTS

    if config.experiment == 'all':
        names = list(EXPERIMENTS)
    else:
        names = [config.experiment]

    exit_code = EXIT_SUCCESS
    reports = []
    for name in tqdm(names, desc='experiments',
                     disable=not config.progress or len(names) == 1):
        try:
            result = run_experiment(
                name, _experiment_config(config, name), ctx, logger=logger
            )
        except Exception as err:
            _report_error(f"Experiment {name!r} failed: {err}", logger)
            exit_code = max(exit_code, _exit_code(err))
            continue

        reports.extend(result.reports)
        if config.assert_:
            try:
                result.check()
            except AcceptanceError as err:
                _report_error(str(err), logger)
                exit_code = max(exit_code, EXIT_ACCEPTANCE_FAILURE)

    try:
        _write_reports(reports, config)
    except OSError as err:
        _report_error(f"Cannot write report: {err}", logger)
        exit_code = max(exit_code, EXIT_INTERNAL_ERROR)

    return exit_code


def main(argv=None):
    """Entry point of the ``stirlab`` command.

    Parameters
    ----------
    argv : list of str, optional
        Command-line arguments (default is `None`, meaning
        :data:`sys.argv`).

    Returns
    -------
    int
        Exit code.

    """
    try:
        config = configure(argv)
    except InvalidParameterError as err:
        print(f"stirlab: error: {err}", file=sys.stderr)
        return EXIT_INVALID_ARGUMENTS
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_SUCCESS

    logger = setup_logger(log_level=config.verbose, stream=sys.stderr)

    return run(config, logger=logger)
