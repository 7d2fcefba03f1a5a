"""
Run Configuration (:mod:`~stirlab.parameters`)
==========================================================================

Configure experiment runs.

.. autosummary::
    InvalidParameterError
    RunConfig
    fetch_config_template
    parse_level

"""
from __future__ import annotations

import dataclasses
import math
import os
from fractions import Fraction
from pathlib import Path
from typing import Optional

import yaml

from .exact_arith import MIN_PRECISION_BITS


#: Registered experiment names, in report order.
EXPERIMENT_NAMES = (
    'stirling',
    'demoivre',
    'middle-binomial',
    'wallis',
    'trapezoid',
    'median-density',
    'poisson-truncated',
    'poisson-ratio',
    'poisson-mad',
    'gamma-truncated',
    'gamma-ratio',
    'binomial-truncated',
    'binomial-ratio',
    'binomial-mad',
    'random-walk',
    'irwin-hall-sn',
    'irwin-hall-in',
    'irwin-hall-bn',
    'laplace-gamma',
    'bic-poisson-single',
    'bic-poisson-sample',
    'bic-exponential',
    'bic-binomial',
    'all',
)

GRID_KINDS = ('geometric', 'linear')
FORMATS = ('csv', 'json')

#: Environment variable overriding the default precision.
PRECISION_ENV_VAR = 'STIRLAB_PRECISION_BITS'

_TMPL_CONFIG_FILE = Path(__file__).parent/"resources"/"runconfig_template.yml"


class InvalidParameterError(ValueError):
    """Exception raised when a run parameter is invalid.

    """


def fetch_config_template(format, ret_defaults=False):
    """Fetch the template run configuration.

    Parameters
    ----------
    format : {'text', 'dict'}
        Template format, either the file text or a dictionary.
    ret_defaults : bool, optional
        If `True` (default is `False`), also return the parameters with
        pre-set defaults.

    Returns
    -------
    template : str or dict
        Template run configuration.
    defaults : dict, optional
        Pre-set default parameters, returned only when `ret_defaults`
        is `True`.

    Raises
    ------
    ValueError
        When `format` is not recognised.

    """
    text = _TMPL_CONFIG_FILE.read_text()
    if format == 'text':
        template = text
    elif format == 'dict':
        template = yaml.safe_load(text)
    else:
        raise ValueError(f"Invalid template format: {format=}.")

    if not ret_defaults:
        return template

    defaults = {
        key: value
        for key, value in yaml.safe_load(text).items()
        if value is not None
    }
    return template, defaults


def parse_level(value):
    """Parse a truncation level.

    Parameters
    ----------
    value : str, int, float or :class:`fractions.Fraction`
        Positive rational (e.g. ``'1/2'``, ``0.5``, ``2``) or ``'inf'``.

    Returns
    -------
    :class:`fractions.Fraction` or float
        Exact positive level, or ``math.inf``.

    Raises
    ------
    :class:`~stirlab.parameters.InvalidParameterError`
        When the value is not a positive rational or infinity.

    """
    if isinstance(value, str) \
            and value.strip().lower() in ('inf', 'infinity', '+inf'):
        return math.inf
    if isinstance(value, float) and math.isinf(value) and value > 0:
        return math.inf
    try:
        level = Fraction(value.strip() if isinstance(value, str) else value)
    except (TypeError, ValueError, OverflowError) as err:
        raise InvalidParameterError(
            f"Invalid truncation level: c={value!r}."
        ) from err
    if level <= 0:
        raise InvalidParameterError(
            f"Truncation level must be positive: c={value!r}."
        )
    return level


@dataclasses.dataclass
class RunConfig:
    """Run configuration of an experiment.

    Parameters
    ----------
    experiment : str
        Experiment name (see :data:`EXPERIMENT_NAMES`).
    n_min, n_max : int, optional
        Grid bounds (default is `None`, meaning experiment defaults).
    grid_kind : {'geometric', 'linear'}, optional
        Grid kind (default is 'geometric').
    points : int, optional
        Number of grid points (default is `None`).
    c : :class:`fractions.Fraction` or float, optional
        Truncation level (default is 1).
    precision_bits : int, optional
        Precision in bits (default is 256).
    format : {'csv', 'json'}, optional
        Report format (default is 'csv').
    output_path, gnuplot_path : str or :class:`pathlib.Path`, optional
        Report and gnuplot script paths (default is `None`).
    assert_ : bool, optional
        If `True` (default is `False`), check acceptance properties.
    workers : int, optional
        Number of worker threads (default is 1).
    progress : bool, optional
        If `True` (default is `False`), show progress bars.
    verbose : int, optional
        Logging level (default is 20).

    """

    experiment: str
    n_min: Optional[int] = None
    n_max: Optional[int] = None
    grid_kind: str = 'geometric'
    points: Optional[int] = None
    c: object = Fraction(1)
    precision_bits: int = 256
    format: str = 'csv'
    output_path: Optional[object] = None
    gnuplot_path: Optional[object] = None
    assert_: bool = False
    workers: int = 1
    progress: bool = False
    verbose: int = 20

    @classmethod
    def from_dict(cls, config_dict, environ=None):
        """Build a run configuration from a dictionary of parameters.

        Unset (`None`) entries fall back to the environment (precision
        only) and then to defaults.

        Parameters
        ----------
        config_dict : dict
            Parameters, using ``'assert'`` or ``'assert_'`` for the
            acceptance switch.
        environ : dict, optional
            Environment (default is `None`, meaning :data:`os.environ`).

        Returns
        -------
        :class:`~stirlab.parameters.RunConfig`
            Validated run configuration.

        Raises
        ------
        :class:`~stirlab.parameters.InvalidParameterError`
            When a parameter is unknown or invalid.

        """
        environ = os.environ if environ is None else environ
        params = dict(config_dict)
        if 'assert' in params:
            switch = params.pop('assert')
            if params.get('assert_') is None:
                params['assert_'] = switch

        field_names = {field.name for field in dataclasses.fields(cls)}
        unknown = set(params) - field_names
        if unknown:
            raise InvalidParameterError(
                f"Unknown run parameters: {sorted(unknown)}."
            )

        params = {key: val for key, val in params.items() if val is not None}
        if 'precision_bits' not in params and environ.get(PRECISION_ENV_VAR):
            try:
                params['precision_bits'] = int(environ[PRECISION_ENV_VAR])
            except ValueError as err:
                raise InvalidParameterError(
                    f"Invalid {PRECISION_ENV_VAR} value: "
                    f"{environ[PRECISION_ENV_VAR]!r}."
                ) from err

        if 'experiment' not in params:
            raise InvalidParameterError("Experiment name is not set.")

        config = cls(**params)
        config.validate()
        return config

    @classmethod
    def from_file(cls, config_filepath, overrides=None, environ=None):
        """Build a run configuration from a YAML file, with optional
        overriding parameters taking precedence.

        Parameters
        ----------
        config_filepath : str or :class:`pathlib.Path`
            YAML configuration file path.
        overrides : dict, optional
            Overriding parameters; `None` values are ignored.
        environ : dict, optional
            Environment (default is `None`, meaning :data:`os.environ`).

        Returns
        -------
        :class:`~stirlab.parameters.RunConfig`
            Validated run configuration.

        """
        try:
            with open(config_filepath) as config_file:
                config_dict = yaml.safe_load(config_file) or {}
        except (OSError, yaml.YAMLError) as err:
            raise InvalidParameterError(
                f"Cannot read configuration file: {config_filepath}."
            ) from err
        if not isinstance(config_dict, dict):
            raise InvalidParameterError(
                f"Configuration file is not a mapping: {config_filepath}."
            )

        for key, val in (overrides or {}).items():
            if val is not None:
                config_dict[key] = val

        return cls.from_dict(config_dict, environ=environ)

    def validate(self):
        """Validate and normalise the run configuration in place.

        Raises
        ------
        :class:`~stirlab.parameters.InvalidParameterError`
            When any parameter is invalid.

        """
        if self.experiment not in EXPERIMENT_NAMES:
            raise InvalidParameterError(
                f"Unknown experiment: experiment={self.experiment!r}."
            )

        for name in ('n_min', 'n_max', 'points'):
            value = getattr(self, name)
            if value is None:
                continue
            if isinstance(value, bool) or not isinstance(value, int) \
                    or value < 1:
                raise InvalidParameterError(
                    f"`{name}` must be a positive integer: {value!r}."
                )
        if self.n_min is not None and self.n_max is not None \
                and self.n_min > self.n_max:
            raise InvalidParameterError(
                f"`n_min` exceeds `n_max`: {self.n_min} > {self.n_max}."
            )

        if self.grid_kind not in GRID_KINDS:
            raise InvalidParameterError(
                f"Unknown grid kind: grid_kind={self.grid_kind!r}."
            )
        if self.format not in FORMATS:
            raise InvalidParameterError(
                f"Unknown report format: format={self.format!r}."
            )

        if isinstance(self.precision_bits, bool) \
                or not isinstance(self.precision_bits, int) \
                or self.precision_bits < MIN_PRECISION_BITS:
            raise InvalidParameterError(
                "Precision must be an integer of at least "
                f"{MIN_PRECISION_BITS} bits: {self.precision_bits!r}."
            )
        if isinstance(self.workers, bool) \
                or not isinstance(self.workers, int) or self.workers < 1:
            raise InvalidParameterError(
                f"`workers` must be a positive integer: {self.workers!r}."
            )

        self.c = parse_level(self.c)
        self.assert_ = bool(self.assert_)
        self.progress = bool(self.progress)

        return self
