"""Test :mod:`~stirlab.parameters`.

"""
import math
from fractions import Fraction

import pytest

from stirlab.parameters import (
    EXPERIMENT_NAMES,
    PRECISION_ENV_VAR,
    InvalidParameterError,
    RunConfig,
    fetch_config_template,
    parse_level,
)


# Returns the subset of default parameters from the template.
@pytest.fixture
def default_parameters():
    return {
        'grid_kind': 'geometric',
        'c': 1,
        'workers': 1,
        'format': 'csv',
        'assert': False,
        'progress': False,
        'verbose': 20,
    }


@pytest.mark.parametrize(
    "source, ret_defaults",
    [
        ('text', False),
        ('dict', True),
    ]
)
def test_fetch_config_template(source, ret_defaults, default_parameters):

    fetched = fetch_config_template(source, ret_defaults=ret_defaults)
    if ret_defaults:
        template, defaults = fetched
    else:
        template = fetched

    # Check for 'text' source and exit early; else assume 'dict' source.
    if source == 'text':
        assert template.startswith("# @file runconfig_template.yml")
        return

    assert defaults == default_parameters, (
        "Fetched template default parameters do not match "
        "pre-set default parameters."
    )

    # Check `template` minus `defaults` are unset.
    for param_name in set(template) - set(defaults):
        assert template[param_name] is None, (
            "Non-NoneType non-default parameter value "
            "found in configuration template."
        )


def test_fetch_config_template_invalid():
    with pytest.raises(ValueError):
        fetch_config_template('toml')


def test_RunConfig_from_template():
    template = fetch_config_template('dict')
    template['experiment'] = 'wallis'

    config = RunConfig.from_dict(template, environ={})
    assert config.experiment == 'wallis'
    assert config.c == Fraction(1)
    assert config.precision_bits == 256
    assert config.assert_ is False
    assert config.n_min is None and config.n_max is None


def test_RunConfig_from_file(test_config_dir):
    config = RunConfig.from_file(
        test_config_dir/"test_runconfig.yml", environ={}
    )
    assert config.experiment == 'stirling'
    assert (config.n_min, config.n_max) == (2, 64)
    assert config.c == Fraction(1, 2)
    assert config.precision_bits == 128
    assert config.workers == 2
    assert config.format == 'json'
    assert config.assert_ is True
    assert config.verbose == 40


def test_RunConfig_from_file_overrides(test_config_dir):
    config = RunConfig.from_file(
        test_config_dir/"test_runconfig.yml",
        overrides={'experiment': 'demoivre', 'n_max': 32, 'c': None},
        environ={PRECISION_ENV_VAR: '512'},
    )
    assert config.experiment == 'demoivre'
    assert config.n_max == 32
    assert config.c == Fraction(1, 2)

    # The file value takes precedence over the environment.
    assert config.precision_bits == 128


def test_RunConfig_from_file_invalid(test_output_dir):
    with pytest.raises(InvalidParameterError):
        RunConfig.from_file(test_output_dir/"missing.yml")

    listing = test_output_dir/"listing.yml"
    listing.write_text("- stirling\n- wallis\n")
    with pytest.raises(InvalidParameterError):
        RunConfig.from_file(listing)


@pytest.mark.parametrize(
    "environ, precision_bits",
    [
        # Test case 1: default precision
        ({}, 256),
        # Test case 2: environment precision
        ({PRECISION_ENV_VAR: '96'}, 96),
        # Test case 3: empty environment value
        ({PRECISION_ENV_VAR: ''}, 256),
    ],
)
def test_RunConfig_precision_environ(environ, precision_bits):
    config = RunConfig.from_dict({'experiment': 'stirling'}, environ=environ)
    assert config.precision_bits == precision_bits


def test_RunConfig_precision_explicit():
    config = RunConfig.from_dict(
        {'experiment': 'stirling', 'precision_bits': 64},
        environ={PRECISION_ENV_VAR: '96'},
    )
    assert config.precision_bits == 64


@pytest.mark.parametrize(
    "params, environ",
    [
        # Test case 1: missing experiment
        ({}, {}),
        # Test case 2: unknown experiment
        ({'experiment': 'euler'}, {}),
        # Test case 3: unknown parameter
        ({'experiment': 'stirling', 'boxsize': 1000}, {}),
        # Test case 4: reversed bounds
        ({'experiment': 'stirling', 'n_min': 10, 'n_max': 2}, {}),
        # Test case 5: non-positive bound
        ({'experiment': 'stirling', 'n_min': 0}, {}),
        # Test case 6: precision too low
        ({'experiment': 'stirling', 'precision_bits': 32}, {}),
        # Test case 7: invalid environment precision
        ({'experiment': 'stirling'}, {PRECISION_ENV_VAR: 'high'}),
        # Test case 8: unknown grid kind
        ({'experiment': 'stirling', 'grid_kind': 'chebyshev'}, {}),
        # Test case 9: unknown format
        ({'experiment': 'stirling', 'format': 'xml'}, {}),
        # Test case 10: no workers
        ({'experiment': 'stirling', 'workers': 0}, {}),
        # Test case 11: negative truncation level
        ({'experiment': 'stirling', 'c': -1}, {}),
    ],
)
def test_RunConfig_invalid(params, environ):
    with pytest.raises(InvalidParameterError):
        RunConfig.from_dict(params, environ=environ)


@pytest.mark.parametrize(
    "value, expected",
    [
        ('1/2', Fraction(1, 2)),
        (' 3 ', Fraction(3)),
        (0.25, Fraction(1, 4)),
        (2, Fraction(2)),
        ('inf', math.inf),
        ('Infinity', math.inf),
        (float('inf'), math.inf),
    ],
)
def test_parse_level(value, expected):
    assert parse_level(value) == expected


@pytest.mark.parametrize("value", ['0', '-1/2', 'one', None, float('-inf')])
def test_parse_level_invalid(value):
    with pytest.raises(InvalidParameterError):
        parse_level(value)


def test_experiment_names():
    assert EXPERIMENT_NAMES[-1] == 'all'
    assert len(set(EXPERIMENT_NAMES)) == len(EXPERIMENT_NAMES)
