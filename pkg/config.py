import os
import configparser
from pathlib import Path

from rich.console import Console

from channels import default_mixing
from errors import ConfigError
from optimizer import OptimizerConfig
from sweep import GridAxis, SweepConfig
from utils import parse_measures

# Initialize Rich console
console = Console()

DEFAULT_CONFIG_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'config.ini')

DEFAULTS = {
    'j_min': -4.0,
    'j_max': 4.0,
    'j_steps': 81,
    't_min': 0.1,
    't_max': 3.0,
    't_steps': 59,
    'channel': "none",
    'p': None,
    'gamma': 0.0,
    'measures': "qd,gqd1,conc",
    'seed': 0,
    'workers': 1,
    'grid_resolution': 24,
    'iterations': 200,
    'restarts': 8,
    'tolerance': 1e-9,
}

# ini key -> (section, settings key, getter name)
_KEYS = {
    'J_MIN': ('SWEEP', 'j_min', 'getfloat'),
    'J_MAX': ('SWEEP', 'j_max', 'getfloat'),
    'J_STEPS': ('SWEEP', 'j_steps', 'getint'),
    'T_MIN': ('SWEEP', 't_min', 'getfloat'),
    'T_MAX': ('SWEEP', 't_max', 'getfloat'),
    'T_STEPS': ('SWEEP', 't_steps', 'getint'),
    'CHANNEL': ('SWEEP', 'channel', 'get'),
    'P': ('SWEEP', 'p', 'getfloat'),
    'GAMMA': ('SWEEP', 'gamma', 'getfloat'),
    'MEASURES': ('SWEEP', 'measures', 'get'),
    'SEED': ('SWEEP', 'seed', 'getint'),
    'WORKERS': ('SWEEP', 'workers', 'getint'),
    'GRID_RESOLUTION': ('OPTIMIZER', 'grid_resolution', 'getint'),
    'ITERATIONS': ('OPTIMIZER', 'iterations', 'getint'),
    'RESTARTS': ('OPTIMIZER', 'restarts', 'getint'),
    'TOLERANCE': ('OPTIMIZER', 'tolerance', 'getfloat'),
}


def load_config(config_file=None):
    """Load settings from config.ini on top of the built-in defaults.

    A missing default file just means defaults; a missing file named
    explicitly with --config is an error.
    """
    settings = dict(DEFAULTS)
    path = config_file or DEFAULT_CONFIG_FILE
    if not os.path.exists(path):
        if config_file:
            raise ConfigError(f"config file not found: {config_file}")
        return settings

    config = configparser.ConfigParser()
    try:
        config.read(path, encoding="utf-8")
        for key, (section, name, getter) in _KEYS.items():
            if section in config and key in config[section]:
                settings[name] = getattr(config[section], getter)(key)
    except (configparser.Error, ValueError) as e:
        raise ConfigError(f"bad config file {path}: {e}") from e
    return settings


def save_config(settings, config_file=None):
    """Save settings to config.ini"""
    config = configparser.ConfigParser()
    config['SWEEP'] = {}
    config['OPTIMIZER'] = {}
    for key, (section, name, _) in _KEYS.items():
        # None means 'channel default' and is left out of the file
        if settings[name] is not None:
            config[section][key] = str(settings[name])

    path = config_file or DEFAULT_CONFIG_FILE
    with open(path, 'w', encoding="utf-8") as f:
        config.write(f)
    console.print(f"[green]Configuration saved to {path}[/green]")
    return path


def apply_overrides(settings, args):
    """Command-line flags win over the file; unset flags are None"""
    merged = dict(settings)
    for name in DEFAULTS:
        value = getattr(args, name, None)
        if value is not None:
            merged[name] = value
    return merged


def build_optimizer_config(settings):
    return OptimizerConfig(
        grid_resolution=int(settings['grid_resolution']),
        iterations=int(settings['iterations']),
        restarts=int(settings['restarts']),
        seed=int(settings['seed']),
        tolerance=float(settings['tolerance']),
    ).validate()


def build_sweep_config(settings, oracle=False, output_path=None):
    """Turn a settings dict into a validated SweepConfig"""
    try:
        measures = parse_measures(settings['measures'])
    except ValueError as e:
        raise ConfigError(str(e)) from e

    channel = str(settings['channel']).lower()
    cfg = SweepConfig(
        j_axis=GridAxis(float(settings['j_min']), float(settings['j_max']), int(settings['j_steps'])),
        t_axis=GridAxis(float(settings['t_min']), float(settings['t_max']), int(settings['t_steps'])),
        channel=channel,
        p=default_mixing(channel) if settings['p'] is None else float(settings['p']),
        gamma=float(settings['gamma']),
        measures=measures,
        oracle=bool(oracle),
        output_path=Path(output_path) if output_path else None,
        workers=int(settings['workers']),
        optimizer=build_optimizer_config(settings),
    )
    return cfg.validate()
