import json
import numpy as np
import yaml
from pathlib import Path
from loguru import logger

from fcutils.path import from_yaml

from helmwave import paths
from helmwave.fixtures import (
    ALPHA,
    OMEGA,
    MU,
    M1,
    M2,
    TOL,
    MAX_ITER,
    BETA,
    COARSE_KH,
    NUM_THETA,
    SIZE_GUARD,
    SCHEMES,
    SMOOTHERS,
)
from helmwave.solvers.multilevel import ALGORITHMS

TABLES = tuple(f"table{n}" for n in range(1, 8))
FIGURES = tuple(f"fig{n}" for n in range(1, 6))
EXPERIMENTS = TABLES + FIGURES + ("custom",)
PROBLEMS = ("bessel", "gaussian")


class ConfigError(ValueError):
    def __init__(self, field, message):
        self.field = field
        super().__init__(f"Invalid config field '{field}': {message}")


# ---------------------------------------------------------------------------- #
#                                    parsers                                   #
# ---------------------------------------------------------------------------- #


def _number(kind):
    def parse(value):
        if isinstance(value, bool):
            raise TypeError(f"{value!r} is a boolean")
        if kind is complex and isinstance(value, str):
            return complex(value.replace(" ", ""))
        if kind is int and float(value) != int(value):
            raise TypeError(f"{value!r} is not an integer")
        return kind(value)

    return parse


def _choice(options):
    def parse(value):
        if value not in options:
            raise TypeError(f"{value!r} is not one of {options}")
        return value

    return parse


def _flag(value):
    if not isinstance(value, bool):
        raise TypeError(f"{value!r} is not true or false")
    return value


def _text(value):
    return str(value)


# field: (parser, is a list, range check or None, default)
FIELDS = dict(
    experiment=(_choice(EXPERIMENTS), False, None, None),
    problem=(_choice(PROBLEMS), False, None, "bessel"),
    kappa=(_number(float), True, lambda k: k > 0, [100.0]),
    kappa2=(_number(float), True, lambda k: k > 0, [180.0]),
    q=(_number(float), True, lambda q: q > 1, [3.0]),
    p=(_number(int), True, lambda p: p in (1, 2), [1]),
    levels=(_number(int), True, lambda level: 0 <= level <= 12, [2]),
    coarse_cells=(_number(int), False, lambda n: n >= 1, None),
    algorithm=(_choice(ALGORITHMS), False, None, "alg1"),
    scheme=(_choice(tuple(SCHEMES)), True, None, None),
    smoother=(_choice(SMOOTHERS), False, None, "jacobi"),
    m1=(_number(int), False, lambda m: m >= 1, M1),
    m2=(_number(int), True, lambda m: m >= 1, [M2]),
    gamma_e=(_number(complex), False, lambda g: g.imag >= 0, None),
    beta=(_number(float), True, lambda b: b >= 0, [BETA]),
    omega=(_number(float), False, lambda w: 0 < w <= 1, OMEGA),
    alpha=(_number(float), False, lambda a: a > 0, ALPHA),
    mu=(_number(float), False, lambda m: 0 <= m <= 1, MU),
    tol=(_number(float), False, lambda tol: 0 < tol < 1, TOL),
    max_iter=(_number(int), False, lambda n: n >= 1, MAX_ITER),
    t=(_number(float), True, lambda t: t > 0, [0.8]),
    sigma=(_number(complex), False, lambda s: s.imag >= 0, None),
    sigma_shift=(_number(float), True, lambda s: s >= 0, [0.01]),
    h=(_number(float), False, lambda h: 0 < h < 1, 0.004),
    num_theta=(_number(int), False, lambda n: n >= 2, NUM_THETA),
    save_matrices=(_flag, False, None, False),
    output_path=(_text, False, None, None),
)


def _parse_field(field, value):
    parse, is_list, check, _ = FIELDS[field]
    values = value if isinstance(value, (list, tuple)) else [value]
    if not is_list and isinstance(value, (list, tuple)):
        raise ConfigError(field, f"expected a single value, got {value}")
    if is_list and not values:
        raise ConfigError(field, "empty list")

    parsed = []
    for item in values:
        try:
            item = parse(item)
        except (TypeError, ValueError) as error:
            raise ConfigError(field, str(error))
        if check is not None and not check(item):
            raise ConfigError(field, f"{item!r} is out of range")
        parsed.append(item)
    return parsed if is_list else parsed[0]


# ---------------------------------------------------------------------------- #
#                                    config                                    #
# ---------------------------------------------------------------------------- #


class ExperimentConfig:
    def __init__(self, **fields):
        """
            Validated parameters of one experiment. Every field is checked
            against its range in declaration order, so the error names the
            first invalid field.
        """
        if "experiment" not in fields:
            raise ConfigError("experiment", "missing")

        unknown = [key for key in fields if key not in FIELDS]
        if unknown:
            raise ConfigError(unknown[0], "unknown field")

        self.source = None
        self.fields = []
        for field, (_, _, _, default) in FIELDS.items():
            if field in fields and fields[field] is not None:
                value = _parse_field(field, fields[field])
                self.fields.append(field)
            else:
                value = list(default) if isinstance(default, list) else default
            setattr(self, field, value)

        if self.scheme is None:
            self.scheme = [self.algorithm]

    def __repr__(self):
        return f"{self.experiment} config | " + " ".join(
            f"{field}={getattr(self, field)}" for field in self.fields
        )

    @property
    def is_figure(self):
        return self.experiment in FIGURES

    def to_dict(self):
        """ resolved parameters, complex values as strings """
        resolved = {}
        for field in FIELDS:
            value = getattr(self, field)
            if isinstance(value, complex):
                value = str(value)
            resolved[field] = value
        return resolved

    # ------------------------------- sizes ---------------------------------- #
    def coarse_cells_for(self, kappa, p):
        if self.coarse_cells is not None:
            return max(self.coarse_cells // p, 1)
        return coarse_cells(kappa, p)

    def largest_problem(self):
        """ estimated fine DOF count of the largest run """
        if self.is_figure:
            return 0
        kappas = self.kappa if self.problem == "bessel" else self.kappa2
        largest = 0
        for kappa in kappas:
            for p in self.p:
                fine = 2 ** max(self.levels)
                cells = self.coarse_cells_for(kappa, p) * fine
                largest = max(largest, (p * cells + 1) ** 2)
        return largest

    def check_size(self, override=False):
        dofs = self.largest_problem()
        if dofs > SIZE_GUARD and not override:
            raise ConfigError(
                "levels",
                f"the largest run has {dofs} fine DOFs, above the "
                f"{SIZE_GUARD:.0e} guard (pass --override-size-guard)",
            )
        if dofs > SIZE_GUARD:
            logger.warning(f"Size guard overridden: {dofs} fine DOFs")

    # ------------------------------ loading --------------------------------- #
    @classmethod
    def load(cls, config):
        """
            Reads a config from a YAML or JSON file, or a bundled config by
            bare name ('table6').

            Arguments:
                config: str or Path

            Returns:
                ExperimentConfig
        """
        filepath = resolve(config)
        try:
            if filepath.suffix == ".json":
                with open(filepath) as fin:
                    content = json.load(fin)
            else:
                content = from_yaml(str(filepath))
        except (ValueError, yaml.YAMLError) as error:
            raise ConfigError("file", f"cannot parse {filepath}: {error}")

        if not isinstance(content, dict):
            raise ConfigError(
                "file", f"{filepath} must hold one key: value per line"
            )
        for key, value in content.items():
            if isinstance(value, dict):
                raise ConfigError(key, "nested values are not supported")

        logger.debug(f"Loaded config {filepath}")
        config = cls(**content)
        config.source = str(filepath)
        return config


def coarse_cells(kappa, p, limit=COARSE_KH):
    """
        Coarsest cells per side for a wave number: the smallest power of two
        with κh0/p <= limit. P2 gets half the P1 count, so both orders share
        the DOF counts.
    """
    cells = 2 ** max(int(np.ceil(np.log2(kappa / limit))), 0)
    return max(cells // p, 1)


def resolve(config):
    filepath = Path(config)
    if filepath.exists():
        return filepath

    bundled = paths.configs_folder / f"{filepath.stem}.yaml"
    if filepath.suffix == "" and bundled.exists():
        return bundled
    raise ConfigError("file", f"no config file at {config}")


def bundled_configs():
    return sorted(path.stem for path in paths.configs_folder.glob("*.yaml"))
