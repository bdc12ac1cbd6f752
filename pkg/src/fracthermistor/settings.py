"""Loader for flat ``key = value`` run configurations.

A configuration file looks like::

    # fractional thermistor run
    alpha = 0.5
    lambda = 0.5
    T = 1.0
    K = 64
    N = 24
    conductivity = shifted_sine
    u0 = sinpi
    source = none

Blank lines and ``#`` comments are ignored. Unknown keys, missing required
keys and unparsable values raise :class:`ConfigurationError` naming the
key. A ``source`` naming a manufactured solution builds its forcing and
replaces ``u0`` with the solution at t = 0.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Tuple, Union

from pydantic import ValidationError

from fracthermistor.exceptions import ConfigurationError
from fracthermistor.models.config import ProblemConfig

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ("alpha", "lambda", "T", "K", "N")

_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


def _parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    msg = f"expected a boolean, got {text!r}"
    raise ValueError(msg)


def _parse_int(text: str) -> int:
    value = float(text)
    if not value.is_integer():
        msg = f"expected an integer, got {text!r}"
        raise ValueError(msg)
    return int(value)


# File key -> (parser, ProblemConfig path).
_KEYS: Dict[str, Tuple[Callable[[str], Any], Tuple[str, ...]]] = {
    "alpha": (float, ("alpha",)),
    "lambda": (float, ("lam",)),
    "T": (float, ("T",)),
    "K": (_parse_int, ("K",)),
    "N": (_parse_int, ("N",)),
    "conductivity": (str, ("conductivity",)),
    "u0": (str, ("u0",)),
    "source": (str, ("source",)),
    "picard_tol": (float, ("picard", "tol")),
    "picard_max_iter": (_parse_int, ("picard", "max_iter")),
    "nonlocal_alpha0_factor": (_parse_bool, ("nonlocal_alpha0_factor",)),
    "linearization": (str, ("linearization",)),
    "quadrature_extra": (_parse_int, ("quadrature_extra",)),
    "scheme_form": (str, ("scheme_form",)),
}

_FIELD_TO_KEY = {path: key for key, (_, path) in _KEYS.items()}


def parse_settings(text: str) -> Dict[str, Any]:
    """Parse configuration text into typed values keyed by file key.

    Args:
        text: File contents.

    Returns:
        Parsed values in file order.

    Raises:
        ConfigurationError: On malformed lines, unknown or repeated keys,
            unparsable values or missing required keys.
    """
    values: Dict[str, Any] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep or not key:
            raise ConfigurationError(
                message=f"line {number} is not of the form 'key = value'", details=raw.strip()
            )
        if key not in _KEYS:
            raise ConfigurationError(message="unknown key", key=key)
        if key in values:
            raise ConfigurationError(message="key given twice", key=key)
        parser = _KEYS[key][0]
        try:
            values[key] = parser(value)
        except ValueError as e:
            raise ConfigurationError(message="cannot parse value", key=key, details=str(e)) from e
    for key in REQUIRED_KEYS:
        if key not in values:
            raise ConfigurationError(message="missing required key", key=key)
    return values


def build_config(values: Mapping[str, Any]) -> ProblemConfig:
    """Validate parsed values into a configuration, resolving named presets.

    Args:
        values: Output of :func:`parse_settings`.

    Returns:
        The resolved configuration.

    Raises:
        ConfigurationError: If validation fails; ``key`` names the file key.
    """
    data: Dict[str, Any] = {}
    for key, value in values.items():
        path = _KEYS[key][1]
        if len(path) == 2:
            data.setdefault(path[0], {})[path[1]] = value
        else:
            data[path[0]] = value
    source = data.pop("source", "none")
    try:
        config = ProblemConfig.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        location = tuple(str(part) for part in error["loc"])
        key = _FIELD_TO_KEY.get(location[:2]) or _FIELD_TO_KEY.get(location[:1], location[0])
        raise ConfigurationError(message=error["msg"], key=key) from e

    if source.lower() != "none":
        from fracthermistor.verify import manufactured_config

        config = manufactured_config(config, source)
    logger.debug("Resolved configuration: %s", config.model_dump())
    return config


def load_config(path: Union[str, Path]) -> ProblemConfig:
    """Read and resolve a configuration file.

    Args:
        path: Path of the file.

    Returns:
        The resolved configuration.

    Raises:
        ConfigurationError: If the file cannot be read or is invalid.

    Example:
        >>> config = load_config("run.cfg")
        >>> config.alpha
        0.5
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError(message=f"cannot read {path}", details=str(e)) from e
    return build_config(parse_settings(text))


def dump_settings(config: ProblemConfig) -> Dict[str, Any]:
    """Return the file-key view of a configuration, as recorded in manifests.

    Feeding the result back through :func:`build_config` reproduces the
    configuration.
    """
    dumped = config.model_dump()
    values: Dict[str, Any] = {}
    for key, (_, path) in _KEYS.items():
        value = dumped[path[0]]
        values[key] = value[path[1]] if len(path) == 2 else value
    return values
