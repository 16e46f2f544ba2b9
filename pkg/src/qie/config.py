"""Run configuration: defaults, `key = value` config files, flag precedence.

Defaults reproduce the reference two-level engine: levels (2, 1),
omega_fb = 1, omega3 = 2*omega4 = 4, tau_h = tau_fb = 1, gamma = 2*alpha = 2,
T_h = 1.  The dissipation coefficient has no canonical published value; the
default sigma_h = 0.1 (natural units) is a documented choice.
"""

from __future__ import annotations

from typing import Any, Callable

from .errors import DomainError
from .workstats import COEFF_PAIRS

DEFAULTS: dict[str, Any] = {
    "levels": (2.0, 1.0),
    "omega_fb": 1.0,
    "omega3": 4.0,
    "omega4": 2.0,
    "t_h": 1.0,
    "sigma_h": 0.1,
    "tau_h": 1.0,
    "tau_fb": 1.0,
    "alpha": 1.0,
    "gamma": 2.0,
    "coeffs": "auto",
    "merge_tol": 1e-9,
    "atom_cap": 10**7,
    "kappa_min": 1.0,
    "kappa_max": 1.0e4,
    "kappa_points": 40,
    "t1_min": 0.1,
    "t1_max": 2.0,
    "t1_points": 30,
    "t2_min": 0.05,
    "t2_max": 1.0,
    "t2_points": 30,
    "eta_ratios": (0.5, 0.75, 0.95),
    "format": "csv",
    "out": None,
}


def _parse_float_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise DomainError(f"expected comma-separated numbers, got {text!r}") from exc
    if not values:
        raise DomainError("expected at least one number")
    return values


def _parse_format(text: str) -> str:
    if text not in ("csv", "json"):
        raise DomainError(f"format must be 'csv' or 'json', got {text!r}")
    return text


_PARSERS: dict[str, Callable[[str], Any]] = {
    "levels": _parse_float_list,
    "eta_ratios": _parse_float_list,
    "coeffs": str,
    "format": _parse_format,
    "out": str,
    "atom_cap": int,
    "kappa_points": int,
    "t1_points": int,
    "t2_points": int,
}


def parse_value(key: str, text: str) -> Any:
    if key not in DEFAULTS:
        raise DomainError(f"unknown configuration key {key!r}")
    parser = _PARSERS.get(key, float)
    try:
        return parser(text)
    except DomainError:
        raise
    except ValueError as exc:
        raise DomainError(f"invalid value for {key!r}: {text!r}") from exc


def parse_config_file(path: str) -> dict[str, Any]:
    """Parse a plain `key = value` config file with `#` comments."""
    values: dict[str, Any] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            key, _, text = line.partition("=")
            values[key.strip()] = parse_value(key.strip(), text.strip())
    return values


def effective_config(
    file_values: dict[str, Any] | None = None,
    flag_values: dict[str, Any] | None = None,
) -> dict[str, Any]:
    """Merge defaults < config file < command-line flags (None flags ignored)."""
    config = dict(DEFAULTS)
    for source in (file_values or {}), (flag_values or {}):
        for key, value in source.items():
            if key not in DEFAULTS:
                raise DomainError(f"unknown configuration key {key!r}")
            if value is not None:
                config[key] = value
    return config


def parse_coeffs(text: str) -> tuple[float, float] | None:
    """Coefficient-pair selector: 'auto' (adjudicated by the exact
    distribution), a named pair ('paper' = (5,3), 'derived' = (4,2)), or an
    explicit 'a,b'."""
    if text == "auto":
        return None
    if text in COEFF_PAIRS:
        return COEFF_PAIRS[text]
    parts = text.split(",")
    if len(parts) == 2:
        try:
            return float(parts[0]), float(parts[1])
        except ValueError:
            pass
    raise DomainError(
        f"coeffs must be 'auto', 'paper', 'derived' or 'a,b', got {text!r}"
    )
