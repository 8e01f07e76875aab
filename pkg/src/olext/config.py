"""Search bounds for the irreducibility and splitting certificates.

An optional ``key = value`` file overrides the defaults::

    max_prime = 97
    value_bound = 5
    trial_d = 2, 3, 5, -1

Environment variables are deliberately not consulted.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .poly.upoly import primes

DEFAULT_TRIAL_D = (2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19,
                   -1, -2, -3, -5, -6, -7, -10, -11, -13, -14, -15, -17, -19)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Settings:
    max_prime: int = 97
    value_bound: int = 5
    trial_d: tuple[int, ...] = DEFAULT_TRIAL_D

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(primes(self.max_prime))

    @property
    def values(self) -> tuple[int, ...]:
        out = [0]
        for k in range(1, self.value_bound + 1):
            out += [k, -k]
        return tuple(out)


DEFAULT = Settings()


def parse_config(text: str) -> Settings:
    kw = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or key not in ("max_prime", "value_bound", "trial_d"):
            raise ConfigError(f"line {n}: expected max_prime, value_bound or trial_d = ...")
        try:
            if key == "trial_d":
                kw[key] = tuple(int(x) for x in value.replace(",", " ").split())
            else:
                kw[key] = int(value)
        except ValueError:
            raise ConfigError(f"line {n}: {value!r} is not an integer list") from None
    s = replace(DEFAULT, **kw)
    if s.max_prime < 2 or s.value_bound < 0:
        raise ConfigError("max_prime must be at least 2 and value_bound nonnegative")
    if any(d in (0, 1) for d in s.trial_d):
        raise ConfigError("trial_d entries must differ from 0 and 1")
    return s


def load_config(path) -> Settings:
    with open(path) as fh:
        return parse_config(fh.read())
