"""
File Chain (see DEVELOPER.md):
Doc Version: v1.0.0
Date Modified: 2026-10-19

- Called by: main.py, reports.py, catalog.py
- Purpose: Configuration loading and defaults management

Zeroent Configuration - Verification Limits and Defaults

PURPOSE:
    Holds the tunables of the verification run: enumeration caps, the width
    of isolating intervals, catalog fan-out and the defaults of the graph and
    char-2 commands. Loaded from TOML, falls back to defaults.

WHO READS ME:
    - main.py / reports.py: Config.load() during bootstrap, -w writes defaults
    - catalog.py: thread count for the replay

DEPENDENCIES:
    - serde: TOML serialization/deserialization (@deserialize, @serialize)
    - serde.toml: from_toml(), to_toml()

CONFIG PARAMETERS:
    - overlattice_order_cap: largest discriminant group enumerated (2^16)
    - root_width_exponent: isolating intervals are refined to 2^-k
    - threads: catalog replay workers (ZEROENT_THREADS overrides)
    - scan_rule: allowed-fiber list used by `graph --scan`
    - char2_field: default field of the char2 command
    - transvection_power_bound: powers checked for infinite order

FILE FORMAT:
    config.toml example:
    ```toml
    overlattice_order_cap = 65536
    root_width_exponent = 32
    threads = 1
    scan_rule = "prop_alternative"
    char2_field = "F16"
    transvection_power_bound = 64
    ```
"""

import logging
import os
from dataclasses import dataclass

from serde import deserialize, serialize, SerdeError
from serde.toml import from_toml, to_toml

_LOGGER = logging.getLogger(__name__)

THREADS_ENV = "ZEROENT_THREADS"


@deserialize
@serialize
@dataclass
class Config:
    """verification run configuration"""

    overlattice_order_cap: int = 1 << 16
    root_width_exponent: int = 32
    threads: int = 1
    scan_rule: str = "prop_alternative"
    char2_field: str = "F16"
    transvection_power_bound: int = 64

    @classmethod
    def load(cls, filename: str) -> "Config":
        """load the configuration from the given file"""
        try:
            with open(filename, encoding="utf-8") as handle:
                cfg = from_toml(cls, handle.read())
            _LOGGER.info("Configuration loaded from file %s", filename)
        except (FileNotFoundError, TypeError, ValueError, SerdeError) as exc:
            if not isinstance(exc, FileNotFoundError):
                _LOGGER.error(exc)
            cfg = cls()
            _LOGGER.warning("using configuration defaults")
        return cfg

    def save(self, filename: str):
        """save the configuration to the given file"""
        with open(filename, "w+", encoding="utf-8") as handle:
            handle.write(to_toml(self))

    def effective_threads(self) -> int:
        """thread cap, ZEROENT_THREADS wins over the file"""
        raw = os.environ.get(THREADS_ENV)
        if raw:
            try:
                return max(1, int(raw))
            except ValueError:
                _LOGGER.warning("ignoring %s=%r, not an integer", THREADS_ENV, raw)
        return max(1, self.threads)
