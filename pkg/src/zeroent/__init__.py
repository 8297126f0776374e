"""
File Chain (see DEVELOPER.md):
Doc Version: v1.0.0
Date Modified: 2026-10-19

- Called by: Python import system (when `import zeroent` is executed), entry_points (CLI command)
- Reads from: importlib.metadata (package metadata), config.py, main.py
- Writes to: None (package initialization only, exports public API)
- Calls into: importlib.metadata.metadata, config.Config, main.main

Purpose: Package initialization for zeroent. Defines the public API exports
         (Config, main) and loads package metadata (__version__, __description__).

Blast Radius: MEDIUM - Package-level changes affect all imports
              - Changes to __all__ affect public API surface
              - Metadata loading affects version reporting

Package Structure:
    - main.py: CLI entry point and global options
    - reports.py: one report per subcommand
    - exact.py: Smith normal form, kernels, polynomials, Sturm root isolation
    - lattice.py: Gram-matrix lattices, discriminant groups, overlattices, roots
    - isometry.py: elliptic/parabolic/hyperbolic isometries and entropy
    - fibration.py: Kodaira types, the extremal tables, heights
    - dualgraph.py: dual graphs of (-2)-curves, fibers and contradiction scans
    - catalog.py: the built-in graph catalog and its replay
    - finitefield.py, weierstrass.py: Weierstrass families over Q, Q(i), GF(2^k)
    - render.py: DOT export through templates/
    - config.py, models.py, colorlog.py: configuration, errors, log formatting

Entry Points:
    - zeroent: CLI command (calls main.main())
    - python -m zeroent
"""

import importlib.metadata as importlib_metadata

from .config import Config
from .main import main

try:
    _metadata = importlib_metadata.metadata("zeroent")
    __version__ = _metadata["Version"]
    __description__ = _metadata["Summary"]
except importlib_metadata.PackageNotFoundError:
    # running from a source checkout
    __version__ = "0.0.0"
    __description__ = "Verify the zero-entropy Enriques classification computations"


__all__ = ["Config", "main"]
