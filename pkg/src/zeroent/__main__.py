# File Chain (see DEVELOPER.md):
# Doc Version: v1.0.0
# Date Modified: 2026-10-19
#
# - Called by: Python interpreter when running `python -m zeroent`
# - Reads from: None (entry point only)
# - Writes to: None (calls main() and exits with its return code)
# - Calls into: src/zeroent/main.main()
"""Allow running the package with python -m zeroent (same as the zeroent console script)."""
import sys

from zeroent.main import main

sys.exit(main())
