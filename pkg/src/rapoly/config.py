"""Runtime switches read from the environment at call time."""

import os


def verify_enabled() -> bool:
    """``RAP_VERIFY=1`` turns on dual-method and post-operation cross-checks."""
    return os.environ.get("RAP_VERIFY", "0") not in ("", "0", "false", "no")
