"""Error types shared across the package.

Exit-code mapping used by the CLI: usage errors exit 2 (argparse),
ResourceCapExceeded exits 3, InvariantViolation exits 4.
"""


class ResourceCapExceeded(RuntimeError):
    """An enumeration or product would exceed a configured cap."""


class InvariantViolation(RuntimeError):
    """An identity that must hold was falsified on a concrete input.

    This is the loudest alarm the engine has: it means either a bug or a
    counterexample.  It must never be downgraded to a warning.
    """
