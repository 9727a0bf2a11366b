"""Exception types shared across the package."""

from __future__ import annotations

import hashlib
from pathlib import Path


class RbxError(Exception):
    """Base class for all errors raised by rbx."""


class PreconditionError(RbxError, ValueError):
    """An operation was called on inputs outside its contract."""


class ResourceError(RbxError, ValueError):
    """A size guard tripped (dimension, edge count, tree size)."""


class LoadError(RbxError, ValueError):
    """A text file did not match its format."""


class BudgetExceeded(RbxError):
    """A search or enumeration stopped before it was exhausted."""

    def __init__(self, message: str, *, produced: int = 0):
        super().__init__(message)
        self.produced = produced


class InvariantViolation(RbxError, RuntimeError):
    """A step that the underlying argument guarantees was impossible.

    These carry the full embedding trace and the inputs in their text formats,
    because each one is a candidate counterexample and must be kept.
    """

    def __init__(self, message: str, *, trace: list[str] | None = None,
                 inputs: dict[str, str] | None = None):
        super().__init__(message)
        self.trace = list(trace or [])
        self.inputs = dict(inputs or {})

    def dump(self) -> str:
        parts = [f"# violation: {self.args[0]}"]
        for name in sorted(self.inputs):
            parts.append(f"# --- {name} ---")
            parts.append(self.inputs[name].rstrip("\n"))
        parts.append("# --- trace ---")
        parts.extend(self.trace)
        return "\n".join(parts) + "\n"

    def save(self, directory: str | Path) -> Path:
        """Write the dump to ``directory/counterexample-<sha256 prefix>.txt``."""
        return save_dump(self.dump(), directory)


def save_dump(text: str, directory: str | Path) -> Path:
    digest = hashlib.sha256(text.encode()).hexdigest()[:16]
    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    out = path / f"counterexample-{digest}.txt"
    out.write_text(text)
    return out
