"""Exception hierarchy shared by every module in the toolkit."""


class ToolkitError(Exception):
    """Base class for all errors raised deliberately by this package."""


class InputError(ToolkitError):
    """Raised when a caller supplies data that violates a documented precondition."""


class PrecisionCapError(ToolkitError):
    """Raised when certified refinement would exceed the hard precision cap.

    The cap exists so that exact computations fail loudly instead of
    consuming unbounded memory on adversarial inputs.
    """
