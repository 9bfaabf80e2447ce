"""Entry points for programs embedding the kernel (the driver, tests).

Plugins do not need this module: they receive a KernelContext.
"""

from ..kernel_internals.lifecycle import (  # noqa: F401
    EXIT_FAILURE, EXIT_LOAD, EXIT_OK, EXIT_UNPROVED, EXIT_USAGE, ExitReport,
    Kernel, Stage,
)
from ..kernel_internals.options import Config  # noqa: F401
