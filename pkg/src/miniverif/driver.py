"""The ``miniverif`` executable.

Registers the bundled plugins, hands the command line to the kernel and
prints the consolidated report.  Logs go to stderr, the report to stdout.
"""

from __future__ import annotations

import sys
from typing import Callable, Optional, Sequence, TextIO

from .kernel_services.errors import UsageError
from .kernel_services.report import render
from .kernel_services.session import EXIT_USAGE, Kernel
from .plugins import callgraph, const, eva, rte

# lexicographic by plugin name; execution order comes from the flags
DEFAULT_PLUGINS: Sequence[Callable[[Kernel], None]] = (
    callgraph.register, const.register, eva.register, rte.register,
)


def main(argv: Optional[Sequence[str]] = None,
         plugins: Sequence[Callable[[Kernel], None]] = DEFAULT_PLUGINS,
         stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    kernel = Kernel(stderr)
    for register in plugins:
        register(kernel)
    try:
        config = kernel.parse_command_line(argv)
    except UsageError as exc:
        print(f"miniverif: {exc}", file=stderr)
        print("try 'miniverif -help'", file=stderr)
        return EXIT_USAGE
    if config.help:
        stdout.write(kernel.help_text() + "\n")
        return 0
    if not config.files:
        print("miniverif: no input files", file=stderr)
        return EXIT_USAGE
    report = kernel.run(config)
    if report.properties is not None:
        stdout.write(render(report.properties, config["-report-format"]))
    return report.exit_code


def main_entry() -> None:
    sys.exit(main())
