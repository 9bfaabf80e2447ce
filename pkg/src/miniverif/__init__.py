"""miniverif: a plugin-based static analysis framework for MiniC.

The package is split in areas, mirroring how plugin authors should look
for things:

``libraries``
    generic code with no analysis knowledge (type witnesses, ...).
``kernel_services``
    what plugins are expected to use: the AST, the property database,
    the interval toolkit, logging, parameters and the kernel context.
``kernel_internals``
    lifecycle engine, option parser, value registry and the MiniC
    front-end.  Not meant for plugins.
``plugins``
    bundled analyzers.  The kernel never imports this package.
"""

__version__ = "0.1.0"
