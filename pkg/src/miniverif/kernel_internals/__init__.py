"""Kernel internals: lifecycle engine, option parsing, value registry and
the MiniC front-end.  Plugins should not import from here; everything
they need is re-exported by :mod:`miniverif.kernel_services`.
"""
