"""Services offered to plugin developers.

``ast``, ``visitor`` and ``printer`` give access to the typed AST;
``interval`` is the abstract interpretation toolkit; ``properties`` holds
proof obligations and their statuses; ``context`` is the plugin's handle
on the kernel; ``parameters`` and ``log`` cover options and messages.
"""
