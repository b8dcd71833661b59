# qkernel/__init__.py

__version__ = "0.1"

from .errors import QKernelError
