"""Backend selection for the hot kernels.

The compiled ``_speedups`` extension is used when it imports; otherwise the
pure-Python versions in ``_pure`` take over. Set ``FIBSTEGO_PURE=1`` to
force the fallback.
"""

import os

from . import _pure

if os.environ.get("FIBSTEGO_PURE", "").strip() not in ("", "0"):
    _impl = _pure
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = _pure

BACKEND = _impl.BACKEND
permutation = _impl.permutation
splitmix64_stream = _impl.splitmix64_stream
sisr_encode = _impl.sisr_encode
sisr_decode = _impl.sisr_decode


def available_backends():
    """Every importable kernel module, pure first."""
    found = [_pure]
    try:
        from . import _speedups
    except ImportError:
        pass
    else:
        found.append(_speedups)
    return found
