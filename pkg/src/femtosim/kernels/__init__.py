"""Radio kernel backend selection.

The compiled extension (``_native``, Cython) is used when it was built;
otherwise the pure-Python ``_pure`` module takes over. Both expose the
same ``RadioKernel`` class and produce bit-identical floats.

Set ``FEMTOSIM_BACKEND=pure`` to force the fallback (used by the
benchmark and the backend-parity tests).
"""

import os

if os.environ.get("FEMTOSIM_BACKEND", "").strip().lower() == "pure":
    from femtosim.kernels._pure import BACKEND, RadioKernel
else:
    try:
        from femtosim.kernels._native import BACKEND, RadioKernel
    except ImportError:
        from femtosim.kernels._pure import BACKEND, RadioKernel

__all__ = ["BACKEND", "RadioKernel"]
