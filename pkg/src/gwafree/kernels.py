"""Select the coefficient-kernel backend at import time.

The compiled extension is used when it was built; set
``GWAFREE_PURE_PYTHON=1`` to force the pure-Python fallback.
"""
import os

from . import _pykernels

pure = _pykernels

if os.environ.get("GWAFREE_PURE_PYTHON"):
    compiled = None
else:
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

_impl = compiled if compiled is not None else pure

BACKEND = _impl.BACKEND
poly_add = _impl.poly_add
poly_sub = _impl.poly_sub
poly_mul = _impl.poly_mul
poly_divmod = _impl.poly_divmod
taylor_shift = _impl.taylor_shift
scale_var = _impl.scale_var
powmod = _impl.powmod
