"""Backend selection: compiled extension if importable, NumPy fallback otherwise.

Set TWOPOP_BACKEND=python to force the fallback (used by the benchmark and by
tests that exercise both paths).
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("TWOPOP_BACKEND", "").lower() == "python":
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - build without the extension
        _impl = _kernel_py

advance = _impl.advance
BACKEND_NAME: str = _impl.BACKEND_NAME
