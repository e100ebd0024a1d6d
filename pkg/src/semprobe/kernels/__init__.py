"""Numeric kernel lane selection.

Imports the compiled extension when present, otherwise the numpy fallback.
SEMPROBE_KERNELS=python forces the fallback; SEMPROBE_KERNELS=c requires the
extension and raises if it is missing.  Both lanes agree to float64
rounding; see benchmarks/bench_kernels.py for the speed comparison.
"""

import os

from . import pure

_forced = os.environ.get("SEMPROBE_KERNELS", "").strip().lower()

if _forced in ("python", "pure", "py"):
    _impl = pure
elif _forced == "c":
    from semprobe import _ckernels as _impl  # noqa: F401  (raises if not built)
else:
    try:
        from semprobe import _ckernels as _impl
    except ImportError:
        _impl = pure

LANE = _impl.LANE
softmax_xent = _impl.softmax_xent
cosine_many = _impl.cosine_many
count_exceeding = _impl.count_exceeding


def available_lanes():
    lanes = {"python": pure}
    try:
        from semprobe import _ckernels

        lanes["c"] = _ckernels
    except ImportError:
        pass
    return lanes
