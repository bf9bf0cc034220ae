"""Kernel selection and scan-program preparation.

The brute-force oracle compiles an instance into a flat ScanProgram (lookup
tables per constraint, grouped by the position at which each constraint
becomes fully assigned) and hands it to a backend: the compiled Cython kernel
when it was built, the pure-Python twin otherwise.  Setting ZCSP_PURE_PYTHON=1
forces the pure backend.
"""

from __future__ import annotations

import os
from array import array
from dataclasses import dataclass
from functools import lru_cache

from .relations import Instance, Relation

if os.environ.get("ZCSP_PURE_PYTHON"):
    from . import _scan_py as _backend
else:
    try:
        from . import _scan as _backend  # type: ignore[attr-defined]
    except ImportError:
        from . import _scan_py as _backend


def backend_name() -> str:
    return _backend.BACKEND


def load_backend(name: str):
    """Explicit backend lookup, used by tests and the benchmark."""
    if name == "python":
        from . import _scan_py
        return _scan_py
    if name == "cython":
        from . import _scan  # raises ImportError when the extension is absent
        return _scan
    raise ValueError(f"unknown backend {name!r}")


@dataclass(frozen=True)
class ScanProgram:
    """Flattened constraints for the scan backends.

    Constraints are ordered by trigger position (the largest variable index
    in their scope); start[p]..start[p+1] index the constraints checkable
    right after variable p is assigned.
    """

    n: int
    delta: int
    scope_flat: array
    scope_off: array
    strides_flat: array
    table_blob: bytes
    table_off: array
    start: array


@lru_cache(maxsize=4096)
def _relation_table(rel: Relation, delta: int) -> bytes:
    base = delta + 1
    table = bytearray(base ** rel.arity)
    for t in rel.tuples:
        idx = 0
        for v in t:
            idx = idx * base + v
        table[idx] = 1
    return bytes(table)


def prepare_program(inst: Instance) -> ScanProgram:
    n = inst.num_vars
    delta = inst.language.delta
    base = delta + 1
    ordered = sorted(range(len(inst.constraints)),
                     key=lambda ci: (max(inst.constraints[ci].scope), ci))

    scope_flat: list = []
    scope_off = [0]
    strides_flat: list = []
    table_off: list = []
    blob = bytearray()
    triggers = []
    for ci in ordered:
        c = inst.constraints[ci]
        if c.relation.arity == 0:
            raise ValueError("0-ary constraints must be resolved before scanning")
        triggers.append(max(c.scope))
        scope_flat.extend(c.scope)
        scope_off.append(len(scope_flat))
        stride = 1
        local = []
        for _ in range(c.relation.arity):
            local.append(stride)
            stride *= base
        strides_flat.extend(reversed(local))
        table = _relation_table(c.relation, delta)
        table_off.append(len(blob))
        blob.extend(table)

    start = [0] * (n + 1)
    for t in triggers:
        start[t + 1] += 1
    for p in range(n):
        start[p + 1] += start[p]

    return ScanProgram(
        n=n,
        delta=delta,
        scope_flat=array("i", scope_flat),
        scope_off=array("i", scope_off),
        strides_flat=array("q", strides_flat),
        table_blob=bytes(blob),
        table_off=array("q", table_off),
        start=array("i", start),
    )


def scan_first(prog: ScanProgram, k: int, counts=None):
    """Delegate to the selected backend; see _scan_py.scan_first."""
    return _backend.scan_first(prog, k, counts)
