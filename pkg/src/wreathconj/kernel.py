"""Backend selection and packing helpers for the finite-group kernel.

The compiled extension is preferred when present; WREATHCONJ_PURE=1
forces the plain-Python reference implementation.
"""

from __future__ import annotations

import os

from .abelian import AbelianElement, AbelianGroup
from .wreath import WreathElement, WreathGroup

if os.environ.get("WREATHCONJ_PURE") == "1":
    from . import _purekernel as _backend

    BACKEND = "pure"
else:
    try:
        from . import _speedups as _backend  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _purekernel as _backend

        BACKEND = "pure"

FiniteWreathKernel = _backend.FiniteWreathKernel

_cache: dict = {}


def kernel_for(group: WreathGroup):
    if group.lamp.free_rank or group.base.free_rank:
        raise ValueError("kernel needs a finite wreath product")
    key = (group.lamp.torsion, group.base.torsion)
    if key not in _cache:
        _cache[key] = FiniteWreathKernel(*key)
    return _cache[key]


def abelian_index(x: AbelianElement) -> int:
    idx, mul = 0, 1
    for c, n in zip(x.coords, x.group.torsion):
        idx += c * mul
        mul *= n
    return idx


def abelian_from_index(group: AbelianGroup, idx: int) -> AbelianElement:
    coords = []
    for n in group.torsion:
        idx, c = divmod(idx, n)
        coords.append(c)
    return AbelianElement(group, tuple(coords))


def encode(kern, g: WreathElement) -> int:
    fmap = g.f_map()
    fcode, mul = 0, 1
    for pos in range(kern.nb):
        key = abelian_from_index(g.group.base, pos)
        v = fmap.get(key)
        if v is not None:
            fcode += abelian_index(v) * mul
        mul *= kern.na
    return fcode * kern.nb + abelian_index(g.b)


def decode(kern, group: WreathGroup, eid: int) -> WreathElement:
    fcode, bidx = divmod(eid, kern.nb)
    pairs = []
    for pos in range(kern.nb):
        fcode, digit = divmod(fcode, kern.na)
        if digit:
            pairs.append(
                (
                    abelian_from_index(group.base, pos),
                    abelian_from_index(group.lamp, digit),
                )
            )
    return WreathElement(group, tuple(pairs), abelian_from_index(group.base, bidx))
