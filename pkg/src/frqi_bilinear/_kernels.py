"""Numba kernels that walk controlled-gate subspaces of a dense statevector.

A gate with controls and target(s) touches exactly the amplitude pairs whose
index matches every control polarity and differs only in a target bit.
``fixed`` is the OR of all control and target bit masks; ``ctrl_val`` holds
the required value of the controls that fire on 1. Starting from
``x = ctrl_val`` (free bits zero, target bits zero), the next matching index
follows by rippling a carry through the fixed bits:

    x = (((x | fixed) + 1) & ~fixed) | ctrl_val

Setting the fixed bits before the increment lets the carry skip over them,
so the free-bit field counts up in a handful of integer ops per amplitude
pair no matter how many controls the gate has. Kernels are single threaded
by design: the walk is memory bound and the host runs on one core.

Each kernel mutates ``buf`` in place. ``buf`` may be float64 or complex128;
numba specializes per dtype.
"""

from numba import njit

_INV_SQRT2 = 0.7071067811865476


@njit(cache=True)
def flip_pairs(buf, fixed, ctrl_val, tbit, pairs):
    """X on the target bit within the control-matched subspace."""
    notfixed = ~fixed
    x = ctrl_val
    for _ in range(pairs):
        other = x | tbit
        tmp = buf[x]
        buf[x] = buf[other]
        buf[other] = tmp
        x = (((x | fixed) + 1) & notfixed) | ctrl_val


@njit(cache=True)
def rot_pairs(buf, fixed, ctrl_val, tbit, pairs, c, s):
    """Ry with cos/sin entries c, s on the target bit (controls matched)."""
    notfixed = ~fixed
    x = ctrl_val
    for _ in range(pairs):
        other = x | tbit
        va = buf[x]
        vb = buf[other]
        buf[x] = c * va - s * vb
        buf[other] = s * va + c * vb
        x = (((x | fixed) + 1) & notfixed) | ctrl_val


@njit(cache=True)
def had_pairs(buf, fixed, ctrl_val, tbit, pairs):
    """Hadamard on the target bit (controls matched)."""
    notfixed = ~fixed
    x = ctrl_val
    for _ in range(pairs):
        other = x | tbit
        va = buf[x]
        vb = buf[other]
        buf[x] = (va + vb) * _INV_SQRT2
        buf[other] = (va - vb) * _INV_SQRT2
        x = (((x | fixed) + 1) & notfixed) | ctrl_val


@njit(cache=True)
def xchg_pairs(buf, fixed, ctrl_val, abit, bbit, pairs):
    """Swap of two target bits: exchanges the |01> and |10> amplitudes."""
    notfixed = ~fixed
    x = ctrl_val
    for _ in range(pairs):
        xa = x | abit
        xb = x | bbit
        tmp = buf[xa]
        buf[xa] = buf[xb]
        buf[xb] = tmp
        x = (((x | fixed) + 1) & notfixed) | ctrl_val
