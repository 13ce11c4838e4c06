"""Closed-form gate-cost lines for the scaling networks, plus an auditor.

The published cost accounting for this interpolation scheme contains
several internal inconsistencies. This module reproduces the closed forms
exactly as stated, computes exact counts from generated circuits, and
reports every known divergence through CostReport.discrepancy_notes
rather than silently correcting either side. Functions named *_readings
return the alternative values side by side.

Conventions shared with the rest of the package: costs are CNOT
equivalents (CNOT 1, Toffoli 6, k-controlled NOT 12k-11 for k >= 3,
controlled rotation 2, k-controlled rotation 4 + two (k-1)-controlled-NOT
decompositions, swap 3), and single-qubit NOT gates are tallied but carry
weight zero.
"""

from __future__ import annotations

from dataclasses import replace

from . import qsim
from .interp import DOWN, UP, ScaleSpec, build_omega
from .qsim import Circuit, CostReport

NOTE_NOT_GATES = (
    "single-qubit NOT gates are tallied separately and excluded from the "
    "compared totals; the published increment cost omits its own NOT "
    "gates and the two counts agree only under that exclusion")
NOTE_OMEGA_CONFLICT = (
    "the increment block is costed as 6n^2-4n-7 when stated standalone "
    "but as 6n^2-3n-8 inside the composed down-scaling total; both values "
    "are reported and neither is corrected here")
NOTE_CA_WA_SHAPE = (
    "the published color-arithmetic and weight-arithmetic lines do not "
    "reduce to a gate count (each carries a spurious extra 2^(2n) or "
    "2^(2m) factor); only their asymptotic 2^(4n) and 2^(4m) terms enter "
    "the compared total, exact counts are reported alongside")
NOTE_WA_CONTROLS = (
    "realized weight rotations are controlled jointly on offset and "
    "neighbor wires, 2(n+m) controls per gate, where the published count "
    "assumes 2m; the realized network is costlier and correct, the "
    "published line undercounts")
NOTE_QUARTER = (
    "the published quarter-scaling line simplifies 2*(2+12[2(m+n)-11]) "
    "to 48(m+n)-18 per gate, which matches neither its own bracketed "
    "expression (48(m+n)-260) nor the decomposition weight used here "
    "(48(m+n)-42); all three are reported")
NOTE_OMEGA_FIXUP = (
    "each composed increment carries one extra flag-clearing "
    "multi-controlled NOT (tag 'omega-fixup') and borrows an idle "
    "neighbor wire as the flag; the standalone block matches the "
    "published inventory, the composed network includes the extras")
NOTE_NOT_INVENTORY = (
    "the realized increment uses a single NOT on the lowest wire where "
    "the published inventory lists n-1 NOT gates; NOT gates carry weight "
    "zero so the compared totals are unaffected")
NOTE_N1_RANGE = (
    "the quadratic increment term is evaluated at n=1 although the "
    "closed form is stated for n >= 2; the realized n=1 block is cheaper "
    "(no Toffoli stage)")


def kcnot_sum(n: int) -> int:
    """Sum of (12k - 11) over k = 3..n; zero when the range is empty.

    This is the cost of the k-controlled-NOT ladder inside one increment
    block on n wires.
    """
    if n < 3:
        return 0
    return 6 * n * n - 5 * n - 14


def omega_cost(n: int) -> int:
    """Published cost of one clamped-increment block on n wires.

    Equals (n + 1) CNOTs plus one Toffoli plus kcnot_sum(n); the block's
    own NOT gates are omitted, matching the published accounting.
    """
    if n < 2:
        raise ValueError("the closed form needs n >= 2")
    return 6 * n * n - 4 * n - 7


def ca_cost_readings(n: int) -> dict:
    """Alternative values of the published color-arithmetic line.

    as_printed    2 * (2^(2n) + 12[(2n-1) - 11]) * 2^(2n)
    count_shaped  the same bracket with the leading 2^(2n) read as the
                  gate count, i.e. 2^(2n) * 2 * (2 + 12[(2n-1) - 11])
    exact         2^(2n) gates, each a rotation with 2n controls, at the
                  decomposition weight 4 + 2*(12(2n-1) - 11)
    asymptotic    2^(4n), the only value the auditor compares
    """
    gates = 1 << (2 * n)
    bracket = 12 * ((2 * n - 1) - 11)
    return {
        "as_printed": 2 * (gates + bracket) * gates,
        "count_shaped": gates * 2 * (2 + bracket),
        "exact": gates * qsim.gate_weight(
            qsim.cry(tuple(range(2 * n)), 2 * n, 1.0)),
        "asymptotic": 1 << (4 * n),
    }


def wa_cost_readings(n: int, m: int) -> dict:
    """Alternative values of the published weight-arithmetic line.

    The published line is the color-arithmetic shape with m substituted
    for n and assumes 2m controls per rotation. The realized gates carry
    2(n+m) joint controls and there are 2^(2(n+m)) of them per round, so
    the exact entry depends on n as well.
    """
    gates_printed = 1 << (2 * m)
    bracket = 12 * ((2 * m - 1) - 11)
    gates_real = 1 << (2 * (n + m))
    return {
        "as_printed": 2 * (gates_printed + bracket) * gates_printed,
        "count_shaped": gates_printed * 2 * (2 + bracket),
        "exact": gates_real * qsim.gate_weight(
            qsim.cry(tuple(range(2 * (n + m))), 2 * (n + m), 1.0)),
        "asymptotic": 1 << (4 * m),
    }


def quarter_cost(n: int, m: int) -> int:
    """Published quarter-scaling round cost, 2^(2n) * (48(m+n) - 18)."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    return (1 << (2 * n)) * (48 * (m + n) - 18)


def quarter_cost_exact(n: int, m: int) -> int:
    """Decomposition-weight cost of one quarter-scaling round.

    2^(2n) rotations, each controlled by the full (n+m)-bit coordinate
    pair: 2^(2n) * (48(m+n) - 42).
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    k = 2 * (n + m)
    return (1 << (2 * n)) * qsim.gate_weight(
        qsim.cry(tuple(range(k)), k, 1.0))


def upscale_cost(n: int, m: int) -> int:
    """Published total for the up-scaling network.

    8n (position copies) + 2*(6n^2 - 4n - 7) (two increments)
    + 4*2^(4n) + 4*2^(4m) (four color and four weight rounds, asymptotic)
    + 12 (four swaps) = 12n^2 - 2 + 2^(4n+2) + 2^(4m+2).

    The quadratic term is stated for n >= 2; n = 1 is evaluated with the
    same polynomial and the auditor flags it.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    return 12 * n * n - 2 + (1 << (4 * n + 2)) + (1 << (4 * m + 2))


def downscale_cost(n: int, m: int = 1) -> int:
    """Published total for the down-scaling network.

    8n + 2*(6n^2 - 3n - 8) + 4*2^(2n) + 12. The increment term here
    conflicts with omega_cost (see NOTE_OMEGA_CONFLICT), and the formula
    does not depend on m; m is accepted for signature symmetry.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    return 8 * n + 2 * (6 * n * n - 3 * n - 8) + 4 * (1 << (2 * n)) + 12


def audit_omega(n: int) -> CostReport:
    """Cost one standalone clamped-increment block against omega_cost."""
    circuit = build_omega(tuple(range(n)))
    base = qsim.cnot_equivalent_cost(circuit)
    notes = [NOTE_NOT_GATES]
    if n >= 3:
        notes.append(NOTE_NOT_INVENTORY)
    formula = omega_cost(n) if n >= 2 else None
    return replace(base, paper_formula_value=formula,
                   discrepancy_notes=tuple(notes))


def audit_circuit(circuit: Circuit, spec: ScaleSpec) -> CostReport:
    """Cost a composed scaling circuit against the published total.

    The realized count and the published value are both reported; every
    known reason they differ is listed in discrepancy_notes. Nothing is
    reconciled silently.
    """
    base = qsim.cnot_equivalent_cost(circuit)
    if spec.direction == UP:
        formula = upscale_cost(spec.n, spec.m)
        notes = [NOTE_NOT_GATES, NOTE_CA_WA_SHAPE, NOTE_WA_CONTROLS]
        if spec.n == 1:
            notes.append(NOTE_N1_RANGE)
    elif spec.direction == DOWN:
        formula = downscale_cost(spec.n, spec.m)
        notes = [NOTE_NOT_GATES, NOTE_OMEGA_CONFLICT, NOTE_QUARTER]
    else:
        raise ValueError(f"unknown direction {spec.direction!r}")
    if any(g.tag == "omega-fixup" for g in circuit.gates):
        notes.append(NOTE_OMEGA_FIXUP)
    return replace(base, paper_formula_value=formula,
                   discrepancy_notes=tuple(notes))
