"""Compilation of Z-string and diagonal Gell-Mann exponentials into circuits.

Conventions:

* ``decompose_weyl(w, theta)`` compiles exp(-i * theta/2 * (c W + h.c.)).
* ``decompose_gellmann(g, theta)`` compiles exp(-i * theta * tensor(lambdas)).

The entangling ladder accumulates sum_j s_j x_j + x_N onto the last qutrit:
CX^{s_j} gates before the rotations, CX^{2 s_j} (their inverses) after.  The
rotation block then applies the diagonal phases of c Z + c* Z^dag.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IncompleteExpansion, UnsupportedWeight, ZeroCoefficient
from .gates import (
    Circuit,
    DIAGONAL_KINDS,
    Gate,
    ROTATION_KINDS,
    SINGLE_QUTRIT_KINDS,
    cx_pow,
    rot_z,
)
from .weyl import (
    GellMannString,
    WeylExpansion,
    WeylZString,
    expand_closed_form,
)

SQRT3 = float(np.sqrt(3.0))


@dataclass(frozen=True)
class GateCounts:
    """cx_count includes both CX and CXDag; depth fuses diagonal runs."""

    cx_count: int
    rotation_count: int
    single_qutrit_count: int
    depth: int


def rotation_synthesis(c: complex, theta: float, qutrit: int = 0) -> list[Gate]:
    """Up to three RotZ gates realizing exp(-i theta/2 (c Z + c* Z^dag)).

    Re(c) = 0 yields the single RotZ(12); Im(c) = 0 the RotZ(01)/RotZ(02)
    pair.  The product matches the target exactly (no residual phase).
    """
    c = complex(c)
    if c == 0:
        raise ZeroCoefficient("coefficient must be nonzero")
    a, b = c.real, c.imag
    gates = []
    if a != 0.0:
        gates.append(rot_z(qutrit, "01", a * theta))
        gates.append(rot_z(qutrit, "02", a * theta))
    if b != 0.0:
        gates.append(rot_z(qutrit, "12", -SQRT3 * b * theta))
    return gates


def _weyl_ladder_circuit(
    num_qutrits: int,
    support: list[tuple[int, int]],
    rotations: list[Gate],
) -> Circuit:
    """Entangle ``support`` (qutrit, exponent) pairs onto the last support
    qutrit, apply ``rotations`` there, and disentangle."""
    *rest, (target, last_exp) = support
    assert last_exp == 1, "canonical strings end in exponent 1"
    gates = [cx_pow(q, target, e) for q, e in rest]
    gates.extend(rotations)
    gates.extend(cx_pow(q, target, 2 * e) for q, e in reversed(rest))
    return Circuit(num_qutrits, tuple(gates))


def decompose_weyl(w: WeylZString, theta: float) -> Circuit:
    """CX/CX^2/rotation circuit for exp(-i theta/2 (c W + h.c.)).

    Uses 2(N-1) entangling gates and at most three rotations on the last
    qutrit.
    """
    n = w.weight
    support = [(j, e) for j, e in enumerate(w.s)] + [(n - 1, 1)]
    rotations = rotation_synthesis(w.c, theta, qutrit=n - 1)
    return _weyl_ladder_circuit(n, support, rotations)


def gray_order(expansion: WeylExpansion) -> list:
    """Expansion terms reordered so consecutive exponent strings differ in
    exactly one position (binary-reflected Gray sequence, all-ones first)."""
    n = expansion.weight
    expected = 2 ** (n - 1)
    if len(expansion.terms) != expected:
        raise IncompleteExpansion(
            f"need {expected} terms for weight {n}, got {len(expansion.terms)}"
        )
    by_k = {t.k: t for t in expansion.terms}
    if sorted(by_k) != list(range(expected)):
        raise IncompleteExpansion("term indices must cover 0..2^(N-1)-1")
    return [by_k[t ^ (t >> 1)] for t in range(expected)]


def _block_rotations(parity_odd: bool, n_mod3: int, r: float, theta: float,
                     qutrit: int) -> list[Gate]:
    """Exact rotations for exp(-i theta/2 (c Z + c* Z^dag)) with the
    structured coefficients c = r * omega^n (n3 even) or c = i r * omega^n
    (n3 odd), r real.  One rotation for odd parity, two for even."""
    if parity_odd:
        sub, ang = {
            0: ("12", -SQRT3 * r * theta),
            1: ("01", -SQRT3 * r * theta),
            2: ("02", SQRT3 * r * theta),
        }[n_mod3]
        return [rot_z(qutrit, sub, ang)]
    pair = {
        0: (("01", r * theta), ("02", r * theta)),
        1: (("02", -r * theta), ("12", -r * theta)),
        2: (("01", -r * theta), ("12", r * theta)),
    }[n_mod3]
    return [rot_z(qutrit, sub, ang) for sub, ang in pair]


def decompose_gellmann(
    g: GellMannString, theta: float, block_order: list[int] | None = None
) -> Circuit:
    """Compile exp(-i theta lambda^{i_1} x ... x lambda^{i_N}).

    Emits one ladder block per expansion term in Gray order, then cancels
    adjacent disentangle/entangle ladders, leaving 2^{N-1} + 2N - 3
    entangling gates.  ``block_order`` overrides the Gray sequence (the
    blocks commute, so any order is unitarily equivalent but may cancel
    less).
    """
    n = g.weight
    if n < 2:
        raise UnsupportedWeight("need weight >= 2")
    expansion = expand_closed_form(g)  # raises DimensionCap past weight 16
    if block_order is None:
        ordered = gray_order(expansion)
    else:
        if sorted(block_order) != list(range(2 ** (n - 1))):
            raise IncompleteExpansion("block_order must permute all expansion indices")
        by_k = {t.k: t for t in expansion.terms}
        ordered = [by_k[k] for k in block_order]
    parity_odd = g.n3 % 2 == 1
    scale = 1.0 / np.sqrt(3.0**n)
    gates: list[Gate] = []
    for term in ordered:
        full = term.s + (1,)
        n_mod3 = sum(full) % 3
        # term.c = i^{n3} (-1)^{f+N} scale omega^n = (i if odd else 1) * r * omega^n
        f = sum(full[j] - 1 for j in range(n) if g.indices[j] == 3)
        r = scale * (-1.0) ** (f + n + g.n3 // 2)
        rotations = _block_rotations(parity_odd, n_mod3, r, 2.0 * theta, n - 1)
        gates.extend(cx_pow(j, n - 1, e) for j, e in enumerate(term.s))
        gates.extend(rotations)
        gates.extend(
            cx_pow(j, n - 1, 2 * e) for j, e in reversed(list(enumerate(term.s)))
        )
    return merge_cx_ladders(Circuit(n, tuple(gates)))


def merge_cx_ladders(circuit: Circuit) -> Circuit:
    """Cancel runs of CX-type gates sharing one target (mod-3 exponents).

    Consecutive CX/CXDag gates with a common target commute, so each maximal
    run collapses to at most one gate per control, emitted in increasing
    control order.  Any other gate terminates the run.
    """
    out: list[Gate] = []
    run_target: int | None = None
    run_exponents: dict[int, int] = {}

    def flush():
        nonlocal run_target
        for ctrl in sorted(run_exponents):
            e = run_exponents[ctrl] % 3
            if e:
                out.append(cx_pow(ctrl, run_target, e))
        run_exponents.clear()
        run_target = None

    for g in circuit.gates:
        if g.is_cx_kind:
            ctrl, tgt = g.qutrits
            if run_target is not None and tgt != run_target:
                flush()
            run_target = tgt
            e = 1 if g.kind == "CX" else 2
            run_exponents[ctrl] = (run_exponents.get(ctrl, 0) + e) % 3
        else:
            if run_target is not None:
                flush()
            out.append(g)
    if run_target is not None:
        flush()
    return Circuit(circuit.num_qutrits, tuple(out))


def drop_zero_rotations(circuit: Circuit, tol: float = 0.0) -> Circuit:
    """Remove rotation gates whose angle magnitude is <= tol."""
    kept = tuple(
        g
        for g in circuit.gates
        if not (g.kind in ROTATION_KINDS and abs(g.angle) <= tol)
    )
    return Circuit(circuit.num_qutrits, kept)


def count_gates(circuit: Circuit) -> GateCounts:
    """Deterministic gate counts plus ASAP depth.

    Depth layers gates greedily: a gate starts at the earliest layer after
    all gates sharing a qutrit, and a maximal run of consecutive diagonal
    single-qutrit gates on one wire occupies a single layer (they compile to
    one diagonal pulse).  Non-diagonal rotations are not fused.
    """
    cx_count = sum(1 for g in circuit.gates if g.is_cx_kind)
    rotation_count = sum(1 for g in circuit.gates if g.kind in ROTATION_KINDS)
    single_count = sum(1 for g in circuit.gates if g.kind in SINGLE_QUTRIT_KINDS)
    avail = [0] * circuit.num_qutrits
    fusing: dict[int, int] = {}  # wire -> layer of its open diagonal run
    depth = 0
    for g in circuit.gates:
        if g.kind in DIAGONAL_KINDS and len(g.qutrits) == 1:
            (q,) = g.qutrits
            if q in fusing:
                layer = fusing[q]
            else:
                layer = avail[q]
                fusing[q] = layer
                avail[q] = layer + 1
        else:
            layer = max(avail[q] for q in g.qutrits)
            for q in g.qutrits:
                avail[q] = layer + 1
                fusing.pop(q, None)
        depth = max(depth, layer + 1)
    return GateCounts(cx_count, rotation_count, single_count, depth)
