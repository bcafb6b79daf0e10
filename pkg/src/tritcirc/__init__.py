"""tritcirc: qutrit circuit compilation toolkit.

Compiles exponentials of Weyl-Heisenberg Z-strings and diagonal Gell-Mann
strings into CX/CX^2/rotation circuits, builds ternary-encoded QAOA layers
for graph k-coloring, and synthesizes connectivity-respecting CX-only
circuits from GF(3) parity maps.  Everything is checked against a dense
simulator up to global phase.
"""

from .decompose import (
    GateCounts,
    count_gates,
    decompose_gellmann,
    decompose_weyl,
    drop_zero_rotations,
    gray_order,
    merge_cx_ladders,
    rotation_synthesis,
)
from .gates import (
    Circuit,
    Gate,
    circuit_from_dict,
    circuit_to_dict,
    cx,
    cx_dag,
    cx_pow,
    hadamard,
    inverse_circuit,
    rot_x,
    rot_z,
    sigma_x,
    x_pow,
    z_pow,
)
from .qaoa import (
    ColoringProblem,
    QaoaLayerSpec,
    build_qaoa_circuit,
    cost_expectation,
    cost_layer,
    edge_circuit,
    edge_hamiltonian_terms,
    initial_layer,
    mixer_layer,
    resource_report,
)
from .routing import (
    RowOp,
    SteinerTree,
    SynthesisResult,
    TernaryParityMap,
    Topology,
    apply_circuit_to_trits,
    apply_row_op,
    decreasing_steiner_tree,
    grid_topology_3x3,
    line_topology,
    parity_map_of_circuit,
    steiner_gauss_synthesize,
    steiner_tree,
)
from .sim import (
    apply_circuit,
    basis_state,
    circuit_unitary,
    gate_unitary,
    phase_distance,
)
from .weyl import (
    GellMannString,
    WeylExpansion,
    WeylZString,
    expand_closed_form,
    expand_oracle,
    gellmann_matrix,
    index_from_s,
    s_from_index,
    tilde_lambda,
    weyl_string_matrix,
)

__version__ = "0.1.0"
