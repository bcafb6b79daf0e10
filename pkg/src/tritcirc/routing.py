"""Ternary parity maps and connectivity-aware CX-only circuit synthesis.

A parity map is an invertible N x N matrix over GF(3) describing how a
circuit of CX, CXDag and SigmaX(12) gates permutes basis trit-strings:
CX(i, j) adds row i to row j, CXDag(i, j) subtracts it, SigmaX(12) on j
doubles row j (all mod 3).

Synthesis reduces a map to the identity with row operations restricted to
topology edges, guided by Steiner trees:
  step 1 clears below-diagonal columns left to right (upper-triangular form),
  step 2 clears above-diagonal columns right to left using decreasing Steiner
         trees so every operation sources a higher-ordered row (this keeps
         the matrix upper triangular),
  step 3 rescales diagonal 2-entries with SigmaX(12).
The emitted gate list, replayed as row operations, reduces the input map to
the identity; its inverse circuit implements the map itself.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import (
    DisconnectedTerminals,
    IndexOutOfRange,
    InvalidCircuit,
    NoDecreasingTree,
    NoHamiltonianPath,
    NotInvertible,
    UnsupportedGate,
)
from .gates import Circuit, Gate, cx, cx_dag, inverse_circuit, sigma_x

PARITY_GATE_KINDS = frozenset({"CX", "CXDag", "SigmaX"})


# ---------------------------------------------------------------------------
# parity maps


def _as_gf3(matrix) -> np.ndarray:
    m = np.asarray(matrix, dtype=np.int64) % 3
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotInvertible(f"parity map must be square, got shape {m.shape}")
    return m


def gf3_is_invertible(matrix) -> bool:
    m = _as_gf3(matrix).copy()
    n = m.shape[0]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r, col]), None)
        if pivot is None:
            return False
        m[[col, pivot]] = m[[pivot, col]]
        inv = 1 if m[col, col] == 1 else 2  # inverse of 2 mod 3 is 2
        m[col] = (m[col] * inv) % 3
        for r in range(n):
            if r != col and m[r, col]:
                m[r] = (m[r] - m[r, col] * m[col]) % 3
    return True


@dataclass(frozen=True)
class TernaryParityMap:
    """Invertible matrix over GF(3); rows/columns index qutrits."""

    matrix: np.ndarray

    def __post_init__(self):
        m = _as_gf3(self.matrix)
        if not gf3_is_invertible(m):
            raise NotInvertible("parity map is singular over GF(3)")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def apply(self, trits) -> tuple[int, ...]:
        x = np.asarray(trits, dtype=np.int64)
        return tuple((self.matrix @ x) % 3)


@dataclass(frozen=True)
class RowOp:
    """One GF(3) row operation; ``source`` is None for doubling."""

    kind: str  # add | sub | double
    target: int
    source: int | None = None

    def __post_init__(self):
        if self.kind not in ("add", "sub", "double"):
            raise IndexOutOfRange(f"unknown row op {self.kind!r}")
        if self.kind == "double":
            if self.source is not None:
                raise IndexOutOfRange("double takes no source row")
        elif self.source is None or self.source == self.target:
            raise IndexOutOfRange("add/sub need a distinct source row")

    def gate(self) -> Gate:
        if self.kind == "add":
            return cx(self.source, self.target)
        if self.kind == "sub":
            return cx_dag(self.source, self.target)
        return sigma_x(self.target, "12")

    def inverse(self) -> "RowOp":
        if self.kind == "add":
            return RowOp("sub", self.target, self.source)
        if self.kind == "sub":
            return RowOp("add", self.target, self.source)
        return self


def apply_row_op(pmap: TernaryParityMap, op: RowOp) -> TernaryParityMap:
    m = _apply_op_array(pmap.matrix.copy(), op)
    return TernaryParityMap(m)


def _apply_op_array(m: np.ndarray, op: RowOp) -> np.ndarray:
    n = m.shape[0]
    if not (0 <= op.target < n) or (op.source is not None and not 0 <= op.source < n):
        raise IndexOutOfRange(f"row op {op} outside 0..{n - 1}")
    if op.kind == "add":
        m[op.target] = (m[op.target] + m[op.source]) % 3
    elif op.kind == "sub":
        m[op.target] = (m[op.target] - m[op.source]) % 3
    else:
        m[op.target] = (2 * m[op.target]) % 3
    return m


def parity_map_of_circuit(circuit: Circuit) -> TernaryParityMap:
    """GF(3) matrix whose action on trit-strings matches the circuit."""
    m = np.eye(circuit.num_qutrits, dtype=np.int64)
    for g in circuit.gates:
        m = _apply_op_array(m, _gate_row_op(g))
    return TernaryParityMap(m)


def _gate_row_op(g: Gate) -> RowOp:
    if g.kind == "CX":
        return RowOp("add", g.qutrits[1], g.qutrits[0])
    if g.kind == "CXDag":
        return RowOp("sub", g.qutrits[1], g.qutrits[0])
    if g.kind == "SigmaX" and g.subspace == "12":
        return RowOp("double", g.qutrits[0])
    raise UnsupportedGate(f"{g.kind} has no parity-map semantics")


def apply_circuit_to_trits(circuit: Circuit, trits) -> tuple[int, ...]:
    """Classical replay of a CX/CXDag/SigmaX(12) circuit on a trit-string."""
    x = list(trits)
    if len(x) != circuit.num_qutrits:
        raise IndexOutOfRange(f"need {circuit.num_qutrits} trits")
    for g in circuit.gates:
        op = _gate_row_op(g)
        if op.kind == "add":
            x[op.target] = (x[op.target] + x[op.source]) % 3
        elif op.kind == "sub":
            x[op.target] = (x[op.target] - x[op.source]) % 3
        else:
            x[op.target] = (2 * x[op.target]) % 3
    return tuple(x)


# ---------------------------------------------------------------------------
# topologies and Steiner trees


@dataclass(frozen=True)
class Topology:
    """Connected graph with a declared ordering forming a Hamiltonian path."""

    n: int
    edges: frozenset
    order: tuple[int, ...]

    def __post_init__(self):
        edges = frozenset(
            (min(a, b), max(a, b)) for a, b in self.edges if a != b
        )
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "order", tuple(self.order))
        if sorted(self.order) != list(range(self.n)):
            raise NoHamiltonianPath("order must be a permutation of the vertices")
        if any(not (0 <= a < self.n and 0 <= b < self.n) for a, b in edges):
            raise InvalidCircuit("edge endpoint outside vertex range")
        for a, b in zip(self.order, self.order[1:]):
            if (min(a, b), max(a, b)) not in edges:
                raise NoHamiltonianPath(
                    f"consecutive ordered vertices {a}, {b} are not adjacent"
                )

    def neighbors(self, v: int) -> list[int]:
        out = [b if a == v else a for a, b in self.edges if v in (a, b)]
        return sorted(out)


def line_topology(n: int) -> Topology:
    return Topology(n, frozenset((i, i + 1) for i in range(n - 1)), tuple(range(n)))


def grid_topology_3x3() -> Topology:
    """3x3 grid, row-major vertices, serpentine Hamiltonian ordering."""
    edges = set()
    for r in range(3):
        for c in range(3):
            v = 3 * r + c
            if c < 2:
                edges.add((v, v + 1))
            if r < 2:
                edges.add((v, v + 3))
    return Topology(9, frozenset(edges), (0, 1, 2, 5, 4, 3, 6, 7, 8))


@dataclass(frozen=True)
class SteinerTree:
    """Rooted tree inside a topology spanning the terminal set."""

    root: int
    parent: dict  # vertex -> parent vertex (root absent)
    terminals: frozenset

    def __post_init__(self):
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        vertices = self.vertices
        if self.root not in vertices or not self.terminals <= vertices:
            raise DisconnectedTerminals("tree must contain root and terminals")
        for v in self.parent:  # acyclic and connected: every chain ends at root
            seen = {v}
            while v != self.root:
                v = self.parent.get(v)
                if v is None or v in seen:
                    raise DisconnectedTerminals("parent structure is not a rooted tree")
                seen.add(v)

    @property
    def vertices(self) -> frozenset:
        return frozenset(self.parent) | {self.root}

    @property
    def steiner_vertices(self) -> frozenset:
        return self.vertices - self.terminals

    @property
    def edge_list(self) -> list[tuple[int, int]]:
        return sorted((self.parent[v], v) for v in self.parent)

    def path_from_root(self, v: int) -> list[int]:
        path = [v]
        while v != self.root:
            v = self.parent[v]
            path.append(v)
        return path[::-1]


def _bfs_paths(neighbors, sources) -> dict:
    """parent map of a BFS forest grown from ``sources`` (smallest-first)."""
    parent = {s: None for s in sources}
    queue = deque(sorted(sources))
    while queue:
        v = queue.popleft()
        for u in neighbors(v):
            if u not in parent:
                parent[u] = v
                queue.append(u)
    return parent


def steiner_tree(
    topology: Topology, terminals, root: int, allowed=None
) -> SteinerTree:
    """Shortest-path-insertion heuristic, deterministic under vertex order.

    Grows the tree from ``root`` by repeatedly attaching the nearest
    unconnected terminal via a BFS shortest path inside ``allowed`` (defaults
    to all vertices).
    """
    terminals = frozenset(terminals)
    if not terminals or root not in terminals:
        raise DisconnectedTerminals("root must be one of the terminals")
    allowed = set(range(topology.n)) if allowed is None else set(allowed)
    if not terminals <= allowed or root not in allowed:
        raise DisconnectedTerminals("terminals outside the allowed subgraph")

    def nbrs(v):
        return [u for u in topology.neighbors(v) if u in allowed]

    tree_vertices = {root}
    parent: dict[int, int] = {}
    remaining = set(terminals) - {root}
    while remaining:
        bfs = _bfs_paths(nbrs, tree_vertices)
        reachable = sorted(
            (t for t in remaining if t in bfs),
            key=lambda t: (_bfs_depth(bfs, t), t),
        )
        if not reachable:
            raise DisconnectedTerminals(f"cannot reach terminals {sorted(remaining)}")
        target = reachable[0]
        path = [target]
        while bfs[path[-1]] is not None:
            path.append(bfs[path[-1]])
        # path runs target -> ... -> some tree vertex
        path.reverse()
        for a, b in zip(path, path[1:]):
            if b not in tree_vertices:
                parent[b] = a
                tree_vertices.add(b)
        remaining.discard(target)
    return SteinerTree(root, parent, terminals)


def _bfs_depth(parent_map, v) -> int:
    d = 0
    while parent_map[v] is not None:
        v = parent_map[v]
        d += 1
    return d


def decreasing_steiner_tree(topology: Topology, terminals, root: int) -> SteinerTree:
    """Steiner tree whose every edge descends in the declared vertex order.

    BFS from the root over order-respecting edges, pruned to the union of
    root-to-terminal paths.  The Hamiltonian-path segment below the root
    guarantees reachability; its absence is still checked.
    """
    terminals = frozenset(terminals)
    pos = {v: i for i, v in enumerate(topology.order)}
    if not terminals or root not in terminals:
        raise NoDecreasingTree("root must be one of the terminals")
    if any(pos[t] > pos[root] for t in terminals):
        raise NoDecreasingTree("root must be the maximum terminal in the order")

    def down_nbrs(v):
        return [u for u in topology.neighbors(v) if pos[u] < pos[v]]

    parent = {root: None}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in down_nbrs(v):
            if u not in parent:
                parent[u] = v
                queue.append(u)
    if not terminals <= parent.keys():
        raise NoDecreasingTree(
            f"no decreasing paths to {sorted(set(terminals) - parent.keys())}"
        )
    keep = set()
    for t in terminals:
        v = t
        while v is not None:
            keep.add(v)
            v = parent[v]
    pruned = {v: p for v, p in parent.items() if v in keep and p is not None}
    return SteinerTree(root, pruned, terminals)


# ---------------------------------------------------------------------------
# Steiner-Gauss synthesis


@dataclass(frozen=True)
class SynthesisResult:
    """Reduction circuit plus its row-operation log.

    ``circuit`` replayed as row operations reduces the input map to the
    identity; ``inverse_circuit(circuit)`` implements the map itself.
    """

    circuit: Circuit
    row_ops: tuple[RowOp, ...]

    @property
    def implementing_circuit(self) -> Circuit:
        return inverse_circuit(self.circuit)


class _Eliminator:
    """Mutable synthesis state in vertex-order (position) space."""

    def __init__(self, matrix: np.ndarray, topology: Topology):
        self.top = topology
        self.pos = {v: i for i, v in enumerate(topology.order)}
        perm = list(topology.order)  # position -> vertex
        self.perm = perm
        n = matrix.shape[0]
        self.m = matrix[np.ix_(perm, perm)] % 3
        self.n = n
        self.ops: list[RowOp] = []  # in position space
        self.check_upper = False  # step 2 asserts triangularity per operation
        # position-space adjacency
        self.adj = {
            i: sorted(
                self.pos[u] for u in topology.neighbors(perm[i])
            )
            for i in range(n)
        }

    def emit(self, op: RowOp):
        _apply_op_array(self.m, op)
        self.ops.append(op)
        if self.check_upper:
            assert _is_upper_triangular(self.m), f"triangular form broken by {op}"

    # -- step helpers ------------------------------------------------------

    def _ensure_pivot(self, col: int, live: set):
        if self.m[col, col] % 3:
            return
        bfs = _bfs_paths(lambda v: [u for u in self.adj[v] if u in live], [col])
        candidates = sorted(
            (r for r in live if r != col and self.m[r, col] % 3 and r in bfs),
            key=lambda r: (_bfs_depth(bfs, r), r),
        )
        if not candidates:
            raise NotInvertible(f"no pivot available for column {col}")
        target = candidates[0]
        path = [target]
        while bfs[path[-1]] is not None:
            path.append(bfs[path[-1]])
        path.reverse()  # col ... target
        # pull the nonzero value up the path toward the pivot row
        for a, b in reversed(list(zip(path[:-1], path[1:]))):
            if not self.m[a, col] % 3:
                self.emit(RowOp("add", a, b))
        assert self.m[col, col] % 3, "pivot fill failed"

    def _clear_with_tree(self, col: int, tree: SteinerTree):
        """Per terminal: cascade the pivot value along the tree path through
        interior vertices, cancel the terminal entry, undo the cascade."""
        terminals = sorted(tree.terminals - {tree.root})
        for term in terminals:
            path = tree.path_from_root(term)
            interior = path[1:-1]
            cascade: list[RowOp] = []
            for prev, cur in zip(path, interior):
                if (self.m[cur, col] + self.m[prev, col]) % 3:
                    op = RowOp("add", cur, prev)
                else:
                    op = RowOp("sub", cur, prev)
                self.emit(op)
                cascade.append(op)
                assert self.m[cur, col] % 3, "cascade lost the running value"
            source = interior[-1] if interior else tree.root
            e, p = self.m[term, col] % 3, self.m[source, col] % 3
            assert e and p, "terminal/pivot entries must be nonzero here"
            self.emit(RowOp("add" if (e + p) % 3 == 0 else "sub", term, source))
            assert self.m[term, col] % 3 == 0, "terminal entry not cleared"
            for op in reversed(cascade):
                self.emit(op.inverse())

    # -- the three steps ---------------------------------------------------

    def lower_triangularize(self):
        for col in range(self.n):
            live = set(range(col, self.n))
            self._ensure_pivot(col, live)
            terminals = {r for r in live if r > col and self.m[r, col] % 3}
            if not terminals:
                continue
            tree = steiner_tree(
                _position_topology(self), terminals | {col}, col, allowed=live
            )
            self._clear_with_tree(col, tree)
            assert not any(self.m[r, col] % 3 for r in live if r > col)

    def diagonalize(self):
        self.check_upper = True
        for col in range(self.n - 1, 0, -1):
            terminals = {r for r in range(col) if self.m[r, col] % 3}
            if not terminals:
                continue
            tree = decreasing_steiner_tree(
                _position_topology(self), terminals | {col}, col
            )
            self._clear_with_tree(col, tree)
        self.check_upper = False

    def fix_diagonal(self):
        for row in range(self.n):
            if self.m[row, row] % 3 == 2:
                self.emit(RowOp("double", row))


def _position_topology(elim: _Eliminator) -> Topology:
    edges = frozenset(
        (min(elim.pos[a], elim.pos[b]), max(elim.pos[a], elim.pos[b]))
        for a, b in elim.top.edges
    )
    return Topology(elim.n, edges, tuple(range(elim.n)))


def _is_upper_triangular(m: np.ndarray) -> bool:
    return not np.any(np.tril(m, -1) % 3)


def steiner_gauss_synthesize(
    pmap: TernaryParityMap, topology: Topology
) -> SynthesisResult:
    """Topology-respecting reduction of a ternary parity map to the identity.

    Every emitted two-qutrit gate lies on a topology edge.  Deterministic:
    identical inputs produce identical circuits.
    """
    if pmap.n != topology.n:
        raise IndexOutOfRange(
            f"map size {pmap.n} does not match topology size {topology.n}"
        )
    elim = _Eliminator(np.array(pmap.matrix), topology)
    elim.lower_triangularize()
    assert _is_upper_triangular(elim.m)
    elim.diagonalize()
    assert not np.any((elim.m - np.diag(np.diag(elim.m))) % 3)
    elim.fix_diagonal()
    assert np.array_equal(elim.m % 3, np.eye(elim.n, dtype=np.int64))
    # map position-space ops back to vertex labels
    ops = []
    for op in elim.ops:
        src = None if op.source is None else elim.perm[op.source]
        ops.append(RowOp(op.kind, elim.perm[op.target], src))
    gates = tuple(op.gate() for op in ops)
    return SynthesisResult(Circuit(pmap.n, gates), tuple(ops))


# ---------------------------------------------------------------------------
# baseline and helpers


def naive_swap_baseline_count(pmap: TernaryParityMap, topology: Topology) -> int:
    """CX count of all-to-all Gaussian elimination with SWAP-expanded gates.

    Runs the same three-step elimination without topology constraints, then
    charges each row operation 6(d-1)+1 CX-type gates, d the topology
    distance (SWAP chains there and back at 3 CX-type gates per SWAP).
    Doubling costs no CX-type gates.
    """
    dist = _all_pairs_distances(topology)
    m = np.array(pmap.matrix)
    n = m.shape[0]
    total = 0

    def charge(i, j):
        nonlocal total
        d = dist[i][j]
        total += 1 if d == 1 else 6 * (d - 1) + 1

    for col in range(n):
        if not m[col, col] % 3:
            pivot = next(r for r in range(col + 1, n) if m[r, col] % 3)
            m = _apply_op_array(m, RowOp("add", col, pivot))
            charge(pivot, col)
        for row in range(col + 1, n):
            if m[row, col] % 3:
                kind = "add" if (m[row, col] + m[col, col]) % 3 == 0 else "sub"
                m = _apply_op_array(m, RowOp(kind, row, col))
                charge(col, row)
    for col in range(n - 1, 0, -1):
        for row in range(col - 1, -1, -1):
            if m[row, col] % 3:
                kind = "add" if (m[row, col] + m[col, col]) % 3 == 0 else "sub"
                m = _apply_op_array(m, RowOp(kind, row, col))
                charge(col, row)
    for row in range(n):
        if m[row, row] % 3 == 2:
            m = _apply_op_array(m, RowOp("double", row))
    assert np.array_equal(m % 3, np.eye(n, dtype=np.int64))
    return total


def _all_pairs_distances(topology: Topology) -> list[list[int]]:
    out = []
    for s in range(topology.n):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in topology.neighbors(v):
                if u not in dist:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        out.append([dist[v] for v in range(topology.n)])
    return out


def random_invertible_parity_map(n: int, rng: np.random.Generator) -> TernaryParityMap:
    """Uniform rejection sampling of invertible GF(3) matrices."""
    while True:
        m = rng.integers(0, 3, size=(n, n))
        if gf3_is_invertible(m):
            return TernaryParityMap(m)


def parity_map_to_dict(pmap: TernaryParityMap) -> dict:
    return {"n": pmap.n, "rows": pmap.matrix.tolist()}


def parity_map_from_dict(d: dict) -> TernaryParityMap:
    rows = np.array(d["rows"], dtype=np.int64)
    if rows.shape != (int(d["n"]), int(d["n"])):
        raise NotInvertible("rows do not form an n x n matrix")
    return TernaryParityMap(rows)


def topology_to_dict(t: Topology) -> dict:
    return {"n": t.n, "edges": sorted(list(e) for e in t.edges), "order": list(t.order)}


def topology_from_dict(d: dict) -> Topology:
    return Topology(
        int(d["n"]),
        frozenset(tuple(e) for e in d["edges"]),
        tuple(int(v) for v in d["order"]),
    )


def row_op_to_dict(op: RowOp) -> dict:
    d = {"kind": op.kind, "target": op.target}
    if op.source is not None:
        d["source"] = op.source
    return d
