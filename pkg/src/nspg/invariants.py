"""Exact graph invariants computed from first principles, so they can act as oracles."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .groups import FiniteGroup, euler_phi
from .power_graphs import SimpleGraph

DEFAULT_SOLVER_BUDGET = 64
DEFAULT_ODD_HOLE_BUDGET = 24


class BudgetExceeded(RuntimeError):
    """Raised when an exact solver would exceed its vertex budget; never approximate."""


def _check_budget(what: str, n: int, budget: int) -> None:
    if n > budget:
        raise BudgetExceeded(f"{what}: {n} vertices exceeds budget {budget}")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# Cheap structural invariants


def degree_sequence(g: SimpleGraph) -> tuple[int, ...]:
    """Vertex degrees in non-increasing order."""
    return tuple(sorted((g.degree(u) for u in range(g.vertex_count)), reverse=True))


def is_connected(g: SimpleGraph) -> bool:
    n = g.vertex_count
    seen = 1
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in _bits(g.rows[u] & ~seen):
            seen |= 1 << v
            queue.append(v)
    return seen == (1 << n) - 1


def is_complete(g: SimpleGraph) -> bool:
    n = g.vertex_count
    return g.edge_count == n * (n - 1) // 2


def is_regular(g: SimpleGraph) -> bool:
    degrees = {g.degree(u) for u in range(g.vertex_count)}
    return len(degrees) <= 1


def is_bipartite(g: SimpleGraph) -> bool:
    n = g.vertex_count
    color = [-1] * n
    for s in range(n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def is_tree(g: SimpleGraph) -> bool:
    return is_connected(g) and g.edge_count == g.vertex_count - 1


def is_eulerian(g: SimpleGraph) -> bool:
    """Connected with every degree even; a single vertex counts as Eulerian."""
    return is_connected(g) and all(g.degree(u) % 2 == 0 for u in range(g.vertex_count))


def girth(g: SimpleGraph) -> int | None:
    """Length of a shortest cycle via per-vertex breadth-first search; None if acyclic."""
    n = g.vertex_count
    best: int | None = None
    for s in range(n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    length = dist[u] + dist[v] + 1
                    if best is None or length < best:
                        best = length
        if best == 3:
            return 3
    return best


# ---------------------------------------------------------------------------
# Exact maximum clique: branch and bound over bitsets with pivoting


def clique_number(g: SimpleGraph, budget: int = DEFAULT_SOLVER_BUDGET) -> tuple[int, tuple[int, ...]]:
    """Exact clique number with one witness clique."""
    n = g.vertex_count
    _check_budget("clique_number", n, budget)
    rows = g.rows
    best_size = 0
    best_mask = 0

    def expand(r: int, r_size: int, p: int, x: int) -> None:
        nonlocal best_size, best_mask
        if p == 0 and x == 0:
            if r_size > best_size:
                best_size = r_size
                best_mask = r
            return
        if r_size + p.bit_count() <= best_size:
            return
        pivot = -1
        pivot_score = -1
        for u in _bits(p | x):
            score = (p & rows[u]).bit_count()
            if score > pivot_score:
                pivot_score = score
                pivot = u
        for v in _bits(p & ~rows[pivot]):
            bit = 1 << v
            expand(r | bit, r_size + 1, p & rows[v], x & rows[v])
            p &= ~bit
            x |= bit

    expand(0, 0, (1 << n) - 1, 0)
    return best_size, tuple(_bits(best_mask))


# ---------------------------------------------------------------------------
# Exact chromatic number: iterative deepening from the clique bound


def dsatur_greedy(g: SimpleGraph) -> list[int]:
    """Greedy coloring in saturation order; an upper bound for the exact search."""
    n = g.vertex_count
    colors = [-1] * n
    sat = [0] * n  # bitmask of neighbor colors
    for _ in range(n):
        u = max(
            (v for v in range(n) if colors[v] == -1),
            key=lambda v: (sat[v].bit_count(), g.degree(v), -v),
        )
        c = 0
        while (sat[u] >> c) & 1:
            c += 1
        colors[u] = c
        for w in g.neighbors(u):
            if colors[w] == -1:
                sat[w] |= 1 << c
    return colors


def _k_colorable(g: SimpleGraph, k: int, clique: tuple[int, ...]) -> list[int] | None:
    """Backtracking k-colorability with the max clique pre-colored for symmetry breaking."""
    n = g.vertex_count
    colors = [-1] * n
    sat = [0] * n
    full = (1 << k) - 1
    for c, v in enumerate(clique):
        if c >= k:
            return None
        colors[v] = c
        for w in g.neighbors(v):
            sat[w] |= 1 << c
    if any(colors[v] == -1 and (sat[v] & full) == full for v in range(n)):
        return None

    def pick() -> int:
        return max(
            (v for v in range(n) if colors[v] == -1),
            key=lambda v: ((sat[v] & full).bit_count(), g.degree(v), -v),
        )

    def solve(remaining: int) -> bool:
        if remaining == 0:
            return True
        v = pick()
        avail = full & ~sat[v]
        for c in _bits(avail):
            colors[v] = c
            touched = []
            ok = True
            for w in g.neighbors(v):
                if colors[w] == -1 and not (sat[w] >> c) & 1:
                    sat[w] |= 1 << c
                    touched.append(w)
                    if (sat[w] & full) == full:
                        ok = False
            if ok and solve(remaining - 1):
                return True
            colors[v] = -1
            for w in touched:
                sat[w] &= ~(1 << c)
        return False

    if solve(n - len(clique)):
        return colors
    return None


def chromatic_number(
    g: SimpleGraph, budget: int = DEFAULT_SOLVER_BUDGET
) -> tuple[int, tuple[int, ...]]:
    """Exact chromatic number with a proper coloring witness."""
    n = g.vertex_count
    _check_budget("chromatic_number", n, budget)
    if g.edge_count == 0:
        return 1, (0,) * n
    lower, clique = clique_number(g, budget)
    greedy = dsatur_greedy(g)
    upper = max(greedy) + 1
    if upper == lower:
        return lower, tuple(greedy)
    for k in range(lower, upper):
        attempt = _k_colorable(g, k, clique)
        if attempt is not None:
            return k, tuple(attempt)
    return upper, tuple(greedy)


# ---------------------------------------------------------------------------
# Vertex connectivity: Menger via unit-capacity flow on the split digraph


def _max_vertex_disjoint_paths(g: SimpleGraph, s: int, t: int) -> tuple[int, list[int]]:
    """Max s-t vertex-disjoint paths and a minimum separating vertex set."""
    n = g.vertex_count
    big = n + 2
    cap: dict[int, dict[int, int]] = {}

    def arc(a: int, b: int, c: int) -> None:
        cap.setdefault(a, {})[b] = cap.get(a, {}).get(b, 0) + c
        cap.setdefault(b, {}).setdefault(a, 0)

    for v in range(n):
        arc(2 * v, 2 * v + 1, 1)  # internal arc carries the vertex capacity
    for u, v in g.edges():
        arc(2 * u + 1, 2 * v, big)
        arc(2 * v + 1, 2 * u, big)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while True:
        prev = {source: -1}
        queue = deque([source])
        while queue and sink not in prev:
            a = queue.popleft()
            for b, c in cap.get(a, {}).items():
                if c > 0 and b not in prev:
                    prev[b] = a
                    queue.append(b)
        if sink not in prev:
            break
        b = sink
        while b != source:
            a = prev[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        flow += 1
    reach = {source}
    queue = deque([source])
    while queue:
        a = queue.popleft()
        for b, c in cap.get(a, {}).items():
            if c > 0 and b not in reach:
                reach.add(b)
                queue.append(b)
    cut = [v for v in range(n) if v not in (s, t) and 2 * v in reach and 2 * v + 1 not in reach]
    return flow, cut


def vertex_connectivity(g: SimpleGraph) -> tuple[int, tuple[int, ...] | None]:
    """Exact kappa: min over non-adjacent pairs of max vertex-disjoint paths.

    Complete graphs return n - 1 by convention (no cut witness); disconnected
    graphs return 0 with an empty witness.
    """
    n = g.vertex_count
    if n == 1 or is_complete(g):
        return n - 1, None
    best = n
    best_cut: list[int] | None = None
    for s in range(n):
        for t in range(s + 1, n):
            if g.has_edge(s, t):
                continue
            value, cut = _max_vertex_disjoint_paths(g, s, t)
            if value < best:
                best = value
                best_cut = cut
                if best == 0:
                    return 0, tuple(sorted(best_cut))
    return best, tuple(sorted(best_cut if best_cut is not None else []))


# ---------------------------------------------------------------------------
# Exact planarity: density filter, biconnected split, Demoucron face embedding


def _biconnected_edge_groups(n: int, adj: list[set[int]]) -> list[list[tuple[int, int]]]:
    """Edge sets of the biconnected components (standard lowpoint edge stack)."""
    disc = [0] * n
    low = [0] * n
    visited = [False] * n
    timer = 1
    estack: list[tuple[int, int]] = []
    comps: list[list[tuple[int, int]]] = []
    for root in range(n):
        if visited[root]:
            continue
        stack: list[tuple[int, int, list[int]]] = [(root, -1, sorted(adj[root]))]
        visited[root] = True
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            u, parent, nbrs = stack[-1]
            advanced = False
            while nbrs:
                v = nbrs.pop(0)
                if v == parent:
                    continue
                if not visited[v]:
                    estack.append((u, v))
                    visited[v] = True
                    disc[v] = low[v] = timer
                    timer += 1
                    stack.append((v, u, sorted(adj[v])))
                    advanced = True
                    break
                if disc[v] < disc[u]:
                    estack.append((u, v))
                    low[u] = min(low[u], disc[v])
            if advanced:
                continue
            stack.pop()
            if stack:
                pu = stack[-1][0]
                low[pu] = min(low[pu], low[u])
                if low[u] >= disc[pu]:
                    comp = []
                    while True:
                        e = estack.pop()
                        comp.append(e)
                        if e == (pu, u):
                            break
                    comps.append(comp)
    return comps


def _find_cycle(adj: dict[int, set[int]], start: int) -> list[int]:
    """Some simple cycle in a biconnected graph with at least one cycle."""
    parent = {start: -1}
    depth = {start: 0}
    stack = [start]
    order = []
    while stack:
        u = stack.pop()
        order.append(u)
        for v in sorted(adj[u]):
            if v not in parent:
                parent[v] = u
                depth[v] = depth[u] + 1
                stack.append(v)
    # DFS above is preorder only; rescan edges for one giving a cycle in the tree.
    for u in order:
        for v in sorted(adj[u]):
            if parent[u] == v or parent[v] == u:
                continue
            # walk both vertices up to their common ancestor
            pu, pv = u, v
            au, av = [pu], [pv]
            while depth[pu] > depth[pv]:
                pu = parent[pu]
                au.append(pu)
            while depth[pv] > depth[pu]:
                pv = parent[pv]
                av.append(pv)
            while pu != pv:
                pu = parent[pu]
                pv = parent[pv]
                au.append(pu)
                av.append(pv)
            return au + list(reversed(av[:-1]))
    raise AssertionError("biconnected component of size >= 3 must contain a cycle")


def _demoucron_planar(vertices: list[int], edges: list[tuple[int, int]]) -> bool:
    """Demoucron's incremental embedding: place one fragment path per step."""
    n = len(vertices)
    if n <= 4:
        return True
    m = len(edges)
    if m > 3 * n - 6:
        return False
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    cycle = _find_cycle(adj, min(vertices))
    faces: list[list[int]] = [list(cycle), list(reversed(cycle))]
    embedded_v = set(cycle)
    embedded_e = {frozenset((cycle[i], cycle[(i + 1) % len(cycle)])) for i in range(len(cycle))}
    all_edges = {frozenset(e) for e in edges}

    while embedded_e != all_edges:
        fragments: list[tuple[tuple[int, ...], frozenset[int]]] = []
        for u in sorted(embedded_v):
            for v in sorted(adj[u]):
                if v > u and v in embedded_v and frozenset((u, v)) not in embedded_e:
                    fragments.append(((u, v), frozenset()))
        seen: set[int] = set()
        for s in sorted(v for v in vertices if v not in embedded_v):
            if s in seen:
                continue
            comp = {s}
            queue = deque([s])
            seen.add(s)
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if w not in embedded_v and w not in comp:
                        comp.add(w)
                        seen.add(w)
                        queue.append(w)
            att = sorted({w for u in comp for w in adj[u] if w in embedded_v})
            fragments.append((tuple(att), frozenset(comp)))

        chosen = None
        for att, interior in fragments:
            admissible = [i for i, f in enumerate(faces) if set(att) <= set(f)]
            if not admissible:
                return False
            if len(admissible) == 1:
                chosen = (att, interior, admissible[0])
                break
            if chosen is None:
                chosen = (att, interior, admissible[0])
        att, interior, face_idx = chosen

        if not interior:
            path = [att[0], att[1]]
        else:
            a1 = att[0]
            targets = set(att) - {a1}
            prev: dict[int, int] = {}
            queue = deque()
            for w in sorted(adj[a1] & interior):
                prev[w] = a1
                queue.append(w)
            end = None
            while queue and end is None:
                u = queue.popleft()
                hits = sorted(adj[u] & targets)
                if hits:
                    end = (u, hits[0])
                    break
                for w in sorted(adj[u] & interior):
                    if w not in prev:
                        prev[w] = u
                        queue.append(w)
            if end is None:
                raise AssertionError("fragment in a biconnected graph must link two attachments")
            u, a2 = end
            back = [a2, u]
            while back[-1] != a1:
                back.append(prev[back[-1]])
            path = list(reversed(back))

        for a, b in zip(path, path[1:]):
            embedded_e.add(frozenset((a, b)))
        embedded_v.update(path)
        face = faces[face_idx]
        i, j = face.index(path[0]), face.index(path[-1])
        if i <= j:
            arc1 = face[i : j + 1]
            arc2 = face[j:] + face[: i + 1]
        else:
            arc1 = face[i:] + face[: j + 1]
            arc2 = face[j : i + 1]
        inner = path[1:-1]
        faces[face_idx] = arc1 + list(reversed(inner))
        faces.append(arc2 + inner)
    return True


def is_planar(g: SimpleGraph, budget: int = DEFAULT_SOLVER_BUDGET) -> bool:
    """Exact planarity: edge-density rejection, then Demoucron per biconnected component."""
    n = g.vertex_count
    _check_budget("is_planar", n, budget)
    if n <= 4:
        return True
    if g.edge_count > 3 * n - 6:
        return False
    adj = [set(g.neighbors(u)) for u in range(n)]
    for comp_edges in _biconnected_edge_groups(n, adj):
        comp_vertices = sorted({v for e in comp_edges for v in e})
        if len(comp_vertices) < 3:
            continue
        dedup = sorted({tuple(sorted(e)) for e in comp_edges})
        if not _demoucron_planar(comp_vertices, dedup):
            return False
    return True


# ---------------------------------------------------------------------------
# Perfect graphs: bounded exhaustive odd-hole search in the graph and complement


def _has_odd_hole(g: SimpleGraph) -> bool:
    n = g.vertex_count
    if n < 5:
        return False
    rows = g.rows

    def extend(v0: int, allowed: int, path_len: int, last: int, visited: int, bad: int) -> bool:
        cands = rows[last] & allowed & ~visited & ~bad
        for u in _bits(cands):
            if (rows[u] >> v0) & 1:
                length = path_len + 1
                if length >= 5 and length % 2 == 1:
                    return True
            elif extend(v0, allowed, path_len + 1, u, visited | (1 << u), bad | rows[last]):
                return True
        return False

    full = (1 << n) - 1
    for v0 in range(n):
        allowed = full & ~((1 << (v0 + 1)) - 1)  # the hole's smallest vertex is v0
        for v1 in _bits(rows[v0] & allowed):
            if extend(v0, allowed, 2, v1, (1 << v0) | (1 << v1), 0):
                return True
    return False


def is_perfect(g: SimpleGraph, budget: int = DEFAULT_ODD_HOLE_BUDGET) -> bool:
    """No induced odd cycle of length >= 5 in the graph or its complement."""
    _check_budget("is_perfect", g.vertex_count, budget)
    return not _has_odd_hole(g) and not _has_odd_hole(g.complement())


# ---------------------------------------------------------------------------
# Hamiltonian cycles: exact backtracking with degree and connectivity pruning


def _mask_connected(rows: tuple[int, ...], mask: int, start: int) -> bool:
    seen = 1 << start
    queue = [start]
    while queue:
        u = queue.pop()
        fresh = rows[u] & mask & ~seen
        seen |= fresh
        queue.extend(_bits(fresh))
    return seen & mask == mask


def hamiltonian_cycle(
    g: SimpleGraph, budget: int = DEFAULT_SOLVER_BUDGET
) -> tuple[int, ...] | None:
    """A Hamiltonian cycle as a vertex sequence, or None when provably absent."""
    n = g.vertex_count
    _check_budget("hamiltonian_cycle", n, budget)
    if n < 3:
        return None
    rows = g.rows
    if any(rows[u].bit_count() < 2 for u in range(n)):
        return None
    full = (1 << n) - 1
    if not _mask_connected(rows, full, 0):
        return None
    nbr_order = [
        sorted(_bits(rows[u]), key=lambda v: (rows[v].bit_count(), v)) for u in range(n)
    ]
    path = [0]

    def solve(u: int, visited: int) -> bool:
        if len(path) == n:
            return (rows[u] >> 0) & 1 == 1
        remaining = (full & ~visited) | (1 << u)
        if not _mask_connected(rows, remaining, u):
            return False
        usable = full & ~visited | (1 << u) | 1
        for w in _bits(full & ~visited):
            if (rows[w] & usable).bit_count() < 2:
                return False
        for v in nbr_order[u]:
            bit = 1 << v
            if visited & bit:
                continue
            path.append(v)
            if solve(v, visited | bit):
                return True
            path.pop()
        return False

    if solve(0, 1):
        return tuple(path)
    return None


# ---------------------------------------------------------------------------
# Eulerian circuit extraction (Hierholzer), for witness validation


def eulerian_circuit(g: SimpleGraph) -> tuple[int, ...] | None:
    """A closed trail covering every edge once, or None when the graph is not Eulerian."""
    if not is_eulerian(g):
        return None
    if g.edge_count == 0:
        return (0,)
    nbrs = [sorted(g.neighbors(u)) for u in range(g.vertex_count)]
    pointer = [0] * g.vertex_count
    used: set[frozenset[int]] = set()
    stack = [0]
    circuit: list[int] = []
    while stack:
        v = stack[-1]
        advanced = False
        while pointer[v] < len(nbrs[v]):
            w = nbrs[v][pointer[v]]
            pointer[v] += 1
            edge = frozenset((v, w))
            if edge not in used:
                used.add(edge)
                stack.append(w)
                advanced = True
                break
        if not advanced:
            circuit.append(stack.pop())
    return tuple(reversed(circuit))


# ---------------------------------------------------------------------------
# Degree formula for power graphs


def degree_in_power_graph_formula(G: FiniteGroup, v: int) -> int:
    """Closed-form degree in the power graph: sum of phi over the cyclic subgroups
    properly containing <v>, plus order(v) - 1."""
    cyclics = {G.cyclic_subgroup(a) for a in G.elements()}
    span = G.cyclic_subgroup(v)
    total = sum(euler_phi(len(c)) for c in cyclics if span < c)
    return total + G.element_order(v) - 1


# ---------------------------------------------------------------------------
# One-shot invariant bundle


@dataclass
class GraphInvariants:
    """Every invariant the toolkit knows how to compute for one graph."""

    vertex_count: int
    edge_count: int
    degree_sequence: tuple[int, ...]
    is_connected: bool
    is_complete: bool
    is_regular: bool
    is_bipartite: bool
    is_tree: bool
    is_eulerian: bool
    girth: int | None
    clique_number: int | None = None
    chromatic_number: int | None = None
    vertex_connectivity: int | None = None
    is_planar: bool | None = None
    is_perfect: bool | None = None
    is_hamiltonian: bool | None = None
    clique_witness: tuple[int, ...] | None = None
    coloring: tuple[int, ...] | None = None
    vertex_cut: tuple[int, ...] | None = None
    hamiltonian_cycle: tuple[int, ...] | None = None
    skipped: tuple[str, ...] = ()


def basic_invariants(g: SimpleGraph) -> GraphInvariants:
    """The polynomial-time block: counts, degrees, connectivity, parity, and shape flags."""
    return GraphInvariants(
        vertex_count=g.vertex_count,
        edge_count=g.edge_count,
        degree_sequence=degree_sequence(g),
        is_connected=is_connected(g),
        is_complete=is_complete(g),
        is_regular=is_regular(g),
        is_bipartite=is_bipartite(g),
        is_tree=is_tree(g),
        is_eulerian=is_eulerian(g),
        girth=girth(g),
    )


def compute_invariants(
    g: SimpleGraph,
    solver_budget: int = DEFAULT_SOLVER_BUDGET,
    odd_hole_budget: int = DEFAULT_ODD_HOLE_BUDGET,
) -> GraphInvariants:
    """Everything at once; budget-exceeding solver fields stay None and are listed in skipped."""
    inv = basic_invariants(g)
    skipped: list[str] = []
    try:
        inv.clique_number, inv.clique_witness = clique_number(g, solver_budget)
        inv.chromatic_number, inv.coloring = chromatic_number(g, solver_budget)
    except BudgetExceeded:
        skipped.extend(["clique_number", "chromatic_number"])
    inv.vertex_connectivity, inv.vertex_cut = vertex_connectivity(g)
    try:
        inv.is_planar = is_planar(g, solver_budget)
    except BudgetExceeded:
        skipped.append("is_planar")
    try:
        inv.is_perfect = is_perfect(g, odd_hole_budget)
    except BudgetExceeded:
        skipped.append("is_perfect")
    try:
        cycle = hamiltonian_cycle(g, solver_budget)
        inv.is_hamiltonian = cycle is not None
        inv.hamiltonian_cycle = cycle
    except BudgetExceeded:
        skipped.append("is_hamiltonian")
    inv.skipped = tuple(skipped)
    return inv


def invariants_to_json_obj(inv: GraphInvariants) -> dict:
    """Flat JSON object with stable key order; witnesses grouped under one sub-object."""
    obj = {
        "vertex_count": inv.vertex_count,
        "edge_count": inv.edge_count,
        "degree_sequence": list(inv.degree_sequence),
        "is_connected": inv.is_connected,
        "is_complete": inv.is_complete,
        "is_regular": inv.is_regular,
        "is_bipartite": inv.is_bipartite,
        "is_tree": inv.is_tree,
        "is_eulerian": inv.is_eulerian,
        "girth": inv.girth,
        "clique_number": inv.clique_number,
        "chromatic_number": inv.chromatic_number,
        "vertex_connectivity": inv.vertex_connectivity,
        "is_planar": inv.is_planar,
        "is_perfect": inv.is_perfect,
        "is_hamiltonian": inv.is_hamiltonian,
    }
    witnesses = {}
    if inv.clique_witness is not None:
        witnesses["clique"] = list(inv.clique_witness)
    if inv.coloring is not None:
        witnesses["coloring"] = list(inv.coloring)
    if inv.vertex_cut is not None:
        witnesses["vertex_cut"] = list(inv.vertex_cut)
    if inv.hamiltonian_cycle is not None:
        witnesses["hamiltonian_cycle"] = list(inv.hamiltonian_cycle)
    if witnesses:
        obj["witnesses"] = witnesses
    if inv.skipped:
        obj["skipped"] = list(inv.skipped)
    return obj
