"""Thick graphs, their morphisms and the operadic category GR.

A graph is a finite set of flags (half-edges) over a nonempty vertex
set together with an involution; fixed flags are legs, 2-cycles are
edges.  Objects of GR carry global labels identified with the legs, and
morphisms are contravariant on flags, covariant and surjective on
vertices, keep the labels fixed and satisfy the edge condition.  The
cardinality of a graph is its vertex set, the fiber of a morphism over
a target vertex is the subgraph sitting above it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cleavage import LiftResult, thick_isos
from .errors import ConfigError, ConstructionError, DomainError
from .finset import (
    FinSet,
    SetMap,
    atom_key,
    carrier_of,
    compose as cmap,
    preimage,
    sort_atoms,
)
from .opcat import AxiomReport, Mor, OperadicCategory

FLAG_POOL = FinSet.of(["a", "b", "c", "d", "p", "q", "r", "s"])
VERTEX_UNIVERSE = FinSet.of([1, 2, 3])


@dataclass(frozen=True)
class Graph:
    """A pair (vertex assignment, involution) on a finite flag set."""

    flags: FinSet
    vertices: FinSet
    vertex_of: SetMap  # flags -> vertices
    involution: SetMap  # flags -> flags


@dataclass(frozen=True)
class LabeledGraph:
    """A graph with global labels injecting onto its legs."""

    graph: Graph
    labels: FinSet
    leg_injection: SetMap  # labels -> flags

    def __repr__(self):
        g = self.graph
        e = ",".join(f"{h1}~{h2}" for h1, h2 in edges(g))
        return (
            f"Graph(V={g.vertices!r} F={g.flags!r} g={g.vertex_of!r} "
            f"edges=[{e}] labels={self.labels!r})"
        )


@dataclass(frozen=True)
class GraphMor:
    """flag_map runs against the arrow (target flags to source flags)."""

    source: LabeledGraph
    target: LabeledGraph
    flag_map: SetMap  # flags(target) -> flags(source)
    vertex_map: SetMap  # vertices(source) -> vertices(target)


def graph(flags, vertices, vertex_of: dict, swaps=()) -> Graph:
    """Build a graph from a vertex assignment and a list of edge pairs."""
    F = FinSet.of(flags)
    V = FinSet.of(vertices)
    inv = {h: h for h in F}
    for h1, h2 in swaps:
        inv[h1] = h2
        inv[h2] = h1
    return Graph(F, V, SetMap.of(F, V, vertex_of), SetMap.of(F, F, inv))


def legs(g: Graph) -> FinSet:
    return FinSet.of([h for h in g.flags if g.involution(h) == h])


def edges(g: Graph) -> tuple:
    """The 2-cycles of the involution, as sorted flag pairs."""
    seen = set()
    out = []
    for h in g.flags:
        k = g.involution(h)
        if k != h and h not in seen:
            seen.add(h)
            seen.add(k)
            out.append(tuple(sort_atoms((h, k))))
    return tuple(sorted(out))


def labeled(g: Graph, labels=None) -> LabeledGraph:
    """Label a graph by its own legs (the standard form of GR objects)."""
    L = legs(g) if labels is None else FinSet.of(labels)
    inj = SetMap.of(L, g.flags, {x: x for x in L})
    return LabeledGraph(g, L, inj)


def corolla(X, hub=1) -> LabeledGraph:
    """The chosen local terminal: one vertex, flags X, trivial involution."""
    F = FinSet.of(X)
    return labeled(graph(F, [hub], {x: hub for x in F}))


def as_mor(m: GraphMor) -> Mor:
    return Mor(m.source, m.target, m.vertex_map, payload=m.flag_map)


def as_graph_mor(m: Mor) -> GraphMor:
    return GraphMor(m.src, m.dst, m.payload, m.card)


def validate_graph(g) -> AxiomReport:
    """Structural invariants of a (labeled) graph."""
    rep = AxiomReport("graph")
    lab = g if isinstance(g, LabeledGraph) else None
    if lab is not None:
        g = lab.graph

    ok = (
        g.involution.domain == g.flags
        and g.involution.codomain == g.flags
        and all(g.involution(g.involution(h)) == h for h in g.flags)
    )
    rep.add("graph", "involution squares to the identity", ok,
            None if ok else f"involution {g.involution!r} is not self-inverse")
    rep.add("graph", "vertex set is nonempty", len(g.vertices) > 0,
            "a graph needs at least one vertex")
    ok2 = (
        g.vertex_of.domain == g.flags and g.vertex_of.codomain == g.vertices
    )
    rep.add("graph", "vertex assignment is total on the flags", ok2,
            None if ok2 else f"vertex assignment {g.vertex_of!r} mismatched")
    if ok:
        halves = {h for e in edges(g) for h in e}
        part = halves.isdisjoint(legs(g)) and (
            halves | set(legs(g)) == set(g.flags.elements)
        )
        rep.add("graph", "legs and edge halves partition the flags", part,
                None if part else f"flags {g.flags!r} not covered")
    if lab is not None:
        inj = lab.leg_injection
        image = [inj(x) for x in lab.labels]
        ok3 = (
            inj.domain == lab.labels
            and len(set(image)) == len(image)
            and FinSet.of(set(image)) == legs(g)
        )
        rep.add("graph", "labels inject onto the legs", ok3,
                None if ok3 else
                f"labels {lab.labels!r} do not match legs {legs(g)!r}")
    return rep


def validate_graph_morphism(m: GraphMor) -> AxiomReport:
    """All morphism invariants, with the edge condition checked by search."""
    rep = AxiomReport("graph-morphism")
    sg, tg = m.source.graph, m.target.graph
    psi, phi = m.flag_map, m.vertex_map

    ok = validate_graph(m.source).passed and validate_graph(m.target).passed
    rep.add("graph-morphism", "endpoint graphs are well-formed", ok,
            "source or target fails the graph invariants")
    if not ok:
        return rep

    values = [psi(h) for h in tg.flags]
    ok = (
        psi.domain == tg.flags
        and psi.codomain == sg.flags
        and len(set(values)) == len(values)
    )
    rep.add("graph-morphism", "flag map is injective", ok,
            None if ok else f"flag map {psi!r} not injective into the source")

    ok = phi.domain == sg.vertices and phi.codomain == tg.vertices and (
        {phi(v) for v in sg.vertices} == set(tg.vertices.elements)
    )
    rep.add("graph-morphism", "vertex map is surjective", ok,
            None if ok else f"vertex map {phi!r} not onto {tg.vertices!r}")

    bad = None
    for h in tg.flags:
        if phi(sg.vertex_of(psi(h))) != tg.vertex_of(h):
            bad = f"square fails at flag {h!r}"
            break
    rep.add("graph-morphism", "vertex square commutes", bad is None, bad)

    bad = None
    for h in tg.flags:
        if psi(tg.involution(h)) != sg.involution(psi(h)):
            bad = f"equivariance fails at flag {h!r}"
            break
    rep.add("graph-morphism", "flag map is equivariant", bad is None, bad)

    leg_image = {psi(h) for h in legs(tg)}
    ok = leg_image == set(legs(sg).elements) and len(leg_image) == len(legs(tg))
    rep.add("graph-morphism", "flag map is bijective on legs", ok,
            None if ok else
            f"legs {legs(tg)!r} map to {sorted(map(str, leg_image))}, "
            f"expected {legs(sg)!r}")

    covered = {frozenset((psi(h1), psi(h2))) for h1, h2 in edges(tg)}
    bad = None
    for h1, h2 in edges(sg):
        if phi(sg.vertex_of(h1)) != phi(sg.vertex_of(h2)):
            if frozenset((h1, h2)) not in covered:
                bad = (
                    f"edge {h1}~{h2} separates vertices but is not the "
                    f"image of a target edge"
                )
                break
    rep.add("graph-morphism", "edge condition", bad is None, bad)

    bad = None
    if m.source.labels != m.target.labels:
        bad = (
            f"label sets differ: {m.source.labels!r} vs {m.target.labels!r}"
        )
    else:
        for x in m.source.labels:
            if psi(m.target.leg_injection(x)) != m.source.leg_injection(x):
                bad = f"label {x!r} is not kept fixed"
                break
    rep.add("graph-morphism", "global labels are fixed", bad is None, bad)
    return rep


def graph_fiber(m: GraphMor, x) -> LabeledGraph:
    """The subgraph over a target vertex, labeled by the target's flags
    at that vertex."""
    sg, tg = m.source.graph, m.target.graph
    psi, phi = m.flag_map, m.vertex_map
    if x not in tg.vertices:
        raise DomainError(f"{x!r} is not a vertex of the target")

    verts = preimage(phi, x)
    flgs = preimage(cmap(phi, sg.vertex_of), x)
    image = {psi(h) for h in tg.flags}
    tau = {h: (h if h in image else sg.involution(h)) for h in flgs}
    g = Graph(
        flgs,
        verts,
        sg.vertex_of.restrict(flgs, codomain=verts),
        SetMap.of(flgs, flgs, tau),
    )
    lab = preimage(tg.vertex_of, x)
    inj = SetMap.of(lab, flgs, {h: psi(h) for h in lab})
    return LabeledGraph(g, lab, inj)


def gr_lift(G: LabeledGraph, phi: SetMap) -> LiftResult:
    """Cleavage lift of a vertex relabeling: same flags, same involution,
    vertices renamed along phi."""
    g = G.graph
    if not phi.is_bijective:
        raise ConfigError(f"{phi!r} is not a vertex isomorphism")
    if phi.domain != g.vertices:
        raise ConfigError(f"{phi!r} does not start at {g.vertices!r}")
    W = carrier_of(phi.codomain)
    tgt = Graph(g.flags, W, cmap(phi, g.vertex_of), g.involution)
    target = LabeledGraph(tgt, G.labels, G.leg_injection)
    return LiftResult(target, Mor(G, target, phi,
                                  payload=SetMap.identity(g.flags)))


def build_edge_contraction(G: LabeledGraph, edges_to_contract) -> GraphMor:
    """The morphism collapsing the chosen edges; each merged vertex class
    is named by its smallest member."""
    g = G.graph
    all_edges = {frozenset(e) for e in edges(g)}
    chosen = set()
    for e in edges_to_contract:
        fe = frozenset(e)
        if fe not in all_edges:
            raise ConstructionError(f"{set(e)!r} is not an edge of the graph")
        chosen.add(fe)

    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in chosen:
        h1, h2 = tuple(e)
        parent[find(g.vertex_of(h1))] = find(g.vertex_of(h2))
    classes = {}
    for v in g.vertices:
        classes.setdefault(find(v), []).append(v)
    rep = {}
    for members in classes.values():
        name = min(members, key=atom_key)
        for v in members:
            rep[v] = name

    W = FinSet.of(set(rep.values()))
    removed = {h for e in chosen for h in e}
    F2 = FinSet.of([h for h in g.flags if h not in removed])
    tgt = Graph(
        F2,
        W,
        SetMap.of(F2, W, {h: rep[g.vertex_of(h)] for h in F2}),
        SetMap.of(F2, F2, {h: g.involution(h) for h in F2}),
    )
    target = LabeledGraph(
        tgt, G.labels,
        SetMap.of(G.labels, F2, {x: G.leg_injection(x) for x in G.labels}),
    )
    psi = SetMap.of(F2, g.flags, {h: h for h in F2})
    phi = SetMap.of(g.vertices, W, rep)
    return GraphMor(G, target, psi, phi)


def _standard_objects(bound: int) -> list:
    """The bounded GR universe: every shape that exercises the axioms at
    most once per labeling, kept small enough for exhaustive checking."""
    objs = []

    def add(g, labels=None):
        objs.append(labeled(g, labels))

    for hub in (1, 2, 3):
        add(graph([], [hub], {}))  # bald corolla
    add(graph(["a"], [1], {"a": 1}))
    for hub in (1, 2):
        add(graph(["a", "b"], [hub], {"a": hub, "b": hub}))
    add(graph(["a", "b", "c", "d"], [1],
              {"a": 1, "b": 1, "c": 1, "d": 1}))
    add(graph(["c"], [1], {"c": 1}))
    # tadpoles: a single vertex with a loop
    for hub in (1, 2):
        add(graph(["p", "q"], [hub], {"p": hub, "q": hub}, [("p", "q")]))
    add(graph(["c", "p", "q"], [1], {"c": 1, "p": 1, "q": 1}, [("p", "q")]))
    # two vertices joined by an edge, one leg each (the partial
    # composition shape)
    add(graph(["a", "p", "q", "b"], [1, 2],
              {"a": 1, "p": 1, "q": 2, "b": 2}, [("p", "q")]))
    add(graph(["a", "p", "q", "b"], [1, 2],
              {"a": 2, "p": 2, "q": 1, "b": 1}, [("p", "q")]))
    # the same with no legs
    add(graph(["p", "q"], [1, 2], {"p": 1, "q": 2}, [("p", "q")]))
    add(graph(["p", "q"], [1, 2], {"p": 2, "q": 1}, [("p", "q")]))
    # disconnected: two bald vertices
    add(graph([], [1, 2], {}))
    if bound >= 3:
        # a three-vertex chain, once lean and once with 8 flags
        add(graph(["a", "p", "q", "r", "s", "b"], [1, 2, 3],
                  {"a": 1, "p": 1, "q": 2, "r": 2, "s": 3, "b": 3},
                  [("p", "q"), ("r", "s")]))
        add(graph(["a", "p", "q", "c", "r", "s", "b", "d"], [1, 2, 3],
                  {"a": 1, "p": 1, "q": 2, "c": 2, "r": 2, "s": 3,
                   "b": 3, "d": 3},
                  [("p", "q"), ("r", "s")]))
        # a triangle (no legs) and three bald vertices
        add(graph(["p", "q", "r", "s", "c", "d"], [1, 2, 3],
                  {"p": 1, "q": 2, "r": 2, "s": 3, "c": 3, "d": 1},
                  [("p", "q"), ("r", "s"), ("c", "d")]))
        add(graph([], [1, 2, 3], {}))

    seen = set()
    out = []
    for o in objs:
        if o not in seen:
            seen.add(o)
            out.append(o)
    return out


def _graph_homs(G: LabeledGraph, H: LabeledGraph) -> list:
    """All GR morphisms G -> H: the flag map is forced on legs by the
    labels, sends target edges injectively to source edges, and the
    vertex map ranges over the surjections compatible with the square
    and the edge condition."""
    if G.labels != H.labels:
        return []
    sg, tg = G.graph, H.graph
    base = {H.leg_injection(x): G.leg_injection(x) for x in H.labels}
    eH, eG = edges(tg), edges(sg)
    if len(eH) > len(eG):
        return []
    vG = list(sg.vertices)
    vH = list(tg.vertices)

    out = []
    for assigned in itertools.permutations(eG, len(eH)):
        for bits in itertools.product((0, 1), repeat=len(eH)):
            table = dict(base)
            for (h1, h2), (g1, g2), flip in zip(eH, assigned, bits):
                if flip:
                    g1, g2 = g2, g1
                table[h1] = g1
                table[h2] = g2
            psi = SetMap.of(tg.flags, sg.flags, table)
            covered = {frozenset(e) for e in assigned}
            for values in itertools.product(vH, repeat=len(vG)):
                if set(values) != set(vH):
                    continue
                phi = SetMap.of(sg.vertices, tg.vertices,
                                dict(zip(vG, values)))
                if any(
                    phi(sg.vertex_of(psi(h))) != tg.vertex_of(h)
                    for h in tg.flags
                ):
                    continue
                if any(
                    phi(sg.vertex_of(h1)) != phi(sg.vertex_of(h2))
                    and frozenset((h1, h2)) not in covered
                    for h1, h2 in eG
                ):
                    continue
                out.append(Mor(G, H, phi, payload=psi))
    return out


def gr_category(mode: str = "thick", atom_universe: FinSet | None = None,
                bound: int | None = None) -> OperadicCategory:
    """The operadic category of graphs; cardinality is the vertex set,
    components are indexed by the label sets."""
    if mode == "thin":
        from .equivalence import restrict_category

        return restrict_category(gr_category("thick", atom_universe, bound),
                                 name="thin-gr")
    if mode != "thick":
        raise ConfigError(f"unknown gr mode {mode!r}")

    universe = atom_universe or VERTEX_UNIVERSE
    bound = 3 if bound is None else bound
    objects = _standard_objects(min(bound, len(universe)))

    def identity(S):
        return Mor(S, S, SetMap.identity(S.graph.vertices),
                   payload=SetMap.identity(S.graph.flags))

    def compose_(g, f):
        return Mor(f.src, g.dst, cmap(g.card, f.card),
                   payload=cmap(f.payload, g.payload))

    def fiber_(f, x):
        return graph_fiber(as_graph_mor(f), x)

    def induced(f, g, r):
        h = compose_(g, f)
        A = fiber_(h, r)
        B = fiber_(g, r)
        vmap = f.card.restrict(A.graph.vertices, codomain=B.graph.vertices)
        fmap = f.payload.restrict(B.graph.flags, codomain=A.graph.flags)
        return Mor(A, B, vmap, payload=fmap)

    def lift_(sigma, S):
        return gr_lift(S, sigma)

    terminals = {
        FinSet.of(xs): corolla(xs)
        for n in range(len(FLAG_POOL) + 1)
        for xs in itertools.combinations(FLAG_POOL.elements, n)
    }

    C = OperadicCategory(
        name="gr",
        mode="thick",
        objects=lambda: objects,
        hom=_graph_homs,
        identity=identity,
        compose=compose_,
        cardinality=lambda S: S.graph.vertices,
        fiber=fiber_,
        induced=induced,
        lift=lift_,
        chosen_terminals=terminals,
        component_key=lambda S: S.labels,
    )
    C.isos = thick_isos(C, universe)
    return C
