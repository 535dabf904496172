"""Built-in operadic categories plugging into the checkers.

Thin fixtures: fin, ordered-delta (negative cleavage fixture),
terminal-one, omega2 (negative cleavage fixture), thin-gr.
Thick fixtures: bfin, singleton-groupoid, gr.

Thick atom universes default to {1, 2, 3}: integer atoms make the
chosen terminal {1} and the ordinal-shaped cardinalities {1,...,n} of
the restriction functor concrete.
"""

from __future__ import annotations

import itertools

from .cleavage import LiftResult, thick_isos, thin_isos
from .errors import ConfigError, NoLiftError
from .finset import (
    FinSet,
    Ordinal,
    SetMap,
    canonical_order_iso,
    compose as cmap,
    induced_on_preimages,
    preimage,
    pullback_fiber,
)
from .opcat import Mor, OperadicCategory

FIXTURE_NAMES = (
    "fin",
    "bfin",
    "singleton-groupoid",
    "terminal-one",
    "omega2",
    "ordered-delta",
    "gr",
    "thin-gr",
)

DEFAULT_THICK_UNIVERSE = FinSet.of([1, 2, 3])


def _ordinal_maps(m: int, n: int):
    dom, cod = Ordinal(m), Ordinal(n)
    if m == 0:
        yield SetMap.of(dom, cod, {})
        return
    if n == 0:
        return
    for values in itertools.product(range(1, n + 1), repeat=m):
        yield SetMap.of(dom, cod, dict(zip(range(1, m + 1), values)))


def _thin_induced_card(f: Mor, g: Mor, h: Mor, r) -> SetMap:
    sub = induced_on_preimages(f.card, g.card, h.card, r)
    ch = canonical_order_iso(sub.domain)
    cg = canonical_order_iso(sub.codomain)
    return cmap(cg, cmap(sub, ch.inverse()))


def fin_category(bound: int = 3, monotone_only: bool = False,
                 name: str = "fin") -> OperadicCategory:
    """Thin Fin (all maps of ordinals); ordered-delta keeps monotone maps
    and loses its cleavage on non-monotone permutations."""

    objects = [Ordinal(n) for n in range(bound + 1)]

    def hom(S, T):
        out = []
        for card in _ordinal_maps(S.n, T.n):
            if monotone_only and not card.is_monotone():
                continue
            out.append(Mor(S, T, card))
        return out

    def identity(S):
        return Mor(S, S, SetMap.identity(S))

    def compose_(g, f):
        return Mor(f.src, g.dst, cmap(g.card, f.card))

    def fiber_(f, i):
        k, _ = pullback_fiber(f.card, i)
        return k

    def induced(f, g, r):
        h = compose_(g, f)
        card = _thin_induced_card(f, g, h, r)
        return Mor(card.domain, card.codomain, card)

    def lift_(sigma, S):
        if sigma.codomain != S or not sigma.is_bijective:
            raise NoLiftError(f"thin cleavage lifts only permutations, not {sigma!r}")
        if monotone_only and not sigma.is_monotone():
            raise NoLiftError(
                f"no lift: {sigma!r} does not preserve the order"
            )
        return LiftResult(S, Mor(S, S, sigma))

    C = OperadicCategory(
        name=name,
        mode="thin",
        objects=lambda: objects,
        hom=hom,
        identity=identity,
        compose=compose_,
        cardinality=lambda S: S,
        fiber=fiber_,
        induced=induced,
        lift=lift_,
        chosen_terminals={"*": Ordinal(1)},
        component_key=lambda S: "*",
    )
    C.isos = thin_isos(C)
    return C


def ordered_delta_category(bound: int = 3) -> OperadicCategory:
    return fin_category(bound, monotone_only=True, name="ordered-delta")


def bfin_category(universe: FinSet = DEFAULT_THICK_UNIVERSE) -> OperadicCategory:
    """Thick bold-Fin on subsets of the atom universe; objects are their
    own cardinalities and the cleavage lifts every bijection to itself."""

    subsets = [
        FinSet.of(c)
        for r in range(len(universe) + 1)
        for c in itertools.combinations(universe.elements, r)
    ]

    def hom(S, T):
        xs = S.elements
        if not xs:
            return [Mor(S, T, SetMap.of(S, T, {}))]
        if not T.elements:
            return []
        out = []
        for values in itertools.product(T.elements, repeat=len(xs)):
            out.append(Mor(S, T, SetMap.of(S, T, dict(zip(xs, values)))))
        return out

    def identity(S):
        return Mor(S, S, SetMap.identity(S))

    def compose_(g, f):
        return Mor(f.src, g.dst, cmap(g.card, f.card))

    def induced(f, g, r):
        h = compose_(g, f)
        card = induced_on_preimages(f.card, g.card, h.card, r)
        return Mor(card.domain, card.codomain, card)

    def lift_(sigma, S):
        target = sigma.codomain
        return LiftResult(target, Mor(S, target, sigma))

    if 1 not in universe:
        raise ConfigError("bfin universe must contain the atom 1")
    C = OperadicCategory(
        name="bfin",
        mode="thick",
        objects=lambda: subsets,
        hom=hom,
        identity=identity,
        compose=compose_,
        cardinality=lambda S: S,
        fiber=lambda f, t: preimage(f.card, t),
        induced=induced,
        lift=lift_,
        chosen_terminals={"*": FinSet.of([1])},
        component_key=lambda S: "*",
    )
    C.isos = thick_isos(C, universe)
    return C


def terminal_one_category() -> OperadicCategory:
    """The terminal unary operadic category: one object of cardinality 1."""

    star = "star"
    one = Ordinal(1)

    def identity(S):
        return Mor(star, star, SetMap.identity(one))

    def lift_(sigma, S):
        if sigma.codomain != one or not sigma.is_bijective:
            raise NoLiftError(f"no lift of {sigma!r}")
        return LiftResult(star, identity(star))

    C = OperadicCategory(
        name="terminal-one",
        mode="thin",
        objects=lambda: [star],
        hom=lambda S, T: [identity(star)],
        identity=identity,
        compose=lambda g, f: f,
        cardinality=lambda S: one,
        fiber=lambda f, i: star,
        induced=lambda f, g, r: identity(star),
        lift=lift_,
        chosen_terminals={"*": star},
        component_key=lambda S: "*",
    )
    C.isos = thin_isos(C)
    return C


def singleton_groupoid_category(
    universe: FinSet = DEFAULT_THICK_UNIVERSE,
) -> OperadicCategory:
    """The big groupoid of singleton sets: the thick extension of the
    terminal unary category."""

    if 1 not in universe:
        raise ConfigError("singleton-groupoid universe must contain the atom 1")
    objects = [FinSet.of([x]) for x in universe]

    def the(S, T):
        return Mor(S, T, SetMap.of(S, T, {S.elements[0]: T.elements[0]}))

    def lift_(sigma, S):
        target = sigma.codomain
        return LiftResult(target, Mor(S, target, sigma))

    C = OperadicCategory(
        name="singleton-groupoid",
        mode="thick",
        objects=lambda: objects,
        hom=lambda S, T: [the(S, T)],
        identity=lambda S: the(S, S),
        compose=lambda g, f: the(f.src, g.dst),
        cardinality=lambda S: S,
        fiber=lambda f, t: f.src,
        induced=lambda f, g, r: f,
        lift=lift_,
        chosen_terminals={"*": FinSet.of([1])},
        component_key=lambda S: "*",
    )
    C.isos = thick_isos(C, universe)
    return C


# ---------------------------------------------------------------------------
# Omega_2: 2-trees and their morphisms (negative cleavage fixture)


def _is_tree(t: SetMap) -> bool:
    return t.is_monotone()


def _valid_omega2_mor(src: SetMap, dst: SetMap, omega: SetMap, sigma: SetMap) -> bool:
    # square dst.omega = sigma.src, sigma order-preserving, and the
    # restriction of omega to each leaf fiber of the source tree
    # order-preserving
    if cmap(dst, omega) != cmap(sigma, src):
        return False
    if not sigma.is_monotone():
        return False
    for j in sigma.domain:
        fib = sorted(preimage(src, j).elements)
        vals = [omega(x) for x in fib]
        if any(u > v for u, v in zip(vals, vals[1:])):
            return False
    return True


def omega2_category(max_leaves: int = 4, max_vertices: int = 2) -> OperadicCategory:
    """Batanin's category of 2-trees: objects are monotone maps
    (leaves -> vertices); the cardinality of a morphism is its leaf map."""

    objects = [
        t
        for m in range(max_leaves + 1)
        for n in range(max_vertices + 1)
        for t in _ordinal_maps(m, n)
        if _is_tree(t)
    ]

    def hom(S, T):
        out = []
        for omega in _ordinal_maps(S.domain.n, T.domain.n):
            for sigma in _ordinal_maps(S.codomain.n, T.codomain.n):
                if _valid_omega2_mor(S, T, omega, sigma):
                    out.append(Mor(S, T, omega, payload=sigma))
        return out

    def identity(S):
        return Mor(S, S, SetMap.identity(S.domain),
                   payload=SetMap.identity(S.codomain))

    def compose_(g, f):
        return Mor(f.src, g.dst, cmap(g.card, f.card),
                   payload=cmap(g.payload, f.payload))

    def fiber_(f, i):
        # leaves over the i-th leaf of the target, vertices over its vertex
        src_tree, dst_tree = f.src, f.dst
        leaves = preimage(f.card, i)
        vertices = preimage(f.payload, dst_tree(i))
        cl = canonical_order_iso(leaves)
        cv = canonical_order_iso(vertices)
        return SetMap.of(
            cl.codomain, cv.codomain,
            {cl(x): cv(src_tree(x)) for x in leaves},
        )

    def induced(f, g, r):
        h = compose_(g, f)
        card = _thin_induced_card(f, g, h, r)
        # vertex component: restrict sigma_f between vertex preimages
        rv = g.dst(r)  # the vertex of the target tree over leaf r
        vsub = induced_on_preimages(f.payload, g.payload,
                                    cmap(g.payload, f.payload), rv)
        cvh = canonical_order_iso(vsub.domain)
        cvg = canonical_order_iso(vsub.codomain)
        sigma = cmap(cvg, cmap(vsub, cvh.inverse()))
        return Mor(fiber_(h, r), fiber_(g, r), card, payload=sigma)

    def lift_(sigma, S):
        if sigma.codomain != S.domain or not sigma.is_bijective:
            raise NoLiftError(f"thin cleavage lifts only permutations, not {sigma!r}")
        target = cmap(S, sigma.inverse())
        if not _is_tree(target) or not _valid_omega2_mor(
            S, target, sigma, SetMap.identity(S.codomain)
        ):
            raise NoLiftError(
                f"2-tree {S!r} does not admit a lift of {sigma!r}"
            )
        return LiftResult(target, Mor(S, target, sigma,
                                      payload=SetMap.identity(S.codomain)))

    C = OperadicCategory(
        name="omega2",
        mode="thin",
        objects=lambda: objects,
        hom=hom,
        identity=identity,
        compose=compose_,
        cardinality=lambda S: S.domain,
        fiber=fiber_,
        induced=induced,
        lift=lift_,
        chosen_terminals=None,
        component_key=lambda S: "*",
    )
    C.isos = thin_isos(C)
    return C


def fixture(name: str, atom_universe: FinSet | None = None,
            bound: int | None = None) -> OperadicCategory:
    """Constructor keyed by the stable CLI fixture names."""
    from .graphs import gr_category

    if name == "fin":
        return fin_category(bound if bound is not None else 3)
    if name == "ordered-delta":
        return ordered_delta_category(bound if bound is not None else 3)
    if name == "bfin":
        return bfin_category(atom_universe or DEFAULT_THICK_UNIVERSE)
    if name == "terminal-one":
        return terminal_one_category()
    if name == "singleton-groupoid":
        return singleton_groupoid_category(atom_universe or DEFAULT_THICK_UNIVERSE)
    if name == "omega2":
        return omega2_category(max_leaves=bound if bound is not None else 4)
    if name in ("gr", "thin-gr"):
        return gr_category("thick" if name == "gr" else "thin", bound=bound)
    raise ConfigError(f"unknown fixture {name!r}")
