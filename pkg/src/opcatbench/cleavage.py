"""Cleavages: lifting squares for base isomorphisms and their checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any

from .errors import ConfigError, NoLiftError
from .finset import (
    FinSet,
    Ordinal,
    SetMap,
    canonical_order_iso,
    carrier_elements,
    compose as cmap,
    preimage,
)
from .opcat import AxiomReport, Mor, OperadicCategory


@dataclass(frozen=True)
class LiftResult:
    target: Any
    lift: Mor


def lift(C: OperadicCategory, sigma: SetMap, S) -> LiftResult:
    """The fixture's chosen lift of a base isomorphism, validated."""
    if C.lift is None:
        raise ConfigError(f"fixture {C.name} supplies no cleavage")
    if not sigma.is_bijective:
        raise ConfigError(f"{sigma!r} is not an isomorphism")
    if sigma.domain != C.cardinality(S):
        raise ConfigError(
            f"domain {sigma.domain!r} is not the cardinality of {S!r}"
        )
    res = C.lift(sigma, S)
    if res.lift.card != sigma or res.lift.src != S or res.lift.dst != res.target:
        raise ConfigError(f"fixture returned an inconsistent lift for {sigma!r}")
    return res


def unit_translate(C: OperadicCategory, U, x):
    """U^{x}: the target of the lift of the unique bijection {1} -> {x}."""
    sigma = SetMap.of(C.cardinality(U), FinSet.of([x]), {1: x})
    return lift(C, sigma, U).target


def thin_isos(C: OperadicCategory):
    """All permutations of the ordinal cardinality (thin cleavage scope)."""

    def gen(S):
        n = C.cardinality(S)
        out = []
        for perm in itertools.permutations(n.elements):
            out.append(SetMap.of(n, n, dict(zip(n.elements, perm))))
        return out

    return gen


def thick_isos(C: OperadicCategory, universe: FinSet):
    """All bijections from the cardinality onto equal-sized subsets of the
    atom universe (thick cleavage scope)."""

    def gen(S):
        X = C.cardinality(S)
        xs = carrier_elements(X)
        out = []
        for ys in itertools.combinations(universe.elements, len(xs)):
            Y = FinSet.of(ys)
            for perm in itertools.permutations(ys):
                out.append(SetMap.of(X, Y, dict(zip(xs, perm))))
        return out

    return gen


def base_fiber_iso(C: OperadicCategory, f: Mor, ftilde: Mor, rho: SetMap, a, b) -> SetMap:
    """The induced base isomorphism rho_a : |f^{-1}(a)| -> |ftilde^{-1}(b)|."""
    pre_a = preimage(f.card, a)
    pre_b = preimage(ftilde.card, b)
    restricted = rho.restrict(pre_a, codomain=pre_b)
    if C.mode == "thick":
        return restricted
    can_a = canonical_order_iso(pre_a)
    can_b = canonical_order_iso(pre_b)
    return cmap(can_b, cmap(restricted, can_a.inverse()))


def transported_morphism(C: OperadicCategory, f: Mor, rho: SetMap, sigma: SetMap) -> Mor:
    """sigma-lift . f . (rho-lift)^{-1}, the top row of the thick cube."""
    rl = lift(C, rho, f.src)
    sl = lift(C, sigma, f.dst)
    rl_inv = lift(C, rho.inverse(), rl.target)
    return C.compose(C.compose(sl.lift, f), rl_inv.lift)


def check_cleavage(C: OperadicCategory) -> AxiomReport:
    """Existence, functoriality and fiber compatibility of the cleavage."""
    rep = AxiomReport(f"cleavage[{C.name}]")
    if C.lift is None or C.isos is None:
        rep.add("cleavage", "cleavage supplied", False,
                f"fixture {C.name} has no cleavage")
        return rep

    objs = C.enumerate_objects()

    # (a) existence of lifts for every isomorphism in scope
    bad = None
    for S in objs:
        for sigma in C.isos(S):
            try:
                lift(C, sigma, S)
            except NoLiftError as e:
                bad = f"S={S!r} sigma={sigma!r}: {e}"
                break
        if bad:
            break
    rep.add("cleavage", "lifts exist", bad is None, bad)
    if bad is not None:
        return rep

    # (b) identity preservation and functoriality
    bad = None
    for S in objs:
        ident = SetMap.identity(C.cardinality(S))
        if lift(C, ident, S).lift != C.identity(S):
            bad = f"S={S!r}: lift of the identity is not the identity"
            break
    rep.add("cleavage", "lift of identity is identity", bad is None, bad)

    bad = None
    for S in objs:
        for s1 in C.isos(S):
            r1 = lift(C, s1, S)
            seconds = list(C.isos(r1.target)) if r1.target is not None else []
            if s1.inverse() not in seconds:
                seconds.append(s1.inverse())
            for s2 in seconds:
                try:
                    r2 = lift(C, s2, r1.target)
                    r12 = lift(C, cmap(s2, s1), S)
                except NoLiftError as e:
                    bad = f"S={S!r} s1={s1!r} s2={s2!r}: {e}"
                    break
                if C.compose(r2.lift, r1.lift) != r12.lift:
                    bad = (
                        f"S={S!r} s1={s1!r} s2={s2!r}: composite of lifts "
                        f"differs from lift of composite"
                    )
                    break
            if bad:
                break
        if bad:
            break
    rep.add("cleavage", "functoriality of lifts", bad is None, bad)
    if not rep.passed:
        return rep

    # (c) fiber compatibility: lifting squares over every morphism
    bad = None
    for f in C.all_morphisms():
        for rho in C.isos(f.src):
            for sigma in C.isos(f.dst):
                ftilde = transported_morphism(C, f, rho, sigma)
                for a in C.elements(f.dst):
                    b = sigma(a)
                    rho_a = base_fiber_iso(C, f, ftilde, rho, a, b)
                    try:
                        res = lift(C, rho_a, C.fiber(f, a))
                    except NoLiftError as e:
                        bad = f"f={f!r} rho={rho!r} a={a!r}: {e}"
                        break
                    if res.target != C.fiber(ftilde, b):
                        bad = (
                            f"f={f!r} rho={rho!r} sigma={sigma!r} a={a!r}: "
                            f"lift target {res.target!r} != fiber "
                            f"{C.fiber(ftilde, b)!r} of the transported morphism"
                        )
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    rep.add("cleavage", "fiber compatibility (lifting squares)", bad is None, bad)
    return rep
