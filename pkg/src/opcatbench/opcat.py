"""Operadic-category interface (thick and thin) and its checkers.

A category is a lazy descriptor built from callables; "check X" always
means "check X over everything the bounded enumerators yield".  Axiom
failures never abort a suite: they are collected as report entries with
a minimal replayable witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .errors import ConfigError, DomainError
from .finset import (
    FinSet,
    Ordinal,
    SetMap,
    carrier_elements,
    preimage,
)


@dataclass(frozen=True)
class Mor:
    """A morphism: endpoints, cardinality image, fixture payload."""

    src: Any
    dst: Any
    card: SetMap
    payload: Any = None

    def __repr__(self):
        extra = f" {self.payload!r}" if self.payload is not None else ""
        return f"Mor({self.src!r} -> {self.dst!r}; |f|={self.card!r}{extra})"


@dataclass
class CheckItem:
    suite: str
    item: str
    status: str  # "pass" | "fail"
    witness: Optional[str] = None
    advisory: bool = False  # reported, but not counted in the verdict

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        doc = {"suite": self.suite, "item": self.item, "status": self.status}
        if self.witness is not None:
            doc["witness"] = self.witness
        if self.advisory:
            doc["advisory"] = True
        return doc


@dataclass
class AxiomReport:
    name: str
    items: list = field(default_factory=list)

    def add(self, suite: str, item: str, ok: bool, witness=None,
            advisory: bool = False):
        self.items.append(
            CheckItem(suite, item, "pass" if ok else "fail",
                      None if ok else witness, advisory)
        )

    def merge(self, other: "AxiomReport"):
        self.items.extend(other.items)
        return self

    @property
    def passed(self) -> bool:
        return all(it.ok for it in self.items if not it.advisory)

    def failures(self) -> list:
        return [it for it in self.items if not it.ok and not it.advisory]

    def find(self, item_name: str) -> CheckItem:
        for it in self.items:
            if it.item == item_name:
                return it
        raise KeyError(item_name)

    def to_json(self) -> list:
        return [it.to_json() for it in self.items]


def _memo(fn):
    cache = {}

    def wrapped(*args):
        try:
            return cache[args]
        except KeyError:
            cache[args] = fn(*args)
            return cache[args]
        except TypeError:
            return fn(*args)

    return wrapped


@dataclass
class OperadicCategory:
    """Descriptor every fixture implements.

    All callables are pure; objects and morphism payloads are hashable
    with structural equality (object equality is fixture-defined but
    must be decidable).
    """

    name: str
    mode: str  # "thick" | "thin"
    objects: Callable[[], list]
    hom: Callable[[Any, Any], list]
    identity: Callable[[Any], Mor]
    compose: Callable[[Mor, Mor], Mor]
    cardinality: Callable[[Any], Any]
    fiber: Callable[[Mor, Any], Any]
    induced: Callable[[Mor, Mor, Any], Mor]
    lift: Optional[Callable[[SetMap, Any], Any]] = None  # -> LiftResult
    chosen_terminals: Optional[dict] = None  # component key -> Obj
    component_key: Callable[[Any], Any] = lambda S: "*"
    isos: Optional[Callable[[Any], list]] = None  # base isos in scope at S

    def __post_init__(self):
        if self.mode not in ("thick", "thin"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        self._objects_cache = None
        self._hom_cache = {}
        # memoize the pure per-morphism callables; the checkers revisit
        # the same small argument sets very many times
        self.compose = _memo(self.compose)
        self.induced = _memo(self.induced)
        self.fiber = _memo(self.fiber)
        self.identity = _memo(self.identity)
        self.cardinality = _memo(self.cardinality)

    def enumerate_objects(self) -> list:
        if self._objects_cache is None:
            self._objects_cache = list(self.objects())
        return self._objects_cache

    def hom_cached(self, S, T) -> list:
        key = (S, T)
        if key not in self._hom_cache:
            self._hom_cache[key] = list(self.hom(S, T))
        return self._hom_cache[key]

    def all_morphisms(self) -> list:
        objs = self.enumerate_objects()
        out = []
        for S in objs:
            for T in objs:
                out.extend(self.hom_cached(S, T))
        return out

    def elements(self, S) -> tuple:
        return carrier_elements(self.cardinality(S))


def fiber_index(card: SetMap, r, s) -> int:
    """Position of s inside the pullback fiber of card over r (thin mode)."""
    hits = sorted(x for x, y in card.pairs if y == r)
    if s not in hits:
        raise DomainError(f"{s!r} not in the preimage of {r!r}")
    return hits.index(s) + 1


def expected_fiber_cardinality(C: OperadicCategory, f: Mor, s):
    pre = preimage(f.card, s)
    if C.mode == "thick":
        return pre
    return Ordinal(len(pre))


def fiber(C: OperadicCategory, f: Mor, s):
    """Fixture fiber with the (PSA) cardinality law enforced."""
    if s not in f.card.codomain:
        raise DomainError(f"{s!r} not in the target cardinality")
    F = C.fiber(f, s)
    got = C.cardinality(F)
    want = expected_fiber_cardinality(C, f, s)
    if got != want:
        from .errors import AxiomViolation

        raise AxiomViolation(
            f"fiber cardinality {got!r} differs from preimage {want!r}"
        )
    return F


def induced_fiber_morphism(C: OperadicCategory, f: Mor, g: Mor, r) -> Mor:
    """The induced morphism f_r : h^{-1}(r) -> g^{-1}(r), h = g.f."""
    from .finset import compose as cmap, induced_on_preimages, canonical_order_iso

    fr = C.induced(f, g, r)
    h = C.compose(g, f)
    want = induced_on_preimages(f.card, g.card, h.card, r)
    if C.mode == "thin":
        # translate the subset restriction to pullback-fiber ordinals
        ch = canonical_order_iso(want.domain)
        cg = canonical_order_iso(want.codomain)
        want = cmap(cg, cmap(want, ch.inverse()))
    if fr.card != want:
        from .errors import AxiomViolation

        raise AxiomViolation(
            f"induced morphism cardinality {fr.card!r}, expected {want!r}"
        )
    return fr


def check_operadic_axioms(C: OperadicCategory) -> AxiomReport:
    """Fiber cardinality law, functoriality of Fib_r, axioms (ii)-(iii),
    and the disjoint-union identity, over all enumerated data."""
    rep = AxiomReport(f"axioms[{C.name}]")
    objs = C.enumerate_objects()
    mors = C.all_morphisms()
    out_of = {}
    for m in mors:
        out_of.setdefault(m.src, []).append(m)

    # (a) + (e): fiber cardinalities and their disjoint union
    bad = None
    for f in mors:
        seen = []
        for s in C.elements(f.dst):
            F = C.fiber(f, s)
            want = expected_fiber_cardinality(C, f, s)
            if C.cardinality(F) != want:
                bad = f"f={f!r} s={s!r} |fiber|={C.cardinality(F)!r} want={want!r}"
                break
            seen.extend(carrier_elements(preimage(f.card, s)))
        if bad:
            break
        whole = carrier_elements(C.cardinality(f.src))
        if sorted(map(repr, seen)) != sorted(map(repr, whole)):
            bad = f"f={f!r}: fibers cover {seen!r}, |source|={whole!r}"
            break
    rep.add("axioms", "fiber cardinality (PSA)", bad is None, bad)
    rep.add("axioms", "disjoint union of fibers", bad is None, bad)

    # (b) Fib_r sends identities to identities
    bad = None
    for g in mors:
        idm = C.identity(g.src)
        for r in C.elements(g.dst):
            got = C.induced(idm, g, r)
            want = C.identity(C.fiber(g, r))
            if got != want:
                bad = f"g={g!r} r={r!r}: induced(id)={got!r} != {want!r}"
                break
        if bad:
            break
    rep.add("axioms", "induced of identity is identity", bad is None, bad)

    # (b) Fib_r respects composition in the slice
    bad = None
    for f in mors:  # f : T -> S
        for f2 in out_of.get(f.dst, ()):  # f2 : S -> S'
            ff = C.compose(f2, f)
            for g2 in out_of.get(f2.dst, ()):  # g2 : S' -> R
                g = C.compose(g2, f2)
                for r in C.elements(g2.dst):
                    lhs = C.induced(ff, g2, r)
                    rhs = C.compose(
                        C.induced(f2, g2, r), C.induced(f, g, r)
                    )
                    if lhs != rhs:
                        bad = (
                            f"f={f!r} f'={f2!r} g'={g2!r} r={r!r}: "
                            f"{lhs!r} != {rhs!r}"
                        )
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    rep.add("axioms", "induced of composite is composite", bad is None, bad)

    # (c) axiom (ii): f^{-1}(s) agrees with the fiber of f_{|g|(s)} over s
    bad = None
    for f in mors:  # f : T -> S
        for g in out_of.get(f.dst, ()):  # g : S -> R
            for s in C.elements(f.dst):
                r = g.card(s)
                fr = C.induced(f, g, r)
                s_in_fiber = s if C.mode == "thick" else fiber_index(
                    g.card, r, s
                )
                if C.fiber(f, s) != C.fiber(fr, s_in_fiber):
                    bad = (
                        f"f={f!r} g={g!r} s={s!r}: fiber(f,s)="
                        f"{C.fiber(f, s)!r} != fiber(f_r,s)="
                        f"{C.fiber(fr, s_in_fiber)!r}"
                    )
                    break
            if bad:
                break
        if bad:
            break
    rep.add("axioms", "axiom (ii): fibers through intermediate base", bad is None, bad)

    # (d) axiom (iii): f_q = (f_r)_q
    bad = None
    for f in mors:  # f : T -> S
        for a in out_of.get(f.dst, ()):  # a : S -> Q
            b = C.compose(a, f)
            for c in out_of.get(a.dst, ()):  # c : Q -> R
                g = C.compose(c, a)
                for q in C.elements(a.dst):
                    r = c.card(q)
                    f_q = C.induced(f, a, q)
                    f_r = C.induced(f, g, r)
                    a_r = C.induced(a, c, r)
                    q_in_fiber = q if C.mode == "thick" else fiber_index(
                        c.card, r, q
                    )
                    nested = C.induced(f_r, a_r, q_in_fiber)
                    if f_q != nested:
                        bad = (
                            f"f={f!r} a={a!r} c={c!r} q={q!r}: "
                            f"f_q={f_q!r} != (f_r)_q={nested!r}"
                        )
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    rep.add("axioms", "axiom (iii): iterated induced morphisms", bad is None, bad)

    # category laws on enumerated hom-sets (descriptor invariant)
    bad = None
    for f in mors:
        if C.compose(f, C.identity(f.src)) != f or C.compose(
            C.identity(f.dst), f
        ) != f:
            bad = f"identity laws fail at {f!r}"
            break
    rep.add("axioms", "category identity laws", bad is None, bad)
    return rep


def unit_components(C: OperadicCategory) -> dict:
    """The chosen-terminal family; raises ConfigError when absent."""
    if C.chosen_terminals is None:
        raise ConfigError(f"fixture {C.name} supplies no chosen terminals")
    for c, U in C.chosen_terminals.items():
        cu = C.cardinality(U)
        one = Ordinal(1) if C.mode == "thin" else FinSet.of([1])
        if cu != one:
            raise ConfigError(
                f"terminal {U!r} of component {c!r} has cardinality {cu!r}"
            )
    return C.chosen_terminals


def check_unitality(C: OperadicCategory) -> AxiomReport:
    """Left/right unitality.

    The "left unital" verdict item is mode-appropriate: for thin
    categories every fiber of every identity must be a chosen terminal
    on the nose; for thick categories the fiber of 1_T over x must be
    the cleavage translate U_c^{x} of the chosen terminal of its
    component.  Thick fixtures additionally get an advisory line for the
    strict thin-style membership reading, which can only hold when every
    cardinality is {1}; that line is where bold-Fin shows its failure.
    """
    from .cleavage import lift, unit_translate

    rep = AxiomReport(f"unitality[{C.name}]")
    terms = unit_components(C)
    family = list(terms.values())
    mors = C.all_morphisms()

    # strict thin-style membership
    verbatim_bad = None
    for T in C.enumerate_objects():
        idm = C.identity(T)
        for x in C.elements(T):
            F = C.fiber(idm, x)
            if F not in family:
                verbatim_bad = (
                    f"T={T!r} x={x!r}: identity fiber {F!r} "
                    f"is not a chosen terminal"
                )
                break
        if verbatim_bad:
            break

    if C.mode == "thin":
        rep.add("unitality", "left unital", verbatim_bad is None, verbatim_bad)
    else:
        bad = None
        if C.lift is None:
            bad = "no cleavage: translated terminals are undefined"
        else:
            for T in C.enumerate_objects():
                idm = C.identity(T)
                for x in C.elements(T):
                    F = C.fiber(idm, x)
                    c = C.component_key(F)
                    if c not in terms:
                        bad = f"T={T!r} x={x!r}: no terminal for component {c!r}"
                        break
                    want = unit_translate(C, terms[c], x)
                    if F != want:
                        bad = (
                            f"T={T!r} x={x!r}: identity fiber {F!r} != "
                            f"translated terminal {want!r}"
                        )
                        break
                if bad:
                    break
        rep.add("unitality", "left unital", bad is None, bad)
        rep.add("unitality", "left unital (strict thin-style membership)",
                verbatim_bad is None, verbatim_bad, advisory=True)

    # right unitality: Fib_1 over each U_c is the domain functor
    bad = None
    for c, U in terms.items():
        into_U = [m for m in mors if m.dst == U]
        for p in into_U:
            if C.fiber(p, 1) != p.src:
                bad = f"p={p!r}: fiber over 1 is {C.fiber(p, 1)!r}, not the domain"
                break
            for f in mors:
                if f.dst != p.src:
                    continue
                got = C.induced(f, p, 1)
                if got != f:
                    bad = f"slice morphism f={f!r} over {U!r}: Fib_1(f)={got!r}"
                    break
            if bad:
                break
        if bad:
            break
    rep.add("unitality", "right unital (Fib_1 is the domain functor)",
            bad is None, bad)

    # Proposition-3.2 content: every cleavage lift is a quasibijection
    if C.lift is not None and C.isos is not None:
        bad = None
        for S in C.enumerate_objects():
            for sigma in C.isos(S):
                try:
                    res = lift(C, sigma, S)
                except Exception as e:  # NoLiftError in negative fixtures
                    bad = f"S={S!r} sigma={sigma!r}: {e}"
                    break
                if not is_quasibijection(C, res.lift):
                    bad = f"lift {res.lift!r} is not a quasibijection"
                    break
            if bad:
                break
        rep.add("unitality", "cleavage lifts are quasibijections",
                bad is None, bad)
    return rep


def is_quasibijection(C: OperadicCategory, f: Mor) -> bool:
    """True iff every fiber of f is a (translated) chosen terminal."""
    from .cleavage import unit_translate

    terms = unit_components(C)
    if C.mode == "thick" and C.lift is None:
        raise ConfigError("quasibijection detection needs a cleavage")
    family = list(terms.values())
    for y in C.elements(f.dst):
        F = C.fiber(f, y)
        if C.mode == "thin":
            if F not in family:
                return False
            continue
        pre = carrier_elements(preimage(f.card, y))
        if len(pre) != 1:
            return False
        c = C.component_key(F)
        if c not in terms or F != unit_translate(C, terms[c], pre[0]):
            return False
    return True


def pi0(C: OperadicCategory) -> dict:
    """Connected components of the zigzag relation among enumerated objects,
    keyed by the fixture's canonical component identifiers."""
    objs = C.enumerate_objects()
    parent = {i: i for i in range(len(objs))}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, S in enumerate(objs):
        for j, T in enumerate(objs):
            if i < j and (C.hom_cached(S, T) or C.hom_cached(T, S)):
                parent[find(i)] = find(j)

    classes = {}
    for i, S in enumerate(objs):
        classes.setdefault(find(i), []).append(S)
    out = {}
    for members in classes.values():
        keys = {C.component_key(S) for S in members}
        if len(keys) != 1:
            raise ConfigError(
                f"component keys not constant on a zigzag class: {keys!r}"
            )
        key = keys.pop()
        out.setdefault(key, []).extend(members)
    return out


def source_and_target(C: OperadicCategory, T) -> tuple[list, Any]:
    """Components of the identity fibers of T (in cardinality order) and
    the component of T itself."""
    idm = C.identity(T)
    src = [C.component_key(C.fiber(idm, x)) for x in C.elements(T)]
    return src, C.component_key(T)
