"""Finite sets of atoms, finite ordinals and their maps.

Atoms are plain hashable labels: strings, or ints where the canonical
names 1..n are wanted (ordinal-shaped thick cardinalities, graph
vertices).  A single global total order on atoms (ints numerically, then
strings lexicographically) replaces every non-canonical choice later on:
unordered tensor products, canonical corner representatives, monotone
identifications.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable

from .errors import CompositionError, CoherenceError, DomainError


def atom_key(a: Any):
    """Sort key realizing the global atom order."""
    if isinstance(a, bool) or not isinstance(a, (int, str)):
        raise DomainError(f"not an atom: {a!r}")
    if isinstance(a, int):
        return (0, a, "")
    return (1, 0, a)


def sort_atoms(items: Iterable) -> tuple:
    return tuple(sorted(items, key=atom_key))


@dataclass(frozen=True)
class FinSet:
    """A finite set of atoms; iteration follows the global atom order."""

    elements: tuple

    @staticmethod
    def of(items: Iterable) -> "FinSet":
        elems = sort_atoms(items)
        for a in elems:
            if isinstance(a, str) and not a:
                raise DomainError("empty atom label")
        if len(set(elems)) != len(elems):
            raise DomainError("duplicate atoms")
        return FinSet(elems)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, a):
        return a in self.elements

    def union(self, other: "FinSet") -> "FinSet":
        return FinSet.of(set(self.elements) | set(other.elements))

    def __repr__(self):
        return "{" + ",".join(str(a) for a in self.elements) + "}"


@dataclass(frozen=True)
class Ordinal:
    """The finite ordinal {1,...,n}; n = 0 is the empty ordinal."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("negative ordinal")

    @property
    def elements(self) -> tuple:
        return tuple(range(1, self.n + 1))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return self.n

    def __contains__(self, a):
        return isinstance(a, int) and 1 <= a <= self.n

    def __repr__(self):
        return f"ord({self.n})"


Carrier = FinSet | Ordinal


def carrier_of(items_or_carrier) -> Carrier:
    if isinstance(items_or_carrier, (FinSet, Ordinal)):
        return items_or_carrier
    return FinSet.of(items_or_carrier)


def carrier_elements(c: Carrier) -> tuple:
    return tuple(c.elements) if isinstance(c, FinSet) else c.elements


@dataclass(frozen=True)
class SetMap:
    """A total map between two carriers, given element by element."""

    domain: Carrier
    codomain: Carrier
    pairs: tuple  # ((x, f(x)), ...) sorted by the global order on x

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.domain, self.codomain, self.pairs))
            object.__setattr__(self, "_hash", h)
        return h

    @staticmethod
    def of(domain, codomain, mapping) -> "SetMap":
        domain = carrier_of(domain)
        codomain = carrier_of(codomain)
        mapping = dict(mapping)
        for x in domain:
            if x not in mapping:
                raise DomainError(f"no value assigned to {x!r}")
            if mapping[x] not in codomain:
                raise DomainError(f"value {mapping[x]!r} outside codomain")
        if len(mapping) != len(domain):
            extra = set(mapping) - set(carrier_elements(domain))
            raise DomainError(f"assignments outside domain: {sorted(map(str, extra))}")
        pairs = tuple((x, mapping[x]) for x in carrier_elements(domain))
        return SetMap(domain, codomain, pairs)

    @staticmethod
    def identity(c) -> "SetMap":
        c = carrier_of(c)
        return SetMap.of(c, c, {x: x for x in c})

    def __call__(self, x):
        table = self.__dict__.get("_table")
        if table is None:
            table = dict(self.pairs)
            object.__setattr__(self, "_table", table)
        try:
            return table[x]
        except KeyError:
            raise DomainError(f"{x!r} not in domain") from None

    def as_dict(self) -> dict:
        return dict(self.pairs)

    @property
    def is_bijective(self) -> bool:
        return len(self.domain) == len(self.codomain) == len(
            {b for _, b in self.pairs}
        )

    def inverse(self) -> "SetMap":
        if not self.is_bijective:
            raise DomainError("not bijective")
        return SetMap.of(self.codomain, self.domain, {b: a for a, b in self.pairs})

    def is_monotone(self) -> bool:
        values = [b for _, b in self.pairs]  # pairs are sorted by domain order
        return all(
            atom_key(u) <= atom_key(v) for u, v in zip(values, values[1:])
        )

    def restrict(self, sub: FinSet, codomain=None) -> "SetMap":
        """Restriction to a subset of the domain (codomain optionally shrunk)."""
        for x in sub:
            if x not in self.domain:
                raise DomainError(f"{x!r} not in domain")
        codomain = self.codomain if codomain is None else carrier_of(codomain)
        return SetMap.of(sub, codomain, {x: self(x) for x in sub})

    def __repr__(self):
        body = ",".join(f"{a}->{b}" for a, b in self.pairs)
        return f"[{body}]" if body else "[empty]"


def compose(g: SetMap, f: SetMap) -> SetMap:
    if f.codomain != g.domain:
        raise CompositionError(f"cannot compose {g!r} after {f!r}")
    return SetMap.of(f.domain, g.codomain, {x: g(f(x)) for x in f.domain})


def preimage(f: SetMap, t) -> FinSet:
    """The set-theoretic preimage f^{-1}(t) as a FinSet (possibly empty)."""
    if t not in f.codomain:
        raise DomainError(f"{t!r} not in codomain")
    return FinSet.of([x for x, y in f.pairs if y == t])


def pullback_fiber(f: SetMap, i: int) -> tuple[Ordinal, SetMap]:
    """The pullback fiber over i for a map of ordinals.

    Returns the ordinal k with k = |f^{-1}(i)| and the monotone injection
    into the domain whose image is the preimage; unique by skeletality.
    """
    if not isinstance(f.domain, Ordinal) or not isinstance(f.codomain, Ordinal):
        raise DomainError("pullback fibers need a map of ordinals")
    if i not in f.codomain:
        raise DomainError(f"index {i} out of range")
    hits = [x for x, y in f.pairs if y == i]
    k = Ordinal(len(hits))
    inj = SetMap.of(k, f.domain, {j + 1: x for j, x in enumerate(sorted(hits))})
    return k, inj


def canonical_order_iso(s) -> SetMap:
    """The unique monotone bijection from a finite set onto {1,...,k}."""
    s = carrier_of(s)
    elems = carrier_elements(s)
    return SetMap.of(s, Ordinal(len(elems)), {x: j + 1 for j, x in enumerate(elems)})


def induced_on_preimages(f: SetMap, g: SetMap, h: SetMap, r) -> SetMap:
    """Restriction of f to h^{-1}(r), landing in g^{-1}(r); needs h = g.f."""
    if compose(g, f) != h:
        raise CoherenceError("h is not the composite g.f")
    return f.restrict(preimage(h, r), codomain=preimage(g, r))
