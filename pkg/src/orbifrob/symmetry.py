"""Finite diagonal symmetry groups acting on the variables of f.

A group element is its tuple of phases (nu_1, ..., nu_n) in Q/Z: the action
sends z_i to e^{2 pi i nu_i} z_i.  All groups here are finite abelian
subgroups of the diagonal torus, so elements double as their own canonical
coordinates.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import UnitPhase, phase
from .poly import Polynomial

GroupElement = tuple[Fraction, ...]


class GroupOrderExceeded(ValueError):
    """Closure of the generators went past the configured bound."""


def normalize_element(nu: Iterable) -> GroupElement:
    return tuple(Fraction(x) % 1 for x in nu)


def element_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    return tuple((x + y) % 1 for x, y in zip(a, b))


def element_inv(a: GroupElement) -> GroupElement:
    return tuple((-x) % 1 for x in a)


def element_order(a: GroupElement) -> int:
    out = 1
    for x in a:
        out = out * x.denominator // _gcd(out, x.denominator)
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def is_symmetry(f: Polynomial, nu: Iterable) -> bool:
    nu = normalize_element(nu)
    if len(nu) != len(f.vars):
        raise ValueError("one phase per variable required")
    return all(sum(x * e for x, e in zip(nu, m)) % 1 == 0 for m in f.terms)


def projective_factor(f: Polynomial, nu: Iterable) -> Fraction | None:
    """The single lambda with g.f = e^{2 pi i lambda} f, if one exists.

    Returns 0 for a genuine symmetry; None when different monomials pick up
    different phases.
    """
    nu = normalize_element(nu)
    shifts = {sum(x * e for x, e in zip(nu, m)) % 1 for m in f.terms}
    if len(shifts) != 1:
        return None
    return shifts.pop()


def variable_components(f: Polynomial) -> list[list[int]]:
    """Connected components of the variable interaction graph of f."""
    n = len(f.vars)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for m in f.terms:
        touched = [i for i, e in enumerate(m) if e > 0]
        for i in touched[1:]:
            parent[find(i)] = find(touched[0])
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [sorted(g) for g in groups.values()]


def componentwise_factors(f: Polynomial, nu: Iterable) -> list[Fraction] | None:
    """One projective factor per connected component, or None if some
    component fails to scale uniformly."""
    nu = normalize_element(nu)
    comps = variable_components(f)
    out = []
    for comp in comps:
        compset = set(comp)
        shifts = {
            sum(x * e for x, e in zip(nu, m)) % 1
            for m in f.terms
            if any(e > 0 and i in compset for i, e in enumerate(m))
        }
        if len(shifts) > 1:
            return None
        out.append(shifts.pop() if shifts else Fraction(0))
    return out


class SymmetryGroup:
    """A finite diagonal group, stored as the sorted tuple of its elements."""

    def __init__(self, elements: Iterable[GroupElement], nvars: int):
        els = sorted(set(normalize_element(e) for e in elements))
        if not els:
            raise ValueError("empty group")
        for e in els:
            if len(e) != nvars:
                raise ValueError("element arity mismatch")
        self.nvars = nvars
        self.elements: tuple[GroupElement, ...] = tuple(els)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self.identity: GroupElement = (Fraction(0),) * nvars
        if self.identity not in self._index:
            raise ValueError("identity missing")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, el) -> bool:
        return normalize_element(el) in self._index

    def index(self, el) -> int:
        return self._index[normalize_element(el)]

    def mul(self, a, b) -> GroupElement:
        return element_mul(normalize_element(a), normalize_element(b))

    def inv(self, a) -> GroupElement:
        return element_inv(normalize_element(a))

    @property
    def exponent(self) -> int:
        out = 1
        for e in self.elements:
            o = element_order(e)
            out = out * o // _gcd(out, o)
        return out

    def determinant(self, el) -> UnitPhase:
        return phase(sum(normalize_element(el)))

    def fixed_indices(self, el) -> list[int]:
        return [i for i, x in enumerate(normalize_element(el)) if x == 0]

    def subgroup(self, gens: Iterable[GroupElement]) -> "SymmetryGroup":
        sub = generate_group(list(gens) + [self.identity], self.nvars, bound=self.order + 1)
        for e in sub:
            if e not in self:
                raise ValueError("generators leave the group")
        return sub

    def pseudo_reflection_generated(self) -> bool:
        """Whether the elements fixing a hyperplane (or everything) generate."""
        refl = [e for e in self.elements
                if sum(1 for x in e if x != 0) <= 1]
        return self.subgroup(refl).order == self.order

    def verify_symmetry_of(self, f: Polynomial):
        bad = [e for e in self.elements if not is_symmetry(f, e)]
        if bad:
            raise ValueError(f"{len(bad)} group elements do not preserve f, e.g. {bad[0]}")

    def __repr__(self):
        return f"SymmetryGroup(order={self.order}, nvars={self.nvars})"


def generate_group(gens: Iterable, nvars: int, bound: int = 10000) -> SymmetryGroup:
    seen = {(Fraction(0),) * nvars}
    gens = [normalize_element(g) for g in gens]
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = element_mul(a, g)
                if b not in seen:
                    if len(seen) >= bound:
                        raise GroupOrderExceeded(f"group order exceeds bound {bound}")
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return SymmetryGroup(seen, nvars)


def grading_element(weights: Sequence[Fraction]) -> GroupElement:
    """The exponential grading operator: phases equal to the weights mod 1."""
    return normalize_element(weights)


def enumerate_sigma(group: SymmetryGroup) -> list[dict[GroupElement, int]]:
    """All homomorphisms G -> Z/2, deterministically ordered.

    Works through the elementary abelian quotient G / 2G, so no integer
    matrix normal forms are needed.
    """
    squares = {element_mul(g, g) for g in group}
    # cosets of the subgroup of squares
    coset_of: dict[GroupElement, GroupElement] = {}
    for g in group:
        if g in coset_of:
            continue
        members = sorted(element_mul(g, s) for s in squares)
        rep = members[0]
        for m in members:
            coset_of[m] = rep
    reps = sorted(set(coset_of.values()))
    identity_rep = coset_of[group.identity]

    # greedy basis of the quotient, with expression vectors tracked
    basis: list[GroupElement] = []
    span: dict[GroupElement, tuple[int, ...]] = {identity_rep: ()}
    for r in reps:
        if r in span:
            continue
        basis.append(r)
        new_span = dict(span)
        for rep0, vec in span.items():
            rep1 = coset_of[element_mul(rep0, r)]
            new_span[rep1] = vec + (1,)
        span = {k: (v + (0,) * (len(basis) - len(v))) for k, v in new_span.items()}
    assert len(span) == len(reps)

    out = []
    for bits in itertools.product((0, 1), repeat=len(basis)):
        sigma = {}
        for g in group:
            vec = span[coset_of[g]]
            sigma[g] = sum(b * v for b, v in zip(bits, vec)) % 2
        out.append(sigma)
    # identity hom first, then lexicographic in the bit pattern
    return out


def character(group: SymmetryGroup, sigma: Mapping[GroupElement, int]) -> dict[GroupElement, UnitPhase]:
    """chi(g) = (-1)^{sigma(g)} det rho(g)."""
    out = {}
    for g in group:
        out[g] = phase(Fraction(sigma[g], 2) + sum(g))
    return out


class DiscreteTorsion:
    """A two-cocycle twist eps(g, h), trivial unless a table is supplied."""

    def __init__(self, group: SymmetryGroup, table: Mapping[tuple[GroupElement, GroupElement], UnitPhase] | None = None):
        self.group = group
        if table is None:
            self.table = None
            return
        self.table = {
            (normalize_element(g), normalize_element(h)): v for (g, h), v in table.items()
        }
        self._validate()

    def __call__(self, g, h) -> UnitPhase:
        if self.table is None:
            return UnitPhase(0)
        return self.table[(normalize_element(g), normalize_element(h))]

    @property
    def is_trivial(self) -> bool:
        return self.table is None or all(v.is_one for v in self.table.values())

    def _validate(self):
        G = self.group
        for g in G:
            for h in G:
                if (g, h) not in self.table:
                    raise ValueError(f"missing eps entry for {(g, h)}")
        for g in G:
            if not self(g, g).is_one:
                raise ValueError(f"eps({g},{g}) != 1")
            for h in G:
                if self(g, h) * self(h, g) != UnitPhase(0):
                    raise ValueError(f"eps not antisymmetric at {(g, h)}")
                for k in G:
                    lhs = self(element_mul(g, h), k)
                    if lhs != self(g, k) * self(h, k):
                        raise ValueError(f"eps not bilinear at {(g, h, k)}")
