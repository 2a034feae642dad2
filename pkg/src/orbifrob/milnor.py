"""Jacobian quotient rings of quasi-homogeneous polynomials, exactly.

The quotient O/J_f is computed with a Buchberger loop under the weighted
degree order (lex tie break), which gives normal forms, the monomial basis,
the socle representative and the residue pairing without any floating point.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Monomial, Polynomial


class NonIsolated(ValueError):
    """The critical point is not isolated (the quotient is infinite dimensional)."""


class NoSolution(ValueError):
    """No weight system makes every monomial have degree one."""


class Underdetermined(ValueError):
    """The monomials of f do not pin the weights uniquely."""


def solve_weights(f: Polynomial) -> tuple[Fraction, ...]:
    """Weights q with every monomial of f of weighted degree 1."""
    n = len(f.vars)
    if not f.terms:
        raise NoSolution("zero polynomial")
    rows = [[Fraction(e) for e in m] + [Fraction(1)] for m in sorted(f.terms)]
    # Gauss-Jordan over Q
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                fac = rows[i][c]
                rows[i] = [a - fac * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][n] != 0:
            raise NoSolution("inconsistent degree conditions")
    if len(pivots) < n:
        raise Underdetermined("weights not determined by the monomials")
    q = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        q[c] = rows[i][n]
    if any(w <= 0 or w >= 1 for w in q):
        raise NoSolution(f"weights {q} outside (0, 1)")
    return tuple(q)


class _Order:
    """Weighted degree first, then lex on exponents. Total and multiplicative."""

    def __init__(self, weights: Sequence[Fraction]):
        self.weights = tuple(weights)

    def key(self, m: Monomial):
        return (sum(w * e for w, e in zip(self.weights, m)), m)

    def leading(self, p: Polynomial) -> tuple[Monomial, Fraction]:
        m = max(p.terms, key=self.key)
        return m, p.terms[m]


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _normal_form(p: Polynomial, basis: list[Polynomial], order: _Order) -> Polynomial:
    vs = p.vars
    leads = [order.leading(g) for g in basis]
    work = dict(p.terms)
    out: dict[Monomial, Fraction] = {}
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        if c == 0:
            continue
        hit = next((i for i, (lm, _) in enumerate(leads) if _divides(lm, m)), None)
        if hit is None:
            out[m] = out.get(m, Fraction(0)) + c
            continue
        lm, lc = leads[hit]
        shift = _mono_div(m, lm)
        fac = c / lc
        for gm, gc in basis[hit].terms.items():
            mm = tuple(a + b for a, b in zip(gm, shift))
            if mm == m:
                continue
            work[mm] = work.get(mm, Fraction(0)) - fac * gc
    return Polynomial(vs, out)


def groebner(gens: Iterable[Polynomial], order: _Order) -> list[Polynomial]:
    """Reduced basis for the ideal, monic leads, fully interreduced."""
    basis = [g for g in gens if not g.is_zero]
    if not basis:
        return []
    pairs = [(i, k) for i in range(len(basis)) for k in range(i)]
    while pairs:
        i, k = pairs.pop()
        lmi, lci = order.leading(basis[i])
        lmk, lck = order.leading(basis[k])
        lcm = _mono_lcm(lmi, lmk)
        if all(a + b == c for a, b, c in zip(lmi, lmk, lcm)):
            continue  # coprime leads
        vs = basis[i].vars
        s = basis[i] * Polynomial.monomial(vs, _mono_div(lcm, lmi), Fraction(1, lci)) - basis[
            k
        ] * Polynomial.monomial(vs, _mono_div(lcm, lmk), Fraction(1, lck))
        r = _normal_form(s, basis, order)
        if not r.is_zero:
            pairs.extend((len(basis), t) for t in range(len(basis)))
            basis.append(r)
    # interreduce
    reduced: list[Polynomial] = []
    for i, g in enumerate(basis):
        others = basis[:i] + basis[i + 1 :]
        r = _normal_form(g, others, order)
        if not r.is_zero:
            reduced.append(r * (1 / order.leading(r)[1]))
    # drop duplicates, keep deterministic order by leading monomial
    seen = {}
    for g in reduced:
        seen[order.leading(g)[0]] = g
    final = [seen[m] for m in sorted(seen, key=order.key)]
    # one more pass so every element is in normal form w.r.t. the others
    out = []
    for i, g in enumerate(final):
        others = final[:i] + final[i + 1 :]
        r = _normal_form(g, others, order)
        if not r.is_zero:
            out.append(r * (1 / order.leading(r)[1]))
    return out


def _standard_monomials(leads: list[Monomial], nvars: int) -> list[Monomial]:
    if nvars == 0:
        return [()]
    caps = []
    for i in range(nvars):
        pure = [m[i] for m in leads if all(e == 0 for k, e in enumerate(m) if k != i) and m[i] > 0]
        if not pure:
            raise NonIsolated(f"no pure power of variable #{i} in the leading ideal")
        caps.append(min(pure))
    out = []
    for m in itertools.product(*(range(c) for c in caps)):
        if not any(_divides(lm, m) for lm in leads):
            out.append(m)
    return out


class MilnorRing:
    """O/J_f with its weighted grading, monomial basis and residue pairing."""

    def __init__(self, f: Polynomial, weights: Sequence[Fraction] | None = None):
        if weights is None:
            weights = solve_weights(f)
        weights = tuple(Fraction(w) for w in weights)
        if len(weights) != len(f.vars):
            raise ValueError("one weight per variable required")
        if f.terms and f.weighted_degree(weights) != 1:
            raise ValueError("polynomial is not quasi-homogeneous of degree 1")
        self.f = f
        self.vars = f.vars
        self.weights = weights
        self.order = _Order(weights)
        self.jacobian = [f.diff(i) for i in range(len(f.vars))]
        self.gb = groebner(self.jacobian, self.order)
        leads = [self.order.leading(g)[0] for g in self.gb]
        std = _standard_monomials(leads, len(f.vars))
        self.basis: list[Monomial] = sorted(std, key=self.order.key)
        self.mu = len(self.basis)
        self.dim = Fraction(sum(1 - 2 * q for q in self.weights))
        self._socle = None
        self._index = {m: i for i, m in enumerate(self.basis)}

    def normal_form(self, p: Polynomial) -> Polynomial:
        return _normal_form(p, self.gb, self.order)

    def multiply(self, a: Polynomial, b: Polynomial) -> Polynomial:
        return self.normal_form(a * b)

    def degree(self, mono: Monomial) -> Fraction:
        return Fraction(sum(w * e for w, e in zip(self.weights, mono)))

    @property
    def mu_formula(self) -> Fraction:
        out = Fraction(1)
        for q in self.weights:
            out *= 1 / q - 1
        return out

    @property
    def socle_monomial(self) -> Monomial:
        tops = [m for m in self.basis if self.degree(m) == self.degree(self.basis[-1])]
        if len(tops) != 1:
            raise ValueError(f"top weighted degree is not one dimensional: {tops}")
        return tops[0]

    def hessian(self) -> Polynomial:
        n = len(self.vars)
        rows = [[self.f.diff(i).diff(k) for k in range(n)] for i in range(n)]
        return _det(rows, self.vars)

    @property
    def socle(self) -> Polynomial:
        """NF of the Hessian, rescaled to coefficient one on the top monomial."""
        if self._socle is None:
            if not self.vars:
                self._socle = Polynomial.constant(self.vars, 1)
            else:
                h = self.normal_form(self.hessian())
                c = h.coeff(self.socle_monomial)
                if c == 0:
                    raise ValueError("hessian does not hit the socle")
                self._socle = h * (1 / c)
        return self._socle

    def pairing(self, a: Polynomial, b: Polynomial) -> Fraction:
        """Residue form: coefficient of the top monomial in NF(a*b)."""
        if not self.vars:
            pa = a.terms.get((), Fraction(0)) if a.terms else Fraction(0)
            pb = b.terms.get((), Fraction(0)) if b.terms else Fraction(0)
            return pa * pb
        return self.normal_form(a * b).coeff(self.socle_monomial)

    def pairing_matrix(self) -> list[list[Fraction]]:
        mono = [Polynomial.monomial(self.vars, m) for m in self.basis]
        return [[self.pairing(a, b) for b in mono] for a in mono]

    def element(self, mono: Monomial) -> Polynomial:
        return Polynomial.monomial(self.vars, mono)

    def subring(self, keep: list[int]) -> "MilnorRing":
        """Restriction of f to the coordinate subspace of the kept variables."""
        dead = [i for i in range(len(self.vars)) if i not in keep]
        g = self.f.kill_vars(dead).project_vars(keep)
        return MilnorRing(g, [self.weights[i] for i in keep])

    def __repr__(self):
        return f"MilnorRing({self.f}, mu={self.mu})"


def _det(rows: list[list[Polynomial]], vs) -> Polynomial:
    n = len(rows)
    if n == 0:
        return Polynomial.constant(vs, 1)
    if n == 1:
        return rows[0][0]
    out = Polynomial.zero(vs)
    for k in range(n):
        if rows[0][k].is_zero:
            continue
        minor = [[rows[i][c] for c in range(n) if c != k] for i in range(1, n)]
        term = rows[0][k] * _det(minor, vs)
        out = out + term if k % 2 == 0 else out - term
    return out


def tensor_ring(r1: MilnorRing, r2: MilnorRing) -> MilnorRing:
    """Ring of the disjoint sum f1 (+) f2 on the concatenated variables."""
    names1 = list(r1.vars)
    names2 = list(r2.vars)
    if set(names1) & set(names2):
        names1 = [f"{v}_1" for v in names1]
        names2 = [f"{v}_2" for v in names2]
    vs = tuple(names1 + names2)
    n1, n2 = len(names1), len(names2)
    terms: dict[Monomial, Fraction] = {}
    for m, c in r1.f.terms.items():
        terms[m + (0,) * n2] = c
    for m, c in r2.f.terms.items():
        mm = (0,) * n1 + m
        terms[mm] = terms.get(mm, Fraction(0)) + c
    return MilnorRing(Polynomial(vs, terms), r1.weights + r2.weights)
