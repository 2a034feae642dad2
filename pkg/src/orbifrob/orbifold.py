"""Twisted sector modules for a diagonal group acting on a singularity.

For each group element g the fixed-locus quotient ring carries two rational
shifts; together with a supergrading sign and an optional discrete torsion
twist this determines the projective group action on classes, the bigraded
invariants, the twisted metric, and (where metric duality pins them) the
sector products.  The axiom checker validates a reconstructed structure
exactly and reports named witnesses when something breaks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .exact import ONE, CyclotomicSum, Scaled, UnitPhase, phase
from .milnor import MilnorRing
from .poly import Monomial, Polynomial
from .symmetry import (
    DiscreteTorsion,
    GroupElement,
    SymmetryGroup,
    element_inv,
    element_mul,
    grading_element,
    normalize_element,
)

ClassKey = tuple[GroupElement, Monomial]  # (sector label, monomial in sector vars)


class ReconstructionUnsupported(ValueError):
    """Sector products not determined by metric duality against the identity sector."""


@dataclass(frozen=True)
class Sector:
    g: GroupElement
    fixed: tuple[int, ...]
    ring: MilnorRing
    codim: int
    degree: Fraction          # sum over fixed i of (1 - 2 q_i)
    s_plus: Fraction
    s_minus: Fraction
    s: Fraction
    s_bar: Fraction
    parity: int               # sigma(g) + codim mod 2

    def charge(self, mono: Monomial) -> Fraction:
        return self.ring.degree(mono)

    def bidegree(self, mono: Monomial) -> tuple[Fraction, Fraction]:
        q = self.charge(mono)
        return (q + self.s, q + self.s_bar)


@dataclass(frozen=True)
class InvariantClass:
    g: GroupElement
    mono: Monomial
    charge: Fraction
    bidegree: tuple[Fraction, Fraction]


class OrbifoldModule:
    """All sectors of (f, G) with the projective action data."""

    def __init__(
        self,
        ring: MilnorRing,
        group: SymmetryGroup,
        sigma: Mapping[GroupElement, int] | None = None,
        eps: DiscreteTorsion | None = None,
    ):
        group.verify_symmetry_of(ring.f)
        self.ring = ring
        self.f = ring.f
        self.group = group
        self.weights = ring.weights
        if sigma is None:
            sigma = {g: 0 for g in group}
        self.sigma = {normalize_element(g): int(v) % 2 for g, v in sigma.items()}
        self._check_sigma()
        self.eps = eps if eps is not None else DiscreteTorsion(group)
        self.j = grading_element(ring.weights)
        self.sectors: dict[GroupElement, Sector] = {}
        for g in group:
            self.sectors[g] = self._build_sector(g)

    def _check_sigma(self):
        for g in self.group:
            if g not in self.sigma:
                raise ValueError(f"sigma missing on {g}")
            for h in self.group:
                if (self.sigma[g] + self.sigma[h] - self.sigma[element_mul(g, h)]) % 2:
                    raise ValueError("sigma is not a homomorphism to Z/2")

    def _build_sector(self, g: GroupElement) -> Sector:
        fixed = tuple(self.group.fixed_indices(g))
        ring = self.ring.subring(list(fixed))
        q = self.weights
        moving = [i for i in range(len(q)) if i not in fixed]
        s_plus = 2 * sum((Fraction(1, 2) - q[i] for i in moving), Fraction(0))
        s_minus = 2 * sum((g[i] - Fraction(1, 2) for i in moving), Fraction(0))
        s = sum((g[i] - q[i] for i in moving), Fraction(0))
        gi = element_inv(g)
        s_bar = sum((gi[i] - q[i] for i in moving), Fraction(0))
        return Sector(
            g=g,
            fixed=fixed,
            ring=ring,
            codim=len(moving),
            degree=sum((1 - 2 * q[i] for i in fixed), Fraction(0)),
            s_plus=s_plus,
            s_minus=s_minus,
            s=s,
            s_bar=s_bar,
            parity=(self.sigma[g] + len(moving)) % 2,
        )

    # -- characters and the projective action ---------------------------------

    def chi(self, g) -> UnitPhase:
        g = normalize_element(g)
        return phase(Fraction(self.sigma[g], 2) + sum(g))

    def det_on_fixed(self, g, h) -> UnitPhase:
        """det of g restricted to the fixed subspace of h."""
        g = normalize_element(g)
        return phase(sum(g[i] for i in self.sectors[normalize_element(h)].fixed))

    def phi_coeff(self, g, h) -> UnitPhase:
        """Coefficient of phi_g on the cyclic class of the h sector."""
        g = normalize_element(g)
        h = normalize_element(h)
        sgn = Fraction(self.sigma[g] * self.sigma[h], 2)
        return (
            self.eps(g, h)
            * phase(sgn)
            * self.group.determinant(g).inv()
            * self.det_on_fixed(g, h)
        )

    def action_coeff(self, k, cls: ClassKey) -> UnitPhase:
        """Scalar by which k acts on the class x^mono 1_g."""
        k = normalize_element(k)
        g, mono = cls
        sec = self.sectors[normalize_element(g)]
        mono_phase = sum(k[i] * e for i, e in zip(sec.fixed, mono))
        return self.phi_coeff(k, g) * phase(mono_phase)

    def classes(self) -> list[ClassKey]:
        out = []
        for g in self.group:
            for m in self.sectors[g].ring.basis:
                out.append((g, m))
        return out

    def bidegree(self, cls: ClassKey) -> tuple[Fraction, Fraction]:
        g, mono = cls
        return self.sectors[normalize_element(g)].bidegree(mono)

    def parity(self, cls: ClassKey) -> int:
        return self.sectors[normalize_element(cls[0])].parity

    def invariants(self) -> list[InvariantClass]:
        out = []
        for cls in self.classes():
            if all(self.action_coeff(k, cls).is_one for k in self.group):
                g, mono = cls
                sec = self.sectors[g]
                out.append(
                    InvariantClass(g, mono, sec.charge(mono), sec.bidegree(mono))
                )
        return out

    def spectrum(self, classes: Iterable[InvariantClass] | None = None) -> list[tuple[Fraction, Fraction]]:
        if classes is None:
            classes = self.invariants()
        return sorted(c.bidegree for c in classes)

    # -- restriction of identity-sector polynomials into a sector -------------

    def restrict_to_sector(self, p: Polynomial, g) -> Polynomial:
        """Image of p under z_i -> 0 for moving variables, in sector coordinates."""
        sec = self.sectors[normalize_element(g)]
        dead = [i for i in range(len(self.f.vars)) if i not in sec.fixed]
        return p.kill_vars(dead).project_vars(list(sec.fixed))

    # -- Milnor class identities ------------------------------------------------

    def equivariant_trace(self, g):
        """Trace of g on the full quotient ring times det rho(g), reduced."""
        g = normalize_element(g)
        n = _lcm_many(
            [x.denominator for x in g] + [1]
        )
        det = self.group.determinant(g)
        n = _lcm(n, det.theta.denominator)
        terms = []
        for m in self.ring.basis:
            terms.append((Fraction(1), phase(sum(x * e for x, e in zip(g, m))) * det))
        return CyclotomicSum.from_terms(n, terms)

    def milnor_class_value(self, g) -> Fraction:
        """(-1)^{codim Fix g} times the reduced equivariant trace; exact."""
        g = normalize_element(g)
        t = self.equivariant_trace(g)
        r = t.to_fraction()
        if r is None:
            raise ArithmeticError(f"equivariant trace at {g} is irrational: {t}")
        return (-1) ** self.sectors[g].codim * r

    def sector_milnor_number(self, g) -> int:
        return self.sectors[normalize_element(g)].ring.mu

    def orbifold_milnor_number(self) -> Fraction:
        total = Fraction(0)
        for g in self.group:
            total += (-1) ** self.sectors[g].codim * self.sectors[g].ring.mu
        return total / self.group.order

    def twist_invariant_dimension(self) -> int:
        """dim of the det-twisted invariants of the full quotient ring."""
        count = 0
        for m in self.ring.basis:
            ok = True
            for g in self.group:
                ph = phase(sum(x * e for x, e in zip(g, m)) + sum(g))
                if not ph.is_one:
                    ok = False
                    break
            if ok:
                count += 1
        return count

    # -- report helpers --------------------------------------------------------

    def sector_row(self, g) -> dict:
        g = normalize_element(g)
        sec = self.sectors[g]
        return {
            "g": g,
            "fixed_polynomial": str(self.restrict_to_sector(self.f, g)),
            "rank": sec.ring.mu,
            "degree": sec.degree,
            "nu": g,
            "s_plus": sec.s_plus,
            "s_minus": sec.s_minus,
            "s": sec.s,
            "s_bar": sec.s_bar,
            "parity": sec.parity,
        }


def build_module(
    f: Polynomial,
    generators: Iterable,
    weights=None,
    sigma=None,
    eps_table=None,
    bound: int = 10000,
) -> OrbifoldModule:
    """Convenience constructor from a polynomial and group generators."""
    from .symmetry import generate_group, is_symmetry

    ring = MilnorRing(f, weights)
    for nu in generators:
        if not is_symmetry(f, nu):
            raise ValueError(f"{nu} is not a symmetry of f")
    group = generate_group(generators, len(f.vars), bound=bound)
    eps = DiscreteTorsion(group, eps_table) if eps_table else None
    return OrbifoldModule(ring, group, sigma=sigma, eps=eps)


# ---------------------------------------------------------------------------
# reconstructed multiplicative structure


Element = dict[ClassKey, Scaled]


@dataclass
class GFrobeniusStructure:
    module: OrbifoldModule
    metric_norm: dict[GroupElement, UnitPhase]
    products: dict[tuple[GroupElement, GroupElement], dict[tuple[Monomial, Monomial], Element]]
    notes: list[str] = field(default_factory=list)

    def metric(self, a: ClassKey, b: ClassKey) -> Scaled:
        g, alpha = a
        h, beta = b
        if element_mul(g, h) != self.module.group.identity:
            return Scaled.zero()
        sec = self.module.sectors[g]
        val = sec.ring.pairing(sec.ring.element(alpha), sec.ring.element(beta))
        return Scaled(val) * Scaled.from_phase(self.metric_norm[g])

    def product_of_classes(self, a: ClassKey, b: ClassKey) -> Element:
        g, alpha = a
        h, beta = b
        table = self.products.get((g, h))
        if table is None:
            raise ReconstructionUnsupported(f"no product table for sectors {(g, h)}")
        try:
            return table[(alpha, beta)]
        except KeyError:
            raise ReconstructionUnsupported(f"product {(a, b)} not reconstructed")

    def multiply(self, x: Element, y: Element) -> Element:
        out: dict[ClassKey, list[Scaled]] = {}
        for a, ca in x.items():
            if ca.is_zero:
                continue
            for b, cb in y.items():
                if cb.is_zero:
                    continue
                for cls, c in self.product_of_classes(a, b).items():
                    out.setdefault(cls, []).append(ca * cb * c)
        return {cls: _scaled_sum(vals) for cls, vals in out.items()}

    def apply_phi(self, k, x: Element) -> Element:
        mod = self.module
        return {cls: c * mod.action_coeff(k, cls) for cls, c in x.items()}


def _scaled_sum(vals: list[Scaled]) -> Scaled:
    total = Scaled.zero()
    for v in vals:
        if v.is_zero:
            continue
        if total.is_zero:
            total = v
        elif total.ph == v.ph:
            total = Scaled(total.mag + v.mag, total.ph)
        elif total.ph == v.ph * phase(Fraction(1, 2)):
            total = Scaled(total.mag - v.mag, total.ph)
        else:
            raise ArithmeticError("sum leaves the scaled-phase coefficient domain")
    return total


def metric_normalizations(module: OrbifoldModule) -> tuple[dict[GroupElement, UnitPhase], list[str]]:
    """Sector metric scales: one square root per inverse pair, partner forced
    by twisted commutativity."""
    notes: list[str] = []
    norm: dict[GroupElement, UnitPhase] = {}
    for g in module.group:
        gi = element_inv(g)
        rep = min(g, gi)
        if rep in norm and g in norm:
            continue
        sec = module.sectors[rep]
        base = phase(Fraction(sec.parity, 2)) * module.chi(rep)
        m_rep = base.sqrt()
        norm[rep] = m_rep
        if gi != g:
            other = max(g, gi)
            link = phase(
                Fraction(module.sectors[rep].parity * module.sectors[other].parity, 2)
            ) * module.phi_coeff(rep, element_inv(rep))
            norm[other] = link.inv() * m_rep
        else:
            consistency = phase(Fraction(sec.parity, 2)) * module.phi_coeff(g, g)
            if not consistency.is_one:
                notes.append(
                    f"self-paired sector {g} rejects any metric normalization "
                    f"(consistency phase {consistency.theta})"
                )
    return norm, notes


def reconstruct_structure(module: OrbifoldModule) -> GFrobeniusStructure:
    """Metric and products pinned by the twisted commutativity relation and
    metric duality against the identity sector.

    Twisted pairs whose product lands in a twisted sector are set to zero when
    the bidegree support is empty, and rejected otherwise.
    """
    G = module.group
    e = G.identity
    norm, notes = metric_normalizations(module)
    structure = GFrobeniusStructure(module, norm, {}, notes)

    e_basis = module.sectors[e].ring.basis
    e_ring = module.sectors[e].ring
    pairing_inv = _invert_fraction_matrix(e_ring.pairing_matrix())

    for g in G:
        for h in G:
            table: dict[tuple[Monomial, Monomial], Element] = {}
            gh = element_mul(g, h)
            if g == e and h == e:
                for a in e_basis:
                    for b in e_basis:
                        prod = e_ring.multiply(e_ring.element(a), e_ring.element(b))
                        table[(a, b)] = {
                            (e, m): Scaled(c) for m, c in prod.terms.items()
                        }
            elif g == e or h == e:
                t = h if g == e else g
                sec = module.sectors[t]
                for a in e_basis:
                    ra = module.restrict_to_sector(e_ring.element(a), t)
                    for b in sec.ring.basis:
                        if ra.is_zero:
                            entry: Element = {}
                        else:
                            prod = sec.ring.multiply(ra, sec.ring.element(b))
                            entry = {(t, m): Scaled(c) for m, c in prod.terms.items()}
                        if g == e:
                            table[(a, b)] = entry
                        else:
                            table[(b, a)] = entry
            elif gh == e:
                sec = module.sectors[g]
                m_g = norm[g]
                for a in sec.ring.basis:
                    for b in sec.ring.basis:
                        rhs = []
                        for w in e_basis:
                            rw = module.restrict_to_sector(e_ring.element(w), h)
                            if rw.is_zero:
                                rhs.append(Fraction(0))
                                continue
                            nb = sec.ring.multiply(sec.ring.element(b), rw)
                            rhs.append(sec.ring.pairing(sec.ring.element(a), nb))
                        coeffs = _solve_with_inverse_transposed(pairing_inv, rhs)
                        table[(a, b)] = {
                            (e, m): Scaled(c) * Scaled.from_phase(m_g)
                            for m, c in zip(e_basis, coeffs)
                            if c != 0
                        }
            else:
                target = module.sectors[gh]
                for a in module.sectors[g].ring.basis:
                    for b in module.sectors[h].ring.basis:
                        want = _bidegree_sum(module, (g, a), (h, b))
                        hits = [
                            m for m in target.ring.basis if target.bidegree(m) == want
                        ]
                        if hits:
                            raise ReconstructionUnsupported(
                                f"product of sectors {(g, h)} has support {hits} in "
                                f"sector {gh}; not determined by identity-sector duality"
                            )
                        table[(a, b)] = {}
            structure.products[(g, h)] = table
    return structure


def _bidegree_sum(module, a: ClassKey, b: ClassKey):
    qa = module.bidegree(a)
    qb = module.bidegree(b)
    return (qa[0] + qb[0], qa[1] + qb[1])


def _invert_fraction_matrix(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [list(row) + [Fraction(int(i == k)) for k in range(n)] for i, row in enumerate(mat)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular pairing matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def _solve_with_inverse_transposed(inv: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    # solves B^T p = rhs given inv = B^{-1}: p = (B^T)^{-1} rhs = (B^{-1})^T rhs
    n = len(inv)
    return [sum(inv[r][i] * rhs[r] for r in range(n)) for i in range(n)]


# ---------------------------------------------------------------------------
# axiom checking


@dataclass
class AxiomFailure:
    axiom: str
    witness: str


@dataclass
class AxiomReport:
    failures: list[AxiomFailure]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        if self.ok:
            return "all axioms hold"
        lines = [f"{len(self.failures)} axiom failures:"]
        for f in self.failures[:12]:
            lines.append(f"  [{f.axiom}] {f.witness}")
        if len(self.failures) > 12:
            lines.append(f"  ... and {len(self.failures) - 12} more")
        return "\n".join(lines)


def _cyclo_order(module: OrbifoldModule, structure: GFrobeniusStructure) -> int:
    n = 2 * module.group.exponent
    for v in structure.metric_norm.values():
        n = _lcm(n, v.theta.denominator)
    for table in structure.products.values():
        for elem in table.values():
            for c in elem.values():
                n = _lcm(n, c.ph.theta.denominator)
    return n


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def _lcm_many(xs) -> int:
    out = 1
    for x in xs:
        out = _lcm(out, x)
    return out


def check_axioms(structure: GFrobeniusStructure, max_failures: int = 200) -> AxiomReport:
    """Exact verification of the twisted Frobenius axioms on basis classes."""
    mod = structure.module
    G = mod.group
    e = G.identity
    N = _cyclo_order(mod, structure)
    failures: list[AxiomFailure] = []

    def fail(axiom, witness):
        if len(failures) < max_failures:
            failures.append(AxiomFailure(axiom, witness))

    def to_cyclo(x) -> CyclotomicSum:
        if isinstance(x, Scaled):
            if x.is_zero:
                return CyclotomicSum.zero(N)
            return CyclotomicSum.from_terms(N, [(x.mag, x.ph)])
        return CyclotomicSum.from_terms(N, [(Fraction(x), ONE)])

    def elem_cyclo(x: Element) -> dict[ClassKey, CyclotomicSum]:
        return {k: to_cyclo(v) for k, v in x.items() if not v.is_zero}

    def elems_equal(x: Element, y: Element) -> bool:
        cx, cy = elem_cyclo(x), elem_cyclo(y)
        keys = set(cx) | set(cy)
        zero = CyclotomicSum.zero(N)
        return all(cx.get(k, zero) == cy.get(k, zero) for k in keys)

    def scaled_equal(x: Scaled, y) -> bool:
        return to_cyclo(x) == (y if isinstance(y, CyclotomicSum) else to_cyclo(y))

    classes = mod.classes()
    unit: Element = {(e, mod.sectors[e].ring.basis[0]): Scaled.one()}
    if sum(mod.sectors[e].ring.basis[0]) != 0:
        fail("unit", "identity sector basis does not start at the constant")

    def single(cls: ClassKey) -> Element:
        return {cls: Scaled.one()}

    def mul(x, y):
        try:
            return structure.multiply(x, y)
        except ArithmeticError as exc:
            fail("coefficient-domain", str(exc))
            return None

    # unit and phi(1) = 1
    for cls in classes:
        p1 = mul(unit, single(cls))
        p2 = mul(single(cls), unit)
        if p1 is None or p2 is None:
            continue
        if not elems_equal(p1, single(cls)) or not elems_equal(p2, single(cls)):
            fail("unit", f"unit fails on {cls}")
    for k in G:
        if not mod.action_coeff(k, (e, mod.sectors[e].ring.basis[0])).is_one:
            fail("unit", f"phi_{k} does not fix the unit")

    # self invariance: phi_g on its own sector is chi_g^{-1}
    for g in G:
        want = mod.chi(g).inv()
        for m in mod.sectors[g].ring.basis:
            got = mod.action_coeff(g, (g, m))
            if got != want:
                fail(
                    "self-invariance",
                    f"phi_{g} on class {(g, m)} is {got.theta}, expected {want.theta}",
                )

    # associativity
    for a in classes:
        for b in classes:
            ab = mul(single(a), single(b))
            if ab is None:
                continue
            for c in classes:
                left = mul(ab, single(c))
                bc = mul(single(b), single(c))
                right = mul(single(a), bc) if bc is not None else None
                if left is None or right is None:
                    continue
                if not elems_equal(left, right):
                    fail("associativity", f"({a} * {b}) * {c} != {a} * ({b} * {c})")

    # twisted commutativity: a_g b_h = (-1)^{parity} phi_g(b_h) a_g
    for a in classes:
        pa = mod.parity(a)
        for b in classes:
            pb = mod.parity(b)
            lhs = mul(single(a), single(b))
            if lhs is None:
                continue
            tw = structure.apply_phi(a[0], single(b))
            rhs = mul(tw, single(a))
            if rhs is None:
                continue
            if pa * pb:
                rhs = {k: -v for k, v in rhs.items()}
            if not elems_equal(lhs, rhs):
                fail("twisted-commutativity", f"{a} * {b} vs twisted reverse")

    # equivariance of the multiplication
    for k in G:
        for a in classes:
            for b in classes:
                ab = mul(single(a), single(b))
                if ab is None:
                    continue
                lhs = structure.apply_phi(k, ab)
                rhs = mul(structure.apply_phi(k, single(a)), structure.apply_phi(k, single(b)))
                if rhs is None:
                    continue
                if not elems_equal(lhs, rhs):
                    fail("equivariance", f"phi_{k} not multiplicative on {a} * {b}")

    # metric: graded, invariant, twisted by chi^{-2}
    for a in classes:
        for b in classes:
            v = structure.metric(a, b)
            if not v.is_zero:
                qa, qb = mod.bidegree(a), mod.bidegree(b)
                if qa[0] + qb[0] != mod.ring.dim or qa[1] + qb[1] != mod.ring.dim:
                    fail("metric-graded", f"eta({a},{b}) off-degree")
                if (mod.parity(a) + mod.parity(b)) % 2:
                    fail("metric-graded", f"eta({a},{b}) pairs odd with even")
            for k in G:
                lhs = structure.metric(a, b) * mod.action_coeff(k, a) * mod.action_coeff(k, b)
                rhs = structure.metric(a, b) * mod.chi(k).inv() * mod.chi(k).inv()
                if not scaled_equal(lhs, rhs):
                    fail("metric-twist", f"eta(phi_{k} {a}, phi_{k} {b}) != chi^-2 eta")
                    break

    # metric invariance eta(a, b*c) = eta(a*b, c)
    for a in classes:
        for b in classes:
            ab = mul(single(a), single(b))
            if ab is None:
                continue
            for c in classes:
                bc = mul(single(b), single(c))
                if bc is None:
                    continue
                lhs_terms = [v * structure.metric(a, k) for k, v in bc.items()]
                rhs_terms = [v * structure.metric(k, c) for k, v in ab.items()]
                lhs = sum((to_cyclo(t) for t in lhs_terms), CyclotomicSum.zero(N))
                rhs = sum((to_cyclo(t) for t in rhs_terms), CyclotomicSum.zero(N))
                if lhs != rhs:
                    fail("metric-invariance", f"eta({a}, {b}*{c}) != eta({a}*{b}, {c})")

    # projective super-trace condition on commuting pairs
    for g in G:
        for h in G:
            for cm in mod.sectors[e].ring.basis:
                c: Element = {(e, cm): Scaled.one()}

                def op_lhs(x, _h=h, _c=c):
                    return structure.multiply(_c, structure.apply_phi(_h, x))

                def op_rhs(x, _g=g, _c=c):
                    return structure.apply_phi(element_inv(_g), structure.multiply(_c, x))

                try:
                    lhs = _supertrace(structure, g, op_lhs, N) * _phase_cyclo(mod.chi(h), N)
                    rhs = _supertrace(structure, h, op_rhs, N) * _phase_cyclo(
                        mod.chi(element_inv(g)), N
                    )
                except ArithmeticError as exc:
                    fail("coefficient-domain", str(exc))
                    continue
                if lhs != rhs:
                    fail(
                        "projective-trace",
                        f"supertrace mismatch at g={g}, h={h}, c={(e, cm)}",
                    )

    # bidegree additivity of products
    for a in classes:
        for b in classes:
            try:
                prod = structure.product_of_classes(a, b)
            except ReconstructionUnsupported:
                continue
            want = _bidegree_sum(mod, a, b)
            for cls, v in prod.items():
                if not v.is_zero and mod.bidegree(cls) != want:
                    fail("bidegree", f"{a} * {b} hits off-degree class {cls}")

    return AxiomReport(failures)


def _phase_cyclo(p: UnitPhase, n: int) -> CyclotomicSum:
    return CyclotomicSum.from_terms(n, [(Fraction(1), p)])


def _supertrace(structure, sector: GroupElement, op, N) -> CyclotomicSum:
    """Supertrace of the operator on the given sector, diagonal entries only."""
    mod = structure.module
    sec = mod.sectors[normalize_element(sector)]
    sign = (-1) ** sec.parity
    total = CyclotomicSum.zero(N)
    for m in sec.ring.basis:
        x: ClassKey = (sec.g, m)
        img = op({x: Scaled.one()})
        coeff = img.get(x, Scaled.zero())
        if not coeff.is_zero:
            total = total + CyclotomicSum.from_terms(N, [(sign * coeff.mag, coeff.ph)])
    return total


def mutated_copy(structure: GFrobeniusStructure, seed: int) -> tuple[GFrobeniusStructure, str]:
    """A copy with exactly one structure constant perturbed; returns what changed."""
    rng = random.Random(seed)
    entries = []
    for pair, table in structure.products.items():
        for key, elem in table.items():
            for cls, val in elem.items():
                if not val.is_zero:
                    entries.append(("product", pair, key, cls))
    for g in structure.metric_norm:
        entries.append(("metric", g, None, None))
    kind, a, b, c = entries[rng.randrange(len(entries))]
    factor = rng.choice([Scaled(2), Scaled(-1), Scaled(Fraction(1, 2)), Scaled(0)])
    products = {
        pair: {key: dict(elem) for key, elem in table.items()}
        for pair, table in structure.products.items()
    }
    norm = dict(structure.metric_norm)
    if kind == "product":
        old = products[a][b][c]
        products[a][b][c] = old * factor if not factor.is_zero else Scaled.zero()
        what = f"product {a}{b} coefficient on {c} scaled by {factor.mag * (1 if factor.ph.is_one else -1)}"
    else:
        norm[a] = norm[a] * phase(Fraction(1, 2))
        what = f"metric normalization at {a} negated"
    out = GFrobeniusStructure(structure.module, norm, products, list(structure.notes))
    return out, what
