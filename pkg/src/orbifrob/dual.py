"""Mirror dualization of sector modules.

The dual module relabels sector g by the underlying sector g j^{-1} of an
ambient module containing the exponential grading element j, flips the
left charge by the metric degree, and acts through chi times the source
action.  When j is missing from the group the construction goes through an
explicit Eulerization whose supergrading must restrict correctly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .exact import CyclotomicSum, Scaled, UnitPhase, phase
from .orbifold import (
    AxiomFailure,
    AxiomReport,
    ClassKey,
    InvariantClass,
    OrbifoldModule,
    ReconstructionUnsupported,
)
from .symmetry import (
    GroupElement,
    SymmetryGroup,
    element_inv,
    element_mul,
    generate_group,
    normalize_element,
)


class NotQuasiEuler(ValueError):
    """The supergrading does not extend to any group containing j."""


class NoEulerizationGiven(ValueError):
    """j is outside the group and no Eulerization was supplied."""


class NotCyclic(ValueError):
    pass


class MetricNotPullable(ValueError):
    """h^{-1} j^2 escapes the subgroup, so the dual metric does not restrict."""


def eulerize(module: OrbifoldModule) -> OrbifoldModule:
    """Extend (G, sigma) to <G, j>; raises NotQuasiEuler when sigma is stuck."""
    G = module.group
    j = module.j
    if j in G:
        return module
    big = generate_group(list(G.elements) + [j], G.nvars, bound=10000)
    # order of j in big/G and the element j^k lands on
    k = 1
    cur = j
    while cur not in G:
        cur = element_mul(cur, j)
        k += 1
    anchor_sigma = module.sigma[cur]
    choices = []
    for s in (0, 1):
        if (k * s - anchor_sigma) % 2 == 0:
            choices.append(s)
    if not choices:
        raise NotQuasiEuler(
            f"sigma cannot extend: j has order {k} over the subgroup and "
            f"sigma(j^{k}) = {anchor_sigma}"
        )
    s_j = choices[0]
    if not module.eps.is_trivial:
        raise NotQuasiEuler("discrete torsion extension across an Eulerization is not defined")
    sigma_big = {}
    for g in big:
        # write g = j^i * h with h in G, smallest i >= 0
        cur = g
        for i in range(k):
            if cur in G:
                sigma_big[g] = (i * s_j + module.sigma[cur]) % 2
                break
            cur = element_mul(cur, element_inv(j))
        else:
            raise AssertionError("coset decomposition failed")
    return OrbifoldModule(module.ring, big, sigma=sigma_big)


def _theta_shifts(ambient: OrbifoldModule, g: GroupElement) -> tuple[Fraction, Fraction]:
    """Bracket form of the dual shifts; agrees identically with the s-form."""
    j = ambient.j
    q = ambient.weights
    u = element_mul(g, element_inv(j))
    moving = [i for i in range(len(q)) if u[i] != 0]
    d_u = sum((1 - 2 * q[i] for i in range(len(q)) if u[i] == 0), Fraction(0))
    s_chk = sum((g[i] - (1 if g[i] >= q[i] else 0) for i in moving), Fraction(0)) - d_u
    s_bar_chk = sum(((1 if g[i] >= q[i] else 0) - g[i] for i in moving), Fraction(0))
    return (s_chk, s_bar_chk)


class DualModule:
    """Sectors of the mirror: label g carries the source sector g j^{-1}."""

    def __init__(self, ambient: OrbifoldModule, labels: SymmetryGroup):
        self.ambient = ambient
        self.group = labels          # the labels form the original group H
        self.j = ambient.j
        self.degree = ambient.ring.dim
        if element_inv(self.j) not in ambient.group:
            raise ValueError("ambient module must contain the grading element")
        for g in labels:
            if g not in ambient.group:
                raise ValueError("labels must sit inside the ambient group")
        self.shifts: dict[GroupElement, tuple[Fraction, Fraction]] = {}
        for g in labels:
            u = self.underlying(g)
            sec = ambient.sectors[u]
            s_chk = sec.s - self.degree
            s_bar_chk = sec.s_bar
            theta = _theta_shifts(ambient, g)
            if theta != (s_chk, s_bar_chk):
                raise ArithmeticError(
                    f"dual shift forms disagree at {g}: {theta} vs {(s_chk, s_bar_chk)}"
                )
            self.shifts[g] = (s_chk, s_bar_chk)

    def underlying(self, g) -> GroupElement:
        return element_mul(normalize_element(g), element_inv(self.j))

    def sector_ring(self, g):
        return self.ambient.sectors[self.underlying(g)].ring

    def classes(self) -> list[ClassKey]:
        out = []
        for g in self.group:
            for m in self.sector_ring(g).basis:
                out.append((g, m))
        return out

    def bidegree(self, cls: ClassKey) -> tuple[Fraction, Fraction]:
        g, mono = cls
        g = normalize_element(g)
        q = self.sector_ring(g).degree(mono)
        s, sb = self.shifts[g]
        return (q + s, q + sb)

    def action_coeff(self, k, cls: ClassKey) -> UnitPhase:
        """chi(k) times the source action on the underlying class."""
        g, mono = cls
        k = normalize_element(k)
        return self.ambient.chi(k) * self.ambient.action_coeff(
            k, (self.underlying(g), mono)
        )

    def invariants(self) -> list[InvariantClass]:
        out = []
        for cls in self.classes():
            if all(self.action_coeff(k, cls).is_one for k in self.group):
                g, mono = cls
                q = self.sector_ring(g).degree(mono)
                out.append(InvariantClass(g, mono, q, self.bidegree(cls)))
        return out

    def spectrum(self, classes=None) -> list[tuple[Fraction, Fraction]]:
        if classes is None:
            classes = self.invariants()
        return sorted(c.bidegree for c in classes)

    def module_spectrum(self) -> list[tuple[Fraction, Fraction]]:
        return sorted(self.bidegree(c) for c in self.classes())

    @property
    def is_g_euler(self) -> bool:
        """Whether the dual unit class survives the action of every label."""
        e = self.group.identity
        unit_mono = self.sector_ring(e).basis[0]
        return all(self.action_coeff(k, (e, unit_mono)).is_one for k in self.group)

    @property
    def metric_pullable(self) -> bool:
        jj = element_mul(self.j, self.j)
        return all(
            element_mul(element_inv(h), jj) in self.group for h in self.group
        )

    def metric_partner(self, g) -> GroupElement:
        """Label paired with g by the dual metric (group degree j^2)."""
        return element_mul(element_mul(self.j, self.j), element_inv(normalize_element(g)))

    def metric(self, a: ClassKey, b: ClassKey, norm: dict[GroupElement, UnitPhase]) -> Scaled:
        """Dual metric entries, given source metric normalizations."""
        if not self.metric_pullable:
            raise MetricNotPullable("j^2 leaves the label group")
        g, alpha = a
        h, beta = b
        if element_mul(self.underlying(g), self.underlying(h)) != self.ambient.group.identity:
            return Scaled.zero()
        ring = self.sector_ring(g)
        val = ring.pairing(ring.element(alpha), ring.element(beta))
        return Scaled(val) * Scaled.from_phase(norm[self.underlying(g)])


def dualize(module: OrbifoldModule, eulerization: OrbifoldModule | None = None) -> DualModule:
    """The mirror module on the same group of labels.

    Needs j inside the group; otherwise an explicit Eulerization must be
    supplied (build one with eulerize), and its supergrading must restrict
    to the given one.
    """
    if module.j in module.group:
        return DualModule(module, module.group)
    if eulerization is None:
        raise NoEulerizationGiven(
            "grading element outside the group; pass an Eulerization"
        )
    if module.j not in eulerization.group:
        raise ValueError("proposed Eulerization does not contain j")
    if eulerization.f != module.f:
        raise ValueError("Eulerization is for a different polynomial")
    for g in module.group:
        if g not in eulerization.group:
            raise ValueError("Eulerization does not contain the original group")
        if eulerization.sigma[g] != module.sigma[g]:
            raise NotQuasiEuler("supergrading of the Eulerization does not restrict")
    return DualModule(eulerization, module.group)


def double_dual_matches(module: OrbifoldModule, eulerization: OrbifoldModule | None = None) -> bool:
    """dualize twice and compare sectors, shifts and action with the source.

    The second dualization uses the dual triple (j^{-1}, chi^{-1}) and the
    negated metric degree; labels g j are read off the full-label dual of the
    ambient module, since they may leave the original subgroup.
    """
    if module.j in module.group:
        amb = module
    else:
        if eulerization is None:
            raise NoEulerizationGiven("involution needs an Eulerization here")
        dualize(module, eulerization)  # validates the restriction
        amb = eulerization
    full = DualModule(amb, amb.group)
    d = full.degree
    for g in module.group:
        g = normalize_element(g)
        back = element_mul(g, full.j)
        if full.underlying(back) != g:
            return False
        src = module.sectors[g]
        if full.shifts[back][0] + d != src.s:
            return False
        if full.shifts[back][1] != src.s_bar:
            return False
        for m in src.ring.basis:
            for k in module.group:
                left = amb.chi(k).inv() * full.action_coeff(k, (back, m))
                right = module.action_coeff(k, (g, m))
                if left != right:
                    return False
    return True


def involution_check(module: OrbifoldModule) -> bool:
    eul = None
    if module.j not in module.group:
        eul = eulerize(module)
    return double_dual_matches(module, eul)


# ---------------------------------------------------------------------------
# degenerate multiplicative structure on the dual (Euler case)


@dataclass
class DegenerateStructure:
    dual: DualModule
    products: dict[tuple[ClassKey, ClassKey], dict[ClassKey, Scaled]]
    ramond: set[GroupElement]
    notes: list[str] = field(default_factory=list)

    def eta(self, a: ClassKey, b: ClassKey) -> Scaled:
        """Pairing in group degree j^2, generators rescaled to pair to one."""
        dual = self.dual
        g, alpha = a
        h, beta = b
        if element_mul(dual.underlying(g), dual.underlying(h)) != dual.ambient.group.identity:
            return Scaled.zero()
        ring = dual.sector_ring(g)
        return Scaled(ring.pairing(ring.element(alpha), ring.element(beta)))

    def eta_prime(self, a: ClassKey, b: ClassKey) -> Scaled:
        if normalize_element(a[0]) in self.ramond or normalize_element(b[0]) in self.ramond:
            return Scaled.zero()
        return self.eta(a, b)

    def product(self, a: ClassKey, b: ClassKey) -> dict[ClassKey, Scaled]:
        return self.products.get((a, b), {})


def _generator_hits(dual: DualModule, notes: list[str] | None = None):
    """Basis class of the summed generator bidegree in each target sector."""
    gen_hit = {}
    for g in dual.group:
        for h in dual.group:
            t = element_mul(g, h)
            ring = dual.sector_ring(t)
            want = (
                dual.shifts[g][0] + dual.shifts[h][0],
                dual.shifts[g][1] + dual.shifts[h][1],
            )
            hits = [m for m in ring.basis if dual.bidegree((t, m)) == want]
            if len(hits) > 1 and notes is not None:
                notes.append(f"ambiguous generator product at {(g, h)}; zeroed")
            gen_hit[(g, h)] = hits[0] if len(hits) == 1 else None
    return gen_hit


def _extend_product(dual: DualModule, a: ClassKey, b: ClassKey, m0) -> dict[ClassKey, Scaled]:
    """z^a 1_g . z^b 1_h = NF(z^(a+b) m0) inside the target sector ring."""
    g, alpha = a
    h, beta = b
    t = element_mul(g, h)
    amb = dual.ambient
    nv = amb.group.nvars
    full = [0] * nv
    for idx, e in zip(amb.sectors[dual.underlying(g)].fixed, alpha):
        full[idx] += e
    for idx, e in zip(amb.sectors[dual.underlying(h)].fixed, beta):
        full[idx] += e
    tfix = amb.sectors[dual.underlying(t)].fixed
    if any(full[i] and i not in tfix for i in range(nv)):
        return {}
    ring = dual.sector_ring(t)
    for idx, e in zip(tfix, m0):
        full[idx] += e
    mono = tuple(full[i] for i in tfix)
    nf = ring.normal_form(ring.element(mono))
    return {(t, m): Scaled(c) for m, c in nf.terms.items()}


def _spread_products(dual: DualModule, gen_hit) -> dict:
    products: dict[tuple[ClassKey, ClassKey], dict[ClassKey, Scaled]] = {}
    classes = dual.classes()
    for a in classes:
        for b in classes:
            m0 = gen_hit[(a[0], b[0])]
            products[(a, b)] = {} if m0 is None else _extend_product(dual, a, b, m0)
    return products


def degenerate_structure(dual: DualModule) -> DegenerateStructure:
    """Bidegree-gated products on the sector generators, spread over the rings.

    Needs the Euler case (labels = ambient group).  Two generators multiply
    to the unique basis class carrying the sum of their bidegrees when one
    exists, else to zero; classes above the generators follow by multiplying
    monomials into the target sector ring.  Scale freedom of the generators
    is spent making the surviving coefficients and paired pairings one.
    Sectors of dimension > 1 are tagged Ramond-type; eta' zeroes their
    blocks while eta keeps them.
    """
    if dual.group.elements != dual.ambient.group.elements:
        raise ValueError("degenerate structure needs the Euler case")
    if dual.group.exponent != dual.group.order:
        # uniqueness up to rescaling needs trivial discrete torsion, which
        # only a cyclic label group forces
        raise NotCyclic("label group is not cyclic")
    notes: list[str] = []
    ramond = {g for g in dual.group if dual.sector_ring(g).mu > 1}
    if ramond:
        notes.append(f"{len(ramond)} Ramond-type sectors; their eta' blocks are zeroed")
    gen_hit = _generator_hits(dual, notes)
    return DegenerateStructure(dual, _spread_products(dual, gen_hit), ramond, notes)


def check_degenerate_axioms(st: DegenerateStructure, max_failures: int = 100) -> AxiomReport:
    dual = st.dual
    amb = dual.ambient
    G = dual.group
    e = G.identity
    j = dual.j
    jj = element_mul(j, j)
    N = 2 * amb.group.exponent
    failures: list[AxiomFailure] = []

    def fail(axiom, witness):
        if len(failures) < max_failures:
            failures.append(AxiomFailure(axiom, witness))

    def to_cyclo(x: Scaled) -> CyclotomicSum:
        if x.is_zero:
            return CyclotomicSum.zero(N)
        return CyclotomicSum.from_terms(N, [(x.mag, x.ph)])

    classes = dual.classes()

    # 1) both pairings live in group degree j^2
    for a in classes:
        for b in classes:
            for form, name in ((st.eta, "eta"), (st.eta_prime, "eta-prime")):
                v = form(a, b)
                if not v.is_zero and element_mul(a[0], b[0]) != jj:
                    fail("pairing-degree", f"{name}({a},{b}) nonzero off degree j^2")

    # 2) eta and eta' agree on the invariant classes
    inv = [(c.g, c.mono) for c in dual.invariants()]
    for a in inv:
        for b in inv:
            if to_cyclo(st.eta(a, b)) != to_cyclo(st.eta_prime(a, b)):
                fail("invariant-pairing", f"eta vs eta' differ on invariants {(a, b)}")

    # d') eta'(a, b*c) = eta'(a*b, c)
    for a in classes:
        for b in classes:
            ab = st.product(a, b)
            for c in classes:
                bc = st.product(b, c)
                lhs = CyclotomicSum.zero(N)
                for k, v in bc.items():
                    lhs = lhs + to_cyclo(v * st.eta_prime(a, k))
                rhs = CyclotomicSum.zero(N)
                for k, v in ab.items():
                    rhs = rhs + to_cyclo(v * st.eta_prime(k, c))
                if lhs != rhs:
                    fail("metric-invariance'", f"eta'({a},{b}*{c}) != eta'({a}*{b},{c})")

    # i^j) the operator labeled g j^{-1} is the identity on sector g
    for g in G:
        u = dual.underlying(g)
        for m in dual.sector_ring(g).basis:
            if not dual.action_coeff(u, (g, m)).is_one:
                fail("twist-identity", f"phi_{u} not id on dual sector {g}")

    # iii^j) the pairing is action invariant
    for k in G:
        for a in classes:
            for b in classes:
                v = st.eta(a, b)
                if v.is_zero:
                    continue
                lhs = v * dual.action_coeff(k, a) * dual.action_coeff(k, b)
                if to_cyclo(lhs) != to_cyclo(v):
                    fail("pairing-invariance", f"eta not invariant under {k} at {(a, b)}")

    # iv^j) plain trace condition
    for g in G:
        for h in G:
            for cm in dual.sector_ring(e).basis:
                c = (e, cm)
                lhs = CyclotomicSum.zero(N)
                for m in dual.sector_ring(g).basis:
                    x = (g, m)
                    ph = dual.action_coeff(element_mul(h, element_inv(j)), x)
                    img = st.product(c, x)
                    coeff = img.get(x, Scaled.zero()) * ph
                    lhs = lhs + to_cyclo(coeff)
                rhs = CyclotomicSum.zero(N)
                for m in dual.sector_ring(h).basis:
                    x = (h, m)
                    img = st.product(c, x)
                    coeff = img.get(x, Scaled.zero())
                    coeff = coeff * dual.action_coeff(element_mul(element_inv(g), j), x)
                    rhs = rhs + to_cyclo(coeff)
                if lhs != rhs:
                    fail("trace'", f"trace condition fails at g={g}, h={h}, c={c}")

    return AxiomReport(failures)


def pairing_invariance(st: DegenerateStructure) -> dict[str, bool]:
    """Which of the two pairings the multiplication renders invariant."""
    N = 2 * st.dual.ambient.group.exponent

    def to_cyclo(x: Scaled) -> CyclotomicSum:
        if x.is_zero:
            return CyclotomicSum.zero(N)
        return CyclotomicSum.from_terms(N, [(x.mag, x.ph)])

    classes = st.dual.classes()
    out = {}
    for name, form in (("eta", st.eta), ("eta_prime", st.eta_prime)):
        good = True
        for a in classes:
            if not good:
                break
            for b in classes:
                if not good:
                    break
                ab = st.product(a, b)
                for c in classes:
                    bc = st.product(b, c)
                    lhs = CyclotomicSum.zero(N)
                    for k, v in bc.items():
                        lhs = lhs + to_cyclo(v * form(a, k))
                    rhs = CyclotomicSum.zero(N)
                    for k, v in ab.items():
                        rhs = rhs + to_cyclo(v * form(k, c))
                    if lhs != rhs:
                        good = False
                        break
        out[name] = good
    return out


def maximality_report(st: DegenerateStructure) -> tuple[bool, list[str]]:
    """Unmatched zero products are grading-forced; ambiguous gates retried per hit."""
    dual = st.dual
    notes: list[str] = []
    maximal = True
    gen_hit = _generator_hits(dual)
    for (g, h), m0 in gen_hit.items():
        if m0 is not None:
            continue
        t = element_mul(g, h)
        ring = dual.sector_ring(t)
        want = (
            dual.shifts[g][0] + dual.shifts[h][0],
            dual.shifts[g][1] + dual.shifts[h][1],
        )
        hits = [m for m in ring.basis if dual.bidegree((t, m)) == want]
        if not hits:
            continue  # no class of the required bidegree: zero is forced
        viable = []
        for m in hits:
            trial_hits = dict(gen_hit)
            trial_hits[(g, h)] = m
            trial = DegenerateStructure(dual, _spread_products(dual, trial_hits), st.ramond, [])
            if check_degenerate_axioms(trial).ok:
                viable.append(m)
        if viable:
            maximal = False
            notes.append(f"generator product {(g, h)} admits nonzero values {viable}")
    return maximal, notes
