"""Constraint qualification analysis of a PL inequality f(x) <= 0 at a point.

Decides the plain, extended and Frechet BCQ and their tau-strong forms as
exact polyhedral inclusions, computes infimal tau constants by two
independent routes (direction-wise fractional programs over refined cones,
and reciprocal end-set distances), the error-bound modulus of the
linearized inequality, and replays the characterization theorems relating
all of these as machine-checkable identities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .linalg import INF, Vec, dot, is_zero, neg, sub, zeros
from . import simplex
from .cones import (clarke_normal_cone, clarke_tangent_cone, contingent_cone,
                    frechet_normal_cone)
from .endset import distance_to_end_set
from .plfunc import PLFunction, is_boundary_point
from .polyhedra import (ConeSet, HPolyhedron, NormSpec, UnionPolyhedron,
                        in_scaled_set, minkowski_sum, nonneg_hull, segment_hull)
from .subdiff import (NotLipschitz, clarke_singular_subdiff, clarke_subdiff,
                      frechet_subdiff, is_regular)

MODE_CLARKE = "clarke"
MODE_EXTENDED = "extended"
MODE_FRECHET = "frechet"

FLAG_CONVENTION = "CONVENTION_APPLIED"
FLAG_ANY_TAU = "ANY_POSITIVE_TAU"
FLAG_BCQ_FAILS = "BCQ_FAILS"

_GRID = Fraction(1, 1024)  # tightness certification grid 1 - 1/1024


class NotApplicable(Exception):
    """A hypothesis of the requested check does not hold at this point."""


class Analysis:
    """All nonsmooth-analysis objects of (f, x), computed once and shared."""

    def __init__(self, f: PLFunction, x, norm: NormSpec = NormSpec("linf")):
        self.f = f
        self.x = tuple(Fraction(q) for q in x)
        if len(self.x) != f.dim:
            raise ValueError("basepoint dimension mismatch")
        if not f.in_domain(self.x):
            raise ValueError("basepoint outside dom f")
        if not norm.is_exact:
            raise ValueError("CQ analysis needs a polyhedral norm (l1 or linf)")
        self.norm = norm
        self.phi_value = f.value(self.x)

    @cached_property
    def solution_set(self) -> UnionPolyhedron:
        return self.f.solution_set()

    @cached_property
    def in_solution_set(self) -> bool:
        return self.solution_set.contains(self.x)

    @cached_property
    def on_boundary(self) -> bool:
        return self.in_solution_set and is_boundary_point(self.solution_set, self.x)

    @cached_property
    def lipschitz(self) -> bool:
        return self.f.lipschitz_at(self.x)

    @cached_property
    def dual_ball(self) -> HPolyhedron:
        return self.norm.dual().ball(self.f.dim)

    @cached_property
    def clarke(self):
        return clarke_subdiff(self.f, self.x)

    @cached_property
    def singular(self):
        return clarke_singular_subdiff(self.f, self.x)

    @cached_property
    def frechet(self):
        return frechet_subdiff(self.f, self.x)

    @cached_property
    def tangent_contingent(self) -> ConeSet:
        self.require_in_solution_set()
        return contingent_cone(self.solution_set, self.x)

    @cached_property
    def tangent_clarke(self) -> ConeSet:
        self.require_in_solution_set()
        return clarke_tangent_cone(self.solution_set, self.x)

    @cached_property
    def normal_clarke(self) -> HPolyhedron:
        self.require_in_solution_set()
        return clarke_normal_cone(self.solution_set, self.x).body.canonical()

    @cached_property
    def normal_frechet(self) -> HPolyhedron:
        self.require_in_solution_set()
        return frechet_normal_cone(self.solution_set, self.x).body.canonical()

    @cached_property
    def gradients(self) -> list[Vec]:
        return [g for _, g, _ in self.f.local_cells(self.x).cells]

    @cached_property
    def regular(self) -> bool:
        if not self.lipschitz:
            raise NotLipschitz("regularity needs a Lipschitz point")
        return is_regular(self.f, self.x)

    @cached_property
    def sublevel_cone(self) -> HPolyhedron:
        """{h : phi°(x; h) <= 0}, a convex polyhedral cone (Lipschitz only)."""
        self.require_lipschitz()
        rows = [(g, Fraction(0)) for g in self.clarke.vertices()]
        return HPolyhedron(self.f.dim, rows).canonical()

    @cached_property
    def singular_is_zero(self) -> bool:
        return self.singular.set.set_eq(HPolyhedron.single_point(zeros(self.f.dim)))

    # -- hypothesis guards ----------------------------------------------------

    def require_in_solution_set(self):
        if not self.in_solution_set:
            raise NotApplicable("basepoint not in the solution set")

    def require_boundary(self):
        if not self.on_boundary:
            raise NotApplicable("basepoint not on the boundary of the solution set")

    def require_lipschitz(self):
        if not self.lipschitz:
            raise NotApplicable("basepoint is not a Lipschitz point")

    def require_zero_level(self):
        if self.phi_value != 0:
            raise NotApplicable("basepoint is not on the zero level set")

    def require_bounded_frechet(self):
        if not self.frechet.bounded():
            raise NotApplicable("Frechet subdifferential is unbounded")


# ---------------------------------------------------------------------------
# membership in scaled sums [0,tau]C + K (exact, including non-closed cases)
# ---------------------------------------------------------------------------

def _in_scaled_sum(z: Vec, C: HPolyhedron, K: HPolyhedron, r, include_zero=True) -> bool:
    """z in (0,r]C + K, or [0,r]C + K when include_zero (then t=0 contributes
    exactly K, since [0,r]C contains 0)."""
    if C.is_empty:
        return include_zero and K.contains(z)
    if include_zero and K.contains(z):
        return True
    n = C.dim
    rows = []
    eqs = []
    # variables (t, k): z - k in tC reads a.(z - k) <= t b, and k in K
    for a, b in C.rows:
        rows.append(((-b,) + neg(a), -dot(a, z)))
    for e, d in C.eqs:
        eqs.append(((-d,) + neg(e), -dot(e, z)))
    for a, b in K.rows:
        rows.append(((Fraction(0),) + a, b))
    for e, d in K.eqs:
        eqs.append(((Fraction(0),) + e, d))
    rows_t = [((Fraction(-1),) + zeros(n), Fraction(0)),
              ((Fraction(1),) + zeros(n), Fraction(r))]
    obj = (Fraction(1),) + zeros(n)
    res = simplex.lp_solve(obj, rows + rows_t, eqs, sense="max")
    return res.status == simplex.OPTIMAL and res.value > 0


# ---------------------------------------------------------------------------
# BCQ checks
# ---------------------------------------------------------------------------

def _nonzero_generator(N: HPolyhedron) -> Vec | None:
    v = N.generators()
    if v.rays:
        return v.rays[0]
    if v.lines:
        return v.lines[0]
    return None


def _cone_in_scaled_hull(N: HPolyhedron, C: HPolyhedron):
    """Decide N subset of [0,+oo)C for a closed convex cone N and nonempty
    convex C.  [0,+oo)C is a convex cone, so generator membership suffices;
    membership of z != 0 is an exact one-dimensional scaling test, which
    stays correct even when [0,+oo)C fails to be closed (unreachable
    recession directions)."""
    v = N.generators()
    for r in v.rays:
        if not in_scaled_set(r, C, None, include_zero=True):
            return r
    for l in v.lines:
        for d in (l, neg(l)):
            if not in_scaled_set(d, C, None, include_zero=True):
                return d
    return True


def check_clarke_bcq(an: Analysis):
    """N_c(S, x) subset of [0,+oo) * Clarke subdifferential.

    Returns (holds, witness_or_None, flags)."""
    an.require_boundary()
    flags = set()
    sub = an.clarke.set
    if sub.is_empty:
        flags.add(FLAG_CONVENTION)
        holds = an.normal_clarke.set_eq(HPolyhedron.single_point(zeros(an.f.dim)))
        return holds, None if holds else _nonzero_generator(an.normal_clarke), flags
    w = _cone_in_scaled_hull(an.normal_clarke, sub)
    if w is True:
        return True, None, flags
    return False, w, flags


def check_extended_bcq(an: Analysis):
    """N_c(S, x) subset of [0,+oo)@c f(x) + @c^inf f(x)."""
    an.require_boundary()
    an.require_zero_level()
    flags = set()
    sub, sing = an.clarke.set, an.singular.set
    if sub.is_empty:
        flags.add(FLAG_CONVENTION)
        rhs = sing
    else:
        # recession of the subdifferential sits inside the singular cone, so
        # the scaled hull plus the singular cone is closed
        assert sub.recession().subset_of(sing) is True
        rhs = minkowski_sum(nonneg_hull(sub), sing)
    w = an.normal_clarke.subset_of(rhs)
    if w is True:
        return True, None, flags
    return False, w, flags


def check_frechet_bcq(an: Analysis):
    """N^(S, x) == [0,+oo) * Frechet subdifferential (set equality)."""
    an.require_boundary()
    flags = set()
    sub = an.frechet.set
    Nf = an.normal_frechet
    if sub.is_empty:
        flags.add(FLAG_CONVENTION)
        holds = Nf.set_eq(HPolyhedron.single_point(zeros(an.f.dim)))
        return holds, None if holds else _nonzero_generator(Nf), flags
    assert sub.subset_of(Nf) is True, "Frechet subgradients must be Frechet normals"
    w = _cone_in_scaled_hull(Nf, sub)
    if w is True:
        return True, None, flags
    return False, w, flags


def check_strong_bcq(an: Analysis, tau, mode: str):
    """Exact inclusion N cap B_dual subset of [0,tau]@ (+ @^inf in extended
    mode), on the raw (not closed) right-hand set: that set is convex, so it
    suffices to test the vertices of the left polytope by scaling LPs.

    Returns (holds, witness_or_None)."""
    tau = Fraction(tau)
    if tau <= 0:
        raise ValueError("strong BCQ needs tau > 0")
    an.require_boundary()
    if mode == MODE_CLARKE:
        N, C = an.normal_clarke, an.clarke.set
        K = HPolyhedron.single_point(zeros(an.f.dim))
    elif mode == MODE_EXTENDED:
        an.require_zero_level()
        N, C, K = an.normal_clarke, an.clarke.set, an.singular.set
    elif mode == MODE_FRECHET:
        an.require_zero_level()
        N, C = an.normal_frechet, an.frechet.set
        K = HPolyhedron.single_point(zeros(an.f.dim))
    else:
        raise ValueError("unknown strong BCQ mode %r" % (mode,))
    lhs = N.intersect(an.dual_ball).canonical()
    for v in lhs.generators().vertices:
        if not _in_scaled_sum(v, C, K, tau, include_zero=True):
            return False, v
    return True, None


# ---------------------------------------------------------------------------
# direction-wise machinery: d(h, T) vs max{0, support} over refined cones
# ---------------------------------------------------------------------------

def _ball_slice_vertices(an: Analysis, N: HPolyhedron) -> list[Vec]:
    """Vertices of N cap B_dual: d(h, T) = max over them of w.h, where T is
    the polar cone of N in the primal norm."""
    poly = N.intersect(an.dual_ball).canonical()
    v = poly.generators()
    assert not v.rays and not v.lines
    return list(v.vertices)


def _refined_cells(W: list[Vec], G: list[Vec], dim: int):
    """Full-dimensional cones on which both h -> max_k w.h and
    h -> max{0, max_j g.h} are linear, with their attaining vectors."""
    U = [zeros(dim)] + [g for g in G if not is_zero(g)]
    for u in U:
        for w in W:
            rows = [(sub(u2, u), Fraction(0)) for u2 in U if u2 != u]
            rows += [(sub(w2, w), Fraction(0)) for w2 in W if w2 != w]
            C = HPolyhedron(dim, rows)
            if C.is_full_dim():
                yield u, w, C


def _best_tau_cells(W: list[Vec], G: list[Vec], dim: int):
    """Infimal tau with max_k w.h <= tau * max{0, max_j g.h} everywhere;
    INF when no finite tau works; 0 means every positive tau works."""
    if all(is_zero(w) for w in W):
        return Fraction(0)
    best = Fraction(0)
    for u, w, C in _refined_cells(W, G, dim):
        v = C.generators()
        if is_zero(u):
            # max{0, .} vanishes here, so the distance must too
            if any(dot(w, r) > 0 for r in v.rays) or any(dot(w, l) != 0 for l in v.lines):
                return INF
            continue
        res = simplex.lp_solve(w, rows=C.rows, eqs=[(u, Fraction(1))])
        if res.status == simplex.UNBOUNDED:
            return INF
        if res.status == simplex.OPTIMAL:
            best = max(best, res.value)
    return best


def _dirwise_strong_holds(W: list[Vec], G: list[Vec], tau, dim: int) -> bool:
    """Does d(h,T) <= tau * max{0, phi-support(h)} hold for all h?  Evaluated
    exactly on the generators of every full-dimensional refined cone."""
    tau = Fraction(tau)
    for u, w, C in _refined_cells(W, G, dim):
        v = C.generators()
        for r in v.rays:
            if dot(w, r) > tau * dot(u, r):
                return False
        for l in v.lines:
            if dot(w, l) != tau * dot(u, l):
                return False
    return True


def best_tau_directional(an: Analysis, mode: str):
    """Infimal tau via sup over directions of d(h, T)/derivative ratios,
    one fractional LP per refined cone (Charnes-Cooper normalization).

    Returns (tau, flags): INF when no finite tau exists, 0 (flagged) when
    every positive tau works."""
    an.require_boundary()
    flags = set()
    if mode == MODE_CLARKE:
        an.require_lipschitz()
        W = _ball_slice_vertices(an, an.normal_clarke)
        G = an.clarke.vertices()
    elif mode == MODE_FRECHET:
        an.require_zero_level()
        an.require_bounded_frechet()
        W = _ball_slice_vertices(an, an.normal_frechet)
        G = an.frechet.vertices()
        if an.frechet.is_empty:
            flags.add(FLAG_CONVENTION)
    else:
        raise ValueError("directional route exists for clarke and frechet modes")
    tau = _best_tau_cells(W, G, an.f.dim)
    if tau == 0:
        flags.add(FLAG_ANY_TAU)
    return tau, flags


def _endset_base(an: Analysis, mode: str) -> HPolyhedron:
    if mode == MODE_CLARKE:
        return an.clarke.set.intersect(an.normal_clarke).canonical()
    if mode == MODE_EXTENDED:
        hull01 = segment_hull(an.clarke.set, 1)
        return minkowski_sum(hull01, an.singular.set).intersect(an.normal_clarke).canonical()
    if mode == MODE_FRECHET:
        return an.frechet.set
    raise ValueError("unknown end-set mode %r" % (mode,))


def endset_distance(an: Analysis, mode: str):
    """d(0, E[.]) in the dual norm for the mode's characterizing set."""
    return distance_to_end_set(_endset_base(an, mode), an.norm.dual())


def best_tau_endset(an: Analysis, mode: str):
    """Infimal tau as 1/d(0, E[.]); requires the mode's BCQ (INF and
    BCQ_FAILS otherwise); 0 with ANY_POSITIVE_TAU for empty end sets."""
    an.require_boundary()
    flags = set()
    if mode == MODE_CLARKE:
        # the reciprocal end-set formula is backed by the Lipschitz theorem
        # and by its singular-free lsc variant; outside both it is unproven
        if not (an.lipschitz or (an.singular_is_zero and an.phi_value == 0)):
            raise NotApplicable("no end-set characterization at this point")
        bcq, _, f = check_clarke_bcq(an)
    elif mode == MODE_EXTENDED:
        bcq, _, f = check_extended_bcq(an)
    else:
        an.require_zero_level()
        an.require_bounded_frechet()
        bcq, _, f = check_frechet_bcq(an)
    flags |= f
    if not bcq:
        flags.add(FLAG_BCQ_FAILS)
        return INF, flags
    d = endset_distance(an, mode)
    if d is INF:
        flags.add(FLAG_ANY_TAU)
        return Fraction(0), flags
    return 1 / d, flags


# ---------------------------------------------------------------------------
# further characterizations
# ---------------------------------------------------------------------------

def check_subdiff_in_normal(an: Analysis) -> bool:
    """@c f(x) subset of N_c(S, x), with the support-side restatement
    (tangent cone inside the zero-sublevel cone of phi°) verified against it."""
    an.require_lipschitz()
    an.require_in_solution_set()
    lhs = an.clarke.set.subset_of(an.normal_clarke) is True
    rhs = an.tangent_clarke.body.subset_of(an.sublevel_cone) is True
    if lhs != rhs:
        raise RuntimeError("subdifferential/tangent-cone duality failed")
    if an.regular and not lhs:
        raise RuntimeError("regular point must have its subdifferential in the normal cone")
    return lhs


def check_tangent_inclusion(an: Analysis) -> bool:
    """{h : phi°(x;h) <= 0} subset of T_c(S, x); must match Clarke BCQ when
    0 is not a Clarke subgradient."""
    an.require_lipschitz()
    an.require_in_solution_set()
    incl = an.sublevel_cone.subset_of(an.tangent_clarke.body.canonical()) is True
    if an.on_boundary:
        bcq, _, _ = check_clarke_bcq(an)
        if bcq and not incl:
            raise RuntimeError("Clarke BCQ must imply the tangent inclusion")
        if not an.clarke.set.contains(zeros(an.f.dim)) and bcq != incl:
            raise RuntimeError("tangent inclusion must match BCQ when 0 is not a subgradient")
    return incl


def error_bound_modulus(an: Analysis):
    """Infimal tau with d(h, S_psi) <= tau max{0, psi(h)} for psi = phi°(x;.):
    the same refined-cone program with the tangent cone replaced by the
    sublevel cone of psi."""
    an.require_lipschitz()
    G = an.clarke.vertices()
    polar = nonneg_hull(an.clarke.set) if G else HPolyhedron.single_point(zeros(an.f.dim))
    W = _ball_slice_vertices(an, polar)
    return _best_tau_cells(W, G, an.f.dim)


def _scaled_sum_projection(C: HPolyhedron, K: HPolyhedron, r) -> HPolyhedron:
    """[0,r]C + K as a projection of {(z,t,k) : z-k in tC, k in K, 0<=t<=r},
    valid whenever rec(C) is contained in K (asserted by callers)."""
    n = C.dim
    rows = []
    eqs = []
    zero_n = zeros(n)
    for a, b in C.rows:
        rows.append((a + (-b,) + neg(a), Fraction(0)))
    for e, d in C.eqs:
        eqs.append((e + (-d,) + neg(e), Fraction(0)))
    for a, b in K.rows:
        rows.append((zero_n + (Fraction(0),) + a, b))
    for e, d in K.eqs:
        eqs.append((zero_n + (Fraction(0),) + e, d))
    rows.append((zero_n + (Fraction(-1),) + zero_n, Fraction(0)))
    rows.append((zero_n + (Fraction(1),) + zero_n, Fraction(r)))
    lifted = HPolyhedron(2 * n + 1, rows, eqs)
    return lifted.project(tuple(range(n))).canonical()


def verify_prop32(an: Analysis, r) -> dict:
    """The four subdifferential/singular-cone identities at scale r > 0:
    (i) @c + r @c^inf = @c, (ii) (0,r]@c + @c^inf = (0,r]@c,
    (iii) @c^inf inside cl((0,r]@c), (iv) cl([0,r]@c) = [0,r]@c + @c^inf.
    Closed identities are polyhedral equalities between two independently
    built sets; the half-open (ii) adds exact scaled-membership bookkeeping
    on a deterministic point battery."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("scale must be positive")
    sub, sing = an.clarke.set, an.singular.set
    if sub.is_empty:
        raise NotApplicable("empty Clarke subdifferential")
    assert sub.recession().subset_of(sing) is True
    out = {}
    out["i"] = minkowski_sum(sub, sing).set_eq(sub)
    closure = segment_hull(sub, r)
    out["iii"] = sing.subset_of(closure) is True
    projected = _scaled_sum_projection(sub, sing, r)
    out["iv"] = closure.set_eq(projected)

    battery = [zeros(an.f.dim)]
    battery += list(closure.generators().vertices)
    battery += [g for g in closure.generators().rays]
    vs = sub.generators()
    battery += [scale_point for p in vs.vertices
                for scale_point in (tuple(q * r for q in p), tuple(q * r / 2 for q in p))]
    battery += list(sing.generators().rays)
    for p in list(battery):
        for k in sing.generators().rays:
            battery.append(tuple(a + b for a, b in zip(p, k)))
    ok = True
    for z in battery:
        lhs = _in_scaled_sum(z, sub, sing, r, include_zero=False)
        rhs = in_scaled_set(z, sub, r, include_zero=False)
        if lhs != rhs:
            ok = False
            break
    out["ii"] = ok
    return out


# ---------------------------------------------------------------------------
# theorem battery
# ---------------------------------------------------------------------------

def _tau_grid(taus) -> list[Fraction]:
    grid = {Fraction(1, 1024), Fraction(1, 3), Fraction(1), Fraction(3), Fraction(1024)}
    for t in taus:
        if t is not INF and t > 0:
            grid |= {t, t * (1 - _GRID), t * (1 + _GRID)}
    return sorted(grid)


def _rhs_endset(bcq: bool, d, tau: Fraction) -> bool:
    return bcq and (d is INF or d >= 1 / tau)


def verify_theorems(an: Analysis) -> dict:
    """Each paper identity evaluated from independent routes; values are
    'pass', 'fail' or 'not-applicable'."""
    results: dict[str, str] = {}

    def run(name, fn):
        try:
            results[name] = "pass" if fn() else "fail"
        except (NotApplicable, NotLipschitz) as e:
            results[name] = "not-applicable"

    def clarke_setup():
        an.require_boundary()
        an.require_lipschitz()
        bcq, _, _ = check_clarke_bcq(an)
        d = endset_distance(an, MODE_CLARKE)
        tau_d, _ = best_tau_directional(an, MODE_CLARKE)
        tau_e, fl = best_tau_endset(an, MODE_CLARKE)
        return bcq, d, tau_d, tau_e

    def thm_3_1():
        bcq, d, tau_d, tau_e = clarke_setup()
        if bcq and not (tau_d == tau_e or (tau_d is INF and tau_e is INF)):
            return False
        for tau in _tau_grid([tau_d, tau_e]):
            holds, _ = check_strong_bcq(an, tau, MODE_CLARKE)
            if holds != _rhs_endset(bcq, d, tau):
                return False
        return True
    run("thm3.1", thm_3_1)

    def cor_3_1():
        bcq, d, tau_d, tau_e = clarke_setup()
        if an.clarke.set.subset_of(an.normal_clarke) is not True:
            raise NotApplicable("needs the subdifferential inside the normal cone")
        d_sub = distance_to_end_set(an.clarke.set, an.norm.dual())
        if d != d_sub:
            return False
        for tau in _tau_grid([tau_d]):
            holds, _ = check_strong_bcq(an, tau, MODE_CLARKE)
            if holds != _rhs_endset(bcq, d_sub, tau):
                return False
        return True
    run("cor3.1", cor_3_1)

    def prop_3_1():
        check_subdiff_in_normal(an)  # raises on mismatch of the two sides
        return True
    run("prop3.1", prop_3_1)

    def thm_3_2():
        check_tangent_inclusion(an)  # raises when either direction fails
        return True
    run("thm3.2", thm_3_2)

    def thm_3_3():
        an.require_boundary()
        an.require_lipschitz()
        W = _ball_slice_vertices(an, an.normal_clarke)
        G = an.clarke.vertices()
        tau_d, _ = best_tau_directional(an, MODE_CLARKE)
        for tau in _tau_grid([tau_d]):
            holds, _ = check_strong_bcq(an, tau, MODE_CLARKE)
            if holds != _dirwise_strong_holds(W, G, tau, an.f.dim):
                return False
        return True
    run("thm3.3", thm_3_3)

    def thm_3_4():
        an.require_boundary()
        an.require_lipschitz()
        bcq, _, _ = check_clarke_bcq(an)
        eb = error_bound_modulus(an)
        incl = an.clarke.set.subset_of(an.normal_clarke) is True
        for tau in _tau_grid([eb]):
            holds, _ = check_strong_bcq(an, tau, MODE_CLARKE)
            rhs = bcq and eb is not INF and eb <= tau
            if rhs and not holds:
                return False
            if incl and holds != rhs:
                return False
        return True
    run("thm3.4", thm_3_4)

    def cor_3_2():
        an.require_boundary()
        an.require_lipschitz()
        if not an.regular:
            raise NotApplicable("needs a regular point")
        bcq, _, _ = check_clarke_bcq(an)
        d_sub = distance_to_end_set(an.clarke.set, an.norm.dual())
        tau_e, _ = best_tau_endset(an, MODE_CLARKE)
        for tau in _tau_grid([tau_e]):
            holds, _ = check_strong_bcq(an, tau, MODE_CLARKE)
            if holds != _rhs_endset(bcq, d_sub, tau):
                return False
        return True
    run("cor3.2", cor_3_2)

    def cor_3_3():
        an.require_boundary()
        an.require_lipschitz()
        if not an.regular:
            raise NotApplicable("needs a regular point")
        bcq, _, _ = check_clarke_bcq(an)
        eb = error_bound_modulus(an)
        for tau in _tau_grid([eb]):
            holds, _ = check_strong_bcq(an, tau, MODE_CLARKE)
            rhs = bcq and eb is not INF and eb <= tau
            if holds != rhs:
                return False
        return True
    run("cor3.3", cor_3_3)

    def prop_3_2():
        if an.clarke.set.is_empty:
            raise NotApplicable("empty Clarke subdifferential")
        for r in (Fraction(1), Fraction(1, 2), Fraction(3)):
            res = verify_prop32(an, r)
            if not all(res.values()):
                return False
        return True
    run("prop3.2", prop_3_2)

    def thm_3_5():
        an.require_boundary()
        an.require_zero_level()
        bcq, _, _ = check_extended_bcq(an)
        d = endset_distance(an, MODE_EXTENDED)
        tau_e, _ = best_tau_endset(an, MODE_EXTENDED)
        for tau in _tau_grid([tau_e]):
            holds, _ = check_strong_bcq(an, tau, MODE_EXTENDED)
            if holds != _rhs_endset(bcq, d, tau):
                return False
        return True
    run("thm3.5", thm_3_5)

    def thm_3_6():
        an.require_boundary()
        an.require_zero_level()
        if not an.singular_is_zero:
            raise NotApplicable("needs a trivial singular subdifferential")
        bcq, _, _ = check_clarke_bcq(an)
        d = endset_distance(an, MODE_CLARKE)
        for tau in _tau_grid([Fraction(0) if d is INF else (1 / d if d > 0 else INF)]):
            holds, _ = check_strong_bcq(an, tau, MODE_CLARKE)
            if holds != _rhs_endset(bcq, d, tau):
                return False
        return True
    run("thm3.6", thm_3_6)

    def cor_3_4():
        an.require_boundary()
        an.require_zero_level()
        if an.clarke.set.is_empty or an.clarke.set.subset_of(an.normal_clarke) is not True:
            raise NotApplicable("needs the subdifferential inside the normal cone")
        bcq, _, _ = check_extended_bcq(an)
        d_sub = distance_to_end_set(an.clarke.set, an.norm.dual())
        for tau in _tau_grid([Fraction(0) if d_sub is INF else (1 / d_sub if d_sub > 0 else INF)]):
            holds, _ = check_strong_bcq(an, tau, MODE_EXTENDED)
            if holds != _rhs_endset(bcq, d_sub, tau):
                return False
        return True
    run("cor3.4", cor_3_4)

    def cor_3_5():
        an.require_boundary()
        an.require_zero_level()
        if not an.singular_is_zero:
            raise NotApplicable("needs a trivial singular subdifferential")
        if an.clarke.set.subset_of(an.normal_clarke) is not True:
            raise NotApplicable("needs the subdifferential inside the normal cone")
        bcq, _, _ = check_clarke_bcq(an)
        d_sub = distance_to_end_set(an.clarke.set, an.norm.dual())
        for tau in _tau_grid([]):
            holds, _ = check_strong_bcq(an, tau, MODE_CLARKE)
            if holds != _rhs_endset(bcq, d_sub, tau):
                return False
        return True
    run("cor3.5", cor_3_5)

    def prop_4_1():
        an.require_boundary()
        an.require_bounded_frechet()
        sub = an.frechet.set
        if sub.is_empty:
            raise NotApplicable("empty Frechet subdifferential")
        point0 = HPolyhedron.single_point(zeros(an.f.dim))
        for r in (Fraction(1), Fraction(2)):
            closure = segment_hull(sub, r)
            raw = _scaled_sum_projection(sub, point0, r)
            if not closure.set_eq(raw):
                return False
        return True
    run("prop4.1", prop_4_1)

    def thm_4_1():
        an.require_boundary()
        an.require_zero_level()
        an.require_bounded_frechet()
        bcq, _, _ = check_frechet_bcq(an)
        d = distance_to_end_set(an.frechet.set, an.norm.dual())
        tau_e, _ = best_tau_endset(an, MODE_FRECHET)
        for tau in _tau_grid([tau_e]):
            holds, _ = check_strong_bcq(an, tau, MODE_FRECHET)
            if holds != _rhs_endset(bcq, d, tau):
                return False
        return True
    run("thm4.1", thm_4_1)

    def cor_4_1():
        an.require_boundary()
        an.require_lipschitz()
        assert an.phi_value == 0, "continuous boundary points sit on the zero level"
        return thm_4_1()
    run("cor4.1", cor_4_1)

    def prop_4_2():
        an.require_boundary()
        an.require_bounded_frechet()
        bcq, _, _ = check_frechet_bcq(an)
        lhs = HPolyhedron(an.f.dim,
                          [(g, Fraction(0)) for g in an.frechet.vertices()]).canonical()
        rhs = an.tangent_contingent.body.convex_hull().canonical()
        eq48 = lhs.set_eq(rhs)
        if bcq and not eq48:
            return False
        if not an.frechet.set.contains(zeros(an.f.dim)) and bcq != eq48:
            return False
        return True
    run("prop4.2", prop_4_2)

    def prop_4_3():
        an.require_boundary()
        an.require_zero_level()
        an.require_bounded_frechet()
        W = _ball_slice_vertices(an, an.normal_frechet)
        G = an.frechet.vertices()
        tau_d, _ = best_tau_directional(an, MODE_FRECHET)
        for tau in _tau_grid([tau_d]):
            holds, _ = check_strong_bcq(an, tau, MODE_FRECHET)
            if holds != _dirwise_strong_holds(W, G, tau, an.f.dim):
                return False
        return True
    run("prop4.3", prop_4_3)

    return results


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------

@dataclass
class CQReport:
    basepoint: Vec
    phi_value: Fraction
    norm: NormSpec
    on_boundary: bool
    lipschitz: bool
    clarke_bcq: bool | None = None
    clarke_bcq_witness: Vec | None = None
    clarke_strong_bcq_tau: object = None   # Fraction | INF | None
    extended_bcq: bool | None = None
    extended_strong_bcq_tau: object = None
    frechet_bcq: bool | None = None
    frechet_strong_bcq_tau: object = None
    endset_distance_clarke: object = None
    endset_distance_frechet: object = None
    error_bound_modulus: object = None
    subdiff_in_normal: bool | None = None
    regular_at_point: bool | None = None
    clarke_subdiff_rows: tuple = ()
    theorem_checks: dict = field(default_factory=dict)
    flags: tuple = ()


def analyze(f: PLFunction, x, norm: NormSpec = NormSpec("linf")) -> CQReport:
    """Full CQ report at one basepoint; hypothesis violations turn into
    not-applicable fields rather than errors."""
    an = Analysis(f, x, norm)
    flags: set[str] = set()

    def attempt(fn, *args):
        try:
            return fn(an, *args)
        except (NotApplicable, NotLipschitz):
            return None

    rep = CQReport(basepoint=an.x, phi_value=an.phi_value, norm=norm,
                   on_boundary=an.on_boundary, lipschitz=an.lipschitz)
    rep.clarke_subdiff_rows = an.clarke.set.canonical().rows

    r = attempt(check_clarke_bcq)
    if r is not None:
        rep.clarke_bcq, rep.clarke_bcq_witness, fl = r
        flags |= fl
    r = attempt(check_extended_bcq)
    if r is not None:
        rep.extended_bcq, _, fl = r
        flags |= fl
    r = attempt(check_frechet_bcq)
    if r is not None:
        rep.frechet_bcq, _, fl = r
        flags |= fl

    r = attempt(best_tau_endset, MODE_CLARKE)
    if r is not None:
        rep.clarke_strong_bcq_tau, fl = r
        flags |= fl
    r = attempt(best_tau_endset, MODE_EXTENDED)
    if r is not None:
        rep.extended_strong_bcq_tau, fl = r
        flags |= fl
    r = attempt(best_tau_endset, MODE_FRECHET)
    if r is not None:
        rep.frechet_strong_bcq_tau, fl = r
        flags |= fl

    if an.in_solution_set and an.on_boundary:
        rep.endset_distance_clarke = endset_distance(an, MODE_CLARKE)
        rep.endset_distance_frechet = distance_to_end_set(an.frechet.set, norm.dual())
    r = attempt(lambda a: error_bound_modulus(a))
    if r is not None:
        rep.error_bound_modulus = r
    r = attempt(lambda a: check_subdiff_in_normal(a))
    if r is not None:
        rep.subdiff_in_normal = r
    if an.lipschitz:
        rep.regular_at_point = an.regular
    rep.theorem_checks = verify_theorems(an)
    rep.flags = tuple(sorted(flags))
    return rep
