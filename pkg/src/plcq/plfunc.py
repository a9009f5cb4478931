"""Piecewise-linear functions as max/min trees over affine atoms.

A PLFunction is real-valued and Lipschitz on its (optional) closed
polyhedral domain and +infinity outside, which makes it a proper lower
semicontinuous extended-real function with a polyhedral epigraph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import INF, Vec, dot, neg, sub
from .polyhedra import HPolyhedron, UnionPolyhedron, union_subset


@dataclass(frozen=True)
class Atom:
    """x -> g.x + c"""
    g: Vec
    c: Fraction

    def value(self, x: Vec) -> Fraction:
        return dot(self.g, x) + self.c


@dataclass(frozen=True)
class Max:
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("max node needs at least two children")


@dataclass(frozen=True)
class Min:
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("min node needs at least two children")


def atom(g, c=0) -> Atom:
    return Atom(tuple(Fraction(q) for q in g), Fraction(c))


def vmax(*children) -> Max:
    return Max(tuple(children))


def vmin(*children) -> Min:
    return Min(tuple(children))


def expr_value(expr, x: Vec) -> Fraction:
    if isinstance(expr, Atom):
        return expr.value(x)
    vals = [expr_value(ch, x) for ch in expr.children]
    return max(vals) if isinstance(expr, Max) else min(vals)


def expr_value_float(expr, x) -> float:
    if isinstance(expr, Atom):
        return sum(float(g) * xi for g, xi in zip(expr.g, x)) + float(expr.c)
    vals = [expr_value_float(ch, x) for ch in expr.children]
    return max(vals) if isinstance(expr, Max) else min(vals)


def expr_atoms(expr) -> list[Atom]:
    if isinstance(expr, Atom):
        return [expr]
    out = []
    for ch in expr.children:
        out += expr_atoms(ch)
    return out


def expr_dim(expr) -> int:
    return len(expr_atoms(expr)[0].g)


def _sublevel_dnf(expr) -> list[list]:
    """{x : expr(x) <= 0} as a union (list) of conjunctions of rows."""
    if isinstance(expr, Atom):
        return [[(expr.g, -expr.c)]]
    parts = [_sublevel_dnf(ch) for ch in expr.children]
    if isinstance(expr, Min):
        return [conj for p in parts for conj in p]
    out = parts[0]
    for p in parts[1:]:
        out = [c1 + c2 for c1 in out for c2 in p]
    return out


def _lift_expr(expr):
    """expr'(x, r) = expr(x) - r, one dimension up."""
    if isinstance(expr, Atom):
        return Atom(expr.g + (Fraction(-1),), expr.c)
    kids = tuple(_lift_expr(ch) for ch in expr.children)
    return Max(kids) if isinstance(expr, Max) else Min(kids)


@dataclass
class CellComplex:
    """Full-dimensional local affine pieces at an anchor point: each cell is
    a cone of directions h on which f(anchor + t h) is affine with the stored
    gradient for small t > 0."""
    cells: list  # (region: HPolyhedron cone, gradient: Vec, offset: Fraction)
    anchor: Vec
    local: bool = True


class PLFunction:
    def __init__(self, expr, dim: int | None = None, domain: HPolyhedron | None = None):
        self.expr = expr
        self.dim = dim if dim is not None else expr_dim(expr)
        for a in expr_atoms(expr):
            if len(a.g) != self.dim:
                raise ValueError("atom dimension mismatch")
        if domain is not None:
            if domain.dim != self.dim:
                raise ValueError("domain dimension mismatch")
            if domain.is_empty:
                raise ValueError("empty domain gives the improper function")
        self.domain = domain
        self._solution: UnionPolyhedron | None = None
        self._epigraph: UnionPolyhedron | None = None

    # -- evaluation -----------------------------------------------------------

    def in_domain(self, x: Vec) -> bool:
        return self.domain is None or self.domain.contains(x)

    def value(self, x: Vec):
        """Exact value; +INF outside the domain."""
        if not self.in_domain(x):
            return INF
        return expr_value(self.expr, x)

    def value_float(self, x, tol: float = 1e-12) -> float:
        if self.domain is not None:
            for a, b in self.domain.rows:
                if sum(float(q) * xi for q, xi in zip(a, x)) > float(b) + tol:
                    return INF
            for e, d in self.domain.eqs:
                if abs(sum(float(q) * xi for q, xi in zip(e, x)) - float(d)) > tol:
                    return INF
        return expr_value_float(self.expr, x)

    def atoms(self) -> list[Atom]:
        return expr_atoms(self.expr)

    # -- derived sets -----------------------------------------------------------

    def solution_set(self) -> UnionPolyhedron:
        """{x in dom f : f(x) <= 0} as a union of polyhedra."""
        if self._solution is None:
            pieces = []
            for conj in _sublevel_dnf(self.expr):
                P = HPolyhedron(self.dim, conj)
                if self.domain is not None:
                    P = P.intersect(self.domain)
                pieces.append(P)
            self._solution = UnionPolyhedron(pieces, self.dim).canonical()
        return self._solution

    def epigraph(self) -> UnionPolyhedron:
        """epi f = {(x, r) : f(x) <= r} in dimension n+1."""
        if self._epigraph is None:
            lifted = _lift_expr(self.expr)
            pieces = []
            dom_rows = []
            dom_eqs = []
            if self.domain is not None:
                dom_rows = [(a + (Fraction(0),), b) for a, b in self.domain.rows]
                dom_eqs = [(e + (Fraction(0),), d) for e, d in self.domain.eqs]
            for conj in _sublevel_dnf(lifted):
                pieces.append(HPolyhedron(self.dim + 1, list(conj) + dom_rows, dom_eqs))
            self._epigraph = UnionPolyhedron(pieces, self.dim + 1).canonical()
        return self._epigraph

    # -- local structure ----------------------------------------------------------

    def lipschitz_at(self, x: Vec) -> bool:
        """Conservative: true only on the interior of the domain (everywhere
        when there is no domain)."""
        if not self.in_domain(x):
            return False
        if self.domain is None:
            return True
        return self.domain.strictly_contains(x)

    def domain_cone(self, x: Vec) -> HPolyhedron:
        """Feasible directions of the domain at x (the whole space if none)."""
        if self.domain is None:
            return HPolyhedron.full_space(self.dim)
        return self.domain.direction_cone(x)

    def dirderiv(self, x: Vec, h: Vec):
        """One-sided directional derivative f'(x; h); +INF when x + t h leaves
        the domain for every small t > 0."""
        if not self.in_domain(x):
            raise ValueError("directional derivative outside the domain")
        if not self.domain_cone(x).contains(h):
            return INF

        def rec(expr):
            if isinstance(expr, Atom):
                return dot(expr.g, h)
            v = expr_value(expr, x)
            picked = [rec(ch) for ch in expr.children if expr_value(ch, x) == v]
            return max(picked) if isinstance(expr, Max) else min(picked)

        return rec(self.expr)

    def local_cells(self, x: Vec) -> CellComplex:
        """The affine pieces of f at x as direction cones with gradients.

        Cells are full-dimensional relative to the domain cone at x, cover
        it, and on each cell f(x + th) = f(x) + t g.h for small t > 0.
        """
        if not self.in_domain(x):
            raise ValueError("local cells at a point outside the domain")

        def rec(expr):
            if isinstance(expr, Atom):
                return [((), expr.g)]
            v = expr_value(expr, x)
            parts = [rec(ch) for ch in expr.children if expr_value(ch, x) == v]
            is_max = isinstance(expr, Max)
            acc = parts[0]
            for part in parts[1:]:
                nxt = []
                for rows_a, ga in acc:
                    for rows_b, gb in part:
                        base = rows_a + rows_b
                        if ga == gb:
                            nxt.append((base, ga))
                            continue
                        d = sub(gb, ga) if is_max else sub(ga, gb)
                        nxt.append((base + (d,), ga))
                        nxt.append((base + (neg(d),), gb))
                acc = nxt
            return acc

        dcone = self.domain_cone(x)
        reldim = dcone.affine_dim()
        fx = expr_value(self.expr, x)
        cells = []
        seen = set()
        for rows, g in rec(self.expr):
            region = HPolyhedron(self.dim, [(a, Fraction(0)) for a in rows]).intersect(dcone)
            if region.affine_dim() != reldim:
                continue
            region = region.canonical()
            k = (region.key(), g)
            if k in seen:
                continue
            seen.add(k)
            cells.append((region, g, fx - dot(g, x)))
        return CellComplex(cells=cells, anchor=x)

    def gradients_at(self, x: Vec) -> list[Vec]:
        return [g for _, g, _ in self.local_cells(x).cells]

    def __repr__(self):
        dom = "" if self.domain is None else ", with domain"
        return "PLFunction(dim=%d, %d atoms%s)" % (self.dim, len(self.atoms()), dom)


def is_boundary_point(S: UnionPolyhedron, x: Vec) -> bool:
    """Exact boundary test: x in S is a boundary point iff the union of
    feasible-direction cones of the pieces containing x does not cover
    the whole space (the germ of S at x is x + that union)."""
    if not S.contains(x):
        raise ValueError("boundary test for a point outside the set")
    cones = [p.direction_cone(x) for p in S.pieces if p.contains(x)]
    full = HPolyhedron.full_space(S.dim)
    return union_subset(full, UnionPolyhedron(cones, S.dim)) is not True
