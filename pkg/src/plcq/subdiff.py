"""Clarke, Frechet and Clarke-singular subdifferentials of PL functions.

All three are horizontal slices of normal cones of the epigraph at
(x, f(x)): Clarke and Frechet subgradients pair with -1, singular ones
with 0.  At Lipschitz points two independent fast paths (convex hull of
cell gradients, intersection of gradient-shifted cell polars) must agree
exactly with the epigraph slices, and any disagreement raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Vec, dot, zeros
from .cones import clarke_normal_cone, frechet_normal_cone
from .plfunc import PLFunction
from .polyhedra import HPolyhedron, hull, support_function

CLARKE = "clarke"
FRECHET = "frechet"
CLARKE_SINGULAR = "clarke_singular"


class NotLipschitz(Exception):
    """Base point is not (provably) a local Lipschitz point of f."""


@dataclass
class SubdiffResult:
    set: HPolyhedron
    kind: str
    basepoint: Vec

    @property
    def is_empty(self) -> bool:
        return self.set.is_empty

    def bounded(self) -> bool:
        v = self.set.generators()
        return not v.rays and not v.lines

    def vertices(self) -> list[Vec]:
        return list(self.set.generators().vertices)


def _epi_point(f: PLFunction, x: Vec) -> Vec:
    v = f.value(x)
    if v == float("inf"):
        raise ValueError("base point outside dom f")
    return tuple(x) + (v,)


def clarke_subdiff(f: PLFunction, x: Vec) -> SubdiffResult:
    """{x* : (x*, -1) in N_c(epi f, (x, f(x)))}; at Lipschitz points this is
    conv{cell gradients} and both computations are required to coincide."""
    z = _epi_point(f, x)
    N = clarke_normal_cone(f.epigraph(), z).body
    D = N.slice_last(Fraction(-1)).canonical()
    if f.lipschitz_at(x):
        fast = hull([g for _, g, _ in f.local_cells(x).cells])
        if not fast.set_eq(D):
            raise RuntimeError("gradient hull disagrees with the epigraph slice")
    return SubdiffResult(D, CLARKE, tuple(x))


def clarke_singular_subdiff(f: PLFunction, x: Vec) -> SubdiffResult:
    """{x* : (x*, 0) in N_c(epi f, ...)}: a closed convex cone, {0} exactly
    at Lipschitz points."""
    z = _epi_point(f, x)
    N = clarke_normal_cone(f.epigraph(), z).body
    D = N.slice_last(Fraction(0)).canonical()
    assert D.is_cone() and D.contains(zeros(f.dim))
    return SubdiffResult(D, CLARKE_SINGULAR, tuple(x))


def frechet_subdiff(f: PLFunction, x: Vec) -> SubdiffResult:
    """{x* : (x*, -1) in N^(epi f, ...)}; possibly empty.  For Lipschitz PL f
    it equals the intersection over local cells of gradient + (cell cone)°."""
    z = _epi_point(f, x)
    N = frechet_normal_cone(f.epigraph(), z).body
    D = N.slice_last(Fraction(-1)).canonical()
    if f.lipschitz_at(x):
        cross = HPolyhedron.full_space(f.dim)
        for region, g, _ in f.local_cells(x).cells:
            v = region.generators()
            polar = HPolyhedron(f.dim,
                                rows=[(r, Fraction(0)) for r in v.rays],
                                eqs=[(l, Fraction(0)) for l in v.lines])
            cross = cross.intersect(polar.translate(g))
        if not cross.canonical().set_eq(D):
            raise RuntimeError("cell-polar intersection disagrees with the epigraph slice")
    return SubdiffResult(D, FRECHET, tuple(x))


def clarke_dirderiv(f: PLFunction, x: Vec, h: Vec) -> Fraction:
    """phi°(x; h) = max{x*.h : x* in Clarke subdifferential}; Lipschitz only."""
    if not f.lipschitz_at(x):
        raise NotLipschitz("Clarke directional derivative needs a Lipschitz point")
    val = support_function(clarke_subdiff(f, x).set, tuple(h))
    assert isinstance(val, Fraction)
    return val


def dirderiv(f: PLFunction, x: Vec, h: Vec):
    """One-sided directional derivative (exact; +INF off-domain directions)."""
    return f.dirderiv(x, h)


def is_regular(f: PLFunction, x: Vec) -> bool:
    """f'(x;.) == phi°(x;.)?  Both are linear on each local cell, so testing
    the cell generators decides it exactly."""
    if not f.lipschitz_at(x):
        raise NotLipschitz("regularity is defined at Lipschitz points")
    cells = f.local_cells(x).cells
    grads = [g for _, g, _ in cells]
    for region, g, _ in cells:
        v = region.generators()
        for gi in grads:
            d = tuple(a - b for a, b in zip(gi, g))
            if any(dot(d, r) > 0 for r in v.rays) or any(dot(d, l) != 0 for l in v.lines):
                return False
    return True
