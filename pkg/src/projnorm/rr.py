"""Euler characteristics via Riemann-Roch and the Ulrich Chern-class solver.

Variety models carry exactly the numerical data the formulas consume:

* :class:`Curve`: genus and polarization degree.
* :class:`Surface`: an (H, K) intersection lattice, chi(O_S), the
  irregularity q and geometric genus p_g, with the hyperplane and
  canonical classes as lattice vectors.
* :class:`HypersurfaceP3` / :class:`HypersurfaceP4`: smooth degree-d
  hypersurfaces with rank-one class group; canonical class, chi(O) and
  tangent Chern classes are derived from d.

An Ulrich bundle for a degree-d polarization has chi of every twist
E(-p), 1 <= p <= dim, equal to zero; with the first Chern class pinned to
(r/2)(K + (n+1)H) on rank-one class groups, those vanishings form a
linear system that determines the remaining Chern numbers.
:func:`solve_ulrich_chern` solves that system exactly and is
cross-checked downstream against independent closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chern import ChernVector, chern_character, twist
from .exactalg import (
    GradedClass,
    ParityError,
    RankOneRing,
    RingMismatchError,
    Scalar,
    SolverError,
    SurfaceLattice,
    as_fraction,
    divisor,
    ring_degree,
    unit,
)


@dataclass(frozen=True)
class Curve:
    """Smooth projective curve with a globally generated ample degree-d polarization."""

    genus: int
    degree: int

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        if self.degree < 1:
            raise ValueError("polarization degree must be positive")

    @property
    def ring(self) -> RankOneRing:
        return RankOneRing(1, Fraction(self.degree))

    @property
    def canonical(self) -> GradedClass:
        # K_C has degree 2g-2; expressed in H-units on the degree map.
        return divisor(self.ring, Fraction(2 * self.genus - 2, self.degree))


@dataclass(frozen=True)
class Surface:
    """Numerical model of an embedded surface: lattice, chi(O), q, p_g."""

    lattice: SurfaceLattice
    chi_o: Fraction
    irregularity: int
    geometric_genus: int
    canonical: GradedClass

    def __post_init__(self) -> None:
        object.__setattr__(self, "chi_o", as_fraction(self.chi_o))
        if self.canonical.ring != self.lattice:
            raise RingMismatchError("canonical class must live in the surface lattice")

    @property
    def ring(self) -> SurfaceLattice:
        return self.lattice

    @property
    def hyperplane(self) -> GradedClass:
        coeffs = (Fraction(1),) + (Fraction(0),) * (len(self.lattice.basis) - 1)
        return divisor(self.lattice, coeffs)

    @property
    def degree(self) -> Fraction:
        return self.lattice.gram[0][0]


def surface_model(
    h2: Scalar,
    hk: Scalar,
    k2: Scalar,
    chi_o: Scalar,
    irregularity: int = 0,
    geometric_genus: int = 0,
) -> Surface:
    """Surface from its intersection numbers H^2, H.K, K^2 and chi(O_S)."""
    lattice = SurfaceLattice(("H", "K"), ((h2, hk), (hk, k2)))
    canonical = divisor(lattice, (0, 1))
    return Surface(lattice, as_fraction(chi_o), irregularity, geometric_genus, canonical)


@dataclass(frozen=True)
class HypersurfaceP3:
    """Smooth degree-d surface in P^3 with rank-one class group."""

    degree: int

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError("degree must be positive")

    @property
    def chi_o(self) -> Fraction:
        d = self.degree
        return Fraction(d * (d * d - 6 * d + 11), 6)

    def surface(self) -> Surface:
        # K = (d-4)H, so H.K = d(d-4) and K^2 = d(d-4)^2 on the H-lattice.
        d = self.degree
        return surface_model(
            d,
            d * (d - 4),
            d * (d - 4) ** 2,
            self.chi_o,
            irregularity=0,
            geometric_genus=int(self.chi_o) - 1,
        )


@dataclass(frozen=True)
class HypersurfaceP4:
    """Smooth degree-d threefold in P^4; class group generated by H."""

    degree: int

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError("degree must be positive")

    @property
    def ring(self) -> RankOneRing:
        return RankOneRing(3, Fraction(self.degree))

    @property
    def canonical(self) -> GradedClass:
        return divisor(self.ring, self.degree - 5)

    def tangent_chern(self) -> ChernVector:
        """c(T_X) from (1+H)^5 / (1+dH), truncated in degree 3."""
        d = self.degree
        return ChernVector.of(
            self.ring,
            3,
            5 - d,
            d * d - 5 * d + 10,
            -d**3 + 5 * d * d - 10 * d + 10,
        )


VarietyModel = (Curve, Surface, HypersurfaceP3, HypersurfaceP4)


def as_surface(V) -> Surface:
    """Coerce a surface-like model (Surface or HypersurfaceP3) to a Surface."""
    if isinstance(V, HypersurfaceP3):
        return V.surface()
    if isinstance(V, Surface):
        return V
    raise TypeError(f"expected a surface model, got {type(V).__name__}")


# ---------------------------------------------------------------------------
# Euler characteristics


def chi_curve(genus: int, E: ChernVector) -> Fraction:
    """chi(C, E) = deg c1(E) + r (1 - g)."""
    if E.ring.dim != 1:
        raise RingMismatchError("chi_curve needs a 1-dimensional ring")
    return ring_degree(E.ring, E.c1, 1) + E.rank * (1 - genus)


def chi_surface(V, E: ChernVector) -> Fraction:
    """chi(S, E) = r chi(O_S) + (c1^2 - c1.K)/2 - c2."""
    S = as_surface(V)
    if E.ring != S.lattice:
        raise RingMismatchError("bundle does not live on the given surface")
    c1sq = ring_degree(S.lattice, E.c1 * E.c1, 2)
    c1k = ring_degree(S.lattice, E.c1 * S.canonical, 2)
    c2 = ring_degree(S.lattice, E.c2, 2)
    return E.rank * S.chi_o + (c1sq - c1k) / 2 - c2


def chi_threefold_hypersurface(degree: int, E: ChernVector) -> Fraction:
    """chi(X, E) on a degree-d threefold in P^4 by Hirzebruch-Riemann-Roch.

    Integrates the degree-3 part of ch(E) td(X) with
    td = 1 + c1(T)/2 + (c1(T)^2 + c2(T))/12 + c1(T) c2(T)/24.
    """
    X = HypersurfaceP4(degree)
    ring = X.ring
    if E.ring != ring:
        raise RingMismatchError("bundle does not live on the given threefold")
    T = X.tangent_chern()
    td = (
        unit(ring),
        Fraction(1, 2) * T.c1,
        Fraction(1, 12) * (T.c1 * T.c1 + T.c2),
        Fraction(1, 24) * (T.c1 * T.c2),
    )
    ch = chern_character(E)
    total = GradedClass.zero(ring)
    for i in range(4):
        total = total + ch[i] * td[3 - i]
    return ring_degree(ring, total, 3)


# ---------------------------------------------------------------------------
# Ulrich Chern data


def require_even(r: int, d: int) -> None:
    if (r * (d - 1)) % 2 != 0:
        raise ParityError(f"r*(d-1) must be even (got r={r}, d={d})")


def ulrich_c1(V, rank: int) -> GradedClass:
    """First Chern class (r/2)(K + (n+1)H) on a rank-one class group."""
    if isinstance(V, HypersurfaceP3):
        require_even(rank, V.degree)
        S = V.surface()
        return divisor(S.lattice, Fraction(rank * (V.degree - 1), 2))
    if isinstance(V, HypersurfaceP4):
        require_even(rank, V.degree)
        return divisor(V.ring, Fraction(rank * (V.degree - 1), 2))
    raise TypeError("the first Chern class is pinned only on hypersurface models")


def solve_ulrich_chern(V, rank: int) -> ChernVector:
    """Recover the Chern data of a rank-r Ulrich bundle on a hypersurface.

    Fixes c1 = (r/2)(K + (n+1)H) and solves the exact linear system
    chi(E(-p)) = 0 for p = 1..n for the remaining Chern numbers: c2 on
    surfaces, (c2, c3) on threefolds.  The system is overdetermined; any
    inconsistency or a singular principal system raises SolverError
    instead of guessing.

    For general surface models the data must be supplied by the caller
    (only c1.H is pinned there), so this raises TypeError.
    """
    if rank < 1:
        raise ValueError("rank must be at least 1")
    if isinstance(V, HypersurfaceP3):
        return _solve_surface(V, rank)
    if isinstance(V, HypersurfaceP4):
        return _solve_threefold(V, rank)
    raise TypeError("Ulrich Chern data can be solved only on hypersurface models")


def _solve_surface(V: HypersurfaceP3, rank: int) -> ChernVector:
    S = V.surface()
    c1 = ulrich_c1(V, rank)
    h = S.hyperplane

    def chi_twist(c2_value: Fraction, p: int) -> Fraction:
        E = ChernVector.of(S.lattice, rank, c1, c2_value)
        return chi_surface(S, twist(E, -p * h))

    solution = None
    for p in (1, 2):
        base = chi_twist(Fraction(0), p)
        slope = chi_twist(Fraction(1), p) - base
        if slope == 0:
            raise SolverError("degenerate vanishing constraint (c2 does not appear)")
        value = -base / slope
        if solution is None:
            solution = value
        elif solution != value:
            raise SolverError("inconsistent twist constraints for c2")
    return ChernVector.of(S.lattice, rank, c1, solution)


def _solve_threefold(V: HypersurfaceP4, rank: int) -> ChernVector:
    ring = V.ring
    c1 = ulrich_c1(V, rank)
    h = divisor(ring, 1)

    def chi_twist(x: Fraction, y: Fraction, p: int) -> Fraction:
        E = ChernVector.of(ring, rank, c1, x, y)
        return chi_threefold_hypersurface(V.degree, twist(E, -p * h))

    zero = Fraction(0)
    one = Fraction(1)
    rows = []
    for p in (1, 2, 3):
        const = chi_twist(zero, zero, p)
        a = chi_twist(one, zero, p) - const
        b = chi_twist(zero, one, p) - const
        rows.append((a, b, const))
    (a1, b1, c1_), (a2, b2, c2_), (a3, b3, c3_) = rows
    det = a1 * b2 - a2 * b1
    if det == 0:
        raise SolverError("singular linear system for (c2, c3)")
    x = (-c1_ * b2 + c2_ * b1) / det
    y = (-a1 * c2_ + a2 * c1_) / det
    if a3 * x + b3 * y + c3_ != 0:
        raise SolverError("inconsistent twist constraints for (c2, c3)")
    return ChernVector.of(ring, rank, c1, x, y)
