"""Riemann-Roch values and the Ulrich Chern solver against independent closed forms."""

from fractions import Fraction

import pytest

from projnorm.chern import ChernVector, twist
from projnorm.exactalg import ParityError, binom, ring_degree
from projnorm.rr import (
    Curve,
    HypersurfaceP3,
    HypersurfaceP4,
    chi_curve,
    chi_surface,
    chi_threefold_hypersurface,
    solve_ulrich_chern,
    surface_model,
)
from projnorm.ulrich import casnati_c2, ulrich_c3_p4_hypersurface


def test_chi_curve_examples():
    C = Curve(0, 3)
    triv = ChernVector.of(C.ring, 1)
    assert chi_curve(0, triv) == 1
    # Ulrich line bundle: degree d+g-1 gives chi = d
    C = Curve(4, 6)
    L = ChernVector.of(C.ring, 1, Fraction(6 + 4 - 1, 6))
    assert chi_curve(4, L) == 6
    # rank 2 at the Ulrich slope gives chi = 2d
    E = ChernVector.of(C.ring, 2, Fraction(2 * (6 + 4 - 1), 6))
    assert chi_curve(4, E) == 12


def test_chi_surface_structure_sheaf():
    V = HypersurfaceP3(4)
    S = V.surface()
    assert S.chi_o == 2
    assert chi_surface(S, ChernVector.of(S.lattice, 1)) == 2
    # chi(O) equals the model value on an arbitrary lattice too
    W = surface_model(5, 1, -2, Fraction(7, 3))
    assert chi_surface(W, ChernVector.of(W.lattice, 1)) == Fraction(7, 3)


def test_chi_surface_ulrich_twist_vanishes():
    V = HypersurfaceP3(4)
    S = V.surface()
    E = solve_ulrich_chern(V, 2)
    for p in (1, 2):
        assert chi_surface(S, twist(E, -p * S.hyperplane)) == 0


def test_chi_threefold_structure_sheaf():
    # independent oracle: chi(O_X) = 1 - h^3(O_X) = 1 - binom(d-1, 4)
    for d in range(1, 11):
        V = HypersurfaceP4(d)
        triv = ChernVector.of(V.ring, 1)
        assert chi_threefold_hypersurface(d, triv) == 1 - binom(d - 1, 4)


def test_chi_threefold_power_values():
    from projnorm.chern import sym2, tensor_square

    V = HypersurfaceP4(4)
    E = solve_ulrich_chern(V, 2)
    assert chi_threefold_hypersurface(4, tensor_square(E)) == 70
    W = HypersurfaceP4(5)
    F = solve_ulrich_chern(W, 4)
    assert chi_threefold_hypersurface(5, sym2(F)) == 220


def test_tangent_classes():
    V = HypersurfaceP4(1)  # a hyperplane: 3-space itself
    T = V.tangent_chern()
    assert ring_degree(V.ring, T.c1, 1) == 4
    assert ring_degree(V.ring, T.c2, 2) == 6
    assert ring_degree(V.ring, T.c3, 3) == 4


def test_hypersurface_p3_lattice():
    S = HypersurfaceP3(5).surface()
    g = S.lattice.gram
    assert g[0][0] == 5 and g[0][1] == 5 and g[1][1] == 5
    assert S.chi_o == 5


def test_solver_matches_casnati_on_surfaces():
    for d in range(2, 11):
        V = HypersurfaceP3(d)
        S = V.surface()
        for r in range(1, 7):
            if (r * (d - 1)) % 2:
                continue
            E = solve_ulrich_chern(V, r)
            c1sq = ring_degree(S.lattice, E.c1 * E.c1, 2)
            c1k = ring_degree(S.lattice, E.c1 * S.canonical, 2)
            assert ring_degree(S.lattice, E.c2, 2) == casnati_c2(c1sq, c1k, r, d, S.chi_o)
            assert chi_surface(S, E) == r * d


def test_solver_matches_c3_closed_form_on_threefolds():
    for d in range(2, 9):
        V = HypersurfaceP4(d)
        for r in range(1, 7):
            if (r * (d - 1)) % 2:
                continue
            E = solve_ulrich_chern(V, r)
            assert ring_degree(V.ring, E.c3, 3) == ulrich_c3_p4_hypersurface(d, r)
            assert chi_threefold_hypersurface(d, E) == r * d


def test_solver_specific_values():
    E = solve_ulrich_chern(HypersurfaceP3(4), 2)
    assert ring_degree(E.ring, E.c2, 2) == 14
    F = solve_ulrich_chern(HypersurfaceP4(3), 3)
    assert ring_degree(F.ring, F.c3, 3) == 6
    # the (r-2) factor forces c3 = 0 in rank 2, every degree
    for d in range(2, 8):
        if (2 * (d - 1)) % 2 == 0:
            G = solve_ulrich_chern(HypersurfaceP4(d), 2)
            assert G.c3.is_zero


def test_solver_parity_errors():
    with pytest.raises(ParityError):
        solve_ulrich_chern(HypersurfaceP3(4), 3)
    with pytest.raises(ParityError):
        solve_ulrich_chern(HypersurfaceP4(6), 5)


def test_solver_rejects_general_surfaces():
    S = surface_model(4, 0, 0, 2)
    with pytest.raises(TypeError):
        solve_ulrich_chern(S, 2)


def test_ring_mismatch_guards():
    V = HypersurfaceP4(3)
    W = HypersurfaceP4(4)
    E = ChernVector.of(V.ring, 1)
    with pytest.raises(Exception):
        chi_threefold_hypersurface(4, E)
    S = HypersurfaceP3(3).surface()
    with pytest.raises(Exception):
        chi_surface(S, E)


def test_tangent_classes_from_ring_product():
    # independent derivation: c(T) = (1+H)^5 / (1+dH), expanded in the ring
    from projnorm.exactalg import divisor, unit

    for d in range(1, 9):
        V = HypersurfaceP4(d)
        ring = V.ring
        h = divisor(ring, 1)
        ambient = unit(ring) + 5 * h + 10 * (h * h) + 10 * (h * h * h)
        inverse = unit(ring) - d * h + (d * d) * (h * h) - (d**3) * (h * h * h)
        T = V.tangent_chern()
        assert ambient * inverse == unit(ring) + T.c1 + T.c2 + T.c3


def test_surface_chi_structure_sheaf_from_monomial_count():
    # independent count: q = 0 and p_g = h^0(O(d-4)) = binom(d-1, 3)
    for d in range(1, 11):
        V = HypersurfaceP3(d)
        assert V.chi_o == 1 + binom(d - 1, 3)
        assert V.surface().geometric_genus == binom(d - 1, 3)


def test_model_validation_errors():
    from projnorm.rr import as_surface, ulrich_c1

    with pytest.raises(ValueError):
        Curve(-1, 3)
    with pytest.raises(ValueError):
        Curve(2, 0)
    with pytest.raises(ValueError):
        HypersurfaceP3(0)
    with pytest.raises(ValueError):
        HypersurfaceP4(0)
    with pytest.raises(TypeError):
        as_surface(Curve(1, 2))
    with pytest.raises(TypeError):
        ulrich_c1(Curve(1, 2), 2)
    with pytest.raises(ValueError):
        solve_ulrich_chern(HypersurfaceP3(3), 0)
    C = Curve(2, 3)
    E = ChernVector.of(HypersurfaceP4(2).ring, 1)
    from projnorm.exactalg import RingMismatchError

    with pytest.raises(RingMismatchError):
        chi_curve(2, E)
