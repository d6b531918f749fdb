"""Exact arithmetic in truncated numerical class rings.

Every scalar in this package is an arbitrary-precision rational
(``fractions.Fraction``); nothing on the computation path ever touches
floating point.  Two ring shapes cover all the varieties handled
downstream:

* :class:`RankOneRing` (dimension ``n``, degree ``d``): a class in
  codimension ``k`` is a rational multiple of ``H^k``, products truncate
  above codimension ``n``, and ``H^n`` integrates to ``d``.

* :class:`SurfaceLattice`: divisor classes are rational combinations of
  named generators (``H`` and ``K`` by convention) paired through a
  symmetric intersection matrix, while codimension-2 classes are stored
  as already-integrated rationals.

The module also houses the randomized splitting-principle oracle used to
validate every closed-form Chern-class construction: formal Chern roots
are drawn as exact rationals, the derived root multiset of a construction
is expanded, and the elementary symmetric functions of that multiset are
compared with the closed form.  A polynomial identity that fails anywhere
fails a random exact evaluation with overwhelming probability, so
disagreement is proof of an error and repeated agreement is very strong
evidence, with no tolerance questions.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]

#: Default seed for every randomized check; override per call or via the CLI.
DEFAULT_SEED = 7

#: Random Chern roots are p/q with p in [-100, 100] and q in {1, 2, 3, 5}.
ROOT_NUMERATOR_BOUND = 100
ROOT_DENOMINATORS = (1, 2, 3, 5)

#: Supported derived-bundle constructions for the splitting oracle.
CONSTRUCTIONS = ("tensor_square", "sym2", "sym3", "wedge2", "tensor_line")


class RingMismatchError(ValueError):
    """Two graded classes (or a class and a ring) live in different rings."""


class ParityError(ValueError):
    """r*(d-1) is odd, so no integral first Chern class exists."""


class SolverError(RuntimeError):
    """The linear system for the unknown Chern numbers is singular or inconsistent."""


class DataError(ValueError):
    """Numerical input is inconsistent with the constraints it claims to satisfy."""


def as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"expected an integer or Fraction, got {value!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q`` into an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(value: Scalar) -> str:
    """Inverse of :func:`parse_rational`: lowest terms, positive denominator."""
    return str(as_fraction(value))


def binom(n: int, k: int) -> int:
    """Binomial coefficient, extended to negative ``n`` by falling factorials.

    The extension matters only formally (coefficients multiplying classes
    that vanish anyway); for ``n >= 0`` this is ``math.comb``.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    num = 1
    for i in range(k):
        num *= n - i
    return num // math.factorial(k)


# ---------------------------------------------------------------------------
# rings


@dataclass(frozen=True)
class RankOneRing:
    """Truncated ring Q[H]/(H^(dim+1)) with a degree map H^dim -> h_degree."""

    dim: int
    h_degree: Fraction

    def __post_init__(self) -> None:
        if not 1 <= self.dim <= 3:
            raise ValueError("only dimensions 1..3 are modeled")
        object.__setattr__(self, "h_degree", as_fraction(self.h_degree))

    def __repr__(self) -> str:
        return f"RankOneRing(dim={self.dim}, H^{self.dim}={self.h_degree})"


@dataclass(frozen=True)
class SurfaceLattice:
    """Divisor lattice of a surface with a symmetric intersection matrix.

    ``basis`` names the generators, by convention ("H", "K") with H the
    hyperplane class and K the canonical class.  Codimension-2 classes are
    kept as already-integrated rationals, which is all any surface formula
    downstream consumes.
    """

    basis: tuple
    gram: tuple

    def __post_init__(self) -> None:
        basis = tuple(str(s) for s in self.basis)
        if not basis:
            raise ValueError("a surface lattice needs at least one generator")
        n = len(basis)
        rows = []
        for row in self.gram:
            row = tuple(as_fraction(v) for v in row)
            if len(row) != n:
                raise ValueError("intersection matrix shape does not match basis")
            rows.append(row)
        gram = tuple(rows)
        if len(gram) != n:
            raise ValueError("intersection matrix shape does not match basis")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("intersection matrix must be symmetric")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "gram", gram)

    @property
    def dim(self) -> int:
        return 2

    def pair(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        """Evaluate the intersection form on two divisor coefficient vectors."""
        total = Fraction(0)
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            for j, vj in enumerate(v):
                if vj != 0:
                    total += ui * self.gram[i][j] * vj
        return total

    def __repr__(self) -> str:
        return f"SurfaceLattice(basis={self.basis})"


Ring = Union[RankOneRing, SurfaceLattice]


def _zero_component(ring: Ring, codim: int):
    if isinstance(ring, SurfaceLattice) and codim == 1:
        return (Fraction(0),) * len(ring.basis)
    return Fraction(0)


def _coerce_component(ring: Ring, codim: int, value):
    if isinstance(ring, SurfaceLattice) and codim == 1:
        if isinstance(value, (int, Fraction)):
            # scalar shorthand: a multiple of the first generator (H)
            vec = [as_fraction(value)] + [Fraction(0)] * (len(ring.basis) - 1)
            return tuple(vec)
        vec = tuple(as_fraction(v) for v in value)
        if len(vec) != len(ring.basis):
            raise ValueError("divisor coefficient vector does not match lattice basis")
        return vec
    return as_fraction(value)


def _component_is_zero(value) -> bool:
    if isinstance(value, tuple):
        return all(v == 0 for v in value)
    return value == 0


def _scale_component(value, scalar: Fraction):
    if isinstance(value, tuple):
        return tuple(scalar * v for v in value)
    return scalar * value


def _add_components(a, b):
    if a is None:
        return b
    if isinstance(a, tuple):
        return tuple(x + y for x, y in zip(a, b))
    return a + b


@dataclass(frozen=True)
class GradedClass:
    """A (possibly mixed-degree) numerical class in a truncated ring.

    ``parts`` maps codimension to the component in that ring's shape; zero
    components are never stored, so structural equality is semantic
    equality.
    """

    ring: Ring
    parts: tuple

    @staticmethod
    def of(ring: Ring, components: Mapping[int, object]) -> "GradedClass":
        parts = []
        for codim in sorted(components):
            if codim < 0:
                raise ValueError("negative codimension")
            if codim > ring.dim:
                continue  # truncation
            value = _coerce_component(ring, codim, components[codim])
            if not _component_is_zero(value):
                parts.append((codim, value))
        return GradedClass(ring, tuple(parts))

    @staticmethod
    def zero(ring: Ring) -> "GradedClass":
        return GradedClass(ring, ())

    def component(self, codim: int):
        for k, value in self.parts:
            if k == codim:
                return value
        return _zero_component(self.ring, codim)

    def grades(self) -> tuple:
        return tuple(k for k, _ in self.parts)

    @property
    def is_zero(self) -> bool:
        return not self.parts

    def grade(self):
        """The unique grade of a homogeneous class, or None if zero/mixed."""
        grades = self.grades()
        return grades[0] if len(grades) == 1 else None

    # -- arithmetic ---------------------------------------------------

    def _check_ring(self, other: "GradedClass") -> None:
        if self.ring != other.ring:
            raise RingMismatchError("classes live in different rings")

    def __add__(self, other: "GradedClass") -> "GradedClass":
        if not isinstance(other, GradedClass):
            return NotImplemented
        self._check_ring(other)
        acc = {k: v for k, v in self.parts}
        for k, v in other.parts:
            acc[k] = _add_components(acc.get(k), v)
        return GradedClass.of(self.ring, acc)

    def __neg__(self) -> "GradedClass":
        return GradedClass(self.ring, tuple((k, _scale_component(v, Fraction(-1))) for k, v in self.parts))

    def __sub__(self, other: "GradedClass") -> "GradedClass":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GradedClass):
            self._check_ring(other)
            acc: dict = {}
            for i, a in self.parts:
                for j, b in other.parts:
                    k = i + j
                    if k > self.ring.dim:
                        continue
                    acc[k] = _add_components(acc.get(k), _cup(self.ring, i, j, a, b))
            return GradedClass.of(self.ring, acc)
        if isinstance(other, (int, Fraction)):
            q = as_fraction(other)
            if q == 0:
                return GradedClass.zero(self.ring)
            return GradedClass(self.ring, tuple((k, _scale_component(v, q)) for k, v in self.parts))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / as_fraction(other))
        return NotImplemented

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        chunks = []
        for k, v in self.parts:
            chunks.append(_format_component(self.ring, k, v))
        return " + ".join(chunks)


def _cup(ring: Ring, i: int, j: int, a, b):
    if isinstance(ring, RankOneRing):
        return a * b
    if i == 0:
        return _scale_component(b, a)
    if j == 0:
        return _scale_component(a, b)
    if i == 1 and j == 1:
        return ring.pair(a, b)
    raise AssertionError("unreachable: surface products above codim 2 are truncated")


def _format_component(ring: Ring, codim: int, value) -> str:
    if isinstance(ring, SurfaceLattice):
        if codim == 0:
            return f"{value}*1"
        if codim == 1:
            terms = [f"{c}*{s}" for c, s in zip(value, ring.basis) if c != 0]
            return "(" + " + ".join(terms) + ")"
        return f"{value}@2"
    if codim == 0:
        return f"{value}*1"
    if codim == 1:
        return f"{value}*H"
    return f"{value}*H^{codim}"


def unit(ring: Ring, value: Scalar = 1) -> GradedClass:
    """The codimension-0 class ``value * [X]``."""
    return GradedClass.of(ring, {0: value})


def divisor(ring: Ring, coeffs) -> GradedClass:
    """A codimension-1 class: a scalar (multiple of H) or a coefficient vector."""
    return GradedClass.of(ring, {1: coeffs})


def h_power(ring: RankOneRing, codim: int, value: Scalar = 1) -> GradedClass:
    """``value * H^codim`` in a rank-one ring."""
    if not isinstance(ring, RankOneRing):
        raise TypeError("h_power only makes sense in a rank-one ring")
    return GradedClass.of(ring, {codim: value})


def codim2(ring: Ring, value: Scalar) -> GradedClass:
    """A codimension-2 class (already integrated on surfaces)."""
    return GradedClass.of(ring, {2: value})


def ring_degree(ring: Ring, cls: GradedClass, codim: int) -> Fraction:
    """Intersection number of the codim-``codim`` part against the complementary H power.

    Rank-one rings send ``q*H^k`` to ``q*d``.  Surface lattices return the
    stored rational in codimension 2, the pairing with H in codimension 1,
    and ``q*(H.H)`` in codimension 0.
    """
    if cls.ring != ring:
        raise RingMismatchError("class does not belong to the given ring")
    if codim < 0 or codim > ring.dim:
        raise ValueError(f"codimension {codim} out of range for a {ring.dim}-dimensional ring")
    value = cls.component(codim)
    if isinstance(ring, RankOneRing):
        return value * ring.h_degree
    if codim == 2:
        return value
    if codim == 1:
        h = (Fraction(1),) + (Fraction(0),) * (len(ring.basis) - 1)
        return ring.pair(value, h)
    return value * ring.gram[0][0]


def integral(cls: GradedClass) -> Fraction:
    """Degree of the top-codimension part (full integration)."""
    return ring_degree(cls.ring, cls, cls.ring.dim)


def numerically_equal(a: GradedClass, b: GradedClass) -> bool:
    """Equality as numerical classes.

    Coefficient vectors on a surface lattice are representatives, not
    canonical forms: when the generators satisfy a relation the
    intersection matrix is degenerate and distinct vectors can pair
    identically against everything.  Divisor components are therefore
    compared through their pairings with every generator; all other
    components are canonical and compared directly.
    """
    if a.ring != b.ring:
        raise RingMismatchError("classes live in different rings")
    ring = a.ring
    for k, comp in (a - b).parts:
        if k == 1 and isinstance(ring, SurfaceLattice):
            n = len(ring.basis)
            for i in range(n):
                e = tuple(Fraction(1 if j == i else 0) for j in range(n))
                if ring.pair(comp, e) != 0:
                    return False
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# symmetric functions and the splitting-principle oracle


def elementary_symmetric(values: Sequence[Fraction], up_to: int) -> list:
    """e_0..e_{up_to} of the multiset ``values`` (exact)."""
    e = [Fraction(1)] + [Fraction(0)] * up_to
    for x in values:
        for k in range(min(up_to, len(values)), 0, -1):
            e[k] += e[k - 1] * x
    return e


def rand_rational(rng: random.Random) -> Fraction:
    return Fraction(
        rng.randint(-ROOT_NUMERATOR_BOUND, ROOT_NUMERATOR_BOUND),
        rng.choice(ROOT_DENOMINATORS),
    )


def _pairs_all(xs: Sequence[Fraction]) -> list:
    return [xi + xj for xi in xs for xj in xs]


def _pairs_leq(xs: Sequence[Fraction]) -> list:
    return [xs[i] + xs[j] for i in range(len(xs)) for j in range(i, len(xs))]


def _pairs_lt(xs: Sequence[Fraction]) -> list:
    return [xs[i] + xs[j] for i in range(len(xs)) for j in range(i + 1, len(xs))]


def _triples_leq(xs: Sequence[Fraction]) -> list:
    n = len(xs)
    return [
        xs[i] + xs[j] + xs[k]
        for i in range(n)
        for j in range(i, n)
        for k in range(j, n)
    ]


_DERIVED_ROOTS: Mapping[str, Callable] = {
    "tensor_square": _pairs_all,
    "sym2": _pairs_leq,
    "sym3": _triples_leq,
    "wedge2": _pairs_lt,
}


def splitting_oracle(
    construction: str,
    rank: int,
    closed_form: Callable,
    trials: int = 20,
    seed: int = DEFAULT_SEED,
) -> bool:
    """Check a closed-form Chern construction against formal root expansion.

    For each trial, ``rank`` random rational Chern roots are drawn (plus a
    line-bundle root for ``tensor_line``), the derived root multiset of the
    construction is formed, and the Chern classes it induces are compared
    exactly with ``closed_form`` applied to the input bundle.  Returns True
    iff every trial agrees in rank and in every modeled Chern class.

    ``closed_form`` maps a ChernVector to a ChernVector, except for
    ``tensor_line`` where it takes ``(bundle, divisor)`` (the twist rule).
    """
    from .chern import bundle_from_roots, ChernVector  # deferred: keeps the ring layer standalone

    if rank < 1:
        raise ValueError("rank must be at least 1")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if construction not in CONSTRUCTIONS:
        raise ValueError(f"unsupported construction {construction!r}")

    # sym3 has no closed third Chern class, so it is checked in a
    # 2-dimensional ring where degree 3 truncates away.
    ring = RankOneRing(2 if construction == "sym3" else 3, Fraction(1))
    rng = random.Random(seed)
    for _ in range(trials):
        roots = [rand_rational(rng) for _ in range(rank)]
        bundle = bundle_from_roots(ring, roots)
        if construction == "tensor_line":
            t = rand_rational(rng)
            derived = [x + t for x in roots]
            actual = closed_form(bundle, divisor(ring, t))
        else:
            derived = _DERIVED_ROOTS[construction](roots)
            actual = closed_form(bundle)
        expected = bundle_from_roots(ring, derived)
        if not isinstance(actual, ChernVector) or actual != expected:
            return False
    return True
