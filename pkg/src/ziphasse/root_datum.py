"""Based root data with a Frobenius structure over a finite field.

A root datum here is a pair of lattices X* = X_* = Z^rank with the standard
dot pairing, a list of simple roots (vectors in X*) and simple coroots
(vectors in X_*), and a record of the Dynkin components.  The Frobenius
structure carries the size q of the base field together with the finite-order
lattice automorphism tau through which the arithmetic Frobenius acts on
characters; composing a character with the q-power isogeny corresponds to
q * tau on coordinates.

Builders cover the groups used downstream: general linear groups, similitude
symplectic groups, quasi-split unitary groups, split simple groups in both
isogeny types, finite products, and Weil restrictions of split groups along a
degree-r extension.

Everything constructed here is immutable and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact_linear import (
    IntMatrix,
    SingularMatrixError,
    determinant,
    kernel_basis,
    rational_inverse,
    smith_normal_form,
    solve_rational,
)


class UnsupportedSeriesError(ValueError):
    """Unknown builder or Dynkin series."""


class InvalidRankError(ValueError):
    """Rank out of range for the requested series."""


class InvalidQError(ValueError):
    """q must be a prime power >= 2."""


class SingularCartanError(ValueError):
    """Fundamental-weight system is singular (cannot happen for finite type)."""


CONTAINS_B = "contains_B"
CONTAINS_BMINUS = "contains_Bminus"


@dataclass(frozen=True)
class Component:
    """One connected Dynkin component: series letter plus its node indices."""

    series: str
    nodes: tuple


@dataclass(frozen=True)
class RootDatum:
    rank: int
    simple_roots: IntMatrix
    simple_coroots: IntMatrix
    components: tuple
    builder_tag: tuple

    @property
    def num_nodes(self) -> int:
        return self.simple_roots.rows

    def root(self, i: int) -> tuple:
        return self.simple_roots.row(i)

    def coroot(self, i: int) -> tuple:
        return self.simple_coroots.row(i)

    def cartan_matrix(self) -> IntMatrix:
        """Pairing matrix <alpha_i^vee, alpha_j>."""
        k = self.num_nodes
        return IntMatrix(k, k, [
            _dot(self.coroot(i), self.root(j)) for i in range(k) for j in range(k)
        ])

    def coroot_pairings(self, vec: Sequence) -> tuple:
        """<alpha_i^vee, vec> for every node i; vec may be rational."""
        return tuple(_dot(self.coroot(i), vec) for i in range(self.num_nodes))

    def root_pairings(self, covec: Sequence) -> tuple:
        """<covec, alpha_i> for every node i."""
        return tuple(_dot(covec, self.root(i)) for i in range(self.num_nodes))


@dataclass(frozen=True)
class FrobeniusStructure:
    q: int
    tau: IntMatrix
    tau_dual: IntMatrix
    root_perm: tuple
    order: int


@dataclass(frozen=True)
class ParabolicType:
    """Parabolic given by the simple roots J of its Levi plus the Borel it contains.

    J always indexes the simple roots of the standard Levi containing the
    torus; the orientation flag records whether the parabolic contains the
    upper or the lower Borel, which flips the sign convention in ampleness
    tests but not the character lattice.
    """

    J: frozenset
    orientation: str = CONTAINS_BMINUS

    def __post_init__(self):
        if self.orientation not in (CONTAINS_B, CONTAINS_BMINUS):
            raise ValueError("bad orientation %r" % (self.orientation,))
        object.__setattr__(self, "J", frozenset(self.J))


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = None
    m = q
    for d in range(2, q + 1):
        if d * d > m:
            p = m if p is None else p
            break
        if m % d == 0:
            p = d
            break
    while q % p == 0:
        q //= p
    return q == 1


def _validate_q(q):
    if not isinstance(q, int) or isinstance(q, bool) or not is_prime_power(q):
        raise InvalidQError("q must be a prime power >= 2, got %r" % (q,))


# ---------------------------------------------------------------------------
# builders


def _make_frobenius(rd: RootDatum, q: int, tau: IntMatrix) -> FrobeniusStructure:
    _validate_q(q)
    if abs(determinant(tau)) != 1:
        raise ValueError("tau must be unimodular")
    dual_rat = rational_inverse(tau.transpose())
    if any(x.denominator != 1 for x in dual_rat.entries):
        raise ValueError("tau dual is not integral")
    tau_dual = IntMatrix(dual_rat.rows, dual_rat.cols,
                         [x.numerator for x in dual_rat.entries])

    roots = {rd.root(i): i for i in range(rd.num_nodes)}
    perm = []
    for i in range(rd.num_nodes):
        image = tau.apply(rd.root(i))
        if image not in roots:
            raise ValueError("tau does not permute the simple roots")
        perm.append(roots[image])
    perm = tuple(perm)
    for i in range(rd.num_nodes):
        if tau_dual.apply(rd.coroot(i)) != rd.coroot(perm[i]):
            raise ValueError("tau dual does not follow the root permutation")

    power = tau
    ident = IntMatrix.identity(rd.rank)
    order = 1
    while power != ident:
        power = power * tau
        order += 1
        if order > 10_000:
            raise ValueError("tau does not have small finite order")
    return FrobeniusStructure(q=q, tau=tau, tau_dual=tau_dual,
                              root_perm=perm, order=order)


def gl(n: int, q: int):
    """GL_n with the standard diagonal torus: X* = Z^n, alpha_i = e_i - e_{i+1}."""
    if n < 1:
        raise InvalidRankError("gl needs n >= 1")
    roots = [_unit(n, i, 1, i + 1, -1) for i in range(n - 1)]
    rd = RootDatum(
        rank=n,
        simple_roots=_rows_or_empty(roots, n),
        simple_coroots=_rows_or_empty(roots, n),
        components=(Component("A", tuple(range(n - 1))),) if n > 1 else (),
        builder_tag=("gl", n),
    )
    return rd, _make_frobenius(rd, q, IntMatrix.identity(n))


def unitary(n: int, q: int):
    """Quasi-split unitary group U(n) splitting over a quadratic extension.

    Same root datum as GL_n; the Frobenius acts on characters through
    tau(e_i) = -e_{n+1-i}, which permutes the simple roots by the diagram
    flip.
    """
    if n < 1:
        raise InvalidRankError("unitary needs n >= 1")
    rd_split, _ = gl(n, q)
    rd = RootDatum(rank=n, simple_roots=rd_split.simple_roots,
                   simple_coroots=rd_split.simple_coroots,
                   components=rd_split.components,
                   builder_tag=("unitary", n))
    tau = IntMatrix(n, n, [-1 if i + j == n - 1 else 0
                           for i in range(n) for j in range(n)])
    return rd, _make_frobenius(rd, q, tau)


def gsp(dim: int, q: int):
    """Similitude symplectic group GSp_{2g} (dim = 2g), rank g+1.

    Coordinates: e_0..e_{g-1} are the torus weights, e_g is the similitude
    multiplier.  The long simple root is 2e_{g-1} - e_g.
    """
    if dim < 2 or dim % 2:
        raise InvalidRankError("gsp needs an even dim >= 2")
    g = dim // 2
    n = g + 1
    roots = [_unit(n, i, 1, i + 1, -1) for i in range(g - 1)]
    roots.append(_unit(n, g - 1, 2, g, -1))
    coroots = [_unit(n, i, 1, i + 1, -1) for i in range(g - 1)]
    coroots.append(_unit(n, g - 1, 1))
    rd = RootDatum(
        rank=n,
        simple_roots=IntMatrix.from_rows(roots),
        simple_coroots=IntMatrix.from_rows(coroots),
        components=(Component("C" if g >= 2 else "A", tuple(range(g))),),
        builder_tag=("gsp", dim),
    )
    return rd, _make_frobenius(rd, q, IntMatrix.identity(n))


_ISOGENIES = ("simply_connected", "adjoint")


def simple_group(series: str, rank: int, q: int, isogeny: str = "simply_connected"):
    """Split simple group of the given Dynkin series and isogeny type.

    simply_connected: X* is the weight lattice (roots = columns of the Cartan
    matrix, coroots = standard basis).  adjoint: X* is the root lattice
    (roots = standard basis, coroots = rows of the Cartan matrix).
    """
    if isogeny not in _ISOGENIES:
        raise UnsupportedSeriesError("isogeny must be one of %s" % (_ISOGENIES,))
    cartan = _cartan_matrix(series, rank)
    if isogeny == "simply_connected":
        roots = cartan.transpose()
        coroots = IntMatrix.identity(rank)
    else:
        roots = IntMatrix.identity(rank)
        coroots = cartan
    rd = RootDatum(
        rank=rank,
        simple_roots=roots,
        simple_coroots=coroots,
        components=(Component(series, tuple(range(rank))),),
        builder_tag=("simple", series, rank, isogeny),
    )
    return rd, _make_frobenius(rd, q, IntMatrix.identity(rank))


def product_group(factor_specs: Sequence, q: int):
    """Direct product of builder specs sharing one q."""
    built = [build_group(s, q) for s in factor_specs]
    rds = [rd for rd, _ in built]
    rank = sum(rd.rank for rd in rds)
    roots, coroots, comps = [], [], []
    tau_rows = [[0] * rank for _ in range(rank)]
    coord_off = 0
    node_off = 0
    for rd, frob in built:
        for i in range(rd.num_nodes):
            roots.append(_embed(rd.root(i), coord_off, rank))
            coroots.append(_embed(rd.coroot(i), coord_off, rank))
        for comp in rd.components:
            comps.append(Component(comp.series,
                                   tuple(node_off + i for i in comp.nodes)))
        for i in range(rd.rank):
            for j in range(rd.rank):
                tau_rows[coord_off + i][coord_off + j] = frob.tau.at(i, j)
        coord_off += rd.rank
        node_off += rd.num_nodes
    rd = RootDatum(
        rank=rank,
        simple_roots=_rows_or_empty(roots, rank),
        simple_coroots=_rows_or_empty(coroots, rank),
        components=tuple(comps),
        builder_tag=("product", tuple(r.builder_tag for r in rds)),
    )
    return rd, _make_frobenius(rd, q, IntMatrix.from_rows(tau_rows))


def weil_restriction(copies: int, inner_spec, q: int):
    """Weil restriction of a split group along a degree-``copies`` extension.

    The lattice is ``copies`` blocks of the inner lattice and tau cyclically
    shifts block b to block b-1, so that composing a block-b character with
    Frobenius lands in block b-1 scaled by q.
    """
    if copies < 1:
        raise InvalidRankError("weil_restriction needs copies >= 1")
    inner_rd, inner_frob = build_group(inner_spec, q)
    if inner_frob.tau != IntMatrix.identity(inner_rd.rank):
        raise UnsupportedSeriesError("weil_restriction needs a split inner group")
    m = inner_rd.rank
    rank = copies * m
    roots, coroots, comps = [], [], []
    for b in range(copies):
        for i in range(inner_rd.num_nodes):
            roots.append(_embed(inner_rd.root(i), b * m, rank))
            coroots.append(_embed(inner_rd.coroot(i), b * m, rank))
        for comp in inner_rd.components:
            comps.append(Component(
                comp.series,
                tuple(b * inner_rd.num_nodes + i for i in comp.nodes)))
    tau_rows = [[0] * rank for _ in range(rank)]
    for b in range(copies):
        dest = (b - 1) % copies
        for c in range(m):
            tau_rows[dest * m + c][b * m + c] = 1
    rd = RootDatum(
        rank=rank,
        simple_roots=_rows_or_empty(roots, rank),
        simple_coroots=_rows_or_empty(coroots, rank),
        components=tuple(comps),
        builder_tag=("weil_restriction", copies, inner_rd.builder_tag),
    )
    return rd, _make_frobenius(rd, q, IntMatrix.from_rows(tau_rows))


_BUILDERS = ("gl", "unitary", "gsp", "simple", "product", "weil_restriction")


def build_group(spec: Mapping, q: int):
    """Build (RootDatum, FrobeniusStructure) from a builder description.

    The description mirrors the CLI input format, e.g.::

        {"builder": "unitary", "n": 3}
        {"builder": "simple", "series": "B", "rank": 3,
         "isogeny": "simply_connected"}
        {"builder": "weil_restriction", "copies": 3,
         "inner": {"builder": "gl", "n": 2}}
    """
    try:
        kind = spec["builder"]
    except (TypeError, KeyError):
        raise UnsupportedSeriesError("builder description needs a 'builder' key")
    if kind == "gl":
        return gl(spec["n"], q)
    if kind == "unitary":
        return unitary(spec["n"], q)
    if kind == "gsp":
        return gsp(spec["dim"], q)
    if kind == "simple":
        return simple_group(spec["series"], spec["rank"], q,
                            spec.get("isogeny", "simply_connected"))
    if kind == "product":
        return product_group(spec["factors"], q)
    if kind == "weil_restriction":
        return weil_restriction(spec["copies"], spec["inner"], q)
    raise UnsupportedSeriesError("unknown builder %r" % (kind,))


def _unit(n, *pairs_flat):
    v = [0] * n
    it = iter(pairs_flat)
    for idx in it:
        v[idx] = next(it)
    return tuple(v)


def _embed(vec, offset, rank):
    out = [0] * rank
    for i, x in enumerate(vec):
        out[offset + i] = x
    return tuple(out)


def _rows_or_empty(rows, rank):
    if not rows:
        return IntMatrix(0, rank, ())
    return IntMatrix.from_rows(rows)


def _cartan_matrix(series: str, rank: int) -> IntMatrix:
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise InvalidRankError("rank must be an integer")
    bounds = {"A": 1, "B": 2, "C": 2, "D": 3, "E": 6, "F": 4, "G": 2}
    if series not in bounds:
        raise UnsupportedSeriesError("unknown series %r" % (series,))
    if rank < bounds[series] or (series == "E" and rank > 8) \
            or (series == "F" and rank != 4) or (series == "G" and rank != 2):
        raise InvalidRankError("series %s does not have rank %d" % (series, rank))
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def bond(i, j):
        c[i][j] = -1
        c[j][i] = -1

    if series in ("A", "B", "C"):
        for i in range(rank - 1):
            bond(i, i + 1)
        if series == "B":
            c[rank - 1][rank - 2] = -2  # last root short
        elif series == "C":
            c[rank - 2][rank - 1] = -2  # last root long
    elif series == "D":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 3, rank - 1)
    elif series == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][:rank - 1]
        for a, b in zip(chain, chain[1:]):
            bond(a, b)
        bond(1, 3)
    elif series == "F":
        for i in range(3):
            bond(i, i + 1)
        c[2][1] = -2  # nodes 0,1 long; 2,3 short
    elif series == "G":
        bond(0, 1)
        c[0][1] = -3  # node 0 short
    return IntMatrix.from_rows(c)


# ---------------------------------------------------------------------------
# root enumeration


@dataclass(frozen=True)
class Root:
    vector: tuple
    coeffs: tuple


@dataclass(frozen=True)
class PositiveRoots:
    roots: tuple
    highest: tuple  # one Root per component, in component order


def positive_roots(rd: RootDatum) -> PositiveRoots:
    """All positive roots by reflection closure of the simple roots.

    Each root carries its expansion in the simple roots; the highest root of
    every component (the unique root of maximal height there) is returned
    alongside.
    """
    k = rd.num_nodes
    cartan = rd.cartan_matrix()
    seen = set()
    frontier = []
    for i in range(k):
        c = tuple(1 if j == i else 0 for j in range(k))
        seen.add(c)
        frontier.append(c)
    while frontier:
        nxt = []
        for c in frontier:
            for i in range(k):
                pairing = sum(cartan.at(i, j) * c[j] for j in range(k))
                ci = c[i] - pairing
                if ci == c[i]:
                    continue
                c2 = c[:i] + (ci,) + c[i + 1:]
                if min(c2) < 0 or c2 in seen:
                    continue
                seen.add(c2)
                nxt.append(c2)
        frontier = nxt
        if len(seen) > 100_000:
            raise ValueError("root system does not look finite")

    ordered = sorted(seen, key=lambda c: (sum(c), c))
    roots = []
    for c in ordered:
        vec = tuple(sum(c[i] * rd.root(i)[a] for i in range(k))
                    for a in range(rd.rank))
        roots.append(Root(vector=vec, coeffs=c))

    highest = []
    for comp in rd.components:
        nodes = set(comp.nodes)
        comp_roots = [r for r in roots
                      if set(i for i, x in enumerate(r.coeffs) if x) <= nodes]
        top = max(sum(r.coeffs) for r in comp_roots)
        tops = [r for r in comp_roots if sum(r.coeffs) == top]
        assert len(tops) == 1, "highest root is not unique"
        highest.append(tops[0])
    return PositiveRoots(roots=tuple(roots), highest=tuple(highest))


def char_lattice_of_parabolic(rd: RootDatum, pt: ParabolicType) -> IntMatrix:
    """Z-basis (rows) of {lam in X* : <alpha_j^vee, lam> = 0 for all j in J}.

    J indexes the simple roots of the Levi, so the lattice is the same for
    both orientations; the orientation only matters for sign tests elsewhere.
    The basis is saturated and deterministic.
    """
    J = sorted(pt.J)
    for j in J:
        if not 0 <= j < rd.num_nodes:
            raise ValueError("node %r out of range" % (j,))
    if not J:
        return IntMatrix.identity(rd.rank)
    constraint = IntMatrix.from_rows([rd.coroot(j) for j in J])
    return kernel_basis(constraint)


def opp_type(rd: RootDatum, J: Iterable) -> frozenset:
    """Image of J under the opposition involution -w0 on the simple roots."""
    w0 = _longest_weyl_matrix(rd)
    roots = {rd.root(i): i for i in range(rd.num_nodes)}
    out = set()
    for j in J:
        image = tuple(-x for x in w0.apply(rd.root(j)))
        out.add(roots[image])
    return frozenset(out)


def _longest_weyl_matrix(rd: RootDatum) -> IntMatrix:
    """Matrix of the longest Weyl element on X*, without enumerating W."""
    weights = fundamental_weights(rd)
    vec = [Fraction(0)] * rd.rank
    for w in weights.values():
        vec = [a + b for a, b in zip(vec, w)]
    mat = IntMatrix.identity(rd.rank)
    guard = 0
    while True:
        pairings = rd.coroot_pairings(vec)
        i = next((idx for idx, p in enumerate(pairings) if p > 0), None)
        if i is None:
            return mat
        refl = reflection_matrix(rd, i)
        vec = list(refl.apply(vec))
        mat = refl * mat
        guard += 1
        if guard > 100_000:
            raise ValueError("longest element iteration did not terminate")


def reflection_matrix(rd: RootDatum, i: int) -> IntMatrix:
    """Simple reflection s_i on X*: lam -> lam - <alpha_i^vee, lam> alpha_i."""
    root = rd.root(i)
    coroot = rd.coroot(i)
    n = rd.rank
    return IntMatrix(n, n, [
        (1 if a == b else 0) - root[a] * coroot[b]
        for a in range(n) for b in range(n)
    ])


def fundamental_weights(rd: RootDatum, J: Iterable = ()) -> dict:
    """Fundamental weights omega_i for i outside J, as exact rational vectors.

    omega_i pairs with alpha_j^vee to the Kronecker delta and vanishes
    against the central directions of X_* (the kernel of pairing against all
    simple roots); that normalization makes the output unique and
    deterministic for non-semisimple data.
    """
    J = frozenset(J)
    k = rd.num_nodes
    central = kernel_basis(rd.simple_roots)
    system_rows = [rd.coroot(i) for i in range(k)]
    system_rows += [central.row(i) for i in range(central.rows)]
    if system_rows:
        system = IntMatrix.from_rows(system_rows)
    else:
        system = IntMatrix(0, rd.rank, ())
    out = {}
    for i in range(k):
        if i in J:
            continue
        rhs = [1 if r == i else 0 for r in range(len(system_rows))]
        try:
            out[i] = solve_rational(system, rhs)
        except SingularMatrixError as exc:
            raise SingularCartanError(str(exc))
    return out


def picard_torsion(rd: RootDatum) -> tuple:
    """Invariant factors > 1 of X_* / (lattice spanned by the simple coroots).

    Empty exactly when the derived group is simply connected.
    """
    if rd.num_nodes == 0:
        return ()
    snf = smith_normal_form(rd.simple_coroots)
    return tuple(f for f in snf.invariant_factors if f > 1)
