"""Zip data and their Hasse invariants.

A zip datum is a root datum with Frobenius structure plus the type J of a
parabolic containing the lower Borel.  From it we derive: the type K of the
opposite-twisted parabolic, the type J0 of the largest Frobenius-stable Levi
L0, the endomorphism chi -> chi - q*tau(chi) of the character lattice of L0
(whose cokernel is the character group of the finite stabilizer when the
Picard group of L0 vanishes), the Hasse number (exponent of that cokernel),
the orbit census over the minimal coset representatives, and the rank of the
equivariant Picard group.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Optional, Sequence

from .exact_linear import IntMatrix, determinant, smith_normal_form, solve_rational
from .root_datum import (
    CONTAINS_BMINUS,
    FrobeniusStructure,
    ParabolicType,
    RootDatum,
    char_lattice_of_parabolic,
    opp_type,
    positive_roots,
)
from .weyl import WeylGroup, longest_element, min_coset_reps


class NonNormalizedCocharacterError(ValueError):
    """Cocharacter must pair >= 0 with every simple root."""


class PicObstructionError(Exception):
    """Derived group of L0 is not simply connected.

    The cokernel of the twist endomorphism is still computed and attached as
    ``report`` (with pic_L0_trivial False), but it may differ from the true
    character group of the stabilizer.
    """

    def __init__(self, report, torsion):
        super().__init__(
            "derived group of L0 is not simply connected "
            "(Picard torsion %s); cokernel may differ from the stabilizer "
            "character group" % (list(torsion),))
        self.report = report
        self.torsion = torsion


CENTRAL = "central"
MINUSCULE = "minuscule"
SMALL_NOT_MINUSCULE = "small_not_minuscule"
NEITHER = "neither"


@dataclass(frozen=True)
class ZipDatum:
    rd: RootDatum
    frob: FrobeniusStructure
    J: frozenset
    K: frozenset
    J0: frozenset
    cochar: Optional[tuple]


@dataclass(frozen=True)
class HasseReport:
    zeta: IntMatrix
    det_zeta: int
    invariant_factors: tuple
    s0_order: int
    hasse_number: int
    pic_L0_trivial: bool
    L0_type: tuple


@dataclass(frozen=True)
class OrbitEntry:
    word: tuple
    length: int
    dim: int
    codim: int


@dataclass(frozen=True)
class OrbitCensus:
    orbits: tuple
    eta_length: int
    dim_group: int
    dim_parabolic: int
    codim1_indices: tuple  # pairs (node in I \ J, orbit position)


def _perm_order(perm: Sequence) -> int:
    order = 1
    n = len(perm)
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        m = order
        while m % length:
            m += order
        order = m
    return order


def build_zip_datum(rd: RootDatum, frob: FrobeniusStructure, *,
                    cocharacter: Optional[Sequence] = None,
                    parabolic: Optional[Iterable] = None) -> ZipDatum:
    """Zip datum from either a normalized cocharacter or a parabolic type J.

    A cocharacter must pair >= 0 with every simple root; J is then its
    vanishing set, so the parabolic attached to it contains the lower Borel.
    """
    if (cocharacter is None) == (parabolic is None):
        raise ValueError("need exactly one of cocharacter or parabolic")
    if cocharacter is not None:
        chi = tuple(cocharacter)
        if len(chi) != rd.rank:
            raise ValueError("cocharacter length does not match the rank")
        pairings = rd.root_pairings(chi)
        if any(p < 0 for p in pairings):
            raise NonNormalizedCocharacterError(
                "cocharacter pairings with the simple roots must all be >= 0, "
                "got %s" % (list(pairings),))
        J = frozenset(i for i, p in enumerate(pairings) if p == 0)
        cochar = chi
    else:
        J = frozenset(parabolic)
        for j in J:
            if not 0 <= j < rd.num_nodes:
                raise ValueError("node %r out of range" % (j,))
        cochar = None

    perm = frob.root_perm
    K = opp_type(rd, frozenset(perm[j] for j in J))
    J0 = set(J)
    for _ in range(_perm_order(perm)):
        J0 &= {perm[j] for j in J0}
    J0 = frozenset(J0)

    n_pos = len(positive_roots(rd).roots)
    n_pos_j = _positive_root_count(rd, J)
    dim_g = rd.rank + 2 * n_pos
    dim_e = rd.rank + n_pos + n_pos_j + (n_pos - n_pos_j)
    assert dim_e == dim_g, "zip group dimension must equal the group dimension"

    return ZipDatum(rd=rd, frob=frob, J=J, K=K, J0=J0, cochar=cochar)


def _positive_root_count(rd: RootDatum, J) -> int:
    J = set(J)
    return sum(1 for r in positive_roots(rd).roots
               if set(i for i, x in enumerate(r.coeffs) if x) <= J)


def classify_cocharacter(rd: RootDatum, chi: Sequence) -> str:
    """central / minuscule / small_not_minuscule / neither.

    Minuscule means every root pairing lies in {-1, 0, 1} (the pairing test
    is conjugation invariant because the Weyl group permutes the roots).
    Small means that in every simple component the dominant conjugate pairs
    positively with at most one simple root, with value 1.
    """
    chi = tuple(chi)
    if len(chi) != rd.rank:
        raise ValueError("cocharacter length does not match the rank")
    pos = positive_roots(rd)
    pairings = [_dot(chi, r.vector) for r in pos.roots]
    if all(p == 0 for p in pairings):
        return CENTRAL
    if all(-1 <= p <= 1 for p in pairings):
        return MINUSCULE
    dom = _dominant_conjugate(rd, chi)
    simple_pairings = rd.root_pairings(dom)
    for comp in rd.components:
        positives = [simple_pairings[i] for i in comp.nodes if simple_pairings[i] > 0]
        if len(positives) > 1 or (positives and positives[0] != 1):
            return NEITHER
    return SMALL_NOT_MINUSCULE


def _dominant_conjugate(rd: RootDatum, chi: Sequence) -> tuple:
    vec = list(chi)
    guard = 0
    while True:
        pairings = rd.root_pairings(vec)
        i = next((idx for idx, p in enumerate(pairings) if p < 0), None)
        if i is None:
            return tuple(vec)
        coroot = rd.coroot(i)
        p = pairings[i]
        vec = [x - p * c for x, c in zip(vec, coroot)]
        guard += 1
        if guard > 100_000:
            raise ValueError("dominance iteration did not terminate")


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def levi_char_lattice(zd: ZipDatum) -> IntMatrix:
    """Basis (rows) of the character lattice of L0."""
    return char_lattice_of_parabolic(
        zd.rd, ParabolicType(zd.J0, CONTAINS_BMINUS))


def zeta_matrix(zd: ZipDatum) -> IntMatrix:
    """Matrix of chi -> chi - q*tau(chi) on the chosen basis of X*(L0).

    The lattice is tau-stable because the root permutation fixes J0, so the
    restriction has integer entries.
    """
    basis = levi_char_lattice(zd)
    k = basis.rows
    if k == 0:
        return IntMatrix(0, 0, ())
    basis_cols = basis.transpose()
    q = zd.frob.q
    columns = []
    for a in range(k):
        vec = basis.row(a)
        twisted = zd.frob.tau.apply(vec)
        image = tuple(x - q * y for x, y in zip(vec, twisted))
        coeffs = solve_rational(basis_cols, image)
        assert all(c.denominator == 1 for c in coeffs), \
            "twist endomorphism does not preserve the lattice"
        columns.append([c.numerator for c in coeffs])
    return IntMatrix(k, k, [columns[j][i] for i in range(k) for j in range(k)])


def levi_picard_torsion(zd: ZipDatum) -> tuple:
    """Picard torsion of the Levi L0: invariant factors > 1 of its coroot span."""
    J0 = sorted(zd.J0)
    if not J0:
        return ()
    coroots = IntMatrix.from_rows([zd.rd.coroot(j) for j in J0])
    return tuple(f for f in smith_normal_form(coroots).invariant_factors if f > 1)


def s0_characters(zd: ZipDatum) -> HasseReport:
    """Invariant factors of the twist endomorphism on X*(L0).

    When the derived group of L0 is simply connected the cokernel is the
    character group of the finite stabilizer; otherwise PicObstructionError
    is raised, carrying the same report flagged as unreliable.
    """
    zeta = zeta_matrix(zd)
    det = determinant(zeta)
    assert det != 0, "twist endomorphism must be injective"
    factors = smith_normal_form(zeta).invariant_factors
    order = abs(det)
    assert order == prod(factors), "invariant factors must multiply to |det|"
    torsion = levi_picard_torsion(zd)
    report = HasseReport(
        zeta=zeta,
        det_zeta=det,
        invariant_factors=factors,
        s0_order=order,
        hasse_number=factors[-1] if factors else 1,
        pic_L0_trivial=not torsion,
        L0_type=tuple(sorted(zd.J0)),
    )
    if torsion:
        raise PicObstructionError(report, torsion)
    return report


def hasse_number(zd: ZipDatum) -> int:
    """Exponent of the stabilizer character group (largest invariant factor)."""
    return s0_characters(zd).hasse_number


def orbit_census(zd: ZipDatum, W: WeylGroup) -> OrbitCensus:
    """One orbit per minimal coset representative.

    An orbit labeled by a representative w has dimension l(w) + dim P and
    codimension l(eta) - l(w), where eta is the longest representative.  The
    codimension-one orbits correspond to the nodes outside J: the node s maps
    to the representative eta * s' with s' the opposition image of s.
    """
    rd = zd.rd
    reps = min_coset_reps(W, zd.J)
    n_pos = len(positive_roots(rd).roots)
    n_pos_j = W.elements[longest_element(W, zd.J)].length
    dim_p = rd.rank + n_pos + n_pos_j
    dim_g = rd.rank + 2 * n_pos
    eta_idx, eta_length = reps.reps[-1]
    assert eta_length == W.elements[W.w0_index].length - n_pos_j

    positions = {idx: pos for pos, (idx, _) in enumerate(reps.reps)}
    orbits = []
    for idx, length in reps.reps:
        orbits.append(OrbitEntry(
            word=W.elements[idx].word,
            length=length,
            dim=length + dim_p,
            codim=eta_length - length,
        ))
    assert sum(1 for o in orbits if o.codim == 0) == 1
    assert orbits[-1].dim == dim_g

    w0_matrix = W.elements[W.w0_index].matrix
    root_index = {rd.root(i): i for i in range(rd.num_nodes)}
    eta_matrix = W.elements[eta_idx].matrix
    codim1 = []
    outside = sorted(set(range(rd.num_nodes)) - zd.J)
    for s in outside:
        s_opp = root_index[tuple(-x for x in w0_matrix.apply(rd.root(s)))]
        mat = eta_matrix * W.generators[s_opp]
        idx = W.index[mat]
        pos = positions.get(idx)
        assert pos is not None and orbits[pos].codim == 1, \
            "codimension-one labeling failed"
        codim1.append((s, pos))
    assert len(codim1) == sum(1 for o in orbits if o.codim == 1)

    return OrbitCensus(
        orbits=tuple(orbits),
        eta_length=eta_length,
        dim_group=dim_g,
        dim_parabolic=dim_p,
        codim1_indices=tuple(codim1),
    )


def pic_rank(zd: ZipDatum) -> int:
    """Rank of the equivariant Picard group: the number of nodes outside J.

    Cross-checked against rank X*(P) - rank X*(G) computed from character
    lattices.
    """
    rd = zd.rd
    count = rd.num_nodes - len(zd.J)
    rank_p = char_lattice_of_parabolic(
        rd, ParabolicType(zd.J, CONTAINS_BMINUS)).rows
    rank_g = char_lattice_of_parabolic(
        rd, ParabolicType(frozenset(range(rd.num_nodes)), CONTAINS_BMINUS)).rows
    assert rank_p - rank_g == count, "lattice-rank computation of m_P disagrees"
    return count
