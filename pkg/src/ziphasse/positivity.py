"""Ampleness predicates and positivity certificates for zip data.

A character of a parabolic containing the lower Borel is ample exactly when
it pairs strictly negatively with the coroots of the simple roots outside
the Levi (strictly positively for a parabolic containing the upper Borel).
The certificates below check the computable positivity statements: the
inverse of the twist endomorphism sends ample characters to antiample ones,
the divisor coefficients of an ample character at Borel level are negative,
and for Weil restrictions the block pullbacks of an ample character stay
ample.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_linear import IntMatrix, RatMatrix, rational_inverse
from .root_datum import (
    CONTAINS_B,
    CONTAINS_BMINUS,
    ParabolicType,
    RootDatum,
    fundamental_weights,
)
from .zip_core import (
    CENTRAL,
    MINUSCULE,
    SMALL_NOT_MINUSCULE,
    ZipDatum,
    classify_cocharacter,
    zeta_matrix,
)


class PreconditionViolatedError(ValueError):
    """Input fails a documented precondition of the certificate."""


class NotRationalCaseError(ValueError):
    """Divisor coefficients need Frobenius-stable parabolics (or J empty)."""


class NotWeilRestrictionError(ValueError):
    """Pullback certificate only applies to Weil-restriction builders."""


AMPLE = "ample"
ANTIAMPLE = "antiample"
NEITHER = "neither"
NOT_IN_LATTICE = "not_in_lattice"

CERTIFIED_NEGATIVE = "certified_negative"
MIXED = "mixed"
NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class PositivityReport:
    input_character: tuple
    zeta_inverse_image: tuple
    antiample_certified: bool
    borel_coefficients: tuple  # indexed by the simple roots
    negative_count: int
    verdict: str


def _frac(vec: Sequence) -> tuple:
    return tuple(Fraction(x) for x in vec)


def _in_lattice(rd: RootDatum, J, lam) -> bool:
    pairings = rd.coroot_pairings(lam)
    return all(pairings[j] == 0 for j in J)


def _signs_hold(rd: RootDatum, J, lam, positive: bool) -> bool:
    """Strict sign test on the nodes outside J; vacuously true if none."""
    pairings = rd.coroot_pairings(lam)
    outside = set(range(rd.num_nodes)) - set(J)
    if positive:
        return all(pairings[i] > 0 for i in outside)
    return all(pairings[i] < 0 for i in outside)


def is_ample(rd: RootDatum, pt: ParabolicType, lam: Sequence) -> str:
    """ample / antiample / neither / not_in_lattice for a rational character.

    Membership means vanishing against the Levi coroots.  For a parabolic
    containing the upper Borel, ample means strictly positive pairings on the
    remaining nodes; for the lower Borel the signs flip.
    """
    lam = _frac(lam)
    if not _in_lattice(rd, pt.J, lam):
        return NOT_IN_LATTICE
    ample_positive = pt.orientation == CONTAINS_B
    if _signs_hold(rd, pt.J, lam, positive=ample_positive):
        return AMPLE
    if _signs_hold(rd, pt.J, lam, positive=not ample_positive):
        return ANTIAMPLE
    return NEITHER


def borel_zeta_matrix(zd: ZipDatum) -> IntMatrix:
    """The twist endomorphism id - q*tau on all of X*."""
    return IntMatrix.identity(zd.rd.rank) - zd.frob.tau.scale(zd.frob.q)


def zeta_inverse(zd: ZipDatum, at_borel: bool = False) -> RatMatrix:
    """Exact inverse of the twist endomorphism.

    With at_borel the matrix lives on the full character lattice; otherwise
    on the chosen basis of X*(L0).
    """
    if at_borel:
        return rational_inverse(borel_zeta_matrix(zd))
    return rational_inverse(zeta_matrix(zd))


def fundamental_zeta_matrix(zd: ZipDatum) -> IntMatrix:
    """Twist endomorphism on X*/X*(G) in the fundamental-weight basis.

    Entry (i, j) is <alpha_i^vee, zeta(omega_j)> = delta_ij - q*[i = pi(j)],
    an integer matrix of size |I|; for a Weil restriction of rank-one blocks
    this is the circulant with 1 on the diagonal and -q on the shifted
    diagonal.
    """
    k = zd.rd.num_nodes
    q = zd.frob.q
    perm = zd.frob.root_perm
    return IntMatrix(k, k, [
        (1 if i == j else 0) - (q if i == perm[j] else 0)
        for i in range(k) for j in range(k)
    ])


def fundamental_zeta_inverse(zd: ZipDatum) -> RatMatrix:
    return rational_inverse(fundamental_zeta_matrix(zd))


def _is_rational_case(zd: ZipDatum) -> bool:
    return {zd.frob.root_perm[j] for j in zd.J} == set(zd.J)


def antiample_check(zd: ZipDatum, lam: Sequence) -> bool:
    """Certify that the twist-inverse of an ample character is antiample.

    Requires an ample character of the parabolic of type J and a datum in a
    covered case: Frobenius-stable parabolics, or one built from a small (in
    particular minuscule) cocharacter.
    """
    rd = zd.rd
    pt = ParabolicType(zd.J, CONTAINS_BMINUS)
    lam = _frac(lam)
    if is_ample(rd, pt, lam) != AMPLE:
        raise PreconditionViolatedError("an ample character of P is required")
    rational = _is_rational_case(zd)
    if not rational:
        if zd.cochar is None or classify_cocharacter(rd, zd.cochar) not in (
                CENTRAL, MINUSCULE, SMALL_NOT_MINUSCULE):
            raise PreconditionViolatedError(
                "need Frobenius-stable parabolics or a small cocharacter")
    mu = zeta_inverse(zd, at_borel=True).apply(lam)
    certified = _in_lattice(rd, zd.J, mu) and _signs_hold(rd, zd.J, mu, positive=True)
    if rational:
        # Frobenius composition preserves ampleness when J is stable
        twisted = tuple(zd.frob.q * x for x in zd.frob.tau.apply(lam))
        assert _in_lattice(rd, zd.J, twisted)
        assert _signs_hold(rd, zd.J, twisted, positive=False)
    return certified


def hasse_divisor_coeffs(zd: ZipDatum, lam: Sequence) -> PositivityReport:
    """Borel-level divisor coefficients of a character of P.

    The coefficient at a simple root alpha is <alpha^vee, -zeta^{-1}(lam)>
    on the full character lattice.  Verdict certified_negative means: all
    coefficients strictly negative for a Borel datum (J empty), and all
    coefficients <= 0 with exactly |I \\ J| strict ones for a parabolic datum
    with Frobenius-stable J.
    """
    rd = zd.rd
    if not _is_rational_case(zd):
        raise NotRationalCaseError(
            "J is not Frobenius-stable; use weil_pullback_check for "
            "Weil-restriction data")
    lam = _frac(lam)
    member = _in_lattice(rd, zd.J, lam)
    mu = zeta_inverse(zd, at_borel=True).apply(lam)
    coeffs = tuple(-p for p in rd.coroot_pairings(mu))
    negative = sum(1 for c in coeffs if c < 0)
    if not member:
        verdict = NOT_APPLICABLE
    elif not zd.J:
        verdict = CERTIFIED_NEGATIVE if all(c < 0 for c in coeffs) else MIXED
    else:
        outside = rd.num_nodes - len(zd.J)
        certified = all(c <= 0 for c in coeffs) and negative == outside
        verdict = CERTIFIED_NEGATIVE if certified else MIXED
    antiample = member and _in_lattice(rd, zd.J, mu) \
        and _signs_hold(rd, zd.J, mu, positive=True)
    return PositivityReport(
        input_character=lam,
        zeta_inverse_image=mu,
        antiample_certified=antiample,
        borel_coefficients=coeffs,
        negative_count=negative,
        verdict=verdict,
    )


def weil_pullback_check(zd: ZipDatum, lam: Sequence) -> bool:
    """Blockwise pullback certificate for Weil-restriction data.

    For each block j the ample character lam = sum a_i * omega_i pulls back
    to sum_i a_i q^{d(i,j)} tau^{d(i,j)}(omega_i) supported on block j, where
    d(i, j) is the cyclic distance from block i down to block j.  The
    certificate checks that every such pullback is ample for the intersected
    parabolic of its block.
    """
    rd = zd.rd
    tag = rd.builder_tag
    if tag[0] != "weil_restriction":
        raise NotWeilRestrictionError("builder is %r" % (tag[0],))
    copies = tag[1]
    if rd.num_nodes == 0:
        return True
    per_block = rd.num_nodes // copies

    # one missing node per maximal factor, none for full factors
    missing = {}
    for b in range(copies):
        block_nodes = set(range(b * per_block, (b + 1) * per_block))
        gap = block_nodes - zd.J
        if len(gap) > 1:
            raise NotWeilRestrictionError(
                "factor %d is neither maximal nor the full group" % (b,))
        if gap:
            missing[b] = gap.pop()

    pt = ParabolicType(zd.J, CONTAINS_BMINUS)
    lam = _frac(lam)
    if is_ample(rd, pt, lam) != AMPLE:
        raise PreconditionViolatedError("an ample character of P is required")
    if not missing:
        return True

    weights = fundamental_weights(rd, zd.J)
    pairings = rd.coroot_pairings(lam)
    q = zd.frob.q
    perm = zd.frob.root_perm
    tau_powers = [IntMatrix.identity(rd.rank)]
    perm_powers = [tuple(range(rd.num_nodes))]
    for _ in range(copies - 1):
        tau_powers.append(zd.frob.tau * tau_powers[-1])
        perm_powers.append(tuple(perm[i] for i in perm_powers[-1]))

    for j in range(copies):
        vec = [Fraction(0)] * rd.rank
        targets = set()
        for b, node in missing.items():
            dist = (b - j) % copies
            shifted = tau_powers[dist].apply(weights[node])
            coeff = Fraction(pairings[node]) * q ** dist
            vec = [x + coeff * y for x, y in zip(vec, shifted)]
            targets.add(perm_powers[dist][node])
        block_pt = ParabolicType(
            frozenset(range(rd.num_nodes)) - targets, CONTAINS_BMINUS)
        if is_ample(rd, block_pt, vec) != AMPLE:
            return False
    return True
