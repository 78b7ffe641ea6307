"""Reduction of conserving two-mode Hamiltonians to single-variable form.

Within one charge block the second mode is slaved to the first: fixing
s*n1 + p*n2 = kappa makes n2 a function of n1.  Two non-unitary similarity
transformations (one built from powers of a2+, one from powers of a2)
decouple the slaved mode, turning each conserving term into a mode-1
ladder pair (m1, m2) dressed with a diagonal factor that is a polynomial
in the slaved occupation.  Realizing the remaining mode on monomials
(a1 = d/dx, a1+ = x) gives a finite banded matrix per block, isospectral
to the exact Fock-space block.

The defining contract of the reduced matrix is the diagonal conjugation

    R = D^-1 M D,   D = diag(sqrt(n1! n2!)),

of the exact block matrix M, which is what the monomial realization
produces directly.  The banded matrix drives a scalar recurrence whose
polynomial solutions in the energy terminate at the block dimension; the
roots of the terminating member are the block spectrum.

Two diagonal conventions are supported for the recurrence and the reduced
matrix.  The default, "corrected", matches the exact block restriction.
The "paper-literal" convention keeps the extra mode-2 frequency offset
that the original published derivation carries on the diagonal; its
spectra come out uniformly shifted by that frequency, which is itself a
reproducible diagnostic of this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, sqrt
from typing import Mapping

import numpy as np

from .algebra import (
    ConservedCharge,
    FockState,
    OperatorPolynomial,
    conserves,
)
from .errors import (
    BandStructureUnsupported,
    BlockClosureViolation,
    DegreeOutsidePhysicalSector,
    NonConservingHamiltonian,
    NumericalFailure,
    UnsupportedTermShape,
    ZeroVector,
)
from .exact import (
    ONE,
    ZERO,
    Polynomial,
    Rationalish,
    RationalComplex,
    falling_factorial_poly,
    power_poly,
    rising_factorial_poly,
)
from .oracle import SpectrumReport, eigen_residual, enumerate_block, sort_eigenpairs

MODES = ("corrected", "paper-literal")

VARIANT_S = "similarity-s"
VARIANT_T = "similarity-t"
VARIANT_MATRIX_ELEMENT = "matrix-element"


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def _check_conserves(h: OperatorPolynomial, charge: ConservedCharge) -> None:
    if not conserves(h, charge):
        raise NonConservingHamiltonian(
            f"Hamiltonian does not commute with {charge.s}*N1 + {charge.p}*N2"
        )


def physical_degrees(charge: ConservedCharge, kappa: int) -> tuple[int, ...]:
    """Monomial degrees n >= 0 with s*n <= kappa and p | (kappa - s*n).

    These are exactly the mode-1 occupations occurring in the block, so
    the degree list is in bijection with the Fock block basis via n = n1.
    """
    return tuple(
        n
        for n in range(kappa // charge.s + 1)
        if (kappa - charge.s * n) % charge.p == 0
    )


def slaved_occupation(charge: ConservedCharge, kappa: int, degree: int) -> int:
    """The mode-2 occupation (kappa - s*n)/p forced by the block."""
    rest = kappa - charge.s * degree
    if rest < 0 or rest % charge.p != 0:
        raise DegreeOutsidePhysicalSector(
            f"degree {degree} is not in the block kappa={kappa}"
        )
    return rest // charge.p


def mode2_frequency(h: OperatorPolynomial) -> RationalComplex:
    """Coefficient of the a2+ a2 term (zero if absent)."""
    return h.coefficient(0, 0, 1, 1)


def transformed_charge(
    charge: ConservedCharge, eta: Fraction | int, variant: str
) -> tuple[Fraction, Fraction]:
    """(N1, N2) coefficients of the charge after the similarity transform.

    The a2+-built transform sends the charge to (s - p*eta) N1 + p N2 and
    the a2-built one to (s + p*eta) N1 + p N2; choosing eta = s/p
    (respectively -s/p) removes the N1 part, leaving the slaved mode to
    label the representation on its own.
    """
    eta = Fraction(eta)
    key = variant.strip().upper()
    if key == "S":
        return (Fraction(charge.s) - charge.p * eta, Fraction(charge.p))
    if key == "T":
        return (Fraction(charge.s) + charge.p * eta, Fraction(charge.p))
    raise ValueError(f"variant must be 'S' or 'T', got {variant!r}")


@dataclass(frozen=True)
class ReducedTerm:
    """Mode-1 ladder pair with a diagonal polynomial in the slaved occupation."""

    m1: int
    m2: int
    diag: Polynomial


@dataclass(frozen=True)
class ReducedOperator:
    """Single-variable image of a conserving Hamiltonian.

    Each term acts on the monomial x^n as

        coeff-free ladder (a1+)^m1 (a1)^m2  times  diag(n2(n)),

    where n2(n) = (kappa - s*n)/p is evaluated at the source degree and
    must be a non-negative integer there (guaranteed on physical degrees).
    """

    terms: tuple[ReducedTerm, ...]
    charge: ConservedCharge
    variant: str
    transform_exponent: Fraction | None = None
    clip_edges: bool = False

    def block_entries(
        self, kappa: int
    ) -> tuple[tuple[int, ...], dict[tuple[int, int], RationalComplex]]:
        """Exact matrix entries over the physical degrees (ascending).

        Operators flagged clip_edges (the a2-built similarity, which is
        singular at the block edge, and the literal-power diagonal
        convention, which does not vanish there) have their formal
        amplitudes into nonexistent states dropped; for the a2 route this
        reproduces the exact conjugated matrix.  All other routes must
        close on their own, and a nonzero amplitude leaving the degree
        set is reported as a closure violation.
        """
        degrees = physical_degrees(self.charge, kappa)
        pos = {n: i for i, n in enumerate(degrees)}
        entries: dict[tuple[int, int], RationalComplex] = {}
        for j, n in enumerate(degrees):
            n2 = slaved_occupation(self.charge, kappa, n)
            for term in self.terms:
                if n < term.m2:
                    continue
                amp = term.diag(n2) * falling_factorial_poly(term.m2)(n)
                if amp.is_zero:
                    continue
                target = n - term.m2 + term.m1
                i = pos.get(target)
                if i is None:
                    if self.clip_edges:
                        continue
                    raise BlockClosureViolation(
                        f"reduced term ({term.m1},{term.m2}) maps degree {n}"
                        f" outside the block kappa={kappa}"
                    )
                entries[(i, j)] = entries.get((i, j), ZERO) + amp
        return degrees, {k: v for k, v in entries.items() if not v.is_zero}

    def block_matrix(self, kappa: int) -> tuple[tuple[int, ...], np.ndarray]:
        """Dense complex matrix over the physical degrees."""
        degrees, entries = self.block_entries(kappa)
        dim = len(degrees)
        matrix = np.zeros((dim, dim), dtype=complex)
        for (i, j), value in entries.items():
            matrix[i, j] = complex(value)
        return degrees, matrix


def _term_shape_supported(m3: int, m4: int) -> bool:
    # pure raising, pure lowering, or mode-2-diagonal; anything else needs
    # the matrix-element route
    return m3 == 0 or m4 == 0 or m3 == m4


def reduce_via_s(
    h: OperatorPolynomial,
    charge: ConservedCharge,
    *,
    literal_power: bool = False,
) -> ReducedOperator:
    """Decouple the slaved mode with the similarity built from a2+ powers.

    Every conserving term alpha (a1+)^m1 (a1)^m2 (a2+)^m3 (a2)^m4 becomes
    the ladder pair (m1, m2) with diagonal factor equal to the falling
    factorial n2 (n2-1) ... (n2-m4+1) of the slaved occupation.  With
    literal_power=True the plain power n2^m4 is used instead; the two
    agree exactly for m4 <= 1, which covers every catalog model, but only
    the falling factorial is isospectral to the block in general.
    """
    _check_conserves(h, charge)
    terms = []
    for (m1, m2, m3, m4), coeff in h.items():
        if not _term_shape_supported(m3, m4):
            raise UnsupportedTermShape(
                f"term ({m1},{m2},{m3},{m4}) mixes raising and lowering in"
                " mode 2; use the matrix-element route"
            )
        diag = power_poly(m4) if literal_power else falling_factorial_poly(m4)
        terms.append(ReducedTerm(m1, m2, diag * coeff))
    return ReducedOperator(
        terms=tuple(terms),
        charge=charge,
        variant=VARIANT_S,
        transform_exponent=Fraction(charge.s, charge.p),
        clip_edges=literal_power,
    )


def reduce_via_t(h: OperatorPolynomial, charge: ConservedCharge) -> ReducedOperator:
    """Decouple the slaved mode with the similarity built from a2 powers.

    Pure mode-2-raising terms pick up the rising factorial
    (n2+1) (n2+2) ... (n2+m3), pure lowering terms lose their diagonal
    factor entirely, and mode-2-diagonal terms match the other route.
    The resulting block matrices differ from the a2+-route by a diagonal
    similarity and are isospectral to it and to the exact block.
    """
    _check_conserves(h, charge)
    terms = []
    for (m1, m2, m3, m4), coeff in h.items():
        if not _term_shape_supported(m3, m4):
            raise UnsupportedTermShape(
                f"term ({m1},{m2},{m3},{m4}) mixes raising and lowering in"
                " mode 2; use the matrix-element route"
            )
        if m3 == m4:
            diag = falling_factorial_poly(m4)
        elif m4 == 0:
            diag = rising_factorial_poly(m3)
        else:
            diag = Polynomial.one()
        terms.append(ReducedTerm(m1, m2, diag * coeff))
    return ReducedOperator(
        terms=tuple(terms),
        charge=charge,
        variant=VARIANT_T,
        transform_exponent=Fraction(-charge.s, charge.p),
        clip_edges=True,
    )


def matrix_element_reduction(
    h: OperatorPolynomial, charge: ConservedCharge
) -> ReducedOperator:
    """Reduced operator with the defining (monomial-basis) semantics.

    Acting on x^n1 y^n2 with a_i = d, a_i+ = multiplication, every term
    contributes the product of per-mode falling factorials, so the block
    matrix equals D^-1 M D with M the exact Fock block and
    D = diag(sqrt(n1! n2!)).  No term shape restrictions.
    """
    _check_conserves(h, charge)
    terms = tuple(
        ReducedTerm(m1, m2, falling_factorial_poly(m4) * coeff)
        for (m1, m2, m3, m4), coeff in h.items()
    )
    return ReducedOperator(
        terms=terms,
        charge=charge,
        variant=VARIANT_MATRIX_ELEMENT,
        transform_exponent=None,
    )


@dataclass(frozen=True, eq=False)
class ReducedBlock:
    """Finite single-variable block: admissible degrees and their matrix."""

    kappa: int
    degrees: tuple[int, ...]
    matrix: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.degrees)


def _exact_reduced_entries(
    h: OperatorPolynomial,
    charge: ConservedCharge,
    kappa: int,
    mode: str,
) -> tuple[tuple[int, ...], dict[tuple[int, int], RationalComplex]]:
    _check_mode(mode)
    op = matrix_element_reduction(h, charge)
    degrees, entries = op.block_entries(kappa)
    if mode == "paper-literal":
        w2 = mode2_frequency(h)
        if not w2.is_zero:
            for i in range(len(degrees)):
                entries[(i, i)] = entries.get((i, i), ZERO) + w2
    return degrees, entries


def reduced_block_matrix(
    h: OperatorPolynomial,
    charge: ConservedCharge,
    kappa: int,
    *,
    mode: str = "corrected",
) -> ReducedBlock:
    """Square matrix of the reduced operator over the physical degrees.

    Parameters
    ----------
    h, charge, kappa
        Conserving Hamiltonian, its charge, and the block label.
    mode
        "corrected" (default) gives the exact conjugated block;
        "paper-literal" adds the mode-2 frequency to every diagonal
        entry, reproducing the as-published recurrence convention.

    Returns
    -------
    ReducedBlock
        Isospectral to the Fock block in corrected mode.
    """
    degrees, entries = _exact_reduced_entries(h, charge, kappa, mode)
    dim = len(degrees)
    matrix = np.zeros((dim, dim), dtype=complex)
    for (i, j), value in entries.items():
        matrix[i, j] = complex(value)
    return ReducedBlock(kappa=kappa, degrees=degrees, matrix=matrix)


def termination_degree(
    h: OperatorPolynomial, charge: ConservedCharge, kappa: int
) -> int:
    """Dimension of the physical sector, where the recurrence terminates."""
    _check_conserves(h, charge)
    return len(physical_degrees(charge, kappa))


@dataclass(frozen=True)
class EnergyPolynomialTable:
    """Energy polynomials of one block's scalar recurrence.

    polys[m] has exact coefficients and degree m; the last entry is the
    terminating member, whose roots are the block spectrum.  recurrence
    holds the exact matrix A of the recurrence, indexed by the slaved
    occupation ascending; A is the (order-reversing) transpose of the
    reduced block matrix, so both share one spectrum.
    """

    kappa: int
    mode: str
    dimension: int
    polys: tuple[Polynomial, ...]
    recurrence: tuple[tuple[RationalComplex, ...], ...]

    @property
    def termination(self) -> Polynomial:
        return self.polys[-1]

    @property
    def termination_degree(self) -> int:
        return self.dimension

    def recurrence_matrix(self) -> np.ndarray:
        dim = self.dimension
        matrix = np.zeros((dim, dim), dtype=complex)
        for i in range(dim):
            for j in range(dim):
                matrix[i, j] = complex(self.recurrence[i][j])
        return matrix

    def spectrum(self) -> np.ndarray:
        """Recurrence eigenvalues, sorted ascending by (real, imag)."""
        if self.dimension == 0:
            return np.zeros(0, dtype=complex)
        values, _ = sort_eigenpairs(np.linalg.eigvals(self.recurrence_matrix()))
        return values

    def termination_roots(self) -> np.ndarray:
        """Roots of the terminating polynomial (sorted); equals spectrum()."""
        if self.termination.degree < 1:
            return np.zeros(0, dtype=complex)
        coeffs = self.termination.complex_coeffs()[::-1]
        values, _ = sort_eigenpairs(np.roots(coeffs))
        return values


def energy_polynomial_table(
    h: OperatorPolynomial,
    charge: ConservedCharge,
    kappa: int,
    *,
    mode: str = "corrected",
) -> EnergyPolynomialTable:
    """Generate the energy polynomials P_m(E) of the block recurrence.

    P_0 = 1 and each P_{m+1} is solved from row m of the recurrence,
    which requires the matrix (indexed by the slaved occupation) to have
    exactly one superdiagonal band with nonvanishing entries; models with
    a single interaction term are of this three-term kind.  Raises
    BandStructureUnsupported otherwise, in which case the characteristic
    polynomial of the reduced block is the fallback.
    """
    _check_conserves(h, charge)
    degrees, entries = _exact_reduced_entries(h, charge, kappa, mode)
    d = len(degrees)
    # recurrence matrix: reverse the degree order (slaved occupation
    # ascending) and transpose
    a = [[ZERO] * d for _ in range(d)]
    for (i, j), value in entries.items():
        a[d - 1 - j][d - 1 - i] = value
    for m in range(d):
        for mp in range(m + 2, d):
            if not a[m][mp].is_zero:
                raise BandStructureUnsupported(
                    f"entry ({m},{mp}) above the first superdiagonal is nonzero"
                )
    for m in range(d - 1):
        if a[m][m + 1].is_zero:
            raise BandStructureUnsupported(
                f"superdiagonal entry ({m},{m + 1}) vanishes"
            )
    polys = [Polynomial.one()]
    for m in range(d - 1):
        acc = polys[m].shifted()  # E * P_m
        for j in range(m + 1):
            acc = acc - polys[j] * a[m][j]
        polys.append(acc * (ONE / a[m][m + 1]))
    if d > 0:
        acc = polys[d - 1].shifted()
        for j in range(d):
            acc = acc - polys[j] * a[d - 1][j]
        polys.append(acc)
    return EnergyPolynomialTable(
        kappa=kappa,
        mode=mode,
        dimension=d,
        polys=tuple(polys),
        recurrence=tuple(tuple(row) for row in a),
    )


def reduced_eigensystem(
    h: OperatorPolynomial,
    charge: ConservedCharge,
    kappa: int,
    *,
    mode: str = "corrected",
    residual_tol: float = 1e-8,
) -> tuple[ReducedBlock, np.ndarray, np.ndarray, float]:
    """Eigenvalues and right eigenvectors of the reduced block matrix."""
    block = reduced_block_matrix(h, charge, kappa, mode=mode)
    if block.dimension == 0:
        return block, np.zeros(0, dtype=complex), np.zeros((0, 0), dtype=complex), 0.0
    values, vectors = np.linalg.eig(block.matrix)
    values, vectors = sort_eigenpairs(values, vectors)
    worst = max(
        eigen_residual(block.matrix, values[i], vectors[:, i])
        for i in range(block.dimension)
    )
    if worst > residual_tol:
        raise NumericalFailure(
            f"reduced block kappa={kappa} eigensolve residual {worst:.3e}"
            f" exceeds {residual_tol:.3e}",
            worst,
        )
    return block, values, vectors, worst


def qes_spectrum(
    h: OperatorPolynomial,
    charge: ConservedCharge,
    kappa: int,
    *,
    mode: str = "corrected",
    residual_tol: float = 1e-8,
) -> SpectrumReport:
    """Block spectrum from the reduced single-variable matrix.

    A dense eigensolve of the banded matrix is numerically preferable to
    isolating roots of the terminating energy polynomial; the polynomials
    remain available for inspection via energy_polynomial_table.
    """
    block, values, _, worst = reduced_eigensystem(
        h, charge, kappa, mode=mode, residual_tol=residual_tol
    )
    return SpectrumReport(
        kappa=kappa,
        dimension=block.dimension,
        eigenvalues=tuple(complex(v) for v in values),
        method="reduced",
        max_residual=worst,
    )


def eigenvector_to_fock(
    coeffs: Mapping[int, complex],
    charge: ConservedCharge,
    kappa: int,
) -> tuple[tuple[FockState, ...], np.ndarray]:
    """Map monomial-basis eigenvector coefficients to Fock amplitudes.

    The coefficient of x^n1 is rescaled by sqrt(n1! n2!) with n2 the
    slaved occupation, then the amplitude vector over the block basis
    (ordered by increasing n2) is l2-normalized.  Up to a global phase the
    result matches the corresponding exact block eigenvector.
    """
    degrees = set(physical_degrees(charge, kappa))
    for degree in coeffs:
        if degree not in degrees:
            raise DegreeOutsidePhysicalSector(
                f"degree {degree} outside block kappa={kappa}"
            )
    basis = enumerate_block(charge, kappa)
    amplitudes = np.zeros(len(basis), dtype=complex)
    for i, state in enumerate(basis):
        c = complex(coeffs.get(state.n1, 0.0))
        amplitudes[i] = c * sqrt(factorial(state.n1) * factorial(state.n2))
    norm = np.linalg.norm(amplitudes)
    if norm == 0.0:
        raise ZeroVector("eigenvector coefficients are all zero")
    return basis, amplitudes / norm


@dataclass(frozen=True)
class OdeCoefficients:
    """Coefficient polynomials of the reduced second-order ODE.

    The operator is  c3 * z^3 * d^2/dz^2  +  c1(z) * d/dz  +  c0(z),
    acting on functions of z, with the energy term -E kept out of c0.
    """

    c3: RationalComplex
    c1: Polynomial
    c0: Polynomial
    k: int
    mode: str

    def apply(self, poly: Polynomial, z: complex) -> complex:
        """Evaluate the operator action on a polynomial test function."""
        d1 = poly.derivative()
        d2 = d1.derivative()
        return (
            complex(self.c3) * z**3 * d2.eval_complex(z)
            + self.c1.eval_complex(z) * d1.eval_complex(z)
            + self.c0.eval_complex(z) * poly.eval_complex(z)
        )

    def recurrence_exact(self, dim: int) -> tuple[tuple[RationalComplex, ...], ...]:
        """Exact matrix B of the coefficient recurrence on z^0 .. z^(dim-1).

        Row m collects the coefficient of z^m after inserting a power
        series, so B is the transpose of the energy-polynomial recurrence
        matrix of the same block and shares its spectrum.
        """
        b = [[ZERO] * dim for _ in range(dim)]
        for m in range(dim):
            if 1 <= m and m - 1 < dim:
                b[m][m - 1] = b[m][m - 1] + self.c3 * ((m - 1) * (m - 2))
            for r, f in enumerate(self.c1.coeffs):
                j = m + 1 - r
                if 0 <= j < dim:
                    b[m][j] = b[m][j] + f * j
            for r, g in enumerate(self.c0.coeffs):
                j = m - r
                if 0 <= j < dim:
                    b[m][j] = b[m][j] + g
        return tuple(tuple(row) for row in b)

    def recurrence_matrix(self, dim: int) -> np.ndarray:
        exact = self.recurrence_exact(dim)
        matrix = np.zeros((dim, dim), dtype=complex)
        for i in range(dim):
            for j in range(dim):
                matrix[i, j] = complex(exact[i][j])
        return matrix


def shg_ode(
    omega1: Rationalish,
    omega2: Rationalish,
    kappa_c: Rationalish,
    kappa_bar: Rationalish,
    k: int,
    *,
    mode: str = "corrected",
) -> OdeCoefficients:
    """Reduced ODE of the two-photon (second-harmonic) model at level k.

    Returns the coefficients of

        4 kb z^3 phi'' + (kc + (w2 - 2 w1) z + 2 kb (3 - 2k) z^2) phi'
            + (C + kb k (k-1) z - E) phi = 0,

    with C = k*w1 in corrected mode and C = w2 + k*w1 in the as-published
    ("paper-literal") convention; the latter shifts every recurrence
    eigenvalue up by w2.  Collecting powers of z in this ODE reproduces
    the transpose of the energy-polynomial recurrence for block
    kappa = k of the (1, 2) charge.
    """
    _check_mode(mode)
    if k < 0:
        raise ValueError("k must be non-negative")
    w1 = RationalComplex.coerce(omega1)
    w2 = RationalComplex.coerce(omega2)
    kc = RationalComplex.coerce(kappa_c)
    kb = RationalComplex.coerce(kappa_bar)
    c3 = kb * 4
    c1 = Polynomial.from_coeffs([kc, w2 - w1 * 2, kb * (2 * (3 - 2 * k))])
    constant = w1 * k if mode == "corrected" else w2 + w1 * k
    c0 = Polynomial.from_coeffs([constant, kb * (k * (k - 1))])
    return OdeCoefficients(c3=c3, c1=c1, c0=c0, k=k, mode=mode)
