"""Exact normal-ordered algebra of two-mode boson operators.

Operators are sums of normal-ordered monomials

    coeff * (a1+)^m1 (a1)^m2 (a2+)^m3 (a2)^m4

with the two modes satisfying [a_i, a_j+] = delta_ij and all cross-mode
commutators vanishing.  Products are rewritten into this canonical form
with the single-mode reordering identity

    a^m (a+)^n = sum_j C(m,j) C(n,j) j! (a+)^(n-j) a^(m-j),

applied independently per mode.  Coefficients stay exact complex rationals,
so conservation, hermiticity and commutator checks are exact, never
tolerance-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping

from .exact import ZERO, Rationalish, RationalComplex, falling_factorial

ExponentKey = tuple[int, int, int, int]


@dataclass(frozen=True, order=True)
class FockState:
    """Occupation-number state |n1, n2> of the two modes."""

    n1: int
    n2: int

    def __post_init__(self) -> None:
        if self.n1 < 0 or self.n2 < 0:
            raise ValueError(f"occupations must be non-negative, got {self}")


@dataclass(frozen=True)
class ConservedCharge:
    """Weighted number operator s*N1 + p*N2, stored with gcd(s, p) = 1."""

    s: int
    p: int

    def __post_init__(self) -> None:
        if self.s < 1 or self.p < 1:
            raise ValueError(f"charge weights must be positive, got ({self.s}, {self.p})")
        from math import gcd

        g = gcd(self.s, self.p)
        if g > 1:
            object.__setattr__(self, "s", self.s // g)
            object.__setattr__(self, "p", self.p // g)


@dataclass(frozen=True)
class BosonMonomial:
    """One normal-ordered term coeff * (a1+)^m1 (a1)^m2 (a2+)^m3 (a2)^m4."""

    coeff: RationalComplex
    m1: int
    m2: int
    m3: int
    m4: int

    def __post_init__(self) -> None:
        for m in (self.m1, self.m2, self.m3, self.m4):
            if m < 0 or not isinstance(m, int):
                raise ValueError(f"exponents must be non-negative integers, got {self}")

    @property
    def exponents(self) -> ExponentKey:
        return (self.m1, self.m2, self.m3, self.m4)

    def adjoint(self) -> "BosonMonomial":
        """Hermitian conjugate; swaps raising/lowering exponents per mode."""
        return BosonMonomial(self.coeff.conjugate(), self.m2, self.m1, self.m4, self.m3)


class OperatorPolynomial:
    """Canonical sum of normal-ordered monomials, keyed by exponent tuple.

    Values are immutable after construction; all arithmetic returns new
    instances, so they are safe to share across workers.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[ExponentKey, RationalComplex] | None = None):
        clean: dict[ExponentKey, RationalComplex] = {}
        if terms:
            for key, coeff in terms.items():
                if not coeff.is_zero:
                    clean[key] = coeff
        self._terms = clean

    @staticmethod
    def zero() -> "OperatorPolynomial":
        return OperatorPolynomial()

    @staticmethod
    def from_monomials(monomials: Iterable[BosonMonomial]) -> "OperatorPolynomial":
        terms: dict[ExponentKey, RationalComplex] = {}
        for mono in monomials:
            key = mono.exponents
            terms[key] = terms.get(key, ZERO) + mono.coeff
        return OperatorPolynomial(terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def n_terms(self) -> int:
        return len(self._terms)

    def coefficient(self, m1: int, m2: int, m3: int, m4: int) -> RationalComplex:
        return self._terms.get((m1, m2, m3, m4), ZERO)

    def monomials(self) -> tuple[BosonMonomial, ...]:
        """Terms in canonical ascending exponent order."""
        return tuple(
            BosonMonomial(self._terms[key], *key) for key in sorted(self._terms)
        )

    def items(self) -> Iterable[tuple[ExponentKey, RationalComplex]]:
        return self._terms.items()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OperatorPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: "OperatorPolynomial") -> "OperatorPolynomial":
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            terms[key] = terms.get(key, ZERO) + coeff
        return OperatorPolynomial(terms)

    def __sub__(self, other: "OperatorPolynomial") -> "OperatorPolynomial":
        return self + (-other)

    def __neg__(self) -> "OperatorPolynomial":
        return OperatorPolynomial({k: -c for k, c in self._terms.items()})

    def __mul__(self, other) -> "OperatorPolynomial":
        if isinstance(other, OperatorPolynomial):
            out = OperatorPolynomial.zero()
            for lk, lc in self._terms.items():
                for rk, rc in other._terms.items():
                    out = out + monomial_product(
                        BosonMonomial(lc, *lk), BosonMonomial(rc, *rk)
                    )
            return out
        scale = RationalComplex.coerce(other)
        return OperatorPolynomial({k: c * scale for k, c in self._terms.items()})

    def __rmul__(self, other: Rationalish) -> "OperatorPolynomial":
        return self * other

    def adjoint(self) -> "OperatorPolynomial":
        """Hermitian conjugate; normal order is preserved term by term."""
        return OperatorPolynomial.from_monomials(
            mono.adjoint() for mono in self.monomials()
        )

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for mono in self.monomials():
            factors = []
            for label, m in zip(("a1+", "a1", "a2+", "a2"), mono.exponents):
                if m == 1:
                    factors.append(label)
                elif m > 1:
                    factors.append(f"{label}^{m}")
            body = " ".join(factors) if factors else "1"
            parts.append(f"({mono.coeff}) {body}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"OperatorPolynomial({self})"


def monomial(coeff: Rationalish, m1: int, m2: int, m3: int, m4: int) -> OperatorPolynomial:
    """Single normal-ordered term as an OperatorPolynomial."""
    return OperatorPolynomial.from_monomials(
        [BosonMonomial(RationalComplex.coerce(coeff), m1, m2, m3, m4)]
    )


def create(mode: int) -> OperatorPolynomial:
    """a1+ or a2+."""
    return monomial(1, 1, 0, 0, 0) if mode == 1 else monomial(1, 0, 0, 1, 0)


def annihilate(mode: int) -> OperatorPolynomial:
    """a1 or a2."""
    return monomial(1, 0, 1, 0, 0) if mode == 1 else monomial(1, 0, 0, 0, 1)


def number(mode: int) -> OperatorPolynomial:
    """a1+ a1 or a2+ a2."""
    return monomial(1, 1, 1, 0, 0) if mode == 1 else monomial(1, 0, 0, 1, 1)


def identity(scale: Rationalish = 1) -> OperatorPolynomial:
    return monomial(scale, 0, 0, 0, 0)


def charge_operator(charge: ConservedCharge) -> OperatorPolynomial:
    """The conserved charge s*N1 + p*N2 as an operator."""
    return charge.s * number(1) + charge.p * number(2)


def _reorder_single_mode(m_low: int, n_raise: int) -> list[tuple[int, int, int]]:
    """Normal-order a^m (a+)^n for one mode.

    Returns (j_weight, raise_exp, lower_exp) triples with integer weight
    C(m,j) C(n,j) j! so that a^m (a+)^n = sum w (a+)^(n-j) a^(m-j).
    """
    out = []
    for j in range(min(m_low, n_raise) + 1):
        w = comb(m_low, j) * comb(n_raise, j) * factorial(j)
        out.append((w, n_raise - j, m_low - j))
    return out


def monomial_product(lhs: BosonMonomial, rhs: BosonMonomial) -> OperatorPolynomial:
    """Normal-ordered canonical form of lhs * rhs.

    The two modes commute, so the mode-1 and mode-2 reorderings factor
    independently.  Coefficients stay exact; arbitrary-precision integers
    absorb the factorial-scale reordering weights.
    """
    coeff = lhs.coeff * rhs.coeff
    terms: dict[ExponentKey, RationalComplex] = {}
    for w1, r1, l1 in _reorder_single_mode(lhs.m2, rhs.m1):
        for w2, r2, l2 in _reorder_single_mode(lhs.m4, rhs.m3):
            key = (lhs.m1 + r1, l1 + rhs.m2, lhs.m3 + r2, l2 + rhs.m4)
            terms[key] = terms.get(key, ZERO) + coeff * (w1 * w2)
    return OperatorPolynomial(terms)


def commutator(a: OperatorPolynomial, b: OperatorPolynomial) -> OperatorPolynomial:
    """[a, b] = ab - ba in canonical form (exact cancellation)."""
    return a * b - b * a


def charge_weight(charge: ConservedCharge, m1: int, m2: int, m3: int, m4: int) -> int:
    """s (m1 - m2) + p (m3 - m4); zero iff the term commutes with the charge."""
    return charge.s * (m1 - m2) + charge.p * (m3 - m4)


def conserves(h: OperatorPolynomial, charge: ConservedCharge) -> bool:
    """True iff every term of h has vanishing charge weight.

    Equivalent to commutator(charge_operator(charge), h) being the zero
    polynomial, but decided term by term without any reordering.
    """
    return all(charge_weight(charge, *key) == 0 for key, _ in h.items())


def conserving_pairs(h: OperatorPolynomial, limit: int = 12) -> list[tuple[int, int]]:
    """All raw (s, p) with 1 <= s, p <= limit under which h conserves."""
    out = []
    for s in range(1, limit + 1):
        for p in range(1, limit + 1):
            if all(s * (k[0] - k[1]) + p * (k[2] - k[3]) == 0 for k, _ in h.items()):
                out.append((s, p))
    return out


def is_hermitian(h: OperatorPolynomial) -> bool:
    """Exact check that the adjoint equals h."""
    return h.adjoint() == h


def charge_of_state(charge: ConservedCharge, state: FockState) -> int:
    """Eigenvalue s*n1 + p*n2 of the charge on |n1, n2>."""
    return charge.s * state.n1 + charge.p * state.n2


@dataclass(frozen=True)
class FockAmplitude:
    """Exact amplitude coeff * sqrt(radicand).

    Ladder amplitudes between |src> and |tgt> all share the radicand
    tgt_factorials / src_factorials (in lowest terms), so sums of
    contributions to one target state stay in this closed form and compare
    exactly.
    """

    coeff: RationalComplex
    radicand: Fraction = Fraction(1)

    @property
    def is_zero(self) -> bool:
        return self.coeff.is_zero

    def __add__(self, other: "FockAmplitude") -> "FockAmplitude":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.radicand != other.radicand:
            raise ValueError("cannot add amplitudes with different radicands")
        return FockAmplitude(self.coeff + other.coeff, self.radicand)

    def __mul__(self, other) -> "FockAmplitude":
        if isinstance(other, FockAmplitude):
            return FockAmplitude(
                self.coeff * other.coeff, self.radicand * other.radicand
            )
        return FockAmplitude(self.coeff * RationalComplex.coerce(other), self.radicand)

    __rmul__ = __mul__

    def conjugate(self) -> "FockAmplitude":
        return FockAmplitude(self.coeff.conjugate(), self.radicand)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FockAmplitude):
            return NotImplemented
        if self.is_zero and other.is_zero:
            return True
        return self.coeff == other.coeff and self.radicand == other.radicand

    def __complex__(self) -> complex:
        return complex(self.coeff) * float(self.radicand) ** 0.5


def apply_to_fock(
    h: OperatorPolynomial, state: FockState
) -> dict[FockState, FockAmplitude]:
    """Exact image of |n1, n2> under h as target -> amplitude.

    Terms requiring more annihilations than the occupation contribute
    nothing.  Amplitudes carry the exact ladder factors
    sqrt(n!/(n-m)!) * sqrt((n-m+r)!/(n-m)!) per mode.
    """
    src_fact = factorial(state.n1) * factorial(state.n2)
    out: dict[FockState, FockAmplitude] = {}
    for (m1, m2, m3, m4), coeff in h.items():
        if state.n1 < m2 or state.n2 < m4:
            continue
        t1 = state.n1 - m2 + m1
        t2 = state.n2 - m4 + m3
        # monomial-basis weight: falling factorials from the annihilations
        weight = falling_factorial(state.n1, m2) * falling_factorial(state.n2, m4)
        target = FockState(t1, t2)
        amp = FockAmplitude(
            coeff * weight,
            Fraction(factorial(t1) * factorial(t2), src_fact),
        )
        prev = out.get(target)
        out[target] = amp if prev is None else prev + amp
    return {st: amp for st, amp in out.items() if not amp.is_zero}


def apply_to_amplitudes(
    h: OperatorPolynomial, amplitudes: Mapping[FockState, FockAmplitude]
) -> dict[FockState, FockAmplitude]:
    """Apply h to a superposition expressed as state -> amplitude."""
    out: dict[FockState, FockAmplitude] = {}
    for state, amp in amplitudes.items():
        for target, hop in apply_to_fock(h, state).items():
            contrib = hop * amp
            prev = out.get(target)
            out[target] = contrib if prev is None else prev + contrib
    return {st: amp for st, amp in out.items() if not amp.is_zero}
