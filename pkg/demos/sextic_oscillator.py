"""From the reduced ODE to a sextic oscillator, with every step checked.

A change of variable plus a superpotential gauge factor turns the reduced
second-order operator into a Schroedinger operator with a sextic
potential.  The conjugation identity is verified numerically on random
polynomial test functions; the search over sign/normalization conventions
reports that the identity holds with a unit-mass kinetic term and that
the quoted constant term sits one mode-2 frequency above the conjugated
operator.  A finite-difference box solver then finds the block energies
inside the sextic spectrum, up to that same constant.
"""

from fractions import Fraction

import numpy as np

from qesboson import (
    build_shg,
    check_gauge_identity,
    constant_shift_match,
    fd_spectrum,
    gauge_superpotential,
    qes_spectrum,
    sextic_potential,
    shg_charge,
)

W1, W2, KC, KB = 1, 2, Fraction(1, 2), Fraction(1, 2)

print("== superpotential and sextic coefficients (k = 2) ==")
w = gauge_superpotential(W1, W2, KC, KB, 2)
print(f"W(y) = ({w.inverse_coeff})/y + ({w.linear_coeff})*y + ({w.cubic_coeff})*y^3")
pot = sextic_potential(W1, W2, KC, KB, 2)
print(f"V(y) = {pot.c0} + ({pot.c2})*y^2 + ({pot.c4})*y^4 + ({pot.c6})*y^6")

print()
print("== conjugation identity, convention search ==")
for k in range(4):
    result = check_gauge_identity(W1, W2, KC, KB, k)
    conv = result.convention
    print(
        f"k={k}: residual {result.residual:.2e}  kinetic={conv.kinetic}"
        f"  exponent sign {conv.w_sign * conv.exponent_sign:+d}"
        f"  constant offset {conv.shift:.9f}"
    )
print("(offset equals w2: the quoted constant term carries the same extra")
print(" mode-2 frequency as the as-published recurrence diagonal)")

print()
print("== sanity: harmonic oscillator through the FD solver ==")
ho = fd_spectrum(lambda y: y**2 / 2, 10.0, 2000)
print("lowest levels:", np.round(ho, 5), " (expect n + 1/2)")

print()
print("== block energies inside the sextic spectrum (k = 2) ==")
h = build_shg(W1, W2, KC, KB)
block_levels = np.array(
    [v.real for v in qes_spectrum(h, shg_charge(), 2).eigenvalues]
)
fd_levels = fd_spectrum(pot, 6.0, 4000)
shift, max_dev = constant_shift_match(fd_levels, block_levels)
print("block levels:      ", np.round(block_levels, 7))
print("fd sextic levels:  ", np.round(fd_levels, 7))
print(f"constant shift:     {shift:.7f}  (w2 = {W2})")
print(f"worst match error:  {max_dev:.2e}")
