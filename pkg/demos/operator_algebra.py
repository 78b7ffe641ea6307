"""Tour of the exact two-mode operator algebra.

Everything here is computed in exact rational arithmetic: reordering
products into normal form, commutators, conservation tests and
hermiticity are all yes/no answers, never tolerance calls.
"""

from fractions import Fraction

from qesboson import (
    ConservedCharge,
    FockState,
    annihilate,
    apply_to_fock,
    build_shg,
    charge_operator,
    commutator,
    conserves,
    conserving_pairs,
    create,
    is_hermitian,
    number,
)

print("== normal ordering ==")
print("a1 * a1+           =", annihilate(1) * create(1))
print("a1^2 * (a1+)^2     =", annihilate(1) * annihilate(1) * create(1) * create(1))

print()
print("== conserved charge K = s N1 + p N2 ==")
charge = ConservedCharge(1, 2)
k_op = charge_operator(charge)
print("K                  =", k_op)
print("[K, a1+]           =", commutator(k_op, create(1)), "   (s times a1+)")
print("[K, a2]            =", commutator(k_op, annihilate(2)), "  (-p times a2)")

print()
print("== the two-photon exchange model ==")
h = build_shg(1, 2, Fraction(1, 2), Fraction(1, 2))
print("H                  =", h)
print("conserves (1,2)?   ", conserves(h, charge))
print("conserves (1,1)?   ", conserves(h, ConservedCharge(1, 1)))
print("[K, H]             =", commutator(k_op, h))
print("hermitian?         ", is_hermitian(h))
print("all charges s,p<=12:", conserving_pairs(h))

print()
print("== exact ladder action on Fock states ==")
state = FockState(2, 0)
print(f"H |{state.n1},{state.n2}> :")
for target, amp in sorted(apply_to_fock(h, state).items(), key=lambda kv: kv[0]):
    print(
        f"  -> |{target.n1},{target.n2}>  amplitude {complex(amp):.6f}"
        f"  (exact: {amp.coeff} * sqrt({amp.radicand}))"
    )

print()
print("== diagonal operators are just weighted counts ==")
n_op = 3 * number(1) + 5 * number(2)
out = apply_to_fock(n_op, FockState(2, 3))
for target, amp in out.items():
    print(f"(3 N1 + 5 N2)|2,3> = {complex(amp).real:g} |{target.n1},{target.n2}>")
