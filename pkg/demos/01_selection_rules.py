"""Why a split valence band lets light write a qubit onto a spin.

Walks through the angular-momentum algebra: the LS decomposition of the
band-edge states, the per-polarization dipole amplitudes, and the sqrt(2)
imbalance that the compensation prefilter removes.
"""

import math

from polspin import AngularMomentumState, expand_jmj
from polspin.angular import CONDUCTION, HEAVY_HOLE, LIGHT_HOLE
from polspin.transfer import dipole_matrix_element

print("=== the four J=3/2 valence states in the |mL, mS> basis ===")
for mj in (-1.5, -0.5, 0.5, 1.5):
    band = LIGHT_HOLE if abs(mj) == 0.5 else HEAVY_HOLE
    terms = expand_jmj(AngularMomentumState(band, j=1.5, mj=mj))
    pretty = " + ".join(f"{c:+.4f}|mL={t.ml}, mS={t.ms:+.1f}>" for c, t in terms)
    print(f"  |3/2, {mj:+.1f}>  =  {pretty}")

print()
print("The topmost light-hole state |3/2, +1/2> mixes two spin components,")
print("weighted sqrt(2/3) and sqrt(1/3); that is what lets two photon")
print("polarizations reach two electron spins from ONE hole state.")
print()

lh_up = AngularMomentumState(LIGHT_HOLE, j=1.5, mj=+0.5)
c_up = AngularMomentumState(CONDUCTION, j=0.5, mj=+0.5)
c_dn = AngularMomentumState(CONDUCTION, j=0.5, mj=-0.5)

print("=== dipole amplitudes out of |3/2, +1/2> ===")
for pol in ("z", "x"):
    for c, label in ((c_up, "mS=+1/2"), (c_dn, "mS=-1/2")):
        amp = dipole_matrix_element(lh_up, c, pol)
        print(f"  {pol}-polarized -> {label}: {amp:+.6f}")

a_z = dipole_matrix_element(lh_up, c_up, "z")
a_x = dipole_matrix_element(lh_up, c_dn, "x")
print()
print(f"z/x amplitude ratio: {a_z / a_x:.12f}  (sqrt(2) = {math.sqrt(2):.12f})")
print("Each polarization feeds exactly one spin - the selection rules are")
print("exclusive - but with unequal strength.  Case A must compensate this;")
print("an in-plane field (case B) avoids it altogether.")
print()

print("=== why heavy holes cannot do this ===")
hh = AngularMomentumState(HEAVY_HOLE, j=1.5, mj=+1.5)
print("  |3/2, +3/2> =", [(round(c, 4), (t.ml, t.ms)) for c, t in expand_jmj(hh)])
print("  A single spin component: circular light reaches one spin only,")
print("  so no superposition can be written from a heavy-hole level.")
