# Moments of exp(alpha z^2) by 2D Gauss-Hermite quadrature
#
# In the Segal-Bargmann picture the state exp(alpha z^2) looks symmetric under
# z -> -z, which tempts one to set <z^2> = 0. Quadrature says otherwise.

from bargmann_ritz import BargmannSqueezed, Observable, bargmann_expectation
from bargmann_ritz import closed_forms as cf
from bargmann_ritz.quadrature import HoloTrial, anisotropy_quadrature, bargmann_inner_value

print(f"{'alpha':>6} {'<x^2> quad':>12} {'tabulated':>12} {'(1+2a)/(2(1-2a))':>18}")
for a in (-0.3, -0.1, 0.0, 0.1, 0.2, 0.3):
    e = bargmann_expectation(Observable.X2, BargmannSqueezed(a))
    exact = 0.5 * (1 + 2 * a) / (1 - 2 * a)
    print(f"{a:6.2f} {e.value:12.8f} {cf.squeezed_x2(a):12.8f} {exact:18.8f}")

# The number operator <z d/dz> agrees with the table
a = 0.25
n = bargmann_expectation(Observable.NUMBER, BargmannSqueezed(a)).value
print(f"\n<N> at alpha={a}: quadrature {n:.12f}, table {cf.squeezed_number(a):.12f}")

# Anisotropy <x^2> - <p^2> flips sign with alpha; the tabulated form is even
print()
for a in (-0.2, -0.1, 0.1, 0.2):
    print(f"alpha={a:5.2f}  quadrature {anisotropy_quadrature(a):+.8f}"
          f"  4a/(1-4a^2) {4 * a / (1 - 4 * a * a):+.8f}  table {cf.anisotropy(a):+.8f}")

# Quadrature error against order, close to the normalizability edge

psi = HoloTrial.from_trial(BargmannSqueezed(0.45))
exact = (1 - 4 * 0.45**2) ** -0.5
for order in (16, 32, 64, 128, 256):
    err = abs(bargmann_inner_value(psi, psi, order).real - exact)
    print(f"order {order:4d}: norm error {err:.2e}")
