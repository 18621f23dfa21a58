# Convergence of the two exact oracles
#
# Ritz values in the monomial basis z^n/sqrt(n!) fall monotonically with N;
# finite differences converge as h^2 and one Richardson step removes that.

from bargmann_ritz import power2n, quartic, ritz_spectrum
from bargmann_ritz.fd import Grid1D, fd_levels, richardson_ratio

m = quartic(1.0)
prev = None
for N in (8, 16, 32, 64, 128):
    e = ritz_spectrum(m, N, 1).values[0]
    step = "" if prev is None else f"  change {prev - e:.2e}"
    print(f"N={N:4d}  E0={e:.14f}{step}")
    prev = e

print()
for pts in (257, 513, 1025, 2049):
    e = fd_levels(m, Grid1D(6.0, pts))[0]
    print(f"FD points={pts:5d}  E0={e:.12f}")
print(f"error ratio per halving: {richardson_ratio(m, 6.0):.4f}")

# Higher powers need more basis states: x^6 couples n to n +- 6
for n in (2, 3, 4):
    vals = [ritz_spectrum(power2n(n, 0.5), N, 1).values[0] for N in (32, 64, 128)]
    print(f"x^{2 * n}: " + "  ".join(f"{v:.12f}" for v in vals))
