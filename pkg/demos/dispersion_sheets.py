"""Normalized dispersion sheets and their universal crossing point.

Run:  python3 demos/dispersion_sheets.py
"""
import math

from fraclat import FractionalOrder, dispersion_1d, normalized_dispersion_2d


def main():
    alphas = (1.0, 1.5, 2.0, 3.0)
    print("2D mode frequencies along the zone diagonal, normalized so the")
    print("classical sheet reaches 1 at the corner:")
    header = f"{'kappa':>8} " + " ".join(f"{f'alpha={a}':>10}" for a in alphas)
    print(header)
    steps = 8
    for i in range(steps + 1):
        kappa = math.pi * i / steps
        cells = [normalized_dispersion_2d(FractionalOrder(a), kappa, kappa) for a in alphas]
        print(f"{kappa:8.4f} " + " ".join(f"{v:10.6f}" for v in cells))

    print("\nEvery sheet passes through 2^-3/2 where the lattice eigenvalue is 1")
    print("(on the axis that is kappa = pi/3):")
    kappa = math.pi / 3.0
    target = 2.0**-1.5
    for a in alphas:
        value = normalized_dispersion_2d(FractionalOrder(a), kappa, 0.0)
        print(f"  alpha={a}: {value:.15f}   gap to 2^-3/2 {abs(value - target):.1e}")

    print("\n1D squared dispersion at the zone edge is omega_sq * 2^alpha:")
    for a in alphas:
        order = FractionalOrder(a)
        print(f"  alpha={a}: {dispersion_1d(order, math.pi):.10f}  (2^alpha = {2.0**a:.10f})")


if __name__ == "__main__":
    main()
