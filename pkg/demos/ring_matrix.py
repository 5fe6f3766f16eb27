"""Fractional Laplacian of a periodic ring: matrix, spectrum, ring size limit.

Run:  python3 demos/ring_matrix.py
"""
import numpy as np

from fraclat import (
    ChainSpec,
    FractionalOrder,
    build_laplacian_1d,
    element_infinite_closed,
    element_periodic_bloch,
    element_periodic_images,
)


def main():
    order = FractionalOrder(1.3)
    n = 8
    matrix = build_laplacian_1d(order, ChainSpec(n))
    print(f"Ring of {n} sites at alpha={order.alpha}: first matrix row")
    print("  " + "  ".join(f"{v:+.6f}" for v in matrix.first_row))
    print(f"  row sum {matrix.row_sum():+.2e} (translation invariance)")

    eigenvalues = np.sort(matrix.eigenvalues())
    print("\nSpectrum (all non positive, one zero mode):")
    print("  " + "  ".join(f"{v:+.6f}" for v in eigenvalues))

    print("\nSame elements by the image sum over infinite chain copies:")
    for p in range(n):
        bloch = element_periodic_bloch(order, ChainSpec(n), p)
        images = element_periodic_images(order, ChainSpec(n), p, tol=1e-12)
        print(f"  p={p}: mode sum {bloch:+.12f}   image sum {images:+.12f}   gap {abs(bloch - images):.1e}")

    print("\nLarger rings forget the period (gap to the infinite chain at p=1):")
    reference = element_infinite_closed(order, 1)
    for size in (16, 64, 256, 1024, 4096):
        value = element_periodic_bloch(order, ChainSpec(size), 1)
        print(f"  N={size:>5}: gap {abs(value - reference):.3e}")
    print("(decays faster than 1/N^alpha)")


if __name__ == "__main__":
    main()
