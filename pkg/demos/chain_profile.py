"""Infinite chain coupling profiles: two routes, integer degeneration, tails.

Run:  python3 demos/chain_profile.py
"""
import math

from fraclat import FractionalOrder, element_asymptotic, element_infinite_closed, element_infinite_quadrature


def main():
    print("Coupling profile f(p) on the infinite chain, closed form vs quadrature")
    print(f"{'p':>3} " + " ".join(f"{f'alpha={a}':>22}" for a in (0.5, 1.0, 2.0, 3.5)))
    orders = [FractionalOrder(a) for a in (0.5, 1.0, 2.0, 3.5)]
    for p in range(8):
        cells = []
        for order in orders:
            closed = element_infinite_closed(order, p)
            quad = element_infinite_quadrature(order, p)
            cells.append(f"{closed:+.12f}|{abs(closed - quad):.0e}")
        print(f"{p:>3} " + " ".join(f"{c:>22}" for c in cells))
    print("(each cell: closed form value | gap to the independent integral route)")

    print("\nInteger orders collapse to signed binomial stencils:")
    for alpha, label in ((2.0, "second difference"), (4.0, "biharmonic")):
        order = FractionalOrder(alpha)
        row = [element_infinite_closed(order, p) for p in range(6)]
        print(f"  alpha={alpha}: {[round(v, 12) for v in row]}  ({label}, exact zeros beyond)")

    print("\nPower law tail f(p) ~ -gamma(alpha+1) sin(alpha pi/2)/pi * p^-(alpha+1):")
    for alpha in (0.5, 1.5):
        order = FractionalOrder(alpha)
        for p in (50, 200, 800):
            exact = element_infinite_closed(order, p)
            limit = element_asymptotic(order, p)
            print(
                f"  alpha={alpha} p={p:>4}: element {exact:+.6e}  limit {limit:+.6e}"
                f"  relative gap {abs(exact / limit - 1.0):.2e}"
            )
    print("(the gap closes as 1/p^2)")


if __name__ == "__main__":
    main()
