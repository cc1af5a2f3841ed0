"""Shapes of effective canonical divisors: there is always an empty cell.

Random effective representatives of the canonical class on a chain of
loops never occupy every cell gamma_i -- the key geometric input to the
independence experiments.
"""
from tropdiv import (SplitMix64, canonical_divisor, canonical_shape_check,
                     default_generic_chain, random_R_member, shape_profile)


def main():
    g = 4
    chain = default_generic_chain(g)
    G = chain.graph
    K = canonical_divisor(G)
    rng = SplitMix64(777)

    print(f"genus {g} chain; 10 random effective representatives of |K|\n")
    for t in range(10):
        f = random_R_member(G, K, rng)
        D = K + f.divisor()
        assert D.is_effective
        prof = shape_profile(D, chain)
        empty = canonical_shape_check(D, chain)
        cells = "".join("x" if c else "." for c in prof.cells)
        print(f"  rep {t}: cells [{cells}]  first empty cell = gamma_{empty}")

    print("\nevery representative leaves at least one cell empty")


if __name__ == "__main__":
    main()
