"""Scattering matrices of an A_2 cover and the cocycle relation along reduced words."""
import random

from coverhecke.cover import make_cover
from coverhecke.scatter import cocycle_check, random_unitary_chi, rank_one_matrix

if __name__ == "__main__":
    c = make_cover("A", 2, 3)
    chi = random_unitary_chi(c, 7, random.Random(1))
    M = rank_one_matrix(c, 0, chi)
    print("rank-one matrix for the first simple reflection:")
    for row in M.entries:
        print("  " + "  ".join(f"{complex(x).real:+.4f}{complex(x).imag:+.4f}j" for x in row))

    rep = cocycle_check(c, 7, samples=10, roots_of_unity=3, seed=0)
    print("cocycle:", rep["status"], "block diagonal:", rep["block_diagonal"], "samples:", rep["samples"])
