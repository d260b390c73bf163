"""Check the Iwahori Gelfand-Graev relations on a window of lattice vectors."""
from coverhecke.cover import make_cover
from coverhecke.heckemod import GGModule, default_window, sl2_special, verify_gg_relations

if __name__ == "__main__":
    c = make_cover("A", 2, 2)
    M = GGModule(c, 5)
    for rep in verify_gg_relations(M, window=default_window(c, 4)):
        print(f"{rep['relation']:>12s}  {rep['status']}  ({rep['vectors_checked']} vectors)")

    rep = sl2_special(make_cover("A", 1, 4, Q=-1), 5)
    print("SL2 n=4 special element:", rep["status"],
          "normalized eigenvalue squared =", rep["eigenvalue_squared"])
