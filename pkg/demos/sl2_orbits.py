"""Orbit census of the SL_2 covers with Q = -1.

For each n the free, trivial and non-splitting orbits of W on X_{Q,n} are
listed; a non-splitting orbit shows up exactly when n* = n / gcd(n, 2) is even.
"""
from coverhecke.cover import make_cover
from coverhecke.orbits import enumerate_orbits

if __name__ == "__main__":
    for n in range(1, 13):
        c = make_cover("A", 1, n, Q=-1)
        orbs = enumerate_orbits(c)
        kinds = []
        for o in orbs:
            tag = "free" if o.free else "trivial"
            if not o.splitting:
                tag += "*"
            kinds.append(f"{[int(v) for v in o.rep]}:{tag}")
        print(f"n={n:2d}  |X|={len(c.X):2d}  orbits={len(orbs):2d}  " + " ".join(kinds))
    print("* = non-splitting")
