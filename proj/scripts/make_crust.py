"""Write the bundled crust table from the SLy low-density piecewise polytrope."""
import argparse

import numpy as np

RHO_BREAK = [0.0, 2.44034e7, 3.78358e11, 2.62780e12]  # g cm^-3
GAMMA = [1.58425, 1.28733, 0.62223, 1.35692]
K0 = 6.80110e-9  # P/c^2 = K rho^Gamma in g cm^-3
AMU_G = 1.66054e-24
C2 = 8.987551787e20
ERG_CM3_PER_MEV_FM3 = 1.602176634e33


def polytrope_constants():
    K = [K0]
    for i in range(1, 4):
        K.append(K[i - 1] * RHO_BREAK[i] ** (GAMMA[i - 1] - GAMMA[i]))
    a = [0.0]
    for i in range(1, 4):
        r = RHO_BREAK[i]
        a.append(a[i - 1] + K[i - 1] / (GAMMA[i - 1] - 1) * r ** (GAMMA[i - 1] - 1)
                 - K[i] / (GAMMA[i] - 1) * r ** (GAMMA[i] - 1))
    return K, a


def crust_point(n, K, a):
    rho = n * 1e39 * AMU_G
    i = max(j for j in range(4) if rho >= RHO_BREAK[j])
    p = K[i] * rho ** GAMMA[i]
    e = (1 + a[i]) * rho + K[i] / (GAMMA[i] - 1) * rho ** GAMMA[i]
    f = C2 / ERG_CM3_PER_MEV_FM3
    return e * f, p * f


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/crust/sly_crust.csv")
    ap.add_argument("--points", type=int, default=200)
    ap.add_argument("--n-min", type=float, default=1e-10)
    ap.add_argument("--n-max", type=float, default=0.08)
    args = ap.parse_args()

    K, a = polytrope_constants()
    n = np.geomspace(args.n_min, args.n_max, args.points)
    rows = np.array([(x,) + crust_point(x, K, a) for x in n])
    e, p = rows[:, 1], rows[:, 2]
    cs2 = np.empty_like(e)
    cs2[1:-1] = (p[2:] - p[:-2]) / (e[2:] - e[:-2])
    cs2[0] = (p[1] - p[0]) / (e[1] - e[0])
    cs2[-1] = (p[-1] - p[-2]) / (e[-1] - e[-2])
    with open(args.out, "w") as out:
        out.write("# SLy piecewise polytrope crust, %d rows\n" % len(n))
        out.write("rho_b_fm3,energy_density_MeV_fm3,pressure_MeV_fm3,cs2,segment\n")
        for (x, ei, pi), c in zip(rows, cs2):
            out.write("%.12e,%.12e,%.12e,%.12e,crust\n" % (x, ei, pi, c))


if __name__ == "__main__":
    main()
