"""Exhaustive minima of |h±A| over m-subsets of Z11 with fixed symmetry degree,
next to the closed-form lower bound and the explicit extremal sets."""
import numpy as np

from signsum import RhoQuery, bound_rho_s, parse_group, rho, rho_s_witness, signed_sumset, EmptyClassError

g = parse_group("Z11")
h = 2

# %% table of rho±^(s)(Z11, m, 2): rows m, columns s (-1 marks an empty class)
table = np.full((g.order, g.order), -1, dtype=int)
for m in range(1, g.order + 1):
    for s in range(1, m + 1):
        try:
            table[m - 1, s - 1] = rho(RhoQuery(g, m, h, "signed", f"sdeg={s}")).value
        except EmptyClassError:
            pass
print(table)

# %% where the bound min(p, 2hm - hs - h + 1) is attained
bound = np.array([[bound_rho_s(g.p, m, h, s) if s <= m else -1 for s in range(1, 12)] for m in range(1, 12)])
tight = (table == bound) & (table >= 0)
print("attained exactly at 2m - s <= p:", bool(np.all(tight == np.array(
    [[s <= m and 2 * m - s <= g.p for s in range(1, 12)] for m in range(1, 12)]))))

# %% the construction behind the equality case
for m, s in [(4, 1), (4, 2), (5, 3)]:
    A = rho_s_witness(g, m, s)
    print(f"m={m} s={s}: A={{{A.to_literal()}}}  |2±A|={len(signed_sumset(A, h))}  bound={bound_rho_s(g.p, m, h, s)}")
