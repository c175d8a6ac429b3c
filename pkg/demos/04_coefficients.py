"""Closed-form polynomial coefficients for h = 2, 3, 4 next to a brute
expansion on a dense numpy exponent grid."""
import numpy as np

from signsum import coeff_h2, coeff_h3, coeff_h4, symbolic_coefficient_oracle
from signsum.cli import factorize

# %%
for h, fn in ((2, coeff_h2), (3, coeff_h3), (4, coeff_h4)):
    for k in range(2, 5):
        v = fn(k)
        o = symbolic_coefficient_oracle(h, k)
        fs = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in factorize(v))
        print(f"h={h} k={k}: {v} = {fs}  oracle {'ok' if o == v else 'MISMATCH'}")

# %% the h = 4 polynomial term never vanishes: 32k^2 - 64k + 31 = 2(4k-4)^2 - 1 is odd
k = np.arange(2, 200, dtype=object)
print("all odd:", bool(np.all((32 * k * k - 64 * k + 31) % 2 == 1)))
