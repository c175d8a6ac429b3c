"""Integer sets with |h±A| = 2hm - hs - h + 1, s = |A ∩ (-A)|: what does
A_abs = {|a| : a in A} look like?

With s >= 2 the set A_abs is shorter than A, because each pair {a, -a}
collapses to one absolute value.  The observed shape is an odd-spaced or
zero-started progression with m - floor(s/2) terms.
"""
from collections import Counter
from itertools import combinations

from signsum import INTEGERS, Subset, abs_set, sdeg, signed_sumset

h = 3
shapes = Counter()
for m in (3, 4, 5):
    for c in combinations(range(-8, 9), m):
        A = Subset(INTEGERS, c)
        s = sdeg(A)
        if len(signed_sumset(A, h)) != 2 * h * m - h * s - h + 1:
            continue
        ab = abs_set(A).elements
        if ab[0] > 0:
            kind = "odd" if ab == tuple(ab[0] * (2 * i + 1) for i in range(len(ab))) else "other"
        else:
            kind = "interval" if ab == tuple(ab[1] * i for i in range(len(ab))) else "other"
        shapes[(m, s, len(ab), kind)] += 1

print(" m  s  |A_abs|  m-floor(s/2)  shape     count")
for (m, s, n, kind), cnt in sorted(shapes.items()):
    print(f"{m:2} {s:2} {n:6}  {m - s // 2:9}     {kind:9} {cnt}")

# %% the smallest set where |A_abs| = m fails
A = Subset(INTEGERS, [-8, 0, 8])
print("A = {-8,0,8}: |3±A| =", len(signed_sumset(A, 3)), " A_abs =", "{" + abs_set(A).to_literal() + "}")
