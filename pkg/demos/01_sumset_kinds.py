"""A tour of the four sumset kinds on a few small sets."""
from signsum import INTEGERS, Subset, parse_group, parse_subset, union_fold, interval

# %% the same set, four ways of adding it to itself twice
A = Subset(INTEGERS, [1, 2])
for kind in ("plain", "restricted", "signed", "restricted-signed"):
    S = union_fold(A, (2,), kind)
    print(f"{kind:>18}: {{{S.to_literal()}}}")

# %% signed sums see the negatives: 0 is missing here because A ∩ (-A) is empty
B = Subset(INTEGERS, [-1, 1, 2])
print("2±{-1,1,2} =", "{" + union_fold(B, (2,), "signed").to_literal() + "}")

# %% H-fold unions, e.g. H = [0, 3]
print("[0,3]±{1} =", "{" + union_fold(Subset(INTEGERS, [1]), interval(3), "signed").to_literal() + "}")

# %% the two worked examples in cyclic groups
g17 = parse_group("Z17")
S17 = union_fold(parse_subset(g17, "1,2,3,4,5"), (2,), "restricted-signed")
print("Z17:", len(S17), "elements, missing", sorted(set(range(17)) - set(S17)))

g41 = parse_group("Z41")
S41 = union_fold(parse_subset(g41, "0,1,3,5,7,9,11,13,15"), (3,), "restricted-signed")
print("Z41:", len(S41), "elements, missing", sorted(set(range(41)) - set(S41)))

# %% products and field models use tuples
k = parse_group("F3^2")
C = parse_subset(k, "(0,1),(1,1)")
print("2±C in F3^2 =", "{" + union_fold(C, (2,), "signed").to_literal() + "}")
