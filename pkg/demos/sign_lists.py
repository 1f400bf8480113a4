"""Counting real roots without finding them: revised sign lists of the data polynomials."""

# %%
from certipoly.data import DataSet
from certipoly.discrimination import count_roots, discriminant_sequence, revised_sign_list
from certipoly.isolation import isolate_real_roots
from certipoly.polynomial import Poly

X = Poly.x()

# %% a warm-up: x^4 - 1 has two real roots and one imaginary pair
f = X ** 4 - 1
print(discriminant_sequence(f).values)
print(revised_sign_list(f), count_roots(f))

# %% zeros in the middle of the list get revised
g = X ** 3 + 1
print(discriminant_sequence(g).values, "->", revised_sign_list(g))

# %% the three lists used by the suites
ds = DataSet()
for name in ("p", "p2", "p5"):
    sl = revised_sign_list(ds[name])
    rc = count_roots(ds[name])
    print(f"{name}: degree {ds[name].degree}, {sl.sign_changes()} sign changes, "
          f"{rc.distinct_real} real roots")
    print("   ", sl)

# %% cross-check with Sturm isolation
for name in ("p", "p2", "p5"):
    print(name, len(isolate_real_roots(ds[name])))
