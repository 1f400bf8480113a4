"""The best k in s >= 3 sqrt(3) r + k (1 - (2r/R)^5) r, and where the resultant comes from."""

# %%
from fractions import Fraction

from certipoly.bestconstant import certify_isoceles_constant, linear_equality_gap
from certipoly.data import DataSet
from certipoly.resultant import (
    radical_elimination,
    rationalize_critical_equation,
    resultant_in_t,
    resultant_univariate,
    verify_factorization,
)

ds = DataSet()
consts = ds.const("isoceles_constant")

# %% squaring the critical equation gives p2, with extra factors (t+1)(2t-1)^3
chk = rationalize_critical_equation(ds["critical"], Fraction(consts["radical_coefficient"]), ds["p2"])
print("identity holds:", chk.holds, "degree", chk.degree)

# %% t1 is a minimum of h, t2 is extraneous
r = certify_isoceles_constant(ds["p2"], ds["p4"], ds["p5"], ds["critical"], consts, Fraction(1, 10**10))
print("t1 ~", r.t1.decimal(), " t2 ~", r.t2.decimal(), "(critical equation there:", r.t2_certificate.sign + ")")
print("k0 in", r.k0.decimal(12))

# %% eliminating both radicals: eliminant = cofactor(t) * p3(t, k)
e = radical_elimination()
print("cofactor:", e.cofactor.to_string("t"))
print("reduced eliminant equals p3:", e.reduced == ds["p3"])

# %% the resultant in t and its factorization
R = resultant_in_t(ds["p2"], ds["p3"])
cof = resultant_univariate(ds["p2"], e.cofactor)
print("deg R =", R.degree, " Res(p2, cofactor) =", cof, "= 2^78 5^8:", cof == 2 ** 78 * 5 ** 8)
print("R * Res(p2, cofactor) == m p4 p5:", verify_factorization(R * cof, [ds["p4"], ds["p5"]], ds["m"]))

# %% extremal triangle 2t1 : 1 : 1
print("relative gap", float(linear_equality_gap(r.t1.as_interval(), r.k0)))
