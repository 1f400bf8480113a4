"""The best exponent in sqrt(3) s >= 10 r - r (2r/R)^lam, step by step."""

# %%
from fractions import Fraction

from certipoly.bestconstant import (
    boundary_cubic,
    boundary_power_form,
    certify_ratio_chain,
    fourth_derivative_factor,
    power_equality_gap,
    verify_power_inequality,
)
from certipoly.data import DataSet

ds = DataSet()
base, rhs = boundary_power_form()
print("base =", base)
print("rhs  =", rhs)
print("rhs numerator, monic:", boundary_cubic())

# %% the fourth derivative of g factors through p
print(fourth_derivative_factor(ds["p"]).holds)

# %% monotone chain: one root per level, refined to 1e-10
chain = certify_ratio_chain(ds["p"], ds.const("ratio_constant"), Fraction(1, 10**10))
print("x0 ~", chain.x0.decimal())
for step in chain.steps:
    print(f"level {step.level}: pattern {[s for _, _, s in step.sign_pattern]}, root ~ {step.root.decimal()}")

# %% the constant itself (note the digits after the sixth)
print("lambda_max in", chain.lambda_max.decimal(15), "width", float(chain.lambda_max.width))

# %% a few exponents: below, near and above the constant
for lam in (0, 5, Fraction(5977, 1000), 6):
    v = verify_power_inequality(lam, chain.x0)
    print(lam, v.verdict, len(v.pieces), "pieces")

# %% the extremal triangle
print("relative gap", float(power_equality_gap(chain.x1, chain.lambda_max)))
