"""
Distributions on Z_p and their Volkenborn integrals
===================================================

A distribution is a table of values on the cosets a + p^j Z_p that
satisfies the distribution relation.  Run with ``python3 01_distributions.py``.
"""

# %%
from fractions import Fraction

from padicdist import haar, dirac, check_distribution_relation
from padicdist.volkenborn import (
    MahlerFunction,
    fourier_bound,
    fourier_coefficient,
    volkenborn_defect,
    volkenborn_integral,
)

p = 3
mu = haar(p, 5)
print("haar relation residual:", check_distribution_relation(mu))
print("haar defect:", volkenborn_defect(mu))

# %%
# Riemann sums of x and x^2 approach -1/2 and 1/6, one digit per level
for k in (1, 2):
    rep = volkenborn_integral(MahlerFunction.polynomial([0] * k + [1]), mu)
    print(f"int x^{k} =", rep.value, " defect", rep.cauchy_defect)

# %%
# binomial moments (-1)^m / (m + 1)
for m in range(7):
    v = volkenborn_integral(MahlerFunction.binomial(m), mu).value
    print(m, v - Fraction((-1) ** m, m + 1))

# %%
# a Dirac mass is bounded, so its coefficients stay below c m
d = dirac(7, p, 4)
c = fourier_bound(d)
print("c =", c)
print([fourier_coefficient(d, m, c).within_bound for m in range(20)])
