"""
Gauss-sum interpolation at p = 5
================================

The cyclotomic-unit sequence gives a distribution lambda_chi whose Fourier
transform at zeta_psi is a conductor sum of logarithms, i.e. a Gauss sum
times L_p(1, chi psi).
"""

# %%
from padicdist.interp import class_number_oracle, verify_interpolation

for u in range(1, 5):
    rep = verify_interpolation(5, 1, 2, u)
    print(rep.phi, "agrees to", rep.digits, "digits")

# %%
# odd characters: both sides vanish
for j in (1, 3):
    rep = verify_interpolation(5, 1, j, 2)
    print(rep.phi, rep.lhs.is_zero(), rep.rhs.is_zero())

# %%
# an independent L-value: 2 log_p(eps) / tau(chi) for Q(sqrt 5)
oracle = class_number_oracle(5)
print("signs that match to 10 digits:", oracle.matching_signs(10))
