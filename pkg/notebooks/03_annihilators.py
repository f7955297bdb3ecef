"""
Unit ratios and the group-ring elements M_chi
=============================================
"""

# %%
from padicdist.interp import (
    annihilator_M,
    regulator_product_check,
    scalar_coeffs,
    select_tame_index,
    unit_ratio_table,
)

rows = unit_ratio_table(5, 1, 2)
for r in rows:
    print(r.as_row())
c = select_tame_index(rows)
print("selected tame index:", c)

# %%
m1 = annihilator_M(5, 2, c, 1)
print("integral:", m1.integral, "digits:", m1.digits)
print([str(x) for x in scalar_coeffs(m1.M)])

# %%
# the image of the level-2 element is the level-1 element
m2 = annihilator_M(5, 2, c, 2)
print([str(a - b) for a, b in zip(m2.M.image(1).coeffs, m1.M.coeffs)])

# %%
rep = regulator_product_check(5, 2, c, 1)
print(rep.to_json())
