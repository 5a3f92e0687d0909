# coding: utf-8

# # The two anchor matrices
#
# Both anchors are 2x2 matrices over F_q[t] with determinant 1.  Over the
# completion F_q((1/t)) each has an expanding eigenvalue of absolute value q
# and a contracting one of absolute value 1/q.  This notebook computes them
# by a fixed-point iteration and looks at the cones of vectors that no power
# of an anchor shrinks by much.

# In[1]:

from fqdiv.algebra import LaurentPoly, Poly, get_field
from fqdiv.sol import anchor, banach_eigen, cone_margin, short_unipotent_word, unipotent_lower
from fqdiv.matgroup import eval_word

F = get_field(2)
A1, A2 = anchor(1, F), anchor(2, F)
print(A1)
print(A2)


# The iteration z -> (z + t)/(z + t + 1) contracts the unit ball by 1/q^2,
# so every step gains two more correct coefficients.

# In[2]:

e = banach_eigen(A1, 32)
print('w         =', e.w)
print('lambda_+  =', e.lam_plus, ' valuation', e.lam_plus.val)
print('lambda_-  =', e.lam_minus, ' valuation', e.lam_minus.val)
print('valuation gained per step:', e.contraction_drops()[:12])
print('residual exponent:', e.residual_exponent)


# The product of the two eigenvalues is 1 up to the working precision.

# In[3]:

print((e.lam_plus * e.lam_minus).truncate(32))


# ## Cone margins
#
# cone_margin(v, A) is the least value of log_q(|v A^k| / |v|) over all
# powers k.  A margin of 0 means no power shrinks the vector at all.
# Restricting to k >= 0 gives the forward margin.

# In[4]:

t = LaurentPoly.monomial(F, 1, 1)
one = LaurentPoly.one(F)
for v in [(one, LaurentPoly.zero(F)), (t, one), (t * t + one, t)]:
    print(v[0], v[1], ' margins', cone_margin(v, A1), cone_margin(v, A2),
          ' forward only', cone_margin(v, A1, kmin=0), cone_margin(v, A2, kmin=0))


# ## Short words for lower unipotents
#
# A lower unipotent matrix with first column (1, x, y) has a word over the
# block letter and the translations whose length grows linearly with the
# degree of x and y, even though its entries have exponentially many
# possible values.

# In[5]:

from fqdiv.algebra import random_poly
import random

rng = random.Random(0)
for d in (4, 8, 16, 32):
    x, y = random_poly(F, d, rng), random_poly(F, d, rng)
    w = short_unipotent_word(x, y, 1, F)
    assert eval_word(w, 3, F) == unipotent_lower(x, y, F)
    print(f'degree {d:2d}: word length {len(w)}')
