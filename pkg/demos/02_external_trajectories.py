# coding: utf-8

# # Paths that stay away from the identity
#
# For two elements g1, g2 of SL_3(F_q[t]) the connector builds a word from
# g1 to g2 whose every prefix stays far from the identity, measured by the
# proxy rho(g) = 1 + max degree of an entry.  The word is returned as a
# certificate that can be re-checked independently.

# In[1]:

import random
from fractions import Fraction

import numpy as np

from fqdiv.algebra import get_field
from fqdiv.trajectories import external_connect, fit_constants, proxy_dist, random_element

F = get_field(2)
rng = random.Random(1)
g1, g2 = random_element(F, 12, rng), random_element(F, 12, rng)
print('rho(g1) =', proxy_dist(g1), ' rho(g2) =', proxy_dist(g2))


# In[2]:

cert = external_connect(g1, g2, Fraction(1, 2))
print('verified:', cert.verify())
print('length:', cert.length, ' min prefix proxy:', cert.min_prefix_proxy)
for s in cert.stage_breakdown:
    print(f"  {s['stage']:24s} {s['length']:4d} letters")


# The proxy along the path: it dips but never comes near 1.

# In[3]:

from fqdiv.matgroup import walk

profile = np.array([proxy_dist(g) for g in walk(cert.start, cert.word)])
print('min', profile.min(), ' max', profile.max(), ' mean', round(profile.mean(), 1))
print(np.histogram(profile, bins=6)[0])


# ## Fitted constants across scales
#
# delta1 is the worst ratio of the closest approach to the endpoint size,
# and delta3 the worst ratio of word length to rho(g1^-1 g2).  Stable values
# across scales are the experimental trace of linear divergence.

# In[4]:

for rho in (10, 20, 40):
    certs = [external_connect(random_element(F, rho, rng), random_element(F, rho, rng))
             for _ in range(10)]
    f = fit_constants(certs)
    print(f'rho={rho:3d}  delta1={float(f["delta1"]):.3f}  delta3={float(f["delta3"]):.1f}')
