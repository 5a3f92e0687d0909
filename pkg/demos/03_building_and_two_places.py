# coding: utf-8

# # Lattice classes and the two-place group
#
# Over the completion at a place of F_q(t) a matrix moves the standard
# lattice to another vertex of the building.  The distance between two
# vertices is read off from Smith valuations, computed here by pivoting and
# checked against gcds of minors.

# In[1]:

import random

from fqdiv.algebra import get_field
from fqdiv.building import (LatticeClass, LocalRingContext, orbit, relative_valuations,
                            smith_valuations, smith_valuations_minors, vertex_distance)
from fqdiv.matgroup import GroupMatrix

F = get_field(2)
inf = LocalRingContext.infinite(F)
L0 = LatticeClass.standard(3, inf)

g = GroupMatrix.parse('[[1,t^3,0],[0,1,t],[0,0,1]]', F)
print('smith valuations at infinity:', smith_valuations(g, inf), smith_valuations_minors(g, inf))
y = orbit(g, L0)
print('g * L0 =', y)
print('relative valuations', relative_valuations(L0, y), ' distance', vertex_distance(L0, y))


# Matrices over F_q[1/t] fix the standard lattice at infinity.

# In[2]:

u = GroupMatrix.parse('[[1,t^3+t,0],[0,1,0],[t^2,t^5+t^3+t^2,1]]', F).sigma()
print(u)
print('fixes L0:', orbit(u, L0) == L0)


# ## Two places at once
#
# Over F_q[t, 1/t] distances are measured by the product proxy, which adds
# the spreads at infinity and at 0.  A Birkhoff factorization
# g = g_minus * D * g_plus separates the two places.

# In[3]:

from fqdiv.sarith import ProductProxy, birkhoff_factor, external_connect_s, random_laurent_element

rng = random.Random(3)
g = random_laurent_element(F, 8, rng)
print(g, ProductProxy.of(g))
gm, D, gp = birkhoff_factor(g)
print('g_minus =', gm)
print('D       =', D)
print('g_plus  =', gp)
print('round trip:', gm * D * gp == g)


# The two-place connector runs the one-place connector at each place and
# crosses between them with a diagonal word.

# In[4]:

a, b = random_laurent_element(F, 10, rng), random_laurent_element(F, 10, rng)
cert = external_connect_s(a, b)
print('verified:', cert.verify(), ' length', cert.length,
      ' closest approach', cert.min_prefix_proxy, ' endpoints', cert.endpoint_proxies)
for s in cert.stage_breakdown:
    print(f"  {s['stage']:28s} {s['length']:4d}")
