# coding: utf-8

# # Exact divergence on a small ball
#
# Breadth-first search enumerates the ball of radius 4 in the Cayley graph
# of SL_3(F_2[t]).  Inside it we compare the word metric with the degree
# proxy and measure detours that avoid a ball around the identity.

# In[1]:

from fractions import Fraction

import numpy as np

from fqdiv.algebra import get_field
from fqdiv.matgroup import UNDETERMINED, cayley_ball_bfs, divergence_scan, proxy_constant

ball = cayley_ball_bfs(4, 3, get_field(2))
print('elements:', len(ball))
print('sphere sizes:', ball.sphere_counts())
print('fitted proxy constant C:', proxy_constant(ball))


# For pairs (a, b) far enough from the identity, the shortest path from a
# to b that avoids the excluded ball is found by a blocked search.

# In[2]:

rows = divergence_scan(ball, Fraction(1, 4), 1, pairs=300, seed=0, min_through=6)
det = [r for r in rows if r['div_length'] != UNDETERMINED]
ratios = np.array([r['div_length'] / r['d_ab'] for r in det if r['d_ab']])
print(len(det), 'of', len(rows), 'pairs determined inside the ball')
print('detour / distance: max', ratios.max().round(3), ' mean', ratios.mean().round(3))
