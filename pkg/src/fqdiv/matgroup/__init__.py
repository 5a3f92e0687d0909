"""SL_n over F_q[t] and F_q[t, 1/t]: matrices, generator letters, words, metrics."""

from .matrix import (GroupMatrix, LAURENT, POLY, entry_deg, eps_large_entries, is_eps_large,
                     max_deg, proxy_dist)
from .letters import (GenLetter, anchor_entries, apply_letter, apply_to_columns, block, elem,
                      eval_word, generating_set, invert_word, letter_matrix, mono, s0_letters,
                      s1_letters, s2_letters, signed_swap, walk, word_from_json, word_to_json)
from .decompose import decompose_elementary, decomposition_word, elementary_product, expand_to_s0
from .ball import (UNDETERMINED, CayleyBall, bfs_length, cayley_ball_bfs, divergence_scan,
                   exact_divergence, excluded_radius, memory_budget, proxy_constant,
                   write_ball_csv, write_divergence_csv)
