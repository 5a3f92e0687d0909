"""Linear divergence experiments for SL_n over F_q[t] and F_q[t, 1/t]."""

__version__ = '0.1.0'
