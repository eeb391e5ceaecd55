"""
Exact Clifford traces
=====================

Words in the leaf generators c(f_i) and the two normal families c(h_s),
chat(h_s) reduce to signed canonical words; only the empty word has a
nonzero trace.
"""

# %%
from subdirac.clifford import AlgebraElement, Dims, cf, ch, chat, mul, trace, volume_element
from subdirac.oracle import build_rep, oracle_trace

d = Dims(1, 2)
w = AlgebraElement.from_word(d, [chat(1), chat(2), chat(2), chat(1)])
print(w, trace(w))

# %%
# the same trace from explicit 8x8 matrices
rep = build_rep(d)
print(oracle_trace(w, rep))

# %%
# normal chirality squares to one
tau = volume_element(d)
print(tau, mul(tau, tau))

# %%
# mixed word with a repeated leaf generator
print(AlgebraElement.from_word(d, [cf(1), ch(1), cf(1)]))
