"""Gadget signatures, double covers and boundary classification.

Run with ``python notebooks/01_gadget_signatures.py``.
"""

from permcount.gadgets import (
    XOR_PATTERN,
    bdc_gadget,
    builtin_gadget,
    concatenate,
    mu_pattern_check,
    predict_concat_signature,
    signature,
    verify_pattern,
)
from permcount.planarity import classify_bdc

# %% The four XOR gadgets: exact signatures and their residues mod 3.
# All four realize the XOR pattern (0,0,!=0,!=0,0,0) mod 3.
for name in ("g3_xor", "rl_xor", "lr_xor", "gstar_xor"):
    g = builtin_gadget(name)
    print(f"{name:10} dim={g.dim}  {signature(g)}  {signature(g, 3)}  xor={verify_pattern(g, XOR_PATTERN, 3)}")

# %% Doubling a gadget scales its signature by r1: the BDC block matrix has
# perm(A)^2 on the diagonal, and every minor picks up one more perm(A).
g3 = builtin_gadget("g3_xor")
print("BDC of g3:", signature(bdc_gadget(g3)))

# %% Concatenation composes signatures; the prediction needs no permanents.
lr = builtin_gadget("lr_xor")
print("lr+lr measured: ", signature(concatenate(lr, lr)))
print("lr+lr predicted:", predict_concat_signature(signature(lr), signature(lr)))

# %% Where do the double covers put the io nodes?  An XOR pattern fails the
# mu congruence, so none of these should have all four on the boundary.
for name in ("g3_xor", "rl_xor", "lr_xor", "gstar_xor"):
    g = builtin_gadget(name)
    print(f"{name:10} mu={mu_pattern_check(signature(g, 3))}  bdc={classify_bdc(g)}")
