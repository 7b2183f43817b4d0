"""Searching for XOR gadgets mod 3 and surveying the mu/circular-planarity link.

Run with ``python notebooks/03_search_and_survey.py``.
"""

from permcount.search import SearchConfig, conjecture_survey, search_gadgets

# %% Random search over 6x6 (0/1) matrices with the XOR pattern mod 3.
certs = search_gadgets(SearchConfig(dim=6, p=3, budget=200_000, seed=0, max_results=3))
for c in certs:
    print(c.signature, c.signature_mod, c.bdc_classification, "verified" if c.verify() else "BAD")
print(certs[0].to_text() if certs else "no hits")

# %% Tabulate mu congruence x BDC classification over random gadgets.
# Gadgets with every residue nonzero are the conjecture's exception; the
# ones whose double cover is extendable are listed separately for review.
rep = conjecture_survey(dim=5, p=3, budget=1000, seed=1)
print(rep.format())
for c in rep.exception_hits[:3]:
    print(c.signature_mod, c.bdc_classification, c.gadget.io_pairs)
