import numpy as np
import pytest

from permcount.errors import BadSearchConfig
from permcount.gadgets import EQUALITY_PATTERN, Exact, SignaturePattern, Signature, Zero, XOR_PATTERN, builtin_gadget, signature
from permcount.linalg import permanent
from permcount.planarity import BdcClass
from permcount.search import (
    GadgetCertificate,
    SearchConfig,
    conjecture_survey,
    is_counterexample_candidate,
    is_exception_order_hit,
    perm_batch,
    search_gadgets,
    verify_certificate,
)


def test_config_validation():
    for kw in ({"budget": 0}, {"dim": 3}, {"dim": 9}, {"p": 1}, {"max_results": 0},
               {"require_classification": BdcClass.BOTH}, {"pairs": ((0, 1), (0, 2))}):
        with pytest.raises(BadSearchConfig):
            SearchConfig(dim=kw.pop("dim", 6), **kw)
    impossible = SignaturePattern((Exact(5), Zero, Zero, Zero, Zero, Zero))
    with pytest.raises(BadSearchConfig):
        SearchConfig(dim=6, p=3, pattern=impossible, budget=1)
    cfg = SearchConfig(dim=6, require_classification="Connectable")
    assert cfg.require_classification is BdcClass.CONNECTABLE


def test_perm_batch_matches_ryser():
    rng = np.random.default_rng(71)
    for k in (1, 3, 6, 8):
        mats = rng.integers(0, 2, size=(20, k, k))
        got = perm_batch(mats)
        assert [int(x) for x in got] == [permanent(m.tolist()) for m in mats]


def test_search_finds_verified_xor_gadgets():
    cfg = SearchConfig(dim=6, p=3, budget=200_000, seed=7, max_results=3)
    certs = search_gadgets(cfg)
    assert len(certs) == 3
    for c in certs:
        assert XOR_PATTERN.matches(c.signature_mod)
        assert c.signature == signature(c.gadget)
        assert c.verify()
        assert verify_certificate(c.to_text())
        # Prop. 8 consistency: no XOR gadget has all four io nodes on the boundary
        assert c.bdc_classification == BdcClass.NEITHER


def test_search_is_deterministic_and_shard_independent():
    cfg = SearchConfig(dim=5, p=3, budget=50_000, seed=3, max_results=5)
    a = search_gadgets(cfg)
    b = search_gadgets(cfg)
    assert [c.to_text() for c in a] == [c.to_text() for c in b]
    s1 = search_gadgets(cfg, shards=2, workers=1)
    s2 = search_gadgets(cfg, shards=2, workers=2)
    assert [c.to_text() for c in s1] == [c.to_text() for c in s2]


def test_search_other_patterns_and_filters():
    cfg = SearchConfig(dim=4, p=3, pattern=EQUALITY_PATTERN, budget=20_000, seed=1, max_results=4,
                       require_classification="Connectable")
    for c in search_gadgets(cfg):
        assert EQUALITY_PATTERN.matches(c.signature_mod)
        assert c.bdc_classification in (BdcClass.CONNECTABLE, BdcClass.BOTH)
    tiny = SearchConfig(dim=6, budget=1, seed=0)
    assert len(search_gadgets(tiny)) <= 1


def test_certificate_tampering_detected():
    cert = GadgetCertificate.of(builtin_gadget("g3_xor"), 3)
    text = cert.to_text()
    assert verify_certificate(text)
    assert not verify_certificate(text.replace("classification Neither", "classification Both"))
    assert not verify_certificate(text.replace("mu 0", "mu 1"))


def test_counterexample_rule():
    g = builtin_gadget("g3_xor")
    base = GadgetCertificate.of(g, 3)
    assert not is_counterexample_candidate(base)
    fake = GadgetCertificate(g, base.signature, base.signature_mod, BdcClass.BOTH, False)
    assert is_counterexample_candidate(fake)
    # the conjecture's exception: all residues nonzero and only connectable
    allnz = Signature((1, 2, 2, 2, 2, 2), 3)
    assert not is_counterexample_candidate(GadgetCertificate(g, base.signature, allnz, BdcClass.CONNECTABLE, False))
    ext = GadgetCertificate(g, base.signature, allnz, BdcClass.EXTENDABLE, False)
    assert not is_counterexample_candidate(ext)
    assert is_exception_order_hit(ext)
    assert not is_exception_order_hit(base)


def test_survey_table():
    rep = conjecture_survey(dim=5, p=3, budget=150, seed=2)
    assert sum(rep.table.values()) == 150
    named = {name: (mu_ok, cls) for name, _, mu_ok, cls in rep.named}
    assert named["g3_xor"] == (False, BdcClass.NEITHER)
    assert named["rl_xor"] == (False, BdcClass.NEITHER)
    assert not rep.verified_counterexamples
    assert "counterexample candidates: 0" in rep.format()
    with pytest.raises(BadSearchConfig):
        conjecture_survey(dim=8)
    with pytest.raises(BadSearchConfig):
        conjecture_survey(dim=5, p=2)
