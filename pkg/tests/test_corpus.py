import pytest

from purediff import corpus
from purediff import omega as om
from purediff.keypoly import delta
from purediff.oracle import delta_bruteforce
from purediff.serialize import load_spec, run_document


@pytest.mark.parametrize("entry", corpus.SPECS, ids=lambda e: e.name)
def test_corpus_verdicts(entry):
    rep = run_document(load_spec(entry.doc))
    assert rep.is_zero == entry.is_zero and not rep.inconsistent


def test_corpus_covers_every_case():
    cases = {e.doc["case"] for e in corpus.SPECS}
    assert cases == {"concrete", "pure_defect", "branched_pure", "purely_inertial", "purely_ramified"}
    assert len(corpus.defect_specs()) >= 5


def test_split_cases_are_genuine():
    cases = corpus.split_cases()
    assert len(cases) > 100
    for c in cases:
        assert c.f.deg == len(c.roots) in (2, 3)
        assert delta(c.f, c.L) == delta_bruteforce(c.f, c.L, c.roots)


def test_defect_corpus_ckr():
    for entry in corpus.defect_specs():
        spec = load_spec(entry.doc).spec
        U = om.ckr_module(spec, om.default_rtilde(spec))
        rep = om.omega_report(spec)
        assert (U.is_zero, U.fin_gen, U.fin_pres) == (rep.is_zero, rep.fin_gen, rep.fin_pres)
