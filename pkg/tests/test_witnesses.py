"""Witness verifiers: PASS replays at the stated sizes, honest failure modes,
and reverification of every PASS report from its own serialized form."""

import json

import pytest

from symlab.errors import NoExtension
from symlab.finset import family, fset
from symlab.models import (
    fraenkel1,
    fraenkel2,
    grid_model,
    mostowski,
    omega_fraenkel,
    ordered_rado_model,
    rado_model,
)
from symlab.report import ERROR, INCONCLUSIVE, PASS, Report, canonical_json
from symlab.witnesses import (
    meets_support_colouring,
    omega_fraenkel_h_obstruction,
    reverify_report,
    russell_obstruction,
    standard_scenario,
    verify_h3_witness,
)


def roundtrip(report: Report) -> dict:
    return json.loads(canonical_json(report))


SCENARIOS = [
    (fraenkel1(10), "r-infinite", {"support": fset(0), "n": 3}),
    (fraenkel1(10), "r-infinite", {"support": fset(0), "n": 2}),
    (fraenkel1(8), "h3", {}),
    (omega_fraenkel(4, 6), "h3", {}),
    (mostowski(10), "h3", {}),
    (fraenkel2(12), "russell", {}),
    (fraenkel2(12), "b-family", {"n": 4}),
    (omega_fraenkel(4, 6), "omega-h", {}),
    (grid_model(5, 5), "grid", {"seed": 3}),
    (rado_model(2, 32), "rado-h2", {}),
    (ordered_rado_model(2, 64), "rado-h2", {}),
    (rado_model(2, 64), "rado-rk", {"support": fset(1), "k": 3}),
    (rado_model(3, 24, seed=5), "rado-rk", {"k": 2}),
]


@pytest.mark.parametrize("spec,target,kwargs", SCENARIOS,
                         ids=[f"{s.kind}-{t}-{i}" for i, (s, t, _) in enumerate(SCENARIOS)])
def test_standard_scenarios_pass_and_reverify(spec, target, kwargs):
    report = standard_scenario(spec, target, **kwargs)
    assert report.verdict == PASS
    assert reverify_report(roundtrip(report))


def test_h3_rejects_unsupported_family():
    report = verify_h3_witness(fraenkel1(8), family(fset(0, 1)), frozenset())
    assert report.verdict == ERROR


def test_h3_saturation():
    # three atoms: after pinning the rest of the doubleton there is never
    # room for two fresh atoms
    spec = fraenkel1(3)
    fam = tuple(sorted((fset(a, b) for a in range(3) for b in range(a + 1, 3)),
                       key=lambda s: tuple(sorted(s))))
    with pytest.raises(NoExtension):
        verify_h3_witness(spec, fam, frozenset())


def test_russell_inconclusive_cases():
    f2 = fraenkel2(12)
    report = russell_obstruction(f2, {}, frozenset())
    assert report.verdict == INCONCLUSIVE
    report = russell_obstruction(f2, {0: 0}, frozenset((0, 1)))
    assert report.verdict == INCONCLUSIVE


def test_russell_rejects_bad_choice():
    from symlab.errors import InvalidInput

    with pytest.raises(InvalidInput):
        russell_obstruction(fraenkel2(12), {0: 5}, frozenset())


def test_omega_h_inconclusive_when_covered():
    spec = omega_fraenkel(2, 3)
    report = omega_fraenkel_h_obstruction(spec, [(fset(0),)], frozenset((0, 1, 2)))
    assert report.verdict == INCONCLUSIVE


def test_omega_h_saturated_block():
    spec = omega_fraenkel(2, 2)
    # the member plus support exhaust block 0, so no fresh atom exists
    with pytest.raises(NoExtension):
        omega_fraenkel_h_obstruction(spec, [(fset(0),)], frozenset((1,)))


def test_rado_h2_saturated_block():
    from symlab.witnesses import rado_h2_witness, standard_rado_h2_family

    spec = rado_model(2, 2, demand_size=0)
    fam = standard_rado_h2_family(spec)  # the single edge {0, 1}
    with pytest.raises(NoExtension):
        rado_h2_witness(spec, fam, frozenset())


def test_r_infinite_rejects_refuted_support():
    from symlab.witnesses import verify_first_fraenkel_rn

    spec = fraenkel1(8)
    c = meets_support_colouring(spec, fset(0), 2)
    report = verify_first_fraenkel_rn(spec, c, frozenset())  # declared empty support is wrong
    assert report.verdict == ERROR


def test_mostowski_h3_witness_is_order_legal():
    report = standard_scenario(mostowski(10), "h3")
    wit = report.witnesses
    pinned = sorted(set(wit["y"]) - {wit["a"]})
    for fresh in (wit["b"], wit["c"]):
        assert all((fresh > p) == (wit["a"] > p) for p in pinned)


def test_reports_are_byte_stable():
    a = standard_scenario(fraenkel2(12), "russell")
    b = standard_scenario(fraenkel2(12), "russell")
    assert canonical_json(a) == canonical_json(b)


def test_r_infinite_pass_feeds_mono_search():
    # once the off-support region is one colour, the subset search must
    # find witnesses of every requested size inside it
    from symlab.finset import Colouring
    from symlab.ramsey import find_mono_subset

    spec = fraenkel1(10)
    support = fset(0)
    report = standard_scenario(spec, "r-infinite", support=support, n=2)
    assert report.verdict == PASS
    rest = sorted(set(range(spec.atoms)) - support)
    c = meets_support_colouring(spec, support, 2)
    reindexed = Colouring(len(rest), 2, lambda s: c(frozenset(rest[i] for i in s)))
    for m in range(2, len(rest) + 1):
        found = find_mono_subset(reindexed, m)
        assert found is not None and found[1] == report.witnesses["colour"]
