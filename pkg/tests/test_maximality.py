import pytest

from eag import maximality as mx
from eag.errors import PreconditionError
from eag.genvec import is_unique_action, validate
from eag.surfaces import EAActionSpec, ea_genus, subgroup_signature


def _verify_witness(spec, witness):
    assert witness is not None
    assert witness.n_spec.n == spec.n + 1
    assert validate(witness.vector)
    assert subgroup_signature(witness.n_spec, witness.vector,
                              witness.subgroup_basis) == spec.sig
    assert ea_genus(witness.n_spec) == ea_genus(spec)


def test_frobenius_representable_examples():
    assert mx.frobenius_representable(3, 5) == (-1, 7)
    assert mx.frobenius_representable(7, 5) is None
    assert mx.frobenius_representable(3, 2) is not None
    with pytest.raises(PreconditionError):
        mx.frobenius_representable(2, 5)
    with pytest.raises(PreconditionError):
        mx.frobenius_representable(5, 1)


def test_known_verdict_examples():
    assert mx.is_maximal(EAActionSpec(2, 3, 0, 5)).maximal
    v = mx.is_maximal(EAActionSpec(2, 1, 3, 2))
    assert not v.maximal
    # odd rho: quotient signature ((rho-1)/2; 2^5) with images (x,x,x,xy,y)
    assert v.witness.n_spec == EAActionSpec(2, 2, 1, 5)
    assert [c.coords for c in v.witness.vector.elliptic] == \
        [(1, 0), (1, 0), (1, 0), (1, 1), (0, 1)]
    assert mx.is_maximal(EAActionSpec(7, 1, 2, 0)).maximal


def test_rejects_non_unique_specs():
    with pytest.raises(PreconditionError):
        mx.is_maximal(EAActionSpec(3, 1, 1, 6))


def test_witness_shapes_match_the_constructions():
    # (rho;3^3) n=1 with rho = 1 mod 3: images (y, xy, xy, x, ..., x)
    w = mx.is_maximal(EAActionSpec(3, 1, 4, 3)).witness
    assert w.n_spec == EAActionSpec(3, 2, 0, 7)
    assert [c.coords for c in w.vector.elliptic] == \
        [(0, 1), (1, 1), (1, 1)] + [(1, 0)] * 4
    # rho = 0 mod 3 and rho = 2 mod 3 branches
    w = mx.is_maximal(EAActionSpec(3, 1, 3, 3)).witness
    assert [c.coords for c in w.vector.elliptic][:3] == [(0, 1), (1, 2), (2, 0)]
    w = mx.is_maximal(EAActionSpec(3, 1, 2, 3)).witness
    assert [c.coords for c in w.vector.elliptic][:3] == [(0, 1), (2, 1), (2, 1)]
    # (rho;2^2) n=2*rho+1 extends inside (0; 2^(2*rho+3))
    for rho in (1, 2, 3):
        w = mx.is_maximal(EAActionSpec(2, 2 * rho + 1, rho, 2)).witness
        assert w.n_spec == EAActionSpec(2, 2 * rho + 2, 0, 2 * rho + 3)
    # (rho;2^r) n=1, r even: overgroup (0; 2^(r/2 + 2*rho + 2)), both parities
    w = mx.is_maximal(EAActionSpec(2, 1, 1, 6)).witness      # k = 3 odd
    assert w.n_spec == EAActionSpec(2, 2, 0, 7)
    assert [c.coords for c in w.vector.elliptic] == \
        [(0, 1)] * 3 + [(1, 0), (1, 1)] + [(1, 0)] * 2
    w = mx.is_maximal(EAActionSpec(2, 1, 1, 4)).witness      # k = 2 even
    assert w.n_spec == EAActionSpec(2, 2, 0, 6)
    assert [c.coords for c in w.vector.elliptic] == [(0, 1)] * 2 + [(1, 0)] * 4
    # even rho for (rho;2^2) n=1: quotient (rho/2; 2^3) with images (x, xy, y)
    w = mx.is_maximal(EAActionSpec(2, 1, 4, 2)).witness
    assert w.n_spec == EAActionSpec(2, 2, 2, 3)
    assert [c.coords for c in w.vector.elliptic] == [(1, 0), (1, 1), (0, 1)]


def test_every_nonmaximal_verdict_ships_a_valid_witness():
    specs = [
        EAActionSpec(2, 1, 2, 2), EAActionSpec(2, 1, 3, 2), EAActionSpec(2, 1, 4, 2),
        EAActionSpec(2, 1, 1, 4), EAActionSpec(2, 1, 2, 6), EAActionSpec(2, 1, 0, 8),
        EAActionSpec(3, 1, 1, 3), EAActionSpec(3, 1, 2, 3), EAActionSpec(3, 1, 4, 3),
        EAActionSpec(2, 4, 2, 0), EAActionSpec(2, 6, 3, 0),
        EAActionSpec(2, 3, 2, 0), EAActionSpec(2, 5, 3, 0),
        EAActionSpec(2, 3, 1, 2), EAActionSpec(2, 5, 2, 2), EAActionSpec(2, 7, 3, 2),
        EAActionSpec(2, 1, 2, 0), EAActionSpec(2, 1, 5, 0),
        EAActionSpec(3, 1, 3, 0), EAActionSpec(3, 1, 6, 0),
        EAActionSpec(5, 1, 5, 0), EAActionSpec(7, 1, 7, 0), EAActionSpec(13, 1, 13, 0),
    ]
    for spec in specs:
        verdict = mx.is_maximal(spec)
        assert not verdict.maximal, spec
        _verify_witness(spec, verdict.witness)


def test_frobenius_corner_has_no_witness():
    # representable only through b = 1, whose overgroup signature is
    # inadmissible: the verdict follows the criterion, the witness is absent
    for spec in (EAActionSpec(5, 1, 3, 0), EAActionSpec(7, 1, 4, 0)):
        verdict = mx.is_maximal(spec)
        assert not verdict.maximal
        assert verdict.witness is None
        assert "no witness" in verdict.rule
        # and indeed no extension exists
        assert mx.search_extension_witness(spec).status == "none"


def test_search_agrees_with_closed_form():
    cases = [
        EAActionSpec(2, 4, 0, 5), EAActionSpec(5, 1, 1, 3), EAActionSpec(3, 1, 2, 4),
        EAActionSpec(3, 1, 1, 5), EAActionSpec(3, 1, 1, 7), EAActionSpec(2, 3, 0, 5),
        EAActionSpec(2, 2, 2, 5), EAActionSpec(3, 4, 2, 0), EAActionSpec(3, 3, 2, 0),
        EAActionSpec(3, 1, 1, 2), EAActionSpec(5, 1, 1, 2), EAActionSpec(3, 4, 1, 3),
        EAActionSpec(2, 1, 2, 2), EAActionSpec(2, 1, 1, 4), EAActionSpec(3, 1, 1, 3),
        EAActionSpec(2, 4, 2, 0), EAActionSpec(2, 3, 2, 0), EAActionSpec(2, 3, 1, 2),
        EAActionSpec(2, 1, 3, 0), EAActionSpec(3, 1, 3, 0), EAActionSpec(7, 1, 2, 0),
    ]
    for spec in cases:
        verdict = mx.is_maximal(spec)
        outcome = mx.search_extension_witness(spec)
        if verdict.maximal:
            assert outcome.status == "none", spec
        else:
            assert outcome.status == "found", spec
            _verify_witness(spec, outcome.witness)


def test_search_witness_differs_but_roundtrips():
    # the search may settle on a different overgroup signature than the
    # construction; both must round-trip
    spec = EAActionSpec(2, 1, 3, 2)
    built = mx.is_maximal(spec).witness
    found = mx.search_extension_witness(spec).witness
    _verify_witness(spec, built)
    _verify_witness(spec, found)


def test_build_extension_witness_entry_point():
    spec = EAActionSpec(3, 1, 2, 3)
    w = mx.build_extension_witness(spec)
    _verify_witness(spec, w)
    with pytest.raises(PreconditionError):
        mx.build_extension_witness(EAActionSpec(2, 4, 0, 5))


def test_unramified_cyclic_p2_small_genus():
    # rho = 2 exercises the short witness with no repeated filler
    spec = EAActionSpec(2, 1, 2, 0)
    v = mx.is_maximal(spec)
    _verify_witness(spec, v.witness)
    assert v.witness.n_spec == EAActionSpec(2, 2, 1, 2)


def test_dispatch_covers_every_unique_action():
    # wide sweep: every unique action inside the supported prime range gets
    # a verdict, and every shipped witness verifies
    from eag.errors import OutOfDomainError

    checked = 0
    for p in (2, 3, 5, 7, 11, 13):
        for n in range(1, 13):
            for rho in range(0, 7):
                for r in range(0, 11):
                    spec = EAActionSpec(p, n, rho, r)
                    try:
                        if not is_unique_action(spec):
                            continue
                    except OutOfDomainError:
                        continue
                    verdict = mx.is_maximal(spec)
                    checked += 1
                    if not verdict.maximal:
                        if verdict.witness is None:
                            assert "no witness" in verdict.rule, spec
                        else:
                            _verify_witness(spec, verdict.witness)
    assert checked >= 400


def test_verdict_json_roundtrip():
    for spec in (EAActionSpec(2, 1, 3, 2), EAActionSpec(2, 4, 0, 5),
                 EAActionSpec(5, 1, 3, 0)):
        verdict = mx.is_maximal(spec)
        back = mx.MaximalityVerdict.from_json_dict(verdict.to_json_dict())
        assert back == verdict
