"""Certificate calculus: validator, engines, serialization."""

import json
from math import gcd

import pytest

from cubiccert.certs import (
    Certificate,
    a0_trivial,
    certificate_from_json,
    certificate_to_json,
    certify_form,
    certify_uct,
    conclude_a0_trivial,
    derive_unirationality,
    enumerate_types,
    unirational,
    uct,
    validate_certificate,
)
from cubiccert.errors import (
    BlockTooLarge,
    FormSingular,
    NoDerivation,
    TooFewVariables,
)
from cubiccert.forms import make_type, parse_form


def is_power_of_3(n):
    while n % 3 == 0:
        n //= 3
    return n == 1


# --- validator on hand-built certificates ---

def test_validator_accepts_base4():
    cert = Certificate(conclusion=unirational([3, 1], 1), rule="BASE4")
    assert validate_certificate(cert)


def test_validator_accepts_satz1_step():
    base = Certificate(conclusion=unirational([3, 1], 1), rule="BASE4")
    step = Certificate(conclusion=unirational([3, 3], 3), rule="R-SATZ1",
                       premises=(base,))
    assert validate_certificate(step)


def test_validator_rejects_gcd_with_common_factor():
    prem1 = Certificate(conclusion=unirational([3, 3], 2), rule="AX-DEG2")
    prem2 = Certificate(conclusion=unirational([3, 3], 4), rule="AX-DEG2")
    bad = Certificate(conclusion=a0_trivial([3, 3]), rule="R-GCD",
                      premises=(prem1, prem2))
    result = validate_certificate(bad)
    assert not result
    assert "coprime" in result.reason or "gcd" in result.reason.lower()


def test_validator_rejects_wrong_degree_axiom():
    prem2 = Certificate(conclusion=unirational([3, 3], 4), rule="AX-DEG2")
    result = validate_certificate(prem2)
    assert not result


def test_validator_rejects_base4_on_wrong_total():
    cert = Certificate(conclusion=uct([3, 2]), rule="BASE4")
    assert not validate_certificate(cert)


def test_validator_rejects_untripled_degree():
    base = Certificate(conclusion=unirational([3, 1], 1), rule="BASE4")
    bad = Certificate(conclusion=unirational([3, 3], 9), rule="R-SATZ1",
                      premises=(base,))
    assert not validate_certificate(bad)


def test_validator_rejects_wrong_arity():
    base = Certificate(conclusion=unirational([3, 1], 1), rule="BASE4")
    bad = Certificate(conclusion=uct([2, 2]), rule="BASE4", premises=(base,))
    assert not validate_certificate(bad)


def test_validator_rejects_oversized_block():
    cert = Certificate(conclusion=uct([4]), rule="BASE4")
    assert not validate_certificate(cert)


def test_validator_reports_failure_path():
    base_bad = Certificate(conclusion=unirational([3, 2], 1), rule="BASE4")
    step = Certificate(conclusion=unirational([3, 3, 2], 3), rule="R-SATZ1",
                       premises=(Certificate(
                           conclusion=unirational([3, 2, 1], 1),
                           rule="R-REFINE", premises=(base_bad,)),))
    result = validate_certificate(step)
    assert not result
    assert len(result.path) >= 1


def test_validator_refine_and_merge_directions():
    coarse = Certificate(conclusion=uct([3, 1]), rule="BASE4")
    fine = Certificate(conclusion=uct([1, 1, 1, 1]), rule="BASE4")
    assert validate_certificate(Certificate(
        conclusion=uct([2, 1, 1]), rule="R-REFINE", premises=(coarse,)))
    assert validate_certificate(Certificate(
        conclusion=uct([3, 1]), rule="R-MERGE", premises=(fine,)))
    # refinement must preserve the total
    assert not validate_certificate(Certificate(
        conclusion=uct([2, 1, 1, 1]), rule="R-REFINE", premises=(coarse,)))


# --- unirationality engine ---

def test_derive_spot_values():
    assert derive_unirationality(make_type([3, 1])).conclusion.degree == 1
    assert derive_unirationality(make_type([3, 3])).conclusion.degree == 3
    assert derive_unirationality(
        make_type([3, 3, 3, 3])).conclusion.degree == 81


def test_derive_rejects_scope_violations():
    with pytest.raises(BlockTooLarge):
        derive_unirationality(make_type([4, 1]))
    with pytest.raises(TooFewVariables):
        derive_unirationality(make_type([2, 1]))


def test_derive_odd_total_has_no_3power_certificate():
    """BASE4 subjects have 4 variables and each degree-tripling step adds
    exactly 2, so odd totals are unreachable in this calculus."""
    with pytest.raises(NoDerivation):
        derive_unirationality(make_type([3, 2]))
    with pytest.raises(NoDerivation):
        derive_unirationality(make_type([3, 3, 3]))


def test_derive_even_totals_validate_and_are_3_powers():
    for t in enumerate_types(4, 12):
        if t.total % 2 != 0:
            continue
        cert = derive_unirationality(t)
        assert validate_certificate(cert), t
        assert cert.conclusion.subject == t
        assert is_power_of_3(cert.conclusion.degree), t


def test_derive_monotone_metric_on_inverse_satz_steps():
    """Along every R-SATZ1 edge the premise loses 2 variables; along every
    R-REFINE edge the total is constant and the search strictly reduces the
    (total, blocks-of-size-3-shortage) measure.  R-MERGE premises refine the
    conclusion (same total, one more block) and only occur on all-2 types."""
    for t in enumerate_types(4, 12):
        if t.total % 2 != 0:
            continue
        for node in derive_unirationality(t).walk():
            if not node.premises:
                continue
            prem = node.premises[0].conclusion.subject
            conc = node.conclusion.subject
            if node.rule == "R-SATZ1":
                assert prem.total == conc.total - 2
            elif node.rule == "R-REFINE":
                assert prem.total == conc.total
                assert len(prem.sizes) < len(conc.sizes)
            elif node.rule == "R-MERGE":
                assert prem.total == conc.total
                assert len(prem.sizes) == len(conc.sizes) + 1
                assert set(conc.sizes) == {2}


# --- UCT engine ---

def test_uct_base_case():
    cert = certify_uct(make_type([1, 1, 1, 1]))
    assert cert.rule == "BASE4"
    assert validate_certificate(cert)


def test_uct_diagonal_five():
    cert = certify_uct(make_type([1, 1, 1, 1, 1]))
    assert validate_certificate(cert)
    rules = [node.rule for node in cert.walk()]
    assert rules[-1] == "BASE4"
    assert "R-SATZ2I" in rules


def test_uct_type_3_3():
    cert = certify_uct(make_type([3, 3]))
    assert validate_certificate(cert)
    assert [node.rule for node in cert.walk()] == ["R-SATZ2II", "BASE4"]


def test_uct_all_types_4_to_12_validate():
    for t in enumerate_types(4, 12):
        cert = certify_uct(t)
        assert validate_certificate(cert), t
        assert cert.conclusion.subject == t
        assert cert.conclusion.kind == "uct"


def test_enumeration_count_is_computed_not_assumed():
    types = enumerate_types(4, 12)
    # independent count: partitions of n into parts <= 3
    def partitions(n, max_part=3):
        if n == 0:
            return 1
        return sum(partitions(n - p, min(p, n - p))
                   for p in range(1, min(max_part, n) + 1))

    assert len(types) == sum(partitions(n) for n in range(4, 13))
    assert len(set(types)) == len(types)


# --- A0 routes ---

def test_a0_uct_route():
    cert = conclude_a0_trivial(make_type([2, 2, 1]))
    assert validate_certificate(cert)
    assert cert.rule == "UCT-TO-A0"
    assert cert.conclusion.kind == "a0-trivial"


def test_a0_gcd_route_even_total():
    cert = conclude_a0_trivial(make_type([3, 3]), use_uct_route=False)
    assert validate_certificate(cert)
    assert cert.rule == "R-GCD"
    degrees = sorted(p.conclusion.degree for p in cert.premises)
    assert degrees[0] == 2
    assert is_power_of_3(degrees[1])
    assert gcd(*degrees) == 1


def test_gcd_side_condition_powers_of_3():
    for k in range(9):
        assert gcd(2, 3 ** k) == 1


# --- serialization ---

def test_json_round_trip_and_key_order():
    cert = conclude_a0_trivial(make_type([3, 2, 1]))
    data = certificate_to_json(cert)
    assert list(data.keys()) == ["conclusion", "rule", "citation", "premises"]
    blob = json.dumps(data, sort_keys=False)
    restored = certificate_from_json(json.loads(blob))
    assert restored == cert
    assert validate_certificate(restored)


def test_json_round_trip_all_engine_outputs():
    for t in enumerate_types(4, 9):
        for cert in (certify_uct(t), conclude_a0_trivial(t)):
            restored = certificate_from_json(certificate_to_json(cert))
            assert restored == cert


# --- form pipeline ---

def test_certify_form_diagonal_six():
    result = certify_form(parse_form("x0^3+x1^3+x2^3+x3^3+x4^3+x5^3"))
    assert result["type"].sizes == (1, 1, 1, 1, 1, 1)
    assert result["smoothness"].smooth
    assert validate_certificate(result["uct_certificate"])
    assert validate_certificate(result["a0_certificate"])


def test_certify_form_mixed_blocks():
    result = certify_form(parse_form("x0^3+x0*x1^2+x1^3 - x2^3 - x3^3"))
    assert result["type"].sizes == (2, 1, 1)


def test_certify_form_rejects_singular():
    text = "x0^3 + 3*x0^2*x1 + 3*x0*x1^2 + x1^3 + x2^3 + x3^3"
    with pytest.raises(FormSingular) as exc:
        certify_form(parse_form(text))
    assert exc.value.witness is not None


def test_certify_form_rejects_large_block():
    text = "x0*x1^2 + x1*x2^2 + x2*x3^2 + x3*x0^2 + x0^3"
    with pytest.raises(BlockTooLarge):
        certify_form(parse_form(text))
