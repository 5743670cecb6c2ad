"""Bundle serialization: canonical emission, strict loading."""

import copy
import json

import pytest

from trilie.bundleio import (
    BundleLoadError,
    bundle_to_obj,
    dumps_bundle,
    loads_bundle,
)
from trilie.corpus import CORPUS_NAMES, generate, toy_split, tprime_split


def reload_obj(obj):
    return loads_bundle(json.dumps(obj))


@pytest.fixture(scope="module")
def toy_obj():
    return bundle_to_obj(toy_split(0))


@pytest.mark.parametrize("name", ("toy-split", "d4", "two-block",
                                  "tprime-split"))
def test_round_trip_is_byte_identical(name):
    B = generate(name)
    text = dumps_bundle(B)
    B2 = loads_bundle(text)
    assert dumps_bundle(B2) == text
    assert B2.L.sc == B.L.sc
    assert B2.L.alpha == B.L.alpha
    assert B2.rho == B.rho
    assert B2.act.table == B.act.table


def test_canonical_emission_is_sorted_and_terminated():
    text = dumps_bundle(toy_split(0))
    assert text.endswith("\n")
    obj = json.loads(text)
    assert json.dumps(obj, sort_keys=True,
                      separators=(",", ":")) + "\n" == text


def test_parse_error_reports_position():
    with pytest.raises(BundleLoadError) as err:
        loads_bundle('{"name": "x",\n  broken')
    assert "line" in str(err.value)


def test_rejects_unsorted_bracket_triple(toy_obj):
    obj = copy.deepcopy(toy_obj)
    i, j, k, vec = obj["L"]["bracket"][0]
    obj["L"]["bracket"][0] = [j, i, k, vec]
    with pytest.raises(BundleLoadError) as err:
        reload_obj(obj)
    assert f"({j},{i},{k})" in str(err.value)
    assert "canonical" in str(err.value)


def test_rejects_explicit_zero(toy_obj):
    obj = copy.deepcopy(toy_obj)
    obj["L"]["bracket"][0][3].append([0, "0"])
    with pytest.raises(BundleLoadError) as err:
        reload_obj(obj)
    assert "zero" in str(err.value)


def test_rejects_duplicate_index(toy_obj):
    obj = copy.deepcopy(toy_obj)
    entry = obj["L"]["bracket"][0][3]
    entry.append(list(entry[0]))
    with pytest.raises(BundleLoadError) as err:
        reload_obj(obj)
    assert "duplicate" in str(err.value)


def test_rejects_bad_rational(toy_obj):
    for bad in ("0.5", "1/0", "", "x"):
        obj = copy.deepcopy(toy_obj)
        obj["L"]["bracket"][0][3][0][1] = bad
        with pytest.raises(BundleLoadError):
            reload_obj(obj)


def test_rejects_out_of_range_index(toy_obj):
    obj = copy.deepcopy(toy_obj)
    obj["L"]["bracket"][0][3][0][0] = 99
    with pytest.raises(BundleLoadError):
        reload_obj(obj)


def test_rejects_stored_and_missing_conflict():
    obj = bundle_to_obj(tprime_split(2))
    i, j, k, _ = obj["L"]["bracket"][0]
    obj["L"]["missing"].append([i, j, k])
    with pytest.raises(BundleLoadError):
        reload_obj(obj)


def test_rejects_false_flag_claim(toy_obj):
    obj = copy.deepcopy(toy_obj)
    obj["flags"]["jacobi"] = False
    with pytest.raises(BundleLoadError) as err:
        reload_obj(obj)
    assert "jacobi" in str(err.value)
    assert "False" in str(err.value)


def test_rejects_unknown_flag(toy_obj):
    obj = copy.deepcopy(toy_obj)
    obj["flags"]["filippov"] = True
    with pytest.raises(BundleLoadError) as err:
        reload_obj(obj)
    assert "filippov" in str(err.value)


def test_skip_verification_accepts_wrong_flags(toy_obj):
    obj = copy.deepcopy(toy_obj)
    obj["flags"]["jacobi"] = False
    text = json.dumps(obj)
    B = loads_bundle(text, verify=False)
    assert B.meta["flags"]["jacobi"] is False


def test_rejects_wrong_label_count(toy_obj):
    obj = copy.deepcopy(toy_obj)
    obj["L_labels"] = ["a", "b"]
    with pytest.raises(BundleLoadError):
        reload_obj(obj)


def test_rejects_wrong_h_row_length(toy_obj):
    obj = copy.deepcopy(toy_obj)
    obj["H"][0].append([7, "1"])
    with pytest.raises(BundleLoadError):
        reload_obj(obj)


def test_windowed_round_trip_preserves_missing():
    B = tprime_split(2)
    B2 = loads_bundle(dumps_bundle(B))
    assert B2.L.sc.missing == B.L.sc.missing
    missing_actions = {k for k, v in B.act.table.items() if v is None}
    missing_actions2 = {k for k, v in B2.act.table.items() if v is None}
    assert missing_actions == missing_actions2
