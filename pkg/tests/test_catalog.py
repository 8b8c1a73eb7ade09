import json

import pytest

from qseries import catalog
from qseries.catalog import (
    Catalog,
    IdentityEntry,
    VerificationReport,
    perturbed,
    register_builtin,
    reports_from_csv,
    reports_from_json,
    reports_to_csv,
    reports_to_json,
)
from qseries.products import PoleError
from qseries.series import LaurentSeries, compare

BUILTIN = ["pi1", "pi2", "gl1", "gl2", "q2", "qid", "gauss-psi", "sum-2phi2", "reduced-3phi3", "ck2-grid", "red-grid"]


def test_register_builtin():
    cat = register_builtin()
    assert cat.ids == BUILTIN
    assert "main theorem" in cat.get("pi2").anchor
    assert cat.get("unknown") is None


def test_default_orders():
    cat = register_builtin()
    orders = {e.id: e.default_order for e in cat}
    assert orders["pi1"] == orders["pi2"] == orders["gauss-psi"] == 1000
    assert orders["gl1"] == orders["gl2"] == orders["q2"] == orders["qid"] == 300
    assert orders["ck2-grid"] == orders["red-grid"] == 80


def test_duplicate_id():
    cat = register_builtin()
    with pytest.raises(ValueError):
        cat.register(cat.get("pi2"))


def test_verify_examples():
    assert catalog.verify("pi2", 200).status == "verified"
    r = catalog.verify("qid", 11)
    assert r.ok and r.first_mismatch is None


def test_verify_unknown():
    with pytest.raises(KeyError):
        catalog.verify("unknown", 5)


def test_negative_control():
    entry = perturbed(register_builtin().get("qid"), 5)
    r = catalog.verify_entry(entry, 11)
    assert r.status == "mismatch"
    assert r.first_mismatch == {"exponent": "5", "lhs": "-6", "rhs": "-5"}


def test_negative_control_on_grid():
    entry = perturbed(register_builtin().get("red-grid"), 3)
    r = catalog.verify_entry(entry, 10)
    assert r.status == "mismatch" and r.first_mismatch["exponent"] == "3"
    assert r.first_mismatch["point"].startswith("N=1")


def test_builder_error_is_reported():
    def boom(order):
        raise PoleError("factor vanishes")

    entry = IdentityEntry("bad", "", boom, boom, 5, "")
    r = catalog.verify_entry(entry)
    assert r.status == "error" and "PoleError" in r.detail


def test_verify_all_collects_failures():
    cat = Catalog()
    cat.register(register_builtin().get("gauss-psi"))
    cat.register(IdentityEntry("bad", "", lambda n: 1 / LaurentSeries.zero(n), lambda n: LaurentSeries.zero(n), 5, ""))
    cat.register(perturbed(register_builtin().get("qid"), 2))
    statuses = [r.status for r in cat.verify_all(10)]
    assert statuses == ["verified", "error", "mismatch"]


def test_verify_all_empty():
    assert Catalog().verify_all() == []


def test_verify_all_reduced_order():
    reports = catalog.verify_all(5)
    assert [r.id for r in reports] == BUILTIN
    assert all(r.ok for r in reports)


def test_pi2_routes_pairwise():
    routes = catalog.pi2_routes(500)
    names = list(routes)
    assert len(names) == 4
    for a in names:
        for b in names:
            assert compare(routes[a], routes[b])


def test_q2_two_routes():
    cat = register_builtin()
    e = cat.get("q2")
    assert compare(e.lhs(120), catalog.q2_wz_route(120))


def test_report_invariant():
    with pytest.raises(ValueError):
        VerificationReport("x", 5, "verified", {"exponent": "1", "lhs": "0", "rhs": "1"})
    with pytest.raises(ValueError):
        VerificationReport("x", 5, "mismatch", None)


def test_json_round_trip():
    cat = Catalog()
    cat.register(perturbed(register_builtin().get("qid"), 5))
    cat.register(register_builtin().get("gauss-psi"))
    reports = cat.verify_all(11)
    text = reports_to_json(reports)
    data = json.loads(text)
    assert list(data[0]) == ["id", "order", "status", "first_mismatch", "elapsed_ms", "detail"]
    assert json.dumps(data, indent=2) + "\n" == text
    assert reports_to_json(reports_from_json(text)) == text


def test_csv_round_trip():
    cat = Catalog()
    cat.register(perturbed(register_builtin().get("red-grid"), 4))
    cat.register(register_builtin().get("gauss-psi"))
    text = reports_to_csv(cat.verify_all(12))
    assert text.splitlines()[0].startswith("id,order,status")
    assert reports_to_csv(reports_from_csv(text)) == text


def test_lambert_reexport():
    assert catalog.lambert_expand("pi2", 6).coefficients() == [1, 1, 0, 1, 1, 1]
