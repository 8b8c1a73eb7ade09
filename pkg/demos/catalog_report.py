"""
Verifying the catalog
=====================

Every registered identity at a reduced order, a deliberately broken entry,
and the machine-readable report formats.
"""
from qseries import catalog

reports = catalog.verify_all(60)
for r in reports:
    print(r)

broken = catalog.perturbed(catalog.default_catalog().get("qid"), 5)
r = catalog.verify_entry(broken, 11)
print(r.status, r.first_mismatch)

print(catalog.reports_to_csv(reports[:3]))
print(catalog.reports_to_json([r]))
