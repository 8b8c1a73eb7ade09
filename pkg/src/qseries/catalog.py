"""Registry of the identities, each with two independently built sides."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from . import hyper
from .arith import lambert_expand
from .products import product_side, psi_product, psi_sum, q, q2_rhs
from .series import LaurentSeries, SeriesError, compare
from .wz import q2_from_telescoping

__all__ = [
    "IdentityEntry",
    "VerificationReport",
    "Catalog",
    "register_builtin",
    "verify",
    "verify_all",
    "verify_entry",
    "default_catalog",
    "q2_wz_route",
    "lambert_expand",
    "pi2_routes",
    "perturbed",
    "reports_to_json",
    "reports_from_json",
    "reports_to_csv",
    "reports_from_csv",
    "CK2_GRID",
    "RED_GRID",
]

Builder = Callable[..., LaurentSeries]


@dataclass(frozen=True)
class IdentityEntry:
    """One identity: ``lhs(order, **p) == rhs(order, **p)`` for every ``p`` in ``points``.

    ``points`` is ``({},)`` for a plain identity and a parameter grid otherwise.
    """

    id: str
    description: str
    lhs: Builder
    rhs: Builder
    default_order: int
    anchor: str
    points: tuple = ({},)

    @property
    def is_grid(self) -> bool:
        return len(self.points) > 1 or bool(self.points[0])


@dataclass
class VerificationReport:
    id: str
    order: int
    status: str
    first_mismatch: dict | None = None
    elapsed_ms: int = 0
    detail: str | None = None

    FIELDS = ("id", "order", "status", "first_mismatch", "elapsed_ms", "detail")

    def __post_init__(self):
        if (self.status == "verified") != (self.first_mismatch is None and self.status != "error"):
            raise ValueError("status 'verified' requires no mismatch and vice versa")

    @property
    def ok(self) -> bool:
        return self.status == "verified"

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.FIELDS}

    @classmethod
    def from_dict(cls, d: Mapping) -> "VerificationReport":
        return cls(**{k: d.get(k) for k in cls.FIELDS})

    def __str__(self):
        s = f"{self.id:<14} order={self.order:<5} {self.status:<9} {self.elapsed_ms} ms"
        if self.first_mismatch:
            m = self.first_mismatch
            s += f"  first mismatch at q^{m['exponent']}: lhs={m['lhs']} rhs={m['rhs']}"
            if "point" in m:
                s += f" ({m['point']})"
        if self.detail:
            s += f"  [{self.detail}]"
        return s


def _point_label(p: Mapping) -> str:
    return ", ".join(f"{k}={v}" for k, v in p.items())


class Catalog:
    def __init__(self):
        self._entries: dict[str, IdentityEntry] = {}

    def register(self, entry: IdentityEntry) -> None:
        if entry.id in self._entries:
            raise ValueError(f"duplicate identity id {entry.id!r}")
        self._entries[entry.id] = entry

    def get(self, id: str) -> IdentityEntry | None:
        return self._entries.get(id)

    def __contains__(self, id) -> bool:
        return id in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries.values())

    @property
    def ids(self) -> list[str]:
        return list(self._entries)

    def verify(self, id: str, order: int | None = None) -> VerificationReport:
        entry = self._entries.get(id)
        if entry is None:
            raise KeyError(f"unknown identity {id!r}")
        return verify_entry(entry, order)

    def verify_all(self, order_override: int | None = None) -> list[VerificationReport]:
        return [verify_entry(e, order_override) for e in self]


def verify_entry(entry: IdentityEntry, order: int | None = None) -> VerificationReport:
    order = entry.default_order if order is None else order
    if order < 1:
        raise ValueError("order must be at least 1")
    t0 = time.perf_counter()
    mismatch, detail, status = None, None, "verified"
    try:
        for p in entry.points:
            c = compare(entry.lhs(order, **p), entry.rhs(order, **p), order)
            if not c:
                mismatch = {"exponent": str(c.exponent), "lhs": str(c.lhs), "rhs": str(c.rhs)}
                if p:
                    mismatch["point"] = _point_label(p)
                status = "mismatch"
                break
    except (SeriesError, ArithmeticError, ValueError, KeyError) as exc:
        status, detail = "error", f"{type(exc).__name__}: {exc}"
    elapsed = round((time.perf_counter() - t0) * 1000)
    return VerificationReport(entry.id, order, status, mismatch, elapsed, detail)


def perturbed(entry: IdentityEntry, exponent, delta=1) -> IdentityEntry:
    """Copy of ``entry`` whose right side gains ``delta * q**exponent``."""
    rhs = entry.rhs

    def bumped(order, **p):
        base = rhs(order, **p)
        return base + LaurentSeries.monomial(delta, exponent, base.q_order, base.scale)

    return replace(entry, id=entry.id + "~perturbed", rhs=bumped)


# -- builders ---------------------------------------------------------------------


def _psi_q4(order) -> LaurentSeries:
    return psi_sum(-(-order // 4)).substitute_power(4).truncate(order)


def pi2_routes(order) -> dict[str, LaurentSeries]:
    """Two left-side and two right-side constructions of the pi^2 identity."""
    return {
        "lhs.lambert": lambert_expand("pi2", order),
        "lhs.summand": hyper.pi2_lhs(order),
        "rhs.product": product_side("pi2.rhs", order),
        "rhs.psi": psi_sum(order) * _psi_q4(order),
    }


def _side(name):
    return lambda order: product_side(name, order)


CK2_GRID = ({"d": q(1)}, {"d": q(2)}, {"d": q(1, -1)}, {"d": q(3, -1)})
RED_GRID = tuple({"N": N, "d": d} for N in range(1, 5) for d in (q(2), q(4), q(-2 * N)))
SUM_2PHI2_GRID = (
    {"a": q(Fraction(1, 2)), "b": q(1)},
    {"a": q(2), "b": q(3)},
    {"a": q(1, -1), "b": q(2)},
    {"a": q(1), "b": q(3)},
    {"a": q(1), "b": q(3, -1), "base": 2},
)


def _sum_lhs(order, a, b, base=1):
    return hyper.sum_2phi2_lhs(a, b, order, base)


def _sum_rhs(order, a, b, base=1):
    return hyper.sum_2phi2_rhs(a, b, order, base)


def _builtin_entries() -> list[IdentityEntry]:
    E = IdentityEntry
    return [
        E("pi1", "sum (-q)^k/(1-q^(2k+1)) = (q^4;q^4)^2/(q^2;q^4)^2",
          hyper.pi1_lhs, _side("pi1.rhs"), 1000, "q-analogue of Leibniz's series"),
        E("pi2", "sum (-1)^k q^(k(k+3)/2)/(1-q^(2k+1)) = psi(q) psi(q^4)",
          lambda n: lambert_expand("pi2", n), _side("pi2.rhs"), 1000,
          "main theorem: q-analogue of the Leibniz series, product side"),
        E("gl1", "first Guo-Liu q-analogue of a Ramanujan 6n+1 series",
          hyper.gl1_lhs, _side("gl1.rhs"), 300, "Guo-Liu, first WZ identity"),
        E("gl2", "second Guo-Liu q-analogue of a Ramanujan 6n+1 series",
          hyper.gl2_lhs, _side("gl2.rhs"), 300, "Guo-Liu, second WZ identity"),
        E("q2", "q-analogue of Guillera's pi^2 series = 1/2 sum q^(2n)/(1-q^(2n+1))^2",
          hyper.q2_lhs, lambda n: q2_rhs(n), 300, "second theorem: q-analogue of the pi^2 series"),
        E("qid", "sum q^T_n (1-q^(3n+2))/(1-q) (q;q)_n^3 (-q;q)_n/(q^3;q^2)_n^3 = (1-q)^2 psi(q)^4",
          hyper.qid_lhs, _side("qid.rhs"), 300, "q-identity whose q->1 limit is Guillera's series"),
        E("gauss-psi", "sum q^T_n = (q^2;q^2)_inf/(q;q^2)_inf",
          psi_sum, psi_product, 1000, "Gauss's product for psi"),
        E("sum-2phi2", "2phi2 summation at monomial samples",
          _sum_lhs, _sum_rhs, 80, "2phi2 summation formula", SUM_2PHI2_GRID),
        E("reduced-3phi3", "reduced 3phi3 -> 2phi2 transformation after b -> 0",
          hyper.reduced_3phi3_lhs, hyper.reduced_3phi3_rhs, 80, "limit b -> 0 of the quadratic transformation"),
        E("ck2-grid", "quadratic transformation at a = q^2, b = c = q over sampled d",
          lambda n, d: hyper.ck2_lhs(d, n), lambda n, d: hyper.ck2_rhs(d, n), 80,
          "Chu's quadratic transformation, specialised", CK2_GRID),
        E("red-grid", "reduced summation at a = b = q over sampled (N, d)",
          lambda n, N, d: hyper.red_lhs(N, d, n), lambda n, N, d: hyper.red_rhs(N, d, n), 80,
          "reduced summation used for the Guo-Liu limits", RED_GRID),
    ]


def register_builtin(catalog: Catalog | None = None) -> Catalog:
    catalog = Catalog() if catalog is None else catalog
    for e in _builtin_entries():
        catalog.register(e)
    return catalog


_DEFAULT: Catalog | None = None


def default_catalog() -> Catalog:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = register_builtin()
    return _DEFAULT


def verify(id: str, order: int | None = None) -> VerificationReport:
    return default_catalog().verify(id, order)


def verify_all(order_override: int | None = None, catalog: Catalog | None = None) -> list[VerificationReport]:
    return (default_catalog() if catalog is None else catalog).verify_all(order_override)


def q2_wz_route(order) -> LaurentSeries:
    return q2_from_telescoping(order)


# -- report serialisation -----------------------------------------------------------


def reports_to_json(reports: Iterable[VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"


def reports_from_json(text: str) -> list[VerificationReport]:
    return [VerificationReport.from_dict(d) for d in json.loads(text)]


_CSV_COLUMNS = ("id", "order", "status", "mismatch_exponent", "mismatch_lhs", "mismatch_rhs",
                "mismatch_point", "elapsed_ms", "detail")


def reports_to_csv(reports: Iterable[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_CSV_COLUMNS)
    for r in reports:
        m = r.first_mismatch or {}
        w.writerow([r.id, r.order, r.status, m.get("exponent", ""), m.get("lhs", ""), m.get("rhs", ""),
                    m.get("point", ""), r.elapsed_ms, r.detail or ""])
    return buf.getvalue()


def reports_from_csv(text: str) -> list[VerificationReport]:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        m = None
        if row["mismatch_exponent"]:
            m = {"exponent": row["mismatch_exponent"], "lhs": row["mismatch_lhs"], "rhs": row["mismatch_rhs"]}
            if row["mismatch_point"]:
                m["point"] = row["mismatch_point"]
        out.append(VerificationReport(row["id"], int(row["order"]), row["status"], m,
                                      int(row["elapsed_ms"]), row["detail"] or None))
    return out
