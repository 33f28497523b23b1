"""Frozen reference values backing the regression suite and CLI deltas.

The package ships a read-only grid of previously tabulated bound values
over alpha in {0.1, 0.3, 0.5, 0.7, 0.9} and rho = beta/alpha in
{0.05, 0.1, 0.3, 0.5, 0.7, 0.9}:

* tables 1-2: closed-form upper bounds xi_uric_u alongside comparison
  upper bounds xi_uric_BT from a union-bound construction (data only,
  never recomputed here);
* tables 3-4: optimized upper bounds xi_uric_u_low with their achieving
  (c3_opt, nu_opt, gamma_opt) triples;
* table 5: closed-form lower bounds xi_lric_l alongside xi_lric_BT;
* table 7: optimized lower bounds xi_lric_l_lift with their triples.

The asset is a plain CSV (one record per line,
``table_id,alpha,rho,quantity,value``) compiled into the wheel; the
loader asserts the exact cell counts so a corrupted asset fails fast.
The BT quantities relate to the U/L constants of that construction via
U = xi^2 - 1 and L = 1 - xi^2 (see :func:`bt_relation`).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

QUANTITIES = (
    "xi_uric_BT",
    "xi_uric_u",
    "xi_uric_u_low",
    "xi_lric_BT",
    "xi_lric_l",
    "xi_lric_l_lift",
    "c3_opt",
    "nu_opt",
    "gamma_opt",
)

# Exact number of cells per (table, quantity); the loader enforces these.
_EXPECTED_COUNTS = {
    (1, "xi_uric_BT"): 15,
    (1, "xi_uric_u"): 15,
    (2, "xi_uric_BT"): 10,
    (2, "xi_uric_u"): 10,
    (3, "c3_opt"): 15,
    (3, "nu_opt"): 15,
    (3, "gamma_opt"): 15,
    (3, "xi_uric_u_low"): 15,
    (4, "c3_opt"): 10,
    (4, "nu_opt"): 10,
    (4, "gamma_opt"): 10,
    (4, "xi_uric_u_low"): 10,
    (5, "xi_lric_BT"): 20,
    (5, "xi_lric_l"): 20,
    (7, "c3_opt"): 20,
    (7, "nu_opt"): 20,
    (7, "gamma_opt"): 20,
    (7, "xi_lric_l_lift"): 20,
}


@dataclass(frozen=True)
class ReferenceEntry:
    """One table cell: (table_id, alpha, rho) -> quantity value."""

    table_id: int
    alpha: float
    rho: float
    quantity: str
    value: float


def _key(table_id: int, alpha: float, rho: float, quantity: str):
    # Grid coordinates are 1-2 digit decimals; rounding forgives float
    # artifacts like 0.30000000000000004 from caller-side arithmetic.
    return table_id, round(alpha, 6), round(rho, 6), quantity


@lru_cache(maxsize=1)
def _load() -> tuple[tuple[ReferenceEntry, ...], dict]:
    text = resources.files(__package__).joinpath("data/tables.csv").read_text(encoding="ascii")
    entries = []
    index = {}
    for row in csv.reader(text.splitlines()):
        if not row:
            continue
        table_id, alpha, rho, quantity, value = row
        entry = ReferenceEntry(
            table_id=int(table_id),
            alpha=float(alpha),
            rho=float(rho),
            quantity=quantity,
            value=float(value),
        )
        if entry.quantity not in QUANTITIES:
            raise ValueError(f"unknown quantity in reference asset: {entry.quantity!r}")
        key = _key(entry.table_id, entry.alpha, entry.rho, entry.quantity)
        if key in index:
            raise ValueError(f"duplicate reference cell {key}")
        index[key] = entry.value
        entries.append(entry)

    counts: dict[tuple[int, str], int] = {}
    for entry in entries:
        counts[(entry.table_id, entry.quantity)] = counts.get((entry.table_id, entry.quantity), 0) + 1
    if counts != _EXPECTED_COUNTS:
        wrong = {
            key: (counts.get(key), _EXPECTED_COUNTS.get(key))
            for key in set(counts) | set(_EXPECTED_COUNTS)
            if counts.get(key) != _EXPECTED_COUNTS.get(key)
        }
        raise ValueError(f"reference asset cell counts are wrong (got, expected): {wrong}")
    return tuple(entries), index


def entries() -> tuple[ReferenceEntry, ...]:
    """All reference cells, in asset order."""
    return _load()[0]


def lookup(table_id: int, alpha: float, rho: float, quantity: str) -> float:
    """Value of one reference cell; KeyError names the missing cell."""
    key = _key(table_id, alpha, rho, quantity)
    try:
        return _load()[1][key]
    except KeyError:
        raise KeyError(
            f"no reference cell table_id={table_id}, alpha={alpha}, rho={rho}, quantity={quantity!r}"
        ) from None


def bt_relation(xi_bt: float, side: str) -> float:
    """Map a BT-style bound to that construction's U/L constant.

    side="upper" returns xi^2 - 1, side="lower" returns 1 - xi^2.
    """
    if xi_bt < 0.0:
        raise ValueError(f"bt_relation requires xi_bt >= 0, got {xi_bt!r}")
    if side == "upper":
        return xi_bt * xi_bt - 1.0
    if side == "lower":
        return 1.0 - xi_bt * xi_bt
    raise ValueError(f"side must be 'upper' or 'lower', got {side!r}")


_KIND_SOURCES = {
    "upper-simple": ((1, "xi_uric_u"), (2, "xi_uric_u")),
    "upper-lifted": ((3, "xi_uric_u_low"), (4, "xi_uric_u_low")),
    "lower-simple": ((5, "xi_lric_l"),),
    "lower-lifted": ((7, "xi_lric_l_lift"),),
}


def reference_for_kind(kind: str, alpha: float, rho: float) -> float | None:
    """Reference bound for a (kind, alpha, rho) cell, or None when the
    grids do not carry it."""
    for table_id, quantity in _KIND_SOURCES.get(kind, ()):
        try:
            return lookup(table_id, alpha, rho, quantity)
        except KeyError:
            continue
    return None
