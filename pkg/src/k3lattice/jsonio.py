"""JSON wire formats.

Only integer syntax is accepted for integers; rationals are strings
``"p/q"`` (or bare integers) and are always written in lowest terms with a
positive denominator.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .charges import ChargeVector, GammaSet
from .exact_linalg import IntMatrix
from .group_actions import GroupAction
from .lattices import Lattice, Sublattice


class FormatError(ValueError):
    pass


_RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def _no_floats(s: str):
    raise FormatError(f"non-integer number {s!r} (only integers and \"p/q\" strings are allowed)")


def loads(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_no_floats, parse_constant=_no_floats)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _int(x, what: str) -> int:
    if type(x) is not int:
        raise FormatError(f"{what} must be an integer, got {x!r}")
    return x


def _int_rows(rows, what: str, cols: int | None = None) -> list[list[int]]:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise FormatError(f"{what} must be a list of integer lists")
    out = [[_int(x, what) for x in r] for r in rows]
    if cols is not None and any(len(r) != cols for r in out):
        raise FormatError(f"{what} rows must have length {cols}")
    return out


def int_vector(x, what: str = "vector") -> list[int]:
    if not isinstance(x, list):
        raise FormatError(f"{what} must be a list of integers")
    return [_int(v, what) for v in x]


def parse_rational(x) -> Fraction:
    if type(x) is int:
        return Fraction(x)
    if isinstance(x, str):
        m = _RATIONAL.match(x)
        if m:
            den = int(m.group(2)) if m.group(2) else 1
            if den == 0:
                raise FormatError(f"zero denominator in {x!r}")
            return Fraction(int(m.group(1)), den)
    raise FormatError(f"expected an integer or a \"p/q\" string, got {x!r}")


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- lattices ---------------------------------------------------------------


def lattice_from_json(obj) -> Lattice:
    if not isinstance(obj, dict) or "gram" not in obj:
        raise FormatError("lattice must be an object with a \"gram\" field")
    rows = _int_rows(obj["gram"], "gram")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise FormatError("gram must be square")
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise FormatError("name must be a string")
    return Lattice(IntMatrix.from_rows(rows, cols=n), name)


def lattice_to_json(lat: Lattice) -> dict:
    out: dict = {}
    if lat.name:
        out["name"] = lat.name
    out["gram"] = lat.gram.tolist()
    return out


def sublattice_from_json(obj) -> Sublattice:
    if not isinstance(obj, dict) or "ambient" not in obj or "basis" not in obj:
        raise FormatError("sublattice must be an object with \"ambient\" and \"basis\"")
    amb = lattice_from_json(obj["ambient"])
    rows = _int_rows(obj["basis"], "basis", cols=amb.rank)
    return Sublattice(amb, IntMatrix.from_rows(rows, cols=amb.rank))


def sublattice_to_json(sub: Sublattice) -> dict:
    return {
        "ambient": lattice_to_json(sub.ambient),
        "basis": sub.basis.tolist(),
        "gram": sub.gram.tolist(),
    }


# -- charges ----------------------------------------------------------------


def charge_from_json(obj) -> ChargeVector:
    if not isinstance(obj, dict) or not {"lattice", "re", "im"} <= obj.keys():
        raise FormatError("charge must be an object with \"lattice\", \"re\" and \"im\"")
    lat = lattice_from_json(obj["lattice"])
    for key in ("re", "im"):
        if not isinstance(obj[key], list):
            raise FormatError(f"{key} must be a list")
    return ChargeVector(lat, [parse_rational(x) for x in obj["re"]], [parse_rational(x) for x in obj["im"]])


def charge_to_json(omega: ChargeVector) -> dict:
    return {
        "lattice": lattice_to_json(omega.lattice),
        "re": [format_rational(x) for x in omega.re],
        "im": [format_rational(x) for x in omega.im],
    }


def gamma_to_json(gamma: GammaSet) -> dict:
    return {
        "omega": charge_to_json(gamma.omega),
        "c_bound": format_rational(gamma.c_bound),
        "members": [list(w) for w in gamma.members],
        "complete": gamma.complete,
    }


def gamma_from_json(obj) -> GammaSet:
    if not isinstance(obj, dict) or not {"omega", "c_bound", "members", "complete"} <= obj.keys():
        raise FormatError("Gamma set must have \"omega\", \"c_bound\", \"members\" and \"complete\"")
    omega = charge_from_json(obj["omega"])
    members = [tuple(v) for v in _int_rows(obj["members"], "members", cols=omega.lattice.rank)]
    if not isinstance(obj["complete"], bool):
        raise FormatError("complete must be a boolean")
    return GammaSet(omega, parse_rational(obj["c_bound"]), members, obj["complete"])


# -- group actions ----------------------------------------------------------


def action_from_json(obj) -> GroupAction:
    if not isinstance(obj, dict) or not {"lattice", "generators"} <= obj.keys():
        raise FormatError("group action must have \"lattice\" and \"generators\"")
    lat = lattice_from_json(obj["lattice"])
    if not isinstance(obj["generators"], list):
        raise FormatError("generators must be a list of matrices")
    gens = [IntMatrix.from_rows(_int_rows(g, "generator", cols=lat.rank), cols=lat.rank) for g in obj["generators"]]
    return GroupAction(lat, tuple(gens))


def action_to_json(action: GroupAction) -> dict:
    return {
        "lattice": lattice_to_json(action.lattice),
        "generators": [g.tolist() for g in action.generators],
    }
