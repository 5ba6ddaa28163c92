"""JSON encoding of library values.  Elements are written in canonical text."""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction

from .rings import Elem, Ring, RingHom
from .valgroup import GroupElement, GroupId, SequenceDescriptor


def jsonable(x):
    """A structure of dicts, lists, strings and numbers describing x."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Elem):
        return str(x)
    if isinstance(x, (Ring, GroupId, GroupElement, SequenceDescriptor)):
        return str(x)
    if isinstance(x, RingHom):
        return {"type": "RingHom", "source": str(x.source), "target": str(x.target), "rule": x.describe()}
    name = type(x).__name__
    if name == "Ideal":
        return {"ring": str(x.ring), "gens": [str(g) for g in x.gens],
                "normal_form": None if x.normal is None else str(x.normal)}
    if name == "PolyOverRing":
        return {"ring": f"{x.base}[{x.var}]", "text": str(x)}
    if name == "MembershipResult":
        out = {"status": x.status, "element": str(x.element), "gens": [str(g) for g in x.gens]}
        if x.power != 1:
            out["power"] = x.power
        if x.status == "Member":
            out["coeffs"] = [str(c) for c in x.coeffs]
            out["basis"] = x.basis
            if x.normal is not None:
                out["normal"] = str(x.normal)
        elif x.status == "NonMember":
            out["certificate"] = jsonable(x.certificate)
        else:
            out["bound"] = x.bound
        return out
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        out = {"type": name}
        for f in dataclasses.fields(x):
            out[f.name] = jsonable(getattr(x, f.name))
        return out
    return str(x)


def dumps(x) -> str:
    return json.dumps(jsonable(x), sort_keys=True, separators=(",", ":"))
