"""Scheme JSON interchange.

Layout: ``{"name": str, "s": int, "order": int|null,
"repr": "butcher"|"2n"|"dform", "a"|"A"/"B"|"c"/"d": ..., "exact": bool}``.
Numbers travel as strings: ``p/q`` rationals when exact, shortest round-trip
decimals otherwise.  Raw JSON numbers are accepted on input.
"""
from __future__ import annotations

import json

from .scalars import format_number, parse_number
from .schemes import ButcherTableau, DForm, TwoNScheme


def scheme_to_dict(obj, name: str = "", order: int | None = None) -> dict:
    data = {"name": name, "order": order}
    if isinstance(obj, ButcherTableau):
        data.update(
            s=obj.s,
            repr="butcher",
            a=[[format_number(x) for x in row] for row in obj.a],
            b=[format_number(x) for x in obj.b],
            c=[format_number(x) for x in obj.c],
            exact=obj.exact,
        )
    elif isinstance(obj, TwoNScheme):
        data.update(
            s=obj.s,
            repr="2n",
            A=[format_number(x) for x in obj.A],
            B=[format_number(x) for x in obj.B],
            c=[format_number(x) for x in obj.c],
            exact=obj.exact,
        )
    elif isinstance(obj, DForm):
        data.update(
            s=obj.s,
            repr="dform",
            c=[format_number(x) for x in obj.c],
            d=[format_number(x) for x in obj.d],
            exact=obj.exact,
        )
    else:
        raise TypeError(f"not a scheme: {type(obj)!r}")
    return data


def scheme_from_dict(data: dict, exact: bool | None = None):
    """Rebuild a scheme object; returns (scheme, name, order).

    ``exact=None`` honours the payload's own flag; True/False force rational
    or float parsing.
    """
    want = bool(data.get("exact", False)) if exact is None else exact
    kind = data.get("repr")

    def num(x):
        v = parse_number(x, exact=True)
        return v if want else float(v)

    if kind == "butcher":
        a = [[num(x) for x in row] for row in data["a"]]
        b = [num(x) for x in data["b"]]
        c = [num(x) for x in data["c"]]
        obj = ButcherTableau(s=len(b), a=a, b=b, c=c)
    elif kind == "2n":
        obj = TwoNScheme(
            s=len(data["B"]),
            A=[num(x) for x in data["A"]],
            B=[num(x) for x in data["B"]],
            c=[num(x) for x in data["c"]],
        )
    elif kind == "dform":
        c = [num(x) for x in data["c"]]
        d = [num(x) for x in data["d"]]
        obj = DForm(s=len(c) - 1, c=c, d=d)
    else:
        raise ValueError(f"unknown scheme repr {kind!r}")
    order = data.get("order")
    return obj, data.get("name", ""), (int(order) if order is not None else None)


def dumps(obj, name: str = "", order: int | None = None, indent: int = 2) -> str:
    return json.dumps(scheme_to_dict(obj, name=name, order=order), indent=indent)


def loads(text: str, exact: bool | None = None):
    return scheme_from_dict(json.loads(text), exact=exact)
