"""Built-in scheme catalog.

Every entry is stored as strings: ``p/q`` for exact rationals, 34-significant-
digit decimals for radical-valued coefficients (evaluated once with an
arbitrary-precision tool and frozen here; the test suite re-derives them).
Decimal strings parse exactly into rationals, so even the non-rational entries
support high-precision structural checks.

Names follow the (stages, order)_index convention; the four Carpenter-Kennedy
five-stage methods are CK54_S1..S4.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exceptions import UnknownSchemeError
from .scalars import parse_number
from .schemes import ButcherTableau, DForm, TwoNScheme, dform_to_twon

# -- frozen radical constants (34 significant digits) ------------------------

# five-stage pair found under the node constraint c2 + c5 = 1
_54_1_A = ("0", "-0.6533058769136318697163460703169270",
           "-7.601153969928038145509445411249946", "-1",
           "-0.1315589716977496283473179596888568")
_54_1_B = ("0.2113248654051871177454256097490213",
           "1.665301574915352058405921057662801",
           "0.3530599589780680371262818794084192",
           "0.2190853627625066838900050501613554",
           "0.3234700205109659814368590602957904")
_54_1_c = ("0", "0.2113248654051871177454256097490213",
           "0.7886751345948128822545743902509787",
           "0.2113248654051871177454256097490213",
           "0.7886751345948128822545743902509787")
_54_2_A = ("0", "-0.3466941230863681302836539296830730",
           "2.503077758574722205218275898991137", "-1",
           "0.3995081641288723348198716181829844")
_54_2_B = ("0.2113248654051871177454256097490213",
           "0.8837365307613059117396636984666029",
           "-0.2190853627625066838900050501613554",
           "-0.3530599589780680371262818794084192",
           "0.6095426813812533419450025250806777")

# five-stage pair with every interior ratio equal to 2
_54_3_c = ("0", "0.2270782996693656367405206489635391",
           "0.7594944791496006102287865845837890",
           "0.4059410885563268480283644035313645",
           "0.3735249090760918745400984679111146")
_54_4_c = ("0", "0.6264750909239081254599015320888854",
           "0.5940589114436731519716355964686355",
           "0.2405055208503993897712134154162110",
           "0.7729217003306343632594793510364609")

# self-reflected six-stage scheme with d = 2: the two free nodes
_64_1_C2 = "0.1341650478908799624784776149627496"
_64_1_C3 = "0.5939958093995798910039264340394410"

# self-reflected eight-stage scheme with d = 2: the two free nodes
_84_1_C2 = "0.1464466094067262377995778189475755"
_84_1_C3 = "0.3918846232228231155426167582871901"


def _decimal_complement(dec: str) -> str:
    """Exact decimal string of 1 - x for a finite decimal string x in (0, 1)."""
    f = 1 - Fraction(dec)
    num, den = f.numerator, f.denominator
    exp = 0
    while den % 10 == 0:
        den //= 10
        exp += 1
    while den % 2 == 0:
        den //= 2
        num *= 5
        exp += 1
    while den % 5 == 0:
        den //= 5
        num *= 2
        exp += 1
    if den != 1:
        raise ValueError(f"{dec!r} is not a finite decimal")
    if exp == 0:
        return str(num)
    digits = str(num).rjust(exp + 1, "0")
    return digits[:-exp] + "." + digits[-exp:]


def equal_ratio_dform(nodes, exact: bool = True) -> DForm:
    """d-form with every interior ratio equal to 2 over the given interior
    nodes (coefficient strings or numbers; c_1 = 0 and c_{s+1} = 1 appended)."""
    c = [_p(0, exact)] + [_p(x, exact) for x in nodes] + [_p(1, exact)]
    s = len(c) - 1
    d = [_p(1, exact)] + [_p(2, exact)] * (s - 1) + [_p(1, exact)]
    return DForm(s=s, c=tuple(c), d=tuple(d))


def self_reflected_64_dform(exact: bool = True) -> DForm:
    """Six-stage self-reflected scheme: nodes (0, c2, c3, 1/2, 1-c3, 1-c2, 1),
    all interior ratios 2."""
    c2, c3 = _p(_64_1_C2, exact), _p(_64_1_C3, exact)
    half = Fraction(1, 2) if exact else 0.5
    return equal_ratio_dform((c2, c3, half, 1 - c3, 1 - c2), exact)


def self_reflected_84_dform(exact: bool = True) -> DForm:
    """Eight-stage self-reflected scheme: c5 = 1/2, c4 = 1 - c3, and the
    mirror completion, all interior ratios 2."""
    c2, c3 = _p(_84_1_C2, exact), _p(_84_1_C3, exact)
    half = Fraction(1, 2) if exact else 0.5
    return equal_ratio_dform((c2, c3, 1 - c3, half, c3, 1 - c3, 1 - c2), exact)


def _p(x, exact: bool):
    v = parse_number(x, exact=True)
    return v if exact else float(v)


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog scheme: coefficient strings plus bookkeeping."""

    name: str
    kind: str  # "2n" | "dform"
    claimed_order: int
    exact: bool  # coefficients are exact values of the scheme
    source: str
    notes: str = ""
    A: tuple = ()
    B: tuple = ()
    c: tuple = ()
    d: tuple = ()

    def twon(self, exact: bool | None = None) -> TwoNScheme:
        """Materialize as a two-register scheme.

        ``exact=None`` parses exact entries to rationals and decimal entries
        to floats; ``exact=True`` parses everything to rationals (decimal
        strings convert exactly); ``exact=False`` forces floats.
        """
        if self.kind == "dform":
            return dform_to_twon(self.dform(exact))
        want = self.exact if exact is None else exact
        A = tuple(self._coeff(x, want) for x in self.A)
        B = tuple(self._coeff(x, want) for x in self.B)
        c = tuple(self._coeff(x, want) for x in self.c)
        return TwoNScheme(s=len(B), A=A, B=B, c=c)

    def dform(self, exact: bool | None = None) -> DForm:
        from .schemes import twon_to_dform

        if self.kind != "dform":
            return twon_to_dform(self.twon(exact))
        want = self.exact if exact is None else exact
        c = tuple(self._coeff(x, want) for x in self.c)
        d = tuple(self._coeff(x, want) for x in self.d)
        return DForm(s=len(c) - 1, c=c, d=d)

    def butcher(self, exact: bool | None = None) -> ButcherTableau:
        from .schemes import twon_to_butcher

        return twon_to_butcher(self.twon(exact))

    @staticmethod
    def _coeff(x, want_exact: bool):
        v = parse_number(x, exact=True)
        return v if want_exact else float(v)

    @property
    def has_dform(self) -> bool:
        return "no d-form" not in self.notes


_R = "rational coefficients"
_D = "radical coefficients, stored as 34-digit decimals"

_ENTRIES = [
    CatalogEntry(
        name="(4,3)_1", kind="2n", claimed_order=3, exact=True,
        source="Carpenter-Kennedy 1994 four-stage pair, first member",
        A=("0", "-5/9", "-1", "-33/25"),
        B=("1/9", "3/4", "2/5", "5/4"),
        c=("0", "1/9", "4/9", "6/9"),
    ),
    CatalogEntry(
        name="(4,3)_2", kind="2n", claimed_order=3, exact=True,
        source="Carpenter-Kennedy 1994 four-stage pair, second member",
        A=("0", "-11/15", "-5/3", "-1"),
        B=("1/3", "5/6", "3/5", "1/4"),
        c=("0", "3/9", "5/9", "8/9"),
    ),
    CatalogEntry(
        name="CK54_S1", kind="2n", claimed_order=4, exact=False,
        source="Carpenter-Kennedy 1994 five-stage SOLUTION 1",
        A=("0", "-0.4812317431372", "-1.049562606709", "-1.602529574275",
           "-1.778267193916"),
        B=("9.7618354692056E-2", "0.4122532929155", "0.4402169639311",
           "1.426311463224", "0.1978760537318"),
        c=("0", "9.7618354692056E-2", "0.3114822768438", "0.5120100121666",
           "0.8971360011895"),
    ),
    CatalogEntry(
        name="CK54_S2", kind="2n", claimed_order=4, exact=False,
        source="Carpenter-Kennedy 1994 five-stage SOLUTION 2",
        A=("0", "-0.4801594388478", "-1.4042471952", "-2.016477077503",
           "-1.056444269767"),
        B=("0.1028639988105", "0.7408540575767", "0.7426530946684",
           "0.4694937902358", "0.1881733382888"),
        c=("0", "0.1028639988105", "0.487989987833", "0.6885177231562",
           "0.9023816453077"),
    ),
    CatalogEntry(
        name="CK54_S3", kind="2n", claimed_order=4, exact=False,
        source="Carpenter-Kennedy 1994 five-stage SOLUTION 3",
        A=("0", "-0.4178904745", "-1.192151694643", "-1.697784692471",
           "-1.514183444257"),
        B=("0.1496590219993", "0.3792103129999", "0.8229550293869",
           "0.6994504559488", "0.1530572479681"),
        c=("0", "0.1496590219993", "0.3704009573644", "0.6222557631345",
           "0.9582821306748"),
    ),
    CatalogEntry(
        name="CK54_S4", kind="2n", claimed_order=4, exact=False,
        source="Carpenter-Kennedy 1994 five-stage SOLUTION 4",
        A=("0", "-0.7274361725534", "-1.906288083353", "-1.444507585809",
           "-1.365489400418"),
        B=("4.1717869324523E-2", "1.232835518522", "0.5242444514624",
           "0.7212913223969", "0.2570977031703"),
        c=("0", "4.1717869324523E-2", "0.377744236865", "0.6295990426348",
           "0.8503409780005"),
    ),
    CatalogEntry(
        name="(5,4)_1", kind="2n", claimed_order=4, exact=False,
        source="five-stage pair under c2 + c5 = 1, first member; " + _D,
        A=_54_1_A, B=_54_1_B, c=_54_1_c,
    ),
    CatalogEntry(
        name="(5,4)_2", kind="2n", claimed_order=4, exact=False,
        source="five-stage pair under c2 + c5 = 1, second member; " + _D,
        A=_54_2_A, B=_54_2_B, c=_54_1_c,
    ),
    CatalogEntry(
        name="(5,4)_3", kind="dform", claimed_order=4, exact=False,
        source="five-stage pair with all interior ratios 2, first member; " + _D,
        c=_54_3_c + ("1",),
        d=("1", "2", "2", "2", "2", "1"),
    ),
    CatalogEntry(
        name="(5,4)_4", kind="dform", claimed_order=4, exact=False,
        source="five-stage pair with all interior ratios 2, second member; " + _D,
        c=_54_4_c + ("1",),
        d=("1", "2", "2", "2", "2", "1"),
    ),
    CatalogEntry(
        name="(5,4)_5", kind="2n", claimed_order=4, exact=True,
        source="the known five-stage order-four scheme with " + _R,
        notes="no d-form (c2 = c3); no mirror counterpart (c5 = 1)",
        A=("0", "-1", "-1", "-11", "1/10"),
        B=("1/2", "2/3", "-1/2", "-1/10", "1/6"),
        c=("0", "1/2", "1/2", "0", "1"),
    ),
    CatalogEntry(
        name="(6,4)_1", kind="dform", claimed_order=4, exact=False,
        source="self-reflected six-stage scheme with all interior ratios 2; " + _D,
        notes="self-reflected",
        c=("0", _64_1_C2, _64_1_C3, "1/2",
           _decimal_complement(_64_1_C3), _decimal_complement(_64_1_C2), "1"),
        d=("1", "2", "2", "2", "2", "2", "1"),
    ),
    CatalogEntry(
        name="(6,4)_2", kind="2n", claimed_order=4, exact=False,
        source="self-reflected six-stage scheme, ratios not equal to 2 (first)",
        notes="self-reflected",
        A=("0", "-6.031817048888810491391377264767e-01",
           "-1.363368319594623838259959855767e+00",
           "-2.967773103326277497583509014746e-01",
           "-6.263264022440050754531253706180e-01",
           "-1.314148538206011636475086658292e+00"),
        B=("1.709928027134245603242499940137e-01",
           "4.823996417074247639531967922484e-01",
           "2.997495407007149877239893157502e-01",
           "1.592788329289030209205971711461e-01",
           "4.170565624503425105376525782607e-01",
           "4.309095745334582935148984815673e-01"),
        c=("0", "1.709928027134245603242499940137e-01",
           "3.624178060979794860791199041947e-01", "0.5",
           "6.375821939020205139208800958053e-01",
           "8.290071972865754396757500059863e-01"),
    ),
    CatalogEntry(
        name="(6,4)_3", kind="2n", claimed_order=4, exact=False,
        source="self-reflected six-stage scheme, ratios not equal to 2 (second)",
        notes="self-reflected",
        A=("0", "-6.416708334845571026342325707722e-01",
           "-2.327050967547145814787059991623e+00",
           "-2.279146815287159770076873625409e+00",
           "-1.342061812908205877178026117183e+00",
           "-3.862002622951114837161553551155e+00"),
        B=("3.788384854424563341372856700833e-02",
           "2.648805722810717308543538775008e-01",
           "2.210064599000365587870662788315e+00",
           "5.910022949231203114708031548267e-01",
           "5.712583097229739358762356434599e-01",
           "1.057235974192264216640141659307e-01"),
        c=("0", "3.788384854424563341372856700833e-02",
           "1.327982832358555939494038565940e-01", "0.5",
           "8.672017167641444060505961434060e-01",
           "9.621161514557543665862714329917e-01"),
    ),
    CatalogEntry(
        name="(6,4)_4", kind="2n", claimed_order=4, exact=True,
        source="six-stage mirror pair at c2 = 1/8 with " + _R + ", first member",
        A=("0", "-11/32", "-8/7", "-2", "-1/2", "-7/8"),
        B=("1/8", "4/21", "1", "1/2", "1/6", "4/11"),
        c=("0", "1/8", "1/4", "1/2", "3/4", "7/8"),
    ),
    CatalogEntry(
        name="(6,4)_5", kind="2n", claimed_order=4, exact=True,
        source="six-stage mirror pair at c2 = 1/8 with " + _R + ", second member",
        A=("0", "-21/32", "-8/11", "-2/3", "-3/2", "-11/8"),
        B=("1/8", "4/11", "1/3", "1/2", "1/2", "4/21"),
        c=("0", "1/8", "1/4", "1/2", "3/4", "7/8"),
    ),
    CatalogEntry(
        name="(6,4)_6", kind="2n", claimed_order=4, exact=True,
        source="six-stage scheme with paired nodes (c2 = c3, c5 = c6), " + _R,
        notes="no d-form (c2 = c3 and c5 = c6)",
        A=("0", "-1", "-1", "-1/2", "-2", "-1"),
        B=("1/6", "3/8", "1/3", "2/3", "3/8", "1/6"),
        c=("0", "1/6", "1/6", "1/2", "5/6", "5/6"),
    ),
    CatalogEntry(
        name="(6,4)_7", kind="2n", claimed_order=4, exact=True,
        source="six-stage all-minus-one-register family at c2 = 1/2, " + _R,
        notes="no d-form (c2 = c3, c4 = c5, c6 = 1)",
        A=("0", "-1", "-1", "-1", "-1", "-1"),
        B=("1/2", "2/3", "-1/2", "-1/12", "1", "1/6"),
        c=("0", "1/2", "1/2", "0", "0", "1"),
    ),
    CatalogEntry(
        name="(6,4)_8", kind="2n", claimed_order=4, exact=True,
        source="six-stage all-minus-one-register family at c2 = 1, " + _R,
        notes="no d-form (c2 = c3, c4 = c5, c6 = 1)",
        A=("0", "-1", "-1", "-1", "-1", "-1"),
        B=("1", "-1/36", "-1/2", "2/3", "1/2", "7/36"),
        c=("0", "1", "1", "1/2", "1/2", "1"),
    ),
    CatalogEntry(
        name="(8,4)_1", kind="dform", claimed_order=4, exact=False,
        source="self-reflected eight-stage scheme with all interior ratios 2; " + _D,
        notes="self-reflected",
        c=("0", _84_1_C2, _84_1_C3, _decimal_complement(_84_1_C3), "1/2",
           _84_1_C3, _decimal_complement(_84_1_C3), _decimal_complement(_84_1_C2),
           "1"),
        d=("1", "2", "2", "2", "2", "2", "2", "2", "1"),
    ),
]

_BY_NAME = {e.name: e for e in _ENTRIES}

#: mirror pairs the catalog realizes (each row: first -> second under reflection)
REFLECTION_PAIRS = (
    ("(4,3)_1", "(4,3)_2"),
    ("CK54_S1", "CK54_S2"),
    ("CK54_S3", "CK54_S4"),
    ("(5,4)_1", "(5,4)_2"),
    ("(5,4)_3", "(5,4)_4"),
    ("(6,4)_4", "(6,4)_5"),
)

#: schemes equal to their own mirror
SELF_REFLECTED = ("(6,4)_1", "(6,4)_2", "(6,4)_3", "(8,4)_1")


def catalog_names() -> list[str]:
    return [e.name for e in _ENTRIES]


def catalog_get(name: str) -> CatalogEntry:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise UnknownSchemeError(name) from None
