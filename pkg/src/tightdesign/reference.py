"""Published reference tables: Hermite rows, zero decimals, D_i bounds, (B, C) rows, thresholds, f and g.

Everything here is transcribed data. Nothing in the certified path trusts it; it is
only compared against, or used as pinned inputs in reproduction mode.
"""

from __future__ import annotations

import re
from fractions import Fraction

# H_s as printed (the s=8 row carries -21 where the recurrence gives -28)
HERMITE_ROWS: dict[int, str] = {
    1: "x",
    2: "x^2-1",
    3: "x^3-3x",
    4: "x^4-6x^2+3",
    5: "x^5-10x^3+15x",
    6: "x^6-15x^4+45x^2-15",
    7: "x^7-21x^5+105x^3-105x",
    8: "x^8-21x^6+210x^4-420x^2+105",
    9: "x^9-36x^7+378x^5-1260x^3+945x",
}

# (s, i) -> (zero decimal as printed, D_i lower bound as printed)
ZERO_ROWS: dict[tuple[int, int], tuple[str, str]] = {
    (1, 0): ("0", "1"),
    (2, 1): ("1", "1"),
    (3, 0): ("0", "1"),
    (3, 1): ("1.7320508", "2"),  # printed as sqrt(3)
    (4, 1): ("0.7420", "1.817"),
    (4, 2): ("2.3344", "5.718"),
    (5, 0): ("0", "3"),
    (5, 1): ("1.3556", "4.649"),
    (5, 2): ("2.8570", "20.64"),
    (6, 1): ("0.61670659019", "6.994"),
    (6, 2): ("1.88917587775", "15.02"),
    (6, 3): ("3.32425743355", "88.46"),
    (7, 0): ("0", "15"),
    (7, 1): ("1.1544", "20.69"),
    (7, 2): ("2.3668", "57.82"),
    (7, 3): ("3.7504", "433.1"),
    (8, 1): ("0.5391", "41.09"),
    (8, 2): ("1.6365", "73.30"),
    (8, 3): ("2.8025", "255.7"),
    (8, 4): ("4.1445", "2365"),
    (9, 0): ("0", "105"),
    (9, 1): ("1.0233", "135.4"),
    (9, 2): ("2.0768", "299.5"),
    (9, 3): ("3.2054", "1267"),
    (9, 4): ("4.5127", "14159"),
}

# Exact closed forms for some printed zeros: (s, i) -> (a, b, c) meaning sqrt(a + b*sqrt(c))
ZERO_SURDS: dict[tuple[int, int], tuple[int, int, int]] = {
    (3, 1): (3, 0, 0),
    (4, 1): (3, -1, 6),
    (4, 2): (3, 1, 6),
    (5, 1): (5, -1, 10),
    (5, 2): (5, 1, 10),
}

# s -> (B, [C_i for i = (0), 1, ..., floor(s/2)])
CONSTANT_ROWS: dict[int, tuple[int, list[int]]] = {
    4: (10, [2, 14]),
    5: (10, [1, 12, 88]),
    6: (100, [11, 63, 558]),
    7: (10, [6, 93, 458, 4649]),
    8: (100, [100, 501, 2561, 30779]),
    9: (100, [9, 773, 3186, 17732, 247789]),
}

THRESHOLDS: dict[int, Fraction] = {
    5: Fraction("33.76"),
    6: Fraction("156.96"),
    7: Fraction("86.55"),
    8: Fraction("106.77"),
    9: Fraction("146.37"),
}
BETA_STAR_FOUR = Fraction("19.35")
T_STAR_FOUR = "9.1971905725"

# sieve classes: p -> (excluded k residues, excluded v residues)
SIEVE_CLASSES: dict[int, tuple[set[int], set[int]]] = {
    7: (set(), {3}),
    11: (set(), {3}),
    13: ({12}, {1, 3}),
    17: ({5, 9, 11, 12}, {0, 1, 8, 12, 13, 14}),
}

F_TEXT = (
    "-3408102864+1506333312k^{2}+974873344k^{4}-488998144k^{6}+62323584k^{8}-3309568k^{10}+65536k^{12}"
    "+9310949028v-1506333312kv-4733985888k^{2}v-1949746688k^{3}v-1015706784k^{4}v+1466994432k^{5}v"
    "+511604992k^{6}v-249294336k^{7}v-49810560k^{8}v+16547840k^{9}v+1744896k^{10}v-393216k^{11}v"
    "-16384k^{12}v-11097146016v^{2}+4733985888kv^{2}+6922441360k^{2}v^{2}+2031413568k^{3}v^{2}"
    "-1428764528k^{4}v^{2}-1534814976k^{5}v^{2}+209662720k^{6}v^{2}+199242240k^{7}v^{2}"
    "-21567744k^{8}v^{2}-8724480k^{9}v^{2}+786432k^{10}v^{2}+98304k^{11}v^{2}+7281931941v^{3}"
    "-5947568016kv^{3}-4944873072k^{2}v^{3}+412538336k^{3}v^{3}+1856597696k^{4}v^{3}"
    "+243542016k^{5}v^{3}-293538048k^{6}v^{3}-13016064k^{7}v^{3}+17194752k^{8}v^{3}-327680k^{9}v^{3}"
    "-253952k^{10}v^{3}-2755473732v^{4}+3929166288kv^{4}+1497511456k^{2}v^{4}-1155170432k^{3}v^{4}"
    "-582955856k^{4}v^{4}+183266304k^{5}v^{4}+58253568k^{6}v^{4}-16432128k^{7}v^{4}-1102464k^{8}v^{4}"
    "+368640k^{9}v^{4}+544096980v^{5}-1459281552kv^{5}+28759472k^{2}v^{5}+469164960k^{3}v^{5}"
    "-7038496k^{4}v^{5}-59703552k^{5}v^{5}+6536960k^{6}v^{5}+2050560k^{7}v^{5}-328320k^{8}v^{5}"
    "-18769932v^{6}+293023248kv^{6}-127930016k^{2}v^{6}-58917568k^{3}v^{6}+27050224k^{4}v^{6}"
    "+1258752k^{5}v^{6}-1642240k^{6}v^{6}+182784k^{7}v^{6}-14780538v^{7}-24513072kv^{7}"
    "+27560816k^{2}v^{7}-2875616k^{3}v^{7}-2296192k^{4}v^{7}+698880k^{5}v^{7}-61184k^{6}v^{7}"
    "+2961396v^{8}-764688kv^{8}-1582560k^{2}v^{8}+772608k^{3}v^{8}-143664k^{4}v^{8}+10752k^{5}v^{8}"
    "-191952v^{9}+203472kv^{9}-52816k^{2}v^{9}+7520k^{3}v^{9}-640k^{4}v^{9}+972v^{10}-2352kv^{10}"
    "+336k^{2}v^{10}+45v^{11}"
)

G_TEXT = (
    "2k^{4}v-26k^{4}-4k^{3}v^{2}+52k^{3}v+2k^{2}v^{3}-20k^{2}v^{2}-120k^{2}v+258k^{2}-6kv^{3}"
    "+120kv^{2}-258kv+v^{4}-23v^{3}+123v^{2}-433v+764"
)

_TERM = re.compile(r"([+-]?)(\d*)((?:[a-z](?:\^\{?\d+\}?)?)*)")
_VAR = re.compile(r"([a-z])(?:\^\{?(\d+)\}?)?")


def parse_poly(text: str, variables: tuple[str, ...]) -> dict[tuple[int, ...], int]:
    """Parse an integer polynomial written like ``3k^{2}v-v^2+7`` into {exponents: coeff}."""
    out: dict[tuple[int, ...], int] = {}
    pos = 0
    text = text.replace(" ", "")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {text[pos:pos + 20]!r}")
        sign, digits, mono = m.groups()
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        exps = [0] * len(variables)
        for var, e in _VAR.findall(mono):
            exps[variables.index(var)] += int(e) if e else 1
        key = tuple(exps)
        out[key] = out.get(key, 0) + coeff
        pos = m.end()
    return {k: c for k, c in out.items() if c}


def hermite_row(s: int) -> list[int]:
    """Printed H_s as a low-to-high coefficient list."""
    terms = parse_poly(HERMITE_ROWS[s], ("x",))
    deg = max(e[0] for e in terms)
    return [terms.get((d,), 0) for d in range(deg + 1)]


def f_literal() -> dict[tuple[int, int], int]:
    return parse_poly(F_TEXT, ("k", "v"))


def g_literal() -> dict[tuple[int, int], int]:
    return parse_poly(G_TEXT, ("k", "v"))


def d_bound(s: int, i: int) -> Fraction:
    return Fraction(ZERO_ROWS[(s, abs(i))][1])
