#!/usr/bin/env python3
"""
Local Building Blocks of the State Sum

Triangle factors for one stated strand in a corner, their elevation-ordered
products, and the value of a crossingless stated diagram in a biangle.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

from skeintrace.qtorus.algebras import slot_index
from skeintrace.qtorus.laurent import OmegaLaurent
from skeintrace.qtorus.torus import QTElement, QuantumTorus
from skeintrace.surface.triangulation import Corner

PLUS = "+"
MINUS = "-"
SIGNS = (PLUS, MINUS)

Signs = Tuple[str, str]


def sign_number(sign: str) -> int:
    """+ reads as -1 and - as +1 in the exponents of triangle factors"""
    if sign == PLUS:
        return -1
    if sign == MINUS:
        return 1
    raise ValueError(f"unknown sign {sign!r}")


def strand_slots(corner: Corner) -> Tuple[int, int]:
    """Slots (a, b) met by a strand in a corner: (2,3), (3,1), (1,2) for corners 1, 2, 3"""
    return corner.sides


def triangle_factor(torus: QuantumTorus, corner: Corner, signs: Signs) -> QTElement:
    """w^(-s1 s2) Z_a^s1 Z_b^s2, or 0 for the state (-, +)"""

    a, b = strand_slots(corner)
    if a == b:
        raise ValueError(f"strand in corner {corner.label()} meets one slot twice")
    s1, s2 = signs
    if (s1, s2) == (MINUS, PLUS):
        return torus.zero()
    x, y = sign_number(s1), sign_number(s2)
    vec = [0] * torus.rank
    vec[slot_index(corner.triangle, a)] = x
    vec[slot_index(corner.triangle, b)] = y
    # the Weyl monomial of x e_a + y e_b, since B(a, b) = 1 for a cyclic pair
    return torus.weyl(vec)


def triangle_product(torus: QuantumTorus, strands: Sequence[Tuple[Corner, Signs]]) -> QTElement:
    """Ordered product of triangle factors, lowest strand first"""

    result = torus.one()
    for corner, signs in strands:
        factor = triangle_factor(torus, corner, signs)
        if factor.is_zero():
            return factor
        result = result * factor
    return result


@dataclass(frozen=True)
class BiangleDiagram:
    """Counts of stated components in a biangle

    ``a`` components cross from the left side to the right side, ``b`` return
    to the left side and ``c`` to the right side; ``d`` counts closed circles.
    Suffixes give the states (upper, lower): ``b_pm`` is b^+_-.
    """

    a_pp: int = 0
    a_pm: int = 0
    a_mp: int = 0
    a_mm: int = 0
    b_pp: int = 0
    b_pm: int = 0
    b_mp: int = 0
    b_mm: int = 0
    c_pp: int = 0
    c_pm: int = 0
    c_mp: int = 0
    c_mm: int = 0
    d: int = 0

    @classmethod
    def parallel(cls, left: Sequence[str], right: Sequence[str]) -> "BiangleDiagram":
        """Parallel strands joining the states `left[i]` and `right[i]`"""
        if len(left) != len(right):
            raise ValueError("parallel strands need as many states on both sides")
        counts = {"a_pp": 0, "a_pm": 0, "a_mp": 0, "a_mm": 0}
        for up, down in zip(left, right):
            counts["a_" + ("p" if up == PLUS else "m") + ("p" if down == PLUS else "m")] += 1
        return cls(**counts)


def biangle_value(diagram: BiangleDiagram) -> OmegaLaurent:
    if any((diagram.a_pm, diagram.a_mp, diagram.b_pp, diagram.b_mm, diagram.c_pp, diagram.c_mm)):
        return OmegaLaurent.zero()
    sign = -1 if (diagram.b_pm + diagram.c_mp) % 2 else 1
    power = -(5 * diagram.b_pm + diagram.b_mp) + (5 * diagram.c_mp + diagram.c_pm)
    circle = OmegaLaurent({4: -1, -4: -1})
    return OmegaLaurent.monomial(power, sign) * circle ** diagram.d
