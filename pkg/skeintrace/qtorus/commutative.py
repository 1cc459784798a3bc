#!/usr/bin/env python3
"""
Commutative Laurent Polynomials and X-Variable Forms

The classical limit w = 1 of a quantum torus element, and the rewriting of an
arc-generator element in the variables X_e = Z_e^2 with q = w^4.
"""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from skeintrace.qtorus.laurent import OmegaLaurent
from skeintrace.qtorus.torus import Exponents, QTElement

Q_PER_OMEGA = 4


class CommutativeLaurent:
    """Integer Laurent polynomial in commuting variables"""

    __slots__ = ("names", "_terms")

    def __init__(self, names: Sequence[str], terms: Optional[Mapping[Exponents, int]] = None):
        self.names: Tuple[str, ...] = tuple(names)
        self._terms: Dict[Exponents, int] = {tuple(k): int(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def one(cls, names: Sequence[str]) -> "CommutativeLaurent":
        return cls(names, {(0,) * len(names): 1})

    def as_dict(self) -> Dict[Exponents, int]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "CommutativeLaurent") -> "CommutativeLaurent":
        result = dict(self._terms)
        for k, v in other._terms.items():
            result[k] = result.get(k, 0) + v
        return CommutativeLaurent(self.names, result)

    def __mul__(self, other: "CommutativeLaurent") -> "CommutativeLaurent":
        result: Dict[Exponents, int] = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                result[key] = result.get(key, 0) + ca * cb
        return CommutativeLaurent(self.names, result)

    def scale(self, factor: int) -> "CommutativeLaurent":
        return CommutativeLaurent(self.names, {k: v * factor for k, v in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CommutativeLaurent):
            return NotImplemented
        return self.names == other.names and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.names, frozenset(self._terms.items())))

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for vec, c in sorted(self._terms.items()):
            factors = [f"Z[{self.names[i]}]^{e}" for i, e in enumerate(vec) if e]
            parts.append(" * ".join(([str(c)] if c != 1 or not factors else []) + factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"CommutativeLaurent({self.to_text()})"


def specialize_commutative(a: QTElement) -> CommutativeLaurent:
    """Substitute w = 1 and merge monomials commutatively"""
    return CommutativeLaurent(a.torus.names, {vec: coeff.evaluate_at_one() for vec, coeff in a.items()})


@dataclass(frozen=True)
class XForm:
    """Element written in X_e = Z_e^2 with q-Laurent coefficients"""

    names: Tuple[str, ...]
    terms: Tuple[Tuple[Exponents, OmegaLaurent], ...]

    def is_positive(self) -> bool:
        return all(coeff.is_nonnegative() for _, coeff in self.terms)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for vec, coeff in self.terms:
            factors = [f"X[{self.names[i]}]^{e}" for i, e in enumerate(vec) if e]
            for power, c in coeff.items():
                head = [] if c == 1 else [str(c)]
                head.append(f"q^{power}")
                parts.append(" * ".join(head + factors))
        return " + ".join(parts)

    def to_json(self) -> List[Dict[str, object]]:
        return [
            {
                "monomial": {self.names[i]: e for i, e in enumerate(vec) if e},
                "coefficient": coeff.to_json(),
            }
            for vec, coeff in self.terms
        ]


def x_subalgebra_form(a: QTElement) -> Optional[XForm]:
    """Rewrite in X-variables, or None if the element is outside that subalgebra

    N_Z(2u) is the ordered product of X_e^u_e, so monomials carry over
    directly; only exponent parity and the w-exponents mod 4 need checking.
    """
    terms = []
    for vec, coeff in a.items():
        if any(e % 2 for e in vec):
            return None
        q_coeff = coeff.divide_exponents(Q_PER_OMEGA)
        if q_coeff is None:
            return None
        terms.append((tuple(e // 2 for e in vec), q_coeff))
    return XForm(a.torus.names, tuple(terms))
