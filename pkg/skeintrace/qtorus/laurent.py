#!/usr/bin/env python3
"""
Laurent Polynomials in One Formal Variable

Sparse ``{exponent: coefficient}`` representation with exact Python integers.
Zero coefficients are never stored, so two polynomials are equal iff their
term maps are equal.
"""

from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

Scalar = Union[int, "OmegaLaurent"]


def _trim(terms: Mapping[int, int]) -> Dict[int, int]:
    return {int(k): int(v) for k, v in terms.items() if v != 0}


class OmegaLaurent:
    """Element of Z[w, w^-1]"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[int, int]] = None):
        self._terms: Dict[int, int] = _trim(terms or {})

    @classmethod
    def zero(cls) -> "OmegaLaurent":
        return cls()

    @classmethod
    def one(cls) -> "OmegaLaurent":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "OmegaLaurent":
        return cls({exponent: coefficient})

    @classmethod
    def coerce(cls, value: Scalar) -> "OmegaLaurent":
        if isinstance(value, OmegaLaurent):
            return value
        if isinstance(value, int):
            return cls({0: value})
        raise TypeError(f"cannot coerce {type(value).__name__} to OmegaLaurent")

    # Structure

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._terms.items()))

    def as_dict(self) -> Dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_single_power(self) -> bool:
        """A single w-power with coefficient 1"""
        return len(self._terms) == 1 and next(iter(self._terms.values())) == 1

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def degree(self) -> Optional[int]:
        return max(self._terms) if self._terms else None

    def valuation(self) -> Optional[int]:
        return min(self._terms) if self._terms else None

    def evaluate_at_one(self) -> int:
        return sum(self._terms.values())

    def shift(self, exponent: int) -> "OmegaLaurent":
        """Multiply by w^exponent"""
        if exponent == 0:
            return self
        return OmegaLaurent({k + exponent: v for k, v in self._terms.items()})

    def divide_exponents(self, divisor: int) -> Optional["OmegaLaurent"]:
        """Substitute w^divisor -> w, or None when some exponent is not divisible"""
        if any(k % divisor for k in self._terms):
            return None
        return OmegaLaurent({k // divisor: v for k, v in self._terms.items()})

    # Arithmetic

    def __add__(self, other: Scalar) -> "OmegaLaurent":
        other = OmegaLaurent.coerce(other)
        result = dict(self._terms)
        for k, v in other._terms.items():
            result[k] = result.get(k, 0) + v
        return OmegaLaurent(result)

    __radd__ = __add__

    def __neg__(self) -> "OmegaLaurent":
        return OmegaLaurent({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: Scalar) -> "OmegaLaurent":
        return self + (-OmegaLaurent.coerce(other))

    def __rsub__(self, other: Scalar) -> "OmegaLaurent":
        return OmegaLaurent.coerce(other) - self

    def __mul__(self, other: Scalar) -> "OmegaLaurent":
        other = OmegaLaurent.coerce(other)
        result: Dict[int, int] = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                result[k1 + k2] = result.get(k1 + k2, 0) + v1 * v2
        return OmegaLaurent(result)

    __rmul__ = __mul__

    def times_shifted(self, other: "OmegaLaurent", exponent: int) -> "OmegaLaurent":
        """self * other * w^exponent"""
        if len(other._terms) != 1:
            return (self * other).shift(exponent)
        (k2, v2), = other._terms.items()
        k2 += exponent
        result = OmegaLaurent.__new__(OmegaLaurent)
        # v1 * v2 is nonzero whenever both factors are
        result._terms = {k1 + k2: v1 * v2 for k1, v1 in self._terms.items()}
        return result

    def __pow__(self, exponent: int) -> "OmegaLaurent":
        if exponent < 0:
            if len(self._terms) != 1 or abs(next(iter(self._terms.values()))) != 1:
                raise ValueError("only unit monomials have inverses")
            (k, v), = self._terms.items()
            return OmegaLaurent({k * exponent: v ** abs(exponent)})
        result = OmegaLaurent.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = OmegaLaurent.coerce(other)
        if not isinstance(other, OmegaLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # Rendering

    def to_text(self, variable: str = "w") -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, v in self.items():
            if k == 0:
                parts.append(str(v))
            elif v == 1:
                parts.append(f"{variable}^{k}")
            elif v == -1:
                parts.append(f"-{variable}^{k}")
            else:
                parts.append(f"{v}*{variable}^{k}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> Dict[str, int]:
        return {str(k): v for k, v in self.items()}

    def __repr__(self) -> str:
        return f"OmegaLaurent({self.to_text()})"
