#!/usr/bin/env python3
"""
Square-Root Quantum Torus

Generators ``x_1..x_n`` carry an antisymmetric integer form ``B`` with
``x_i x_j = w^(2 B_ij) x_j x_i``. Elements are stored in normal form: a sparse
map from exponent vectors to OmegaLaurent coefficients, where the exponent
vector ``v`` stands for the ordered product ``x_1^v_1 ... x_n^v_n``.

Weyl-ordered monomials ``W(v) = w^(-sum_{i<j} v_i v_j B_ij) N(v)`` satisfy
``W(a) W(b) = w^<a,b> W(a+b)`` with ``<a,b> = sum_ij a_i b_j B_ij``.
"""

from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

import numpy as np

from skeintrace.qtorus.laurent import OmegaLaurent

Exponents = Tuple[int, ...]


class QuantumTorus:
    """Generator names plus the antisymmetric commutation form"""

    def __init__(self, names: Sequence[str], form: np.ndarray):
        form = np.asarray(form, dtype=np.int64)
        if form.shape != (len(names), len(names)):
            raise ValueError(f"form shape {form.shape} does not match {len(names)} generators")
        if not np.array_equal(form, -form.T):
            raise ValueError("commutation form must be antisymmetric")
        self.names: Tuple[str, ...] = tuple(names)
        self.form = form
        self._lower = np.tril(form, -1)
        self._lower_rows: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in self._lower)
        self._upper = np.triu(form, 1)
        self._key = (self.names, form.tobytes())

    @property
    def rank(self) -> int:
        return len(self.names)

    def same_as(self, other: "QuantumTorus") -> bool:
        return self is other or self._key == other._key

    # Phases

    def phase_column(self, b: Exponents) -> List[Tuple[int, int]]:
        """Nonzero entries (i, c_i) of c = L b, L the strictly lower part of the form"""
        support = [(j, y) for j, y in enumerate(b) if y]
        column = []
        for i, row in enumerate(self._lower_rows):
            c = sum(row[j] * y for j, y in support)
            if c:
                column.append((i, c))
        return column

    def product_phase(self, a: Exponents, b: Exponents) -> int:
        """w-exponent in N(a) N(b) = w^phase N(a+b)"""
        return 2 * sum(a[i] * c for i, c in self.phase_column(b))

    def weyl_phase(self, v: Exponents) -> int:
        """w-exponent in W(v) = w^phase N(v)"""
        if not self.rank:
            return 0
        vec = np.asarray(v, dtype=np.int64)
        return -int(vec @ self._upper @ vec)

    def pairing(self, a: Exponents, b: Exponents) -> int:
        if not self.rank:
            return 0
        return int(np.asarray(a, dtype=np.int64) @ self.form @ np.asarray(b, dtype=np.int64))

    # Constructors

    def unit_vector(self, index: int, power: int = 1) -> Exponents:
        vec = [0] * self.rank
        vec[index] = power
        return tuple(vec)

    def zero(self) -> "QTElement":
        return QTElement(self, {})

    def one(self) -> "QTElement":
        return QTElement(self, {(0,) * self.rank: OmegaLaurent.one()})

    def scalar(self, value: Union[int, OmegaLaurent]) -> "QTElement":
        return QTElement(self, {(0,) * self.rank: OmegaLaurent.coerce(value)})

    def monomial(self, exponents: Sequence[int],
                 coefficient: Union[int, OmegaLaurent] = 1) -> "QTElement":
        if len(exponents) != self.rank:
            raise ValueError(f"expected {self.rank} exponents, got {len(exponents)}")
        return QTElement(self, {tuple(int(e) for e in exponents): OmegaLaurent.coerce(coefficient)})

    def generator(self, index: int, power: int = 1) -> "QTElement":
        return self.monomial(self.unit_vector(index, power))

    def weyl(self, exponents: Sequence[int]) -> "QTElement":
        """Weyl-ordered monomial W(v)"""
        vec = tuple(int(e) for e in exponents)
        return self.monomial(vec, OmegaLaurent.monomial(self.weyl_phase(vec)))


class QTElement:
    """Element of a quantum torus in normal form"""

    __slots__ = ("torus", "_terms")

    def __init__(self, torus: QuantumTorus, terms: Mapping[Exponents, OmegaLaurent]):
        self.torus = torus
        self._terms: Dict[Exponents, OmegaLaurent] = {
            tuple(k): v for k, v in terms.items() if not v.is_zero()
        }

    def _check(self, other: "QTElement"):
        if not self.torus.same_as(other.torus):
            raise ValueError("quantum torus elements over different generator sets")

    def _lift(self, other: Union["QTElement", int, OmegaLaurent]) -> "QTElement":
        if isinstance(other, QTElement):
            self._check(other)
            return other
        return self.torus.scalar(other)

    # Structure

    def items(self) -> Iterator[Tuple[Exponents, OmegaLaurent]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, exponents: Sequence[int]) -> OmegaLaurent:
        return self._terms.get(tuple(exponents), OmegaLaurent.zero())

    def exponent_vectors(self) -> List[Exponents]:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def term_count(self) -> int:
        """Number of (monomial, w-power) pairs"""
        return sum(len(c) for c in self._terms.values())

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # Arithmetic

    def __add__(self, other: Union["QTElement", int, OmegaLaurent]) -> "QTElement":
        other = self._lift(other)
        result = dict(self._terms)
        for k, v in other._terms.items():
            result[k] = result[k] + v if k in result else v
        return QTElement(self.torus, result)

    __radd__ = __add__

    def __neg__(self) -> "QTElement":
        return QTElement(self.torus, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: Union["QTElement", int, OmegaLaurent]) -> "QTElement":
        return self + (-self._lift(other))

    def __rsub__(self, other: Union[int, OmegaLaurent]) -> "QTElement":
        return self.torus.scalar(other) - self

    def __mul__(self, other: Union["QTElement", int, OmegaLaurent]) -> "QTElement":
        if not isinstance(other, QTElement):
            scalar = OmegaLaurent.coerce(other)
            return QTElement(self.torus, {k: v * scalar for k, v in self._terms.items()})
        self._check(other)
        result: Dict[Exponents, OmegaLaurent] = {}
        right = [(b, cb, self.torus.phase_column(b)) for b, cb in other._terms.items()]
        for a, ca in self._terms.items():
            for b, cb, column in right:
                key = tuple(x + y for x, y in zip(a, b))
                term = ca.times_shifted(cb, 2 * sum(a[i] * c for i, c in column))
                result[key] = result[key] + term if key in result else term
        return QTElement(self.torus, result)

    def __rmul__(self, other: Union[int, OmegaLaurent]) -> "QTElement":
        scalar = OmegaLaurent.coerce(other)
        return QTElement(self.torus, {k: scalar * v for k, v in self._terms.items()})

    def __pow__(self, exponent: int) -> "QTElement":
        if exponent < 0:
            return self.monomial_inverse() ** (-exponent)
        result = self.torus.one()
        for _ in range(exponent):
            result = result * self
        return result

    def monomial_inverse(self) -> "QTElement":
        """Inverse of c w^k N(v); only unit monomials are invertible"""
        if not self.is_monomial():
            raise ValueError("only single monomials can be inverted")
        (v, coeff), = self._terms.items()
        if len(coeff) != 1 or abs(next(coeff.items())[1]) != 1:
            raise ValueError("monomial coefficient is not a unit")
        neg = tuple(-x for x in v)
        # N(v) N(-v) = w^phase
        phase = self.torus.product_phase(v, neg)
        return QTElement(self.torus, {neg: (coeff ** -1).shift(-phase)})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = self.torus.scalar(other)
        if not isinstance(other, QTElement):
            return NotImplemented
        return self.torus.same_as(other.torus) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # Rendering

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for vec, coeff in self.items():
            factors = [f"Z[{self.torus.names[i]}]^{e}" for i, e in enumerate(vec) if e]
            for power, c in coeff.items():
                head = [] if c == 1 else [str(c)]
                head.append(f"w^{power}")
                parts.append(" * ".join(head + factors))
        return " + ".join(parts)

    def to_json(self) -> List[Dict[str, object]]:
        return [
            {
                "monomial": {self.torus.names[i]: e for i, e in enumerate(vec) if e},
                "coefficient": coeff.to_json(),
            }
            for vec, coeff in self.items()
        ]

    def __repr__(self) -> str:
        return f"QTElement({self.to_text()})"


def multiply(a: QTElement, b: QTElement) -> QTElement:
    return a * b


def sum_elements(torus: QuantumTorus, elements: Iterable[QTElement]) -> QTElement:
    total: Dict[Exponents, OmegaLaurent] = {}
    for element in elements:
        for k, v in element._terms.items():
            total[k] = total[k] + v if k in total else v
    return QTElement(torus, total)


def weyl_bracket(torus: QuantumTorus, generators: Sequence[int]) -> QTElement:
    """w^(-sum_{i<j} B(g_i, g_j)) times the ordered product of the generators"""

    product = torus.one()
    for g in generators:
        product = product * torus.generator(g)
    correction = -sum(int(torus.form[generators[i], generators[j]])
                      for i in range(len(generators)) for j in range(i + 1, len(generators)))
    return product * OmegaLaurent.monomial(correction)


def is_positive(a: QTElement) -> bool:
    """Every coefficient lies in Z_{>=0}[w, w^-1]"""
    return all(coeff.is_nonnegative() for _, coeff in a.items())


def crossing_vector(torus: QuantumTorus, generators: Iterable[int]) -> Exponents:
    vec = [0] * torus.rank
    for g in generators:
        vec[g] += 1
    return tuple(vec)


def element_from_weyl_terms(torus: QuantumTorus,
                            terms: Mapping[Exponents, OmegaLaurent]) -> QTElement:
    """Sum of coeff * W(v) over the given map"""
    normal: Dict[Exponents, OmegaLaurent] = {}
    for vec, coeff in terms.items():
        shifted = coeff.shift(torus.weyl_phase(vec))
        normal[vec] = normal[vec] + shifted if vec in normal else shifted
    return QTElement(torus, normal)



def weyl_coefficients(a: QTElement) -> Dict[Tuple[Tuple[str, int], ...], OmegaLaurent]:
    """Weyl-basis coefficients keyed by named exponents, independent of generator order"""
    names = a.torus.names
    return {tuple(sorted((names[i], e) for i, e in enumerate(vec) if e)): coeff.shift(-a.torus.weyl_phase(vec))
            for vec, coeff in a.items()}
