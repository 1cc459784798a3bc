#!/usr/bin/env python3
"""
Quantum Tori Attached to a Triangulation

The triangle algebra has one generator per (triangle, slot) with
``Z_{t,s} Z_{t,s+1} = w^2 Z_{t,s+1} Z_{t,s}`` and commuting generators across
triangles. The arc algebra has one generator per arc with the epsilon matrix
as commutation form. Arc generators embed as Weyl monomials of their slot
vectors, which is an algebra map because the pairing of two slot vectors is
the epsilon entry of the two arcs.
"""

from typing import Dict

import numpy as np

from skeintrace.errors import InternalInvariantError
from skeintrace.qtorus.laurent import OmegaLaurent
from skeintrace.qtorus.torus import Exponents, QTElement, QuantumTorus
from skeintrace.surface.triangulation import SLOT_COUNT, Triangulation, next_slot


def slot_index(triangle: int, slot: int) -> int:
    return SLOT_COUNT * triangle + slot


def triangle_algebra(t: Triangulation) -> QuantumTorus:
    size = SLOT_COUNT * t.triangle_count
    form = np.zeros((size, size), dtype=np.int64)
    names = []
    for tri in range(t.triangle_count):
        for s in range(SLOT_COUNT):
            names.append(f"{tri}.{s + 1}")
            i, j = slot_index(tri, s), slot_index(tri, next_slot(s))
            form[i, j] = 1
            form[j, i] = -1
    return QuantumTorus(names, form)


def arc_algebra(t: Triangulation) -> QuantumTorus:
    return QuantumTorus([t.arc_label(a) for a in t.arcs()], t.epsilon_matrix())


def slot_vector(t: Triangulation, arc: int) -> Exponents:
    vec = [0] * (SLOT_COUNT * t.triangle_count)
    for tri, s in t.incidences(arc):
        vec[slot_index(tri, s)] += 1
    return tuple(vec)


def embed_arc_generators(t: Triangulation, triangles: QuantumTorus = None) -> Dict[int, QTElement]:
    """Image of every arc generator in the triangle algebra

    Interior arcs map to the product of their two slot generators, a
    self-folded arc to w^-1 times the product of its two slots, a boundary
    arc to its single slot generator.
    """
    triangles = triangles or triangle_algebra(t)
    return {arc: triangles.weyl(slot_vector(t, arc)) for arc in t.arcs()}


def to_arc_algebra(t: Triangulation, element: QTElement, arcs: QuantumTorus) -> QTElement:
    """Rewrite a triangle-algebra element lying in the arc subalgebra

    N_tri(v) = W_tri(v) * w^-wp_tri(v) and W_tri(sum u_e s_e) = W_arc(u).
    """
    triangles = element.torus
    terms: Dict[Exponents, OmegaLaurent] = {}
    for vec, coeff in element.items():
        u = []
        for arc in t.arcs():
            exps = {vec[slot_index(tri, s)] for tri, s in t.incidences(arc)}
            if len(exps) != 1:
                raise InternalInvariantError(
                    "arc_subalgebra",
                    f"slots of arc {t.arc_label(arc)} carry different exponents",
                    {"exponents": sorted(exps)},
                )
            u.append(exps.pop())
        arc_vec = tuple(u)
        shift = arcs.weyl_phase(arc_vec) - triangles.weyl_phase(vec)
        shifted = coeff.shift(shift)
        terms[arc_vec] = terms[arc_vec] + shifted if arc_vec in terms else shifted
    return QTElement(arcs, terms)
