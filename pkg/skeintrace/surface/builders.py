#!/usr/bin/env python3
"""
Standard Triangulated Surfaces

Label-based constructions of the surfaces used by the corpus and the tests.
Each triangle lists its side labels clockwise; repeated labels are glued.
"""

from typing import Callable, Dict, List, Sequence

from skeintrace.surface.triangulation import DecoratedSurface, Triangulation


def _build(genus: int, punctures: int, boundary_arcs: int,
           triangles: Sequence[Sequence[str]]) -> Triangulation:
    surface = DecoratedSurface(genus, punctures, boundary_arcs)
    return Triangulation.from_labels(surface, triangles).ensure_valid()


def once_punctured_torus() -> Triangulation:
    return _build(1, 1, 0, [["1", "2", "3"], ["1", "2", "3"]])


def twice_punctured_torus() -> Triangulation:
    return _build(1, 2, 0, [
        ["a", "b", "c"],
        ["a", "p", "r"],
        ["b", "q", "p"],
        ["c", "r", "q"],
    ])


def twice_punctured_torus_self_folded() -> Triangulation:
    """Twice-punctured torus whose last triangle is self-folded"""
    return _build(1, 2, 0, [
        ["1", "2", "3"],
        ["1", "2", "x"],
        ["3", "l", "x"],
        ["l", "e", "e"],
    ])


def four_punctured_sphere() -> Triangulation:
    """Boundary of a tetrahedron; arc labels name the two vertices they join"""
    return _build(0, 4, 0, [
        ["12", "23", "13"],
        ["03", "23", "02"],
        ["01", "13", "03"],
        ["02", "12", "01"],
    ])


def _octagon_fan() -> List[List[str]]:
    return [
        ["d2", "b", "a"],
        ["d3", "a", "d2"],
        ["d4", "b", "d3"],
        ["d5", "c", "d4"],
        ["d6", "d", "d5"],
        ["d", "c", "d6"],
    ]


def genus_two_one_puncture() -> Triangulation:
    return _build(2, 1, 0, _octagon_fan())


def genus_two_two_punctures() -> Triangulation:
    """Genus two with a second puncture placed inside the first fan triangle"""
    fan = _octagon_fan()
    s0, s1, s2 = fan[0]
    star = [[s0, "pA", "pC"], [s1, "pB", "pA"], [s2, "pC", "pB"]]
    return _build(2, 2, 0, star + fan[1:])


def bordered_sphere() -> Triangulation:
    """Sphere with two punctures and one boundary circle carrying one marked point"""
    return _build(0, 2, 1, [
        ["beta", "u", "v"],
        ["u", "w", "z"],
        ["v", "z", "w"],
    ])


def square() -> Triangulation:
    return _build(0, 0, 4, [["d", "p", "q"], ["d", "r", "s"]])


def single_triangle() -> Triangulation:
    return _build(0, 0, 3, [["a", "b", "c"]])


SURFACE_BUILDERS: Dict[str, Callable[[], Triangulation]] = {
    "once_punctured_torus": once_punctured_torus,
    "twice_punctured_torus": twice_punctured_torus,
    "twice_punctured_torus_self_folded": twice_punctured_torus_self_folded,
    "four_punctured_sphere": four_punctured_sphere,
    "genus_two_one_puncture": genus_two_one_puncture,
    "genus_two_two_punctures": genus_two_two_punctures,
    "bordered_sphere": bordered_sphere,
    "square": square,
    "single_triangle": single_triangle,
}
