"""Genus of smooth plane curves and classical automorphism bounds.

All bounds take the genus ``g`` and need ``g >= 2``.
"""

from __future__ import annotations


def plane_genus(d: int) -> int:
    """Genus of a smooth plane curve of degree ``d``."""
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    return (d - 1) * (d - 2) // 2


def _check(g: int) -> None:
    if g < 2:
        raise ValueError(f"bound needs genus >= 2, got {g}")


def hurwitz_group_bound(g: int) -> int:
    """Maximal order of the full automorphism group: 84(g-1)."""
    _check(g)
    return 84 * (g - 1)


def wiman_element_bound(g: int) -> int:
    """Maximal order of a single automorphism: 2(2g+1)."""
    _check(g)
    return 2 * (2 * g + 1)


def hurwitz_element_bound(g: int) -> int:
    _check(g)
    return 10 * (g - 1)


def prime_element_bound(g: int) -> int:
    """Maximal prime order of an automorphism: 2g+1."""
    _check(g)
    return 2 * g + 1


def large_group_threshold(g: int) -> int:
    """A group is large when its order exceeds this value."""
    _check(g)
    return 4 * (g - 1)


def accola_maclachlan_lower(g: int) -> int:
    """Lower bound for the maximal group order in genus ``g``."""
    _check(g)
    return 8 * (g + 3) if g % 3 == 0 else 8 * (g + 1)


BOUNDS = (
    ("hurwitz_group", hurwitz_group_bound),
    ("wiman_element", wiman_element_bound),
    ("hurwitz_element", hurwitz_element_bound),
    ("prime_element", prime_element_bound),
    ("large_group_threshold", large_group_threshold),
    ("accola_maclachlan_lower", accola_maclachlan_lower),
)


def all_bounds(g: int) -> dict[str, int]:
    return {name: fn(g) for name, fn in BOUNDS}
