"""Point-set helpers for finite complex spectra: canonical order, tolerance
dedup, multiset containment and Hausdorff distance."""

import numpy as np


def canonical_sort(values) -> np.ndarray:
    """Sort ascending by real part, then imaginary part."""
    values = np.asarray(values, dtype=np.complex128).ravel()
    order = np.lexsort((values.imag, values.real))
    return values[order]


def dedup(values, tol: float) -> np.ndarray:
    """Greedy tolerance dedup.

    Points are visited in the given order; a point is kept unless it lies
    within ``tol`` of an already kept point. The kept points are returned in
    canonical order.
    """
    kept = []
    for z in np.asarray(values, dtype=np.complex128).ravel():
        if not any(abs(z - k) <= tol for k in kept):
            kept.append(z)
    return canonical_sort(kept)


def nearest(points, z):
    """Index and distance of the point nearest to ``z``."""
    points = np.asarray(points)
    if points.size == 0:
        return None, np.inf
    dist = np.abs(points - z)
    i = int(np.argmin(dist))
    return i, float(dist[i])


def contains(points, z, tol: float) -> bool:
    return nearest(points, z)[1] <= tol


def multiset_contains(small, big, tol: float) -> bool:
    """True if ``small`` embeds into ``big`` as a multiset up to ``tol``.

    Greedy nearest-neighbour pairing; ``small`` is visited in canonical order
    so that ties resolve deterministically.
    """
    free = list(canonical_sort(big))
    for z in canonical_sort(small):
        if not free:
            return False
        i, d = nearest(free, z)
        if d > tol:
            return False
        free.pop(i)
    return True


def hausdorff(a, b) -> float:
    """Hausdorff distance between two finite subsets of the plane."""
    a = np.asarray(a, dtype=np.complex128).ravel()
    b = np.asarray(b, dtype=np.complex128).ravel()
    if a.size == 0 and b.size == 0:
        return 0.0
    if a.size == 0 or b.size == 0:
        return np.inf
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))
