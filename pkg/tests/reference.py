"""Independent slow oracles used to cross-check the library implementations.

Everything here deliberately takes a different route from the package code:
vertex maps are dictionaries keyed by letter tuples instead of flat arrays,
composition recovers labels from composed vertex maps instead of the label
formula, orders are found by repeated naive multiplication, root multiplicity
comes from a Taylor shift instead of synthetic division, and Sigma sets are
built by literally conjugating with every group element.
"""
from __future__ import annotations

from itertools import product
from math import comb

from ggs import Portrait, QuotientGroup, TreeShape, tree_shape


def internal_vertices(shape: TreeShape) -> list[tuple[int, ...]]:
    """All internal vertices (depth 0..n-1) in breadth-first, lexicographic order."""
    out: list[tuple[int, ...]] = []
    for depth in range(shape.n):
        out.extend(product(range(1, shape.p + 1), repeat=depth))
    return out


def label_dict(f: Portrait) -> dict[tuple[int, ...], int]:
    """Portrait labels as a dict keyed by vertex tuple."""
    return dict(zip(internal_vertices(f.shape), f.labels))


def portrait_from_dict(shape: TreeShape, labels: dict[tuple[int, ...], int]) -> Portrait:
    return Portrait(shape, [labels[u] for u in internal_vertices(shape)])


def naive_image(f: Portrait, vertex: tuple[int, ...]) -> tuple[int, ...]:
    """Image of a vertex, walking the original path and adding labels."""
    lab = label_dict(f)
    out: list[int] = []
    for k, x in enumerate(vertex):
        out.append(1 + (x - 1 + lab[vertex[:k]]) % f.shape.p)
    return tuple(out)


def naive_vertex_map(f: Portrait) -> dict[tuple[int, ...], tuple[int, ...]]:
    """The full action on every vertex of depth 1..n."""
    shape = f.shape
    out = {}
    for depth in range(1, shape.n + 1):
        for v in product(range(1, shape.p + 1), repeat=depth):
            out[v] = naive_image(f, v)
    return out


def naive_compose(f: Portrait, g: Portrait) -> Portrait:
    """f then g, recovering labels from the composed vertex map."""
    assert f.shape == g.shape
    shape = f.shape
    fm, gm = naive_vertex_map(f), naive_vertex_map(g)
    composed = {v: gm[fm[v]] for v in fm}
    labels = {}
    for u in internal_vertices(shape):
        image = composed[u + (1,)]
        labels[u] = (image[len(u)] - 1) % shape.p
    return portrait_from_dict(shape, labels)


def naive_order(f: Portrait) -> int:
    """Order by repeated naive multiplication."""
    bound = f.shape.p ** f.shape.n
    g, k = f, 1
    while any(g.labels):
        g = naive_compose(g, f)
        k += 1
        assert k <= bound, "order exceeded the exponent bound"
    return k


def shift_multiplicity(coeffs: list[int], p: int) -> int:
    """Multiplicity of 1 as a root, via the Taylor shift E(X+1).

    The coefficient of X^k in E(X+1) is sum_j c_j * C(j, k); the multiplicity
    of the root 1 of E is the number of leading zero coefficients of E(X+1).
    """
    deg = len(coeffs) - 1
    shifted = [
        sum(c * comb(j, k) for j, c in enumerate(coeffs)) % p
        for k in range(deg + 1)
    ]
    m = 0
    while m <= deg and shifted[m] == 0:
        m += 1
    return m


def brute_sigma(group: QuotientGroup, x: Portrait, y: Portrait) -> frozenset[bytes]:
    """Union of all conjugates of <x>, <y>, <xy>, conjugating by every element."""
    out = {group.identity.labels}
    for z in (x, y, x * y):
        powers = [z]
        w = z * z
        while w != z:
            powers.append(w)
            w = w * z
        for g in group:
            gi = g.inverse()
            out.update((gi * pw * g).labels for pw in powers)
    return frozenset(out)


def brute_coords(group: QuotientGroup, x: Portrait) -> tuple[int, int]:
    """Image of x in G/G' as (a-exponent, b-exponent), by scanning all cosets."""
    derived = group.derived_subgroup()
    for i in range(group.vector.p):
        for j in range(group.vector.p):
            rep = group.a**i * group.b**j
            if (rep.inverse() * x).labels in derived.keys:
                return (i, j)
    raise AssertionError("element not covered by the a^i b^j G' cosets")


def two_level_b_labels(p: int, e: tuple[int, ...]) -> list[int]:
    """Depth-2 recursive generator spelled out: root 0, children e_1..e_{p-1}, 0."""
    assert len(e) == p - 1
    return [0, *[x % p for x in e], 0]


def random_portrait(rng, shape: TreeShape) -> Portrait:
    return Portrait(shape, [rng.randrange(shape.p) for _ in range(shape.internal_count)])


def shapes_for_tests() -> list[TreeShape]:
    return [tree_shape(3, 1), tree_shape(3, 2), tree_shape(3, 3), tree_shape(5, 2)]
