"""Automorphisms of truncated p-adic trees, stored as label portraits.

The tree of shape (p, n) has vertices the words of length <= n over the
alphabet {1..p}; the words of length < n are internal.  A portrait assigns
one residue mod p to every internal vertex, listed in breadth-first order
(root first, children of each vertex ordered 1..p).  The label at a vertex
is the power of the cycle (1 2 ... p) by which the automorphism rotates the
p subtrees hanging there, indexed by the vertex in *domain* coordinates.
The label vector is the canonical encoding: two portraits describe the same
automorphism exactly when their label vectors coincide.

Composition follows the right-action convention v^(fg) = (v^f)^g, which
gives the label rule label_fg(u) = label_f(u) + label_g(u^f) mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

__all__ = [
    "TreeShape",
    "tree_shape",
    "Portrait",
    "PsiDecomposition",
    "identity",
    "compose",
    "inverse",
    "conjugate",
    "commutator",
    "apply",
    "parse_vertex",
    "psi",
    "assemble",
    "order",
    "stabilizes_level",
]


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class TreeShape:
    """Truncated p-regular rooted tree: odd prime arity p, n levels of edges."""

    __slots__ = ("p", "n", "level_starts", "internal_count", "zero_labels")

    def __init__(self, p: int, n: int):
        if not _is_odd_prime(p):
            raise ValueError(f"arity must be an odd prime, got {p}")
        if n < 1:
            raise ValueError(f"tree depth must be >= 1, got {n}")
        self.p = p
        self.n = n
        starts = [0]
        width = 1
        for _ in range(n):
            starts.append(starts[-1] + width)
            width *= p
        # level_starts[d] is the breadth-first index of the first depth-d vertex;
        # level_starts[n] is the total number of internal vertices.
        self.level_starts = tuple(starts)
        self.internal_count = starts[n]
        self.zero_labels = bytes(self.internal_count)

    @property
    def leaf_count(self) -> int:
        return self.p**self.n

    def child(self, index: int, depth: int, letter: int) -> int:
        """Index of the child of an internal vertex reached by letter 1..p."""
        ls = self.level_starts
        return ls[depth + 1] + (index - ls[depth]) * self.p + (letter - 1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TreeShape) and (self.p, self.n) == (other.p, other.n)

    def __hash__(self) -> int:
        return hash((self.p, self.n))

    def __repr__(self) -> str:
        return f"TreeShape(p={self.p}, n={self.n})"


@lru_cache(maxsize=None)
def tree_shape(p: int, n: int) -> TreeShape:
    """Shared TreeShape instance for (p, n)."""
    return TreeShape(p, n)


def _rebuild(p: int, n: int, labels: bytes) -> "Portrait":
    return Portrait._raw(tree_shape(p, n), labels)


class Portrait:
    """One automorphism of a truncated tree; immutable and hashable."""

    __slots__ = ("shape", "labels", "_perm")

    def __init__(self, shape: TreeShape, labels: Iterable[int] | bytes):
        lab = bytes(x % shape.p for x in labels)
        if len(lab) != shape.internal_count:
            raise ValueError(
                f"expected {shape.internal_count} labels for shape "
                f"({shape.p},{shape.n}), got {len(lab)}"
            )
        self.shape = shape
        self.labels = lab
        self._perm: tuple[int, ...] | None = None

    @classmethod
    def _raw(cls, shape: TreeShape, labels: bytes) -> "Portrait":
        # Internal constructor: labels already reduced mod p.
        self = object.__new__(cls)
        self.shape = shape
        self.labels = labels
        self._perm = None
        return self

    @classmethod
    def identity(cls, shape: TreeShape) -> "Portrait":
        return cls._raw(shape, shape.zero_labels)

    @property
    def root_label(self) -> int:
        return self.labels[0]

    def is_identity(self) -> bool:
        return not any(self.labels)

    def __reduce__(self):
        return (_rebuild, (self.shape.p, self.shape.n, self.labels))

    def vertex_perm(self) -> tuple[int, ...]:
        """Images of the internal vertices under this automorphism, by index."""
        if self._perm is not None:
            return self._perm
        shape = self.shape
        p, ls, lab = shape.p, shape.level_starts, self.labels
        perm = [0] * shape.internal_count
        for depth in range(shape.n - 1):
            start, stop = ls[depth], ls[depth + 1]
            for u in range(start, stop):
                base = ls[depth + 1] + (u - start) * p
                target = ls[depth + 1] + (perm[u] - start) * p
                shift = lab[u]
                for x in range(p):
                    perm[base + x] = target + (x + shift) % p
        self._perm = tuple(perm)
        return self._perm

    def __mul__(self, other: "Portrait") -> "Portrait":
        """Composition self*other, acting on vertices as self first."""
        if self.shape != other.shape:
            raise ValueError("cannot compose portraits of different shapes")
        p = self.shape.p
        lf, lg = self.labels, other.labels
        pf = self.vertex_perm()
        return Portrait._raw(
            self.shape, bytes((lf[u] + lg[pf[u]]) % p for u in range(len(lf)))
        )

    def inverse(self) -> "Portrait":
        p = self.shape.p
        lf = self.labels
        pf = self.vertex_perm()
        out = bytearray(len(lf))
        for u, v in enumerate(pf):
            out[v] = (p - lf[u]) % p
        return Portrait._raw(self.shape, bytes(out))

    def __pow__(self, k: int) -> "Portrait":
        if k < 0:
            return self.inverse() ** (-k)
        result = Portrait.identity(self.shape)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate_by(self, g: "Portrait", g_inv: "Portrait" | None = None) -> "Portrait":
        """self^g = g^-1 * self * g, fused into a single label pass."""
        if g_inv is None:
            g_inv = g.inverse()
        p = self.shape.p
        lgi, lf, lg = g_inv.labels, self.labels, g.labels
        pgi, pf = g_inv.vertex_perm(), self.vertex_perm()
        out = bytearray(len(lf))
        for u in range(len(lf)):
            v = pgi[u]
            out[u] = (lgi[u] + lf[v] + lg[pf[v]]) % p
        return Portrait._raw(self.shape, bytes(out))

    def apply(self, vertex: Sequence[int] | str) -> tuple[int, ...]:
        """Image of a vertex, given as letters in 1..p."""
        word = parse_vertex(self.shape, vertex)
        shape, lab = self.shape, self.labels
        out = []
        index = 0
        for depth, x in enumerate(word):
            out.append(1 + (x - 1 + lab[index]) % shape.p)
            if depth + 1 < len(word):
                index = shape.child(index, depth, x)
        return tuple(out)

    def stabilizes_level(self, k: int) -> bool:
        """True when every vertex of length <= k is fixed."""
        if not 0 <= k <= self.shape.n:
            raise ValueError(f"level must lie in 0..{self.shape.n}, got {k}")
        return not any(self.labels[: self.shape.level_starts[k]])

    def psi(self) -> "PsiDecomposition":
        """Split into the root label and the p sections one level down."""
        shape = self.shape
        if shape.n < 2:
            raise ValueError("portraits of depth-1 trees have no sections")
        p, ls, lab = shape.p, shape.level_starts, self.labels
        child = tree_shape(p, shape.n - 1)
        sections = []
        for s in range(p):
            parts = []
            width = 1
            for d in range(1, shape.n):
                start = ls[d] + s * width
                parts.append(lab[start : start + width])
                width *= p
            sections.append(Portrait._raw(child, b"".join(parts)))
        return PsiDecomposition(lab[0], tuple(sections))

    def order(self) -> int:
        """Order of the automorphism, always a power of p."""
        result = 1
        g = self
        while not g.is_identity():
            g = g ** self.shape.p
            result *= self.shape.p
            if result > self.shape.p ** self.shape.n:
                raise RuntimeError("order exceeded the exponent bound of the tree")
        return result

    def encode(self) -> str:
        """Canonical text form 'p,n:l0,l1,...'."""
        body = ",".join(str(x) for x in self.labels)
        return f"{self.shape.p},{self.shape.n}:{body}"

    @classmethod
    def decode(cls, text: str) -> "Portrait":
        head, sep, body = text.partition(":")
        if not sep:
            raise ValueError(f"malformed portrait encoding {text!r}")
        try:
            p_str, n_str = head.split(",")
            shape = tree_shape(int(p_str), int(n_str))
            labels = [int(x) % shape.p for x in body.split(",")]
        except ValueError as err:
            raise ValueError(f"malformed portrait encoding {text!r}") from err
        return cls(shape, labels)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Portrait)
            and self.labels == other.labels
            and self.shape == other.shape
        )

    def __hash__(self) -> int:
        return hash(self.labels)

    def __lt__(self, other: "Portrait") -> bool:
        # Label-vector order; used for deterministic witness selection.
        return self.labels < other.labels

    def __repr__(self) -> str:
        return f"Portrait({self.encode()})"


@dataclass(frozen=True)
class PsiDecomposition:
    """Root label plus the p sections of a portrait, one level shallower."""

    root_label: int
    sections: tuple[Portrait, ...]


def parse_vertex(shape: TreeShape, vertex: Sequence[int] | str) -> tuple[int, ...]:
    """Normalize a vertex given as '31', '3 1', '3,1' or an int sequence."""
    if isinstance(vertex, str):
        text = vertex.replace(",", " ")
        tokens = text.split() if " " in text.strip() else list(text.strip())
        try:
            word = tuple(int(t) for t in tokens)
        except ValueError as err:
            raise ValueError(f"malformed vertex {vertex!r}") from err
    else:
        word = tuple(vertex)
    if len(word) > shape.n:
        raise ValueError(f"vertex {word} is deeper than the tree (n={shape.n})")
    if any(not 1 <= x <= shape.p for x in word):
        raise ValueError(f"vertex letters must lie in 1..{shape.p}, got {word}")
    return word


def identity(shape: TreeShape) -> Portrait:
    return Portrait.identity(shape)


def compose(f: Portrait, g: Portrait) -> Portrait:
    return f * g


def inverse(f: Portrait) -> Portrait:
    return f.inverse()


def conjugate(f: Portrait, g: Portrait) -> Portrait:
    return f.conjugate_by(g)


def commutator(f: Portrait, g: Portrait) -> Portrait:
    """[f, g] = f^-1 g^-1 f g."""
    return f.inverse() * g.inverse() * f * g


def apply(f: Portrait, vertex: Sequence[int] | str) -> tuple[int, ...]:
    return f.apply(vertex)


def psi(f: Portrait) -> PsiDecomposition:
    return f.psi()


def assemble(decomposition: PsiDecomposition) -> Portrait:
    """Inverse of psi: rebuild a portrait from root label and sections."""
    sections = decomposition.sections
    if not sections:
        raise ValueError("cannot assemble a portrait without sections")
    child = sections[0].shape
    p = child.p
    if len(sections) != p:
        raise ValueError(f"expected {p} sections, got {len(sections)}")
    if any(s.shape != child for s in sections):
        raise ValueError("sections must all share one shape")
    if not 0 <= decomposition.root_label < p:
        raise ValueError(f"root label must lie in 0..{p - 1}")
    shape = tree_shape(p, child.n + 1)
    parts = [bytes([decomposition.root_label])]
    start = 0
    width = 1
    for _ in range(child.n):
        for s in range(p):
            parts.append(sections[s].labels[start : start + width])
        start += width
        width *= p
    return Portrait._raw(shape, b"".join(parts))


def order(f: Portrait) -> int:
    return f.order()


def stabilizes_level(f: Portrait, k: int) -> bool:
    return f.stabilizes_level(k)
