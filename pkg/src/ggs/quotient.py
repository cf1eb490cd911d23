"""Finite quotients of a GGS group acting on the truncated tree.

The level-n quotient is the image of the group in the automorphisms of the
depth-n tree, produced by breadth-first closure of {a, b} under right
multiplication.  Exponent-sum coordinates modulo the derived subgroup are
tracked during the walk; for n >= 2 the derived quotient is C_p x C_p, so
these coordinates decide generation and maximal-subgroup membership
without further closures.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .generators import DefiningVector, make_a, make_b
from .portrait import Portrait, commutator, tree_shape

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "SubgroupHandle",
    "QuotientGroup",
    "predicted_order",
    "enumerate_quotient",
]

DEFAULT_BUDGET = 10_000_000

_GEN_COORDS = ((1, 0), (0, 1), (-1, 0), (0, -1))


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would pass the element budget."""

    def __init__(self, budget: int, partial: int, predicted: int | None = None):
        self.budget = budget
        self.partial = partial
        self.predicted = predicted
        detail = f"predicted order {predicted}" if predicted else f"stopped at {partial} elements"
        super().__init__(f"enumeration budget {budget} exceeded ({detail})")


def predicted_order(v: DefiningVector, n: int) -> int | None:
    """Order of the level-n quotient when a closed form is known, else None.

    Level 1 is cyclic of order p.  Level 2 has order p^(t+1) with t the
    circulant rank.  For non-symmetric vectors and n >= 2 the order is
    p^(t*p^(n-2)+1); no closed form is used for symmetric vectors past
    level 2.
    """
    if n == 1:
        return v.p
    if n == 2:
        return v.p ** (v.rank + 1)
    if v.symmetric:
        return None
    return v.p ** (v.rank * v.p ** (n - 2) + 1)


class SubgroupHandle:
    """A subgroup of an enumerated quotient: member set plus generating data."""

    __slots__ = ("group", "elements", "keys", "normal", "_generators")

    def __init__(
        self,
        group: "QuotientGroup",
        elements: tuple[Portrait, ...],
        normal: bool,
        generators: tuple[Portrait, ...] | None = None,
    ):
        self.group = group
        self.elements = elements
        self.keys = frozenset(x.labels for x in elements)
        self.normal = normal
        self._generators = generators

    def __len__(self) -> int:
        return len(self.keys)

    def __iter__(self) -> Iterator[Portrait]:
        return iter(self.elements)

    def __contains__(self, x: Portrait | bytes) -> bool:
        key = x.labels if isinstance(x, Portrait) else x
        return key in self.keys

    def index(self) -> int:
        return len(self.group) // len(self)

    @property
    def generators(self) -> tuple[Portrait, ...]:
        """A generating subset, extracted greedily in canonical element order."""
        if self._generators is None:
            gens: list[Portrait] = []
            have = {self.group.identity.labels}
            ordered = [self.group.identity]
            for x in sorted(self.elements):
                if x.labels in have:
                    continue
                gens.append(x)
                grown, _ = _closure(self.group.identity, ordered, have, gens)
                ordered = grown
            self._generators = tuple(gens)
        return self._generators


def _closure(
    identity: Portrait,
    seed_elements: list[Portrait],
    seen: set[bytes],
    gens: list[Portrait],
) -> tuple[list[Portrait], set[bytes]]:
    """Close seed_elements under right multiplication by gens, in place."""
    elements = list(seed_elements)
    qi = 0
    while qi < len(elements):
        x = elements[qi]
        qi += 1
        for g in gens:
            y = x * g
            if y.labels not in seen:
                seen.add(y.labels)
                elements.append(y)
    return elements, seen


class QuotientGroup:
    """The level-n quotient of the GGS group with a given defining vector."""

    def __init__(self, vector: DefiningVector, n: int, budget: int = DEFAULT_BUDGET):
        self.vector = vector
        self.shape = tree_shape(vector.p, n)
        self.budget = budget
        predicted = predicted_order(vector, n)
        if predicted is not None and predicted > budget:
            raise BudgetExceeded(budget, 0, predicted)

        self.a = make_a(self.shape)
        self.b = make_b(vector, self.shape)
        self.a_inv = self.a.inverse()
        self.b_inv = self.b.inverse()
        self.identity = Portrait.identity(self.shape)

        gens = (self.a, self.b, self.a_inv, self.b_inv)
        p = vector.p
        elements = [self.identity]
        index: dict[bytes, int] = {self.identity.labels: 0}
        coords: list[tuple[int, int]] | None = [(0, 0)]
        qi = 0
        while qi < len(elements):
            x = elements[qi]
            cx = coords[qi] if coords is not None else None
            qi += 1
            for g, dc in zip(gens, _GEN_COORDS):
                y = x * g
                known = index.get(y.labels)
                if known is None:
                    index[y.labels] = len(elements)
                    elements.append(y)
                    if coords is not None:
                        coords.append(((cx[0] + dc[0]) % p, (cx[1] + dc[1]) % p))
                    if len(elements) > budget:
                        raise BudgetExceeded(budget, len(elements), predicted)
                elif coords is not None:
                    cy = ((cx[0] + dc[0]) % p, (cx[1] + dc[1]) % p)
                    if coords[known] != cy:
                        if n >= 2:
                            raise RuntimeError(
                                "exponent-sum coordinates conflicted at level >= 2"
                            )
                        coords = None  # level 1: b collapses onto the identity
        self.elements: tuple[Portrait, ...] = tuple(elements)
        self._index = index
        self.coords: tuple[tuple[int, int], ...] | None = (
            tuple(coords) if coords is not None else None
        )
        self.cache: dict[str, object] = {}

    # -- basic container behaviour -------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Portrait]:
        return iter(self.elements)

    def __contains__(self, x: Portrait | bytes) -> bool:
        key = x.labels if isinstance(x, Portrait) else x
        return key in self._index

    def __repr__(self) -> str:
        return (
            f"QuotientGroup(p={self.vector.p}, e=({self.vector}), "
            f"n={self.shape.n}, order={len(self)})"
        )

    def element(self, key: bytes | str) -> Portrait:
        """The interned element with the given label key or text encoding."""
        if isinstance(key, str):
            key = Portrait.decode(key).labels
        return self.elements[self._index[key]]

    def coords_of(self, x: Portrait) -> tuple[int, int]:
        """Exponent sums of (a, b) modulo the derived subgroup."""
        if self.coords is None:
            raise ValueError("coordinates are undefined for the level-1 quotient")
        return self.coords[self._index[x.labels]]

    def is_generating_pair(self, x: Portrait, y: Portrait) -> bool:
        """Whether {x, y} generates the quotient."""
        if x.labels not in self._index or y.labels not in self._index:
            raise ValueError("elements do not belong to this quotient")
        if self.coords is not None:
            (ax, bx), (ay, by) = self.coords_of(x), self.coords_of(y)
            return (ax * by - ay * bx) % self.vector.p != 0
        seen = {self.identity.labels}
        closed, _ = _closure(self.identity, [self.identity], seen, [x, y])
        return len(closed) == len(self)

    # -- subgroup machinery ----------------------------------------------------

    def as_subgroup(self) -> SubgroupHandle:
        return SubgroupHandle(self, self.elements, True, (self.a, self.b))

    def _subgroup(self, gens: Iterable[Portrait], normal: bool) -> SubgroupHandle:
        gen_list = []
        seen_gen = set()
        for g in gens:
            if not g.is_identity() and g.labels not in seen_gen:
                seen_gen.add(g.labels)
                gen_list.append(g)
        elements, _ = _closure(
            self.identity, [self.identity], {self.identity.labels}, gen_list
        )
        return SubgroupHandle(self, tuple(elements), normal, tuple(gen_list))

    def normal_closure(
        self, seeds: Iterable[Portrait], conjugators: Iterable[Portrait] | None = None
    ) -> SubgroupHandle:
        """Smallest subgroup containing the seeds and closed under conjugation."""
        conj = list(conjugators) if conjugators is not None else [self.a, self.b]
        conj_inv = [g.inverse() for g in conj]
        gens = []
        seen_gen = set()
        for g in seeds:
            if not g.is_identity() and g.labels not in seen_gen:
                seen_gen.add(g.labels)
                gens.append(g)
        seen = {self.identity.labels}
        elements = [self.identity]
        while True:
            elements, seen = _closure(self.identity, elements, seen, gens)
            new_gen = None
            for x in elements:
                for g, gi in zip(conj, conj_inv):
                    y = x.conjugate_by(g, gi)
                    if y.labels not in seen:
                        new_gen = y
                        break
                if new_gen is not None:
                    break
            if new_gen is None:
                return SubgroupHandle(self, tuple(elements), True, tuple(gens))
            seen_gen.add(new_gen.labels)
            gens.append(new_gen)

    def derived_subgroup(self) -> SubgroupHandle:
        """Normal closure of [a, b]."""
        if "derived" not in self.cache:
            self.cache["derived"] = self.normal_closure([commutator(self.a, self.b)])
        return self.cache["derived"]  # type: ignore[return-value]

    def center(self) -> SubgroupHandle:
        if "center" not in self.cache:
            members = tuple(
                g for g in self.elements if g * self.a == self.a * g and g * self.b == self.b * g
            )
            self.cache["center"] = SubgroupHandle(self, members, True)
        return self.cache["center"]  # type: ignore[return-value]

    def frattini(self) -> SubgroupHandle:
        """Derived subgroup together with all p-th powers."""
        if "frattini" in self.cache:
            return self.cache["frattini"]  # type: ignore[return-value]
        derived = self.derived_subgroup()
        gens = list(derived.generators)
        elements = list(derived.elements)
        seen = set(derived.keys)
        p = self.vector.p
        for g in self.elements:
            q = g**p
            if q.labels not in seen:
                gens.append(q)
                elements, seen = _closure(self.identity, elements, seen, [q])
        handle = SubgroupHandle(self, tuple(elements), True, tuple(gens))
        self.cache["frattini"] = handle
        return handle

    def level_stabilizer(self, k: int) -> SubgroupHandle:
        """Elements acting trivially on the first k levels."""
        key = f"stab:{k}"
        if key not in self.cache:
            members = tuple(g for g in self.elements if g.stabilizes_level(k))
            self.cache[key] = SubgroupHandle(self, members, True)
        return self.cache[key]  # type: ignore[return-value]

    def subgroup_commutator(self, h: SubgroupHandle, k: SubgroupHandle) -> SubgroupHandle:
        """[H, K]: normal closure in <H, K> of the generator commutators."""
        seeds = [commutator(x, y) for x in h.generators for y in k.generators]
        conjugators = list(h.generators) + list(k.generators)
        closure = self.normal_closure(seeds, conjugators)
        return SubgroupHandle(
            self, closure.elements, h.normal and k.normal, closure.generators
        )

    def maximal_subgroups(self) -> list[SubgroupHandle]:
        """The p+1 maximal subgroups <a, G'>, <b, G'>, <ab^i, G'> for n >= 2."""
        if self.shape.n < 2:
            raise ValueError("maximal subgroups are tabulated for levels >= 2")
        if "maximal" in self.cache:
            return self.cache["maximal"]  # type: ignore[return-value]
        derived = self.derived_subgroup()
        p = self.vector.p
        if len(self) != p * p * len(derived):
            raise RuntimeError("derived subgroup does not have index p^2")
        tops = [self.a, self.b] + [self.a * self.b**i for i in range(1, p)]
        out = []
        for x in tops:
            members: list[Portrait] = []
            power = self.identity
            for _ in range(p):
                members.extend(w * power for w in derived.elements)
                power = power * x
            out.append(
                SubgroupHandle(self, tuple(members), True, (x,) + derived.generators)
            )
        self.cache["maximal"] = out
        return out

    def conjugacy_class(self, x: Portrait) -> tuple[Portrait, ...]:
        """Orbit of x under conjugation, in discovery order."""
        conj = ((self.a, self.a_inv), (self.b, self.b_inv))
        orbit = [x]
        seen = {x.labels}
        qi = 0
        while qi < len(orbit):
            y = orbit[qi]
            qi += 1
            for g, gi in conj:
                z = y.conjugate_by(g, gi)
                if z.labels not in seen:
                    seen.add(z.labels)
                    orbit.append(z)
        return tuple(orbit)

    def conjugacy_classes(self) -> list[tuple[Portrait, ...]]:
        """All conjugacy classes, in order of first appearance."""
        if "classes" in self.cache:
            return self.cache["classes"]  # type: ignore[return-value]
        assigned: set[bytes] = set()
        classes = []
        for x in self.elements:
            if x.labels in assigned:
                continue
            orbit = self.conjugacy_class(x)
            assigned.update(y.labels for y in orbit)
            classes.append(orbit)
        self.cache["classes"] = classes
        return classes

    def order_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for cls in self.conjugacy_classes():
            o = cls[0].order()
            hist[o] = hist.get(o, 0) + len(cls)
        return dict(sorted(hist.items()))

    def exponent(self) -> int:
        return max(self.order_histogram())

    def lower_central_series(self) -> list[SubgroupHandle]:
        """G = gamma_1 >= gamma_2 >= ... down to the trivial subgroup."""
        series = [self.as_subgroup()]
        whole = series[0]
        while len(series[-1]) > 1:
            series.append(self.subgroup_commutator(series[-1], whole))
        return series

    # -- exports ---------------------------------------------------------------

    def sorted_encodings(self) -> list[str]:
        return [x.encode() for x in sorted(self.elements)]

    def cayley_dot(self) -> str:
        """Cayley graph on generators a, b in DOT format."""
        lines = ["digraph cayley {"]
        number = {x.labels: i for i, x in enumerate(sorted(self.elements))}
        for x in sorted(self.elements):
            i = number[x.labels]
            lines.append(f'  v{i} [label="{x.encode()}"];')
            lines.append(f"  v{i} -> v{number[(x * self.a).labels]} [label=\"a\"];")
            lines.append(f"  v{i} -> v{number[(x * self.b).labels]} [label=\"b\"];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def enumerate_quotient(
    v: DefiningVector, n: int, budget: int = DEFAULT_BUDGET
) -> QuotientGroup:
    """Enumerate the level-n quotient by breadth-first closure."""
    return QuotientGroup(v, n, budget)
