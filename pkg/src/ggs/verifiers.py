"""One verifier per documented claim, each returning a replayable certificate.

Claims about enumerable quotients are checked exhaustively.  Claims whose
quotient exceeds the element budget degrade to the element-wise sub-checks
that portraits support directly (orders, section identities, power
collisions of the standard coset representatives) and report the verdict
"skipped: scale" rather than pretending the full statement was checked.
"""

from __future__ import annotations

import time
from functools import partial
from typing import Callable

from .beauville import (
    GeneratingTriple,
    SEARCH_ELEMENT_CAP,
    build_special_elements,
    cyclic_subgroup,
    is_beauville_pair,
    search_beauville,
    subgroup_conjugation_orbit,
)
from .certificate import CODE_VERSION, Certificate
from .generators import DefiningVector, make_a, make_b
from .parallel import pmap
from .portrait import Portrait, commutator, tree_shape
from .quotient import (
    BudgetExceeded,
    DEFAULT_BUDGET,
    QuotientGroup,
    enumerate_quotient,
    predicted_order,
)
from .words import evaluate_word

__all__ = ["CLAIMS", "default_level", "verify_claim", "replay_certificate"]

# claim id -> one-line description (shown by the CLI and used as the statement)
CLAIMS: dict[str, str] = {
    "thm-A": (
        "the level-n quotient of a periodic GGS group is a Beauville group "
        "(covered range: p >= 5 with n >= 2, or p = 3 with n >= 3)"
    ),
    "thm-B": "no level-n quotient of a non-periodic GGS group is a Beauville group",
    "thm-G2": (
        "the level-2 quotient of a periodic GGS group is a Beauville group "
        "exactly when p >= 5"
    ),
    "thm-G3": "the level-3 quotient of a periodic GGS group is a Beauville group",
    "lemma-orders": (
        "a^-1 b and every a b^i have order p^2 in the level-n quotient (n >= 3, "
        "periodic vector)"
    ),
    "lemma-conjugates": (
        "the conjugates of b by powers of a are pairwise distinct at tree depth 2"
    ),
    "lemma-center": (
        "at p = 3 (periodic) the level-3 center has order 3, lies in the derived "
        "subgroup of the first-level stabilizer, and its generator has sections "
        "([a,b], [a,b], [a,b])"
    ),
    "lemma-comms-b": (
        "at p = 3 (periodic) no nontrivial central element of the level-3 "
        "quotient is a commutator [b, g]"
    ),
    "lemma-comms-a": (
        "at p = 3 (periodic) the element with sections ([a,b], 1, 1) is not a "
        "commutator [a, g] in the level-3 quotient"
    ),
    "prop-key": (
        "<(ab^i)^p> equals a conjugate of <(ab^j)^p> in the level-n quotient "
        "only when i = j (periodic vector)"
    ),
    "prop-collision": (
        "in the level-n quotient of a non-periodic GGS group, every element of "
        "<ab^i, derived> outside the derived subgroup has order p^n, its "
        "p^(n-1)-th power is the matching power of ab^i, and all such powers "
        "generate one cyclic subgroup"
    ),
    "eq-3.1": (
        "psi((ab^i)^p) = ((b^i)^(a^(i*s_1)), ..., (b^i)^(a^(i*s_(p-1))), b^i) "
        "where s_j are the prefix sums of the defining vector (periodic case)"
    ),
    "order-formula": (
        "the level-n quotient has order p^(t*p^(n-2) + 1) for n >= 2 and "
        "non-symmetric vectors, where t is the circulant rank; level 1 has order p"
    ),
    "lifting": (
        "the orders of x, y and xy at tree depth m equal their orders at depth n "
        "(order-preservation hypothesis for lifting a structure from depth n)"
    ),
}

_DEFAULT_LEVEL = {
    "thm-A": 3,
    "thm-B": 2,
    "thm-G2": 2,
    "thm-G3": 3,
    "lemma-orders": 3,
    "lemma-conjugates": 2,
    "lemma-center": 3,
    "lemma-comms-b": 3,
    "lemma-comms-a": 3,
    "prop-key": 3,
    "prop-collision": 2,
    "eq-3.1": 3,
    "order-formula": 2,
    "lifting": 3,
}


def default_level(claim: str) -> int:
    return _DEFAULT_LEVEL[claim]


def _order(x: Portrait) -> int:
    return x.order()


def _new_certificate(claim: str, v: DefiningVector, n: int, **extra) -> Certificate:
    params: dict = {"p": v.p, "e": list(v.e), "n": n}
    params.update(extra)
    return Certificate(
        claim=claim,
        statement=CLAIMS[claim],
        params=params,
        verdict="",
        exhaustive=False,
        code_version=CODE_VERSION,
    )


def _generator_portraits(v: DefiningVector, n: int) -> tuple[Portrait, Portrait]:
    shape = tree_shape(v.p, n)
    return make_a(shape), make_b(v, shape)


def _require_periodic(v: DefiningVector, claim: str) -> None:
    if not v.periodic:
        raise ValueError(f"{claim} concerns periodic vectors; {v} has nonzero sum")


def _require_non_periodic(v: DefiningVector, claim: str) -> None:
    if v.periodic:
        raise ValueError(f"{claim} concerns non-periodic vectors; {v} sums to zero")


# -- element-wise sub-check builders (no enumeration) ---------------------------


def _order_checks(
    cert: Certificate,
    v: DefiningVector,
    n: int,
    items: list[tuple[str, Portrait, int]],
    prefix: str = "",
) -> bool:
    """Check order(x) == expected for (name, portrait, expected) triples."""
    ok = True
    for name, x, expected in items:
        got = x.order()
        ok &= cert.check(
            f"{prefix}order_{name}",
            got == expected,
            f"order {got} at depth {n}, expected {expected}",
        )
    return ok


def _standard_order_items(
    v: DefiningVector, n: int
) -> list[tuple[str, Portrait, int]]:
    """Orders of a^-1 b and all a b^i: p^2 each for periodic vectors, n >= 3."""
    a, b = _generator_portraits(v, n)
    p = v.p
    items = [("A_b", a.inverse() * b, p * p)]
    for i in range(1, p):
        items.append((f"a_b{i}", a * b**i, p * p))
    return items


def _eq31_checks(cert: Certificate, v: DefiningVector, n: int, prefix: str = "") -> bool:
    """Section identity for psi((ab^i)^p), all i, at depth n (n >= 2)."""
    p = v.p
    a, b = _generator_portraits(v, n)
    sub_a, sub_b = _generator_portraits(v, n - 1)
    prefix_sums = [0]
    for e in v.e:
        prefix_sums.append((prefix_sums[-1] + e) % p)
    ok = True
    for i in range(1, p):
        d = ((a * b**i) ** p).psi()
        bi = sub_b**i
        expected = tuple(
            bi.conjugate_by(sub_a ** ((i * prefix_sums[j]) % p)) for j in range(1, p)
        ) + (bi,)
        passed = d.root_label == 0 and d.sections == expected
        ok &= cert.check(
            f"{prefix}pth_power_sections_i{i}",
            passed,
            f"sections of (ab^{i})^{p} at depth {n} match the prefix-sum formula",
        )
    return ok


def _lifting_checks(
    cert: Certificate,
    v: DefiningVector,
    triple: list[tuple[str, str]],
    n: int,
    m: int,
    prefix: str = "",
) -> bool:
    """order at depth m == order at depth n for words (name, word)."""
    a_n, b_n = _generator_portraits(v, n)
    a_m, b_m = _generator_portraits(v, m)
    ok = True
    for name, word in triple:
        low = evaluate_word(word, a_n, b_n).order()
        high = evaluate_word(word, a_m, b_m).order()
        ok &= cert.check(
            f"{prefix}order_preserved_{name}",
            low == high,
            f"order of {word} is {high} at depth {m} and {low} at depth {n}",
        )
    return ok


# -- enumerated sub-check builders ----------------------------------------------


def _exponent_check(cert: Certificate, group: QuotientGroup, workers: int) -> bool:
    """Exhaustive scan: every element's order divides p (periodic level 2)."""
    p = group.vector.p
    orders = pmap(_order, group.elements, workers)
    bad = [x for x, o in zip(group.elements, orders) if o > p]
    if bad:
        witness = min(bad)
        cert.witnesses["exponent_witness"] = witness.encode()
    return cert.check(
        "exponent_p",
        not bad,
        f"all {len(group)} elements have order dividing {p}",
    )


def _collision_scan(
    cert: Certificate, group: QuotientGroup, workers: int, prefix: str = ""
) -> frozenset | None:
    """Power-collision battery over every <ab^i, derived> coset element.

    Adds checks for: order p^n outside the derived subgroup, the coordinate
    decomposition g = (ab^i)^k * derived, the power collision
    g^(p^(n-1)) = (ab^i)^(k*p^(n-1)), and the single common cyclic subgroup.
    Returns the common subgroup's member keys when everything passed.
    """
    p, n = group.vector.p, group.shape.n
    derived = group.derived_subgroup()
    maxes = group.maximal_subgroups()
    all_ok = True
    z_keysets: set[frozenset] = set()
    total = 0
    order_bad: list[Portrait] = []
    power_bad: list[Portrait] = []
    coords_bad: list[Portrait] = []
    for i in range(1, p):
        outside = [x for x in maxes[1 + i].elements if x.labels not in derived.keys]
        total += len(outside)
        rep = group.a * group.b**i
        step = rep ** (p ** (n - 1))
        if step.is_identity() or not (step**p).is_identity():
            cert.check(f"{prefix}rep_power_order_i{i}", False, "step is not of order p")
            all_ok = False
            continue
        rep_powers = {}
        w = step
        for k in range(1, p):
            rep_powers[k] = w
            w = w * step
        z_keysets.add(cyclic_subgroup(group, step).keys)
        orders = pmap(_order, outside, workers)
        for x, o in zip(outside, orders):
            if o != p**n:
                order_bad.append(x)
        for x in outside:
            k, ki = group.coords_of(x)
            if not (1 <= k <= p - 1) or ki != (k * i) % p:
                coords_bad.append(x)
                continue
            if x ** (p ** (n - 1)) != rep_powers[k]:
                power_bad.append(x)
    all_ok &= cert.check(
        f"{prefix}orders_p_to_n",
        not order_bad,
        f"all {total} coset elements across {p - 1} subgroups have order {p}^{n}",
    )
    all_ok &= cert.check(
        f"{prefix}coset_coordinates",
        not coords_bad,
        "every coset element decomposes as (ab^i)^k times a derived element",
    )
    all_ok &= cert.check(
        f"{prefix}power_collision",
        not power_bad,
        f"g^({p}^{n - 1}) equals (ab^i)^(k*{p}^{n - 1}) for every such g",
    )
    all_ok &= cert.check(
        f"{prefix}single_power_subgroup",
        len(z_keysets) == 1,
        f"{len(z_keysets)} distinct cyclic subgroups from the collision powers",
    )
    for name, bad in (
        ("order", order_bad),
        ("coords", coords_bad),
        ("power", power_bad),
    ):
        if bad:
            cert.witnesses[f"{prefix}{name}_witness"] = min(bad).encode()
    if not all_ok:
        return None
    z_keys = z_keysets.pop()
    cert.witnesses[f"{prefix}common_subgroup"] = sorted(
        group.element(k).encode() for k in z_keys
    )
    if n == 2:
        all_ok = cert.check(
            f"{prefix}equals_center",
            z_keys == group.center().keys,
            "the common subgroup is the center of the level-2 quotient",
        )
        if not all_ok:
            return None
    return z_keys


def _line_of(coords: tuple[int, int], p: int) -> int:
    ax, bx = coords
    if ax == 0:
        return 1
    if bx == 0:
        return 0
    return 1 + (bx * pow(ax, -1, p)) % p


def _pigeonhole_checks(cert: Certificate, group: QuotientGroup) -> bool:
    """Every generating pair's triple meets some <ab^i, derived> coset.

    Works on generator-exponent coordinates: the three members of a triple
    have pairwise independent coordinates, so they span three distinct lines,
    of which at most two are the a-line and the b-line.
    """
    p = group.vector.p
    assert group.coords is not None
    realized = {c for c in group.coords if c != (0, 0)}
    ok = cert.check(
        "coords_realized",
        len(realized) == p * p - 1,
        f"{len(realized)} of {p * p - 1} nonzero coordinate classes are realized",
    )
    nonzero = sorted(realized)
    bad = None
    for c1 in nonzero:
        for c2 in nonzero:
            if (c1[0] * c2[1] - c1[1] * c2[0]) % p == 0:
                continue
            c3 = ((c1[0] + c2[0]) % p, (c1[1] + c2[1]) % p)
            lines = {_line_of(c, p) for c in (c1, c2, c3)}
            if len(lines) != 3 or not (lines - {0, 1}):
                bad = (c1, c2)
                break
        if bad:
            break
    ok &= cert.check(
        "triple_meets_power_coset",
        bad is None,
        "every independent coordinate pair has a member on an ab^i line"
        + (f"; failed at {bad}" if bad else ""),
    )
    derived = group.derived_subgroup()
    maxes = group.maximal_subgroups()
    counts_ok = True
    for i in range(1, p):
        on_line = sum(
            1
            for c in group.coords
            if c != (0, 0) and _line_of(c, p) == 1 + i
        )
        counts_ok &= on_line == len(maxes[1 + i]) - len(derived)
    ok &= cert.check(
        "line_coset_bijection",
        counts_ok,
        "elements with coordinates on line i are exactly the i-th coset elements",
    )
    return ok


# -- p = 3 level-3 structure battery ---------------------------------------------


def _gupta_sidki_structure(
    cert: Certificate, group: QuotientGroup
) -> tuple[GeneratingTriple, GeneratingTriple] | None:
    """Full exhaustive battery for the level-3 structure at p = 3."""
    special = build_special_elements(group)
    u, v_el = special.u, special.v
    a, b = group.a, group.b
    ok = True

    center = group.center()
    stab = group.level_stabilizer(1)
    stab_derived = group.subgroup_commutator(stab, stab)
    ok &= cert.check("center_order", len(center) == 3, f"|Z| = {len(center)}")
    ok &= cert.check(
        "center_in_stabilizer_derived",
        all(z in stab_derived for z in center),
        "Z lies in the derived subgroup of the first-level stabilizer",
    )
    ok &= cert.check("u_central", u.labels in center.keys, "u generates Z")
    ok &= cert.check("u_order", u.order() == 3, f"order of u is {u.order()}")
    cert.witnesses["u"] = u.encode()
    cert.witnesses["v"] = v_el.encode()

    sub_a, sub_b = _generator_portraits(group.vector, 2)
    comm = commutator(sub_a, sub_b)
    triple_comm = (comm, comm, comm)

    av = a * v_el
    d = (av**3).psi()
    ok &= cert.check(
        "av_cube_sections",
        d.root_label == 0 and d.sections == triple_comm,
        "sections of (av)^3 are ([a,b], [a,b], [a,b])",
    )
    ok &= cert.check(
        "av_cube_central", (av**3).labels in center.keys, "(av)^3 lies in Z"
    )

    ab = a * b
    d2 = (ab**3).psi()
    expected_ab = (sub_b.conjugate_by(sub_a), sub_b, sub_b)
    ok &= cert.check(
        "ab_cube_sections",
        d2.root_label == 0 and d2.sections == expected_ab,
        "sections of (ab)^3 are (b^a, b, b)",
    )
    ok &= cert.check(
        "ab_cube_not_central",
        (ab**3).labels not in center.keys,
        "(ab)^3 is outside Z",
    )

    b0b1b2 = sub_b * sub_b.conjugate_by(sub_a) * sub_b.conjugate_by(sub_a * sub_a)
    ok &= cert.check(
        "depth2_conjugate_product",
        b0b1b2.is_identity(),
        "b * b^a * b^(a^2) is trivial at depth 2",
    )

    y = av * b * b * u
    d3 = (y**3).psi()
    sub_b_inv = sub_b.inverse()
    expected_y = (sub_b_inv, sub_b_inv.conjugate_by(sub_a), sub_b_inv.conjugate_by(sub_a))
    ok &= cert.check(
        "second_product_cube_sections",
        d3.root_label == 0 and d3.sections == expected_y,
        "sections of (av b^2 u)^3 are (b^-1, (b^-1)^a, (b^-1)^a)",
    )

    t1 = GeneratingTriple.make(group, a, b)
    t2 = GeneratingTriple.make(group, av, b * b * u)
    pair = is_beauville_pair(t1, t2, group)
    ok &= cert.check(
        "sigma_intersection_trivial",
        pair.verified,
        "the Sigma sets of (a, b) and (av, b^2 u) meet only in the identity",
    )
    cert.witnesses["triple_1"] = t1.encode()
    cert.witnesses["triple_2"] = t2.encode()
    return (t1, t2) if ok else None


# -- per-claim verifiers ----------------------------------------------------------


def verify_lemma_orders(
    v: DefiningVector, n: int, budget: int, workers: int
) -> Certificate:
    _require_periodic(v, "lemma-orders")
    if n < 3:
        raise ValueError("the order claim concerns levels n >= 3")
    cert = _new_certificate("lemma-orders", v, n)
    cert.exhaustive = True
    cert.notes.append("element-wise portrait computation; no group enumeration")
    ok = _order_checks(cert, v, n, _standard_order_items(v, n))
    cert.verdict = "verified" if ok else "refuted"
    return cert


def verify_eq31(v: DefiningVector, n: int, budget: int, workers: int) -> Certificate:
    _require_periodic(v, "eq-3.1")
    if n < 2:
        raise ValueError("the section identity needs depth n >= 2")
    cert = _new_certificate("eq-3.1", v, n)
    cert.exhaustive = True
    cert.notes.append("element-wise portrait computation; no group enumeration")
    ok = _eq31_checks(cert, v, n)
    cert.verdict = "verified" if ok else "refuted"
    return cert


def verify_lemma_conjugates(
    v: DefiningVector, n: int, budget: int, workers: int
) -> Certificate:
    if n != 2:
        raise ValueError("the conjugate-distinctness claim concerns depth 2")
    cert = _new_certificate("lemma-conjugates", v, 2)
    cert.exhaustive = True
    a, b = _generator_portraits(v, 2)
    conjugates = [b.conjugate_by(a**i) for i in range(v.p)]
    collisions = [
        (i, j)
        for i in range(v.p)
        for j in range(i + 1, v.p)
        if conjugates[i] == conjugates[j]
    ]
    ok = cert.check(
        "pairwise_distinct",
        not collisions,
        f"the {v.p} conjugates of b are pairwise distinct as depth-2 portraits"
        + (f"; collisions at {collisions}" if collisions else ""),
    )
    cert.witnesses["conjugates"] = [x.encode() for x in conjugates]
    cert.verdict = "verified" if ok else "refuted"
    return cert


def _require_gupta_sidki_level3(v: DefiningVector, n: int, claim: str) -> None:
    _require_periodic(v, claim)
    if v.p != 3:
        raise ValueError(f"{claim} is specific to p = 3")
    if n != 3:
        raise ValueError(f"{claim} concerns the level-3 quotient")


def verify_lemma_center(
    v: DefiningVector, n: int, budget: int, workers: int
) -> Certificate:
    _require_gupta_sidki_level3(v, n, "lemma-center")
    cert = _new_certificate("lemma-center", v, 3)
    group = enumerate_quotient(v, 3, budget)
    cert.element_count = len(group)
    cert.exhaustive = True
    special = build_special_elements(group)
    center = group.center()
    stab = group.level_stabilizer(1)
    stab_derived = group.subgroup_commutator(stab, stab)
    ok = cert.check("center_order", len(center) == 3, f"|Z| = {len(center)}")
    ok &= cert.check(
        "center_in_stabilizer_derived",
        all(z in stab_derived for z in center),
        "Z lies in the derived subgroup of the first-level stabilizer",
    )
    ok &= cert.check(
        "generator_sections",
        special.u.labels in center.keys and special.u.order() == 3,
        "a generator of Z has sections ([a,b], [a,b], [a,b])",
    )
    cert.witnesses["u"] = special.u.encode()
    cert.verdict = "verified" if ok else "refuted"
    return cert


def verify_lemma_comms_b(
    v: DefiningVector, n: int, budget: int, workers: int
) -> Certificate:
    _require_gupta_sidki_level3(v, n, "lemma-comms-b")
    cert = _new_certificate("lemma-comms-b", v, 3)
    group = enumerate_quotient(v, 3, budget)
    cert.element_count = len(group)
    cert.exhaustive = True
    center_keys = group.center().keys
    comms = pmap(partial(commutator, group.b), group.elements, workers)
    hits = sorted(
        c.labels for c in comms if not c.is_identity() and c.labels in center_keys
    )
    ok = cert.check(
        "no_central_commutator",
        not hits,
        f"scanned all {len(group)} commutators [b, g]; "
        f"{len(hits)} nontrivial central hits",
    )
    if hits:
        cert.witnesses["central_commutator"] = group.element(hits[0]).encode()
    cert.verdict = "verified" if ok else "refuted"
    return cert


def verify_lemma_comms_a(
    v: DefiningVector, n: int, budget: int, workers: int
) -> Certificate:
    _require_gupta_sidki_level3(v, n, "lemma-comms-a")
    cert = _new_certificate("lemma-comms-a", v, 3)
    group = enumerate_quotient(v, 3, budget)
    cert.element_count = len(group)
    cert.exhaustive = True
    special = build_special_elements(group)
    comms = pmap(partial(commutator, group.a), group.elements, workers)
    ok = cert.check(
        "not_a_commutator",
        all(c != special.v for c in comms),
        f"scanned all {len(group)} commutators [a, g]; none equals v",
    )
    cert.witnesses["v"] = special.v.encode()
    cert.verdict = "verified" if ok else "refuted"
    return cert


def verify_prop_key(
    v: DefiningVector, n: int, budget: int, workers: int
) -> Certificate:
    _require_periodic(v, "prop-key")
    if n < 3:
        raise ValueError(
            "the power-subgroup claim needs n >= 3, where ab^i has order p^2"
        )
    cert = _new_certificate("prop-key", v, n)
    p = v.p
    predicted = predicted_order(v, n)
    if predicted is not None and predicted > budget:
        cert.notes.append(
            f"predicted order {predicted} exceeds the budget {budget}; "
            "running element-wise sub-checks only"
        )
        ok = _order_checks(cert, v, n, _standard_order_items(v, n), prefix="partial_")
        ok &= _eq31_checks(cert, v, n, prefix="partial_")
        cert.verdict = "skipped: scale" if ok else "refuted"
        return cert
    group = enumerate_quotient(v, n, budget)
    cert.element_count = len(group)
    cert.exhaustive = True
    cert.notes.append(
        "conjugates of <(ab^j)^p> are exhausted via conjugation-orbit closure, "
        "which reaches the orbit under the full group"
    )
    w = {}
    orbits = {}
    for i in range(1, p):
        w[i] = group.element(((group.a * group.b**i) ** p).labels)
        cert.witnesses[f"w{i}"] = w[i].encode()
        base = cyclic_subgroup(group, w[i]).keys
        orbits[i] = set(subgroup_conjugation_orbit(group, base))
    ok = True
    for i in range(1, p):
        keys_i = cyclic_subgroup(group, w[i]).keys
        ok &= cert.check(
            f"self_conjugate_i{i}",
            keys_i in orbits[i],
            "the subgroup is in its own conjugation orbit (identity conjugator)",
        )
        for j in range(1, p):
            if i == j:
                continue
            ok &= cert.check(
                f"distinct_i{i}_j{j}",
                keys_i not in orbits[j],
                f"no conjugate of <(ab^{j})^{p}> equals <(ab^{i})^{p}> "
                f"(orbit of {len(orbits[j])} subgroups)",
            )
    cert.verdict = "verified" if ok else "refuted"
    return cert


def verify_prop_collision(
    v: DefiningVector, n: int, budget: int, workers: int
) -> Certificate:
    _require_non_periodic(v, "prop-collision")
    if n < 2:
        raise ValueError("the collision claim concerns levels n >= 2")
    cert = _new_certificate("prop-collision", v, n)
    p = v.p
    predicted = predicted_order(v, n)
    if predicted is not None and predicted > budget:
        cert.notes.append(
            f"predicted order {predicted} exceeds the budget {budget}; "
            "checking the coset representatives ab^i element-wise only"
        )
        ok = _rep_collision_checks(cert, v, n)
        cert.verdict = "skipped: scale" if ok else "refuted"
        return cert
    group = enumerate_quotient(v, n, budget)
    cert.element_count = len(group)
    cert.exhaustive = True
    z_keys = _collision_scan(cert, group, workers)
    cert.verdict = "verified" if z_keys is not None else "refuted"
    return cert


def _rep_collision_checks(cert: Certificate, v: DefiningVector, n: int) -> bool:
    """Collision checks on the representatives ab^i alone (no enumeration)."""
    p = v.p
    a, b = _generator_portraits(v, n)
    ok = True
    steps = []
    for i in range(1, p):
        rep = a * b**i
        got = rep.order()
        ok &= cert.check(
            f"partial_order_rep{i}", got == p**n, f"order of ab^{i} is {got}"
        )
        steps.append(rep ** (p ** (n - 1)))
    first = {s.labels for s in _powers_of(steps[0])}
    for i, s in enumerate(steps[1:], start=2):
        ok &= cert.check(
            f"partial_common_subgroup_rep{i}",
            {x.labels for x in _powers_of(s)} == first,
            f"<(ab^{i})^({p}^{n - 1})> matches the first representative's subgroup",
        )
    return ok


def _powers_of(x: Portrait) -> list[Portrait]:
    """x, x^2, ... around to the identity: the cyclic subgroup as a list."""
    out = [x]
    g = x * x
    while g != x:
        out.append(g)
        g = g * x
    return out


def verify_thm_B(v: DefiningVector, n: int, budget: int, workers: int) -> Certificate:
    _require_non_periodic(v, "thm-B")
    if n < 1:
        raise ValueError("levels start at 1")
    cert = _new_certificate("thm-B", v, n)
    cert.notes.append(
        "certificate covers the stated level only, not the statement for all levels"
    )
    p = v.p
    if n == 1:
        group = enumerate_quotient(v, 1, budget)
        cert.element_count = len(group)
        cert.exhaustive = True
        cyclic = any(
            len(cyclic_subgroup(group, x)) == len(group) for x in group.elements
        )
        ok = cert.check("level1_cyclic", cyclic, f"the {len(group)}-element quotient is cyclic")
        oracle = search_beauville(group, "exhaustive")
        ok &= cert.check(
            "no_structure_oracle",
            oracle.refuted,
            "the literal no-pruning search finds no structure",
        )
        cert.verdict = "verified" if ok else "refuted"
        return cert
    predicted = predicted_order(v, n)
    if predicted is not None and predicted > budget:
        cert.notes.append(
            f"predicted order {predicted} exceeds the budget {budget}; "
            "checking the coset representatives ab^i element-wise only"
        )
        ok = _rep_collision_checks(cert, v, n)
        cert.verdict = "skipped: scale" if ok else "refuted"
        return cert
    group = enumerate_quotient(v, n, budget)
    cert.element_count = len(group)
    cert.exhaustive = True
    z_keys = _collision_scan(cert, group, workers)
    ok = z_keys is not None
    ok = _pigeonhole_checks(cert, group) and ok
    if ok:
        cert.notes.append(
            "conclusion: every generating triple has a member inside some "
            "<ab^i, derived> coset, that member's high power generates the one "
            "common cyclic subgroup, so every Sigma set contains it and no two "
            "Sigma sets meet trivially"
        )
    if n == 2 and ok:
        oracle = search_beauville(group, "exhaustive")
        ok &= cert.check(
            "no_structure_oracle",
            oracle.refuted,
            "independent literal search (no pruning) also finds no structure",
        )
        pruned = search_beauville(group, "pruned")
        ok &= cert.check(
            "no_structure_signatures",
            pruned.refuted,
            "the signature-exhaustion search agrees",
        )
    cert.verdict = "verified" if ok else "refuted"
    return cert


def verify_thm_G2(v: DefiningVector, n: int, budget: int, workers: int) -> Certificate:
    _require_periodic(v, "thm-G2")
    if n != 2:
        raise ValueError("this claim concerns the level-2 quotient")
    cert = _new_certificate("thm-G2", v, 2)
    p = v.p
    group = enumerate_quotient(v, 2, budget)
    cert.element_count = len(group)
    if len(group) <= SEARCH_ELEMENT_CAP:
        _exponent_check(cert, group, workers)
        search = search_beauville(group, "pruned")
        cert.exhaustive = True
        if p == 3:
            ok = cert.check(
                "no_structure",
                search.refuted,
                "the signature-exhaustion search finds no structure at p = 3",
            )
        else:
            ok = cert.check(
                "structure_found",
                search.verified,
                "the search finds and confirms a structure",
            )
            if search.verified:
                cert.witnesses["triple_1"] = search.witnesses["triple_1"]
                cert.witnesses["triple_2"] = search.witnesses["triple_2"]
        for note in search.notes:
            cert.notes.append(f"search: {note}")
        cert.verdict = "verified" if ok else "refuted"
        return cert
    # Beyond the signature-search cap (p >= 7): confirm a fixed candidate whose
    # six members lie on six distinct maximal-subgroup lines, literally.
    cert.notes.append(
        f"group order {len(group)} exceeds the search cap {SEARCH_ELEMENT_CAP}; "
        "verifying a fixed candidate pair literally instead of searching"
    )
    t1 = GeneratingTriple.make(group, group.a, group.b)
    t2 = GeneratingTriple.make(
        group, group.a * group.b**2, group.a * group.b**4
    )
    pair = is_beauville_pair(t1, t2, group)
    ok = cert.check(
        "structure_found",
        pair.verified,
        "the candidate pair (a, b) / (ab^2, ab^4) verifies literally",
    )
    cert.witnesses["triple_1"] = t1.encode()
    cert.witnesses["triple_2"] = t2.encode()
    cert.exhaustive = False
    cert.verdict = "verified" if ok else "refuted"
    return cert


def verify_thm_G3(v: DefiningVector, n: int, budget: int, workers: int) -> Certificate:
    _require_periodic(v, "thm-G3")
    if n != 3:
        raise ValueError("this claim concerns the level-3 quotient")
    cert = _new_certificate("thm-G3", v, 3)
    p = v.p
    if p == 3:
        group = enumerate_quotient(v, 3, budget)
        cert.element_count = len(group)
        cert.exhaustive = True
        pair = _gupta_sidki_structure(cert, group)
        cert.verdict = "verified" if pair is not None else "refuted"
        return cert
    predicted = predicted_order(v, 3)
    if predicted is not None and predicted > budget:
        cert.notes.append(
            f"predicted order {predicted} exceeds the budget {budget}; "
            "running the element-wise sub-checks for the standard triples"
        )
    ok = _standard_triples_checks(cert, v, 3)
    if predicted is not None and predicted <= budget:
        # Small enough after all: confirm the standard triple pair literally.
        group = enumerate_quotient(v, 3, budget)
        cert.element_count = len(group)
        a, b = group.a, group.b
        t1 = GeneratingTriple.make(group, a.inverse() * a.inverse(), a * b)
        t2 = GeneratingTriple.make(group, a * b**2, b)
        pair = is_beauville_pair(t1, t2, group)
        ok &= cert.check(
            "sigma_intersection_trivial", pair.verified, "the standard pair verifies"
        )
        cert.witnesses["triple_1"] = t1.encode()
        cert.witnesses["triple_2"] = t2.encode()
        cert.exhaustive = True
        cert.verdict = "verified" if ok else "refuted"
        return cert
    cert.verdict = "skipped: scale" if ok else "refuted"
    return cert


def _standard_triples_checks(cert: Certificate, v: DefiningVector, n: int) -> bool:
    """Element-wise checks for the triples (a^-2, ab, a^-1 b) / (ab^2, b, ab^3)."""
    p = v.p
    a, b = _generator_portraits(v, n)
    items = [
        ("x1_a-2", a.inverse() * a.inverse(), p),
        ("y1_ab", a * b, p * p),
        ("x1y1_A_b", a.inverse() * b, p * p),
        ("x2_ab2", a * b**2, p * p),
        ("y2_b", b, p),
        ("x2y2_ab3", a * b**3, p * p),
    ]
    ok = _order_checks(cert, v, n, items)
    ok &= _eq31_checks(cert, v, n)
    lhs = (a.inverse() * b).inverse()
    rhs = (a * b ** (p - 1)).conjugate_by(b)
    ok &= cert.check(
        "inverse_identity",
        lhs == rhs,
        "(a^-1 b)^-1 equals (a b^(p-1)) conjugated by b",
    )
    cert.notes.append(
        "the second triple's third member is the literal product (ab^2)(b) = ab^3"
    )
    return ok


def verify_thm_A(v: DefiningVector, n: int, budget: int, workers: int) -> Certificate:
    _require_periodic(v, "thm-A")
    p = v.p
    if not ((p >= 5 and n >= 2) or (p == 3 and n >= 3)):
        raise ValueError(
            "the claim covers p >= 5 with n >= 2, or p = 3 with n >= 3; "
            f"got p={p}, n={n}"
        )
    cert = _new_certificate("thm-A", v, n)
    cert.notes.append(
        "certificate covers the stated level only, not the statement for all levels"
    )
    if p >= 5 and n == 2:
        inner = verify_thm_G2(v, 2, budget, workers)
        cert.checks.extend(inner.checks)
        cert.witnesses.update(inner.witnesses)
        cert.notes.extend(f"level-2: {x}" for x in inner.notes)
        cert.element_count = inner.element_count
        cert.exhaustive = inner.exhaustive
        cert.verdict = inner.verdict
        return cert
    if p == 3:
        group = enumerate_quotient(v, 3, budget)
        pair = _gupta_sidki_structure(cert, group)
        ok = pair is not None
        if n == 3:
            cert.element_count = len(group)
            cert.exhaustive = True
            cert.verdict = "verified" if ok else "refuted"
            return cert
        triple = [("x1_a", "a"), ("y1_b", "b"), ("x1y1_ab", "ab")]
        ok &= _lifting_checks(cert, v, triple, 3, n, prefix="lift_")
        cert.exhaustive = False
        cert.notes.append(
            "conclusion: the structure verified exhaustively at depth 3 lifts to "
            f"depth {n} because the first triple's element orders are preserved"
        )
        cert.verdict = "verified" if ok else "refuted"
        return cert
    # p >= 5, n >= 3: the level-3 quotient has order p^(4p+1), far out of scale.
    ok = _standard_triples_checks(cert, v, 3)
    triple = [("x1_a-2", "A^2"), ("y1_ab", "ab"), ("x1y1_A_b", "Ab")]
    if n > 3:
        ok &= _lifting_checks(cert, v, triple, 3, n, prefix="lift_")
    cert.notes.append(
        "the full Sigma-intersection check at this scale is not run; "
        "the element-wise sub-checks above are exhaustive over the stated elements"
    )
    cert.verdict = "skipped: scale" if ok else "refuted"
    return cert


def verify_lifting(
    v: DefiningVector,
    n: int,
    budget: int,
    workers: int,
    m: int,
    x_word: str,
    y_word: str,
) -> Certificate:
    if m <= n:
        raise ValueError("the target depth m must exceed the source depth n")
    cert = _new_certificate("lifting", v, n, m=m, x=x_word, y=y_word)
    cert.exhaustive = True
    cert.notes.append("element-wise portrait computation; no group enumeration")
    xy = f"({x_word})({y_word})"
    triple = [("x", x_word), ("y", y_word), ("xy", xy)]
    ok = _lifting_checks(cert, v, triple, n, m)
    cert.verdict = "verified" if ok else "refuted"
    return cert


def verify_order_formula(
    v: DefiningVector, n: int, budget: int, workers: int
) -> Certificate:
    cert = _new_certificate("order-formula", v, n)
    predicted = predicted_order(v, n)
    if predicted is None:
        try:
            group = enumerate_quotient(v, n, budget)
        except BudgetExceeded as exc:
            cert.notes.append(str(exc))
            cert.verdict = "skipped: scale"
            return cert
        cert.element_count = len(group)
        cert.witnesses["enumerated_order"] = len(group)
        cert.notes.append(
            "no order formula applies to symmetric defining vectors at n >= 3; "
            "the enumerated size is reported without a cross-check"
        )
        cert.verdict = "skipped: no formula for symmetric defining vectors"
        return cert
    if predicted > budget:
        cert.notes.append(
            f"predicted order {predicted} exceeds the budget {budget}"
        )
        cert.verdict = "skipped: scale"
        return cert
    group = enumerate_quotient(v, n, budget)
    cert.element_count = len(group)
    cert.exhaustive = True
    t = v.rank
    ok = cert.check(
        "order_matches",
        len(group) == predicted,
        f"enumerated {len(group)}, formula gives {predicted} (t = {t})",
    )
    cert.witnesses["enumerated_order"] = len(group)
    cert.witnesses["predicted_order"] = predicted
    cert.verdict = "verified" if ok else "refuted"
    return cert


# -- dispatch ---------------------------------------------------------------------


def verify_claim(
    claim: str,
    v: DefiningVector,
    n: int | None = None,
    *,
    m: int | None = None,
    x_word: str = "a",
    y_word: str = "b",
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> Certificate:
    """Run the verifier for one claim id and stamp the wall time."""
    if claim not in CLAIMS:
        known = ", ".join(sorted(CLAIMS))
        raise ValueError(f"unknown claim {claim!r}; known claims: {known}")
    level = n if n is not None else default_level(claim)
    start = time.perf_counter()
    if claim == "lifting":
        target = m if m is not None else level + 1
        cert = verify_lifting(v, level, budget, workers, target, x_word, y_word)
    else:
        fn: Callable = {
            "thm-A": verify_thm_A,
            "thm-B": verify_thm_B,
            "thm-G2": verify_thm_G2,
            "thm-G3": verify_thm_G3,
            "lemma-orders": verify_lemma_orders,
            "lemma-conjugates": verify_lemma_conjugates,
            "lemma-center": verify_lemma_center,
            "lemma-comms-b": verify_lemma_comms_b,
            "lemma-comms-a": verify_lemma_comms_a,
            "prop-key": verify_prop_key,
            "prop-collision": verify_prop_collision,
            "eq-3.1": verify_eq31,
            "order-formula": verify_order_formula,
        }[claim]
        cert = fn(v, level, budget, workers)
    cert.wall_time = time.perf_counter() - start
    return cert


def replay_certificate(
    doc: dict, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> bool:
    """Re-verify a stored certificate.

    Verified certificates carrying witness triples are replayed by checking
    the witnesses directly (no search); everything else re-runs the claim and
    must reproduce the stored canonical document byte for byte.
    """
    cert = Certificate.from_dict(doc)
    params = cert.params
    v = DefiningVector(params["p"], tuple(params["e"]))
    if (
        cert.verified
        and "triple_1" in cert.witnesses
        and "triple_2" in cert.witnesses
    ):
        group = enumerate_quotient(v, params["n"], budget)
        t1 = _decode_triple(group, cert.witnesses["triple_1"])
        t2 = _decode_triple(group, cert.witnesses["triple_2"])
        return is_beauville_pair(t1, t2, group).verified
    fresh = verify_claim(
        cert.claim,
        v,
        params["n"],
        m=params.get("m"),
        x_word=params.get("x", "a"),
        y_word=params.get("y", "b"),
        budget=budget,
        workers=workers,
    )
    return fresh.canonical_json() == cert.canonical_json()


def _decode_triple(group: QuotientGroup, encoded: list[str]) -> GeneratingTriple:
    x = group.element(encoded[0])
    y = group.element(encoded[1])
    t = GeneratingTriple.make(group, x, y)
    if t.xy.encode() != encoded[2]:
        raise ValueError("stored triple product does not match x*y")
    return t
