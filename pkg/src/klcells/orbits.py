"""Nilpotent-orbit posets and their lattices of poset ideals.

Rank <= 2 simple algebras get hard-coded closure orders (they are chains);
sl_n gets the dominance order on partitions of n.  Thick tensor ideals of
the corresponding tilting categories are modelled by proper down-sets of
the orbit poset, and the prime ones are the complements of principal
filters, one for each orbit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

Label = str


@dataclass(frozen=True)
class OrbitPoset:
    algebra: str
    nodes: tuple[Label, ...]                 # sorted bottom-ish to top-ish
    covers: tuple[tuple[Label, Label], ...]  # (lower, upper)

    def leq(self, a: Label, b: Label) -> bool:
        if a == b:
            return True
        reach = {a}
        frontier = [a]
        up = {}
        for lo, hi in self.covers:
            up.setdefault(lo, []).append(hi)
        while frontier:
            x = frontier.pop()
            for y in up.get(x, ()):
                if y not in reach:
                    reach.add(y)
                    frontier.append(y)
        return b in reach

    def principal_filter(self, a: Label) -> frozenset:
        return frozenset(b for b in self.nodes if self.leq(a, b))

    def down_closed(self, subset: frozenset) -> bool:
        return all(a in subset
                   for b in subset for a in self.nodes if self.leq(a, b))


@dataclass(frozen=True)
class ThickIdeal:
    downset: frozenset
    prime: bool
    principal: bool
    prime_orbit: Label | None  # the orbit O with I = complement of filter(O)


_CHAINS = {
    "sl2": ("zero", "reg"),
    "so5": ("zero", "min", "subreg", "reg"),
    "g2": ("zero", "min", "supmin", "subreg", "reg"),
}


def partitions(n: int) -> list[tuple[int, ...]]:
    """All partitions of n, weakly decreasing, lexicographically sorted."""
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    rec(n, n, ())
    return sorted(out)


def dominance_leq(lam: tuple[int, ...], mu: tuple[int, ...]) -> bool:
    """Dominance order on partitions of the same integer."""
    if sum(lam) != sum(mu):
        raise ValueError("partitions must have equal size")
    total_l = 0
    total_m = 0
    for i in range(max(len(lam), len(mu))):
        total_l += lam[i] if i < len(lam) else 0
        total_m += mu[i] if i < len(mu) else 0
        if total_l > total_m:
            return False
    return True


def _partition_label(p: tuple[int, ...]) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


def orbit_poset(algebra: str) -> OrbitPoset:
    """Closure order of nilpotent orbits for the supported algebras."""
    if algebra in _CHAINS:
        chain = _CHAINS[algebra]
        covers = tuple((chain[i], chain[i + 1]) for i in range(len(chain) - 1))
        return OrbitPoset(algebra, chain, covers)
    if algebra.startswith("sl") and algebra[2:].isdigit():
        n = int(algebra[2:])
        parts = partitions(n)
        labels = {p: _partition_label(p) for p in parts}
        covers = []
        for lo, hi in itertools.permutations(parts, 2):
            if lo == hi or not dominance_leq(lo, hi):
                continue
            if any(dominance_leq(lo, mid) and dominance_leq(mid, hi)
                   and mid not in (lo, hi) for mid in parts):
                continue
            covers.append((labels[lo], labels[hi]))
        nodes = tuple(labels[p] for p in sorted(parts, key=lambda q: (-len(q), q)))
        return OrbitPoset(algebra, nodes, tuple(sorted(covers)))
    raise ValueError(f"unsupported algebra {algebra!r}")


def _proper_downsets(poset: OrbitPoset) -> list[frozenset]:
    nodes = poset.nodes
    full = frozenset(nodes)
    out = []
    for r in range(len(nodes) + 1):
        for combo in itertools.combinations(nodes, r):
            s = frozenset(combo)
            if s != full and poset.down_closed(s):
                out.append(s)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def thick_ideal_lattice(poset: OrbitPoset) -> list[ThickIdeal]:
    """All proper down-sets, with primeness and principality tags."""
    downsets = _proper_downsets(poset)
    prime_map = {}
    for o in poset.nodes:
        comp = frozenset(poset.nodes) - poset.principal_filter(o)
        prime_map[comp] = o
    out = []
    for d in downsets:
        # principal down-sets are those generated by a single orbit
        principal = any(d == frozenset(x for x in poset.nodes if poset.leq(x, o))
                        for o in d)
        out.append(ThickIdeal(d, d in prime_map, principal,
                              prime_map.get(d)))
    return out


def prime_thick_ideals(poset: OrbitPoset) -> list[tuple[Label, ThickIdeal]]:
    """The orbit <-> prime bijection: complements of principal filters."""
    out = []
    for o in poset.nodes:
        comp = frozenset(poset.nodes) - poset.principal_filter(o)
        out.append((o, ThickIdeal(comp, True, False, o)))
    return out


def covers_of_ideal(poset: OrbitPoset, d: frozenset,
                    downsets: list[frozenset]) -> list[frozenset]:
    ups = [u for u in downsets if d < u]
    return [u for u in ups if not any(d < m < u for m in ups)]


def unique_cover_check(poset: OrbitPoset) -> dict:
    """Both directions of the prime <-> unique-cover correspondence."""
    downsets = _proper_downsets(poset)
    # the full set counts as a possible cover of maximal proper ideals
    all_sets = downsets + [frozenset(poset.nodes)]
    primes = {frozenset(poset.nodes) - poset.principal_filter(o)
              for o in poset.nodes}
    mismatches = []
    for d in downsets:
        cov = covers_of_ideal(poset, d, all_sets)
        unique = len(cov) == 1
        if unique != (d in primes):
            mismatches.append(sorted(d))
    return {
        "algebra": poset.algebra,
        "ideals": len(downsets),
        "primes": len(primes),
        "orbits": len(poset.nodes),
        "prime_iff_unique_cover": not mismatches,
        "mismatches": mismatches,
    }


def hasse_dot(poset: OrbitPoset) -> str:
    """Hasse diagram in DOT format (deterministic ordering)."""
    lines = ["digraph orbits {"]
    for n in poset.nodes:
        lines.append(f'  "{n}";')
    for lo, hi in sorted(poset.covers):
        lines.append(f'  "{lo}" -> "{hi}";')
    lines.append("}")
    return "\n".join(lines)


def ideal_lattice_dot(poset: OrbitPoset) -> str:
    downsets = _proper_downsets(poset)
    names = {d: "{" + ",".join(sorted(d)) + "}" for d in downsets}
    lines = ["digraph ideals {"]
    for d in downsets:
        lines.append(f'  "{names[d]}";')
    for d in downsets:
        for u in covers_of_ideal(poset, d, downsets):
            lines.append(f'  "{names[d]}" -> "{names[u]}";')
    lines.append("}")
    return "\n".join(lines)
