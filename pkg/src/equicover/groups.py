"""Finite groups as validated multiplication tables.

Elements are integers 0..n-1 indexing into a multiplication table.  All the
classic small groups have constructors; anything else can be loaded from an
explicit table.  Subgroups are plain sorted tuples of element indices, and
every search that has to pick between candidates breaks ties by the
lexicographically smallest sorted index tuple, so repeated runs agree.
"""

from __future__ import annotations

import os
from itertools import permutations
from math import gcd

from .errors import (
    AbelianInput,
    InvalidTable,
    NotNormal,
    NotSubgroup,
    OrderCapExceeded,
)

DEFAULT_MAX_GROUP_ORDER = 48


def max_group_order() -> int:
    raw = os.environ.get("EQUICOVER_MAX_GROUP_ORDER")
    return int(raw) if raw else DEFAULT_MAX_GROUP_ORDER


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    def __init__(self, mul, labels=None, check: bool = True):
        self.n = len(mul)
        self.mul = tuple(tuple(row) for row in mul)
        self.labels = tuple(labels) if labels else tuple(str(i) for i in range(self.n))
        if check:
            self._validate()
        self.identity = self._find_identity()
        self.inv = tuple(self._find_inverse(g) for g in range(self.n))

    # -- construction -----------------------------------------------------

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        mul = [[(i + j) % n for j in range(n)] for i in range(n)]
        return cls(mul, labels=[f"g{i}" if i else "e" for i in range(n)])

    @classmethod
    def dihedral(cls, n: int) -> "FiniteGroup":
        """Symmetries of the n-gon, order 2n, elements r^a and s r^a."""

        def idx(flip, rot):
            return flip * n + rot % n

        mul = [[0] * (2 * n) for _ in range(2 * n)]
        for f1 in (0, 1):
            for a in range(n):
                for f2 in (0, 1):
                    for b in range(n):
                        if f2 == 0:
                            out = idx(f1, a + b)
                        else:
                            out = idx(1 - f1, b - a)
                        mul[idx(f1, a)][idx(f2, b)] = out
        labels = [f"r{a}" if a else "e" for a in range(n)]
        labels += [f"sr{a}" if a else "s" for a in range(n)]
        return cls(mul, labels=labels)

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        perms = list(permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        mul = [
            [index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms
        ]
        return cls(mul, labels=[_perm_label(p) for p in perms])

    @classmethod
    def alternating(cls, n: int) -> "FiniteGroup":
        perms = [p for p in permutations(range(n)) if _perm_sign(p) == 1]
        index = {p: i for i, p in enumerate(perms)}
        mul = [
            [index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms
        ]
        return cls(mul, labels=[_perm_label(p) for p in perms])

    @classmethod
    def quaternion(cls) -> "FiniteGroup":
        """The eight quaternion units, ordered 1, -1, i, -i, j, -j, k, -k."""
        # element = (sign, axis) with axes 0=1, 1=i, 2=j, 3=k
        axis_mul = {
            (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
            (1, 0): (1, 1), (2, 0): (1, 2), (3, 0): (1, 3),
            (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
            (1, 2): (1, 3), (2, 1): (-1, 3),
            (2, 3): (1, 1), (3, 2): (-1, 1),
            (3, 1): (1, 2), (1, 3): (-1, 2),
        }

        def unpack(i):
            return (-1 if i % 2 else 1, i // 2)

        def pack(sign, axis):
            return 2 * axis + (0 if sign == 1 else 1)

        n = 8
        mul = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                s1, x1 = unpack(a)
                s2, x2 = unpack(b)
                s3, x3 = axis_mul[(x1, x2)]
                mul[a][b] = pack(s1 * s2 * s3, x3)
        return cls(mul, labels=["1", "-1", "i", "-i", "j", "-j", "k", "-k"])

    @classmethod
    def semidirect_product(cls, a: "FiniteGroup", b: "FiniteGroup", action):
        """A normal, twisted by an action of b through automorphisms of a.

        action[j] is the permutation of a's elements giving the automorphism
        applied by element j of b; pairs multiply as
        (x1, y1)(x2, y2) = (x1 * action[y1](x2), y1 y2).
        """
        na, nb = a.n, b.n
        if na * nb > max_group_order():
            raise OrderCapExceeded(f"semidirect order {na * nb} exceeds the cap")
        if len(action) != nb or any(len(row) != na for row in action):
            raise InvalidTable("action table has the wrong shape")
        if list(action[b.identity]) != list(range(na)):
            raise InvalidTable("identity of the acting group must act trivially")
        for j in range(nb):
            row = action[j]
            if len(set(row)) != na or row[a.identity] != a.identity:
                raise InvalidTable(f"action of {j} is not an automorphism")
            for x in range(na):
                for y in range(na):
                    if row[a.mul[x][y]] != a.mul[row[x]][row[y]]:
                        raise InvalidTable(f"action of {j} is not an automorphism")
        for j1 in range(nb):
            for j2 in range(nb):
                composed = [action[j1][action[j2][x]] for x in range(na)]
                if composed != list(action[b.mul[j1][j2]]):
                    raise InvalidTable("action is not a homomorphism")

        def idx(x, y):
            return x * nb + y

        mul = [[0] * (na * nb) for _ in range(na * nb)]
        for x1 in range(na):
            for y1 in range(nb):
                for x2 in range(na):
                    for y2 in range(nb):
                        mul[idx(x1, y1)][idx(x2, y2)] = idx(
                            a.mul[x1][action[y1][x2]], b.mul[y1][y2]
                        )
        labels = [
            f"{a.labels[x]}|{b.labels[y]}" for x in range(na) for y in range(nb)
        ]
        return cls(mul, labels=labels)

    @classmethod
    def direct_product(cls, a: "FiniteGroup", b: "FiniteGroup") -> "FiniteGroup":
        na, nb = a.n, b.n
        if na * nb > max_group_order():
            raise OrderCapExceeded(f"direct product order {na * nb} exceeds the cap")

        def idx(i, j):
            return i * nb + j

        mul = [[0] * (na * nb) for _ in range(na * nb)]
        for i1 in range(na):
            for j1 in range(nb):
                for i2 in range(na):
                    for j2 in range(nb):
                        mul[idx(i1, j1)][idx(i2, j2)] = idx(
                            a.mul[i1][i2], b.mul[j1][j2]
                        )
        labels = [
            f"{a.labels[i]}|{b.labels[j]}" for i in range(na) for j in range(nb)
        ]
        return cls(mul, labels=labels)

    # -- validation --------------------------------------------------------

    def _validate(self):
        n = self.n
        if n == 0:
            raise InvalidTable("empty table")
        if n > max_group_order():
            raise OrderCapExceeded(f"group order {n} exceeds the cap {max_group_order()}")
        for row in self.mul:
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise InvalidTable("table is not square over the element range")
        for i in range(n):
            if len(set(self.mul[i])) != n:
                raise InvalidTable(f"row {i} is not a permutation")
            if len({self.mul[j][i] for j in range(n)}) != n:
                raise InvalidTable(f"column {i} is not a permutation")
        mul = self.mul
        for a in range(n):
            for b in range(n):
                ab = mul[a][b]
                row_ab = mul[ab]
                row_b = mul[b]
                for c in range(n):
                    if row_ab[c] != mul[a][row_b[c]]:
                        raise InvalidTable(f"associativity fails at ({a},{b},{c})")

    def _find_identity(self) -> int:
        for e in range(self.n):
            if all(self.mul[e][g] == g and self.mul[g][e] == g for g in range(self.n)):
                return e
        raise InvalidTable("no identity element")

    def _find_inverse(self, g: int) -> int:
        for h in range(self.n):
            if self.mul[g][h] == self.identity:
                if self.mul[h][g] != self.identity:
                    raise InvalidTable(f"one-sided inverse at {g}")
                return h
        raise InvalidTable(f"no inverse for {g}")

    # -- basic structure ---------------------------------------------------

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def conjugate(self, g: int, x: int) -> int:
        """g^-1 x g."""
        return self.mul[self.mul[self.inv[g]][x]][g]

    def element_order(self, g: int) -> int:
        k, acc = 1, g
        while acc != self.identity:
            acc = self.mul[acc][g]
            k += 1
        return k

    def exponent(self) -> int:
        m = 1
        for g in range(self.n):
            o = self.element_order(g)
            m = m * o // gcd(m, o)
        return m

    def is_abelian(self) -> bool:
        return all(
            self.mul[a][b] == self.mul[b][a]
            for a in range(self.n)
            for b in range(a + 1, self.n)
        )

    def generators(self) -> tuple[int, ...]:
        """A small deterministic generating set (greedy by index)."""
        gens: list[int] = []
        closed = frozenset({self.identity})
        while len(closed) < self.n:
            g = next(i for i in range(self.n) if i not in closed)
            gens.append(g)
            closed = frozenset(self.closure(gens))
        return tuple(gens)

    def closure(self, subset) -> tuple[int, ...]:
        seen = set(subset) | {self.identity}
        frontier = list(seen)
        while frontier:
            nxt = []
            for a in list(seen):
                for b in frontier:
                    for c in (self.mul[a][b], self.mul[b][a]):
                        if c not in seen:
                            seen.add(c)
                            nxt.append(c)
            frontier = nxt
        return tuple(sorted(seen))

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        """Classes ordered by their smallest element (identity class first)."""
        seen = set()
        classes = []
        for g in range(self.n):
            if g in seen:
                continue
            cls_set = {self.conjugate(h, g) for h in range(self.n)}
            seen |= cls_set
            classes.append(tuple(sorted(cls_set)))
        return classes

    def center(self) -> tuple[int, ...]:
        return tuple(
            g
            for g in range(self.n)
            if all(self.mul[g][h] == self.mul[h][g] for h in range(self.n))
        )

    def commutator_subgroup(self) -> tuple[int, ...]:
        comms = {
            self.mul[self.mul[self.inv[a]][self.inv[b]]][self.mul[a][b]]
            for a in range(self.n)
            for b in range(self.n)
        }
        return self.closure(comms)

    # -- subgroups ---------------------------------------------------------

    def check_subgroup(self, elements) -> tuple[int, ...]:
        elems = tuple(sorted(set(elements)))
        if not elems:
            raise NotSubgroup("empty subset")
        s = set(elems)
        if self.identity not in s:
            raise NotSubgroup("missing identity")
        for a in elems:
            if self.inv[a] not in s:
                raise NotSubgroup(f"missing inverse of {a}")
            for b in elems:
                if self.mul[a][b] not in s:
                    raise NotSubgroup(f"not closed: {a}*{b}")
        return elems

    def all_subgroups(self) -> list[tuple[int, ...]]:
        """Every subgroup, found by closing generator sets one element at a time."""
        found = {(self.identity,)}
        frontier = [(self.identity,)]
        # seed with all cyclic subgroups
        for g in range(self.n):
            h = self.closure([g])
            if h not in found:
                found.add(h)
                frontier.append(h)
        while frontier:
            nxt = []
            for h in frontier:
                hs = set(h)
                for g in range(self.n):
                    if g in hs:
                        continue
                    ext = self.closure(h + (g,))
                    if ext not in found:
                        found.add(ext)
                        nxt.append(ext)
            frontier = nxt
        return sorted(found, key=lambda h: (len(h), h))

    def is_normal(self, elements) -> bool:
        s = set(elements)
        return all(
            self.conjugate(g, x) in s for g in range(self.n) for x in elements
        )

    def right_cosets(self, elements):
        """Right cosets H g.  Returns minimal-index representatives, sorted.

        The tiling (r, h) -> h r is a bijection R x H -> G; violations mean
        the subset was not a subgroup.
        """
        h = self.check_subgroup(elements)
        seen = set()
        reps = []
        for g in range(self.n):
            if g in seen:
                continue
            coset = {self.mul[x][g] for x in h}
            seen |= coset
            reps.append(g)
        hit = set()
        for r in reps:
            for x in h:
                y = self.mul[x][r]
                if y in hit:
                    raise NotSubgroup("coset tiling overlapped")
                hit.add(y)
        if len(hit) != self.n:
            raise NotSubgroup("coset tiling missed elements")
        return reps

    def coset_lookup(self, elements, reps):
        """Map g -> (h, r) with g = h r, h in H, r the coset representative."""
        h_set = set(elements)
        table = {}
        for r in reps:
            for x in elements:
                table[self.mul[x][r]] = (x, r)
        assert len(table) == self.n
        return table

    def quotient(self, elements):
        """Quotient group on right cosets; raises NotNormal when undefined."""
        h = self.check_subgroup(elements)
        if not self.is_normal(h):
            raise NotNormal("quotient by a non-normal subgroup")
        reps = self.right_cosets(h)
        lookup = self.coset_lookup(h, reps)
        rep_index = {r: i for i, r in enumerate(reps)}

        def cls_of(g):
            return rep_index[lookup[g][1]]

        mul = [
            [cls_of(self.mul[a][b]) for b in reps] for a in reps
        ]
        q = FiniteGroup(mul, labels=[f"[{self.labels[r]}]" for r in reps])
        return q, [cls_of(g) for g in range(self.n)]

    def subgroup_as_group(self, elements):
        """Re-index a subgroup as a standalone group.

        Returns (group, embed) where embed[i] is the parent index of local i.
        The local order preserves the parent index order.
        """
        elems = self.check_subgroup(elements)
        local = {g: i for i, g in enumerate(elems)}
        mul = [[local[self.mul[a][b]] for b in elems] for a in elems]
        grp = FiniteGroup(mul, labels=[self.labels[g] for g in elems])
        return grp, elems

    def __repr__(self):
        return f"FiniteGroup(order={self.n})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mul == other.mul

    def __hash__(self):
        return hash(self.mul)


def _perm_sign(p) -> int:
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def _perm_label(p) -> str:
    seen = set()
    parts = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        parts.append("(" + " ".join(str(v) for v in cyc) + ")")
    return "".join(parts) if parts else "e"


def find_abelian_normal_prime_index(group: FiniteGroup):
    """Descend to a nonabelian subgroup with an abelian normal subgroup of
    prime index.

    Returns (g_prime, h, p): the element sets of the nonabelian subgroup and
    of its abelian normal subgroup of index p.  The first step picks a
    minimal nonabelian subgroup (one all of whose proper subgroups are
    abelian); every prime-index normal subgroup of such a group is then
    automatically abelian, which is what makes the descent terminate.
    Ties are broken by the lexicographically smallest element set.
    """
    if group.is_abelian():
        raise AbelianInput("the group has no nonabelian subgroup to descend to")
    subgroups = group.all_subgroups()
    nonabelian = [
        h for h in subgroups if not _subset_abelian(group, h)
    ]
    minimal = [
        h
        for h in nonabelian
        if not any(set(k) < set(h) for k in nonabelian if k != h)
    ]
    g_prime = min(minimal)  # lexicographic tie-break on sorted element sets
    gp_set = set(g_prime)
    candidates = []
    for h in subgroups:
        if not set(h) <= gp_set or len(h) == len(g_prime):
            continue
        index, rem = divmod(len(g_prime), len(h))
        if rem or not _is_prime(index):
            continue
        if all(group.conjugate(g, x) in set(h) for g in g_prime for x in h):
            candidates.append((h, index))
    if not candidates:
        raise NotNormal("no prime-index normal subgroup found in the descent")
    h, p = min(candidates, key=lambda c: c[0])
    assert _subset_abelian(group, h), "prime-index kernel failed to be abelian"
    return g_prime, h, p


def _subset_abelian(group: FiniteGroup, elems) -> bool:
    return all(
        group.mul[a][b] == group.mul[b][a]
        for a in elems
        for b in elems
        if a < b
    )


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True
