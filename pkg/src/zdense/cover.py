"""Index-3 torsion-free subgroup of pi1(O_3333) via Reidemeister-Schreier.

The subgroup is the kernel of g1, g3 -> 1 and g2, g4 -> 2 in Z/3. Every
g_i^k (k = 1, 2) moves every coset, so no conjugate of a torsion element lies in
the kernel and the kernel is a closed surface group of Euler characteristic
3 * (-2/3) = -2, i.e. genus 2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .groups import ORBIFOLD_3333, GroupWord, Presentation, Representation, check_relations
from .intlattice import abelian_invariants

CHARACTER = {"g1": 1, "g2": 2, "g3": 1, "g4": 2}
MODULUS = 3


@dataclass
class SubgroupData:
    index: int
    coset_table: dict  # coset -> {generator: coset}
    transversal: dict  # coset -> GroupWord
    schreier_generators: dict  # symbol -> GroupWord in the ambient generators
    relators: list  # GroupWords in the Schreier symbols
    abelianization: list
    torsion_free: dict
    euler_characteristic: Fraction

    @property
    def presentation(self) -> Presentation:
        return Presentation(
            "index-3 surface subgroup", tuple(self.schreier_generators), tuple(self.relators)
        )

    @property
    def genus(self) -> int:
        return int(1 - self.euler_characteristic / 2)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "character": CHARACTER,
            "coset_table": {str(c): row for c, row in self.coset_table.items()},
            "transversal": {str(c): str(w) for c, w in self.transversal.items()},
            "schreier_generators": {s: str(w) for s, w in self.schreier_generators.items()},
            "relators": [str(r) for r in self.relators],
            "abelianization": self.abelianization,
            "torsion_free": self.torsion_free,
            "euler_characteristic": str(self.euler_characteristic),
            "genus": self.genus,
        }


def _symbol(coset: int, gen: str) -> str:
    return f"s{coset}_{gen}"


def surface_cover_mod3() -> SubgroupData:
    gens = ORBIFOLD_3333.generators
    cosets = list(range(MODULUS))
    table = {c: {g: (c + CHARACTER[g]) % MODULUS for g in gens} for c in cosets}

    # BFS spanning tree over positive generators, generator order fixed
    transversal = {0: GroupWord()}
    tree_edges = set()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for g in gens:
            d = table[c][g]
            if d not in transversal:
                transversal[d] = transversal[c] * GroupWord.gen(g)
                tree_edges.add((c, g))
                queue.append(d)

    schreier = {}
    for c in cosets:
        for g in gens:
            if (c, g) in tree_edges:
                continue
            d = table[c][g]
            schreier[_symbol(c, g)] = transversal[c] * GroupWord.gen(g) * transversal[d].inverse()

    def rewrite(word: GroupWord, start: int) -> GroupWord:
        c = start
        syl = []
        for g, e in word.letters():
            if e > 0:
                if (c, g) not in tree_edges:
                    syl.append((_symbol(c, g), 1))
                c = table[c][g]
            else:
                prev = (c - CHARACTER[g]) % MODULUS
                if (prev, g) not in tree_edges:
                    syl.append((_symbol(prev, g), -1))
                c = prev
        if c != start:
            raise ArithmeticError("relator does not close up in the coset graph")
        return GroupWord(syl)

    relators = [rewrite(r, c) for r in ORBIFOLD_3333.relators for c in cosets]

    symbols = list(schreier)
    matrix = []
    for r in relators:
        row = [0] * len(symbols)
        for s, e in r.syllables:
            row[symbols.index(s)] += e
        matrix.append(row)
    abel = abelian_invariants(matrix, len(symbols))

    perms = {}
    ok = True
    for g in gens:
        for k in (1, 2):
            perm = [(c + k * CHARACTER[g]) % MODULUS for c in cosets]
            moves_all = all(perm[c] != c for c in cosets)
            perms[f"{g}^{k}"] = {"permutation": perm, "fixed_point_free": moves_all}
            ok = ok and moves_all
    orbifold_chi = 2 - len(gens) * (1 - Fraction(1, 3))
    return SubgroupData(
        index=len(cosets),
        coset_table=table,
        transversal=transversal,
        schreier_generators=schreier,
        relators=relators,
        abelianization=abel,
        torsion_free={"passed": ok, "elliptic_powers": perms},
        euler_characteristic=len(cosets) * orbifold_chi,
    )


def restrict(rep: Representation, cover: SubgroupData) -> Representation:
    """Representation of the surface subgroup on its Schreier generators."""
    images = {s: rep.evaluate(w) for s, w in cover.schreier_generators.items()}
    return Representation(cover.presentation, images)


def check_subgroup_relators(rep: Representation, cover: SubgroupData):
    return check_relations(restrict(rep, cover))
