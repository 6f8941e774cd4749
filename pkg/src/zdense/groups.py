"""Words, presentations and matrix representations of the triangle group
Delta(3,4,4) and the orbifold group of O_{3,3,3,3}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import UnknownGenerator
from .exact import QSqrt2, join_fields
from .linalg import Matrix
from .sympower import omega_n

_TOKEN = re.compile(r"^\s*([A-Za-z][A-Za-z0-9_]*)\s*(?:\^\s*(-?\d+))?\s*$")


class GroupWord:
    """Freely reduced word: a tuple of (generator, nonzero exponent) syllables."""

    __slots__ = ("syllables",)

    def __init__(self, syllables=()):
        out: list[list] = []
        for name, e in syllables:
            e = int(e)
            if e == 0:
                continue
            if out and out[-1][0] == name:
                out[-1][1] += e
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([name, e])
        object.__setattr__(self, "syllables", tuple((n, e) for n, e in out))

    def __setattr__(self, name, value):
        raise AttributeError("GroupWord is immutable")

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        text = text.strip()
        if text in ("", "1", "e"):
            return cls()
        syl = []
        for tok in text.split("*"):
            m = _TOKEN.match(tok)
            if not m:
                raise ValueError(f"bad word token {tok!r} in {text!r}")
            syl.append((m.group(1), int(m.group(2) or 1)))
        return cls(syl)

    @classmethod
    def gen(cls, name: str, e: int = 1) -> "GroupWord":
        return cls([(name, e)])

    def __str__(self):
        if not self.syllables:
            return "1"
        return "*".join(n if e == 1 else f"{n}^{e}" for n, e in self.syllables)

    def __repr__(self):
        return f"GroupWord({str(self)!r})"

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self.syllables == other.syllables

    def __hash__(self):
        return hash(self.syllables)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.syllables + other.syllables)

    def inverse(self) -> "GroupWord":
        return GroupWord((n, -e) for n, e in reversed(self.syllables))

    def __pow__(self, k: int) -> "GroupWord":
        base = self if k >= 0 else self.inverse()
        return GroupWord(base.syllables * abs(k))

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def letters(self):
        """Yield (generator, +1 | -1) one letter at a time."""
        for n, e in self.syllables:
            s = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield n, s

    def generators(self) -> set:
        return {n for n, _ in self.syllables}


def W(text: str) -> GroupWord:
    return GroupWord.parse(text)


@dataclass(frozen=True)
class Presentation:
    name: str
    generators: tuple
    relators: tuple

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "generators": list(self.generators),
            "relators": [str(r) for r in self.relators],
        }


TRIANGLE_344 = Presentation("Delta(3,4,4)", ("x", "y"), (W("x^3"), W("y^4"), W("x*y") ** 4))
ORBIFOLD_3333 = Presentation(
    "pi1(O_3333)",
    ("g1", "g2", "g3", "g4"),
    (W("g1^3"), W("g2^3"), W("g3^3"), W("g4^3"), W("g1*g2*g3*g4")),
)

# boundary class of the left half <g1, g2>; the right half is <g3, g4>
GAMMA = W("g1*g2")
LEFT = ("g1", "g2")
RIGHT = ("g3", "g4")

# theta_i = y^(i-1) x y^-(i-1)
THETA_WORDS = {f"g{i}": W(f"y^{i - 1}*x*y^{1 - i}") for i in range(1, 5)}


class Representation:
    """Assignment generator -> invertible square matrix, for one presentation."""

    def __init__(self, presentation: Presentation, images: dict):
        missing = set(presentation.generators) - set(images)
        if missing:
            raise UnknownGenerator(f"no image for generators {sorted(missing)}")
        self.presentation = presentation
        self.images = {g: images[g] for g in presentation.generators}
        sizes = {m.shape for m in self.images.values()}
        if len(sizes) != 1 or not next(iter(sizes))[0] == next(iter(sizes))[1]:
            raise ValueError("generator images must be square of one size")
        self._inverses: dict = {}

    @property
    def n(self) -> int:
        return next(iter(self.images.values())).n

    @property
    def field(self) -> str:
        return join_fields(*(m.field for m in self.images.values()))

    def __getitem__(self, g: str) -> Matrix:
        return self.images[g]

    def inverse_image(self, g: str) -> Matrix:
        if g not in self._inverses:
            self._inverses[g] = self.images[g].inv()
        return self._inverses[g]

    def evaluate(self, word) -> Matrix:
        if isinstance(word, str):
            word = W(word)
        result = Matrix.identity(self.n)
        for name, e in word.syllables:
            if name not in self.images:
                raise UnknownGenerator(name)
            base = self.images[name] if e > 0 else self.inverse_image(name)
            for _ in range(abs(e)):
                result = result @ base
        return result

    def matrices(self, names=None) -> list:
        return [self.images[g] for g in (names or self.presentation.generators)]

    def map(self, f) -> "Representation":
        return Representation(self.presentation, {g: f(m) for g, m in self.images.items()})

    def conjugate(self, q: Matrix) -> "Representation":
        """g -> q^-1 rho(g) q."""
        qi = q.inv()
        return self.map(lambda m: qi @ m @ q)

    def is_rational(self) -> bool:
        return all(m.is_rational() for m in self.images.values())

    def is_integral(self) -> bool:
        return all(m.is_integral() for m in self.images.values())

    def max_denominator(self) -> int:
        return max(m.max_denominator() for m in self.images.values())

    def to_json(self) -> dict:
        field = self.field
        return {
            "presentation": self.presentation.to_json(),
            "field": field,
            "n": self.n,
            "images": {g: m.to_json(field) for g, m in self.images.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Representation":
        pres_name = obj["presentation"]["name"] if isinstance(obj["presentation"], dict) else obj["presentation"]
        pres = {p.name: p for p in (TRIANGLE_344, ORBIFOLD_3333)}.get(pres_name)
        if pres is None:
            raise ValueError(f"unknown presentation {pres_name!r}")
        return cls(pres, {g: Matrix.from_json(m) for g, m in obj["images"].items()})


def evaluate(rep: Representation, word) -> Matrix:
    return rep.evaluate(word)


@dataclass
class RelationReport:
    results: list

    @property
    def passed(self) -> bool:
        return all(r["holds"] for r in self.results)

    @property
    def violated(self) -> list:
        return [r["relator"] for r in self.results if not r["holds"]]

    def to_json(self) -> dict:
        return {"passed": self.passed, "relators": self.results}


def check_relations(rep: Representation, projective: bool = False, relators=None) -> RelationReport:
    """Evaluate every relator; with ``projective`` a relator equal to -I also
    holds (PSL relation) and the center is recorded."""
    out = []
    ident = Matrix.identity(rep.n)
    for r in relators if relators is not None else rep.presentation.relators:
        m = rep.evaluate(r)
        if m == ident:
            out.append({"relator": str(r), "holds": True, "center": "I"})
        elif projective and m == -ident:
            out.append({"relator": str(r), "holds": True, "center": "-I"})
        else:
            out.append({"relator": str(r), "holds": False, "center": None})
    return RelationReport(out)


def triangle_generators() -> tuple[Matrix, Matrix]:
    """The rotations x (order 3) and y (order 4) generating Delta(3,4,4) in SL(2, Q(sqrt2))."""
    s = QSqrt2(0, 1)
    x = Matrix([[0, -1], [1, 1]])
    y = Matrix([[0, -1 - s], [-1 + s, s]])
    return x, y


def triangle_rep() -> Representation:
    x, y = triangle_generators()
    return Representation(TRIANGLE_344, {"x": x, "y": y})


def orbifold_from_triangle(tri: Representation) -> Representation:
    """Restrict a Delta(3,4,4) representation to the index-4 subgroup <theta_1..theta_4>."""
    return Representation(ORBIFOLD_3333, {g: tri.evaluate(w) for g, w in THETA_WORDS.items()})


def theta_generators() -> tuple[Matrix, Matrix, Matrix, Matrix]:
    rep = orbifold_from_triangle(triangle_rep())
    return tuple(rep[g] for g in ORBIFOLD_3333.generators)


def sigma() -> Representation:
    """The Fuchsian representation g_i -> theta_i (2x2, defined up to sign)."""
    return orbifold_from_triangle(triangle_rep())


def omega_rep(rep: Representation, n: int) -> Representation:
    return rep.map(lambda m: omega_n(m, n))

