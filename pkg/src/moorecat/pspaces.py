"""Finitely presented spaces with a contravariant reparametrization action.

A space is a finite coproduct of cells.  A free cell of arity ``a`` over a
label set ``U`` has, at each length ``L``, the pairs (map ``L -> a``,
label); a constant cell has just its labels at every length.  Restriction
along a map precomposes free data and only retags the length of constant
data.  Morphisms are presented on generators, which determines them on
every element.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Optional, Union

from .errors import ActionError, MorphismError, ValidationError
from .gmaps import PLMap, RationalLike, as_length, compose, identity

FREE = "free"
CONST = "const"

Label = Union[str, tuple]
GeneratorKey = tuple[str, Label]


@dataclass(frozen=True)
class Cell:
    """One coproduct summand: ``free`` with an arity, or ``const``."""

    id: str
    kind: str
    labels: frozenset
    arity: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.kind not in (FREE, CONST):
            raise ValidationError(f"cell kind must be free or const, got {self.kind!r}")
        if not self.labels:
            raise ValidationError("cell label set must be nonempty")
        if self.kind == FREE:
            if self.arity is None or self.arity <= 0:
                raise ValidationError("free cell arity must be positive")
        elif self.arity is not None:
            raise ValidationError("const cell carries no arity")


def free_cell(cell_id: str, arity: RationalLike, labels) -> Cell:
    return Cell(cell_id, FREE, frozenset(labels), as_length(arity))


def const_cell(cell_id: str, labels) -> Cell:
    return Cell(cell_id, CONST, frozenset(labels))


@dataclass(frozen=True)
class PSpace:
    """An ordered finite coproduct of cells with unique identifiers."""

    cells: tuple[Cell, ...]

    def __post_init__(self) -> None:
        if not self.cells:
            raise ValidationError("a space needs at least one cell")
        ids = [c.id for c in self.cells]
        if len(set(ids)) != len(ids):
            raise ValidationError(f"cell identifiers must be unique, got {ids}")

    def cell(self, cell_id: str) -> Cell:
        for c in self.cells:
            if c.id == cell_id:
                return c
        raise ValidationError(f"no cell named {cell_id!r}")

    def is_all(self, kind: str) -> bool:
        return all(c.kind == kind for c in self.cells)


def pspace(*cells: Cell) -> PSpace:
    return PSpace(tuple(cells))


@dataclass(frozen=True)
class Element:
    """A point of a space at some length, tagged with its cell."""

    space: PSpace
    cell: str
    length: Fraction
    map: Optional[PLMap] = None
    label: Label = ""

    def __post_init__(self) -> None:
        c = self.space.cell(self.cell)
        if self.length <= 0:
            raise ValidationError("element length must be positive")
        if self.label not in c.labels:
            raise ValidationError(f"label {self.label!r} is not in cell {c.id!r}")
        if c.kind == FREE:
            if self.map is None:
                raise ValidationError("free element needs a map")
            if self.map.dom != self.length or self.map.cod != c.arity:
                raise ValidationError(
                    f"free element map must run {self.length} -> {c.arity}, "
                    f"got {self.map.dom} -> {self.map.cod}"
                )
        elif self.map is not None:
            raise ValidationError("const element carries no map")


def generator(space: PSpace, cell_id: str, label: Label) -> Element:
    """The tautological element of a free cell: the identity map at its arity."""
    c = space.cell(cell_id)
    if c.kind != FREE:
        raise ValidationError("generators in this sense exist only for free cells")
    return Element(space, cell_id, c.arity, identity(c.arity), label)


def const_point(
    space: PSpace, cell_id: str, label: Label, length: RationalLike
) -> Element:
    c = space.cell(cell_id)
    if c.kind != CONST:
        raise ValidationError(f"cell {cell_id!r} is not const")
    return Element(space, cell_id, as_length(length), None, label)


def restrict(x: Element, w: PLMap) -> Element:
    """The contravariant action: pull ``x`` back along ``w``."""
    if w.cod != x.length:
        raise ActionError(
            f"restriction map ends at {w.cod}, element has length {x.length}"
        )
    if x.map is None:
        return replace(x, length=w.dom)
    return replace(x, length=w.dom, map=compose(w, x.map))


@dataclass
class GenMorphism:
    """A morphism of spaces presented by its values on generators.

    Free cells list an image element at the cell's arity per label;
    const cells list a (const target cell, label) pair per label.  A
    natural family out of a const cell into a free cell cannot exist, so
    the representation rejects it outright.
    """

    source: PSpace
    target: PSpace
    assignment: Mapping[GeneratorKey, Union[Element, GeneratorKey]]

    def __post_init__(self) -> None:
        self.assignment = dict(self.assignment)
        for c in self.source.cells:
            for label in c.labels:
                if (c.id, label) not in self.assignment:
                    raise MorphismError(f"no image for generator ({c.id!r}, {label!r})")
                value = self.assignment[(c.id, label)]
                if c.kind == FREE:
                    if not isinstance(value, Element):
                        raise MorphismError(
                            f"free generator ({c.id!r}, {label!r}) must map to an element"
                        )
                    if value.space != self.target:
                        raise MorphismError("image element lives in the wrong space")
                    if value.length != c.arity:
                        raise MorphismError(
                            f"image of a free generator must sit at length {c.arity}"
                        )
                else:
                    if isinstance(value, Element) or len(value) != 2:
                        raise MorphismError(
                            "const generators map to a (const cell, label) pair"
                        )
                    tc = self.target.cell(value[0])
                    if tc.kind != CONST:
                        raise MorphismError(
                            "const cells map only to const cells of the target"
                        )
                    if value[1] not in tc.labels:
                        raise MorphismError(f"label {value[1]!r} missing in {tc.id!r}")
        extra = set(self.assignment) - {
            (c.id, label) for c in self.source.cells for label in c.labels
        }
        if extra:
            raise MorphismError(f"assignment mentions unknown generators {extra}")


def identity_morphism(space: PSpace) -> GenMorphism:
    assignment: dict[GeneratorKey, Union[Element, GeneratorKey]] = {}
    for c in space.cells:
        for label in c.labels:
            if c.kind == FREE:
                assignment[(c.id, label)] = generator(space, c.id, label)
            else:
                assignment[(c.id, label)] = (c.id, label)
    return GenMorphism(space, space, assignment)


def apply(m: GenMorphism, x: Element) -> Element:
    """Evaluate a generator-presented morphism at an element.

    Naturality with respect to restriction holds by construction.
    """
    if x.space != m.source:
        raise MorphismError("element does not belong to the source of the morphism")
    value = m.assignment[(x.cell, x.label)]
    if isinstance(value, Element):
        return restrict(value, x.map)
    cell_id, label = value
    return Element(m.target, cell_id, x.length, None, label)


ColimitPoint = GeneratorKey


@dataclass(frozen=True)
class Colimit:
    """The set of restriction-connected components, tagged by cell."""

    space: PSpace
    points: frozenset[ColimitPoint]

    def classify(self, x: Element) -> ColimitPoint:
        if x.space != self.space:
            raise ValidationError("element does not belong to this space")
        return (x.cell, x.label)


def colimit(space: PSpace) -> Colimit:
    """Each cell's component collapses onto its labels; cells stay disjoint."""
    points = frozenset(
        (c.id, label) for c in space.cells for label in c.labels
    )
    return Colimit(space, points)
