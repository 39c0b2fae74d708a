"""Transposes of morphisms out of a tensor, against both internal homs.

The hom-objects themselves have infinite levels and are never
materialized; what is implemented is the bijection on generator data.  A
morphism out of a closed-form tensor assigns an element of the target to
every product generator ``(u, v)``.  The left transpose regroups that
table by the left factor's generators, yielding for each one a morphism
from the right factor into the target read at lengths shifted up by the
generator's arity; the right transpose regroups by the right factor.
Both directions are exact mutual inverses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import TransposeError, ValidationError
from .pspaces import FREE, Element, GeneratorKey, GenMorphism, PSpace
from .tensorcalc import TensorSpace, tensor_space

LEFT = "left"
RIGHT = "right"


@dataclass
class ShiftedMorphism:
    """A generator-presented morphism into a target read at shifted lengths.

    ``side`` records whether the shift tensors on the left or the right
    of the target's argument; the numeric length of an image is the
    source cell's arity plus ``shift`` either way.
    """

    source: PSpace
    target: PSpace
    shift: Fraction
    side: str
    assignment: Mapping[GeneratorKey, Element]

    def __post_init__(self) -> None:
        if self.side not in (LEFT, RIGHT):
            raise ValidationError("shift side must be left or right")
        if self.shift <= 0:
            raise ValidationError("shift must be a positive length")
        self.assignment = dict(self.assignment)
        expected = set()
        for c in self.source.cells:
            if c.kind != FREE:
                raise TransposeError(
                    f"cell {c.id!r} is const; shifted morphisms are presented on "
                    "free generators only"
                )
            for label in c.labels:
                expected.add((c.id, label))
                image = self.assignment.get((c.id, label))
                if image is None:
                    raise TransposeError(f"no image for generator ({c.id!r}, {label!r})")
                if image.space != self.target:
                    raise TransposeError("image element lives in the wrong space")
                if image.length != c.arity + self.shift:
                    raise TransposeError(
                        f"image must sit at shifted length {c.arity + self.shift}"
                    )
        if set(self.assignment) != expected:
            raise TransposeError("assignment mentions unknown generators")


@dataclass
class Transpose:
    """One side's curried form of a morphism out of a binary tensor."""

    side: str
    outer: PSpace
    inner: PSpace
    target: PSpace
    parts: Mapping[GeneratorKey, ShiftedMorphism]

    def __post_init__(self) -> None:
        if self.side not in (LEFT, RIGHT):
            raise ValidationError("transpose side must be left or right")
        self.parts = dict(self.parts)
        expected = set()
        for c in self.outer.cells:
            if c.kind != FREE:
                raise TransposeError(
                    f"cell {c.id!r} is const; no finite transpose is available"
                )
            for label in c.labels:
                expected.add((c.id, label))
                part = self.parts.get((c.id, label))
                if part is None:
                    raise TransposeError(f"no part for generator ({c.id!r}, {label!r})")
                if part.side != self.side or part.shift != c.arity:
                    raise TransposeError("part shift must equal the generator arity")
                if part.source != self.inner or part.target != self.target:
                    raise TransposeError("part endpoints do not match the transpose")
        if set(self.parts) != expected:
            raise TransposeError("parts mention unknown generators")


def _closed_tensor(left: PSpace, right: PSpace, m: GenMorphism) -> TensorSpace:
    t = tensor_space(left, right)
    if t.mixed_pairs:
        raise TransposeError(
            f"tensor has mixed cell pairs {t.mixed_pairs}; no generator "
            "presentation exists to transpose"
        )
    if m.source != t.space:
        raise TransposeError("morphism source is not the closed form of the tensor")
    return t


def curry_left(left: PSpace, right: PSpace, m: GenMorphism) -> Transpose:
    """Regroup a tensor morphism by the left factor's generators."""
    _closed_tensor(left, right, m)
    if not left.is_all(FREE):
        raise TransposeError("left factor has const generators; unsupported transpose")
    parts = {}
    for lc in left.cells:
        for u in lc.labels:
            assignment = {
                (rc.id, v): m.assignment[(f"{lc.id}*{rc.id}", (u, v))]
                for rc in right.cells
                for v in rc.labels
            }
            parts[(lc.id, u)] = ShiftedMorphism(right, m.target, lc.arity, LEFT, assignment)
    return Transpose(LEFT, left, right, m.target, parts)


def uncurry_left(left: PSpace, right: PSpace, t: Transpose) -> GenMorphism:
    """Inverse of :func:`curry_left`."""
    if t.side != LEFT or t.outer != left or t.inner != right:
        raise TransposeError("transpose does not match the given factors")
    ts = tensor_space(left, right)
    if ts.mixed_pairs:
        raise TransposeError("tensor has mixed cell pairs; nothing to uncurry onto")
    assignment = {}
    for lc in left.cells:
        for u in lc.labels:
            part = t.parts[(lc.id, u)]
            for rc in right.cells:
                for v in rc.labels:
                    assignment[(f"{lc.id}*{rc.id}", (u, v))] = part.assignment[(rc.id, v)]
    return GenMorphism(ts.space, t.target, assignment)


def curry_right(left: PSpace, right: PSpace, m: GenMorphism) -> Transpose:
    """Regroup a tensor morphism by the right factor's generators."""
    _closed_tensor(left, right, m)
    if not right.is_all(FREE):
        raise TransposeError("right factor has const generators; unsupported transpose")
    parts = {}
    for rc in right.cells:
        for v in rc.labels:
            assignment = {
                (lc.id, u): m.assignment[(f"{lc.id}*{rc.id}", (u, v))]
                for lc in left.cells
                for u in lc.labels
            }
            parts[(rc.id, v)] = ShiftedMorphism(left, m.target, rc.arity, RIGHT, assignment)
    return Transpose(RIGHT, right, left, m.target, parts)


def uncurry_right(left: PSpace, right: PSpace, t: Transpose) -> GenMorphism:
    """Inverse of :func:`curry_right`."""
    if t.side != RIGHT or t.outer != right or t.inner != left:
        raise TransposeError("transpose does not match the given factors")
    ts = tensor_space(left, right)
    if ts.mixed_pairs:
        raise TransposeError("tensor has mixed cell pairs; nothing to uncurry onto")
    assignment = {}
    for rc in right.cells:
        for v in rc.labels:
            part = t.parts[(rc.id, v)]
            for lc in left.cells:
                for u in lc.labels:
                    assignment[(f"{lc.id}*{rc.id}", (u, v))] = part.assignment[(lc.id, u)]
    return GenMorphism(ts.space, t.target, assignment)
