"""The tensor of finitely presented spaces, in segment normal form.

An element of an n-fold tensor at ambient length ``L`` is an equivalence
class of representatives (one overall map ``L -> sum of part lengths``
plus one element per factor) under the identification that slides maps
between the overall map and the parts.  The normal form splits ``[0, L]``
into the intervals cut out by the overall map: each free factor keeps its
interval and an exact map on it, while constant factors keep only their
labels, sharing the gap between the neighbouring free boundaries.  Free
boundaries are invariants of the identification, which is what makes the
normal form a decidable equality certificate; runs of constant factors
collapse to bare labels, so constant-only tensors have one class per
label tuple at every length.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import (
    ActionError,
    CollapseError,
    RepresentativeError,
    ValidationError,
)
from .gmaps import (
    PLMap,
    compose,
    decompose_all,
    decompose_map,
    identity,
    inverse,
    shift_left,
    shift_right,
    slice_map,
    tensor_all,
    tensor_map,
)
from .pspaces import (
    CONST,
    FREE,
    Cell,
    Colimit,
    ColimitPoint,
    Element,
    PSpace,
    colimit,
    const_cell,
    free_cell,
    generator,
    restrict,
)

Grouping = Union[int, tuple]


def left_comb(n: int) -> Grouping:
    """The fully left-nested grouping of ``n`` factors."""
    if n < 2:
        raise ValidationError("a tensor needs at least two factors")
    tree: Grouping = (0, 1)
    for i in range(2, n):
        tree = (tree, i)
    return tree


def _leaves(tree: Grouping) -> list[int]:
    if isinstance(tree, int):
        return [tree]
    if isinstance(tree, tuple) and len(tree) == 2:
        return _leaves(tree[0]) + _leaves(tree[1])
    raise ValidationError(f"grouping nodes must be leaves or pairs, got {tree!r}")


@dataclass(frozen=True)
class FreeSlot:
    """A free factor's interval of the ambient length with its exact map."""

    cell: str
    start: Fraction
    end: Fraction
    map: PLMap
    label: object


@dataclass(frozen=True)
class ConstSlot:
    """A constant factor: a label only, positioned by the surrounding gaps."""

    cell: str
    label: object


Slot = Union[FreeSlot, ConstSlot]


@dataclass(frozen=True)
class TensorClass:
    """Segment normal form of a class in an n-fold tensor."""

    factors: tuple[PSpace, ...]
    length: Fraction
    slots: tuple[Slot, ...]
    grouping: Grouping = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        n = len(self.factors)
        if n < 2:
            raise ValidationError("a tensor class needs at least two factors")
        if len(self.slots) != n:
            raise ValidationError("one slot per factor is required")
        if self.length <= 0:
            raise ValidationError("ambient length must be positive")
        grouping = self.grouping if self.grouping is not None else left_comb(n)
        object.__setattr__(self, "grouping", grouping)
        if _leaves(grouping) != list(range(n)):
            raise ValidationError(
                f"grouping must arrange factors 0..{n - 1} in order, got {grouping!r}"
            )
        cursor = Fraction(0)  # end of the last free interval seen
        pending_const = False
        saw_free = False
        for factor, slot in zip(self.factors, self.slots):
            cell = factor.cell(slot.cell)
            if isinstance(slot, FreeSlot):
                if cell.kind != FREE:
                    raise ValidationError(f"cell {cell.id!r} is not free")
                if slot.label not in cell.labels:
                    raise ValidationError(f"label {slot.label!r} missing in {cell.id!r}")
                if not (0 <= slot.start < slot.end <= self.length):
                    raise ValidationError("free interval must sit inside [0, length]")
                if pending_const:
                    if slot.start <= cursor:
                        raise ValidationError(
                            "a constant run needs a strictly positive gap"
                        )
                elif slot.start != cursor:
                    raise ValidationError(
                        "adjacent free intervals must share their boundary"
                    )
                if slot.map.dom != slot.end - slot.start or slot.map.cod != cell.arity:
                    raise ValidationError(
                        f"slot map must run {slot.end - slot.start} -> {cell.arity}"
                    )
                cursor = slot.end
                pending_const = False
                saw_free = True
            else:
                if cell.kind != CONST:
                    raise ValidationError(f"cell {cell.id!r} is not const")
                if slot.label not in cell.labels:
                    raise ValidationError(f"label {slot.label!r} missing in {cell.id!r}")
                pending_const = True
        if saw_free:
            if pending_const:
                if cursor >= self.length:
                    raise ValidationError(
                        "a trailing constant run needs a strictly positive gap"
                    )
            elif cursor != self.length:
                raise ValidationError("free intervals must end at the ambient length")


@dataclass(frozen=True)
class RawTriple:
    """A representative of a tensor class before canonicalization."""

    psi: PLMap
    parts: tuple[Element, ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ValidationError("a representative needs at least two parts")
        total = sum((p.length for p in self.parts), Fraction(0))
        if self.psi.cod != total:
            raise RepresentativeError(
                f"overall map ends at {self.psi.cod}, parts sum to {total}"
            )

    @property
    def factors(self) -> tuple[PSpace, ...]:
        return tuple(p.space for p in self.parts)

    @property
    def length(self) -> Fraction:
        return self.psi.dom


def raw(psi: PLMap, parts: Sequence[Element]) -> RawTriple:
    return RawTriple(psi, tuple(parts))


def canonicalize(r: RawTriple, grouping: Optional[Grouping] = None) -> TensorClass:
    """Reduce a representative to its segment normal form.

    The overall map is split at the running sums of the part lengths;
    each free part absorbs its piece, each constant part forgets it.
    """
    pieces = decompose_all(r.psi, [p.length for p in r.parts])
    slots: list[Slot] = []
    position = Fraction(0)
    for part, piece in zip(r.parts, pieces):
        if part.map is None:
            slots.append(ConstSlot(part.cell, part.label))
        else:
            start = position
            end = position + piece.dom
            slots.append(FreeSlot(part.cell, start, end, compose(piece, part.map), part.label))
        position += piece.dom
    return TensorClass(r.factors, r.length, tuple(slots), grouping)


def _const_runs(c: TensorClass) -> list[tuple[int, int, Fraction, Fraction]]:
    """Maximal constant runs as (first index, last index, gap start, gap end)."""
    runs = []
    i = 0
    prev_end = Fraction(0)
    slots = c.slots
    while i < len(slots):
        slot = slots[i]
        if isinstance(slot, FreeSlot):
            prev_end = slot.end
            i += 1
            continue
        j = i
        while j + 1 < len(slots) and isinstance(slots[j + 1], ConstSlot):
            j += 1
        nxt = next(
            (s.start for s in slots[j + 1 :] if isinstance(s, FreeSlot)), c.length
        )
        runs.append((i, j, prev_end, nxt))
        i = j + 1
    return runs


def raw_representative(c: TensorClass) -> RawTriple:
    """An explicit representative of a normal form.

    Constant factors need a concrete length; each run splits its gap
    evenly.  Canonicalizing the result returns ``c`` unchanged.
    """
    lengths: dict[int, Fraction] = {}
    for first, last, lo, hi in _const_runs(c):
        share = (hi - lo) / (last - first + 1)
        for k in range(first, last + 1):
            lengths[k] = share
    parts = []
    for i, (factor, slot) in enumerate(zip(c.factors, c.slots)):
        if isinstance(slot, FreeSlot):
            parts.append(
                Element(factor, slot.cell, slot.end - slot.start, slot.map, slot.label)
            )
        else:
            parts.append(Element(factor, slot.cell, lengths[i], None, slot.label))
    return RawTriple(identity(c.length), tuple(parts))


def restrict_class(c: TensorClass, w: PLMap) -> TensorClass:
    """Pull a class back along a map into its ambient length.

    Free boundaries move to their preimages and the pieces of ``w``
    between them are absorbed into the slot maps.
    """
    if w.cod != c.length:
        raise ActionError(
            f"restriction map ends at {w.cod}, class has ambient length {c.length}"
        )
    w_inv = inverse(w)
    slots: list[Slot] = []
    for slot in c.slots:
        if isinstance(slot, FreeSlot):
            start, end = w_inv(slot.start), w_inv(slot.end)
            piece = slice_map(w, start, end)
            slots.append(
                FreeSlot(slot.cell, start, end, compose(piece, slot.map), slot.label)
            )
        else:
            slots.append(slot)
    return TensorClass(c.factors, w.dom, tuple(slots), c.grouping)


def rewrite_raw(r: RawTriple, maps: Sequence[PLMap]) -> RawTriple:
    """Apply one generating identification, producing an equivalent representative.

    Each map must end at the matching part's length; the parts are pulled
    back along the maps and the overall map absorbs their inverses.
    """
    if len(maps) != len(r.parts):
        raise RepresentativeError("one rewrite map per part is required")
    for part, m in zip(r.parts, maps):
        if m.cod != part.length:
            raise RepresentativeError(
                f"rewrite map ends at {m.cod}, part has length {part.length}"
            )
    new_psi = compose(r.psi, inverse(tensor_all(list(maps))))
    new_parts = tuple(restrict(p, m) for p, m in zip(r.parts, maps))
    return RawTriple(new_psi, new_parts)


def associate(c: TensorClass, path: tuple[int, ...] = ()) -> TensorClass:
    """Regroup ``(A + B) + C`` to ``A + (B + C)`` at a grouping node.

    Flat normal forms do not change; only the grouping metadata moves.
    """
    return replace(c, grouping=_rewrite(c.grouping, path, _assoc_forward))


def associate_inv(c: TensorClass, path: tuple[int, ...] = ()) -> TensorClass:
    """Regroup ``A + (B + C)`` back to ``(A + B) + C`` at a grouping node."""
    return replace(c, grouping=_rewrite(c.grouping, path, _assoc_backward))


def _assoc_forward(node: Grouping) -> Grouping:
    if not (isinstance(node, tuple) and isinstance(node[0], tuple)):
        raise ValidationError(f"node {node!r} is not of the shape (A, B), C")
    (a, b), c = node
    return (a, (b, c))


def _assoc_backward(node: Grouping) -> Grouping:
    if not (isinstance(node, tuple) and isinstance(node[1], tuple)):
        raise ValidationError(f"node {node!r} is not of the shape A, (B, C)")
    a, (b, c) = node
    return ((a, b), c)


def _rewrite(tree: Grouping, path: tuple[int, ...], step) -> Grouping:
    if not path:
        return step(tree)
    if not isinstance(tree, tuple):
        raise ValidationError(f"grouping path {path!r} leads past a leaf")
    head, rest = path[0], path[1:]
    if head not in (0, 1):
        raise ValidationError("grouping paths are sequences of 0 and 1")
    children = list(tree)
    children[head] = _rewrite(children[head], rest, step)
    return tuple(children)


def collapse_right(psi: PLMap, phi: PLMap) -> PLMap:
    """Absorb a map acting on the left-hand summand of the codomain.

    ``psi`` must end at ``phi.dom + extra`` for some positive ``extra``;
    the result ends at ``phi.cod + extra``.  The output only depends on
    the identification class of the pair.
    """
    extra = psi.cod - phi.dom
    if extra <= 0:
        raise CollapseError(
            f"overall map ends at {psi.cod}, leaving no room after {phi.dom}"
        )
    return compose(psi, shift_right(extra, phi))


def collapse_left(psi: PLMap, phi: PLMap) -> PLMap:
    """Absorb a map acting on the right-hand summand of the codomain."""
    extra = psi.cod - phi.dom
    if extra <= 0:
        raise CollapseError(
            f"overall map ends at {psi.cod}, leaving no room before {phi.dom}"
        )
    return compose(psi, shift_left(extra, phi))


@dataclass(frozen=True)
class TensorSpace:
    """Cellwise closed forms of a binary tensor of spaces.

    Free x free and const x const pairs have closed-form cells; mixed
    pairs stay in normal-form representation and are flagged with a
    ``None`` cell.
    """

    left: PSpace
    right: PSpace
    pairs: tuple[tuple[str, str, Optional[Cell]], ...]

    def cell_for(self, left_id: str, right_id: str) -> Optional[Cell]:
        for lid, rid, cell in self.pairs:
            if (lid, rid) == (left_id, right_id):
                return cell
        raise ValidationError(f"no cell pair ({left_id!r}, {right_id!r})")

    @property
    def mixed_pairs(self) -> tuple[tuple[str, str], ...]:
        return tuple((l, r) for l, r, cell in self.pairs if cell is None)

    @property
    def space(self) -> PSpace:
        cells = tuple(cell for _, _, cell in self.pairs if cell is not None)
        if not cells:
            raise ValidationError("every cell pair is mixed; no closed form exists")
        return PSpace(cells)

    def to_element(self, c: TensorClass) -> Element:
        """The closed-form element of a binary class; exact inverse of to_class."""
        if c.factors != (self.left, self.right):
            raise ValidationError("class does not live over this tensor")
        s1, s2 = c.slots
        cell = self.cell_for(s1.cell, s2.cell)
        if cell is None:
            raise ValidationError(
                f"pair ({s1.cell!r}, {s2.cell!r}) is mixed and has no closed form"
            )
        label = (s1.label, s2.label)
        if isinstance(s1, FreeSlot) and isinstance(s2, FreeSlot):
            return Element(self.space, cell.id, c.length, tensor_map(s1.map, s2.map), label)
        return Element(self.space, cell.id, c.length, None, label)

    def to_class(self, e: Element) -> TensorClass:
        if e.space != self.space:
            raise ValidationError("element does not belong to the closed form")
        lid, rid = next(
            (l, r) for l, r, cell in self.pairs if cell is not None and cell.id == e.cell
        )
        lcell, rcell = self.left.cell(lid), self.right.cell(rid)
        u, v = e.label
        if lcell.kind == FREE:
            m1, m2 = decompose_map(e.map, lcell.arity, rcell.arity)
            cut = m1.dom
            slots: tuple[Slot, ...] = (
                FreeSlot(lid, Fraction(0), cut, m1, u),
                FreeSlot(rid, cut, e.length, m2, v),
            )
        else:
            slots = (ConstSlot(lid, u), ConstSlot(rid, v))
        return TensorClass((self.left, self.right), e.length, slots)


def tensor_space(left: PSpace, right: PSpace) -> TensorSpace:
    """Closed forms: arities add over free pairs, labels multiply, const pairs
    stay const; mixed pairs are normal-form only."""
    pairs: list[tuple[str, str, Optional[Cell]]] = []
    for lc in left.cells:
        for rc in right.cells:
            pid = f"{lc.id}*{rc.id}"
            labels = frozenset((u, v) for u in lc.labels for v in rc.labels)
            if lc.kind == FREE and rc.kind == FREE:
                cell: Optional[Cell] = free_cell(pid, lc.arity + rc.arity, labels)
            elif lc.kind == CONST and rc.kind == CONST:
                cell = const_cell(pid, labels)
            else:
                cell = None
            pairs.append((lc.id, rc.id, cell))
    return TensorSpace(left, right, tuple(pairs))


def classify_class(c: TensorClass) -> tuple[ColimitPoint, ...]:
    """Component of each factor's part; invariant under restriction."""
    return tuple((slot.cell, slot.label) for slot in c.slots)


@dataclass(frozen=True)
class TensorColimitWitness:
    """The bijection between tensor components and the product of components."""

    left: Colimit
    right: Colimit
    points: frozenset[tuple[ColimitPoint, ColimitPoint]]

    def classify(self, c: TensorClass) -> tuple[ColimitPoint, ColimitPoint]:
        first, second = classify_class(c)
        return (first, second)

    def realize(self, point: tuple[ColimitPoint, ColimitPoint]) -> TensorClass:
        """A class mapping to the given product point; certifies surjectivity."""
        parts = []
        for space, (cell_id, label) in (
            (self.left.space, point[0]),
            (self.right.space, point[1]),
        ):
            cell = space.cell(cell_id)
            if cell.kind == FREE:
                parts.append(generator(space, cell_id, label))
            else:
                parts.append(Element(space, cell_id, Fraction(1), None, label))
        total = sum((p.length for p in parts), Fraction(0))
        return canonicalize(RawTriple(identity(total), tuple(parts)))


def colimit_tensor_check(left: PSpace, right: PSpace) -> TensorColimitWitness:
    cl, cr = colimit(left), colimit(right)
    points = frozenset((p, q) for p in cl.points for q in cr.points)
    return TensorColimitWitness(cl, cr, points)
