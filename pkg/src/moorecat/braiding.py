"""The objectwise braiding: swap the two halves of maps and tensor classes.

A map out of a fixed length into a split codomain decomposes uniquely
along the split; the braid re-tensors the two pieces in the opposite
order.  On tensor classes this swaps the two parts of the normal form.
The swap is involutive and independent of the chosen representative, but
it is not natural in the ambient length: restriction and braiding do not
commute, and this module also constructs the explicit counterexample.
The naive representative-level swap that forgets to braid the overall
map is not even well defined, which ``naive_swap_check`` exhibits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import BraidError
from .gmaps import (
    PLMap,
    RationalLike,
    as_length,
    compose,
    decompose_map,
    identity,
    inverse,
    mu,
    plmap,
    tensor_map,
)
from .pspaces import FREE, PSpace, generator, const_point
from .tensorcalc import (
    RawTriple,
    TensorClass,
    canonicalize,
    raw_representative,
    restrict_class,
)


def braid2(f: PLMap) -> PLMap:
    """Swap the two unit-length halves of a map out of ``[0, 2]``."""
    if f.dom != 2:
        raise BraidError(f"braid2 needs domain length 2, got {f.dom}")
    halfway = f(1)
    first, second = decompose_map(f, halfway, f.cod - halfway)
    return tensor_map(second, first)


def braid_map(psi: PLMap, first: RationalLike, second: RationalLike) -> PLMap:
    """Swap the halves of ``psi`` along the codomain split ``(first, second)``."""
    c1, c2 = as_length(first), as_length(second)
    if c1 + c2 != psi.cod:
        raise BraidError(
            f"split {c1} + {c2} does not sum to the codomain length {psi.cod}"
        )
    p1, p2 = decompose_map(psi, c1, c2)
    return tensor_map(p2, p1)


def braid_map_mu(psi: PLMap, first: RationalLike, second: RationalLike) -> PLMap:
    """The same braid computed by conjugating with unit rescales.

    Rescale both halves of the domain to length one, swap with
    :func:`braid2`, and rescale back in the opposite order.  Agrees with
    :func:`braid_map` exactly on every input.
    """
    c1, c2 = as_length(first), as_length(second)
    if c1 + c2 != psi.cod:
        raise BraidError(
            f"split {c1} + {c2} does not sum to the codomain length {psi.cod}"
        )
    cut = inverse(psi)(c1)
    rest = psi.dom - cut
    widen = tensor_map(inverse(mu(cut)), inverse(mu(rest)))
    swapped = braid2(compose(widen, psi))
    return compose(tensor_map(mu(rest), mu(cut)), swapped)


def braid_class(c: TensorClass) -> TensorClass:
    """Swap the two parts of a binary tensor class.

    The second part's content is translated to start at 0 and the first
    part follows it; maps are unchanged up to translation.  Constant on
    both sides means there is no boundary to move, just a label swap.
    """
    if len(c.factors) != 2:
        raise BraidError("braid_class acts on binary tensor classes only")
    rep = raw_representative(c)
    return canonicalize(RawTriple(rep.psi, tuple(reversed(rep.parts))))


@dataclass(frozen=True)
class NaturalityWitness:
    """Both sides of the braid/restriction square for one class and map."""

    x: TensorClass
    omega: PLMap
    lhs: TensorClass  # restrict after braiding
    rhs: TensorClass  # braid after restricting
    equal: bool


def _first_free(space: PSpace) -> Optional[str]:
    for cell in space.cells:
        if cell.kind == FREE:
            return cell.id
    return None


def _some_label(space: PSpace, cell_id: str):
    cell = space.cell(cell_id)
    return min(cell.labels, key=repr)


def _part(space: PSpace):
    """A deterministic sample part: a generator if possible, else a const point."""
    cell_id = _first_free(space)
    if cell_id is not None:
        return generator(space, cell_id, _some_label(space, cell_id))
    cell = space.cells[0]
    return const_point(space, cell.id, _some_label(space, cell.id), 1)


def naturality_witness(
    left: PSpace, right: PSpace, omega: Optional[PLMap] = None
) -> NaturalityWitness:
    """Search for a class and a map on which braiding fails to be natural.

    The shipped construction places a single interior corner below the
    class's free boundary, which makes the two sides differ whenever any
    free cell is present.  With constants on both sides every class is
    determined by its labels and the two sides agree, so the witness
    comes back with ``equal=True``.
    """
    parts = (_part(left), _part(right))
    total = parts[0].length + parts[1].length
    x = canonicalize(RawTriple(identity(total), parts))
    if omega is None:
        cut = parts[0].length
        omega = plmap([(0, 0), (cut / 2, cut), (total, total)])
    lhs = restrict_class(braid_class(x), omega)
    rhs = braid_class(restrict_class(x, omega))
    return NaturalityWitness(x, omega, lhs, rhs, lhs == rhs)


@dataclass(frozen=True)
class NaiveSwapResult:
    """Canonical forms of the naive swap over two equivalent representatives."""

    first: TensorClass
    second: TensorClass
    welldefined: bool


def naive_swap(r: RawTriple) -> RawTriple:
    """Swap the parts of a representative without braiding the overall map."""
    if len(r.parts) != 2:
        raise BraidError("the naive swap is defined on binary representatives")
    return RawTriple(r.psi, tuple(reversed(r.parts)))


def naive_swap_check(r: RawTriple, maps: Sequence[PLMap]) -> NaiveSwapResult:
    """Compare the naive swap across one generating identification.

    ``maps`` rewrites ``r`` to an equivalent representative; both are
    naively swapped and canonicalized.  Agreement would be accidental:
    the swap does not descend to classes.
    """
    from .tensorcalc import rewrite_raw

    rewritten = rewrite_raw(r, maps)
    first = canonicalize(naive_swap(r))
    second = canonicalize(naive_swap(rewritten))
    return NaiveSwapResult(first, second, first == second)


def naive_swap_fixture():
    """The shipped disagreement instance: one identity, one nonlinear map.

    Returns the representative and the rewrite maps; the two naive swaps
    canonicalize differently while :func:`braid_class` agrees on both.
    """
    from .pspaces import free_cell, pspace

    left = pspace(free_cell("d", 1, ["u"]))
    right = pspace(free_cell("e", 1, ["v"]))
    rep = RawTriple(
        identity(2), (generator(left, "d", "u"), generator(right, "e", "v"))
    )
    bent = plmap([(0, 0), (Fraction(1, 2), Fraction(1, 4)), (1, 1)])
    return rep, (identity(1), bent)
