"""Exact algebra of monotone piecewise-linear bijections between intervals.

Objects are strictly positive rational lengths; a morphism from length
``a`` to length ``b`` is a nondecreasing piecewise-linear bijection of
``[0, a]`` onto ``[0, b]`` with rational breakpoints.  Every map is stored
in a canonical minimal form (no three consecutive collinear breakpoints),
so structural equality of break lists coincides with pointwise equality
as functions.  All operations are pure and all values immutable.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    CompositionError,
    DomainError,
    SplitError,
    ValidationError,
)

RationalLike = Union[Fraction, int, str]

Point = tuple[Fraction, Fraction]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, string like ``"3/2"``, or Fraction to an exact rational.

    Floats are rejected: the whole calculus is exact and a float argument
    is almost always a bug at the call site.
    """
    if isinstance(value, bool):
        raise ValidationError("rationals cannot be built from booleans")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational literal: {value!r}") from exc
    raise ValidationError(
        f"rational expected, got {type(value).__name__} (floats are not accepted)"
    )


def as_length(value: RationalLike) -> Fraction:
    """Coerce to a rational and require it to be strictly positive."""
    result = as_rational(value)
    if result <= 0:
        raise ValidationError(f"length must be positive, got {result}")
    return result


def _collinear(p: Point, q: Point, r: Point) -> bool:
    return (q[1] - p[1]) * (r[0] - q[0]) == (r[1] - q[1]) * (q[0] - p[0])


@dataclass(frozen=True)
class PLMap:
    """A monotone PL bijection, as its canonical breakpoint list.

    ``breaks`` runs from ``(0, 0)`` to ``(dom, cod)`` strictly increasing
    in both coordinates.  Use :func:`plmap` to build one from possibly
    redundant points; the constructor itself insists on canonical input.
    """

    breaks: tuple[Point, ...]

    def __post_init__(self) -> None:
        pts = self.breaks
        if len(pts) < 2:
            raise ValidationError("a map needs at least two breakpoints")
        if pts[0] != (Fraction(0), Fraction(0)):
            raise ValidationError("breaks must start at (0, 0)")
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            if not (t0 < t1 and v0 < v1):
                raise ValidationError(
                    "breaks must be strictly increasing in both coordinates"
                )
        for p, q, r in zip(pts, pts[1:], pts[2:]):
            if _collinear(p, q, r):
                raise ValidationError(
                    "breaks must be minimal: no three consecutive collinear points"
                )

    @property
    def dom(self) -> Fraction:
        return self.breaks[-1][0]

    @property
    def cod(self) -> Fraction:
        return self.breaks[-1][1]

    def __call__(self, t: RationalLike) -> Fraction:
        """Evaluate at a rational point of the domain, exactly."""
        x = as_rational(t)
        if x < 0 or x > self.dom:
            raise DomainError(f"{x} is outside the domain [0, {self.dom}]")
        ts = [p[0] for p in self.breaks]
        i = bisect_right(ts, x)
        if i == len(ts):
            return self.breaks[-1][1]
        (t0, v0), (t1, v1) = self.breaks[i - 1], self.breaks[i]
        return v0 + (v1 - v0) * (x - t0) / (t1 - t0)

    def inverse_at(self, v: RationalLike) -> Fraction:
        """Exact preimage of a codomain point."""
        return inverse(self)(v)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        pts = ", ".join(f"({t},{v})" for t, v in self.breaks)
        return f"PLMap[{pts}]"


def plmap(points: Iterable[tuple[RationalLike, RationalLike]]) -> PLMap:
    """Build a :class:`PLMap`, merging collinear interior breakpoints."""
    raw = [(as_rational(t), as_rational(v)) for t, v in points]
    merged: list[Point] = []
    for p in raw:
        while len(merged) >= 2 and _collinear(merged[-2], merged[-1], p):
            merged.pop()
        merged.append(p)
    return PLMap(tuple(merged))


def identity(length: RationalLike) -> PLMap:
    size = as_length(length)
    return PLMap(((Fraction(0), Fraction(0)), (size, size)))


def mu(length: RationalLike) -> PLMap:
    """The linear rescale of ``[0, length]`` onto ``[0, 1]``."""
    size = as_length(length)
    return PLMap(((Fraction(0), Fraction(0)), (size, Fraction(1))))


def evaluate(f: PLMap, t: RationalLike) -> Fraction:
    return f(t)


def inverse(f: PLMap) -> PLMap:
    # Swapping coordinates preserves monotonicity and minimality.
    return PLMap(tuple((v, t) for t, v in f.breaks))


def compose(f: PLMap, g: PLMap) -> PLMap:
    """The composite that applies ``f`` first, then ``g``."""
    if f.cod != g.dom:
        raise CompositionError(
            f"first map ends at {f.cod} but second starts from a domain of {g.dom}"
        )
    f_inv = inverse(f)
    grid = {t for t, _ in f.breaks}
    grid.update(f_inv(u) for u, _ in g.breaks)
    return plmap((t, g(f(t))) for t in sorted(grid))


def tensor_map(f1: PLMap, f2: PLMap) -> PLMap:
    """Concatenate two maps end to end on both axes."""
    shifted = ((t + f1.dom, v + f1.cod) for t, v in f2.breaks[1:])
    return plmap(list(f1.breaks) + list(shifted))


def tensor_all(maps: Sequence[PLMap]) -> PLMap:
    if not maps:
        raise ValidationError("tensor of an empty family has no length")
    out = maps[0]
    for f in maps[1:]:
        out = tensor_map(out, f)
    return out


def slice_map(f: PLMap, t0: RationalLike, t1: RationalLike) -> PLMap:
    """Restrict to ``[t0, t1]`` and rebase both axes to start at 0."""
    a, b = as_rational(t0), as_rational(t1)
    if not 0 <= a < b <= f.dom:
        raise DomainError(f"[{a}, {b}] is not a subinterval of [0, {f.dom}]")
    v0 = f(a)
    pts: list[Point] = [(Fraction(0), Fraction(0))]
    pts.extend((t - a, v - v0) for t, v in f.breaks if a < t < b)
    pts.append((b - a, f(b) - v0))
    return plmap(pts)


def decompose_map(
    f: PLMap, first: RationalLike, second: RationalLike
) -> tuple[PLMap, PLMap]:
    """Split ``f`` along the codomain partition ``(first, second)``.

    The split point of the domain is forced: it is the preimage of
    ``first``.  The two returned maps tensor back to ``f`` exactly, and
    they are the only such pair.
    """
    c1, c2 = as_length(first), as_length(second)
    if c1 + c2 != f.cod:
        raise SplitError(
            f"split {c1} + {c2} does not sum to the codomain length {f.cod}"
        )
    cut = inverse(f)(c1)
    return slice_map(f, Fraction(0), cut), slice_map(f, cut, f.dom)


def decompose_all(f: PLMap, parts: Sequence[Fraction]) -> tuple[PLMap, ...]:
    """Split ``f`` along a full codomain partition, in order."""
    total = sum(parts, Fraction(0))
    if total != f.cod or any(p <= 0 for p in parts):
        raise SplitError(
            f"partition {list(parts)} does not partition the codomain length {f.cod}"
        )
    f_inv = inverse(f)
    cuts = [Fraction(0)]
    running = Fraction(0)
    for p in parts:
        running += p
        cuts.append(f_inv(running))
    return tuple(slice_map(f, a, b) for a, b in zip(cuts, cuts[1:]))


def shift_left(length: RationalLike, f: PLMap) -> PLMap:
    """Tensor with an identity on the left; functorial in ``f``."""
    return tensor_map(identity(length), f)


def shift_right(length: RationalLike, f: PLMap) -> PLMap:
    """Tensor with an identity on the right; functorial in ``f``."""
    return tensor_map(f, identity(length))
