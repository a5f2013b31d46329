"""Vertex labels ``(a, b, c)_side`` over ``F_q`` plus the formal symbol rho."""

from __future__ import annotations

from typing import NamedTuple, Union


class _Rho:
    """The adjoined symbol.  Compared by identity only, never an operand."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "rho"

    def __reduce__(self):
        return (_Rho, ())


RHO = _Rho()

Coord = Union[int, _Rho]


class InvalidLabel(ValueError):
    pass


class Label(NamedTuple):
    side: int
    a: Coord
    b: Coord
    c: Coord

    def __str__(self):
        return f"({_fmt(self.a)},{_fmt(self.b)},{_fmt(self.c)})_{self.side}"

    @property
    def coords(self) -> tuple[Coord, Coord, Coord]:
        return (self.a, self.b, self.c)

    def is_affine(self) -> bool:
        """True when every coordinate lies in F_q."""
        return RHO not in self.coords


def _fmt(x: Coord) -> str:
    return "ρ" if x is RHO else str(x)


def _is_elem(x, q: int) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < q


def validate(label: Label, q: int) -> Label:
    """Reject shapes other than (a,b,c), (rho,b,c), (rho,rho,c), (rho,rho,rho)."""
    side, a, b, c = label
    if side not in (0, 1):
        raise InvalidLabel(f"bad side in {label!r}")
    ok = (
        (_is_elem(a, q) or a is RHO) and _is_elem(b, q) and _is_elem(c, q)
    ) or (a is RHO and b is RHO and (_is_elem(c, q) or c is RHO))
    if not ok:
        raise InvalidLabel(f"{label!r} is not a valid label over GF({q})")
    return label


class LabelCodec:
    """Bijection between labels and indices ``[0, 2*(q^3+q^2+q+1))``.

    Side 0 comes first.  Inside a side: affine labels ordered by
    ``a*q^2 + b*q + c``, then ``(rho,b,c)``, then ``(rho,rho,c)``, then
    ``(rho,rho,rho)``.
    """

    def __init__(self, q: int):
        self.q = q
        self.stride = q**3 + q**2 + q + 1

    def __len__(self):
        return 2 * self.stride

    def __eq__(self, other):
        return isinstance(other, LabelCodec) and other.q == self.q

    def __hash__(self):
        return hash(("codec", self.q))

    def encode(self, label: Label) -> int:
        q = self.q
        side, a, b, c = validate(label, q)
        if a is not RHO:
            local = (a * q + b) * q + c
        elif b is not RHO:
            local = q**3 + b * q + c
        elif c is not RHO:
            local = q**3 + q * q + c
        else:
            local = q**3 + q * q + q
        return side * self.stride + local

    def decode(self, index: int) -> Label:
        q = self.q
        if not 0 <= index < 2 * self.stride:
            raise IndexError(f"index {index} out of range for q={q}")
        side, local = divmod(index, self.stride)
        if local < q**3:
            a, rest = divmod(local, q * q)
            b, c = divmod(rest, q)
            return Label(side, a, b, c)
        local -= q**3
        if local < q * q:
            b, c = divmod(local, q)
            return Label(side, RHO, b, c)
        local -= q * q
        if local < q:
            return Label(side, RHO, RHO, local)
        return Label(side, RHO, RHO, RHO)

    def all_labels(self, side: int | None = None) -> list[Label]:
        sides = (0, 1) if side is None else (side,)
        return [self.decode(s * self.stride + i) for s in sides for i in range(self.stride)]


def label_to_json(label: Label) -> list:
    return [label.side] + ["rho" if x is RHO else x for x in label.coords]


def label_from_json(obj) -> Label:
    if not isinstance(obj, (list, tuple)) or len(obj) != 4:
        raise InvalidLabel(f"malformed label {obj!r}")
    side, *coords = obj
    return Label(side, *(RHO if x == "rho" else x for x in coords))
