"""Coefficient models for the Witt ring W(k).

Three models are provided: ``real`` (W(k) = Z, as for a real-closed field),
``quadclosed`` (W(k) = F2, as for a quadratically closed field) and
``symbolic``, which only knows the elements 0 and 1 and is used for
rank statements that do not depend on the field.
"""

from __future__ import annotations

from dataclasses import dataclass


class UnsupportedError(ValueError):
    """Raised when an operation needs element arithmetic the model lacks."""


KINDS = ("real", "quadclosed", "symbolic")

# CLI spellings accepted for each kind
_ALIASES = {
    "real": "real",
    "real-closed": "real",
    "quadclosed": "quadclosed",
    "quad-closed": "quadclosed",
    "symbolic": "symbolic",
}


@dataclass(frozen=True)
class WittModel:
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown Witt model {self.kind!r}")

    @classmethod
    def from_name(cls, name: str) -> "WittModel":
        try:
            return cls(_ALIASES[name])
        except KeyError:
            raise ValueError(f"unknown field model {name!r}") from None

    @property
    def has_elements(self) -> bool:
        return self.kind != "symbolic"

    def element(self, value: int) -> int:
        """Normalize an integer into this model's element representation."""
        if self.kind == "real":
            return int(value)
        if self.kind == "quadclosed":
            return int(value) % 2
        if value in (0, 1):
            return int(value)
        raise UnsupportedError("unsupported on symbolic Witt model")

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        if self.kind == "symbolic":
            if a and b:
                raise UnsupportedError("unsupported on symbolic Witt model")
            return a or b
        return self.element(a + b)

    def neg(self, a: int) -> int:
        if self.kind == "symbolic":
            if a:
                raise UnsupportedError("unsupported on symbolic Witt model")
            return 0
        return self.element(-a)

    def mul(self, a: int, b: int) -> int:
        return self.element(a * b)

    def reduce(self, w: int) -> int:
        """Reduction W(k) -> W(k)/I(k) = F2."""
        if self.kind == "symbolic":
            raise UnsupportedError("unsupported on symbolic Witt model")
        return w % 2

    def reduce_unit(self, w: int) -> int:
        """Reduction that also accepts the symbolic 0/1 scalars."""
        if self.kind == "symbolic":
            if w in (0, 1):
                return w
            raise UnsupportedError("unsupported on symbolic Witt model")
        return w % 2

    def in_fundamental_ideal(self, w: int) -> bool:
        return self.reduce(w) == 0

    def gw_z_rank(self) -> int:
        """Rank of GW(k) = W(k) x_{F2} Z as an abelian group, when finite."""
        if self.kind == "real":
            return 2
        if self.kind == "quadclosed":
            return 1
        raise UnsupportedError("unsupported on symbolic Witt model")


REAL = WittModel("real")
QUADCLOSED = WittModel("quadclosed")
SYMBOLIC = WittModel("symbolic")


def witt_reduce(model: WittModel, w: int) -> int:
    return model.reduce(w)


def in_fundamental_ideal(model: WittModel, w: int) -> bool:
    return model.in_fundamental_ideal(w)
