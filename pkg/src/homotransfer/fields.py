"""Exact coefficient fields.

Scalars are plain Python objects so the sparse kernels can use native
arithmetic: ``gmpy2.mpq`` for the rationals and ``int`` in ``[0, q)`` for a
prime field.  Kernels multiply and add freely and call :meth:`normalize`
before storing a coefficient.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import gmpy2


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return bool(gmpy2.is_prime(q))


@dataclass(frozen=True)
class ExactField:
    """Rationals (``q == 0``) or the prime field of characteristic ``q``."""

    q: int = 0

    def __post_init__(self):
        if self.q != 0 and not _is_prime(self.q):
            raise ValueError(f"characteristic {self.q} is not prime")

    @property
    def kind(self) -> str:
        return "rationals" if self.q == 0 else "prime"

    @property
    def zero(self):
        return gmpy2.mpq(0) if self.q == 0 else 0

    @property
    def one(self):
        return gmpy2.mpq(1) if self.q == 0 else 1

    def __call__(self, value: Any):
        """Coerce an int, Fraction, mpq or ``"a/b"`` string into the field."""
        if isinstance(value, str):
            return self.parse(value)
        if self.q == 0:
            if isinstance(value, Fraction):
                return gmpy2.mpq(value.numerator, value.denominator)
            return gmpy2.mpq(value)
        if isinstance(value, Fraction) or type(value).__name__ == "mpq":
            num, den = int(value.numerator), int(value.denominator)
            if den % self.q == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {self.q}")
            return num * pow(den, -1, self.q) % self.q
        return int(value) % self.q

    def normalize(self, x):
        return x % self.q if self.q else x

    def inv(self, x):
        if not self.normalize(x):
            raise ZeroDivisionError("inverse of zero")
        if self.q:
            return pow(int(x), -1, self.q)
        return 1 / x

    def neg(self, x):
        return (-x) % self.q if self.q else -x

    def parse(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self(Fraction(int(num), int(den)))
        return self(int(text))

    def format(self, x) -> str:
        if self.q:
            # symmetric representative reads better in reports
            x = int(x) % self.q
            return str(x - self.q if x > self.q // 2 else x)
        return str(gmpy2.mpq(x))

    def to_json(self):
        return "Q" if self.q == 0 else {"Fp": self.q}

    @classmethod
    def from_json(cls, obj) -> "ExactField":
        if obj == "Q":
            return cls(0)
        if isinstance(obj, dict) and set(obj) == {"Fp"}:
            return cls(int(obj["Fp"]))
        raise ValueError(f"unrecognized field description {obj!r}")

    @classmethod
    def from_string(cls, text: str) -> "ExactField":
        """Parse the CLI spelling ``Q`` or ``Fp:q``."""
        text = text.strip()
        if text.upper() == "Q":
            return cls(0)
        if text.lower().startswith("fp:"):
            return cls(int(text[3:]))
        raise ValueError(f"field must be 'Q' or 'Fp:q', got {text!r}")

    def __str__(self) -> str:
        return "Q" if self.q == 0 else f"F_{self.q}"


QQ = ExactField(0)


def GF(q: int) -> ExactField:
    return ExactField(q)
