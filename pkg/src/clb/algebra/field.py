from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any

import galois
import numpy as np

from clb.errors import InputError

FieldArray = galois.FieldArray


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    for r in range(2, p):
        if galois.legendre_symbol(r, p) == -1:
            return r
    raise InputError(f"no quadratic non-residue mod {p}")


@lru_cache(maxsize=None)
def _galois_field(p: int, degree: int) -> type[FieldArray]:
    prime = galois.GF(p)
    if degree == 1:
        return prime
    # F_p[w]/(w^2 - r): the polynomial-basis integer of a + b*w is a + b*p
    r = least_nonresidue(p)
    irr = galois.Poly([1, 0, (-r) % p], field=prime)
    return galois.GF(p**2, irreducible_poly=irr)


@dataclass(frozen=True)
class FieldDescriptor:
    """F_p (degree 1) or F_{p^2} = F_p[w]/(w^2 - r) (degree 2), with conj(a + b w) = a - b w."""

    p: int
    degree: int = 1

    def __post_init__(self) -> None:
        if self.degree not in (1, 2):
            raise InputError(f"field degree must be 1 or 2, got {self.degree}")
        if self.p == 2 or self.p < 2 or not galois.is_prime(self.p):
            raise InputError(f"characteristic must be an odd prime, got {self.p}")

    @staticmethod
    def parse(text: str) -> "FieldDescriptor":
        """Accepts 'p', 'p,2' or a prime power q in {p, p^2}."""
        raw = str(text).strip()
        try:
            if "," in raw:
                a, b = (int(x) for x in raw.split(",", 1))
                return FieldDescriptor(a, b)
            q = int(raw)
        except ValueError as e:
            raise InputError(f"cannot parse field {raw!r}") from e
        if q > 2 and galois.is_prime(q):
            return FieldDescriptor(q, 1)
        if galois.is_prime_power(q):
            p = galois.factors(q)[0][0]
            if p**2 == q:
                return FieldDescriptor(p, 2)
        raise InputError(f"unsupported field order {q}")

    @property
    def GF(self) -> type[FieldArray]:
        return _galois_field(self.p, self.degree)

    @property
    def prime_field(self) -> type[FieldArray]:
        return _galois_field(self.p, 1)

    @property
    def q(self) -> int:
        return self.p**self.degree

    @property
    def nonresidue(self) -> int | None:
        return least_nonresidue(self.p) if self.degree == 2 else None

    @property
    def omega(self) -> FieldArray | None:
        return self.GF(self.p) if self.degree == 2 else None

    @property
    def label(self) -> str:
        return f"F_{self.p}" if self.degree == 1 else f"GF({self.q})"

    # --- scalars -----------------------------------------------------------

    def scalar(self, a: int, b: int = 0) -> FieldArray:
        a, b = int(a) % self.p, int(b) % self.p
        if self.degree == 1 and b:
            raise InputError(f"{self.label} has no w-component (got b={b})")
        return self.GF(a + b * self.p)

    def coords(self, x: FieldArray) -> tuple[int, int]:
        n = int(x)
        return n % self.p, n // self.p

    def conj(self, x: FieldArray) -> FieldArray:
        if self.degree == 1:
            return x
        return x**self.p

    def zero(self) -> FieldArray:
        return self.GF(0)

    def one(self) -> FieldArray:
        return self.GF(1)

    def elements(self) -> FieldArray:
        return self.GF.elements

    def fixed_elements(self) -> FieldArray:
        # integers 0..p-1 are exactly a + 0*w
        return self.GF(list(range(self.p)))

    def fixed_units(self) -> FieldArray:
        return self.GF(list(range(1, self.p)))

    def trace_zero_elements(self) -> FieldArray:
        """Elements with conj(x) = -x (only 0 in degree 1)."""
        if self.degree == 1:
            return self.GF([0])
        return self.GF([b * self.p for b in range(self.p)])

    # --- arrays ------------------------------------------------------------

    def array(self, data: Any, ndim: int) -> FieldArray:
        """Nested lists of depth `ndim` whose leaves are ints or [a, b] pairs."""
        return self.GF(self._decode(data, ndim))

    def _decode(self, data: Any, ndim: int) -> Any:
        if ndim == 0:
            if isinstance(data, (int, np.integer)):
                return self._pack(int(data), 0)
            if isinstance(data, (list, tuple)) and len(data) == 2:
                return self._pack(int(data[0]), int(data[1]))
            raise InputError(f"cannot read scalar {data!r}")
        if not isinstance(data, (list, tuple)):
            raise InputError(f"expected a list at depth {ndim}, got {data!r}")
        return [self._decode(x, ndim - 1) for x in data]

    def _pack(self, a: int, b: int) -> int:
        a, b = a % self.p, b % self.p
        if self.degree == 1 and b:
            raise InputError(f"{self.label} has no w-component (got b={b})")
        return a + b * self.p

    def encode(self, x: FieldArray) -> Any:
        """Inverse of `array`: every scalar becomes an [a, b] pair."""
        ints = np.asarray(x.view(np.ndarray), dtype=np.int64)
        if ints.ndim == 0:
            n = int(ints)
            return [n % self.p, n // self.p]
        return [self.encode(self.GF(row)) for row in ints]

    def to_prime(self, x: FieldArray) -> FieldArray:
        """Flatten over F_p: each entry becomes its coordinates (a) or (a, b)."""
        ints = np.asarray(x.view(np.ndarray), dtype=np.int64).reshape(-1)
        if self.degree == 1:
            return self.prime_field(ints)
        out = np.empty(ints.size * 2, dtype=np.int64)
        out[0::2] = ints % self.p
        out[1::2] = ints // self.p
        return self.prime_field(out)

    def from_prime(self, coords: FieldArray, shape: tuple[int, ...]) -> FieldArray:
        ints = np.asarray(coords.view(np.ndarray), dtype=np.int64)
        if self.degree == 2:
            ints = ints[0::2] + ints[1::2] * self.p
        return self.GF(ints.reshape(shape))

    def to_json(self) -> dict[str, int]:
        return {"p": self.p, "deg": self.degree}

    @staticmethod
    def from_json(data: dict[str, Any]) -> "FieldDescriptor":
        return FieldDescriptor(int(data["p"]), int(data.get("deg", 1)))
