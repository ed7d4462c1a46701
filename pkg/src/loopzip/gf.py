"""Exact arithmetic in small finite fields F_{p^m} with the p-power Frobenius.

Elements are stored as integer codes 0..q-1, the little-endian base-p
encoding of their coefficient vector in the basis 1, w, w^2 of
F_p[w]/(modulus).  The code order doubles as the fixed total order used
by every canonical form downstream.
"""

from __future__ import annotations

from .errors import DivisionByZero, SpecMismatch

# Monic irreducible modulus for each supported (p, m), little-endian
# coefficients including the leading 1.  The table is fixed so that
# serialized elements are portable: one modulus per (p, m), forever.
_MODULI = {
    (2, 1): (0, 1),
    (2, 2): (1, 1, 1),  # w^2 + w + 1
    (2, 3): (1, 1, 0, 1),  # w^3 + w + 1
    (3, 1): (0, 1),
    (3, 2): (1, 0, 1),  # w^2 + 1
    (5, 1): (0, 1),
    (5, 2): (2, 0, 1),  # w^2 + 2
}

_SPEC_CACHE: dict[tuple[int, int], "FieldSpec"] = {}


def _check_irreducible(p: int, modulus: tuple[int, ...]) -> None:
    """Exhaustive root check; for degree <= 3 no root means irreducible."""
    m = len(modulus) - 1
    if m == 1:
        return
    if m > 3:
        raise ValueError("extension degree above 3 is unsupported")
    for x in range(p):
        acc = 0
        for c in reversed(modulus):
            acc = (acc * x + c) % p
        if acc == 0:
            raise ValueError(f"modulus {modulus} has root {x} mod {p}")


class FieldSpec:
    """A fixed model of F_{p^m}, q = p^m <= 25, with precomputed op tables."""

    def __init__(self, p: int, m: int):
        if (p, m) not in _MODULI:
            raise ValueError(f"unsupported field F_{{{p}^{m}}}")
        self.p = p
        self.m = m
        self.q = p**m
        if self.q > 25:
            raise ValueError("q capped at 25")
        self.modulus = _MODULI[(p, m)]
        _check_irreducible(p, self.modulus)
        self._build_tables()

    @staticmethod
    def get(p: int, m: int) -> "FieldSpec":
        spec = _SPEC_CACHE.get((p, m))
        if spec is None:
            spec = FieldSpec(p, m)
            _SPEC_CACHE[(p, m)] = spec
        return spec

    @staticmethod
    def for_q(q: int) -> "FieldSpec":
        for (p, m) in _MODULI:
            if p**m == q:
                return FieldSpec.get(p, m)
        raise ValueError(f"no supported field of size {q}")

    # -- table construction ------------------------------------------------

    def _code_to_vec(self, code: int) -> list[int]:
        vec = []
        for _ in range(self.m):
            vec.append(code % self.p)
            code //= self.p
        return vec

    def _vec_to_code(self, vec) -> int:
        code = 0
        for c in reversed(vec):
            code = code * self.p + (c % self.p)
        return code

    def _poly_mul_reduce(self, a: list[int], b: list[int]) -> list[int]:
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        # reduce degrees >= m using the monic modulus
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(m):
                    prod[k - m + i] = (prod[k - m + i] - c * self.modulus[i]) % p
        return prod[:m]

    def _build_tables(self) -> None:
        q = self.q
        vecs = [self._code_to_vec(c) for c in range(q)]
        self.add_table = [
            [
                self._vec_to_code([(x + y) % self.p for x, y in zip(vecs[a], vecs[b])])
                for b in range(q)
            ]
            for a in range(q)
        ]
        self.mul_table = [
            [self._vec_to_code(self._poly_mul_reduce(vecs[a], vecs[b])) for b in range(q)]
            for a in range(q)
        ]
        self.neg_table = [
            self._vec_to_code([(-x) % self.p for x in vecs[a]]) for a in range(q)
        ]
        # inverse by exhaustive search; q <= 25 keeps this trivial
        self.inv_table = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_table[a][b] == 1:
                    self.inv_table[a] = b
                    break
            else:
                raise AssertionError(f"no inverse for code {a}; modulus not irreducible?")
        self.frob_table = [self._pow_code(a, self.p) for a in range(q)]
        self.frob_inv_table = [0] * q
        for a in range(q):
            self.frob_inv_table[self.frob_table[a]] = a

    def _pow_code(self, a: int, e: int) -> int:
        acc = 1
        for _ in range(e):
            acc = self.mul_table[acc][a]
        return acc

    # -- element constructors ----------------------------------------------

    def element(self, code: int) -> "FqElem":
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for q={self.q}")
        return FqElem(self, code)

    def from_coeffs(self, coeffs) -> "FqElem":
        if len(coeffs) != self.m:
            raise ValueError(f"expected {self.m} coefficients")
        return FqElem(self, self._vec_to_code(list(coeffs)))

    def from_int(self, n: int) -> "FqElem":
        """Image of the integer n under Z -> F_q."""
        return FqElem(self, self._vec_to_code([n % self.p] + [0] * (self.m - 1)))

    def zero(self) -> "FqElem":
        return FqElem(self, 0)

    def one(self) -> "FqElem":
        return FqElem(self, 1)

    def gen(self) -> "FqElem":
        """The class of w, a degree-m generator (equals 1 when m = 1)."""
        return FqElem(self, self.p if self.m > 1 else 1)

    def elements(self):
        for code in range(self.q):
            yield FqElem(self, code)

    def __repr__(self):
        return f"FieldSpec(p={self.p}, m={self.m})"


class FqElem:
    """Element of F_{p^m}; immutable, one int code plus its spec."""

    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        self.spec = spec
        self.code = code

    def _coerce(self, other: "FqElem") -> None:
        if other.spec is not self.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")

    def __add__(self, other: "FqElem") -> "FqElem":
        self._coerce(other)
        return FqElem(self.spec, self.spec.add_table[self.code][other.code])

    def __sub__(self, other: "FqElem") -> "FqElem":
        self._coerce(other)
        return FqElem(
            self.spec, self.spec.add_table[self.code][self.spec.neg_table[other.code]]
        )

    def __mul__(self, other: "FqElem") -> "FqElem":
        self._coerce(other)
        return FqElem(self.spec, self.spec.mul_table[self.code][other.code])

    def __neg__(self) -> "FqElem":
        return FqElem(self.spec, self.spec.neg_table[self.code])

    def inverse(self) -> "FqElem":
        if self.code == 0:
            raise DivisionByZero("inverse of 0")
        return FqElem(self.spec, self.spec.inv_table[self.code])

    def frobenius(self, times: int = 1) -> "FqElem":
        """Apply the p-power Frobenius `times` times (negative for roots)."""
        code = self.code
        table = self.spec.frob_table if times >= 0 else self.spec.frob_inv_table
        for _ in range(abs(times)):
            code = table[code]
        return FqElem(self.spec, code)

    def __pow__(self, e: int) -> "FqElem":
        if e < 0:
            return self.inverse() ** (-e)
        acc = FqElem(self.spec, 1)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def is_zero(self) -> bool:
        return self.code == 0

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Little-endian coefficient vector in the basis 1, w, w^2."""
        return tuple(self.spec._code_to_vec(self.code))

    def __eq__(self, other):
        return (
            isinstance(other, FqElem)
            and other.spec is self.spec
            and other.code == self.code
        )

    def __hash__(self):
        return hash((id(self.spec), self.code))

    def __repr__(self):
        if self.spec.m == 1:
            return str(self.code)
        names = ("1", "w", "w^2")
        terms = [
            (names[i] if c == 1 else f"{c}*{names[i]}") if i else str(c)
            for i, c in enumerate(self.coeffs)
            if c
        ]
        return " + ".join(terms) if terms else "0"
