"""Exact arithmetic substrate shared by every other module.

Integers are plain Python ints, rationals are fractions.Fraction (already
normalized with positive denominator).  On top of those this module keeps
dense multilinear forms, sparse multivariate integer polynomials, a small
rational 2x2 matrix, and Lagrange-Gauss reduction of rank-2 lattices.
No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import prod
from typing import Iterable, Sequence


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class UnsupportedDomainError(Exception):
    """Requested operation lies outside the supported domain.

    Raised by solver paths that need D < 0 (principality testing, class
    composition) when handed a nonnegative discriminant, and by reduction
    on square discriminants.
    """


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise InputError("booleans are not coefficients")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    raise InputError(f"expected an exact integer, got {x!r}")


class MultiForm:
    """Dense integer multilinear form.

    ``dims`` lists the dimension of each vector slot; ``coeffs`` is the flat
    coefficient array in row-major order (last slot index varies fastest):

        f(v_1, ..., v_k) = sum_{(i_1..i_k)} coeffs[i_1..i_k] * v_1[i_1] * ... * v_k[i_k]

    Values are immutable; every operation returns a new form.
    """

    __slots__ = ("dims", "coeffs")

    def __init__(self, dims: Iterable[int], coeffs: Iterable):
        dims = tuple(int(d) for d in dims)
        if any(d < 1 for d in dims):
            raise InputError("every slot dimension must be >= 1")
        coeffs = tuple(_as_int(c) for c in coeffs)
        if len(coeffs) != prod(dims, start=1):
            raise InputError("coefficient count does not match dims")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("MultiForm is immutable")

    @classmethod
    def zero(cls, dims: Iterable[int]) -> "MultiForm":
        dims = tuple(dims)
        return cls(dims, [0] * prod(dims, start=1))

    @classmethod
    def constant(cls, c: int) -> "MultiForm":
        return cls((), [c])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiForm)
            and self.dims == other.dims
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.dims, self.coeffs))

    def __repr__(self):
        return f"MultiForm(dims={self.dims}, coeffs={self.coeffs})"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __getitem__(self, idx: Sequence[int]) -> int:
        idx = tuple(idx)
        if len(idx) != len(self.dims):
            raise InputError("index arity mismatch")
        flat = 0
        for i, d in zip(idx, self.dims):
            if not 0 <= i < d:
                raise InputError("index out of range")
            flat = flat * d + i
        return self.coeffs[flat]

    def eval(self, vectors: Sequence[Sequence]) -> int:
        """Multilinear evaluation, one vector per slot."""
        if len(vectors) != len(self.dims):
            raise InputError("wrong number of argument vectors")
        for d, v in zip(self.dims, vectors):
            if len(v) != d:
                raise InputError("argument vector length does not match slot dimension")
        # contract slots right to left
        cur = list(self.coeffs)
        for dim, vec in zip(reversed(self.dims), reversed(list(vectors))):
            cur = [
                sum(cur[base + t] * vec[t] for t in range(dim))
                for base in range(0, len(cur), dim)
            ]
        return cur[0]

    def substitute(self, slot: int, matrix: Sequence[Sequence]) -> "MultiForm":
        """Compose one slot with a linear map.

        Returns g with g(..., v, ...) = f(..., matrix @ v, ...) at ``slot``.
        ``matrix`` needs dims[slot] rows; a rectangular matrix re-embeds the
        slot, the new dimension being the column count.
        """
        if not 0 <= slot < len(self.dims):
            raise InputError("slot out of range")
        n = self.dims[slot]
        rows = [[_as_int(x) for x in row] for row in matrix]
        if len(rows) != n or any(len(r) != len(rows[0]) for r in rows):
            raise InputError("substitution matrix shape mismatch")
        n2 = len(rows[0])
        if n2 < 1:
            raise InputError("substitution matrix needs at least one column")
        pre = prod(self.dims[:slot], start=1)
        post = prod(self.dims[slot + 1 :], start=1)
        out = [0] * (pre * n2 * post)
        for a in range(pre):
            for s in range(n):
                row = rows[s]
                base_in = (a * n + s) * post
                for b in range(post):
                    c = self.coeffs[base_in + b]
                    if c:
                        for t in range(n2):
                            if row[t]:
                                out[(a * n2 + t) * post + b] += c * row[t]
        return MultiForm(self.dims[:slot] + (n2,) + self.dims[slot + 1 :], out)

    def tensor(self, other: "MultiForm") -> "MultiForm":
        """Product over disjoint variable groups; dims concatenate."""
        out = []
        for c in self.coeffs:
            if c:
                out.extend(c * d for d in other.coeffs)
            else:
                out.extend([0] * len(other.coeffs))
        return MultiForm(self.dims + other.dims, out)

    def _same_shape(self, other):
        if not isinstance(other, MultiForm) or self.dims != other.dims:
            raise InputError("shape mismatch")

    def __add__(self, other: "MultiForm") -> "MultiForm":
        self._same_shape(other)
        return MultiForm(self.dims, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "MultiForm") -> "MultiForm":
        self._same_shape(other)
        return MultiForm(self.dims, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "MultiForm":
        return MultiForm(self.dims, [-a for a in self.coeffs])

    def scale(self, k: int) -> "MultiForm":
        k = _as_int(k)
        return MultiForm(self.dims, [k * a for a in self.coeffs])


def multiform_eval(f: MultiForm, vectors: Sequence[Sequence]) -> int:
    return f.eval(vectors)


def multiform_substitute(f: MultiForm, slot: int, matrix) -> MultiForm:
    return f.substitute(slot, matrix)


def multiform_mul(f: MultiForm, g: MultiForm) -> MultiForm:
    return f.tensor(g)


class Poly:
    """Sparse multivariate polynomial with integer coefficients.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    coefficients.  Used wherever an identity is not multilinear in whole
    vector slots and therefore has to be checked by full expansion.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        object.__setattr__(self, "nvars", int(nvars))
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise InputError("exponent tuple arity mismatch")
                if c:
                    clean[tuple(e)] = clean.get(tuple(e), 0) + c
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, nvars: int, c: int) -> "Poly":
        c = _as_int(c)
        if c == 0:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        if not 0 <= i < nvars:
            raise InputError("variable index out of range")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def variables(cls, nvars: int) -> list:
        return [cls.var(nvars, i) for i in range(nvars)]

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly(nvars={self.nvars}, {len(self.terms)} terms)"

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise InputError("variable count mismatch")
            return other
        return Poly.const(self.nvars, _as_int(other))

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            k = _as_int(other)
            return Poly(self.nvars, {e: k * c for e, c in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise InputError("negative power")
        out = Poly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def eval(self, values: Sequence) -> int:
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(values, e):
                if k:
                    t *= x**k
            total += t
        return total


class VerifyResult:
    """Outcome of an identity verification, with reasons on failure.

    Truthiness equals the verdict, so callers may use it directly in
    assertions while still having diagnostics to print.
    """

    __slots__ = ("ok", "reasons")

    def __init__(self, ok: bool, reasons=()):
        object.__setattr__(self, "ok", bool(ok))
        object.__setattr__(self, "reasons", tuple(reasons))

    def __setattr__(self, name, value):
        raise AttributeError("VerifyResult is immutable")

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self):
        if self.ok:
            return "VerifyResult(ok)"
        return f"VerifyResult(failed: {'; '.join(self.reasons)})"


def _round_nearest(num: Fraction) -> int:
    # nearest integer, ties toward +infinity; exactness is all that matters here
    from math import floor

    return floor(num + Fraction(1, 2))


def lagrange_gauss_reduce(basis, gram):
    """Reduce a rank-2 lattice basis under a positive-definite form.

    ``basis`` is a pair of integer 2-vectors, ``gram`` a triple (p, q, r)
    meaning the form p*x^2 + q*x*y + r*y^2 on coordinates.  Returns
    ``(reduced_basis, shortest)`` where the first reduced vector attains the
    lattice minimum.
    """
    p, q, r = (Fraction(t) for t in gram)
    if p <= 0 or q * q - 4 * p * r >= 0:
        raise InputError("gram form must be positive definite")
    (u, v) = (tuple(int(c) for c in w) for w in basis)
    if u[0] * v[1] - u[1] * v[0] == 0:
        raise InputError("degenerate basis")

    def val(w):
        return p * w[0] * w[0] + q * w[0] * w[1] + r * w[1] * w[1]

    def bil(w1, w2):
        return (val((w1[0] + w2[0], w1[1] + w2[1])) - val(w1) - val(w2)) / 2

    if val(u) > val(v):
        u, v = v, u
    while True:
        t = _round_nearest(bil(u, v) / val(u))
        v = (v[0] - t * u[0], v[1] - t * u[1])
        if val(v) < val(u):
            u, v = v, u
        else:
            break
    return (u, v), u


class IMat2:
    """2x2 matrix with exact rational entries, row-major (a, b; c, d)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        for name, x in (("a", a), ("b", b), ("c", c), ("d", d)):
            object.__setattr__(self, name, Fraction(x))

    def __setattr__(self, name, value):
        raise AttributeError("IMat2 is immutable")

    @classmethod
    def identity(cls) -> "IMat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows) -> "IMat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def __mul__(self, other: "IMat2") -> "IMat2":
        return IMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def apply(self, v):
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def transpose(self) -> "IMat2":
        return IMat2(self.a, self.c, self.b, self.d)

    def inverse(self) -> "IMat2":
        d = self.det()
        if d == 0:
            raise InputError("singular matrix")
        return IMat2(self.d / d, -self.b / d, -self.c / d, self.a / d)

    def __eq__(self, other):
        return isinstance(other, IMat2) and self.rows() == other.rows()

    def __hash__(self):
        return hash(self.rows())

    def __repr__(self):
        return f"IMat2({self.a}, {self.b}, {self.c}, {self.d})"
