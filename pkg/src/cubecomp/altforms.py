"""Pairs of quaternary alternating 2-forms and senary alternating 3-forms.

The two skew-symmetrized relatives of the cube space.  A cube maps to a
pair of alternating 4x4 matrices by the block construction phi, with the
Pfaffian of the matrix pencil recovering the first associated form on the
nose; a cube maps to an alternating 3-form on Z^6 by distributing its three
tensor slots over the three 2-blocks of Z^6.  Both composition identities
are verified exactly, the first over basis tuples of the product form, the
second by full polynomial expansion in 36 variables.
"""

from __future__ import annotations

from itertools import combinations, product as iter_product

from .bqf import BQF
from .cubes import (
    Cube,
    assoc_form,
    companion_cube,
    cube_disc,
    cube_variants,
    identity_cube,
    slices,
)
from .exact import InputError, MultiForm, Poly
from .qring import ring_of_discriminant


def _check_alternating(m):
    rows = tuple(tuple(int(x) for x in row) for row in m)
    if len(rows) != 4 or any(len(r) != 4 for r in rows):
        raise InputError("expected a 4x4 matrix")
    for i in range(4):
        if rows[i][i] != 0:
            raise InputError("alternating matrix needs a zero diagonal")
        for j in range(i + 1, 4):
            if rows[i][j] != -rows[j][i]:
                raise InputError("matrix is not alternating")
    return rows


class QuatAltPair:
    """Pair of alternating 4x4 integer matrices (F1, F2)."""

    __slots__ = ("f1", "f2")

    def __init__(self, f1, f2):
        object.__setattr__(self, "f1", _check_alternating(f1))
        object.__setattr__(self, "f2", _check_alternating(f2))

    def __setattr__(self, name, value):
        raise AttributeError("QuatAltPair is immutable")

    def avatar(self) -> MultiForm:
        """The trilinear form x1 * yF1z + x2 * yF2z, dims (2, 4, 4)."""
        coeffs = []
        for m in (self.f1, self.f2):
            for row in m:
                coeffs.extend(row)
        return MultiForm((2, 4, 4), coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, QuatAltPair)
            and self.f1 == other.f1
            and self.f2 == other.f2
        )

    def __hash__(self):
        return hash((self.f1, self.f2))

    def __repr__(self):
        return f"QuatAltPair({self.f1!r}, {self.f2!r})"


def _block(m):
    (a, b), (c, d) = m
    return (
        (0, 0, a, b),
        (0, 0, c, d),
        (-a, -c, 0, 0),
        (-b, -d, 0, 0),
    )


def phi(A: Cube) -> QuatAltPair:
    """Skew-symmetrize the last two slots: the pair of block matrices
    built from the first-direction slices of A.  As a trilinear form the
    image satisfies phi(A)(x,(y1,y2),(z1,z2)) = A(x,y1,z2) - A(x,z1,y2)."""
    M, N = slices(A, 0)
    return QuatAltPair(_block(M), _block(N))


def pfaffian(m) -> int:
    """m12 m34 - m13 m24 + m14 m23 for an alternating 4x4 matrix; its
    square is the determinant."""
    rows = _check_alternating(m)
    return (
        rows[0][1] * rows[2][3]
        - rows[0][2] * rows[1][3]
        + rows[0][3] * rows[1][2]
    )


def pair_pfaffian_form(P: QuatAltPair) -> BQF:
    """The binary form Pfaffian(F1 x - F2 y)."""
    p = pfaffian(P.f1)
    c = pfaffian(P.f2)
    diff = tuple(
        tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(P.f1, P.f2)
    )
    q = pfaffian(diff) - p - c
    return BQF(p, q, c)


def pair_disc(P: QuatAltPair) -> int:
    return pair_pfaffian_form(P).disc()


def pair_companion(P: QuatAltPair) -> QuatAltPair:
    """Companion pair via the first-slot substitution built from the
    Pfaffian form, mirroring the cube companion's slice recipe."""
    form = pair_pfaffian_form(P)
    d = form.disc()
    eps = d % 4
    if eps not in (0, 1):
        raise InputError("discriminant must be 0 or 1 mod 4")
    p, q, r = form.a, form.b, form.c
    s, t = (q - eps) // 2, (-q - eps) // 2
    f1 = tuple(
        tuple(s * a + p * b for a, b in zip(r1, r2))
        for r1, r2 in zip(P.f1, P.f2)
    )
    f2 = tuple(
        tuple(-r * a + t * b for a, b in zip(r1, r2))
        for r1, r2 in zip(P.f1, P.f2)
    )
    return QuatAltPair(f1, f2)


def pair_form_product(P: QuatAltPair, Q: QuatAltPair) -> MultiForm:
    """P x Q' + P' x Q + eps P x Q as a (2,4,4,2,4,4) tensor."""
    d = pair_disc(P)
    if pair_disc(Q) != d:
        raise InputError("discriminant mismatch")
    eps = d % 4
    a, b = P.avatar(), Q.avatar()
    ac, bc = pair_companion(P).avatar(), pair_companion(Q).avatar()
    out = a.tensor(bc) + ac.tensor(b)
    if eps:
        out = out + a.tensor(b)
    return out


def _table(X: Cube, variant: int):
    """Coefficient table of a cube involution image: tab[i][s][t]."""
    V = cube_variants(X)[variant] if variant >= 0 else X
    return tuple(
        tuple(tuple(V.coeff(i, s, t) for t in (0, 1)) for s in (0, 1))
        for i in (0, 1)
    )


def _table_apply(tab, a, b):
    return tuple(
        sum(tab[i][s][t] * a[s] * b[t] for s in (0, 1) for t in (0, 1))
        for i in (0, 1)
    )


def verify_quaternary_composition(
    A: Cube, B: Cube, C: Cube, R: Cube, S: Cube, T: Cube
) -> bool:
    """Exact check of the alternating-pair composition identity.

    A must be doubly symmetric so that its image pair represents the same
    class; the pairs F, G, H are built here via phi.  Conditions: the
    twelve-slot identity between (G*H) and F evaluated on the sigma-pair
    vectors (complete on the 4096 basis tuples of the product form, both
    sides being multilinear in the six vector slots), Q1(R) = Q1(A) with
    Q2(R) = Q1(B), the three corner product equations, and equal
    discriminants.
    """
    if A.coeffs[1] != A.coeffs[2] or A.coeffs[5] != A.coeffs[6]:
        raise InputError("first cube must be doubly symmetric")
    D = cube_disc(A)
    if any(cube_disc(X) != D for X in (B, C, R, S, T)):
        return False
    if assoc_form(R, 1) != assoc_form(A, 1):
        return False
    if assoc_form(R, 2) != assoc_form(B, 1):
        return False
    for X, i in ((R, 1), (S, 2), (T, 3)):
        lhs = assoc_form(B, i)(1, 0) * assoc_form(C, i)(1, 0)
        if lhs != assoc_form(A, i)(X.coeffs[4], X.coeffs[0]):
            return False

    F, G, H = phi(A), phi(B), phi(C)
    lhs_form = pair_form_product(G, H)
    favatar = F.avatar()
    rt = _table(R, 1)
    st = _table(S, 1)
    tt = _table(T, 1)
    e2 = ((1, 0), (0, 1))
    e4 = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
    zero2 = (0, 0)

    def halves(vec):
        return vec[:2], vec[2:]

    for x, y, z, u, v, w in iter_product(
        range(2), range(4), range(4), range(2), range(4), range(4)
    ):
        left = lhs_form[(x, y, z, u, v, w)]
        y1, y2 = halves(e4[y])
        z1, z2 = halves(e4[z])
        v1, v2 = halves(e4[v])
        w1, w2 = halves(e4[w])
        rho = _table_apply(rt, e2[x], e2[u])
        sv1 = _table_apply(st, y1, v1) if y1 != zero2 and v1 != zero2 else zero2
        tv2 = _table_apply(tt, y2, v2) if y2 != zero2 and v2 != zero2 else zero2
        sw1 = _table_apply(st, y1, w1) if y1 != zero2 and w1 != zero2 else zero2
        tw2 = _table_apply(tt, y2, w2) if y2 != zero2 and w2 != zero2 else zero2
        arg2 = (
            sv1[0] + tv2[0],
            sv1[1] + tv2[1],
            sw1[0] + tw2[0],
            sw1[1] + tw2[1],
        )
        sv1 = _table_apply(st, z1, v1) if z1 != zero2 and v1 != zero2 else zero2
        tv2 = _table_apply(tt, z2, v2) if z2 != zero2 and v2 != zero2 else zero2
        sw1 = _table_apply(st, z1, w1) if z1 != zero2 and w1 != zero2 else zero2
        tw2 = _table_apply(tt, z2, w2) if z2 != zero2 and w2 != zero2 else zero2
        arg3 = (
            sv1[0] + tv2[0],
            sv1[1] + tv2[1],
            sw1[0] + tw2[0],
            sw1[1] + tw2[1],
        )
        if left != favatar.eval((rho, arg2, arg3)):
            return False
    return True


_TRIPLES = tuple(combinations(range(6), 3))
_TRIPLE_INDEX = {t: n for n, t in enumerate(_TRIPLES)}


class SenaryAlt3:
    """Alternating 3-form on Z^6: twenty coefficients a_{ijk}, i<j<k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != 20:
            raise InputError("a senary alternating 3-form has 20 coefficients")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("SenaryAlt3 is immutable")

    def coeff(self, i: int, j: int, k: int) -> int:
        """a_{ijk} for arbitrary index order, with the alternating sign."""
        if len({i, j, k}) < 3:
            return 0
        sign = 1
        seq = [i, j, k]
        # three comparisons sort a 3-element list and track the parity
        for a, b in ((0, 1), (1, 2), (0, 1)):
            if seq[a] > seq[b]:
                seq[a], seq[b] = seq[b], seq[a]
                sign = -sign
        return sign * self.coeffs[_TRIPLE_INDEX[tuple(seq)]]

    def __eq__(self, other):
        return isinstance(other, SenaryAlt3) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"SenaryAlt3({self.coeffs})"

    def __call__(self, x, y, z):
        return senary_eval(self, x, y, z)


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def senary_eval(E: SenaryAlt3, x, y, z):
    """Sum over i<j<k of a_{ijk} times the 3x3 minor of rows x, y, z."""
    total = 0
    for n, (i, j, k) in enumerate(_TRIPLES):
        a = E.coeffs[n]
        if a:
            total += a * _det3(
                (
                    (x[i], x[j], x[k]),
                    (y[i], y[j], y[k]),
                    (z[i], z[j], z[k]),
                )
            )
    return total


def wedge222(A: Cube) -> SenaryAlt3:
    """Distribute the three tensor slots of a cube over the 2-blocks of
    Z^6: coefficient a_{ijk} of A lands on e_i ^ e_{2+j} ^ e_{4+k}."""
    coeffs = [0] * 20
    for i in (0, 1):
        for j in (0, 1):
            for k in (0, 1):
                coeffs[_TRIPLE_INDEX[(i, 2 + j, 4 + k)]] = A.coeff(i, j, k)
    return SenaryAlt3(coeffs)


def senary_identity_pair(D: int):
    """(E, E') for the identity class, from determinants over the module
    S + S + S with the interleaved basis (1,0,0),(tau,0,0),...,(0,0,tau).

    Each 3x3 determinant lies in S and splits as a' + a tau; the tau parts
    assemble the identity form (cross-checked against the wedge image of
    the identity cube) and the rational parts its companion.
    """
    if D == 0:
        raise InputError("discriminant must be nonzero")
    ring = ring_of_discriminant(D)
    one, tau = ring.one(), ring.tau()
    zero = ring.zero()
    basis = []
    for slot in range(3):
        for gen in (one, tau):
            vec = [zero, zero, zero]
            vec[slot] = gen
            basis.append(tuple(vec))
    a_parts, ap_parts = [], []
    for i, j, k in _TRIPLES:
        det = _det3((basis[i], basis[j], basis[k]))
        if not det.is_integral():
            raise InputError("determinant fell outside the ring")
        p, q = det.coords()
        ap_parts.append(int(p))
        a_parts.append(int(q))
    E = SenaryAlt3(a_parts)
    Ep = SenaryAlt3(ap_parts)
    assert E == wedge222(identity_cube(D))
    assert Ep == wedge222(companion_cube(identity_cube(D)))
    return E, Ep


def _senary_poly(E: SenaryAlt3, xs, ys, zs) -> Poly:
    """E(x, y, z) as a polynomial; xs, ys, zs are coordinate Polys."""
    nvars = xs[0].nvars
    total = Poly.const(nvars, 0)
    for n, (i, j, k) in enumerate(_TRIPLES):
        a = E.coeffs[n]
        if a:
            det = (
                xs[i] * (ys[j] * zs[k] - ys[k] * zs[j])
                - xs[j] * (ys[i] * zs[k] - ys[k] * zs[i])
                + xs[k] * (ys[i] * zs[j] - ys[j] * zs[i])
            )
            total = total + a * det
    return total


def _mult_table(D: int):
    """Pair table of the cube whose bilinear pair multiplies out
    (x1 + x2 tau)(u1 + u2 tau) in coordinates: components
    (x1 u1 + m x2 u2, x1 u2 + x2 u1 + eps x2 u2)."""
    eps = D % 4
    m = (D - eps) // 4
    return _table(Cube((1, 0, 0, m, 0, 1, 1, eps)), -1)


def _senary_sides(D: int, tab):
    """The two 36-variable polynomials the senary identity compares."""
    E, Ep = senary_identity_pair(D)
    eps = D % 4
    V = Poly.variables(36)
    xs, ys, zs = V[0:6], V[6:12], V[12:18]
    us, vs, ws = V[18:24], V[24:30], V[30:36]
    ex = _senary_poly(E, xs, ys, zs)
    epx = _senary_poly(Ep, xs, ys, zs)
    eu = _senary_poly(E, us, vs, ws)
    epu = _senary_poly(Ep, us, vs, ws)
    lhs = ex * epu + epx * eu + eps * ex * eu

    def pair_sum(avars, bvars):
        # the table pair applied blockwise and summed over the three blocks
        acc0 = Poly.const(36, 0)
        acc1 = Poly.const(36, 0)
        for blk in range(3):
            for s in (0, 1):
                for t in (0, 1):
                    prod = avars[2 * blk + s] * bvars[2 * blk + t]
                    acc0 = acc0 + tab[0][s][t] * prod
                    acc1 = acc1 + tab[1][s][t] * prod
        return (acc0, acc1)

    def column(bvars):
        out = []
        for rowvars in (xs, ys, zs):
            out.extend(pair_sum(rowvars, bvars))
        return out

    rhs = _senary_poly(E, column(us), column(vs), column(ws))
    return lhs, rhs


def verify_senary_identity(D: int) -> bool:
    lhs, rhs = _senary_sides(D, _mult_table(D))
    return lhs == rhs
