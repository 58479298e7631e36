"""Binary cubic forms and pairs of binary quadratic forms.

Both spaces sit inside the cube space through symmetrization: a cubic
a0 x^3 + 3 a1 x^2 y + 3 a2 x y^2 + a3 y^3 unfolds into the triply symmetric
cube [a0,a1,a1,a2,a1,a2,a2,a3], and a pair of quadratic forms with even
cross coefficients folds into a doubly symmetric cube.  Discriminants,
companions and identity elements all pull back from the cube layer; the
composition identities specific to these spaces are verified here by full
polynomial expansion.
"""

from __future__ import annotations

from .bqf import BQF, compose_dirichlet, principal_form, reduce as bqf_reduce
from .cubes import (
    Cube,
    assoc_form,
    assoc_forms,
    companion_cube,
    cube_disc,
    cube_variants,
    identity_cube,
    is_projective,
)
from .exact import InputError, Poly, UnsupportedDomainError
from .qring import OrientedIdeal, kelem_cube_root, ring_of_discriminant


class BinaryCubic:
    """a0 x^3 + 3 a1 x^2 y + 3 a2 x y^2 + a3 y^3.

    The inner coefficients are stored without their factor of three, so the
    unfolding into a cube is literal coefficient placement.
    """

    __slots__ = ("a0", "a1", "a2", "a3")

    def __init__(self, a0, a1, a2, a3):
        object.__setattr__(self, "a0", int(a0))
        object.__setattr__(self, "a1", int(a1))
        object.__setattr__(self, "a2", int(a2))
        object.__setattr__(self, "a3", int(a3))

    def __setattr__(self, name, value):
        raise AttributeError("BinaryCubic is immutable")

    @property
    def coeffs(self):
        return (self.a0, self.a1, self.a2, self.a3)

    def __call__(self, x, y):
        return (
            self.a0 * x**3
            + 3 * self.a1 * x**2 * y
            + 3 * self.a2 * x * y**2
            + self.a3 * y**3
        )

    def poly(self, nvars: int, ix: int, iy: int) -> Poly:
        x, y = Poly.var(nvars, ix), Poly.var(nvars, iy)
        return (
            self.a0 * x**3
            + 3 * self.a1 * x**2 * y
            + 3 * self.a2 * x * y**2
            + self.a3 * y**3
        )

    def __eq__(self, other):
        return isinstance(other, BinaryCubic) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return BinaryCubic(-self.a0, -self.a1, -self.a2, -self.a3)

    def __repr__(self):
        return f"BinaryCubic{self.coeffs}"


def cubic_embed(f: BinaryCubic) -> Cube:
    a0, a1, a2, a3 = f.coeffs
    return Cube((a0, a1, a1, a2, a1, a2, a2, a3))


def cubic_disc(f: BinaryCubic) -> int:
    a0, a1, a2, a3 = f.coeffs
    d = (
        -3 * a1 * a1 * a2 * a2
        + 4 * a0 * a2**3
        + 4 * a1**3 * a3
        - 6 * a0 * a1 * a2 * a3
        + a0 * a0 * a3 * a3
    )
    assert d == cube_disc(cubic_embed(f))
    return d


def cubic_q(f: BinaryCubic) -> BQF:
    """The single quadratic form shared by all three slicings of the cube."""
    q1, q2, q3 = assoc_forms(cubic_embed(f))
    assert q1 == q2 == q3
    return q1


def cubic_companion(f: BinaryCubic) -> BinaryCubic:
    c = companion_cube(cubic_embed(f)).coeffs
    assert c[1] == c[2] == c[4] and c[3] == c[5] == c[6]
    return BinaryCubic(c[0], c[1], c[3], c[7])


def cubicovariant(f: BinaryCubic) -> BinaryCubic:
    """The doubled covariant 2f' + eps*f; doubling keeps it integral."""
    eps = cubic_disc(f) % 4
    if eps not in (0, 1):
        raise InputError("cubic discriminant must be 0 or 1 mod 4")
    fp = cubic_companion(f)
    return BinaryCubic(*(2 * b + eps * a for a, b in zip(f.coeffs, fp.coeffs)))


def syzygy_check(f: BinaryCubic) -> bool:
    """f'^2 + eps f f' - m f^2 == Q_f(x,-y)^3, identically in (x, y)."""
    d = cubic_disc(f)
    eps = d % 4
    m = (d - eps) // 4
    fp = cubic_companion(f)
    q = cubic_q(f)
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    fpoly = f.poly(2, 0, 1)
    fppoly = fp.poly(2, 0, 1)
    qneg = q.a * x**2 - q.b * x * y + q.c * y**2
    return fppoly * fppoly + eps * fpoly * fppoly - m * fpoly * fpoly == qneg**3


def cubic_identity(D: int) -> BinaryCubic:
    if D % 4 == 0:
        f = BinaryCubic(0, 1, 0, D // 4)
    elif D % 4 == 1:
        f = BinaryCubic(0, 1, 1, (D + 3) // 4)
    else:
        raise InputError("discriminant must be 0 or 1 mod 4")
    assert cubic_embed(f) == identity_cube(D)
    return f


def _variant_pair_polys(X: Cube, variant: int, avars, bvars):
    """The two bilinear forms of a cube variant, as polynomials.

    Component i is sum_{s,t} V.coeff(i,s,t) * a_s * b_t for the chosen
    involution image V of X; this is the vector the composition identities
    feed into their outer form.
    """
    V = cube_variants(X)[variant] if variant >= 0 else X
    out = []
    for i in (0, 1):
        comp = Poly.const(avars[0].nvars, 0)
        for s in (0, 1):
            for t in (0, 1):
                comp = comp + V.coeff(i, s, t) * avars[s] * bvars[t]
        out.append(comp)
    return tuple(out)


def verify_cubic_composition(
    f: BinaryCubic, g: BinaryCubic, h: BinaryCubic, R: Cube
) -> bool:
    """Exact check that R witnesses [f] + [g] + [h] = [id].

    Conditions: the four-variable identity (g*h)((x,y);(u,v)) =
    f(R-sigma((x,y),(u,v))), the form matches Q1(R) = Q_f and Q2(R) = Q_g,
    the corner product equation Q_g(1,0) Q_h(1,0) = Q_f(r211, r111), and
    equal discriminants throughout.
    """
    D = cubic_disc(f)
    if cubic_disc(g) != D or cubic_disc(h) != D or cube_disc(R) != D:
        return False
    eps = D % 4
    qf, qg, qh = cubic_q(f), cubic_q(g), cubic_q(h)
    if assoc_form(R, 1) != qf or assoc_form(R, 2) != qg:
        return False
    if qg(1, 0) * qh(1, 0) != qf(R.coeffs[4], R.coeffs[0]):
        return False

    xy = (Poly.var(4, 0), Poly.var(4, 1))
    uv = (Poly.var(4, 2), Poly.var(4, 3))
    gp = g.poly(4, 0, 1)
    hp = h.poly(4, 2, 3)
    gcp = cubic_companion(g).poly(4, 0, 1)
    hcp = cubic_companion(h).poly(4, 2, 3)
    lhs = gp * hcp + gcp * hp + eps * gp * hp
    r0, r1 = _variant_pair_polys(R, 1, xy, uv)
    a0, a1, a2, a3 = f.coeffs
    rhs = a0 * r0**3 + 3 * a1 * r0**2 * r1 + 3 * a2 * r0 * r1**2 + a3 * r1**3
    return lhs == rhs


def _cubic_ideal_data(f: BinaryCubic):
    """(ring, I_f, delta_f) built from the two inner corner coordinates.

    alpha and beta are the tau-lifted inner coefficients of f and its
    companion; their span must be tau-stable (checked downstream) and the
    generator product delta has norm N(I)^3, which balances the triple
    (I, I, delta^{-1} I).
    """
    D = cubic_disc(f)
    ring = ring_of_discriminant(D)
    fp = cubic_companion(f)
    alpha = ring.element(fp.a1, f.a1)
    beta = ring.element(fp.a2, f.a2)
    if alpha.is_zero() or beta.is_zero():
        raise InputError("cubic corner data is degenerate")
    try:
        ideal = OrientedIdeal.from_ordered_basis(ring, (alpha, beta))
    except InputError as exc:
        raise InputError(f"cubic corner data spans no ideal: {exc}") from exc
    delta = alpha * beta
    if ideal.norm() ** 3 != delta.norm():
        raise InputError("cubic corner data is not balanced")
    return ring, ideal, delta


class CubicComposition:
    """Class-level composition data for two cubics of one discriminant.

    Holds the product ideal and the product of the two delta generators;
    ``sums_to_identity_with`` settles whether a third cubic closes the
    triple to the identity class.
    """

    __slots__ = ("f", "g", "ring", "ideal", "delta")

    def __init__(self, f, g, ring, ideal, delta):
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "ideal", ideal)
        object.__setattr__(self, "delta", delta)

    def __setattr__(self, name, value):
        raise AttributeError("CubicComposition is immutable")

    def sums_to_identity_with(self, h: BinaryCubic) -> bool:
        D = self.ring.D
        if cubic_disc(h) != D:
            raise InputError("discriminant mismatch")
        _, _, delta_h = _cubic_ideal_data(h)
        qtot = compose_dirichlet(
            compose_dirichlet(cubic_q(self.f), cubic_q(self.g)), cubic_q(h)
        )
        principal = bqf_reduce(principal_form(D)).canonical
        if bqf_reduce(qtot).canonical != principal:
            return False
        # delta is only pinned down up to cubes and unit factors
        total = self.delta * delta_h
        return any(
            kelem_cube_root(total * u) is not None
            for u in self.ring.torsion_units()
        )


def cubic_class_compose(f: BinaryCubic, g: BinaryCubic) -> CubicComposition:
    D = cubic_disc(f)
    if cubic_disc(g) != D:
        raise InputError("discriminant mismatch")
    if D >= 0:
        raise UnsupportedDomainError(
            "class composition of cubics is implemented for negative "
            "discriminants only"
        )
    if not (is_projective(cubic_embed(f)) and is_projective(cubic_embed(g))):
        raise InputError("cubic is not projective")
    ring, ideal_f, delta_f = _cubic_ideal_data(f)
    _, ideal_g, delta_g = _cubic_ideal_data(g)
    return CubicComposition(f, g, ring, ideal_f * ideal_g, delta_f * delta_g)


class PairBQF:
    """A pair of integral binary quadratic forms with even cross terms."""

    __slots__ = ("f1", "f2")

    def __init__(self, f1: BQF, f2: BQF):
        if f1.b % 2 or f2.b % 2:
            raise InputError("pair members need even middle coefficients")
        object.__setattr__(self, "f1", f1)
        object.__setattr__(self, "f2", f2)

    def __setattr__(self, name, value):
        raise AttributeError("PairBQF is immutable")

    def __call__(self, x, y):
        """x1 F1(y1, y2) + x2 F2(y1, y2) for 2-vectors x and y."""
        x1, x2 = x
        y1, y2 = y
        return x1 * self.f1(y1, y2) + x2 * self.f2(y1, y2)

    def __eq__(self, other):
        return (
            isinstance(other, PairBQF)
            and self.f1 == other.f1
            and self.f2 == other.f2
        )

    def __hash__(self):
        return hash((self.f1, self.f2))

    def __repr__(self):
        return f"PairBQF({self.f1!r}, {self.f2!r})"


def pair_embed(F: PairBQF) -> Cube:
    a, b2, c = F.f1.a, F.f1.b, F.f1.c
    d, e2, f = F.f2.a, F.f2.b, F.f2.c
    return Cube((a, b2 // 2, b2 // 2, c, d, e2 // 2, e2 // 2, f))


def pair_disc(F: PairBQF) -> int:
    return cube_disc(pair_embed(F))


def pair_identity(D: int) -> PairBQF:
    if D % 4 == 0:
        F = PairBQF(BQF(0, 2, 0), BQF(1, 0, D // 4))
    elif D % 4 == 1:
        F = PairBQF(BQF(0, 2, 1), BQF(1, 2, (D + 3) // 4))
    else:
        raise InputError("discriminant must be 0 or 1 mod 4")
    assert pair_embed(F) == identity_cube(D)
    return F


def pair_companion(F: PairBQF) -> PairBQF:
    c = companion_cube(pair_embed(F)).coeffs
    assert c[1] == c[2] and c[5] == c[6]
    return PairBQF(BQF(c[0], 2 * c[1], c[3]), BQF(c[4], 2 * c[5], c[7]))


def verify_pair_composition(
    F: PairBQF, G: PairBQF, H: PairBQF, R: Cube, S: Cube
) -> bool:
    """Exact check that (R, S) witnesses [F] + [G] + [H] = [id].

    The eight-variable identity compares (G*H)((x,y);(u,v)) against
    F(R-sigma(x,u), S-sigma(y,v)); both witness slots carry the sigma
    involution, the reading fixed once by the discriminant -31 golden
    composition.  The form conditions Q1(R) = Q1(F), Q2(R) = Q1(G) and both
    corner product equations are checked alongside.
    """
    D = pair_disc(F)
    if pair_disc(G) != D or pair_disc(H) != D:
        return False
    if cube_disc(R) != D or cube_disc(S) != D:
        return False
    eps = D % 4
    AF, AG, AH = pair_embed(F), pair_embed(G), pair_embed(H)
    if assoc_form(R, 1) != assoc_form(AF, 1):
        return False
    if assoc_form(R, 2) != assoc_form(AG, 1):
        return False
    if assoc_form(AG, 1)(1, 0) * assoc_form(AH, 1)(1, 0) != assoc_form(AF, 1)(
        R.coeffs[4], R.coeffs[0]
    ):
        return False
    if assoc_form(AG, 2)(1, 0) * assoc_form(AH, 2)(1, 0) != assoc_form(AF, 2)(
        S.coeffs[4], S.coeffs[0]
    ):
        return False

    xv = (Poly.var(8, 0), Poly.var(8, 1))
    yv = (Poly.var(8, 2), Poly.var(8, 3))
    uv = (Poly.var(8, 4), Poly.var(8, 5))
    vv = (Poly.var(8, 6), Poly.var(8, 7))

    def pair_poly(P, xvars, yvars):
        return xvars[0] * (
            P.f1.a * yvars[0] ** 2
            + P.f1.b * yvars[0] * yvars[1]
            + P.f1.c * yvars[1] ** 2
        ) + xvars[1] * (
            P.f2.a * yvars[0] ** 2
            + P.f2.b * yvars[0] * yvars[1]
            + P.f2.c * yvars[1] ** 2
        )

    gp = pair_poly(G, xv, yv)
    hp = pair_poly(H, uv, vv)
    gcp = pair_poly(pair_companion(G), xv, yv)
    hcp = pair_poly(pair_companion(H), uv, vv)
    lhs = gp * hcp + gcp * hp + eps * gp * hp

    rx = _variant_pair_polys(R, 1, xv, uv)
    sy = _variant_pair_polys(S, 1, yv, vv)
    rhs = rx[0] * (
        F.f1.a * sy[0] ** 2 + F.f1.b * sy[0] * sy[1] + F.f1.c * sy[1] ** 2
    ) + rx[1] * (
        F.f2.a * sy[0] ** 2 + F.f2.b * sy[0] * sy[1] + F.f2.c * sy[1] ** 2
    )
    return lhs == rhs
