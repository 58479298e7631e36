import random

import pytest

from cubecomp.bqf import (
    BQF,
    enumerate_class_group,
    ideal_class_equal,
    principal_form,
    reduce,
)
from cubecomp.cubes import (
    BalancedTriple,
    Cube,
    assoc_form,
    assoc_forms,
    companion_L,
    companion_cube,
    cube_class_compose,
    cube_disc,
    cube_to_triple,
    cube_variants,
    dual_cubes_solve,
    gamma_act,
    identity_cube,
    is_projective,
    lemmermeyer_identity,
    slices,
    triple_to_cube,
    verify_cube_composition,
    verify_cube_composition_iota,
)
from cubecomp.exact import InputError, UnsupportedDomainError
from cubecomp.qring import KElem, OrientedIdeal, QuadraticRing
from tests.worked_examples import (
    CUBE_A,
    CUBE_B,
    CUBE_C,
    CUBE_FORMS,
    CUBE_R,
    CUBE_S,
    CUBE_T,
)


def _random_cube(rng, bound=20):
    return Cube([rng.randint(-bound, bound) for _ in range(8)])


def _random_nondeg_cube(rng, bound=20):
    while True:
        A = _random_cube(rng, bound)
        if cube_disc(A) != 0:
            return A


# ----- slicing and associated forms ---------------------------------------


def test_slices_reassemble_the_cube():
    A = Cube(range(8))
    M, N = slices(A, 0)
    assert M == ((0, 1), (2, 3)) and N == ((4, 5), (6, 7))


def test_worked_example_disc_m47_forms():
    for name, X in (("A", CUBE_A), ("B", CUBE_B), ("C", CUBE_C)):
        assert assoc_forms(X) == CUBE_FORMS[name]
        assert cube_disc(X) == -47
        assert is_projective(X)


def test_three_assoc_forms_share_disc():
    rng = random.Random(31)
    for _ in range(100):
        A = _random_cube(rng)
        d1, d2, d3 = (q.disc() for q in assoc_forms(A))
        assert d1 == d2 == d3 == cube_disc(A)


def test_identity_cube_forms():
    A = identity_cube(-47)
    assert assoc_forms(A) == (BQF(1, -1, 12),) * 3
    # same class as the principal form even though the sign of b differs
    assert reduce(BQF(1, -1, 12)).canonical == principal_form(-47)
    with pytest.raises(InputError):
        identity_cube(-5)


def test_gamma_action_preserves_disc_and_form_classes():
    rng = random.Random(32)
    shears = (((1, 0), (0, 1)), ((1, 1), (0, 1)), ((1, 0), (-1, 1)),
              ((0, -1), (1, 0)), ((2, 1), (1, 1)))
    checked = 0
    while checked < 60:
        A = _random_nondeg_cube(rng, 9)
        d = cube_disc(A)
        if d > 0 and int(d**0.5 + 0.5) ** 2 == d:
            continue  # square discs fall outside the reduction theory
        g = tuple(shears[rng.randrange(len(shears))] for _ in range(3))
        B = gamma_act(A, *g)
        assert cube_disc(B) == d
        for i in (1, 2, 3):
            lhs = reduce(assoc_form(B, i)).canonical
            assert lhs == reduce(assoc_form(A, i)).canonical
        checked += 1


def test_variant_involutions():
    rng = random.Random(33)
    for _ in range(30):
        A = _random_cube(rng)
        plainflip, sigma, tilde = cube_variants(A)
        # the half-swap composed with itself is the identity
        assert cube_variants(plainflip)[0] == A
        assert cube_variants(tilde)[2] == A
        # sigma twice is global negation
        assert cube_variants(sigma)[1] == Cube([-c for c in A.coeffs])


# ----- companion ----------------------------------------------------------


def test_companion_interplay_with_l_matrices():
    # A'(L_i applied in slot i) + eps*A' = ((D-eps)/4) * A, every slot;
    # the eps term drops out exactly when D is 0 mod 4
    rng = random.Random(34)
    checked = 0
    while checked < 60:
        A = _random_cube(rng, 9)
        D = cube_disc(A)
        if D == 0:
            continue
        eps = D % 4
        m = (D - eps) // 4
        fa = A.trilinear()
        fap = companion_cube(A).trilinear()
        rhs = fa.scale(m)
        for slot, L in enumerate(companion_L(A)):
            lhs = fap.substitute(slot, L)
            if eps:
                lhs = lhs + fap.scale(eps)
            assert lhs == rhs
        if eps == 0:
            assert fap.substitute(0, companion_L(A)[0]) == rhs
        checked += 1


# ----- the identity carried by every cube ---------------------------------


def test_gauss_instance_on_worked_cubes():
    for X in (CUBE_A, CUBE_B, CUBE_C, CUBE_R, CUBE_S, CUBE_T):
        _, _, ok = lemmermeyer_identity(X)
        assert ok


def test_gauss_instance_on_random_cubes():
    rng = random.Random(35)
    for _ in range(150):
        _, _, ok = lemmermeyer_identity(_random_cube(rng))
        assert ok


# ----- composition verification -------------------------------------------


def test_worked_composition_verifies():
    res = verify_cube_composition(CUBE_A, CUBE_B, CUBE_C, CUBE_R, CUBE_S, CUBE_T)
    assert res.ok and not res.reasons


def test_alternate_involution_form_of_the_identity():
    # whenever the sigma reading holds, the flipped reading holds as well
    assert verify_cube_composition_iota(
        CUBE_A, CUBE_B, CUBE_C, CUBE_R, CUBE_S, CUBE_T
    )


def test_perturbed_witness_fails_with_tuple_reason():
    for pos in range(8):
        coeffs = list(CUBE_R.coeffs)
        coeffs[pos] += 1
        res = verify_cube_composition(
            CUBE_A, CUBE_B, CUBE_C, Cube(coeffs), CUBE_S, CUBE_T
        )
        assert not res.ok
        assert any("basis tuple" in r for r in res.reasons)


def test_perturbed_inputs_fail():
    for pos in (0, 3, 7):
        coeffs = list(CUBE_B.coeffs)
        coeffs[pos] -= 1
        res = verify_cube_composition(
            CUBE_A, Cube(coeffs), CUBE_C, CUBE_R, CUBE_S, CUBE_T
        )
        assert not res.ok


# ----- cubes <-> balanced triples -----------------------------------------


def test_triple_round_trip_on_worked_cubes():
    for X in (CUBE_A, CUBE_B, CUBE_C):
        assert triple_to_cube(cube_to_triple(X)) == X


def test_triple_round_trip_random_including_nonprojective():
    rng = random.Random(36)
    seen_nonprojective = False
    for _ in range(40):
        A = _random_nondeg_cube(rng)
        seen_nonprojective = seen_nonprojective or not is_projective(A)
        assert triple_to_cube(cube_to_triple(A)) == A
    assert seen_nonprojective


def test_identity_cube_triple_is_principal():
    t = cube_to_triple(identity_cube(-47))
    unit = OrientedIdeal.unit_ideal(t.ring)
    for ideal in t.ideals:
        assert ideal_class_equal(ideal, unit)


def test_balanced_triple_rejects_norm_imbalance():
    ring = QuadraticRing(-47)
    one, tau = ring.one(), ring.tau()
    with pytest.raises(InputError):
        BalancedTriple(ring, (((one + one), tau), (one, tau), (one, tau)))


def test_rescaled_triple_gives_equivalent_cube():
    t = cube_to_triple(CUBE_A)
    ring = t.ring
    kappa = KElem(ring, 1, 1)
    bases = [list(p) for p in t.bases]
    bases[0] = [b * kappa for b in bases[0]]
    bases[1] = [b / kappa for b in bases[1]]
    A2 = triple_to_cube(BalancedTriple(ring, bases))
    assert cube_disc(A2) == -47
    tbl = enumerate_class_group(-47)
    for i in (1, 2, 3):
        assert tbl.index_of(assoc_form(A2, i)) == tbl.index_of(
            assoc_form(CUBE_A, i)
        )


def test_degenerate_cube_has_no_triple():
    with pytest.raises(InputError):
        cube_to_triple(Cube((1, 0, 0, 0, 0, 0, 0, 0)))


# ----- class arithmetic and the dual solver -------------------------------


def test_compose_with_identity_class():
    tbl = enumerate_class_group(-47)
    Aid = identity_cube(-47)
    for X in (CUBE_A, CUBE_B, CUBE_C):
        Y = cube_class_compose(Aid, X)
        for i in (1, 2, 3):
            assert tbl.index_of(assoc_form(Y, i)) == tbl.index_of(
                assoc_form(X, i)
            )


def test_compose_matches_form_table():
    tbl = enumerate_class_group(-47)
    Y = cube_class_compose(CUBE_A, CUBE_B)
    i1 = tbl.index_of(assoc_form(CUBE_A, 1))
    i2 = tbl.index_of(assoc_form(CUBE_B, 1))
    assert tbl.index_of(assoc_form(Y, 1)) == tbl.compose(i1, i2)


def test_compose_positive_disc_unsupported():
    A = Cube((0, -1, -1, -1, 1, 1, 0, 2))
    with pytest.raises(UnsupportedDomainError):
        cube_class_compose(A, A)


def test_dual_solver_on_worked_triple():
    w = dual_cubes_solve(CUBE_A, CUBE_B, CUBE_C)
    assert verify_cube_composition(CUBE_A, CUBE_B, CUBE_C, *w.cubes()).ok


def test_dual_solver_on_principal_triple():
    Aid = identity_cube(-47)
    w = dual_cubes_solve(Aid, Aid, Aid)
    pr = reduce(principal_form(-47)).canonical
    for X in w.cubes():
        for i in (1, 2, 3):
            assert reduce(assoc_form(X, i)).canonical == pr


def test_dual_solver_rejects_noncomposable():
    with pytest.raises(InputError):
        dual_cubes_solve(CUBE_A, CUBE_A, CUBE_A)
