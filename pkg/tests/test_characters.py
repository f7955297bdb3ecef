import random

import pytest

from padicdist.characters import (
    DirichletCharacter,
    gauss_sum,
    gauss_sum_guard,
    inverse_gauss_sum,
    least_primitive_root,
    wild_dlog,
)
from padicdist.cyclo_field import field


def all_characters(p, n):
    for j in range(p - 1):
        for u in range(p**n):
            yield DirichletCharacter(p, n, j, u)


def test_least_primitive_roots():
    # least primitive roots mod p^2, checked against the multiplicative order
    for p, g in [(3, 2), (5, 2), (7, 3), (11, 2), (13, 2)]:
        assert least_primitive_root(p) == g
        order = next(k for k in range(1, p * p) if pow(g, k, p * p) == 1)
        assert order == p * (p - 1)


def test_wild_dlog_table():
    for a in range(1, 125):
        if a % 5:
            d = wild_dlog(a, 5, 2)
            w = pow(a, 5**2, 125)  # the Teichmuller part, mod 125
            assert a * pow(w, -1, 125) % 125 == pow(6, d, 125)


def test_trivial_character_and_parity():
    ctx = field(5, 1)
    triv = DirichletCharacter(5, 1)
    assert all(triv.value(a, ctx) == 1 for a in range(1, 25) if a % 5)
    for j in range(4):
        phi = DirichletCharacter(5, 1, j, 3)
        assert phi.value(-1, ctx) == phi.parity() == (-1) ** j


def test_wild_generator_value():
    ctx = field(5, 1)
    phi = DirichletCharacter(5, 1, 0, 1)
    assert phi.value(6, ctx) == ctx.zeta(1, 5)
    assert phi.value(10, ctx).is_zero()


def test_quadratic_character_is_legendre():
    ctx = field(5, 0)
    chi = DirichletCharacter(5, 0, 2)
    for a in range(1, 5):
        legendre = 1 if pow(a, 2, 5) == 1 else -1
        assert chi.value(a, ctx) == legendre


def test_multiplicativity_random_pairs():
    rng = random.Random(0)
    for _ in range(500):
        p = rng.choice([3, 5])
        n = rng.choice([0, 1])
        ctx = field(p, n)
        phi = DirichletCharacter(p, n, rng.randrange(p - 1), rng.randrange(p**n))
        a, b = rng.randrange(1, 10**6), rng.randrange(1, 10**6)
        assert phi.value(a * b, ctx) == phi.value(a, ctx) * phi.value(b, ctx)


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (3, 2)])
def test_conductor_detection(p, n):
    ctx = field(p, n)
    mod = p ** (n + 1)
    for phi in all_characters(p, n):
        f = phi.conductor()
        if f == 1:
            continue
        units = [a for a in range(1, mod) if a % p]
        # constant on 1 + f Z, not on 1 + (f/p) Z
        assert all(phi.value(a, ctx) == phi.value(a * (1 + f) % mod, ctx) for a in units)
        if f > p:
            assert any(phi.value(a, ctx) != phi.value(a * (1 + f // p) % mod, ctx) for a in units)
        else:
            assert any(phi.value(a, ctx) != 1 for a in units)


def test_conductor_formula():
    assert DirichletCharacter(5, 2, 0, 0).conductor() == 1
    assert DirichletCharacter(5, 2, 2, 0).conductor() == 5
    assert DirichletCharacter(5, 2, 0, 5).conductor() == 25
    assert DirichletCharacter(5, 2, 1, 1).conductor() == 125


def test_gauss_sum_quadratic():
    ctx = field(5, 0)
    chi = DirichletCharacter(5, 0, 2)
    tau = gauss_sum(chi, ctx)
    # direct four-term sum with Legendre symbol values
    z = ctx.zeta()
    direct = z - z**2 - z**3 + z**4
    assert tau == direct
    assert tau * tau == 5


@pytest.mark.parametrize("p,n", [(3, 0), (3, 1), (3, 2), (5, 0), (5, 1), (5, 2)])
def test_gauss_identity_all_characters(p, n):
    ctx = field(p, n)
    for phi in all_characters(p, n):
        if phi.conductor() == 1:
            with pytest.raises(ValueError):
                gauss_sum(phi, ctx)
            continue
        assert gauss_sum_guard(phi, ctx).is_zero()


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_gauss_sum_valuation_wild(p, n):
    # (n+1)e/2 whenever the conductor is p^(n+1) with n >= 1
    ctx = field(p, n)
    for phi in all_characters(p, n):
        if phi.conductor() == p ** (n + 1):
            assert gauss_sum(phi, ctx).pi_valuation() * 2 == (n + 1) * ctx.e


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_gauss_sum_valuation_tame_is_stickelberger(p):
    # for conductor p the two valuations differ: v_pi(tau(omega^j)) = p - 1 - j
    ctx = field(p, 0)
    for j in range(1, p - 1):
        assert gauss_sum(DirichletCharacter(p, 0, j), ctx).pi_valuation() == p - 1 - j


def test_gauss_sum_conjugate():
    # sigma_(-1) inverts the wild values but fixes omega^j in Z_p:
    # sigma_(-1) tau(chi psi) = chi(-1) tau(chi conj(psi))
    ctx = field(5, 1)
    for phi in all_characters(5, 1):
        if phi.conductor() > 1:
            other = phi.tame * phi.wild.conj()
            assert gauss_sum(phi, ctx).galois(-1) == gauss_sum(other, ctx) * phi.parity()


def test_gauss_sum_conjugate_complex_embedding():
    # in C (all values conjugated) the textbook identity tau(conj phi) = phi(-1) conj(tau(phi))
    import cmath
    p, n = 5, 1
    f = p ** (n + 1)
    g = least_primitive_root(p)
    dlog = {pow(g, k, f): k for k in range(f - f // p)}
    for k0 in range(1, f - f // p):
        def phi(a, k0=k0):
            return cmath.exp(2j * cmath.pi * k0 * dlog[a % f] / (f - f // p)) if a % p else 0
        tau = sum(phi(a) * cmath.exp(2j * cmath.pi * a / f) for a in range(1, f))
        tau_bar = sum(phi(a).conjugate() * cmath.exp(2j * cmath.pi * a / f) for a in range(1, f))
        assert abs(tau_bar - phi(-1) * tau.conjugate()) < 1e-9


def test_inverse_gauss_sum():
    ctx = field(3, 1)
    phi = DirichletCharacter(3, 1, 1, 2)
    assert inverse_gauss_sum(phi, ctx) * gauss_sum(phi, ctx) == 1


def test_parse_and_str():
    phi = DirichletCharacter.parse("omega^2*psi^1@5^2")
    assert (phi.p, phi.n, phi.j, phi.u) == (5, 1, 2, 1)
    assert DirichletCharacter.parse(str(phi)) == phi
    with pytest.raises(ValueError):
        DirichletCharacter.parse("chi^2")


def test_product_and_conj():
    a = DirichletCharacter(5, 1, 1, 2)
    b = DirichletCharacter(5, 1, 3, 4)
    assert a * b == DirichletCharacter(5, 1, 0, 1)
    assert a * a.conj() == DirichletCharacter(5, 1)
    assert a.tame * a.wild == a
