"""Shared generators and reusable property suites for the test modules.

Everything here is deterministic: every generator takes an explicit
``random.Random`` instance and the suites build their own seeded ones, so
a failing case can be replayed by seed alone.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from random import Random

from involution_forge import (
    Form,
    MultiVector,
    RationalFunction,
    VarTable,
    build_symplectic,
    codifferential,
    differential,
    exterior_derivative,
    jacobian_bracket,
    pairing,
    parse_ratfun,
    poisson_bracket,
    schouten,
    sharp,
    wedge,
)

# ---------------------------------------------------------------------------
# random generators


def random_polynomial(table: VarTable, rng: Random, terms: int = 3,
                      degree: int = 2, bound: int = 5) -> RationalFunction:
    """A random polynomial with small integer coefficients."""
    names = [table.names[i] for i in table.geometric_indices]
    total = RationalFunction.zero(table)
    for _ in range(terms):
        coeff = rng.randint(-bound, bound)
        if coeff == 0:
            continue
        mono = RationalFunction.constant(table, Fraction(coeff))
        for _ in range(rng.randint(0, degree)):
            mono = mono * parse_ratfun(rng.choice(names), table)
        total = total + mono
    return total


def random_nonzero_polynomial(table: VarTable, rng: Random, terms: int = 3,
                              degree: int = 2,
                              bound: int = 5) -> RationalFunction:
    while True:
        p = random_polynomial(table, rng, terms, degree, bound)
        if not p.is_zero():
            return p


def random_rational(table: VarTable, rng: Random) -> RationalFunction:
    num = random_polynomial(table, rng)
    den = random_nonzero_polynomial(table, rng, terms=2, degree=1, bound=3)
    return num / den


def random_alternating(table: VarTable, degree: int, rng: Random,
                       kind=Form, density: float = 0.6,
                       terms: int = 2):
    """A random form or multivector with polynomial coefficients."""
    geo = table.geometric_indices
    comps = {}
    for idx in itertools.combinations(geo, degree):
        if rng.random() > density:
            continue
        coeff = random_polynomial(table, rng, terms=terms, degree=1,
                                  bound=3)
        if not coeff.is_zero():
            comps[idx] = coeff
    return kind(table, degree, comps)


def random_form(table: VarTable, degree: int, rng: Random, **kw) -> Form:
    return random_alternating(table, degree, rng, kind=Form, **kw)


def random_multivector(table: VarTable, degree: int, rng: Random,
                       **kw) -> MultiVector:
    return random_alternating(table, degree, rng, kind=MultiVector, **kw)


def coordinate_jacobiator(Pi: MultiVector, i: int, j: int, k: int
                          ) -> RationalFunction:
    """Sum over cyclic permutations of {x_i, {x_j, x_k}}."""
    table = Pi.table
    coords = [parse_ratfun(table.names[m], table) for m in (i, j, k)]
    total = RationalFunction.zero(table)
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        inner = poisson_bracket(Pi, coords[b], coords[c])
        total = total + poisson_bracket(Pi, coords[a], inner)
    return total


# ---------------------------------------------------------------------------
# reusable property suites (shared by the unit modules and the acceptance
# gate, which re-runs them under a wall-clock budget)


def ring_field_suite(n: int = 200, seed: int = 11) -> None:
    """Commutative-ring axioms on polynomials and field axioms on
    quotients, on n random triples."""
    rng = Random(seed)
    table = VarTable.build(["x1", "x2", "x3"])
    one = RationalFunction.one(table)
    zero = RationalFunction.zero(table)
    for trial in range(n):
        a = random_polynomial(table, rng)
        b = random_polynomial(table, rng)
        c = random_polynomial(table, rng)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + zero == a
        assert a * one == a
        assert (a - a).is_zero()
        if trial % 4 == 0:
            q = random_rational(table, rng)
            r = random_rational(table, rng)
            assert (q + r) - r == q
            if not q.is_zero():
                assert q * (one / q) == one
            if not r.is_zero():
                assert (q / r) * r == q


def schwartz_zippel_suite(n: int = 40, seed: int = 23) -> None:
    """Structural equality must match evaluation: equal expressions agree
    at every sample point, distinct ones separate within a few draws."""
    from involution_forge import sample_point

    rng = Random(seed)
    table = VarTable.build(["x1", "x2", "x3"])
    for _ in range(n):
        a = random_polynomial(table, rng)
        b = random_polynomial(table, rng)
        same_path = (a + b) * (a + b)
        expanded = a * a + a * b * Fraction(2) + b * b
        assert same_path == expanded
        for _ in range(3):
            point = sample_point(table, [], rng)
            assert same_path.evaluate(point) == expanded.evaluate(point)
        perturbed = expanded + RationalFunction.one(table)
        assert same_path != perturbed
        separated = False
        for _ in range(5):
            point = sample_point(table, [], rng)
            if same_path.evaluate(point) != perturbed.evaluate(point):
                separated = True
                break
        assert separated


def exterior_laws_suite(n: int = 30, seed: int = 37) -> None:
    """Graded wedge laws, d^2 = 0, and the graded Leibniz rule."""
    rng = Random(seed)
    table = VarTable.build(["x1", "x2", "y1", "y2"])
    for _ in range(n):
        p = rng.randint(0, 2)
        q = rng.randint(0, 2)
        r = rng.randint(0, 2)
        a = random_form(table, p, rng)
        b = random_form(table, q, rng)
        c = random_form(table, r, rng)
        b_other = random_form(table, q, rng)
        sign = Fraction((-1) ** (p * q))
        assert wedge(a, b) == wedge(b, a) * sign
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
        assert wedge(a, b + b_other) == wedge(a, b) + wedge(a, b_other)
        if p % 2 == 1:
            assert wedge(a, a).is_zero()
        assert exterior_derivative(exterior_derivative(a)).is_zero()
        da_b = wedge(exterior_derivative(a), b)
        a_db = wedge(a, exterior_derivative(b)) * sign_of(p)
        assert exterior_derivative(wedge(a, b)) == da_b + a_db


def sign_of(p: int) -> Fraction:
    return Fraction((-1) ** p)


def schouten_jacobiator_suite(n: int = 50, seed: int = 41) -> None:
    """[P,P] against the coordinate Jacobiators on random bivectors.

    For every coordinate triple the pairing of dx_i^dx_j^dx_k with the
    Schouten square equals -2 times the cyclic Jacobiator sum, and the
    square vanishes exactly when every Jacobiator does.
    """
    rng = Random(seed)
    table = VarTable.build(["x1", "x2", "x3", "x4"])
    one = RationalFunction.one(table)
    x1 = parse_ratfun("x1", table)
    x2 = parse_ratfun("x2", table)
    x3 = parse_ratfun("x3", table)
    poisson_seen = 0
    non_poisson_seen = 0
    for trial in range(n):
        mode = trial % 5
        if mode in (0, 1):
            comps = {}
            for idx in itertools.combinations(range(4), 2):
                if rng.random() > 0.8:
                    continue
                coeff = random_polynomial(table, rng, terms=2, degree=2,
                                          bound=3)
                if not coeff.is_zero():
                    comps[idx] = coeff
            Pi = MultiVector(table, 2, comps)
        elif mode == 2:
            # canonical structure
            Pi = MultiVector(table, 2, {(0, 2): one, (1, 3): one})
        elif mode == 3:
            if trial % 2 == 0:
                # rotation-algebra structure in the first three
                # coordinates: {x1,x2}=x3, {x2,x3}=x1, {x1,x3}=-x2
                Pi = MultiVector(table, 2, {(0, 1): x3, (1, 2): x1,
                                            (0, 2): -x2})
            else:
                # constant coefficients always satisfy Jacobi
                comps = {}
                for idx in itertools.combinations(range(4), 2):
                    c = rng.randint(-3, 3)
                    if c:
                        comps[idx] = RationalFunction.constant(
                            table, Fraction(c))
                Pi = MultiVector(table, 2, comps)
        else:
            # decomposable X_f ^ X_g with commuting hamiltonians
            lam = MultiVector(table, 2, {(0, 2): one, (1, 3): one})
            f = x1 * x1 * Fraction(rng.randint(1, 3))
            g = x2 * Fraction(rng.randint(1, 3))
            anchor = build_symplectic(lam)
            Xf = sharp(anchor, differential(f, table))
            Xg = sharp(anchor, differential(g, table))
            Pi = wedge(Xf, Xg)
        square = schouten(Pi, Pi)
        all_zero = True
        for i, j, k in itertools.combinations(range(4), 3):
            jac = coordinate_jacobiator(Pi, i, j, k)
            probe = Form(table, 3, {(i, j, k): one})
            assert pairing(probe, square) == jac * Fraction(-2)
            if not jac.is_zero():
                all_zero = False
        assert square.is_zero() == all_zero
        if all_zero:
            poisson_seen += 1
        else:
            non_poisson_seen += 1
    assert poisson_seen >= 10
    assert non_poisson_seen >= 10


def sigma_equivalence_suite(n: int = 30, seed: int = 53) -> None:
    """sharp(sigma) satisfies Jacobi exactly when
    delta(sigma^sigma) = 2 sigma^delta(sigma), on random 2-forms in
    dimension four."""
    rng = Random(seed)
    table = VarTable.build(["x1", "x2", "y1", "y2"])
    one = RationalFunction.one(table)
    lam = MultiVector(table, 2, {(0, 2): one, (1, 3): one})
    anchor = build_symplectic(lam)
    jacobi_seen = 0
    broken_seen = 0
    for trial in range(n):
        mode = trial % 4
        if mode == 0:
            sigma = random_form(table, 2, rng)
        elif mode == 1:
            comps = {}
            for idx in itertools.combinations(range(4), 2):
                c = rng.randint(-3, 3)
                if c:
                    comps[idx] = RationalFunction.constant(
                        table, Fraction(c))
            sigma = Form(table, 2, comps)
        elif mode == 2:
            f = parse_ratfun("x1", table) ** 2 * Fraction(rng.randint(1, 3))
            g = parse_ratfun("x2", table) * Fraction(rng.randint(1, 3))
            sigma = wedge(differential(f, table),
                          differential(g, table))
        else:
            sigma = anchor.omega * Fraction(rng.randint(1, 4))
        P = sharp(anchor, sigma)
        jacobi_holds = schouten(P, P).is_zero()
        lhs = codifferential(anchor, wedge(sigma, sigma))
        rhs = wedge(sigma, codifferential(anchor, sigma)) * Fraction(2)
        identity_holds = (lhs - rhs).is_zero()
        assert jacobi_holds == identity_holds
        if jacobi_holds:
            jacobi_seen += 1
        else:
            broken_seen += 1
    assert jacobi_seen >= 10
    assert broken_seen >= 5


def jacobian_bracket_suite(n: int = 20, seed: int = 67) -> None:
    """Determinant brackets with a functional prefactor: antisymmetry,
    Leibniz, and the Jacobi identity on random instances."""
    rng = Random(seed)
    for trial in range(n):
        dim = 3 + trial % 3
        names = [f"x{i}" for i in range(1, dim + 1)]
        table = VarTable.build(names)
        one = RationalFunction.one(table)
        volume = Form(table, dim, {tuple(range(dim)): one})
        fixed = [random_polynomial(table, rng, terms=2, degree=1, bound=3)
                 for _ in range(dim - 2)]
        prefactor = random_nonzero_polynomial(table, rng, terms=2,
                                              degree=1, bound=2)
        g = random_polynomial(table, rng, terms=2, degree=2, bound=3)
        h = random_polynomial(table, rng, terms=2, degree=2, bound=3)
        m = random_polynomial(table, rng, terms=2, degree=2, bound=3)

        def bracket(u, v):
            return jacobian_bracket(fixed, prefactor, volume, u, v)

        assert bracket(g, h) == -bracket(h, g)
        assert bracket(g, h * m) == bracket(g, h) * m + h * bracket(g, m)
        cyclic = (bracket(g, bracket(h, m))
                  + bracket(h, bracket(m, g))
                  + bracket(m, bracket(g, h)))
        assert cyclic.is_zero()
