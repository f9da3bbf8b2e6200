"""Casimir polynomials, sigma conditions, recursion relations, the ansatz
solver, pencil assembly, and the closed-form bracket.

A family of r+k functions on a 2r+k dimensional table is organized by a
partition into k Casimir polynomials F^i(lambda) = lambda^{r_i} f^i_0 + ...
+ f^i_{r_i} (leading coefficient first, every family entry used exactly
once).  The sigma pair (sigma0, sigma1) of 2-forms, constrained by the
annihilator and recursion conditions, is turned into the bivector pencil
Pi_lambda = Pi1 - lambda Pi0 by the anchor's sharp; in odd dimension all of
this happens on the lifted table and is pushed back down at the end.

Identities in lambda are decided coefficient-wise, never by sampling
lambda; genericity statements (independence, maximal rank, nonvanishing
leading and trailing coefficients) are certified at sampled rational
points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from random import Random

from .anchor import (
    CosymplecticAnchor,
    LiftedAnchor,
    SymplecticAnchor,
    bivector_sharp,
    codifferential,
    decompose_prime,
    full_matrix,
    hamiltonian_vf,
    migrate_alternating,
    poisson_bracket,
    reduce_bivector,
)
from .errors import (
    ConditionFailed,
    DegenerateLeading,
    DegenerateTrailing,
    DegenerateVolume,
    DegreeError,
    DimensionMismatch,
    NonExactDivision,
    RankDrop,
    RankTooSmall,
    SpecError,
)
from .exterior import (
    Form,
    MultiVector,
    differential,
    interior,
    pairing,
    wedge,
    wedge_power,
)
from .linalg import rank_at_point, rref, nullspace, solve_linear
from .report import Report
from .symexpr import (
    Polynomial,
    RationalFunction,
    SAMPLE_RETRIES,
    VarKind,
    VarTable,
    coefficients_in,
    migrate_ratfun,
    parse_ratfun,
    sample_point,
)


def _as_function(table: VarTable, value) -> RationalFunction:
    if isinstance(value, str):
        return parse_ratfun(value, table)
    if isinstance(value, Polynomial):
        return RationalFunction.from_polynomial(value)
    if isinstance(value, RationalFunction):
        table.require_same(value.table)
        return value
    return RationalFunction.constant(table, value)


# --- the function family and its partition -----------------------------------


class FunctionFamily:
    """Named functions in prescribed involution, with the integers r, k, l
    implied by |entries| = r+k and dim = 2r+k."""

    __slots__ = ("table", "names", "entries", "r", "k", "l")

    def __init__(self, table: VarTable, entries):
        named = []
        seen = set()
        for name, value in entries:
            if name in seen:
                raise SpecError(f"family entry {name!r} repeated")
            seen.add(name)
            named.append((name, _as_function(table, value)))
        count = len(named)
        r = table.dim - count
        k = 2 * count - table.dim
        if r < 0 or k < 0:
            raise SpecError(
                f"{count} functions on a {table.dim}-dimensional table "
                "fit no 2r+k split"
            )
        for name, value in named:
            for bad in (table.pencil_index, table.appended_index):
                if bad is not None and value.involves(bad):
                    raise SpecError(
                        f"family entry {name!r} involves the reserved "
                        f"variable {table.names[bad]!r}"
                    )
        self.table = table
        self.names = tuple(name for name, _ in named)
        self.entries = dict(named)
        self.r = r
        self.k = k
        self.l = k // 2

    def entry(self, name: str) -> RationalFunction:
        try:
            return self.entries[name]
        except KeyError:
            raise SpecError(f"no family entry named {name!r}") from None

    def functions(self):
        return [self.entries[name] for name in self.names]

    def independence_point(self, rng: Random, retries: int = SAMPLE_RETRIES):
        """A rational point where the family Jacobian has full rank r+k."""
        table = self.table
        geo = table.geometric_indices
        guards = [f.den for f in self.entries.values()]
        rows = [
            [f.derivative(i) for i in geo] for f in self.functions()
        ]
        want = self.r + self.k
        for _ in range(retries):
            point = sample_point(table, guards, rng, retries)
            if rank_at_point(rows, point) == want:
                return point
        raise RankDrop(
            f"family Jacobian never reached rank {want} at sampled points"
        )


def build_family(table: VarTable, entries, seed: int = 0) -> FunctionFamily:
    """FunctionFamily with independence certified at a sampled point."""
    family = FunctionFamily(table, entries)
    family.independence_point(Random(seed))
    return family


@dataclass(frozen=True)
class CasimirPolynomial:
    """Ordered entry names, leading coefficient of lambda^{r_i} first."""

    names: tuple

    def __init__(self, names):
        object.__setattr__(self, "names", tuple(names))
        if not self.names:
            raise SpecError("a Casimir polynomial needs at least one entry")

    @property
    def degree(self) -> int:
        return len(self.names) - 1


def check_partition(family: FunctionFamily, partition) -> None:
    """Every entry used exactly once; Sum r_i = r; k polynomials."""
    used = []
    for cp in partition:
        used.extend(cp.names)
    if sorted(used) != sorted(family.names):
        raise SpecError(
            "partition must use every family entry exactly once; got "
            f"{used} for entries {list(family.names)}"
        )
    total = sum(cp.degree for cp in partition)
    if total != family.r:
        raise SpecError(
            f"partition degrees sum to {total}, expected r = {family.r}"
        )
    if len(partition) != family.k:
        raise SpecError(
            f"partition has {len(partition)} polynomials, expected "
            f"k = {family.k}"
        )


def casimir_function(family: FunctionFamily, cp: CasimirPolynomial
                     ) -> RationalFunction:
    """F^i(lambda) as a rational function over the family's table."""
    table = family.table
    if cp.degree > 0 and table.pencil_index is None:
        raise SpecError(
            "the table declares no pencil parameter but the partition "
            "has positive degree"
        )
    total = RationalFunction.zero(table)
    if table.pencil_index is not None:
        lam = RationalFunction.variable(
            table, table.names[table.pencil_index]
        )
    for j, name in enumerate(cp.names):
        piece = family.entry(name)
        power = cp.degree - j
        if power:
            piece = piece * lam**power
        total = total + piece
    return total


# --- distributions and annihilators ------------------------------------------


@dataclass
class Distribution:
    """Finitely many generating vector fields."""

    generators: list

    @property
    def table(self):
        return self.generators[0].table


def _reference(anchor):
    """The symplectic side used for sharps and the codifferential."""
    if isinstance(anchor, LiftedAnchor):
        return anchor.lifted
    if isinstance(anchor, SymplecticAnchor):
        return anchor
    raise SpecError(
        "expected a SymplecticAnchor or a LiftedAnchor, got "
        f"{type(anchor).__name__}"
    )


def _base(anchor):
    """The table-level structure carrying Lambda, the reference 2-form,
    and the volume used by the closed bracket formula."""
    if isinstance(anchor, LiftedAnchor):
        return anchor.base
    return anchor


def distribution(anchor, family: FunctionFamily, partition, which: int
                 ) -> Distribution:
    """D_0 (which = 0, leading coefficients) or D_1 (trailing); the lifted
    odd case appends the Hamiltonian field of s."""
    ref = _reference(anchor)
    pick = 0 if which == 0 else -1
    generators = []
    for cp in partition:
        f = family.entry(cp.names[pick])
        if isinstance(anchor, LiftedAnchor):
            f = migrate_ratfun(f, ref.table)
        generators.append(hamiltonian_vf(ref.lambda_bi, f))
    if isinstance(anchor, LiftedAnchor):
        s_idx = ref.table.appended_index
        ds = Form(ref.table, 1, {(s_idx,): 1})
        generators.append(bivector_sharp(ref.lambda_bi, ds))
    return Distribution(generators)


def annihilator_basis(anchor, D: Distribution):
    """Basis of the 1-forms annihilating every generator, by one exact
    nullspace computation with deterministic pivoting."""
    table = D.table
    geo = table.geometric_indices
    zero = RationalFunction.zero(table)
    rows = [
        [X.comps.get((i,), zero) for i in geo] for X in D.generators
    ]
    _, pivots = rref(rows)
    if len(pivots) != len(D.generators):
        raise RankDrop(
            f"{len(D.generators)} generators span only rank {len(pivots)}"
        )
    basis = []
    for vec in nullspace(rows, table, len(geo)):
        comps = {
            (geo[pos],): v for pos, v in enumerate(vec) if not v.is_zero()
        }
        basis.append(Form(table, 1, comps))
    return basis


# --- the sigma pair -----------------------------------------------------------


class SigmaPair:
    """The two constrained 2-forms; primed lifts in the odd case, where the
    tau parts of sigma' = sigma + tau^ds are split off for inspection."""

    __slots__ = ("sigma0", "sigma1", "tau0", "tau1")

    def __init__(self, sigma0: Form, sigma1: Form):
        sigma0.table.require_same(sigma1.table)
        if sigma0.degree != 2 or sigma1.degree != 2:
            raise DegreeError("a sigma pair holds 2-forms")
        self.sigma0 = sigma0
        self.sigma1 = sigma1
        if sigma0.table.appended_index is not None:
            _, self.tau0 = decompose_prime(sigma0)
            _, self.tau1 = decompose_prime(sigma1)
        else:
            self.tau0 = None
            self.tau1 = None


def sigma_pair_invariants(anchor, family: FunctionFamily, partition,
                          pair: SigmaPair, seed: int = 0) -> Report:
    """sigma_j annihilates D_j; both forms have rank 2r at a sample."""
    report = Report("sigma pair invariants")
    sigmas = (pair.sigma0, pair.sigma1)
    for j in (0, 1):
        D = distribution(anchor, family, partition, j)
        for g, X in enumerate(D.generators):
            residual = interior_form(X, sigmas[j])
            report.add(
                f"sigma{j} annihilates generator {g} of D{j}",
                residual.is_zero(),
                residual,
            )
    table = pair.sigma0.table
    rng = Random(seed)
    for j in (0, 1):
        rows = full_matrix(sigmas[j])
        guards = [c.den for c in sigmas[j].comps.values()]
        best = -1
        for _ in range(SAMPLE_RETRIES):
            point = sample_point(table, guards, rng)
            best = max(best, rank_at_point(rows, point))
            if best == 2 * family.r:
                break
        report.add(
            f"sigma{j} has rank {2 * family.r} at a sampled point",
            best == 2 * family.r,
            f"best sampled rank {best}",
        )
    return report


def interior_form(X: MultiVector, a: Form) -> Form:
    """sigma(X, .) as a 1-form (first-slot contraction)."""
    return interior(X, a)


def check_sigma_conditions(anchor, pair: SigmaPair) -> Report:
    """The three codifferential identities; delta' on the lifted anchor in
    the odd case.  Failures are data, never exceptions."""
    ref = _reference(anchor)
    s0, s1 = pair.sigma0, pair.sigma1

    def delta(a):
        return codifferential(ref, a)

    report = Report("sigma conditions")
    residual = delta(wedge(s0, s0)) - wedge(s0, delta(s0)) * 2
    report.add("delta(sigma0^sigma0) = 2 sigma0^delta(sigma0)",
               residual.is_zero(), residual)
    residual = delta(wedge(s1, s1)) - wedge(s1, delta(s1)) * 2
    report.add("delta(sigma1^sigma1) = 2 sigma1^delta(sigma1)",
               residual.is_zero(), residual)
    residual = (
        delta(wedge(s0, s1))
        - wedge(delta(s0), s1)
        - wedge(s0, delta(s1))
    )
    report.add(
        "delta(sigma0^sigma1) = delta(sigma0)^sigma1 + sigma0^delta(sigma1)",
        residual.is_zero(), residual)
    return report


def _recursion_fields(anchor, family: FunctionFamily, cp: CasimirPolynomial):
    """Hamiltonian fields of the coefficients of one Casimir polynomial,
    lifted when the anchor is."""
    ref = _reference(anchor)
    fields = []
    for name in cp.names:
        f = family.entry(name)
        if isinstance(anchor, LiftedAnchor):
            f = migrate_ratfun(f, ref.table)
        fields.append(hamiltonian_vf(ref.lambda_bi, f))
    return fields


def check_recursion(anchor, pair: SigmaPair, family: FunctionFamily,
                    partition) -> Report:
    """sigma0(X_{f^i_j}, .) = sigma1(X_{f^i_{j-1}}, .) for 1 <= j <= r_i."""
    report = Report("recursion relations")
    for cp in partition:
        fields = _recursion_fields(anchor, family, cp)
        for j in range(1, cp.degree + 1):
            residual = interior_form(fields[j], pair.sigma0) - interior_form(
                fields[j - 1], pair.sigma1
            )
            report.add(
                f"sigma0(X_{cp.names[j]}, .) = sigma1(X_{cp.names[j - 1]}, .)",
                residual.is_zero(),
                residual,
            )
    return report


# --- the ansatz solver --------------------------------------------------------


def _unknown_name(a: int, b: int) -> str:
    if a < 10 and b < 10:
        return f"k{a}{b}"
    return f"k{a}_{b}"


@dataclass
class AnsatzSolution:
    """General solution sigma1 = sum k_ab basis_a ^ basis_b, expressed over
    the table extended by one symbolic constant per free unknown."""

    base_table: VarTable
    table: VarTable
    pairs: list
    expressions: dict
    free_names: list
    sigma1: Form

    def expression(self, a: int, b: int) -> RationalFunction:
        return self.expressions[_unknown_name(a, b)]

    def _substitution(self, mapping) -> dict:
        values = {}
        for name, value in mapping.items():
            if name not in self.free_names and (
                name not in self.table.names
                or self.table.kind_of(name) is not VarKind.CONSTANT
            ):
                raise SpecError(
                    f"{name!r} is neither a free unknown nor a constant"
                )
            if isinstance(value, str):
                value = parse_ratfun(value, self.table)
            values[name] = value
        return values

    def specialize(self, mapping) -> Form:
        """Substitute values for the free unknowns (and, if desired, for
        constants of the table) and push the resulting 2-form back to the
        original table."""
        values = self._substitution(mapping)
        comps = {}
        for idx, c in self.sigma1.comps.items():
            comps[idx] = migrate_ratfun(
                c.substitute(values), self.base_table
            )
        return Form(self.base_table, 2, comps)

    def values_at(self, mapping) -> dict:
        """The coefficient of each basis pair after the same substitution,
        pushed back to the original table; keys are the unknown names."""
        values = self._substitution(mapping)
        out = {}
        for a, b in self.pairs:
            name = _unknown_name(a, b)
            out[name] = migrate_ratfun(
                self.expressions[name].substitute(values), self.base_table
            )
        return out

    def render(self) -> str:
        lines = []
        for a, b in self.pairs:
            name = _unknown_name(a, b)
            expr = self.expressions[name]
            tag = " (free)" if name in self.free_names else ""
            lines.append(f"{name} = {expr.render()}{tag}")
        return "\n".join(lines)


def solve_recursion_ansatz(anchor, sigma0: Form, basis, family: FunctionFamily,
                           partition) -> AnsatzSolution:
    """Solve the recursion relations for sigma1 = sum k_ab basis_a^basis_b.

    The relations are linear in the unknowns; the exact general solution is
    particular + kernel with free unknowns left symbolic (adjoined to the
    table as inert constants, named k12, k13, ... in basis order)."""
    table = sigma0.table
    m = len(basis)
    pairs = [(a, b) for a in range(1, m + 1) for b in range(a + 1, m + 1)]
    wedges = [wedge(basis[a - 1], basis[b - 1]) for a, b in pairs]
    geo = table.geometric_indices
    zero = RationalFunction.zero(table)

    rows = []
    rhs = []
    for cp in partition:
        fields = _recursion_fields(anchor, family, cp)
        for j in range(1, cp.degree + 1):
            lhs_form = interior_form(fields[j], sigma0)
            col_forms = [
                interior_form(fields[j - 1], w) for w in wedges
            ]
            for i in geo:
                rows.append(
                    [cf.comps.get((i,), zero) for cf in col_forms]
                )
                rhs.append(lhs_form.comps.get((i,), zero))
    particular, kernel, free = solve_linear(rows, rhs, table)

    ext = table
    free_names = []
    for col in free:
        name = _unknown_name(*pairs[col])
        ext = ext.extend(name, VarKind.CONSTANT)
        free_names.append(name)
    expressions = {}
    for p, (a, b) in enumerate(pairs):
        expr = migrate_ratfun(particular[p], ext)
        for vec, col in zip(kernel, free):
            term = migrate_ratfun(vec[p], ext) * RationalFunction.variable(
                ext, _unknown_name(*pairs[col])
            )
            expr = expr + term
        expressions[_unknown_name(a, b)] = expr
    sigma1 = Form.zero(ext, 2)
    for p, w in enumerate(wedges):
        coeff = expressions[_unknown_name(*pairs[p])]
        if not coeff.is_zero():
            sigma1 = sigma1 + migrate_alternating(w, ext) * coeff
    return AnsatzSolution(table, ext, pairs, expressions, free_names, sigma1)


# --- the pencil ----------------------------------------------------------------


class Pencil:
    """The assembled pair of bivectors with its lambda-data."""

    __slots__ = (
        "table", "anchor", "Pi0", "Pi1", "sigma_lambda", "g_lambda",
        "F_lambda", "F_functions", "r", "k", "l", "Pi0_prime", "Pi1_prime",
        "_phi",
    )

    def __init__(self, table, anchor, Pi0, Pi1, sigma_lambda, g_lambda,
                 F_lambda, F_functions, r, k, Pi0_prime=None, Pi1_prime=None):
        self.table = table
        self.anchor = anchor
        self.Pi0 = Pi0
        self.Pi1 = Pi1
        self.sigma_lambda = sigma_lambda
        self.g_lambda = g_lambda
        self.F_lambda = F_lambda
        self.F_functions = list(F_functions)
        self.r = r
        self.k = k
        self.l = k // 2
        self.Pi0_prime = Pi0_prime
        self.Pi1_prime = Pi1_prime
        self._phi = None

    @property
    def pencil_name(self) -> str:
        return self.table.names[self.table.pencil_index]

    def pi_lambda(self) -> MultiVector:
        lam = RationalFunction.variable(self.table, self.pencil_name)
        return self.Pi1 - self.Pi0 * lam

    def F_coefficients(self) -> dict:
        return coefficients_in(self.F_lambda, self.pencil_name)

    @property
    def F_leading(self) -> RationalFunction:
        return self.F_coefficients().get(
            self.r, RationalFunction.zero(self.table)
        )

    @property
    def F_trailing(self) -> RationalFunction:
        return self.F_coefficients().get(
            0, RationalFunction.zero(self.table)
        )


def compute_F_lambda(anchor, family: FunctionFamily, partition
                     ) -> RationalFunction:
    """F(lambda) = <dF^1^...^dF^k, Lambda^l/l!> (even anchor) or
    <..., E^Lambda^l/l!> (odd); degree exactly r in lambda with nonzero
    leading and trailing coefficients, certified at a sampled point."""
    k = len(partition)
    r = sum(cp.degree for cp in partition)
    base = _base(anchor)
    table = base.table
    if isinstance(base, SymplecticAnchor):
        if k % 2:
            raise DegreeError(
                f"an even anchor pairs with an even number of Casimir "
                f"polynomials, got {k}"
            )
        l = k // 2
        against = wedge_power(
            base.lambda_bi, l, Fraction(1, factorial(l))
        )
    elif isinstance(base, CosymplecticAnchor):
        if k % 2 == 0:
            raise DegreeError(
                f"an odd anchor pairs with an odd number of Casimir "
                f"polynomials, got {k}"
            )
        l = (k - 1) // 2
        against = wedge(
            base.reeb,
            wedge_power(base.lambda_bi, l, Fraction(1, factorial(l))),
        )
    else:
        raise SpecError(f"unsupported anchor {type(base).__name__}")

    functions = [casimir_function(family, cp) for cp in partition]
    covector = Form.scalar(table, 1)
    for f in functions:
        covector = wedge(covector, differential(f, table))
    value = pairing(covector, against)

    if table.pencil_index is None:
        coeffs = {0: value} if not value.is_zero() else {}
    else:
        if value.den.involves(table.pencil_index):
            raise NonExactDivision(
                "F(lambda) has a lambda-dependent denominator"
            )
        coeffs = coefficients_in(value, table.names[table.pencil_index])
    leading = coeffs.get(r)
    if leading is None:
        raise DegenerateLeading(
            f"the lambda^{r} coefficient of F(lambda) vanishes identically"
        )
    trailing = coeffs.get(0)
    if trailing is None:
        raise DegenerateTrailing(
            "the constant coefficient of F(lambda) vanishes identically"
        )
    if max(coeffs) > r:
        raise DegenerateLeading(
            f"F(lambda) has degree {max(coeffs)} > r = {r}"
        )
    sample_point(table, [leading, trailing], Random(0))
    return value


def assemble_pencil(anchor, pair: SigmaPair, family: FunctionFamily,
                    partition, seed: int = 0) -> Pencil:
    """Build (Pi0, Pi1, sigma_lambda, g_lambda, F_lambda) after verifying
    every precondition; the first failed condition aborts assembly."""
    check_partition(family, partition)
    for report in (
        sigma_pair_invariants(anchor, family, partition, pair, seed),
        check_sigma_conditions(anchor, pair),
        check_recursion(anchor, pair, family, partition),
    ):
        if not report.passed:
            failed = next(v for v in report.verdicts if not v.passed)
            raise ConditionFailed(
                f"{report.title}: {failed.label} does not hold"
            )

    ref = _reference(anchor)
    base = _base(anchor)
    table = base.table
    if table.pencil_index is None:
        raise SpecError("the table declares no pencil parameter")
    lam_name = table.names[table.pencil_index]

    from .anchor import sharp as anchor_sharp

    if isinstance(anchor, LiftedAnchor):
        Pi0_prime = anchor_sharp(ref, pair.sigma0)
        Pi1_prime = anchor_sharp(ref, pair.sigma1)
        Pi0 = reduce_bivector(Pi0_prime)
        Pi1 = reduce_bivector(Pi1_prime)
        lam_ext = RationalFunction.variable(ref.table, lam_name)
        sigma_prime = pair.sigma1 - pair.sigma0 * lam_ext
        sigma_part, _ = decompose_prime(sigma_prime)
        sigma_lambda = migrate_alternating(sigma_part, table)
    else:
        Pi0_prime = None
        Pi1_prime = None
        Pi0 = anchor_sharp(ref, pair.sigma0)
        Pi1 = anchor_sharp(ref, pair.sigma1)
        lam = RationalFunction.variable(table, lam_name)
        sigma_lambda = pair.sigma1 - pair.sigma0 * lam

    g_lambda = -pairing(sigma_lambda, base.lambda_bi)
    F_lambda = compute_F_lambda(anchor, family, partition)
    F_functions = [casimir_function(family, cp) for cp in partition]
    return Pencil(
        table, anchor, Pi0, Pi1, sigma_lambda, g_lambda, F_lambda,
        F_functions, family.r, family.k, Pi0_prime, Pi1_prime,
    )


# --- closed-form brackets -------------------------------------------------------


def closed_form_interior(pencil: Pencil, anchor) -> Form:
    """Phi_lambda = -(1/F) (sigma_lambda + g_lambda/(r-1) w) ^ w^{r-2}/(r-2)!
    ^ dF^1 ^ ... ^ dF^k, with w the anchor 2-form (Theta when odd)."""
    if pencil._phi is not None:
        return pencil._phi
    if pencil.r < 2:
        raise RankTooSmall(
            f"the closed formula needs r >= 2, got r = {pencil.r}"
        )
    base = _base(anchor)
    table = base.table
    reference = base.omega if isinstance(base, SymplecticAnchor) else base.theta
    r = pencil.r
    core = pencil.sigma_lambda + reference * (
        pencil.g_lambda * Fraction(1, r - 1)
    )
    phi = wedge(
        core, wedge_power(reference, r - 2, Fraction(1, factorial(r - 2)))
    )
    for f in pencil.F_functions:
        phi = wedge(phi, differential(f, table))
    phi = phi * (RationalFunction.constant(table, -1) / pencil.F_lambda)
    pencil._phi = phi
    return phi


def _top_quotient(numerator: Form, volume: Form) -> RationalFunction:
    table = volume.table
    top = tuple(table.geometric_indices)
    if volume.degree != len(top) or volume.is_zero():
        raise DegenerateVolume("volume form is not a nonzero top form")
    if numerator.degree != len(top):
        raise DimensionMismatch(
            f"expected a top form of degree {len(top)}, got degree "
            f"{numerator.degree}"
        )
    return numerator.coefficient(top) / volume.coefficient(top)


def bracket_closed_form(pencil: Pencil, anchor, f, h) -> RationalFunction:
    """{f,h}(lambda): df^dh^Phi_lambda divided by the volume form; the
    result must be polynomial in lambda, anything else certifies a
    construction error upstream."""
    base = _base(anchor)
    table = base.table
    f = _as_function(table, f)
    h = _as_function(table, h)
    phi = closed_form_interior(pencil, anchor)
    numerator = wedge(
        differential(f, table), wedge(differential(h, table), phi)
    )
    value = _top_quotient(numerator, base.volume)
    pencil_index = table.pencil_index
    if pencil_index is not None and value.den.involves(pencil_index):
        raise NonExactDivision(
            f"{{{f.render()}, {h.render()}}} is not polynomial in the "
            f"pencil parameter: denominator {value.den.render()}"
        )
    return value


def jacobian_bracket(functions, prefactor, volume: Form, g, h
                     ) -> RationalFunction:
    """{g,h} Omega = prefactor dg^dh^dC_1^...^dC_m on a table with
    dim = m + 2."""
    table = volume.table
    if len(functions) + 2 != table.dim:
        raise DimensionMismatch(
            f"{len(functions)} Casimirs on a {table.dim}-dimensional "
            "table; need dim - 2"
        )
    g = _as_function(table, g)
    h = _as_function(table, h)
    prefactor = _as_function(table, prefactor)
    numerator = wedge(differential(g, table), differential(h, table))
    for c in functions:
        numerator = wedge(numerator, differential(_as_function(table, c), table))
    return _top_quotient(numerator * prefactor, volume)
