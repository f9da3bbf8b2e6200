"""Nondegenerate reference structures and the maps they induce.

Even geometric dimension 2n carries a symplectic pair (omega, Lambda); odd
dimension 2n+1 carries a cosymplectic structure (vartheta, Theta) whose
contravariant side (Lambda, E) is recovered by one exact matrix inversion on
the table extended by the coordinate s.  The sharp/star/codifferential chain
follows the conventions fixed in the exterior module; the remaining global
sign (omega = -(inverse of the Lambda component matrix)) is pinned by the
volume form of the rigid body fixture, Omega = -dx1^dx2^dx3^dy1^dy2^dy3 for
the canonical bivector on R^6.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from random import Random

from .errors import (
    Degenerate,
    DegenerateVolume,
    DegreeError,
    NotReducible,
    NotSemiBasic,
    OddDimension,
)
from .exterior import (
    Form,
    MultiVector,
    differential,
    exterior_derivative,
    interior,
    pairing,
    wedge,
    wedge_power,
)
from .linalg import det, invert
from .symexpr import (
    RationalFunction,
    VarKind,
    VarTable,
    migrate_ratfun,
    sample_point,
)

APPENDED_NAME = "s"


# --- component matrices ------------------------------------------------------


def full_matrix(obj) -> list:
    """Full antisymmetric matrix of a degree-2 object, rows and columns in
    geometric variable order."""
    if obj.degree != 2:
        raise DegreeError("component matrix needs degree 2")
    table = obj.table
    geo = table.geometric_indices
    pos = {v: k for k, v in enumerate(geo)}
    zero = RationalFunction.zero(table)
    out = [[zero] * len(geo) for _ in geo]
    for (i, j), c in obj.comps.items():
        a, b = pos[i], pos[j]
        out[a][b] = c
        out[b][a] = -c
    return out


def from_matrix(table: VarTable, rows: list, kind):
    """Degree-2 object from a full antisymmetric matrix (upper triangle)."""
    geo = table.geometric_indices
    comps = {}
    for a in range(len(geo)):
        for b in range(a + 1, len(geo)):
            if not rows[a][b].is_zero():
                comps[(geo[a], geo[b])] = rows[a][b]
    return kind(table, 2, comps)


def migrate_alternating(obj, new_table: VarTable):
    """Move a form or multivector between tables differing by trailing
    variables; component indices are stable because extension appends."""
    for idx in obj.comps:
        for i in idx:
            if i >= new_table.size:
                raise NotReducible(
                    f"component {idx} indexes {obj.table.names[i]!r}, "
                    "absent from the target table"
                )
    comps = {
        idx: migrate_ratfun(c, new_table) for idx, c in obj.comps.items()
    }
    return type(obj)(new_table, obj.degree, comps)


# --- bivector action ---------------------------------------------------------


def bivector_sharp(Pi: MultiVector, alpha: Form) -> MultiVector:
    """Pi#(alpha) on a 1-form: component j is sum_i Pi^{ij} alpha_i."""
    if Pi.degree != 2 or alpha.degree != 1:
        raise DegreeError("bivector_sharp pairs a bivector with a 1-form")
    Pi.table.require_same(alpha.table)
    comps: dict = {}

    def bump(idx, value):
        if value.is_zero():
            return
        acc = comps.get(idx)
        total = value if acc is None else acc + value
        if total.is_zero():
            comps.pop(idx, None)
        else:
            comps[idx] = total

    for (i, j), w in Pi.comps.items():
        ai = alpha.comps.get((i,))
        if ai is not None:
            bump((j,), w * ai)
        aj = alpha.comps.get((j,))
        if aj is not None:
            bump((i,), -(w * aj))
    return MultiVector(Pi.table, 1, comps)


def hamiltonian_vf(Pi: MultiVector, f) -> MultiVector:
    """X_f = Pi#(df)."""
    return bivector_sharp(Pi, differential(f, Pi.table))


def poisson_bracket(Pi: MultiVector, f, g) -> RationalFunction:
    """{f, g} = Pi(df, dg)."""
    return pairing(
        wedge(differential(f, Pi.table), differential(g, Pi.table)), Pi
    )


def _sharp_extend(Pi: MultiVector, a: Form) -> MultiVector:
    """Degree-p extension of Pi#, multiplicative over the wedge."""
    table = a.table
    if a.degree == 0:
        return MultiVector(table, 0, dict(a.comps))
    if a.degree == 1:
        return bivector_sharp(Pi, a)
    images: dict = {}
    out = MultiVector.zero(table, a.degree)
    for idx, c in a.comps.items():
        piece = MultiVector.scalar(table, c)
        for i in idx:
            img = images.get(i)
            if img is None:
                img = bivector_sharp(Pi, Form(table, 1, {(i,): 1}))
                images[i] = img
            piece = wedge(piece, img)
        out = out + piece
    return out


# --- anchors -----------------------------------------------------------------


class SymplecticAnchor:
    """Nondegenerate bivector with its inverse 2-form and volume."""

    __slots__ = ("table", "lambda_bi", "omega", "n", "volume")

    def __init__(self, table, lambda_bi, omega, n, volume):
        self.table = table
        self.lambda_bi = lambda_bi
        self.omega = omega
        self.n = n
        self.volume = volume


class CosymplecticAnchor:
    """Odd-dimensional structure (vartheta, Theta) with its contravariant
    side (Lambda, E) and volume vartheta^Theta^n/n!."""

    __slots__ = ("table", "vartheta", "theta", "lambda_bi", "reeb", "n",
                 "volume")

    def __init__(self, table, vartheta, theta, lambda_bi, reeb, n, volume):
        self.table = table
        self.vartheta = vartheta
        self.theta = theta
        self.lambda_bi = lambda_bi
        self.reeb = reeb
        self.n = n
        self.volume = volume


class LiftedAnchor:
    """Cosymplectic anchor together with its symplectization by s."""

    __slots__ = ("base", "lifted")

    def __init__(self, base: CosymplecticAnchor, lifted: SymplecticAnchor):
        self.base = base
        self.lifted = lifted


def _certify_nondegenerate(rows, table):
    value = det(rows, table)
    if value.is_zero():
        raise Degenerate("component matrix is singular")
    rng = Random(0)
    sample_point(table, [value], rng)
    return value


def build_symplectic(lambda_bi: MultiVector) -> SymplecticAnchor:
    """Anchor from a nondegenerate bivector; omega = -(matrix inverse)."""
    if lambda_bi.degree != 2:
        raise DegreeError("a symplectic anchor needs a bivector")
    table = lambda_bi.table
    if table.dim % 2:
        raise OddDimension(
            f"geometric dimension {table.dim} is odd; no symplectic anchor"
        )
    rows = full_matrix(lambda_bi)
    _certify_nondegenerate(rows, table)
    inverse = invert(rows, table)
    omega = from_matrix(
        table, [[-v for v in row] for row in inverse], Form
    )
    n = table.dim // 2
    volume = wedge_power(omega, n, Fraction(1, factorial(n)))
    return SymplecticAnchor(table, lambda_bi, omega, n, volume)


def _symplectic_from_omega(omega: Form) -> SymplecticAnchor:
    """Anchor from a nondegenerate 2-form; Lambda = -(matrix inverse)."""
    table = omega.table
    if table.dim % 2:
        raise OddDimension(
            f"geometric dimension {table.dim} is odd; no symplectic anchor"
        )
    rows = full_matrix(omega)
    _certify_nondegenerate(rows, table)
    inverse = invert(rows, table)
    lambda_bi = from_matrix(
        table, [[-v for v in row] for row in inverse], MultiVector
    )
    n = table.dim // 2
    volume = wedge_power(omega, n, Fraction(1, factorial(n)))
    return SymplecticAnchor(table, lambda_bi, omega, n, volume)


def build_cosymplectic(vartheta: Form, theta: Form) -> CosymplecticAnchor:
    """Anchor from (vartheta, Theta); (Lambda, E) by lifting and inverting."""
    if vartheta.degree != 1 or theta.degree != 2:
        raise DegreeError("a cosymplectic anchor needs a 1-form and a 2-form")
    vartheta.table.require_same(theta.table)
    table = vartheta.table
    if table.dim % 2 == 0:
        raise OddDimension(
            f"geometric dimension {table.dim} is even; no cosymplectic anchor"
        )
    n = (table.dim - 1) // 2
    volume = wedge(
        vartheta, wedge_power(theta, n, Fraction(1, factorial(n)))
    )
    if volume.is_zero():
        raise DegenerateVolume("vartheta^Theta^n vanishes identically")

    ext = table.extend(APPENDED_NAME, VarKind.APPENDED)
    s_idx = ext.appended_index
    ds = Form(ext, 1, {(s_idx,): 1})
    omega_prime = migrate_alternating(theta, ext) + wedge(
        ds, migrate_alternating(vartheta, ext)
    )
    try:
        lifted = _symplectic_from_omega(omega_prime)
    except Degenerate as exc:
        raise DegenerateVolume(str(exc)) from exc

    lambda_comps = {}
    reeb_comps = {}
    for (i, j), c in lifted.lambda_bi.comps.items():
        if j == s_idx:
            # Lambda' = Lambda + Ds^E puts -E^i on the (i, s) slot
            reeb_comps[(i,)] = migrate_ratfun(-c, table)
        else:
            lambda_comps[(i, j)] = migrate_ratfun(c, table)
    lambda_bi = MultiVector(table, 2, lambda_comps)
    reeb = MultiVector(table, 1, reeb_comps)

    one = RationalFunction.one(table)
    if interior(reeb, vartheta).coefficient(()) != one:
        raise Degenerate("recovered E fails i_E vartheta = 1")
    if not interior(reeb, theta).is_zero():
        raise Degenerate("recovered E fails i_E Theta = 0")
    if not bivector_sharp(lambda_bi, vartheta).is_zero():
        raise Degenerate("recovered Lambda fails Lambda#(vartheta) = 0")
    return CosymplecticAnchor(
        table, vartheta, theta, lambda_bi, reeb, n, volume
    )


def lift(base: CosymplecticAnchor) -> LiftedAnchor:
    """Symplectization: omega' = Theta + ds^vartheta on the extended table."""
    ext = base.table.extend(APPENDED_NAME, VarKind.APPENDED)
    s_idx = ext.appended_index
    ds = Form(ext, 1, {(s_idx,): 1})
    omega_prime = migrate_alternating(base.theta, ext) + wedge(
        ds, migrate_alternating(base.vartheta, ext)
    )
    lifted = _symplectic_from_omega(omega_prime)
    expected = migrate_alternating(base.lambda_bi, ext) + wedge(
        MultiVector.basis_vector(ext, s_idx),
        migrate_alternating(base.reeb, ext),
    )
    if lifted.lambda_bi != expected:
        raise Degenerate("lifted bivector is not Lambda + Ds^E")
    return LiftedAnchor(base, lifted)


# --- induced maps ------------------------------------------------------------


def sharp(anchor, a: Form) -> MultiVector:
    """Degree-p sharp; semi-basic required past degree 1 on odd anchors."""
    if isinstance(anchor, LiftedAnchor):
        anchor = anchor.lifted
    if isinstance(anchor, CosymplecticAnchor) and a.degree >= 2:
        residue = interior(anchor.reeb, a)
        if not residue.is_zero():
            raise NotSemiBasic(
                f"i_E leaves {residue.render()}; the degree-{a.degree} "
                "extension needs a semi-basic form"
            )
    return _sharp_extend(anchor.lambda_bi, a)


def flat(anchor: SymplecticAnchor, X: MultiVector) -> Form:
    """Inverse of sharp on vector fields."""
    if X.degree != 1:
        raise DegreeError("flat acts on vector fields")
    comps: dict = {}

    def bump(idx, value):
        if value.is_zero():
            return
        acc = comps.get(idx)
        total = value if acc is None else acc + value
        if total.is_zero():
            comps.pop(idx, None)
        else:
            comps[idx] = total

    for (i, j), w in anchor.omega.comps.items():
        Xi = X.comps.get((i,))
        if Xi is not None:
            bump((j,), -(w * Xi))
        Xj = X.comps.get((j,))
        if Xj is not None:
            bump((i,), w * Xj)
    return Form(X.table, 1, comps)


def star(anchor: SymplecticAnchor, a: Form) -> Form:
    """*a = interior(sharp(a), Omega)."""
    return interior(_sharp_extend(anchor.lambda_bi, a), anchor.volume)


def codifferential(anchor: SymplecticAnchor, a: Form) -> Form:
    """delta = *d*, degree p-1 (zero on functions)."""
    if a.degree == 0:
        return Form.zero(a.table, 0)
    return star(anchor, exterior_derivative(star(anchor, a)))


# --- odd/even traffic --------------------------------------------------------


def decompose_prime(a: Form):
    """Split a 2-form on a lifted table as sigma + tau^ds."""
    if a.degree != 2:
        raise DegreeError("decompose_prime splits 2-forms")
    s_idx = a.table.appended_index
    if s_idx is None:
        raise NotReducible("the table carries no appended coordinate")
    sigma_comps = {}
    tau_comps = {}
    for idx, c in a.comps.items():
        if s_idx in idx:
            rest = tuple(i for i in idx if i != s_idx)
            tau_comps[rest] = c
        else:
            sigma_comps[idx] = c
    return Form(a.table, 2, sigma_comps), Form(a.table, 1, tau_comps)


def reduce_bivector(Pi_prime: MultiVector) -> MultiVector:
    """Forget s: requires s-independent components and no Ds legs."""
    ext = Pi_prime.table
    s_idx = ext.appended_index
    if s_idx is None:
        raise NotReducible("the table carries no appended coordinate")
    if s_idx != ext.size - 1:
        raise NotReducible(
            "the appended coordinate must be the most recently declared "
            "variable"
        )
    base = VarTable.build(list(zip(ext.names[:s_idx], ext.kinds[:s_idx])))
    comps = {}
    for idx, c in Pi_prime.comps.items():
        if s_idx in idx:
            raise NotReducible(
                f"component {idx} carries a Ds leg with coefficient "
                f"{c.render()}"
            )
        if c.involves(s_idx):
            raise NotReducible(
                f"component {idx} depends on s: {c.render()}"
            )
        comps[idx] = migrate_ratfun(c, base)
    return MultiVector(base, 2, comps)
