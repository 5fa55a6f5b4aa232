"""
Ambient geometries: flat C^2_1 and the Hopf-lift models of CP^2_1 / CH^2_1.

Lift models live in flat C^3 with an indefinite form; points of the
projected surface are represented by their horizontal lifts.
"""
from dataclasses import dataclass
from enum import Enum

from src.algebra.indefinite_algebra import (
    SignatureForm,
    as_vector,
    j_apply,
    norm_squared,
    real_inner,
)
from src.errors import NoMembershipConstraintError


class AmbientKind(Enum):
    FLAT_C21 = "FlatC21"
    CP21_LIFT = "CP21_lift"
    CH21_LIFT = "CH21_lift"


@dataclass(frozen=True)
class AmbientSpace:
    """Target geometry: kind, curvature parameter c and the flat form"""

    kind: AmbientKind
    c: float
    form: SignatureForm

    def __post_init__(self):
        if self.kind is AmbientKind.FLAT_C21 and self.c != 0:
            raise ValueError("flat C^2_1 requires c = 0")
        if self.kind is AmbientKind.CP21_LIFT and not self.c > 0:
            raise ValueError("CP^2_1 lift requires c > 0")
        if self.kind is AmbientKind.CH21_LIFT and not self.c < 0:
            raise ValueError("CH^2_1 lift requires c < 0")

    @classmethod
    def flat_c21(cls):
        return cls(AmbientKind.FLAT_C21, 0.0, SignatureForm.standard(2, 1))

    @classmethod
    def cp21_lift(cls, c=1.0, negative_slots=(2,)):
        """S^5_2(c) in C^3_1; the timelike slot sits where the family puts it"""
        return cls(AmbientKind.CP21_LIFT, float(c), SignatureForm(3, negative_slots))

    @classmethod
    def ch21_lift(cls, c=-1.0, negative_slots=(0, 1)):
        """H^5_2(c) in C^3_2"""
        return cls(AmbientKind.CH21_LIFT, float(c), SignatureForm(3, negative_slots))

    @property
    def is_lift(self):
        return self.kind is not AmbientKind.FLAT_C21

    @property
    def dimension(self):
        return self.form.n


def curvature(c, X, Y, Z, form):
    """Curvature tensor R(X,Y)Z of the complex space form of holomorphic curvature 4c"""
    X, Y, Z = as_vector(X), as_vector(Y), as_vector(Z)
    form.check(X, Y, Z)
    JX, JY, JZ = j_apply(X), j_apply(Y), j_apply(Z)

    def g(u, v):
        return real_inner(form, u, v)

    return c * (
        g(Y, Z) * X
        - g(X, Z) * Y
        + g(JY, Z) * JX
        - g(JX, Z) * JY
        + 2.0 * g(X, JY) * JZ
    )


def sectional_pairing(c, X, Y, Z, W, form):
    """<R(X,Y)Z, W>"""
    return real_inner(form, curvature(c, X, Y, Z, form), W)


def membership_residual(space, z):
    """b(z,z) - 1/c; zero on S^5_2(c) resp. H^5_2(c)"""
    if not space.is_lift:
        raise NoMembershipConstraintError(space.kind.value)
    return norm_squared(space.form, as_vector(z)) - 1.0 / space.c


def horizontality_residual(space, z, v):
    """g(v, iz); zero iff v is horizontal at z"""
    if not space.is_lift:
        raise NoMembershipConstraintError(space.kind.value)
    return real_inner(space.form, v, j_apply(z))
