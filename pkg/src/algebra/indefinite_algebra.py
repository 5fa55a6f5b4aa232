"""
Complex linear algebra with an indefinite Hermitian form.

Vectors of C^n are numpy complex128 arrays. A SignatureForm carries the
positions of the negative Hermitian slots; the real part of the form is the
pseudo-Riemannian metric used everywhere else in the workbench.
"""
from dataclasses import dataclass

import numpy as np

from src.errors import DimensionMismatchError


def as_vector(z):
    """Coerce a sequence of complex numbers to a complex128 vector"""
    return np.asarray(z, dtype=np.complex128)


@dataclass(frozen=True)
class SignatureForm:
    """Hermitian form of complex dimension n with `index` negative slots"""

    n: int
    negative_slots: tuple = ()

    def __post_init__(self):
        slots = tuple(sorted(set(int(k) for k in self.negative_slots)))
        if len(slots) != len(tuple(self.negative_slots)):
            raise ValueError("negative slots must be distinct")
        if any(k < 0 or k >= self.n for k in slots):
            raise ValueError(f"negative slot out of range for n={self.n}: {slots}")
        object.__setattr__(self, "negative_slots", slots)

    @classmethod
    def standard(cls, n, index):
        """The first `index` slots negative (b_{index,n})"""
        if not 0 <= index <= n:
            raise ValueError(f"index {index} outside [0, {n}]")
        return cls(n, tuple(range(index)))

    @property
    def index(self):
        return len(self.negative_slots)

    @property
    def signs(self):
        signs = np.ones(self.n)
        signs[list(self.negative_slots)] = -1.0
        return signs

    @property
    def real_signature(self):
        """(negative, positive) counts of the induced real metric"""
        return 2 * self.index, 2 * (self.n - self.index)

    def check(self, *vectors):
        for v in vectors:
            if v.shape != (self.n,):
                raise DimensionMismatchError(self.n, v.shape[0] if v.ndim else 0)


def hermitian_form(form, z, w):
    """b(z, w): conjugate-linear in z, linear in w"""
    z = as_vector(z)
    w = as_vector(w)
    form.check(z, w)
    return complex(np.sum(form.signs * np.conj(z) * w))


def real_inner(form, z, w):
    """g(z, w) = Re b(z, w)"""
    return hermitian_form(form, z, w).real


def j_apply(z):
    """Complex structure J: multiply every component by i"""
    return 1j * as_vector(z)


def norm_squared(form, z):
    """b(z, z), real by Hermitian symmetry"""
    return hermitian_form(form, z, z).real
