import random
from fractions import Fraction

import pytest

from cubiccert.forms import (
    CubicForm,
    binary_cubic_discriminant,
    block_smoothness,
    form_from_poly,
)
from cubiccert.poly import QQ, Polynomial


def random_polynomial(rng, arity, domain=QQ, max_terms=4, max_degree=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = [0] * arity
        for _ in range(rng.randint(0, max_degree)):
            mono[rng.randrange(arity)] += 1
        terms[tuple(mono)] = rng.randint(-5, 5)
    return Polynomial(arity, domain, terms)


def random_homogeneous(rng, arity, degree, domain=QQ, max_terms=5):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = [0] * arity
        for _ in range(degree):
            mono[rng.randrange(arity)] += 1
        terms[tuple(mono)] = rng.randint(-5, 5)
    if not terms:
        terms[(degree,) + (0,) * (arity - 1)] = 1
    return Polynomial(arity, domain, terms)


def _cubic_monomials(arity):
    out = []

    def rec(i, left, acc):
        if i == arity:
            if left == 0:
                out.append(tuple(acc))
            return
        for e in range(left + 1):
            acc.append(e)
            rec(i + 1, left - e, acc)
            acc.pop()

    rec(0, 3, [])
    return out


def random_smooth_block(rng, size):
    """A random smooth cubic form in `size` variables, coefficients in [-5, 5]."""
    if size == 1:
        c = rng.choice([c for c in range(-5, 6) if c])
        return CubicForm(poly=Polynomial(1, QQ, {(3,): c}))
    monos = _cubic_monomials(size)
    while True:
        terms = {}
        for m in monos:
            # keep the diagonal cubes nonzero so every slot occurs
            if max(m) == 3:
                terms[m] = rng.choice([c for c in range(-5, 6) if c])
            else:
                terms[m] = rng.randint(-2, 2)
        poly = Polynomial(size, QQ, terms)
        form = form_from_poly(poly)
        if size == 2 and binary_cubic_discriminant(form) == 0:
            continue
        if size == 3 and not block_smoothness(form).smooth:
            continue
        return form


def form_text(terms):
    """Render [(coeff, "x0^3"), ...] in the form grammar (no unary '+')."""
    parts = [("- " if c < 0 else "+ ") + f"{abs(c)}*{mono}"
             for c, mono in terms]
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


@pytest.fixture
def rng():
    return random.Random(20240823)
