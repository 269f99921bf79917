import math
import random
from fractions import Fraction

import pytest

from githeight.errors import (
    AllRootsZeroError,
    NonSquareError,
    ZeroPolynomialError,
)
from githeight.exactpoly import (
    PolyQ,
    charpoly,
    complex_roots,
    max_root_log_abs,
    newton_polygon,
)
from githeight.places import valuation


def poly(*ascending) -> PolyQ:
    return PolyQ.from_coeffs([Fraction(c) for c in ascending])


def test_charpoly_examples():
    assert charpoly([[1, 1], [0, 1]]).coeffs == (Fraction(1), Fraction(-2), Fraction(1))
    assert charpoly([[0, -1], [1, 0]]).coeffs == (Fraction(1), Fraction(0), Fraction(1))
    # trace 5, det -2
    assert charpoly([[1, 2], [3, 4]]).coeffs == (Fraction(-2), Fraction(-5), Fraction(1))
    with pytest.raises(NonSquareError):
        charpoly([[1, 2, 3], [4, 5, 6]])


def test_charpoly_matches_expansion_on_random_matrices():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(1, 4)
        m = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)]
             for _ in range(n)]
        f = charpoly(m)
        assert f.degree == n and f.leading == 1
        # det(tI - m) at a few rational points, by fraction-free elimination
        for t in (Fraction(0), Fraction(1), Fraction(-2), Fraction(3, 2)):
            a = [[(t if i == j else Fraction(0)) - m[i][j] for j in range(n)]
                 for i in range(n)]
            det = Fraction(1)
            rows = [row[:] for row in a]
            sign = 1
            for col in range(n):
                piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
                if piv is None:
                    det = Fraction(0)
                    break
                if piv != col:
                    rows[col], rows[piv] = rows[piv], rows[col]
                    sign = -sign
                det *= rows[col][col]
                inv = 1 / rows[col][col]
                for r in range(col + 1, n):
                    factor = rows[r][col] * inv
                    for c in range(col, n):
                        rows[r][c] -= factor * rows[col][c]
            assert f.evaluate(t) == sign * det


def test_newton_polygon_examples():
    np1 = newton_polygon(poly(6, -5, 1), 2)
    assert sorted(np1.root_valuations()) == [Fraction(0), Fraction(1)]
    np2 = newton_polygon(poly(-2, 0, 1), 2)
    assert np2.root_valuations() == [Fraction(1, 2), Fraction(1, 2)]
    np3 = newton_polygon(poly(1, -2, 1), 3)
    assert np3.root_valuations() == [Fraction(0), Fraction(0)]
    with pytest.raises(ZeroPolynomialError):
        PolyQ.from_coeffs([0, 0])


def test_newton_polygon_zero_roots_and_slope_sum():
    # T^2(T^2 - 2): two zero roots split off before the hull
    f = poly(0, 0, -2, 0, 1)
    np4 = newton_polygon(f, 2)
    assert np4.zero_root_multiplicity == 2
    assert np4.root_valuations() == [Fraction(1, 2), Fraction(1, 2)]
    rng = random.Random(11)
    for _ in range(100):
        deg = rng.randint(1, 6)
        coeffs = [Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(deg)]
        coeffs.append(Fraction(rng.randint(1, 20)))
        f = PolyQ.from_coeffs(coeffs)
        for p in (2, 3, 5):
            g, _ = f.shift_out_zero_roots()
            pol = newton_polygon(f, p)
            total = sum(s * length for s, length in pol.segments)
            assert total == valuation(g.leading, p) - valuation(g.coeffs[0], p)
            vals = pol.root_valuations()
            assert vals == sorted(vals, reverse=True)  # slopes strictly increase


def test_max_root_log_abs_examples():
    assert max_root_log_abs(poly(6, -5, 1), 2).is_exact_zero
    v = max_root_log_abs(poly(-2, 0, 1), 2)
    assert dict(v.finite) == {2: Fraction(-1, 2)}
    v2 = max_root_log_abs(poly(-4, 1), 2)
    assert dict(v2.finite) == {2: Fraction(-2)}
    with pytest.raises(AllRootsZeroError):
        max_root_log_abs(poly(0, 0, 1), 5)


def test_complex_roots_examples():
    r = complex_roots(poly(1, 0, 1))
    got = sorted(r.expanded(), key=lambda z: z.imag)
    assert abs(got[0] - (-1j)) < 1e-9 and abs(got[1] - 1j) < 1e-9
    assert r.total == 2

    r2 = complex_roots(poly(1, -2, 1))
    assert len(r2.entries) == 1
    z, mult = r2.entries[0]
    assert mult == 2 and abs(z - 1) < 1e-9 and z.imag == 0.0

    r3 = complex_roots(poly(-1, 0, 0, 1))
    got = sorted(r3.expanded(), key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    want = sorted(
        (complex(math.cos(2 * math.pi * k / 3), math.sin(2 * math.pi * k / 3))
         for k in range(3)),
        key=lambda z: (round(z.real, 6), round(z.imag, 6)),
    )
    assert all(abs(a - b) < 1e-9 for a, b in zip(got, want))


def test_complex_roots_conjugation_and_power_sums():
    rng = random.Random(23)
    for _ in range(60):
        deg = rng.randint(1, 8)
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in range(deg)] + [Fraction(1)]
        f = PolyQ.from_coeffs(coeffs)
        ms = complex_roots(f)
        roots = ms.expanded()
        assert len(roots) == deg
        # multiset closed under conjugation
        conj = sorted(roots, key=lambda z: (z.real, z.imag))
        conj2 = sorted((z.conjugate() for z in roots), key=lambda z: (z.real, z.imag))
        assert all(abs(a - b) <= 1e-9 * (1 + abs(a)) for a, b in zip(conj, conj2))
        # Newton's identities: p1 = e1, p2 = e1*p1 - 2*e2
        e1 = -float(f.coeffs[-2]) if deg >= 1 else 0.0
        e2 = float(f.coeffs[-3]) if deg >= 2 else 0.0
        p1 = sum(roots)
        p2 = sum(z * z for z in roots)
        scale = 1.0 + max(abs(p1), abs(p2))
        assert abs(p1 - e1) <= 1e-8 * scale
        assert abs(p2 - (e1 * p1.real - 2 * e2)) <= 1e-8 * scale


def test_split_polynomial_valuation_oracle():
    rng = random.Random(5)
    for _ in range(80):
        deg = rng.randint(1, 6)
        roots = [Fraction(rng.randint(-12, 12), rng.randint(1, 8)) for _ in range(deg)]
        lead = Fraction(rng.randint(1, 5))
        f = PolyQ.from_roots(roots, lead)
        for p in (2, 3, 5):
            pol = newton_polygon(f, p)
            nonzero = [r for r in roots if r != 0]
            assert pol.zero_root_multiplicity == deg - len(nonzero)
            assert sorted(pol.root_valuations()) == sorted(
                Fraction(valuation(r, p)) for r in nonzero
            )


def test_polyq_structure():
    f = poly(1, 2) * poly(-1, 1)
    assert f.coeffs == (Fraction(-1), Fraction(-1), Fraction(2))
    g, k = poly(0, 0, 3, 1).shift_out_zero_roots()
    assert k == 2 and g.coeffs == (Fraction(3), Fraction(1))
    round_trip = PolyQ.from_json(poly(1, Fraction(-2, 3), 1).to_json())
    assert round_trip.coeffs == (Fraction(1), Fraction(-2, 3), Fraction(1))
    assert poly(2, 1).evaluate(Fraction(1, 2)) == Fraction(5, 2)
