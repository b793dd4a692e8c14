"""Acceptance suite: one test per exit criterion, each printing a PASS/FAIL
line and enforcing its stated runtime budget (run with -s to see the lines).

All arithmetic is exact, so every comparison is == with zero tolerance.

One check is expected to fail and is kept failing on purpose:
criterion 3's strict nilpotency-index bound |index(ac) - index(ba)| <= 1
over Z/8.  The weak quintic hypothesis only supports the bound
index <= max(other index, 2) + 1 (that is what the library enforces);
the triple (a, b, c) = (2, 0, 1) in Z/8 satisfies the hypothesis with
index(ac) = 3 and index(ba) = 1, so the strict form is unattainable.
See test_criterion_3_strict_index_bound_on_zmod8.
"""

import itertools
import random
import time
from fractions import Fraction

from clinelab import (
    build_example_triple,
    check_hypothesis,
    char_poly,
    cline_drazin,
    drazin_finite_ring,
    drazin_matrix,
    example_29_triple,
    is_quasinilpotent,
    is_unit,
    jacobson_inverse,
    matrix_ring,
    nilpotency,
    nonzero_spectrum_equal,
    rationals_matrix,
    sweep,
    to_matrix_over_field,
    try_inverse,
    verify_example_29,
    zmod,
)
from clinelab.serialize import dumps_canonical


def _line(num: str, ok: bool, elapsed: float, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num}: {status} ({elapsed:.2f}s) {detail}".rstrip())


def _triples(ring):
    return itertools.product(ring.elements(), repeat=3)


# --- criterion 1: the 6x6 separation reproduces exactly -----------------------


def test_criterion_1_separation_example():
    t0 = time.perf_counter()
    a, b, c = example_29_triple()
    rep = check_hypothesis(a, b, c)
    assert rep.holds
    assert all(p == rep.products[0] for p in rep.products)
    assert a * b * a != a * c * a
    x = matrix_ring(2, 3).elem([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    xw = nilpotency(x)
    assert xw.is_nilpotent and xw.index == 3
    report = verify_example_29()
    assert report.transfer_certified and report.ac_drazin_index == 3
    transfer = cline_drazin(a, b, c, "backward")
    assert transfer.target.inverse == b * transfer.source.inverse * transfer.source.inverse * a
    elapsed = time.perf_counter() - t0
    _line("1", True, elapsed, "separation triple reproduced")
    assert elapsed < 1.0


# --- criterion 2: exhaustive M_2(Z/2) ------------------------------------------


def test_criterion_2_exhaustive_m2z2():
    t0 = time.perf_counter()
    ring = matrix_ring(2, 2)
    one = ring.one()
    total = hypothesis_count = 0
    for a, b, c in _triples(ring):
        total += 1
        if not check_hypothesis(a, b, c).holds:
            continue
        hypothesis_count += 1
        ac, ba = a * c, b * a
        # (i) unit equivalence plus the explicit inverse formula
        u_ac, u_ba = is_unit(one - ac), is_unit(one - ba)
        assert u_ac == u_ba
        if u_ac:
            s = try_inverse(one - ac)
            t = jacobson_inverse(a, b, c, s)  # self-certifying
            assert t == try_inverse(one - ba)
        # (ii) quasinilpotency equivalence
        assert is_quasinilpotent(ac) == is_quasinilpotent(ba)
        # (iii) nilpotency equivalence with index gap at most one
        w_ac, w_ba = nilpotency(ac), nilpotency(ba)
        assert w_ac.is_nilpotent == w_ba.is_nilpotent
        if w_ac.is_nilpotent:
            assert abs(w_ac.index - w_ba.index) <= 1
        # (iv) Drazin invertibility coincides and both formulas re-certify
        cert_ac = drazin_finite_ring(ac)
        cert_ba = drazin_finite_ring(ba)
        assert (cert_ac is None) == (cert_ba is None)
        cline_drazin(a, b, c, "backward")
        cline_drazin(a, b, c, "forward")
    assert total == 4096
    assert hypothesis_count > 0
    elapsed = time.perf_counter() - t0
    _line("2", True, elapsed, f"{hypothesis_count} hypothesis triples, zero failures")
    assert elapsed < 60.0


# --- criterion 3: Z/4 and Z/8 sweeps -------------------------------------------


def _zmod_checks(ring, strict_bound: bool):
    """Returns strict-bound violations; asserts everything else inline."""
    one = ring.one()
    violations = []
    for a, b, c in _triples(ring):
        if not check_hypothesis(a, b, c).holds:
            continue
        ac, ba = a * c, b * a
        u_ac, u_ba = is_unit(one - ac), is_unit(one - ba)
        assert u_ac == u_ba
        if u_ac:
            s = try_inverse(one - ac)
            t = jacobson_inverse(a, b, c, s)
            assert t == try_inverse(one - ba)
        assert is_quasinilpotent(ac) == is_quasinilpotent(ba)
        w_ac, w_ba = nilpotency(ac), nilpotency(ba)
        assert w_ac.is_nilpotent == w_ba.is_nilpotent
        if w_ac.is_nilpotent and abs(w_ac.index - w_ba.index) > 1:
            violations.append(
                (a.payload, b.payload, c.payload, w_ac.index, w_ba.index)
            )
        cert_ac = drazin_finite_ring(ac)
        cert_ba = drazin_finite_ring(ba)
        assert (cert_ac is None) == (cert_ba is None)
        cline_drazin(a, b, c, "backward")
        cline_drazin(a, b, c, "forward")
    for e in ring.elements():
        assert is_quasinilpotent(e) == nilpotency(e).is_nilpotent
    if strict_bound:
        assert violations == []
    return violations


def test_criterion_3_zmod_sweeps():
    t0 = time.perf_counter()
    _zmod_checks(zmod(4), strict_bound=True)  # strict bound does hold in Z/4
    violations_z8 = _zmod_checks(zmod(8), strict_bound=False)
    elapsed = time.perf_counter() - t0
    _line(
        "3 (equivalences, formulas, qnil=nil, Z/4 bound)",
        True,
        elapsed,
        f"Z/8 strict-bound exceptions deferred to the companion check: {len(violations_z8)}",
    )
    assert elapsed < 5.0


def test_criterion_3_strict_index_bound_on_zmod8():
    """Criterion 3 verbatim extends criterion 2(iii)'s strict bound
    |index(ac) - index(ba)| <= 1 to Z/8, where it is provably false:
    (2, 0, 1) satisfies the hypothesis with indices 3 and 1.  The check is
    implemented as stated and left failing; weakening it would hide the
    fact that only index <= max(other, 2) + 1 is actually available."""
    t0 = time.perf_counter()
    violations = _zmod_checks(zmod(8), strict_bound=False)
    elapsed = time.perf_counter() - t0
    _line(
        "3 (strict index bound on Z/8)",
        not violations,
        elapsed,
        f"counterexamples: {violations[:3]}",
    )
    assert violations == [], (
        "strict index-transfer bound fails in Z/8; smallest counterexample "
        f"{violations[0][:3]} has indices {violations[0][3:]}"
    )


# --- criterion 4: matrix engine vs exhaustive oracle on M_3(F_2) ----------------


def test_criterion_4_matrix_oracle_equivalence_m3f2():
    t0 = time.perf_counter()
    ring = matrix_ring(2, 3)
    assert ring.element_count == 512
    for e in ring.elements():
        ring_cert = drazin_finite_ring(e)
        field_cert = drazin_matrix(to_matrix_over_field(e))
        assert ring_cert is not None
        assert ring_cert.inverse.payload == field_cert.inverse.payload
        assert ring_cert.index == field_cert.index
    elapsed = time.perf_counter() - t0
    _line("4", True, elapsed, "512 matrices, both engines agree")
    assert elapsed < 120.0


# --- criterion 5: Jacobson formula vs direct elimination ------------------------


def test_criterion_5_jacobson_formula_vs_elimination():
    t0 = time.perf_counter()
    rng = random.Random(570)
    ctx = rationals_matrix(3)
    one = ctx.one()
    done = 0
    while done < 1000:
        a = ctx.elem(
            [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3)] for _ in range(3)]
        )
        b = ctx.elem(
            [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3)] for _ in range(3)]
        )
        s = try_inverse(one - a * b)
        if s is None:
            continue
        t = jacobson_inverse(a, b, b, s)
        assert t == try_inverse(one - b * a)
        done += 1
    elapsed = time.perf_counter() - t0
    _line("5", True, elapsed, "1000 random triples, exact agreement")
    assert elapsed < 30.0


# --- criterion 6: operator truncations ------------------------------------------


def test_criterion_6_operator_truncations():
    t0 = time.perf_counter()
    for n in (4, 8, 16, 32, 64):
        t = build_example_triple(n)
        assert t.a * t.b * t.a == t.a * t.c * t.a
        ac, ba = t.a * t.c, t.b * t.a
        assert nonzero_spectrum_equal(ac, ba)
        cert_ba = drazin_matrix(ba)
        cert_ac = drazin_matrix(ac)
        assert cert_ba.inverse * t.c == t.b * cert_ac.inverse
    elapsed = time.perf_counter() - t0
    _line("6", True, elapsed, "n in {4, 8, 16, 32, 64}")
    assert elapsed < 60.0


# --- criterion 7: classical AB/BA anchor ----------------------------------------


def test_criterion_7_charpoly_product_anchor():
    t0 = time.perf_counter()
    rng = random.Random(770)
    ctx = rationals_matrix(4)
    for _ in range(500):
        m = ctx.elem(
            [[Fraction(rng.randint(-8, 8), rng.randint(1, 3)) for _ in range(4)] for _ in range(4)]
        )
        n = ctx.elem(
            [[Fraction(rng.randint(-8, 8), rng.randint(1, 3)) for _ in range(4)] for _ in range(4)]
        )
        assert char_poly(m * n).char_poly == char_poly(n * m).char_poly
    elapsed = time.perf_counter() - t0
    _line("7", True, elapsed, "500 seeded pairs, exact equality")
    assert elapsed < 60.0


# --- criterion 8: byte-identical sweep reports -----------------------------------


def test_criterion_8_sweep_determinism():
    t0 = time.perf_counter()
    r1 = sweep(matrix_ring(2, 2), "l21,l26,l31", "exhaustive")
    r2 = sweep(matrix_ring(2, 2), "l21,l26,l31", "exhaustive")
    assert dumps_canonical(r1.to_json()) == dumps_canonical(r2.to_json())
    s1 = sweep(matrix_ring(2, 2), "all", "sample", seed=414, count=256)
    s2 = sweep(matrix_ring(2, 2), "all", "sample", seed=414, count=256)
    assert dumps_canonical(s1.to_json()) == dumps_canonical(s2.to_json())
    elapsed = time.perf_counter() - t0
    _line("8", True, elapsed, "byte-identical reports")
