"""Acceptance run: one test per numbered criterion, each printing its own
pass/fail line to the real stdout so the record survives pytest capture."""

import functools
import io
import json
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from padic_periods.arith import is_prime, rational_valuation
from padic_periods.cli import main as cli_main
from padic_periods.pairing import (
    DivisorOnS,
    basis_divisor,
    build_pairing_matrix,
    eisenstein_check,
    eisenstein_divisor,
    frobenius_equivariance_check,
    integer_det,
    pair_divisors,
    rationality_check,
    valuation_gram,
)
from padic_periods.qseries import (
    correspondence_pullback,
    lambda_eta_quotient,
    lambda_expansion,
    ramification_table,
    u_expansion,
    uniformizer_relations,
    unit_group_exponent,
    verify_fourier_mu,
)
from padic_periods.schottky import translation_length
from padic_periods.supersingular import supersingular_lambdas
from padic_periods.theta import drinfeld_pairing
from padic_periods.theta import valuation_gram as theta_gram

from _instances import genus2_group, tate_group

ROOT = Path(__file__).resolve().parent.parent
SAMPLES = ROOT / "sample_inputs"
PRIMES = [p for p in range(5, 500) if is_prime(p)]


def conclude(capsys, number, slug, ok):
    line = "criterion %02d %s: %s" % (number, slug, "PASS" if ok else "FAIL")
    with capsys.disabled():
        print("\n" + line)
        sys.stdout.flush()
    assert ok, line


@functools.lru_cache(maxsize=None)
def matrix_for(p):
    return build_pairing_matrix(p)


def entry_tuple(matrix, i, j):
    c = matrix.entry(i, j)
    assert c.res.b == 0
    return (c.val, c.res.a)


def test_criterion_01_supersingular_counts(capsys):
    start = time.perf_counter()
    ok = all(len(supersingular_lambdas(p).lambdas) == (p - 1) // 2 for p in PRIMES)
    elapsed = time.perf_counter() - start
    conclude(capsys, 1, "supersingular counts for 5 <= p < 500", ok and elapsed < 10.0)


def test_criterion_02_exact_root_instances(capsys):
    s7 = supersingular_lambdas(7)
    s5 = supersingular_lambdas(5)
    ok = (
        [(e.a, e.b) for e in s7.lambdas] == [(2, 0), (4, 0), (6, 0)]
        and [(e.a, e.b) for e in s5.lambdas] == [(3, 2), (3, 3)]
        and s5.lambdas[0].n == 2
        and s5.frobenius_perm == (1, 0)
        and s7.frobenius_perm == (0, 1, 2)
    )
    conclude(capsys, 2, "exact roots at p=5 and p=7", ok)


def test_criterion_03_eisenstein_identity(capsys):
    start = time.perf_counter()
    ok = True
    for p in PRIMES:
        m = matrix_for(p)
        if not eisenstein_check(m) or not np.all(m.valuation_array().sum(axis=1) == 1):
            ok = False
            break
    # spot exactness straight from the bilinear pairing
    for p in (5, 7, 11):
        m = matrix_for(p)
        e_hat = eisenstein_divisor(m.size)
        for i in range(m.size):
            c = pair_divisors(m, basis_divisor(i, m.size), e_hat)
            if (c.val, c.res.a, c.res.b) != (1, 1, 0):
                ok = False
    elapsed = time.perf_counter() - start
    conclude(capsys, 3, "eisenstein rows equal class(p)", ok and elapsed < 60.0)


def test_criterion_04_rationality_and_frobenius(capsys):
    ok = True
    for p in PRIMES:
        m = matrix_for(p)
        if not (
            rationality_check(m)
            and frobenius_equivariance_check(m)
            and np.all(m.residue_array() % p != 0)
        ):
            ok = False
            break
    conclude(capsys, 4, "rationality and frobenius equivariance", ok)


def test_criterion_05_valuation_gram(capsys):
    ok = True
    for p in PRIMES:
        m = matrix_for(p)
        g = m.size - 1
        gram = valuation_gram(m)
        if gram != [[1 + (i == j) for j in range(g)] for i in range(g)]:
            ok = False
            break
        if integer_det(gram) != g + 1:
            ok = False
            break
    conclude(capsys, 5, "valuation gram is 1 + delta with det g+1", ok)


def test_criterion_06_worked_instances(capsys):
    m5 = matrix_for(5)
    m7 = matrix_for(7)
    square = pair_divisors(m5, DivisorOnS((-1, 1)), DivisorOnS((-1, 1)))
    ok = (
        [[entry_tuple(m5, i, j) for j in range(2)] for i in range(2)]
        == [[(1, 2), (0, 3)], [(0, 3), (1, 2)]]
        and (square.val, square.res.a, square.res.b) == (2, 1, 0)
        and entry_tuple(m7, 0, 0) == (1, 1)
        and entry_tuple(m7, 0, 1) == (0, 4)
    )
    conclude(capsys, 6, "worked pairing matrices at p=5 and p=7", ok)


def test_criterion_07_theta_pairings(capsys):
    start = time.perf_counter()
    tate = drinfeld_pairing(tate_group(5), (1,), (1,), 12, 5)
    shells = [v for _, v in tate.profile if v is not None]
    tate_ok = (
        tate.valuation == 1
        and len(shells) >= 5
        and all(a < b for a, b in zip(shells, shells[1:]))
        and time.perf_counter() - start < 5.0
    )

    g = genus2_group(5)
    ab = drinfeld_pairing(g, (1,), (2,), 6, 5)
    ba = drinfeld_pairing(g, (2,), (1,), 6, 5)
    bound = min(ab.precision_estimate, ba.precision_estimate)
    sym = ab.exact / ba.exact - 1
    symmetric = bound >= 4 and (sym == 0 or rational_valuation(sym, 5) >= bound)

    joint = drinfeld_pairing(g, (1, 2), (1,), 6, 5)
    left = drinfeld_pairing(g, (1,), (1,), 6, 5)
    right = drinfeld_pairing(g, (2,), (1,), 6, 5)
    b2 = min(joint.precision_estimate, left.precision_estimate, right.precision_estimate)
    lin = joint.exact / (left.exact * right.exact) - 1
    bilinear = b2 >= 4 and (lin == 0 or rational_valuation(lin, 5) >= b2)

    gram = theta_gram(g, 6, 5)
    lengths = [translation_length(m, 5) for m in g.generators]
    gram_ok = (
        gram[0][0] > 0
        and gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0] > 0
        and [gram[i][i] for i in range(2)] == lengths
    )
    conclude(capsys, 7, "theta pairings on tate and genus-2 groups",
             tate_ok and symmetric and bilinear and gram_ok)


def test_criterion_08_q_series(capsys):
    start = time.perf_counter()
    lam = lambda_expansion(40)
    lam_ok = (
        [lam.coefficient(k).rational() for k in (1, 2, 3)] == [16, -128, 704]
        and lam.matches(lambda_eta_quotient(40))
    )
    u_ok = True
    for p in (5, 7, 11, 13, 17, 19):
        d = unit_group_exponent(p)
        u = u_expansion(p, 12)
        if u.valuation() != (p - 1) // d or u.leading_coefficient() != 1:
            u_ok = False
    fourier_ok = True
    for p in (5, 7, 11, 13):
        d = unit_group_exponent(p)
        if verify_fourier_mu(p) != (Fraction(1, p ** (12 // d)), -6 * (p - 1) // d):
            fourier_ok = False
    elapsed = time.perf_counter() - start
    conclude(capsys, 8, "q-series identities", lam_ok and u_ok and fourier_ok and elapsed < 30.0)


def test_criterion_09_ramification(capsys):
    ok = True
    for p in (5, 7, 13):
        relations = uniformizer_relations(p)
        if len(relations) != 6 or not all(r.ok for r in relations):
            ok = False
        expected_indices = {
            (Fraction(1), (2, 4)),
            (Fraction(1, p), (2, 4)),
        }
        seen = {(r.source, (r.index_identity, r.index_halving)) for r in relations}
        if not expected_indices <= seen:
            ok = False
        pull = correspondence_pullback(p)
        if not (pull.matches and pull.fiber_sums_match and pull.degree_zero):
            ok = False
        nonzero = {c: v for c, v in pull.divisor.items() if v}
        if sorted(nonzero.values()) != [-6, 6]:
            ok = False
        table = ramification_table(p)
        if not table.fiber_sums_match:
            ok = False
        # the reference rows that disagree surface as findings, never silently
        mismatches = {
            (c, label)
            for c, row in table.rows.items()
            for label, computed, stated in zip(table.coverings, row, table.reference[c])
            if computed != stated
        }
        if mismatches != {(f.cusp, f.covering) for f in table.findings}:
            ok = False
    conclude(capsys, 9, "uniformizer relations, pullback, fiber sums", ok)


CLI_SUITE = (
    ("supersingular", "--prime", "5"),
    ("supersingular", "--prime", "7"),
    ("supersingular", "--prime", "97"),
    ("pairing", "--prime", "5"),
    ("pairing", "--prime", "7", "--powered"),
    ("pairing", "--prime", "97"),
    ("theta", "--prime", "5", "--generators", str(SAMPLES / "tate5.json"),
     "--alpha", "1", "--beta", "1", "--max-length", "10"),
    ("theta", "--prime", "5", "--generators", str(SAMPLES / "genus2_5.json"),
     "--alpha", "1", "--beta", "2", "--max-length", "6"),
    ("qseries", "--prime", "7", "--check", "all"),
    ("qseries", "--check", "lambda"),
)


def run_cli_suite():
    out = []
    for argv in CLI_SUITE:
        buf = io.StringIO()
        err = io.StringIO()
        code = cli_main(list(argv), stream=buf, error_stream=err)
        out.append((argv, code, buf.getvalue()))
    return out


def test_criterion_10_determinism(capsys):
    first = run_cli_suite()
    second = run_cli_suite()
    ok = first == second
    for _, code, blob in first:
        if code != 0 or not isinstance(json.loads(blob), dict):
            ok = False
    cmd = [sys.executable, "-m", "padic_periods.cli",
           "qseries", "--prime", "7", "--check", "ramify"]
    raw1 = subprocess.run(cmd, capture_output=True, cwd=str(ROOT)).stdout
    raw2 = subprocess.run(cmd, capture_output=True, cwd=str(ROOT)).stdout
    ok = ok and raw1 == raw2 and raw1.endswith(b"\n")
    conclude(capsys, 10, "byte-identical reports across runs", ok)
