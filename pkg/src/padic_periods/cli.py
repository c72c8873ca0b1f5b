"""Command line front end: run the computations and emit machine-readable
reports.

Every report is one document {meta, params, results}: meta carries the tool
version, the prime, and the residue encoding (residues are pairs [a, b]
meaning a + b*x in F_p[x]/(x^2 - n)); results is a list of named entries with
status pass, fail, info, finding, or skipped.  Output is deterministic for
fixed inputs and version: keys are sorted, floats never appear, and wall
clock timing is only attached when --timing asks for it.

Exit codes: 0 all checks pass, 1 a hard check failed, 2 usage error,
3 geometric precondition failed, 4 precision or stabilization failure.
"""

import argparse
import csv
import json
import math
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .arith import Fp2Element, is_prime, residual_of
from .pairing import (
    build_pairing_matrix,
    eisenstein_check,
    frobenius_equivariance_check,
    integer_det,
    rationality_check,
    twelfth_power_table,
    valuation_gram,
)
from .qseries import (
    correspondence_pullback,
    h3_expansion,
    lambda_eta_quotient,
    lambda_expansion,
    mu3_expansion,
    mu_expansion,
    ramification_table,
    u_expansion,
    u_root_oracle,
    uniformizer_relations,
    unit_group_exponent,
    verify_fourier_mu,
    verify_functional_equation_u,
)
from .qseries import SeriesError
from .schottky import INFINITY, Disk, GeometryError, MobiusMap, SchottkyGroup
from .supersingular import SupersingularSet, deuring_polynomial, supersingular_lambdas
from .theta import StabilizationError, ThetaError, drinfeld_pairing

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_USAGE = 2
EXIT_GEOMETRY = 3
EXIT_PRECISION = 4

QSERIES_CHECKS = (
    "all", "lambda", "u", "mu", "fourier-mu", "functional-eq", "ramify", "n3",
)


class CommandError(Exception):
    """Failure with a dedicated exit code; the message goes to stderr."""

    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _require_prime(value):
    if not isinstance(value, int) or value < 5 or not is_prime(value):
        raise CommandError(EXIT_USAGE, "prime must be a prime >= 5, got %r" % (value,))
    return value


def _number(q):
    q = Fraction(q)
    if q.denominator == 1:
        return int(q)
    return "%d/%d" % (q.numerator, q.denominator)


def _class_json(rc):
    return {"val": int(rc.val), "res": [int(rc.res.a), int(rc.res.b)]}


def _result(name, status, value):
    return {"name": name, "status": status, "value": value}


def _fp2_encoding(p, n):
    return {
        "p": p,
        "n": n,
        "residue_field": "F_%d[x]/(x^2 - %d)" % (p, n),
        "residue": "[a, b] means a + b*x",
    }


def _document(command, prime, encoding, params, results):
    return {
        "meta": {
            "tool": "padic-periods",
            "version": __version__,
            "command": command,
            "prime": prime,
            "encoding": encoding,
        },
        "params": params,
        "results": results,
    }


def _emit(doc, fmt, stream):
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["section", "name", "status", "value"])
        for key in sorted(doc["meta"]):
            writer.writerow(["meta", key, "", _cell(doc["meta"][key])])
        for key in sorted(doc["params"]):
            writer.writerow(["params", key, "", _cell(doc["params"][key])])
        for r in doc["results"]:
            writer.writerow(["result", r["name"], r["status"], _cell(r["value"])])
    else:
        stream.write(json.dumps(doc, sort_keys=True, indent=2))
        stream.write("\n")


def _cell(value):
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True)


def _exit_status(results):
    return EXIT_CHECK if any(r["status"] == "fail" for r in results) else EXIT_OK


# ---------------------------------------------------------------- supersingular

def _cache_path(cache_dir, p):
    return os.path.join(cache_dir, "supersingular_%d.json" % p)


def load_supersingular(p, cache_dir=None):
    """Supersingular data, read from the per-prime cache file when the
    version stamp matches, recomputed and written back otherwise."""
    if cache_dir:
        path = _cache_path(cache_dir, p)
        if os.path.exists(path):
            with open(path) as fh:
                raw = json.load(fh)
            if raw.get("version") == __version__ and raw.get("p") == p:
                n = raw["n"]
                lambdas = tuple(Fp2Element(p, a, b, n) for a, b in raw["lambdas"])
                return SupersingularSet(
                    p=p, lambdas=lambdas, frobenius_perm=tuple(raw["frobenius_perm"])
                )
    data = supersingular_lambdas(p)
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        payload = {
            "version": __version__,
            "p": p,
            "n": data.lambdas[0].n,
            "lambdas": [[e.a, e.b] for e in data.lambdas],
            "frobenius_perm": list(data.frobenius_perm),
        }
        with open(_cache_path(cache_dir, p), "w") as fh:
            json.dump(payload, fh, sort_keys=True)
            fh.write("\n")
    return data


def cmd_supersingular(args, stream):
    p = _require_prime(args.prime)
    data = load_supersingular(p, args.cache_dir)
    n = data.lambdas[0].n
    expected = (p - 1) // 2
    results = [
        _result("count", "pass" if len(data.lambdas) == expected else "fail",
                {"found": len(data.lambdas), "expected": expected}),
        _result("lambdas", "info", [[e.a, e.b] for e in data.lambdas]),
        _result("frobenius_permutation", "info", list(data.frobenius_perm)),
        _result("deuring_coefficients", "info", deuring_polynomial(p)),
        _result("nonresidue", "info", n),
    ]
    doc = _document("supersingular", p, _fp2_encoding(p, n),
                    {"prime": p, "cache_dir": args.cache_dir}, results)
    return doc, _exit_status(results)


# --------------------------------------------------------------------- pairing

def cmd_pairing(args, stream):
    p = _require_prime(args.prime)
    matrix = build_pairing_matrix(p)
    size = matrix.size
    table = twelfth_power_table(matrix) if args.powered else matrix.entries
    entries = [[_class_json(table[i][j]) for j in range(size)] for i in range(size)]
    gram = valuation_gram(matrix)
    g = size - 1
    expected_gram = [[1 + (i == j) for j in range(g)] for i in range(g)]
    checks = [
        ("eisenstein_rows", eisenstein_check(matrix)),
        ("residue_rationality", rationality_check(matrix)),
        ("frobenius_equivariance", frobenius_equivariance_check(matrix)),
        ("valuation_gram_form", gram == expected_gram),
        ("gram_determinant", integer_det(gram) == size),
    ]
    results = [
        _result("entries", "info", entries),
        _result("power_exponent", "info", 12 // matrix.d if args.powered else 1),
        _result("matrix_size", "info", size),
    ]
    results += [_result(name, "pass" if ok else "fail", bool(ok)) for name, ok in checks]
    doc = _document("pairing", p, _fp2_encoding(p, matrix._n),
                    {"prime": p, "powered": bool(args.powered)}, results)
    return doc, _exit_status(results)


# ----------------------------------------------------------------------- theta

def _parse_rational(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise CommandError(EXIT_USAGE, "expected an exact rational in %s, got %r" % (where, x))
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise CommandError(EXIT_USAGE, "cannot parse rational %r in %s" % (x, where))


def _parse_disk(raw, where):
    if not isinstance(raw, dict) or "center" not in raw or "radius_valuation" not in raw:
        raise CommandError(EXIT_USAGE, "ball in %s needs center and radius_valuation" % where)
    return Disk(
        _parse_rational(raw["center"], where),
        _parse_rational(raw["radius_valuation"], where),
        bool(raw.get("closed", True)),
        bool(raw.get("complement", False)),
    )


def load_group(path, prime):
    """Schottky group from a JSON file of exact generator matrices and
    marked ball pairs."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise CommandError(EXIT_USAGE, "cannot read generators file: %s" % exc)
    except json.JSONDecodeError as exc:
        raise CommandError(EXIT_USAGE, "generators file is not valid JSON: %s" % exc)
    if raw.get("prime") is not None and raw["prime"] != prime:
        raise CommandError(
            EXIT_USAGE,
            "generators file is for p=%s, command asked for p=%d" % (raw["prime"], prime),
        )
    mats = raw.get("generators")
    if not mats:
        raise CommandError(EXIT_USAGE, "generators file lists no generators")
    generators = []
    for idx, rows in enumerate(mats):
        flat = [_parse_rational(x, "generator %d" % (idx + 1)) for row in rows for x in row]
        if len(flat) != 4:
            raise CommandError(EXIT_USAGE, "generator %d is not a 2x2 matrix" % (idx + 1))
        try:
            generators.append(MobiusMap(*flat))
        except GeometryError as exc:
            raise CommandError(EXIT_USAGE, "generator %d: %s" % (idx + 1, exc))
    balls = None
    if raw.get("balls") is not None:
        balls = tuple(
            (
                _parse_disk(pair[0], "ball pair %d" % (idx + 1)),
                _parse_disk(pair[1], "ball pair %d" % (idx + 1)),
            )
            for idx, pair in enumerate(raw["balls"])
        )
    try:
        return SchottkyGroup(tuple(generators), balls)
    except GeometryError as exc:
        raise CommandError(EXIT_USAGE, str(exc))


def _parse_word(text, rank, flag):
    text = (text or "").strip()
    if text in ("", "e"):
        return ()
    word = []
    for part in text.split(","):
        try:
            s = int(part)
        except ValueError:
            raise CommandError(EXIT_USAGE, "%s: bad word letter %r" % (flag, part))
        if s == 0 or abs(s) > rank:
            raise CommandError(EXIT_USAGE, "%s: letter %d out of range 1..%d" % (flag, s, rank))
        word.append(s)
    return tuple(word)


def _exact_json(q):
    """Exact rational, verbatim up to 512 bits per side; beyond that only
    the sizes are reported (the valuation and residue still carry the
    arithmetic content)."""
    q = Fraction(q)
    if q.numerator.bit_length() <= 512 and q.denominator.bit_length() <= 512:
        return _number(q)
    return {
        "omitted": "rational too large to print",
        "numerator_bits": q.numerator.bit_length(),
        "denominator_bits": q.denominator.bit_length(),
    }


def _precision_json(estimate):
    if estimate is None:
        return None
    if estimate is math.inf or estimate == math.inf:
        return "inf"
    return int(estimate)


def cmd_theta(args, stream):
    p = _require_prime(args.prime)
    if args.max_length < 0:
        raise CommandError(EXIT_USAGE, "--max-length must be nonnegative")
    group = load_group(args.generators, p)
    alpha = _parse_word(args.alpha, group.rank, "--alpha")
    beta = _parse_word(args.beta, group.rank, "--beta")
    try:
        res = drinfeld_pairing(group, alpha, beta, args.max_length, p)
    except StabilizationError as exc:
        raise CommandError(EXIT_PRECISION, str(exc))
    except (GeometryError, ThetaError) as exc:
        raise CommandError(EXIT_GEOMETRY, str(exc))
    residue = residual_of(res.value)
    results = [
        _result("valuation", "info", int(res.valuation)),
        _result("residual_class", "info", _class_json(residue)),
        _result("exact_value", "info", _exact_json(res.exact)),
        _result("precision_estimate", "info", _precision_json(res.precision_estimate)),
        _result("stabilization_profile", "info",
                [[int(ell), _precision_json(v)] for ell, v in res.profile]),
        _result("witnesses", "info", [_number(w) for w in res.witnesses]),
    ]
    params = {
        "prime": p,
        "generators": args.generators,
        "alpha": list(alpha),
        "beta": list(beta),
        "max_length": args.max_length,
    }
    doc = _document("theta", p, _fp2_encoding(p, Fp2Element(p, 0, 0).n), params, results)
    return doc, EXIT_OK


# --------------------------------------------------------------------- qseries

def _check_lambda(order):
    lam = lambda_expansion(order)
    ok = lam.matches(lambda_eta_quotient(order))
    coeffs = [_number(lam.coefficient(k).rational()) for k in range(1, min(order, 9))]
    return [
        _result("lambda_eta_identity", "pass" if ok else "fail",
                {"order": order, "coefficients": coeffs}),
    ]


def _check_u(p, order):
    d = unit_group_exponent(p)
    lead = (p - 1) // d
    order = max(order, lead + 3)
    u = u_expansion(p, order)
    lead_ok = u.valuation() == lead and u.leading_coefficient() == 1
    oracle_ok = u.matches(u_root_oracle(p, order))
    coeffs = [_number(u.coefficient(lead + k).rational()) for k in range(3)]
    return [
        _result("u_leading_exponent", "pass" if lead_ok else "fail",
                {"exponent": lead, "coefficients": coeffs}),
        _result("u_root_oracle", "pass" if oracle_ok else "fail", {"order": order}),
    ]


def _check_mu(p, order):
    order = max(order, 4)
    mu = mu_expansion(p, order, cross_check=True)
    ok = mu.valuation() == 0 and mu.leading_coefficient() == 1
    coeffs = [_number(mu.coefficient(k).rational()) for k in range(min(order, 6))]
    return [
        _result("mu_expansion", "pass" if ok else "fail",
                {"order": order, "coefficients": coeffs}),
    ]


def _check_fourier_mu(p):
    d = unit_group_exponent(p)
    coefficient, exponent = verify_fourier_mu(p)
    ok = coefficient == Fraction(1, p ** (12 // d)) and exponent == -6 * (p - 1) // d
    return [
        _result("fourier_mu", "pass" if ok else "fail",
                {"coefficient": "%d^-%d" % (p, 12 // d), "exponent": exponent}),
    ]


def _check_functional_eq(p):
    report = verify_functional_equation_u(p)
    value = {
        "root_exponent": report.root_exponent,
        "p_exponent": report.p_exponent,
        "commutation_matrix": [list(row) for row in report.commutation.matrix],
    }
    return [_result("functional_equation", "pass" if report.verified else "fail", value)]


def _cusp_label(cusp):
    if cusp is INFINITY:
        return "inf"
    return str(Fraction(cusp)).replace("/", "_")


def _slug(label):
    return "".join(ch if ch.isalnum() else "_" for ch in label).strip("_")


def _check_ramify(p):
    results = []
    for rel in uniformizer_relations(p):
        results.append(_result(
            "uniformizer_relation_%s" % _cusp_label(rel.source),
            "pass" if rel.ok else "fail",
            {"identity": rel.index_identity, "halving": rel.index_halving},
        ))
    pull = correspondence_pullback(p)
    pull_ok = pull.matches and pull.fiber_sums_match and pull.degree_zero
    results.append(_result(
        "correspondence_pullback", "pass" if pull_ok else "fail",
        {
            "divisor": {_cusp_label(c): v for c, v in pull.divisor.items() if v},
            "degrees": dict(sorted(pull.degrees.items())),
        },
    ))
    table = ramification_table(p)
    results.append(_result(
        "ramification_table", "info",
        {
            "coverings": list(table.coverings),
            "rows": {_cusp_label(c): list(row) for c, row in table.rows.items()},
            "reference": {_cusp_label(c): list(row) for c, row in table.reference.items()},
        },
    ))
    results.append(_result(
        "ramification_fiber_sums", "pass" if table.fiber_sums_match else "fail",
        {label: table.degrees[label] for label in sorted(table.degrees)},
    ))
    for f in table.findings:
        results.append(_result(
            "table_finding_%s_%s" % (_cusp_label(f.cusp), _slug(f.covering)),
            "finding",
            {"computed": f.computed, "stated": f.stated},
        ))
    return results


def _check_n3(p, order):
    order = max(order, 3)
    m = mu3_expansion(p, order)
    in_field = all(c.field_order() in (1, 3) for _, c in m.sorted_terms())
    lead_ok = m.valuation() == 0 and m.coefficient(0) == 1
    h = h3_expansion(3)
    h_ok = (
        h.valuation() == -1
        and h.coefficient(-1) == 1
        and h.coefficient(0) == -3
        and h.coefficient(1) == 0
        and h.coefficient(2) == 5
    )
    t1 = m.coefficient(1)
    return [
        _result("mu3_expansion", "pass" if (lead_ok and in_field) else "fail",
                {"order": order, "t_coefficient": [_number(x) for x in t1.coords]}),
        _result("h3_principal_part", "pass" if h_ok else "fail",
                {"coefficients": [1, -3, 5], "exponents": [-1, 0, 2]}),
    ]


def cmd_qseries(args, stream):
    check = args.check
    prime = None
    if args.prime is not None:
        prime = _require_prime(args.prime)
    if check != "lambda" and prime is None:
        raise CommandError(EXIT_USAGE, "--check %s needs --prime" % check)
    if args.order is not None and args.order < 2:
        raise CommandError(EXIT_USAGE, "--order must be at least 2")
    if check == "n3" and prime % 3 != 1:
        raise CommandError(
            EXIT_GEOMETRY,
            "the cube-root construction needs p = 1 mod 3, got p = %d" % prime,
        )

    # an explicit order only retunes the single named check
    explicit = args.order if check != "all" else None

    def pick(default):
        return explicit if explicit is not None else default

    results = []
    try:
        if check in ("all", "lambda"):
            results += _check_lambda(pick(40))
        if check in ("all", "u"):
            results += _check_u(prime, pick(12))
        if check in ("all", "mu"):
            results += _check_mu(prime, pick(6))
        if check in ("all", "fourier-mu"):
            results += _check_fourier_mu(prime)
        if check in ("all", "functional-eq"):
            results += _check_functional_eq(prime)
        if check in ("all", "ramify"):
            results += _check_ramify(prime)
        if check == "n3":
            results += _check_n3(prime, pick(4))
        elif check == "all":
            if prime % 3 == 1:
                results += _check_n3(prime, pick(4))
            else:
                results.append(_result("n3", "skipped",
                                       {"reason": "needs p = 1 mod 3"}))
    except SeriesError as exc:
        raise CommandError(EXIT_USAGE, str(exc))
    encoding = {"p": prime, "coefficients": "exact rationals; n3 uses basis 1, w, w^2, w^3 of Q(zeta_12)"}
    params = {"prime": prime, "check": check, "order": args.order}
    doc = _document("qseries", prime, encoding, params, results)
    return doc, _exit_status(results)


# ------------------------------------------------------------------- dispatch

def build_parser():
    parser = argparse.ArgumentParser(
        prog="padic-periods",
        description="Exact residual period pairings, Schottky theta products, and q-expansion checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--timing", action="store_true",
                        help="attach wall-clock seconds to meta (breaks byte determinism)")

    ss = sub.add_parser("supersingular", help="lambda-invariants, Frobenius, Deuring coefficients")
    ss.add_argument("--prime", type=int, required=True)
    ss.add_argument("--cache-dir", default=os.environ.get("PADIC_PERIODS_CACHE"))
    common(ss)

    pr = sub.add_parser("pairing", help="residual pairing matrix and its checks")
    pr.add_argument("--prime", type=int, required=True)
    pr.add_argument("--powered", action="store_true",
                    help="emit the (12/d)-th power table instead of the raw entries")
    common(pr)

    th = sub.add_parser("theta", help="period pairing on a Schottky group from a generators file")
    th.add_argument("--prime", type=int, required=True)
    th.add_argument("--generators", required=True, help="JSON file of matrices and marked balls")
    th.add_argument("--alpha", required=True, help="word, e.g. '1' or '1,-2' ('e' = identity)")
    th.add_argument("--beta", required=True)
    th.add_argument("--max-length", type=int, default=8)
    common(th)

    qs = sub.add_parser("qseries", help="q-expansion identity checks")
    qs.add_argument("--prime", type=int)
    qs.add_argument("--check", choices=QSERIES_CHECKS, default="all")
    qs.add_argument("--order", type=int)
    common(qs)

    return parser


COMMANDS = {
    "supersingular": cmd_supersingular,
    "pairing": cmd_pairing,
    "theta": cmd_theta,
    "qseries": cmd_qseries,
}


def main(argv=None, stream=None, error_stream=None):
    stream = stream or sys.stdout
    error_stream = error_stream or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    started = time.perf_counter()
    try:
        doc, code = COMMANDS[args.command](args, stream)
    except CommandError as exc:
        print("error: %s" % exc, file=error_stream)
        return exc.code
    if args.timing:
        doc["meta"]["timing_seconds"] = round(time.perf_counter() - started, 6)
    _emit(doc, args.format, stream)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
