"""Acceptance suite: one test per criterion, one printed pass/fail line each.

Run with `pytest tests/test_acceptance.py -v`; each test prints
`[ACCEPTANCE n] <name>: PASS|FAIL (<elapsed>)` even under output capture.
"""

import io
import json
import random
import time
from contextlib import redirect_stdout

import pytest

from jaccoord import (
    BiPoly,
    Coordinate,
    Linear,
    NotCoordinate,
    TriangularX,
    TriangularY,
    UniPoly,
    Witness,
    absolute_factor_count,
    apply_witness,
    apply_witness_to,
    bipoly_gcd,
    check,
    face_binomial_power,
    fibre_report,
    gen_random_coordinate,
    genus,
    jacobian_det,
    lattice_counts,
    newton_polygon,
    parse_poly,
    rat,
    relation_check,
    substitute,
    theorem3_scan,
    triangle_face,
)
from jaccoord.audit import GenusJump, Inconclusive, ReducibleFibre
from jaccoord.cli import main as cli_main
from jaccoord.coordinate import ReduceSuccess, reduce_step
from jaccoord.fibre import Unknown
from jaccoord.newton import FaceForm, TriangleFace


def report(capsys, number, name, ok, t0):
    line = f"[ACCEPTANCE {number}] {name}: {'PASS' if ok else 'FAIL'} ({time.time() - t0:.1f}s)"
    with capsys.disabled():
        print(line)


def test_1_coordinate_soundness_loop(capsys):
    t0 = time.time()
    failures = []
    for seed in range(100):
        steps = (seed % 4) + 1
        P, _ = gen_random_coordinate(seed, steps, 3, 5)
        v = check(P)
        if not isinstance(v, Coordinate):
            failures.append((seed, "not classified Coordinate"))
            continue
        if apply_witness_to(P, v.witness) != BiPoly.var_x():
            failures.append((seed, "witness does not reduce P to x"))
        jac = jacobian_det(P, v.complement)
        if not jac.is_constant() or jac.is_zero():
            failures.append((seed, "jacobian not a nonzero constant"))
    elapsed_ok = time.time() - t0 < 120
    ok = not failures and elapsed_ok
    report(capsys, 1, "coordinate soundness loop (100 witnesses, <2min)", ok, t0)
    assert failures == []
    assert elapsed_ok


def test_2_obstruction_corpus(capsys):
    t0 = time.time()
    expected = [
        ("x*y", "PolygonNotTriangle", {}),
        ("x + x^2*y", "PolygonNotTriangle", {}),
        ("x^2 + y^3", "FaceExponentsBothExceedOne", {"p": 2, "q": 3}),
        ("y^2 - x^3", "FaceExponentsBothExceedOne", {"p": 3, "q": 2}),
        ("x^3 + y^3", "FaceNotBinomialPower", {}),
        ("x^2", "UnivariateNonlinear", {}),
    ]
    failures = []
    for expr, kind, fields in expected:
        case_t0 = time.time()
        v = check(parse_poly(expr))
        if not isinstance(v, NotCoordinate) or v.obstruction.kind != kind:
            failures.append((expr, "wrong kind"))
            continue
        for name, value in fields.items():
            if getattr(v.obstruction, name) != value:
                failures.append((expr, f"wrong {name}"))
        if time.time() - case_t0 >= 1.0:
            failures.append((expr, "not sub-second"))
    report(capsys, 2, "obstruction corpus (exact kinds)", not failures, t0)
    assert failures == []


def test_3_rational_fibre_relation(capsys):
    t0 = time.time()
    failures = []
    known = 0
    for k in range(25):
        P, _ = gen_random_coordinate(k, 1 + k % 2, 2, 3)
        rng = random.Random(k)
        cs = set()
        while len(cs) < 8:
            cs.add(rat(rng.randint(-9, 9), rng.randint(1, 4)))
        for c in sorted(cs):
            r = fibre_report(P, c)
            if isinstance(r.genus, Unknown) or isinstance(
                r.branches_at_infinity, Unknown
            ):
                continue
            known += 1
            if r.genus != 0:
                failures.append((k, str(c), "genus != 0"))
            if r.branches_at_infinity != 1:
                failures.append((k, str(c), "branches != 1"))
            if not relation_check(r.genus, r.branches_at_infinity):
                failures.append((k, str(c), "relation 2g = 1 - h fails"))
    ok = not failures and known > 0
    report(
        capsys, 3, f"fibre relation 2g = 1 - h ({known} known samples)",
        ok, t0,
    )
    assert failures == []
    assert known > 0


def test_4_contrapositive_scans(capsys):
    t0 = time.time()
    failures = []

    r = theorem3_scan(parse_poly("x*y"), n_random=6, seed=0)
    if not (isinstance(r.violation, ReducibleFibre) and r.violation.c == rat(0)):
        failures.append(("x*y", "expected ReducibleFibre{0}"))
    suspected = [("x*y", r.theorem_violation_suspected)]

    r = theorem3_scan(parse_poly("x + x^2*y"), n_random=6, seed=0)
    if not (isinstance(r.violation, ReducibleFibre) and r.violation.c == rat(0)):
        failures.append(("x + x^2*y", "expected ReducibleFibre{0}"))
    suspected.append(("x + x^2*y", r.theorem_violation_suspected))

    r = theorem3_scan(parse_poly("y^2 - x^3"), n_random=6, seed=0)
    if r.generic_genus != 1:
        failures.append(("y^2 - x^3", "generic genus != 1"))
    if isinstance(r.violation, GenusJump):
        if rat(0) not in (r.violation.c1, r.violation.c2):
            failures.append(("y^2 - x^3", "GenusJump does not name c=0"))
    elif isinstance(r.violation, Inconclusive):
        if rat(0) not in r.violation.unknown_cs:
            failures.append(("y^2 - x^3", "Inconclusive does not name c=0"))
    else:
        failures.append(("y^2 - x^3", "expected GenusJump or Inconclusive"))
    suspected.append(("y^2 - x^3", r.theorem_violation_suspected))

    r = theorem3_scan(parse_poly("y^2 - x^3 - x - 1"), n_random=6, seed=0)
    if r.generic_genus != 1:
        failures.append(("elliptic", "generic genus != 1"))
    if not isinstance(r.verdict, NotCoordinate):
        failures.append(("elliptic", "expected NotCoordinate"))
    suspected.append(("elliptic", r.theorem_violation_suspected))

    fired = [name for name, s in suspected if s]
    if fired:
        failures.append(("suite", f"TheoremViolationSuspected fired: {fired}"))
    report(capsys, 4, "non-coordinate contrapositive scans", not failures, t0)
    assert failures == []


def _rand_component(rng):
    """(polynomial, absolute factor count); component degree <= 3."""
    kind = rng.randint(0, 2)
    if kind == 0:
        # graph y - u(x): absolutely irreducible
        deg = rng.randint(1, 3)
        coeffs = [rat(rng.randint(-3, 3)) for _ in range(deg)] + [
            rat(rng.choice([-2, -1, 1, 2]))
        ]
        return BiPoly.var_y() - UniPoly(coeffs).to_bipoly("x"), 1
    if kind == 1:
        # vertical line
        return BiPoly.var_x() - BiPoly.const(rat(rng.randint(-4, 4))), 1
    # y^2 - d*x^2 splits into two conjugate lines over C
    d = rat(rng.choice([2, 3, 5, -1, -2]))
    return BiPoly({(0, 2): rat(1), (2, 0): -d}), 2


def test_5_ruppert_gao_oracle(capsys):
    t0 = time.time()
    rng = random.Random(50)
    failures = []
    for trial in range(50):
        while True:
            n = rng.randint(1, 3)
            comps = [_rand_component(rng) for _ in range(n)]
            coprime = all(
                bipoly_gcd(comps[i][0], comps[j][0]).is_constant()
                for i in range(n)
                for j in range(i + 1, n)
            )
            if coprime:
                break
        prod = BiPoly.const(1)
        expected = 0
        for f, cnt in comps:
            prod = prod * f
            expected += cnt
        got = absolute_factor_count(prod)
        if got != expected:
            failures.append((trial, prod.to_str(), expected, got))
    for expr, expected in (("y^2 - x^2", 2), ("y - x^2", 1), ("x^2 + y^2", 2)):
        got = absolute_factor_count(parse_poly(expr))
        if got != expected:
            failures.append((expr, expected, got))
    report(capsys, 5, "Ruppert-Gao factor count oracle (50 + 3 cases)", not failures, t0)
    assert failures == []


def test_6_geometry_invariants(capsys):
    t0 = time.time()
    failures = []

    # Pick's identity on 200 random two-dimensional polygons
    rng = random.Random(60)
    checked = 0
    while checked < 200:
        t = {}
        for _ in range(rng.randint(3, 8)):
            t[(rng.randint(0, 9), rng.randint(0, 9))] = rat(1)
        N = newton_polygon(BiPoly(t))
        if N.dim != 2:
            continue
        interior, boundary, a2 = lattice_counts(N)
        if a2 != 2 * interior + boundary - 2:
            failures.append(("pick", N.vertices))
        checked += 1

    # face round-trip on every successful gate along reduction chains
    round_trips = 0
    for seed in range(40):
        P, _ = gen_random_coordinate(seed, (seed % 3) + 1, 3, 5)
        cur = P
        while cur.degx >= 1 and cur.degy >= 1 and cur.total_degree() >= 2:
            tf = triangle_face(cur)
            if isinstance(tf, TriangleFace):
                ff = face_binomial_power(tf)
                if isinstance(ff, FaceForm):
                    if ff.expand() != tf.E:
                        failures.append(("face round-trip", seed))
                    round_trips += 1
            r = reduce_step(cur)
            if not isinstance(r, ReduceSuccess):
                break
            cur = r.next
    if round_trips == 0:
        failures.append(("face round-trip", "no successful gates exercised"))

    # genus invariance of P - c under witness-generated automorphisms;
    # diagonal-linear + triangular steps keep the image Newton-nondegenerate
    # often enough to compare (generic automorphisms never do)
    base = [parse_poly("y^2 - x^5 - x - 2"), parse_poly("y - x^2"),
            parse_poly("y^2 - x^3 - x - 1")]
    compared = 0
    for k in range(20):
        arng = random.Random(200 + k)
        L = Linear(
            rat(arng.choice([1, 2, -1, 3])), rat(0), rat(0),
            rat(arng.choice([1, 2, -1])),
            rat(arng.randint(-2, 2)), rat(arng.randint(-2, 2)),
        )
        phi = UniPoly([rat(arng.randint(-2, 2)), rat(arng.choice([1, -1, 2]))])
        step = TriangularY(phi) if arng.random() < 0.5 else TriangularX(phi)
        sx, sy = apply_witness(Witness((L, step)))
        P = base[k % len(base)]
        for c in (rat(0), rat(1), rat(-2)):
            g1 = genus(P - BiPoly.const(c))
            g2 = genus(substitute(P, sx, sy) - BiPoly.const(c))
            if isinstance(g1, Unknown) or isinstance(g2, Unknown):
                continue
            compared += 1
            if g1 != g2:
                failures.append(("genus invariance", k, str(c), g1, g2))
    if compared == 0:
        failures.append(("genus invariance", "no comparable pairs"))

    report(
        capsys, 6,
        f"geometry invariants (Pick x200, {round_trips} faces, {compared} genus pairs)",
        not failures, t0,
    )
    assert failures == []


def test_7_cli_determinism(capsys):
    t0 = time.time()
    commands = [
        ["check", "y + x^3"],
        ["check", "x*y"],
        ["witness", "y^2 - x^3"],
        ["polygon", "y^2 - x^3 - x - 1"],
        ["fibre", "x*y", "--c", "2/3"],
        ["scan", "y^2 - x^3", "--samples", "4", "--seed", "5"],
        ["scan", "x*y", "--samples", "4", "--seed", "0"],
        ["special-values", "x + x^2*y"],
        ["gen-coordinate", "--seed", "3", "--steps", "3", "--max-deg", "3",
         "--bound", "5"],
    ]
    failures = []
    for argv in commands:
        outs = []
        codes = []
        for _ in range(2):
            buf = io.StringIO()
            with redirect_stdout(buf):
                codes.append(cli_main(list(argv)))
            outs.append(buf.getvalue().encode())
        if outs[0] != outs[1] or codes[0] != codes[1]:
            failures.append(argv)
        if outs[0]:
            json.loads(outs[0])  # well-formed JSON
    report(capsys, 7, "CLI determinism (byte-identical reruns)", not failures, t0)
    assert failures == []
