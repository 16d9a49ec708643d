"""Acceptance criteria; each test prints one PASS/FAIL line."""

import random
import subprocess
import sys
import time

import pytest

from cwcalc import checks
from cwcalc.basering import REAL
from cwcalc.chow import mod2_reduce
from cwcalc.chowwitt import cw_generators, cw_group, euler_class, make_class, pontryagin_class, theta_euler
from cwcalc.cli import EvalConfig, eval_expr, main, parse_expr, to_string
from cwcalc.cli.parser import Call, Int, Name, Power, Product, Sum
from cwcalc.icohomology import ICohClass, bockstein, icoh_group, image_sq2_vectors, rho, torsion_basis
from cwcalc.polynomial import monomials_of_degree
from cwcalc.steenrod import Twist, sq2_matrix
from helpers import f2, zpoly


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance {number:2d}] {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail

    return emit


def _clear_caches():
    for f in (torsion_basis, sq2_matrix, image_sq2_vectors, monomials_of_degree):
        f.cache_clear()


GOLDEN_O = {0: (1, 0), 1: (0, 0), 2: (0, 1), 3: (0, 1), 4: (2, 2)}
GOLDEN_T = {0: 0, 1: 1, 2: 0, 3: 2, 4: 1}


def test_01_bsl4c_golden_table(report):
    _clear_caches()
    start = time.perf_counter()
    got_o = {q: (icoh_group(4, q, Twist.O).w_rank, icoh_group(4, q, Twist.O).torsion_rank) for q in range(5)}
    got_t = {q: (icoh_group(4, q, Twist.T).w_rank, icoh_group(4, q, Twist.T).torsion_rank) for q in range(5)}
    elapsed = time.perf_counter() - start
    ok = got_o == GOLDEN_O and got_t == {q: (0, t) for q, t in GOLDEN_T.items()} and elapsed < 1.0
    report(1, ok, f"BSL4c table untwisted {got_o} twisted {got_t} in {elapsed:.3f}s")


def test_02_golden_relation(report):
    value = eval_expr("bT(c2)^2 + b(c2)^2 + bT(1)^2*p2", EvalConfig(4, "icoh"))
    report(2, value == {}, f"bT(c2)^2 + b(c2)^2 + bT(1)^2*p2 at n=4 evaluates to {value or 0}")


def test_03_steenrod_suite(report):
    start = time.perf_counter()
    results = [
        checks.sq2_nilpotent(n_max=6, q_max=12),
        checks.derivation(n_max=6, q_max=10, samples=500),
        checks.twist_identity(n_max=6, q_max=12),
        checks.naturality(n_max=6, q_max=12),
    ]
    elapsed = time.perf_counter() - start
    ok = all(r.ok for r in results) and elapsed < 30
    report(3, ok, "; ".join(r.line() for r in results) + f"; {elapsed:.2f}s")


def test_04_kernel_lemmas(report):
    r = checks.kernel_lemmas(n_max=6, q_max=10)
    report(4, r.ok and r.cases == 10, r.line())


def test_05_product_paths(report):
    r = checks.product_paths(n_max=6, q_max=12, samples=500, seed=2024)
    report(5, r.ok and r.cases == 500, r.line())


def test_06_chow_presentation(report):
    r = checks.localization(n_max=6, q_max=12)
    report(6, r.ok and r.cases == 72, r.line())


def test_07_chow_witt_groups(report):
    start = time.perf_counter()
    failures = []
    for n in range(1, 6):
        for j in range(11):
            for tw in Twist:
                sym = cw_group(n, j, tw, "symbolic")
                inst = cw_group(n, j, tw, "instantiated", REAL)
                if inst.two_torsion or inst.z_rank != 2 * sym.gw_rank + sym.z_rank:
                    failures.append((n, j, str(tw)))
    spot = (
        cw_group(4, 0, Twist.O).summary() == "GW^1"
        and cw_group(4, 2, Twist.O).summary() == "Z^2"
        and cw_group(4, 1, Twist.T).summary() == "Z^1"
        and cw_generators(4, 1, Twist.T) == [theta_euler(4)]
    )
    elapsed = time.perf_counter() - start
    ok = not failures and spot and elapsed < 60
    report(7, ok, f"110 (n, j, twist) cases, mismatches {failures}, spot values {'ok' if spot else 'wrong'}, {elapsed:.2f}s")


def test_08_characteristic_classes(report):
    p2 = pontryagin_class(4, 1)
    ok = p2.ch_part == zpoly(4, {"c2^2": 1, "c4": 2, "th*c3": -4})
    ok &= mod2_reduce(p2.ch_part) == rho(ICohClass.free_generator(4, "p2")) == f2(4, "c2^2")
    e4 = make_class(ICohClass.free_generator(4, "e4"), zpoly(4, {"c4": 1}))
    eth = make_class(ICohClass.from_torsion(bockstein(f2(4, "1"), Twist.T)), zpoly(4, {"th": 1}))
    ok &= e4 == euler_class(4) and eth == theta_euler(4)
    report(8, ok, f"p2 = {p2}; e4 = {e4}; e(Theta) = {eth}")


def test_09_torsion_dimension(report):
    r = checks.torsion_dimension(n_max=6, q_max=12)
    report(9, r.ok and r.cases == 144, r.line())


def _random_node(rng, depth=0):
    if depth > 2 or rng.random() < 0.3:
        return rng.choice([Name(rng.choice(["th", "c2", "c3", "c4", "p2", "e4"])), Int(rng.randint(0, 4))])
    kind = rng.choice(["call", "power", "product", "sum"])
    if kind == "call":
        return Call(rng.choice(["b", "bT", "H", "HT"]), _random_node(rng, depth + 1))
    if kind == "power":
        return Power(_random_node(rng, depth + 1), rng.randint(0, 3))
    if kind == "product":
        return Product(tuple(_random_node(rng, depth + 1) for _ in range(rng.randint(2, 3))))
    terms = tuple((rng.choice([1, -1]), _random_node(rng, depth + 1)) for _ in range(rng.randint(2, 3)))
    return Sum(terms)


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "cwcalc", *args], capture_output=True).stdout


def test_10_cli_contract(report, capsys):
    queries = [
        ["group", "--theory", "icoh", "--n", "4", "-q", str(q), "--twist", tw, "--format", "json"]
        for q in range(5)
        for tw in "OT"
    ]
    stable = all(_cli(*q) == _cli(*q) for q in queries)
    rng = random.Random(10)
    trees = [_random_node(rng) for _ in range(100)]
    roundtrip = all(parse_expr(to_string(t)) == t for t in trees)
    codes = (
        main(["check", "--suite", "sq2-nilpotent", "--n", "6", "--qmax", "12"]),
        main(["group", "--theory", "chow", "--n", "4", "-q", "1", "--twist", "T"]),
        main(["eval", "--n", "4", "b(c2"]),
    )
    try:
        main(["group", "--n"])
        usage = None
    except SystemExit as exc:
        usage = exc.code
    checks.SUITES["always-fails"] = lambda **_: checks.SuiteResult("always-fails").fail("forced")
    try:
        failing = main(["check", "--suite", "always-fails"])
    finally:
        del checks.SUITES["always-fails"]
    capsys.readouterr()
    ok = stable and roundtrip and codes == (0, 2, 2) and usage == 2 and failing == 1
    report(
        10,
        ok,
        f"json stable on {len(queries)} queries: {stable}; 100 round trips: {roundtrip}; "
        f"exit codes ok/usage/parse/check-failure = {codes[0]}/{usage}/{codes[2]}/{failing}",
    )
