"""Acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line; the lines are printed as the
test runs (visible with ``-s``) and again in the terminal summary.
Every comparison is exact.
"""

import random
import re
import sys
import time

import pytest

from superalg import (
    AlgebraSignature,
    JetScalar,
    QQi,
    delta_coords,
    pauli_rep,
    vector_coords,
)
from superalg import dsl
from superalg.serialize import dumps, loads
from superalg.verify import (
    SuiteOptions,
    all_symbolic_params,
    random_operator,
    random_state,
    run_suite,
    symbolic_spinors,
)

RESULTS = []


def record(criterion, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}".rstrip()
    RESULTS.append(line)
    print(line)
    sys.stdout.flush()


def _failures(report):
    return "; ".join(f"{f.check} (seed={f.seed}): {f.counterexample}" for f in report.failures[:3])


# -- printed bilinear forms ------------------------------------------------------------

# ASCII transcription: xiN' is the primed spinor component, xiN the unprimed
# one, eUL the mixing parameter with upper index U and lower index L.
PRINTED_COORDS = [
    "xi1' xi1 - xi2' xi2",
    "i(xi1' xi1 + xi2' xi2)",
    "-(xi1' xi2 + xi2' xi1)",
]
PRINTED_SHIFTS = [
    "e13(xi1' xi3 + xi3' xi1) - e23(xi2' xi3 + xi3' xi2)",
    "i e13(xi1' xi3 + xi3' xi1) + i e23(xi2' xi3 + xi3' xi2)",
    "-e13(xi2' xi3 + xi3' xi2) - e23(xi1' xi3 + xi3' xi1)",
]

_TOKEN = re.compile(r"xi(\d)'|xi(\d)|e(\d)(\d)|i|[()+-]|\s+")


def read_printed(text):
    """Turn a printed bilinear expansion into a JetScalar.

    Juxtaposition is multiplication, as in the printed forms.
    """
    names, out, prev_operand = {}, [], False
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot read {text[pos:]!r}")
        pos = m.end()
        tok = m.group(0)
        if tok.isspace():
            continue
        if m.group(1):
            name = f"xp{m.group(1)}"
        elif m.group(2):
            name = f"xi{m.group(2)}"
        elif m.group(3):
            name = f"e_{m.group(3)}_{m.group(4)}"
        elif tok == "i":
            name = "I_"
        else:
            name = None
        if name is not None or tok == "(":
            if prev_operand:
                out.append("*")
            if name is not None:
                names[name] = (JetScalar.eps(name) if name.startswith("e_")
                               else JetScalar(QQi(0, 1)) if name == "I_" else JetScalar.symbol(name))
                out.append(name)
                prev_operand = True
            else:
                out.append("(")
                prev_operand = False
        else:
            out.append(tok)
            prev_operand = tok == ")"
    return eval("".join(out), {"__builtins__": {}}, names)


# -- criteria -------------------------------------------------------------------------------

def test_criterion_1_matrix_isomorphism():
    start = time.perf_counter()
    failures, detail = 0, []
    for n in (2, 3, 4, 6, 8):
        report = run_suite("iso", SuiteOptions(n=n, trials=100, seed=0))
        failures += len(report.failures)
        if report.failures:
            detail.append(f"n={n}: {_failures(report)}")
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 60
    record("1 matrix isomorphism", ok,
           f"n in 2,3,4,6,8 x 100 pairs, {failures} failures, {elapsed:.1f}s (limit 60s) {' '.join(detail)}")
    assert failures == 0, detail
    assert elapsed < 60


def test_criterion_2_projectors():
    report = run_suite("projectors", SuiteOptions())
    record("2 projectors", report.ok,
           f"n=1..6 exhaustive, {len(report.checks)} properties, {len(report.failures)} failures "
           f"{_failures(report)}")
    assert report.ok, _failures(report)


def test_criterion_3_clifford():
    pauli = run_suite("clifford", SuiteOptions(rep="pauli"))
    dirac = run_suite("clifford", SuiteOptions(rep="dirac"))
    ok = pauli.ok and dirac.ok
    record("3 clifford", ok,
           f"pauli n=2,3,4: {len(pauli.failures)} failures; dirac n=4,5: {len(dirac.failures)} failures "
           f"{_failures(pauli)} {_failures(dirac)}")
    assert ok


def test_criterion_4_bilinear_expansions():
    xp = [JetScalar.symbol("xp1"), JetScalar.symbol("xp2")]
    xi = [JetScalar.symbol("xi1"), JetScalar.symbol("xi2")]
    got = [str(x) for x in vector_coords(xp, xi, pauli_rep())]
    want = [str(read_printed(t)) for t in PRINTED_COORDS]
    ok = got == want
    record("4 bilinear expansions", ok, " | ".join(f"x{m + 1} = {g}" for m, g in enumerate(got)))
    assert got == want


def test_criterion_5_susy():
    start = time.perf_counter()
    sig = AlgebraSignature(3, 2)
    params = all_symbolic_params(sig)
    xp, xi = symbolic_spinors(sig)
    shifts = delta_coords(xp, xi, params, pauli_rep())
    printed = [read_printed(t) for t in PRINTED_SHIFTS]
    printed_ok = shifts == printed
    # fixed checks (symbolic closed form, duality and its negative test, invariance)
    # plus 1000 numeric trials, a tenth of which run the supertranslation check
    report = run_suite("susy", SuiteOptions(n=3, n_D=2, trials=1000, seed=0))
    translations = sum(1 for s in range(1000) if s % 10 == 0)
    elapsed = time.perf_counter() - start
    ok = printed_ok and report.ok and elapsed < 30
    record("5 susy", ok,
           f"printed shifts {'match' if printed_ok else 'differ'}, 1000 numeric trials, "
           f"{translations} supertranslations, {len(report.failures)} failures, "
           f"{elapsed:.1f}s (limit 30s) {_failures(report)}")
    assert printed_ok, [str(s) for s in shifts]
    assert report.ok, _failures(report)
    assert elapsed < 30


def test_criterion_6_transpose():
    report = run_suite("transpose", SuiteOptions(trials=500, seed=0))
    record("6 transpose coherence", report.ok,
           f"500 words (length <= 6, n <= 5), {len(report.failures)} failures {_failures(report)}")
    assert report.ok, _failures(report)


def test_criterion_7_roundtrip():
    rng = random.Random(0)
    parse_bad, json_bad = [], []
    for k in range(1000):
        n = rng.randint(1, 4)
        sig = AlgebraSignature(n, rng.randint(0, n))
        ast = dsl.random_expression(rng, sig, depth=3)
        src = dsl.to_source(ast)
        try:
            back = dsl.parse(src, sig)
        except dsl.DslError as exc:
            parse_bad.append(f"{src} ({exc})")
            continue
        if back != ast or dsl.to_source(back) != src:
            parse_bad.append(src)
    for k in range(100):
        n = rng.randint(1, 5)
        sig = AlgebraSignature(n, rng.randint(0, n))
        obj = random_operator(rng, sig) if k % 2 else random_state(rng, sig)
        text = dumps(obj)
        back = loads(text)
        if back != obj or back.sig != obj.sig or dumps(back) != text:
            json_bad.append(f"#{k}")
    ok = not parse_bad and not json_bad
    record("7 parser/json round trip", ok,
           f"1000 expressions: {len(parse_bad)} failures; 100 objects: {len(json_bad)} failures "
           f"{' '.join(parse_bad[:2] + json_bad[:2])}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
