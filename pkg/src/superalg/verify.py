"""Randomized and exhaustive verification suites.

Every suite is a deterministic function of its options.  Random trials use
consecutive integer seeds starting at ``options.seed``; a failure records
its trial seed, so ``run_suite(name, SuiteOptions(seed=s, trials=1, ...))``
replays it.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from . import dsl
from .clifford import (
    GammaRep,
    check_anticommutation,
    embed_gamma,
    pauli_rep,
    vector_coords,
)
from .grassmann import (
    AlgebraSignature,
    State,
    indices,
    rank,
    rank_project_oracle,
)
from .matrix_iso import (
    MatrixDense,
    column_state,
    embed_matrix,
    extract_matrix,
)
from .operators import (
    DERIV,
    THETA,
    Operator,
    Word,
    op_generator_theta,
    op_identity,
    op_zero,
    projector,
)
from .scalars import JetScalar, QQi
from .serialize import dumps, loads
from .susy import (
    Superfield,
    _unconstrained_params,
    delta_coords,
    delta_coords_closed_form,
    make_params,
    rank_one_state,
    supertranslate_superfield,
    transform_coefficients,
    transform_derivatives,
    transform_generator_ops,
    transform_generators,
)

__all__ = [
    "SUITES",
    "SuiteOptions",
    "Failure",
    "VerificationReport",
    "run_suite",
    "dirac_rep",
    "random_rational",
    "random_matrix",
]


def dirac_rep() -> GammaRep:
    """Dirac-basis gamma matrices, metric (+, -, -, -)."""
    i = QQi(0, 1)
    sigma = [
        [[0, 1], [1, 0]],
        [[0, -i], [i, 0]],
        [[1, 0], [0, -1]],
    ]
    g0 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    gammas = [g0]
    for s in sigma:
        g = [[0] * 4 for _ in range(4)]
        for r in range(2):
            for c in range(2):
                g[r][c + 2] = s[r][c]
                g[r + 2][c] = -QQi.coerce(s[r][c])
        gammas.append(g)
    return GammaRep(tuple(MatrixDense.from_rows(g) for g in gammas), (1, -1, -1, -1), name="dirac")


REPS: Dict[str, Callable[[], GammaRep]] = {"pauli": pauli_rep, "dirac": dirac_rep}


@dataclass
class SuiteOptions:
    n: Optional[int] = None
    n_D: Optional[int] = None
    trials: int = 100
    seed: int = 0
    rep: str = "pauli"
    jobs: int = 1


@dataclass
class Failure:
    check: str
    seed: Optional[int]
    counterexample: str


@dataclass
class VerificationReport:
    suite: str
    trials: int = 0
    checks: List[str] = field(default_factory=list)
    failures: List[Failure] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "VerificationReport") -> None:
        self.trials += other.trials
        self.checks.extend(c for c in other.checks if c not in self.checks)
        self.failures.extend(other.failures)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["ok"] = self.ok
        return out

    def to_text(self) -> str:
        lines = [f"suite {self.suite}: {self.trials} trials, {len(self.failures)} failures, "
                 f"{self.wall_time:.2f}s"]
        lines += [f"  check: {c}" for c in self.checks]
        for f in self.failures:
            lines.append(f"  FAIL {f.check} (seed={f.seed}): {f.counterexample}")
        return "\n".join(lines)


# -- random data ---------------------------------------------------------------------

def random_rational(rng: random.Random, complex_: bool = True) -> QQi:
    re_ = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
    im = Fraction(rng.randint(-9, 9), rng.randint(1, 6)) if complex_ else Fraction(0)
    return QQi(re_, im)


def random_matrix(rng: random.Random, n: int, density: float = 0.7) -> MatrixDense:
    return MatrixDense.from_rows(
        [[random_rational(rng) if rng.random() < density else 0 for _ in range(n)] for _ in range(n)])


def _mat_source(m: MatrixDense) -> str:
    return "mat(" + "; ".join(", ".join(_scalar_source(x) for x in r) for r in m.entries) + ")"


def _scalar_source(x: JetScalar) -> str:
    if x.is_numeric and not x.eps_terms:
        return dsl.to_source(dsl.Num(x.body))
    return str(x)


# -- suites --------------------------------------------------------------------------
# Each suite provides fixed checks (exhaustive/symbolic) and an optional per-seed trial.

Check = Tuple[str, Optional[int], str]  # (name, seed, counterexample)


def _iso_sig(opts: SuiteOptions) -> AlgebraSignature:
    return AlgebraSignature(opts.n or 4, 0)


def _iso_trial(seed: int, opts: SuiteOptions) -> List[Check]:
    sig = _iso_sig(opts)
    n = sig.n_total
    rng = random.Random(seed)
    a, b = random_matrix(rng, n), random_matrix(rng, n)
    lam = random_rational(rng)
    v = [random_rational(rng) for _ in range(n)]
    ea, eb = embed_matrix(a, sig), embed_matrix(b, sig)
    ce = f"A={_mat_source(a)} B={_mat_source(b)} lambda={lam}"
    out = []
    if ea @ eb != embed_matrix(a @ b, sig):
        out.append(("embed(AB) = embed(A) embed(B)", seed, ce))
    if ea + eb != embed_matrix(a + b, sig):
        out.append(("embed(A+B) = embed(A) + embed(B)", seed, ce))
    if ea.scale(lam) != embed_matrix(a.scale(lam), sig):
        out.append(("embed(lambda A) = lambda embed(A)", seed, ce))
    if ea.T != embed_matrix(a.T, sig):
        out.append(("embed(A^T) = embed(A)^T", seed, ce))
    if ea.conjugate() != embed_matrix(a.conjugate(), sig):
        out.append(("embed(conj A) = conj embed(A)", seed, ce))
    if extract_matrix(ea) != a:
        out.append(("extract(embed(A)) = A", seed, ce))
    if ea @ column_state(v, sig) != column_state(a @ v, sig):
        out.append(("embed(A) column = column(A v)", seed, ce))
    return out


def _iso_checks():
    return ["embed(AB) = embed(A) embed(B)", "embed(A+B) = embed(A) + embed(B)",
            "embed(lambda A) = lambda embed(A)", "embed(A^T) = embed(A)^T",
            "embed(conj A) = conj embed(A)", "extract(embed(A)) = A",
            "embed(A) column = column(A v)"]


def oracle_operator(sig: AlgebraSignature, k: int) -> Operator:
    """Rank filter as an operator, assembled from its action on basis monomials."""
    entries = {}
    for m in sig.basis():
        for out, c in rank_project_oracle(k, State(sig, {m: 1})).items():
            entries[(out, m)] = c
    return Operator(sig, entries)


def projector_checks(sig: AlgebraSignature) -> List[Check]:
    n = sig.n_total
    out = []
    ps = [projector(sig, k) for k in range(n + 1)]
    total = op_zero(sig)
    for k, p in enumerate(ps):
        total = total + p
        if p != oracle_operator(sig, k):
            out.append(("P_k = rank oracle", None, f"n={n} k={k}"))
        for m in sig.basis():
            basis = State(sig, {m: 1})
            if p @ basis != rank_project_oracle(k, basis):
                out.append(("P_k action = rank oracle action", None, f"n={n} k={k} monomial={indices(m)}"))
                break
        if p @ p != p:
            out.append(("P_k^2 = P_k", None, f"n={n} k={k}"))
        if p.T != p:
            out.append(("P_k^T = P_k", None, f"n={n} k={k}"))
        for l in range(n + 1):
            if l != k and p @ ps[l]:
                out.append(("P_k P_l = 0", None, f"n={n} k={k} l={l}"))
    if total != op_identity(sig):
        out.append(("sum_k P_k = I", None, f"n={n}"))
    for a in range(1, n + 1):
        th = op_generator_theta(sig, a)
        if ps[1] @ th != th @ ps[0]:
            out.append(("P_1 th(a) = th(a) P_0", None, f"n={n} a={a}"))
    return out


PROJECTOR_CHECKS = ["P_k = rank oracle", "P_k action = rank oracle action", "P_k^2 = P_k",
                    "P_k^T = P_k", "P_k P_l = 0", "sum_k P_k = I", "P_1 th(a) = th(a) P_0"]


def _projector_fixed(opts: SuiteOptions) -> List[Check]:
    ns = [opts.n] if opts.n else range(1, 7)
    out = []
    for n in ns:
        out += projector_checks(AlgebraSignature(n, 0))
    return out


def clifford_checks(rep: GammaRep, sig: AlgebraSignature) -> List[Check]:
    out = []
    gammas = embed_gamma(rep, sig)
    tag = f"rep={rep.name} n={sig.n_total}"
    report = check_anticommutation(gammas, rep.metric, sig)
    for m, k in report.failures:
        out.append(("G_m G_k + G_k G_m = 2 eta_mk P_1", None, f"{tag} m={m} k={k}"))
    for idx, g in enumerate(gammas, start=1):
        for mono in sig.basis():
            touches_extra = any(a > sig.n_D for a in indices(mono))
            if (touches_extra or rank(mono) != 1) and g @ State(sig, {mono: 1}):
                out.append(("G_m annihilates extra / rank != 1", None,
                            f"{tag} m={idx} monomial={indices(mono)}"))
        if g != embed_matrix(rep.gammas[idx - 1].pad(sig.n_total), sig):
            out.append(("G_m = embed(padded gamma)", None, f"{tag} m={idx}"))
    return out


CLIFFORD_CHECKS = ["G_m G_k + G_k G_m = 2 eta_mk P_1", "G_m annihilates extra / rank != 1",
                   "G_m = embed(padded gamma)"]


def _clifford_fixed(opts: SuiteOptions) -> List[Check]:
    rep = REPS[opts.rep]()
    ns = [opts.n] if opts.n else ([2, 3, 4] if rep.dim == 2 else [4, 5])
    out = []
    for n in ns:
        out += clifford_checks(rep, AlgebraSignature(n, rep.dim))
    return out


def _transpose_trial(seed: int, opts: SuiteOptions) -> List[Check]:
    rng = random.Random(seed)
    n = opts.n or rng.randint(1, 5)
    sig = AlgebraSignature(n, 0)
    letters = tuple((rng.choice((THETA, DERIV)), rng.randint(1, n)) for _ in range(rng.randint(0, 6)))
    w = Word(letters, JetScalar(random_rational(rng)))
    if w.to_operator(sig).T != w.transpose().to_operator(sig):
        return [("word transpose = matrix transpose", seed, f"n={n} word={w}")]
    return []


# -- susy ------------------------------------------------------------------------------

def _susy_sig(opts: SuiteOptions) -> AlgebraSignature:
    return AlgebraSignature(opts.n or 3, 2 if opts.n_D is None else opts.n_D)


def symbolic_spinors(sig: AlgebraSignature):
    xi_p = [JetScalar.symbol(f"xp{a}") for a in range(1, sig.n_total + 1)]
    xi = [JetScalar.symbol(f"xi{a}") for a in range(1, sig.n_total + 1)]
    return xi_p, xi


def all_symbolic_params(sig: AlgebraSignature):
    return make_params(sig, [(a, b) for a in sig.primed for b in sig.additional])


def duality_defects(params) -> List[str]:
    """Pairs where d/dtheta~^a theta~^c differs from delta_ac."""
    sig = params.sig
    thetas = transform_generators(params)
    derivs = transform_derivatives(params)
    bad = []
    for a in range(1, sig.n_total + 1):
        for c in range(1, sig.n_total + 1):
            want = State(sig, {0: 1}) if a == c else State.zero(sig)
            if derivs[a] @ thetas[c] != want:
                bad.append(f"({a},{c})")
    return bad


def _susy_fixed(opts: SuiteOptions) -> List[Check]:
    sig = _susy_sig(opts)
    out = []
    params = all_symbolic_params(sig)
    xi_p, xi = symbolic_spinors(sig)

    bad = duality_defects(params)
    if bad:
        out.append(("duality under antisymmetry", None, " ".join(bad)))
    if sig.n_D and sig.n_add:
        loose = _unconstrained_params(sig, {(a, b): None for a in sig.primed for b in sig.additional}
                                      | {(b, a): None for a in sig.primed for b in sig.additional})
        if not duality_defects(loose):
            out.append(("duality fails without antisymmetry", None, "no defect found"))

    new, _ = transform_coefficients(xi, params)
    if rank_one_state(new, transform_generators(params)) != State.linear(sig, xi):
        out.append(("state invariance", None, "symbolic xi"))

    ops = transform_generator_ops(params)
    derivs = transform_derivatives(params)
    for a in range(1, sig.n_total + 1):
        if derivs[a] != ops[a].T:
            out.append(("derivative = transpose of generator", None, f"a={a}"))
        th = op_generator_theta(sig, a)
        delta = ops[a] - th
        if th @ delta + delta @ th:
            out.append(("{th, delta th} = 0", None, f"a={a}"))

    if sig.n_D == 2:
        rep = pauli_rep()
        x = vector_coords(xi_p[:2], xi[:2], rep)
        want = [
            xi_p[0] * xi[0] - xi_p[1] * xi[1],
            JetScalar(QQi(0, 1)) * (xi_p[0] * xi[0] + xi_p[1] * xi[1]),
            -(xi_p[0] * xi[1] + xi_p[1] * xi[0]),
        ]
        if x != want:
            out.append(("bilinear coordinates", None, "; ".join(map(str, x))))
        if (sig.n_total, sig.n_D) == (3, 2):
            dx = delta_coords(xi_p, xi, params, rep)
            if dx != delta_coords_closed_form(xi_p, xi, params):
                out.append(("delta_coords vs closed form (symbolic)", None, "; ".join(map(str, dx))))
    return out


def random_superfield(rng: random.Random, sig: AlgebraSignature, max_degree: int = 4) -> Superfield:
    terms = {}
    primed_masks = [m for m in sig.basis() if all(a <= sig.n_D for a in indices(m))]
    for _ in range(rng.randint(1, 6)):
        deg = rng.randint(0, max_degree)
        exps = [0, 0, 0]
        for _ in range(deg):
            exps[rng.randrange(3)] += 1
        terms[(tuple(exps), rng.choice(primed_masks))] = random_rational(rng)
    return Superfield.from_terms(sig, terms)


def _susy_trial(seed: int, opts: SuiteOptions) -> List[Check]:
    sig = _susy_sig(opts)
    rng = random.Random(seed)
    out = []
    xi_p = [random_rational(rng) for _ in range(sig.n_total)]
    xi = [random_rational(rng) for _ in range(sig.n_total)]
    params = make_params(sig, [(a, b, random_rational(rng)) for a in sig.primed for b in sig.additional])
    ce = f"xi'={[str(x) for x in xi_p]} xi={[str(x) for x in xi]}"
    new, _ = transform_coefficients(xi, params)
    if rank_one_state(new, transform_generators(params)) != State.linear(sig, xi):
        out.append(("state invariance", seed, ce))
    if sig.n_D == 2:
        rep = pauli_rep()
        if (sig.n_total, sig.n_D) == (3, 2):
            if delta_coords(xi_p, xi, params, rep) != delta_coords_closed_form(xi_p, xi, params):
                out.append(("delta_coords vs closed form", seed, ce))
        # supertranslation on a tenth of the trials, with symbolic parameters
        if seed % 10 == 0:
            f = random_superfield(rng, sig)
            sym = all_symbolic_params(sig)
            _, rep_ = supertranslate_superfield(f, xi_p, xi, sym, rep)
            if not rep_.consistent:
                out.append(("supertranslation direct = taylor", seed, f"{ce} f={f.state}"))
    return out


SUSY_CHECKS = ["duality under antisymmetry", "duality fails without antisymmetry", "state invariance",
               "derivative = transpose of generator", "{th, delta th} = 0", "bilinear coordinates",
               "delta_coords vs closed form (symbolic)", "delta_coords vs closed form",
               "supertranslation direct = taylor"]


def _roundtrip_trial(seed: int, opts: SuiteOptions) -> List[Check]:
    rng = random.Random(seed)
    n = opts.n or rng.randint(1, 4)
    sig = AlgebraSignature(n, rng.randint(0, n))
    out = []
    ast = dsl.random_expression(rng, sig, depth=3)
    src = dsl.to_source(ast)
    try:
        back = dsl.parse(src, sig)
    except dsl.DslError as exc:
        return [("parse(print(e)) = e", seed, f"{src}  ({exc})")]
    if back != ast or dsl.to_source(back) != src:
        out.append(("parse(print(e)) = e", seed, src))
    obj = random_operator(rng, sig) if rng.random() < 0.5 else random_state(rng, sig)
    if loads(dumps(obj)) != obj:
        out.append(("json import(export(x)) = x", seed, f"n={n} kind={type(obj).__name__}"))
    return out


def _random_jet(rng: random.Random, sig: AlgebraSignature) -> JetScalar:
    value = JetScalar(random_rational(rng))
    if rng.random() < 0.3:
        a, b = rng.randint(1, sig.n_total), rng.randint(1, sig.n_total)
        value = value + JetScalar.eps(f"e_{a}_{b}", random_rational(rng))
    return value


def random_operator(rng: random.Random, sig: AlgebraSignature) -> Operator:
    dim = sig.dim
    entries = {(rng.randrange(dim), rng.randrange(dim)): _random_jet(rng, sig)
               for _ in range(rng.randint(0, 3 * sig.n_total))}
    return Operator(sig, entries)


def random_state(rng: random.Random, sig: AlgebraSignature) -> State:
    return State(sig, {rng.randrange(sig.dim): _random_jet(rng, sig) for _ in range(rng.randint(0, 8))})


@dataclass(frozen=True)
class _Suite:
    checks: List[str]
    fixed: Optional[Callable[[SuiteOptions], List[Check]]] = None
    trial: Optional[Callable[[int, SuiteOptions], List[Check]]] = None


SUITES: Dict[str, _Suite] = {
    "iso": _Suite(_iso_checks(), trial=_iso_trial),
    "projectors": _Suite(PROJECTOR_CHECKS, fixed=_projector_fixed),
    "clifford": _Suite(CLIFFORD_CHECKS, fixed=_clifford_fixed),
    "susy": _Suite(SUSY_CHECKS, fixed=_susy_fixed, trial=_susy_trial),
    "transpose": _Suite(["word transpose = matrix transpose"], trial=_transpose_trial),
    "roundtrip": _Suite(["parse(print(e)) = e", "json import(export(x)) = x"], trial=_roundtrip_trial),
}


def _run_trials(trial, seeds, opts: SuiteOptions) -> List[Check]:
    if opts.jobs > 1 and len(seeds) > 1:
        with ProcessPoolExecutor(max_workers=opts.jobs) as pool:
            chunks = pool.map(trial, seeds, [opts] * len(seeds), chunksize=max(1, len(seeds) // (4 * opts.jobs)))
            return [c for chunk in chunks for c in chunk]
    out = []
    for s in seeds:
        out += trial(s, opts)
    return out


def run_suite(name: str, opts: Optional[SuiteOptions] = None) -> VerificationReport:
    """Run one suite (or ``"all"``) and collect failures."""
    opts = opts or SuiteOptions()
    if name == "all":
        report = VerificationReport("all")
        start = time.perf_counter()
        for sub in SUITES:
            sub_opts = opts
            if sub == "clifford":
                for rep in REPS:
                    report.merge(run_suite(sub, replace(opts, rep=rep, n=None)))
                continue
            if sub in ("projectors", "transpose", "roundtrip"):
                sub_opts = replace(opts, n=None)
            report.merge(run_suite(sub, sub_opts))
        report.wall_time = time.perf_counter() - start
        return report
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    if opts.rep not in REPS:
        raise KeyError(f"unknown representation {opts.rep!r}")
    suite = SUITES[name]
    start = time.perf_counter()
    report = VerificationReport(name, checks=list(suite.checks))
    found: List[Check] = []
    if suite.fixed is not None:
        found += suite.fixed(opts)
        report.trials += 1
    if suite.trial is not None:
        seeds = list(range(opts.seed, opts.seed + opts.trials))
        found += _run_trials(suite.trial, seeds, opts)
        report.trials += len(seeds)
    report.failures = [Failure(*c) for c in found]
    report.wall_time = time.perf_counter() - start
    return report
