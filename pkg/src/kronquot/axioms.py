"""Seeded randomized checks of the quotient algebra, with replayable reports.

Each check draws per-trial inputs from an independent generator keyed by
(seed, trial index), evaluates both sides of the property under test,
and reports the worst relative residual. A report whose verdict is
``fails`` always carries a serialized counterexample; feeding it back
through :func:`replay_counterexample` reproduces the residual through
the public API. Identical arguments produce bit-identical reports, and
trials never share generator state, so they could run in any order.
"""

from __future__ import annotations

import dataclasses
import json
import math
from itertools import product
from typing import Sequence

import numpy as np

from . import matfile
from .errors import ConfigurationError, SingularRealizationError, ZeroDivisorError
from .matrix import FactorShape, Matrix, kron, relative_residual
from .pfp import pfp_scalar
from .quotients import (
    QuotientScheme,
    Realization,
    frobenius_realization,
    frobenius_weights,
    left_quotient,
    leopardi_weights,
    realization_for,
    trace_realization,
)
from .singular import svd

# Verdict threshold: generous headroom over double-precision rounding at
# these tiny sizes, while a law that genuinely fails leaves residuals
# around 1.
TOLERANCE = 1e-8

# Scalar draws for the homogeneity axioms; the complex values expose
# rules that scale with conj(k) or |k| instead of k.
SCALARS = (2 + 0j, -2 + 0j, 0.5 + 0j, -0.5 + 0j, 1j, 1 + 1j)
REAL_SCALARS = (2 + 0j, -2 + 0j, 0.5 + 0j, -0.5 + 0j)

_CHECKED_AXIOMS = ("Q1", "Q2a", "Q2b", "Q3", "Q5R")
_EPS = float(np.finfo(np.float64).eps)


@dataclasses.dataclass(frozen=True)
class Counterexample:
    """Serialized inputs of the worst trial (first trial on residual ties)."""

    trial: int
    residual: float
    inputs: tuple[tuple[str, str], ...]

    def values(self) -> dict[str, Matrix | complex]:
        return {name: _deserialize_value(text) for name, text in self.inputs}


@dataclasses.dataclass(frozen=True)
class AxiomReport:
    """Machine-readable outcome of one randomized check."""

    axiom: str
    scheme: str
    trials: int
    seed: int
    max_residual: float
    verdict: str
    counterexample: Counterexample | None = None
    details: tuple[tuple[str, object], ...] = ()

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    def detail(self, key: str, default=None):
        for name, value in self.details:
            if name == key:
                return value
        return default

    def to_text(self) -> str:
        lines = [
            f"axiom={self.axiom}",
            f"scheme={self.scheme}",
            f"trials={self.trials}",
            f"seed={self.seed}",
            f"max_residual={self.max_residual!r}",
            f"verdict={self.verdict}",
        ]
        lines.extend(f"detail.{key}={_text_value(value)}" for key, value in self.details)
        if self.counterexample is not None:
            lines.append(f"counterexample.trial={self.counterexample.trial}")
            lines.append(f"counterexample.residual={self.counterexample.residual!r}")
            lines.extend(f"counterexample.input.{name}={text}"
                         for name, text in self.counterexample.inputs)
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        obj = {
            "axiom": self.axiom,
            "scheme": self.scheme,
            "trials": self.trials,
            "seed": self.seed,
            "max_residual": self.max_residual,
            "verdict": self.verdict,
            "details": {key: value for key, value in self.details},
            "counterexample": None,
        }
        if self.counterexample is not None:
            obj["counterexample"] = {
                "trial": self.counterexample.trial,
                "residual": self.counterexample.residual,
                "inputs": {name: text for name, text in self.counterexample.inputs},
            }
        return json.dumps(obj)


def _text_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _serialize_value(value) -> str:
    if isinstance(value, Matrix):
        return matfile.to_line(value)
    return matfile.format_scalar(complex(value))


def _deserialize_value(text: str):
    if ";" in text:
        return matfile.from_line(text)
    return matfile.parse_scalar(text)


def _serialize_inputs(inputs: dict) -> tuple[tuple[str, str], ...]:
    return tuple((name, _serialize_value(value)) for name, value in inputs.items())


# -- random draws -------------------------------------------------------

def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=(seed, trial)))


def _dim(rng: np.random.Generator, max_dim: int) -> int:
    return int(rng.integers(1, max_dim + 1))


def _random_matrix(rng: np.random.Generator, rows: int, cols: int) -> Matrix:
    arr = rng.uniform(-1.0, 1.0, (rows, cols)) + 1j * rng.uniform(-1.0, 1.0, (rows, cols))
    return Matrix.from_array(arr)


def _random_nonzero(rng: np.random.Generator, rows: int, cols: int, *,
                    sparsify: bool = False, need_trace: bool = False) -> Matrix:
    while True:
        arr = rng.uniform(-1.0, 1.0, (rows, cols)) + 1j * rng.uniform(-1.0, 1.0, (rows, cols))
        if sparsify:
            arr = arr * (rng.random((rows, cols)) < 0.5)
        if math.sqrt(float(np.vdot(arr, arr).real)) < 1e-6:
            continue
        if need_trace and abs(complex(np.trace(arr))) < 1e-6:
            continue
        return Matrix.from_array(arr)


@dataclasses.dataclass(frozen=True)
class _DrawFlags:
    square: bool
    need_trace: bool
    sparsify_schemes: bool  # a third of trials zero out part of the divisor


def _default_flags(scheme_like) -> _DrawFlags:
    if isinstance(scheme_like, QuotientScheme):
        kind, label = scheme_like.kind, scheme_like.label or scheme_like.kind
    else:
        kind, label = "uniform", scheme_like.label
    trace_like = kind == "trace" or label == "trace"
    nz_sensitive = kind in ("leopardi", "weighted") or label in ("leopardi",) \
        or (kind == "uniform" and "weight" in str(label))
    return _DrawFlags(square=trace_like, need_trace=trace_like, sparsify_schemes=nz_sensitive)


_BUILTIN_SCHEMES: dict[str, QuotientScheme] = {
    "leopardi": QuotientScheme.leopardi(),
    "frobenius": QuotientScheme.frobenius(),
    "operator": QuotientScheme.operator(),
    "trace": QuotientScheme.trace(),
}


def _resolve_scheme(scheme_like):
    if isinstance(scheme_like, (QuotientScheme, Realization)):
        return scheme_like
    if isinstance(scheme_like, str):
        if scheme_like in _BUILTIN_SCHEMES:
            return _BUILTIN_SCHEMES[scheme_like]
        if scheme_like == "weighted(leopardi_weights)":
            return QuotientScheme.weighted(leopardi_weights)
        if scheme_like == "weighted(frobenius_weights)":
            return QuotientScheme.weighted(frobenius_weights)
        for name, scheme in _BUILTIN_SCHEMES.items():
            if scheme_like == f"uniform({name})":
                return realization_for(scheme)
    raise ConfigurationError(f"unknown scheme {scheme_like!r}")


def _describe(scheme_like) -> str:
    return scheme_like.describe()


def _draw_inputs(axiom: str, flags: _DrawFlags, rng: np.random.Generator,
                 max_dim: int, restricted: bool, scalars, trial: int) -> dict:
    sparsify = flags.sparsify_schemes and trial % 3 == 0

    def divisor(rows, cols):
        return _random_nonzero(rng, rows, cols, sparsify=sparsify,
                               need_trace=flags.need_trace)

    if axiom in ("Q1", "Q2a", "Q2b"):
        m = _dim(rng, max_dim)
        n = m if flags.square else _dim(rng, max_dim)
        s = _dim(rng, max_dim)
        t = _dim(rng, max_dim)
        a = divisor(m, n)

        def dividend():
            if restricted:
                return kron(a, _random_matrix(rng, s, t))
            return _random_matrix(rng, m * s, n * t)

        if axiom == "Q1":
            return {"A": a, "M": dividend()}
        if axiom == "Q2a":
            return {"A": a, "M1": dividend(), "M2": dividend(),
                    "k": complex(rng.choice(scalars))}
        return {"A": a, "M": dividend(), "k": complex(rng.choice(scalars))}

    if axiom == "Q3":
        m = _dim(rng, max_dim)
        n = m if flags.square else _dim(rng, max_dim)
        s2 = _dim(rng, max_dim)
        t2 = s2 if flags.square else _dim(rng, max_dim)
        p = _dim(rng, max_dim)
        q = _dim(rng, max_dim)
        a = divisor(m, n)
        b = divisor(s2, t2)
        if restricted:
            mprime = kron(kron(b, a), _random_matrix(rng, p, q))
        else:
            mprime = _random_matrix(rng, s2 * m * p, t2 * n * q)
        return {"A": a, "B": b, "M": mprime}

    if axiom == "Q5R":
        m = _dim(rng, max_dim)
        s = _dim(rng, max_dim)
        a = _random_nonzero(rng, m, m, sparsify=sparsify, need_trace=flags.need_trace)
        if restricted:
            mat = kron(a, _random_matrix(rng, s, s))
        else:
            mat = _random_matrix(rng, m * s, m * s)
        return {"A": a, "M": mat}

    raise ConfigurationError(f"unknown axiom {axiom!r}")


# -- evaluation ---------------------------------------------------------

def _shape_for(a: Matrix, m: Matrix) -> FactorShape:
    if m.rows % a.rows or m.cols % a.cols:
        raise ConfigurationError(f"dividend {m.rows}x{m.cols} is not block-compatible "
                                 f"with divisor {a.rows}x{a.cols}")
    return FactorShape(a.rows, a.cols, m.rows // a.rows, m.cols // a.cols)


def _scalar_residual(x: complex, y: complex) -> float:
    return abs(x - y) / max(1.0, abs(x), abs(y))


def _eval_axiom(axiom: str, scheme, inputs: dict) -> float:
    if axiom == "Q1":
        a, m = inputs["A"], inputs["M"]
        shape = _shape_for(a, m)
        lhs = left_quotient(scheme, a, m, shape).transpose()
        rhs = left_quotient(scheme, a.transpose(), m.transpose(),
                            FactorShape(shape.n, shape.m, shape.t, shape.s))
        return relative_residual(lhs, rhs)

    if axiom == "Q2a":
        a, m1, m2, k = inputs["A"], inputs["M1"], inputs["M2"], inputs["k"]
        shape = _shape_for(a, m1)
        q1 = left_quotient(scheme, a, m1, shape)
        q2 = left_quotient(scheme, a, m2, shape)
        additive = relative_residual(left_quotient(scheme, a, m1 + m2, shape), q1 + q2)
        homogeneous = relative_residual(left_quotient(scheme, a, k * m1, shape), k * q1)
        return max(additive, homogeneous)

    if axiom == "Q2b":
        a, m, k = inputs["A"], inputs["M"], inputs["k"]
        shape = _shape_for(a, m)
        lhs = left_quotient(scheme, k * a, m, shape)
        rhs = left_quotient(scheme, a, m, shape) / k
        return relative_residual(lhs, rhs)

    if axiom == "Q3":
        a, b, m = inputs["A"], inputs["B"], inputs["M"]
        p = m.rows // (b.rows * a.rows)
        q = m.cols // (b.cols * a.cols)
        inner = left_quotient(scheme, b, m,
                              FactorShape(b.rows, b.cols, a.rows * p, a.cols * q))
        lhs = left_quotient(scheme, a, inner, FactorShape(a.rows, a.cols, p, q))
        rhs = left_quotient(scheme, kron(b, a), m,
                            FactorShape(b.rows * a.rows, b.cols * a.cols, p, q))
        return relative_residual(lhs, rhs)

    if axiom == "Q5R":
        a, m = inputs["A"], inputs["M"]
        shape = _shape_for(a, m)
        quotient = left_quotient(scheme, a, m, shape)
        return _scalar_residual(m.trace(), a.trace() * quotient.trace())

    raise ConfigurationError(f"unknown axiom {axiom!r}")


def _near_degenerate_leading(mat: Matrix) -> bool:
    if min(mat.rows, mat.cols) < 2:
        return False
    sigma = svd(mat).sigma
    return sigma[0] > 0.0 and (sigma[0] - sigma[1]) <= 1e-8 * sigma[0]


_DIVISOR_KEYS = {"Q1": ("A",), "Q2a": ("A",), "Q2b": ("A",), "Q3": ("A", "B"),
                 "Q5R": ("A",)}


def _validate_common(trials: int, seed: int, max_dim: int) -> None:
    if trials < 1:
        raise ConfigurationError(f"trials must be >= 1, got {trials}")
    if seed < 0:
        raise ConfigurationError(f"seed must be a non-negative integer, got {seed}")
    if not 1 <= max_dim <= 6:
        raise ConfigurationError(f"max_dim must lie in 1..6, got {max_dim}")


def check_axiom(axiom: str, scheme, trials: int, seed: int, max_dim: int = 4, *,
                restricted: bool = False, scalars: Sequence[complex] = SCALARS,
                flags: _DrawFlags | None = None) -> AxiomReport:
    """Randomized check of one quotient axiom for one scheme.

    ``scheme`` may be a QuotientScheme, a Realization (checked through
    its induced uniform quotient), or a built-in scheme name.
    ``restricted=True`` draws the dividend as an exact Kronecker product
    of the matching form, the regime where every quotient must comply.
    """
    if axiom not in _CHECKED_AXIOMS:
        raise ConfigurationError(f"unknown axiom {axiom!r}; expected one of {_CHECKED_AXIOMS}")
    _validate_common(trials, seed, max_dim)
    scheme_obj = _resolve_scheme(scheme)
    draw_flags = flags or _default_flags(scheme_obj)
    is_operator = isinstance(scheme_obj, QuotientScheme) and scheme_obj.kind == "operator"

    worst = -1.0
    worst_trial = -1
    worst_inputs: dict = {}
    real_k_max: float | None = None
    complex_k_max: float | None = None
    degenerate = 0

    for trial in range(trials):
        rng = _trial_rng(seed, trial)
        inputs = _draw_inputs(axiom, draw_flags, rng, max_dim, restricted, scalars, trial)
        residual = _eval_axiom(axiom, scheme_obj, inputs)
        if is_operator:
            degenerate += sum(1 for key in _DIVISOR_KEYS[axiom]
                              if _near_degenerate_leading(inputs[key]))
        if axiom == "Q2b":
            if inputs["k"].imag == 0.0:
                real_k_max = residual if real_k_max is None else max(real_k_max, residual)
            else:
                complex_k_max = residual if complex_k_max is None else max(complex_k_max, residual)
        if residual > worst:
            worst, worst_trial, worst_inputs = residual, trial, inputs

    details: list[tuple[str, object]] = []
    if restricted:
        details.append(("restricted", True))
    if axiom == "Q2b":
        if real_k_max is not None:
            details.append(("max_residual_real_k", real_k_max))
        if complex_k_max is not None:
            details.append(("max_residual_complex_k", complex_k_max))
    if is_operator:
        details.append(("degenerate_leading_pairs", degenerate))

    verdict = "holds" if worst <= TOLERANCE else "fails"
    counterexample = None
    if verdict == "fails":
        counterexample = Counterexample(trial=worst_trial, residual=worst,
                                        inputs=_serialize_inputs(worst_inputs))
    return AxiomReport(axiom=axiom, scheme=_describe(scheme_obj), trials=trials,
                       seed=seed, max_residual=worst, verdict=verdict,
                       counterexample=counterexample, details=tuple(details))


# -- weight and realization condition checks ----------------------------

def _weight_condition_residuals(rule, a: Matrix, b: Matrix) -> tuple[float, float]:
    transpose_res = relative_residual(rule(a.transpose()), rule(a).transpose())
    kron_res = relative_residual(rule(kron(a, b)), kron(rule(a), rule(b)))
    return transpose_res, kron_res


def check_weight_conditions(weight_rule, trials: int, seed: int, max_dim: int = 4, *,
                            name: str | None = None) -> AxiomReport:
    """Check the two weight-rule identities that characterize Q1 and Q3.

    A weighted quotient transposes compatibly iff W(A^T) = W(A)^T, and
    composes over Kronecker products iff W(A kron B) = W(A) kron W(B).
    The report cross-runs check_axiom(Q1/Q3) on the induced weighted
    scheme with the same seed and records whether the verdicts agree.
    """
    _validate_common(trials, seed, max_dim)
    label = name or getattr(weight_rule, "__name__", "custom")
    worst_t = worst_k = -1.0
    worst_trial = -1
    worst_inputs: dict = {}
    for trial in range(trials):
        rng = _trial_rng(seed, trial)
        sparsify = trial % 3 == 0
        a = _random_nonzero(rng, _dim(rng, max_dim), _dim(rng, max_dim), sparsify=sparsify)
        b = _random_nonzero(rng, _dim(rng, max_dim), _dim(rng, max_dim), sparsify=sparsify)
        res_t, res_k = _weight_condition_residuals(weight_rule, a, b)
        if max(res_t, res_k) > max(worst_t, worst_k):
            worst_trial, worst_inputs = trial, {"A": a, "B": b}
        worst_t = max(worst_t, res_t)
        worst_k = max(worst_k, res_k)

    scheme = QuotientScheme.weighted(weight_rule, name=label)
    q1 = check_axiom("Q1", scheme, trials, seed, max_dim)
    q3 = check_axiom("Q3", scheme, trials, seed, max_dim)
    transpose_holds = worst_t <= TOLERANCE
    kron_holds = worst_k <= TOLERANCE
    details = (
        ("w_transpose_residual", worst_t),
        ("w_kron_residual", worst_k),
        ("w_transpose_verdict", "holds" if transpose_holds else "fails"),
        ("w_kron_verdict", "holds" if kron_holds else "fails"),
        ("q1_verdict", q1.verdict),
        ("q3_verdict", q3.verdict),
        ("transpose_iff_q1", transpose_holds == q1.holds),
        ("kron_iff_q3", kron_holds == q3.holds),
    )
    worst = max(worst_t, worst_k)
    verdict = "holds" if worst <= TOLERANCE else "fails"
    counterexample = None
    if verdict == "fails":
        counterexample = Counterexample(trial=worst_trial, residual=worst,
                                        inputs=_serialize_inputs(worst_inputs))
    return AxiomReport(axiom="Wcond", scheme=f"weighted({label})", trials=trials,
                       seed=seed, max_residual=worst, verdict=verdict,
                       counterexample=counterexample, details=details)


def _realization_condition_residuals(realization: Realization, a: Matrix, b: Matrix,
                                     k: complex) -> tuple[float, float, float]:
    q = realization.q_of
    transpose_res = relative_residual(q(a.transpose()), q(a).transpose())
    scale_res = relative_residual(q(k * a), q(a) / k)
    kron_res = relative_residual(q(kron(b, a)), kron(q(b), q(a)))
    return transpose_res, scale_res, kron_res


def check_realization_conditions(realization: Realization, trials: int, seed: int,
                                 max_dim: int = 4, *,
                                 scalars: Sequence[complex] = SCALARS,
                                 square_only: bool | None = None) -> AxiomReport:
    """Check the three Q(.) identities characterizing Q1, Q2b and Q3.

    Each identity is evaluated directly on random draws, then cross-run
    through check_axiom on the induced uniform quotient with the same
    seed; a one-sided disagreement would flag a bug in the suite itself
    and is recorded under the ``*_iff_*`` detail keys.
    """
    _validate_common(trials, seed, max_dim)
    if square_only is None:
        square_only = realization.label == "trace"
    need_trace = square_only

    worst_t = worst_s = worst_k = -1.0
    real_scale_max: float | None = None
    complex_scale_max: float | None = None
    worst_trial = -1
    worst_inputs: dict = {}
    for trial in range(trials):
        rng = _trial_rng(seed, trial)
        m = _dim(rng, max_dim)
        n = m if square_only else _dim(rng, max_dim)
        s = _dim(rng, max_dim)
        t = s if square_only else _dim(rng, max_dim)
        a = _random_nonzero(rng, m, n, need_trace=need_trace)
        b = _random_nonzero(rng, s, t, need_trace=need_trace)
        k = complex(rng.choice(scalars))
        res_t, res_s, res_k = _realization_condition_residuals(realization, a, b, k)
        if k.imag == 0.0:
            real_scale_max = res_s if real_scale_max is None else max(real_scale_max, res_s)
        else:
            complex_scale_max = res_s if complex_scale_max is None \
                else max(complex_scale_max, res_s)
        if max(res_t, res_s, res_k) > max(worst_t, worst_s, worst_k):
            worst_trial, worst_inputs = trial, {"A": a, "B": b, "k": k}
        worst_t = max(worst_t, res_t)
        worst_s = max(worst_s, res_s)
        worst_k = max(worst_k, res_k)

    flags = _DrawFlags(square=square_only, need_trace=need_trace, sparsify_schemes=False)
    q1 = check_axiom("Q1", realization, trials, seed, max_dim, flags=flags)
    q2b = check_axiom("Q2b", realization, trials, seed, max_dim, scalars=scalars, flags=flags)
    q3 = check_axiom("Q3", realization, trials, seed, min(max_dim, 3), flags=flags)
    t_holds = worst_t <= TOLERANCE
    s_holds = worst_s <= TOLERANCE
    k_holds = worst_k <= TOLERANCE
    details: list[tuple[str, object]] = [
        ("q_transpose_residual", worst_t),
        ("q_scale_residual", worst_s),
        ("q_kron_residual", worst_k),
    ]
    if real_scale_max is not None:
        details.append(("q_scale_residual_real_k", real_scale_max))
    if complex_scale_max is not None:
        details.append(("q_scale_residual_complex_k", complex_scale_max))
    details.extend([
        ("q1_verdict", q1.verdict),
        ("q2b_verdict", q2b.verdict),
        ("q3_verdict", q3.verdict),
        ("transpose_iff_q1", t_holds == q1.holds),
        ("scale_iff_q2b", s_holds == q2b.holds),
        ("kron_iff_q3", k_holds == q3.holds),
    ])
    worst = max(worst_t, worst_s, worst_k)
    verdict = "holds" if worst <= TOLERANCE else "fails"
    counterexample = None
    if verdict == "fails":
        counterexample = Counterexample(trial=worst_trial, residual=worst,
                                        inputs=_serialize_inputs(worst_inputs))
    return AxiomReport(axiom="Rcond", scheme=realization.describe(), trials=trials,
                       seed=seed, max_residual=worst, verdict=verdict,
                       counterexample=counterexample, details=tuple(details))


# -- projection / basis expansion check ----------------------------------

def _numerical_rank(mat: Matrix) -> int:
    sigma = svd(mat).sigma
    if not sigma or sigma[0] == 0.0:
        return 0
    cutoff = max(mat.rows, mat.cols) * _EPS * sigma[0]
    return int(sum(1 for x in sigma if x > cutoff))


def check_projection(basis: Sequence[Matrix], scheme, trials: int, seed: int,
                     max_dim: int = 4) -> AxiomReport:
    """Check basis biorthonormality against reconstruction by quotients.

    For a uniform scheme realized by Q and a basis A_1..A_mn of the
    m x n matrices, M = sum_j kron(A_j, A_j quot M) holds for every M
    exactly when pfp_scalar(Q(A_j), A_k) = delta_jk. Both sides are
    measured; their verdicts are expected to agree.
    """
    _validate_common(trials, seed, max_dim)
    if not basis:
        raise ConfigurationError("empty basis")
    m, n = basis[0].rows, basis[0].cols
    if any(mat.shape != (m, n) for mat in basis):
        raise ConfigurationError("basis matrices must share one shape")
    if len(basis) != m * n:
        raise ConfigurationError(f"a basis of the {m}x{n} matrices needs {m * n} "
                                 f"elements, got {len(basis)}")
    stack = Matrix.from_array(np.array([mat.to_array().ravel() for mat in basis]))
    if _numerical_rank(stack) != m * n:
        raise ConfigurationError("basis does not span the matrix space")

    scheme_obj = _resolve_scheme(scheme)
    realization = scheme_obj if isinstance(scheme_obj, Realization) \
        else realization_for(scheme_obj)
    q_mats = [realization.q_of(mat) for mat in basis]

    biorth_worst = -1.0
    worst_pair = (1, 1)
    for j, k in product(range(len(basis)), repeat=2):
        expected = 1.0 if j == k else 0.0
        residual = abs(pfp_scalar(q_mats[j], basis[k]) - expected)
        if residual > biorth_worst:
            biorth_worst, worst_pair = residual, (j + 1, k + 1)

    recon_worst = -1.0
    worst_trial = -1
    worst_m: Matrix | None = None
    for trial in range(trials):
        rng = _trial_rng(seed, trial)
        s = _dim(rng, max_dim)
        t = _dim(rng, max_dim)
        mat = _random_matrix(rng, m * s, n * t)
        shape = FactorShape(m, n, s, t)
        total = Matrix.zero(m * s, n * t)
        for elem in basis:
            total = total + kron(elem, left_quotient(scheme_obj, elem, mat, shape))
        residual = (mat - total).frobenius_norm() / max(mat.frobenius_norm(), 1e-300)
        if residual > recon_worst:
            recon_worst, worst_trial, worst_m = residual, trial, mat

    biorth_holds = biorth_worst <= TOLERANCE
    recon_holds = recon_worst <= TOLERANCE
    details = (
        ("biorthonormal_residual", biorth_worst),
        ("biorthonormal_verdict", "holds" if biorth_holds else "fails"),
        ("worst_pair_j", worst_pair[0]),
        ("worst_pair_k", worst_pair[1]),
        ("reconstruction_residual", recon_worst),
        ("reconstruction_verdict", "holds" if recon_holds else "fails"),
        ("iff_consistent", biorth_holds == recon_holds),
    )
    worst = max(biorth_worst, recon_worst)
    verdict = "holds" if biorth_holds and recon_holds else "fails"
    counterexample = None
    if verdict == "fails":
        inputs = {f"basis.{idx + 1}": mat for idx, mat in enumerate(basis)}
        inputs["M"] = worst_m
        counterexample = Counterexample(trial=worst_trial, residual=worst,
                                        inputs=_serialize_inputs(inputs))
    return AxiomReport(axiom="PROJ", scheme=_describe(scheme_obj), trials=trials,
                       seed=seed, max_residual=worst, verdict=verdict,
                       counterexample=counterexample, details=details)


# -- the structural impossibility demonstrations -------------------------

def _q4_forced_value(scheme, a: Matrix, c: Matrix, b1: Matrix, b2: Matrix) -> Matrix:
    left = left_quotient(scheme, a, kron(a, b1),
                         FactorShape(a.rows, a.cols, b1.rows, b1.cols))
    right = left_quotient(scheme, c, kron(c, b2),
                          FactorShape(c.rows, c.cols, b2.rows, b2.cols))
    return left @ right


def _demo_q4() -> AxiomReport:
    a = Matrix.unit(2, 2, 1, 2)
    c = Matrix.unit(2, 2, 1, 2)
    a2 = Matrix.unit(2, 2, 1, 1)  # trace-scheme witness: tr != 0 but still A2 C2 = 0
    c2 = Matrix.unit(2, 2, 2, 2)
    b1 = Matrix.from_rows([[1, 2], [3, 4]])
    b2 = Matrix.identity(2)
    b1p = 2 * Matrix.identity(2)
    b2p = Matrix.identity(2)

    details: list[tuple[str, object]] = [("product_of_divisors_is_zero", (a @ c).is_zero())]
    worst = -1.0
    for name in ("leopardi", "frobenius", "operator"):
        scheme = _BUILTIN_SCHEMES[name]
        forced1 = _q4_forced_value(scheme, a, c, b1, b2)
        forced2 = _q4_forced_value(scheme, a, c, b1p, b2p)
        residual = relative_residual(forced1, forced2)
        details.append((f"{name}_residual", residual))
        worst = max(worst, residual)
    trace_res = relative_residual(
        _q4_forced_value(_BUILTIN_SCHEMES["trace"], a2, c2, b1, b2),
        _q4_forced_value(_BUILTIN_SCHEMES["trace"], a2, c2, b1p, b2p))
    details.append(("trace_residual", trace_res))
    worst = max(worst, trace_res)
    try:
        left_quotient(_BUILTIN_SCHEMES["frobenius"], a @ c, kron(a, b1) @ kron(c, b2),
                      FactorShape(2, 2, 2, 2))
        details.append(("right_hand_side", "defined"))
    except ZeroDivisorError:
        details.append(("right_hand_side", "undefined (zero divisor)"))

    inputs = {"A": a, "C": c, "A2": a2, "C2": c2,
              "B1": b1, "B2": b2, "B1p": b1p, "B2p": b2p}
    return AxiomReport(
        axiom="Q4", scheme="all-builtins", trials=1, seed=0, max_residual=worst,
        verdict="fails",
        counterexample=Counterexample(trial=0, residual=worst,
                                      inputs=_serialize_inputs(inputs)),
        details=tuple(details))


def _demo_q5() -> AxiomReport:
    a = Matrix.diagonal([1, -1])
    mat = Matrix.identity(4)
    shape = FactorShape(2, 2, 2, 2)
    details: list[tuple[str, object]] = [("trace_of_divisor", 0.0),
                                         ("trace_of_dividend", 4.0)]
    worst = -1.0
    for name in ("leopardi", "frobenius", "operator"):
        quotient = left_quotient(_BUILTIN_SCHEMES[name], a, mat, shape)
        residual = _scalar_residual(mat.trace(), a.trace() * quotient.trace())
        details.append((f"{name}_residual", residual))
        worst = max(worst, residual)
    try:
        left_quotient(_BUILTIN_SCHEMES["trace"], a, mat, shape)
        details.append(("trace_scheme", "defined"))
    except SingularRealizationError:
        details.append(("trace_scheme", "outside domain (tr A = 0)"))
    details.append(("leading_pair_degenerate", _near_degenerate_leading(a)))

    return AxiomReport(
        axiom="Q5", scheme="all-builtins", trials=1, seed=0, max_residual=worst,
        verdict="fails",
        counterexample=Counterexample(trial=0, residual=worst,
                                      inputs=_serialize_inputs({"A": a, "M": mat})),
        details=tuple(details))


def _demo_q3_vs_trace() -> AxiomReport:
    ones = Matrix.ones(4, 4)  # equals kron(col, row) and kron(J2, J2)
    col = Matrix.ones(4, 1)
    row = Matrix.ones(1, 4)
    q_trace = trace_realization(ones)
    q_frob = frobenius_realization().q_of
    tensor_value = kron(q_frob(col), q_frob(row))
    residual = relative_residual(q_trace, tensor_value)
    details = (
        ("rank_under_trace_rule", _numerical_rank(q_trace)),
        ("rank_of_tensor_factorized_value", _numerical_rank(tensor_value)),
        ("vector_realization", "frobenius"),
    )
    return AxiomReport(
        axiom="Q3xTR", scheme="trace", trials=1, seed=0, max_residual=residual,
        verdict="fails",
        counterexample=Counterexample(trial=0, residual=residual,
                                      inputs=_serialize_inputs(
                                          {"J": ones, "col": col, "row": row})),
        details=details)


def demo_counterexamples() -> list[AxiomReport]:
    """The three structural impossibilities, as failing reports with witnesses.

    (1) No quotient satisfies the multiplicativity rule: nonzero A, C
        with AC = 0 force two different values on the same right side.
    (2) No quotient satisfies the unrestricted trace rule: tr(A) = 0
        with tr(M) != 0 leaves nothing to balance the product.
    (3) The trace rule and quotient composition exclude each other: on
        the all-ones matrix the trace rule demands a full-rank Q while
        composition over a column-times-row factorization caps Q at
        rank one.
    """
    return [_demo_q4(), _demo_q5(), _demo_q3_vs_trace()]


# -- counterexample replay ------------------------------------------------

def replay_counterexample(report: AxiomReport, scheme=None) -> float:
    """Re-evaluate a report's counterexample through the public API.

    Returns the reproduced residual. ``scheme`` is only needed when the
    report's scheme descriptor does not name a built-in rule.
    """
    if report.counterexample is None:
        raise ConfigurationError("report carries no counterexample")
    values = report.counterexample.values()

    if report.axiom in _CHECKED_AXIOMS:
        scheme_obj = scheme if scheme is not None else _resolve_scheme(report.scheme)
        return _eval_axiom(report.axiom, scheme_obj, values)

    if report.axiom == "Wcond":
        if scheme is None:
            scheme = _resolve_scheme(report.scheme)
        rule = scheme.weight_rule if isinstance(scheme, QuotientScheme) else scheme
        res_t, res_k = _weight_condition_residuals(rule, values["A"], values["B"])
        return max(res_t, res_k)

    if report.axiom == "Rcond":
        realization = scheme if scheme is not None else _resolve_scheme(report.scheme)
        res = _realization_condition_residuals(realization, values["A"], values["B"],
                                               complex(values["k"]))
        return max(res)

    if report.axiom == "PROJ":
        scheme_obj = scheme if scheme is not None else _resolve_scheme(report.scheme)
        realization = scheme_obj if isinstance(scheme_obj, Realization) \
            else realization_for(scheme_obj)
        basis = [values[key] for key in sorted(
            (k for k in values if k.startswith("basis.")),
            key=lambda name: int(name.split(".")[1]))]
        worst = max(abs(pfp_scalar(realization.q_of(bj), bk) - (1.0 if j == k else 0.0))
                    for j, bj in enumerate(basis) for k, bk in enumerate(basis))
        if "M" in values:
            mat = values["M"]
            m, n = basis[0].rows, basis[0].cols
            shape = FactorShape(m, n, mat.rows // m, mat.cols // n)
            total = Matrix.zero(mat.rows, mat.cols)
            for elem in basis:
                total = total + kron(elem, left_quotient(scheme_obj, elem, mat, shape))
            worst = max(worst, (mat - total).frobenius_norm()
                        / max(mat.frobenius_norm(), 1e-300))
        return worst

    if report.axiom == "Q4":
        worst = -1.0
        for name, (a_key, c_key) in (("leopardi", ("A", "C")),
                                     ("frobenius", ("A", "C")),
                                     ("operator", ("A", "C")),
                                     ("trace", ("A2", "C2"))):
            sch = _BUILTIN_SCHEMES[name]
            forced1 = _q4_forced_value(sch, values[a_key], values[c_key],
                                       values["B1"], values["B2"])
            forced2 = _q4_forced_value(sch, values[a_key], values[c_key],
                                       values["B1p"], values["B2p"])
            worst = max(worst, relative_residual(forced1, forced2))
        return worst

    if report.axiom == "Q5":
        a, mat = values["A"], values["M"]
        shape = _shape_for(a, mat)
        worst = -1.0
        for name in ("leopardi", "frobenius", "operator"):
            quotient = left_quotient(_BUILTIN_SCHEMES[name], a, mat, shape)
            worst = max(worst, _scalar_residual(mat.trace(), a.trace() * quotient.trace()))
        return worst

    if report.axiom == "Q3xTR":
        q_frob = frobenius_realization().q_of
        return relative_residual(trace_realization(values["J"]),
                                 kron(q_frob(values["col"]), q_frob(values["row"])))

    raise ConfigurationError(f"cannot replay axiom {report.axiom!r}")
