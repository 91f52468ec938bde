"""Triple-index Mittag-Leffler series engine and its reductions.

The central object is the function

    E(u, v, w) = sum_{l,p,k >= 0} (eta)_{l+p+k} u^l v^p w^k
                 / (Gamma(l*alpha + p*beta + k*gamma + delta) l! p! k!)

evaluated by summing simplex shells l+p+k = q in increasing q.  Shells are the
natural truncation unit because the rising-factorial numerator grows with the
total degree.  Term magnitudes are assembled in log space and exponentiated
once per term; signs (and phases, for complex arguments) ride separately.

Parameters are restricted to real values; only the series arguments u, v, w
may be complex.  Negative ``eta`` is allowed (the series terminates when eta
is a non-positive integer) and so is ``delta <= 0`` (gamma poles contribute
zero termwise through the reciprocal gamma).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, SeriesOverflowError
from .kernels import log_pochhammer, log_pochhammer_table, signed_log_rgamma, sinpi

__all__ = [
    "MLParams",
    "LambdaTriple",
    "SeriesControl",
    "EvalResult",
    "eval_trivariate",
    "eval_univariate",
    "eval_univariate_grid",
    "eval_prabhakar",
    "eval_fox_wright_1psi1",
]

_EXP_MAX = 709.0


@dataclass(frozen=True)
class MLParams:
    """The five real parameters (alpha, beta, gamma, delta, eta) of the function."""

    alpha: float
    beta: float
    gamma: float
    delta: float
    eta: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be strictly positive, got {getattr(self, name)}")
        for name in ("delta", "eta"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")

    def shifted(self, dd: float) -> "MLParams":
        """Copy with delta shifted by dd (the workhorse of the calculus rules)."""
        return MLParams(self.alpha, self.beta, self.gamma, self.delta + dd, self.eta)


@dataclass(frozen=True)
class LambdaTriple:
    """Coefficients multiplying the three power arguments of the univariate form."""

    lambda1: float
    lambda2: float
    lambda3: float

    def __post_init__(self):
        for name in ("lambda1", "lambda2", "lambda3"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.lambda1, self.lambda2, self.lambda3)


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for shell-ordered summation."""

    rel_tol: float = 1e-12
    max_shell: int = 400
    consecutive_quiet_shells: int = 3

    def __post_init__(self):
        if not self.rel_tol > 0.0:
            raise DomainError("rel_tol must be positive")
        if self.max_shell < 1:
            raise DomainError("max_shell must be >= 1")
        if self.consecutive_quiet_shells < 1:
            raise DomainError("consecutive_quiet_shells must be >= 1")


@dataclass
class EvalResult:
    """An evaluated value with an a-posteriori error estimate.

    ``value`` is a float for real inputs and complex otherwise.  When
    ``converged`` is False the value is the partial sum reached at
    ``shells_used`` shells and the estimate is not trustworthy.
    """

    value: complex
    abs_error_estimate: float
    shells_used: int
    converged: bool


# module-level caches: replaced atomically, contents immutable once stored,
# so concurrent readers at worst recompute a table (benign under the GIL)
_logfact_table = gammaln(np.arange(128) + 1.0)


def _logfact(n: int) -> np.ndarray:
    """Table of log(q!) for q = 0..n, grown on demand."""
    global _logfact_table
    if n >= _logfact_table.size:
        _logfact_table = gammaln(np.arange(2 * n + 2) + 1.0)
    return _logfact_table


_shell_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _shell_lp(q: int) -> tuple[np.ndarray, np.ndarray]:
    """Index arrays (l, p) over the simplex shell l + p + k = q, k = q - l - p."""
    if q in _shell_cache:
        return _shell_cache[q]
    counts = np.arange(q + 1, 0, -1)
    l = np.repeat(np.arange(q + 1), counts)
    offsets = np.concatenate(([0], np.cumsum(counts)[:-1]))
    p = np.arange(l.size) - np.repeat(offsets, counts)
    if q <= 96:
        _shell_cache[q] = (l, p)
    return l, p


def _arg_parts(z):
    """(is_zero, log|z|, phase, sign_for_real) of a scalar series argument."""
    if isinstance(z, complex) and z.imag != 0.0:
        mag = abs(z)
        if mag == 0.0:
            return True, -math.inf, 0.0, 1.0
        return False, math.log(mag), math.atan2(z.imag, z.real), 1.0
    x = float(z.real) if isinstance(z, complex) else float(z)
    if x == 0.0:
        return True, -math.inf, 0.0, 1.0
    return False, math.log(abs(x)), 0.0, (1.0 if x > 0.0 else -1.0)


def eval_trivariate(params: MLParams, u, v, w, ctrl: SeriesControl | None = None) -> EvalResult:
    """Evaluate the triple series at complex arguments (u, v, w).

    Summation proceeds over simplex shells q = l+p+k.  Convergence is declared
    once ``consecutive_quiet_shells`` successive shell sums each have magnitude
    at most ``rel_tol * max(|partial|, 1)``.  The returned absolute error
    estimate is geometric: |last shell| / (1 - ratio of the last two nonzero
    shell magnitudes) when that ratio is below one, else |last shell|.

    Raises :class:`SeriesOverflowError` when a shell magnitude leaves the
    double range.  A hit of ``max_shell`` returns ``converged=False``.
    """
    ctrl = ctrl or SeriesControl()
    complex_in = any(isinstance(z, complex) and z.imag != 0.0 for z in (u, v, w))

    zu, log_u, ph_u, sg_u = _arg_parts(u)
    zv, log_v, ph_v, sg_v = _arg_parts(v)
    zw, log_w, ph_w, sg_w = _arg_parts(w)

    poch_signs, poch_logs = log_pochhammer_table(params.eta, ctrl.max_shell + 1)
    logfact = _logfact(ctrl.max_shell + 1)

    partial = 0.0 + 0.0j if complex_in else 0.0
    quiet = 0
    shells_used = 0
    last_mag = 0.0  # magnitude of the most recent shell, zero or not
    last_mags: list[float] = []  # magnitudes of the last two nonzero shells

    for q in range(ctrl.max_shell + 1):
        shells_used = q + 1
        if poch_signs[q] == 0.0:
            # terminating series: every later shell vanishes identically
            return EvalResult(partial, 0.0, shells_used, True)

        l, p = _shell_lp(q)
        k = q - l - p
        keep = np.ones(l.size, dtype=bool)
        if zu:
            keep &= l == 0
        if zv:
            keep &= p == 0
        if zw:
            keep &= k == 0
        if not keep.all():
            l, p, k = l[keep], p[keep], k[keep]
        if l.size == 0:
            shell = 0.0
        else:
            garg = l * params.alpha + p * params.beta + k * params.gamma + params.delta
            rg_sign, rg_log = signed_log_rgamma(garg)
            logmag = poch_logs[q] + rg_log - logfact[l] - logfact[p] - logfact[k]
            if not zu:
                logmag = logmag + l * log_u
            if not zv:
                logmag = logmag + p * log_v
            if not zw:
                logmag = logmag + k * log_w
            sign = poch_signs[q] * rg_sign
            if sg_u < 0.0:
                sign = sign * np.where(l % 2 == 1, -1.0, 1.0)
            if sg_v < 0.0:
                sign = sign * np.where(p % 2 == 1, -1.0, 1.0)
            if sg_w < 0.0:
                sign = sign * np.where(k % 2 == 1, -1.0, 1.0)
            with np.errstate(over="ignore", invalid="ignore"):
                if complex_in:
                    phase = l * ph_u + p * ph_v + k * ph_w
                    terms = sign * np.exp(logmag + 1j * phase)
                else:
                    terms = sign * np.exp(logmag)
                shell = terms.sum()

        with np.errstate(over="ignore"):
            partial = partial + shell
        if not np.all(np.isfinite([abs(shell), abs(partial)])):
            raise SeriesOverflowError(
                f"shell {q} magnitude exceeds the double range "
                f"(params={params}, |u|,|v|,|w|={abs(u):.3g},{abs(v):.3g},{abs(w):.3g})"
            )
        mag = last_mag = abs(shell)
        if mag > 0.0:
            last_mags = (last_mags + [mag])[-2:]

        if mag <= ctrl.rel_tol * max(abs(partial), 1.0):
            quiet += 1
            if quiet >= ctrl.consecutive_quiet_shells:
                est = _tail_estimate(last_mag, last_mags)
                if est <= ctrl.rel_tol * max(abs(partial), 1.0):
                    return EvalResult(partial, est, shells_used, True)
                # shells are quiet but their decay ratio is still near one;
                # keep summing until the geometric estimate also clears
                quiet -= 1
        else:
            quiet = 0

    return EvalResult(partial, _tail_estimate(last_mag, last_mags), shells_used, False)


def _tail_estimate(last_mag: float, last_mags: list[float]) -> float:
    """|last shell| / (1 - decay ratio of the last two nonzero shells)."""
    if len(last_mags) == 2 and last_mags[0] > 0.0:
        ratio = last_mags[1] / last_mags[0]
        if ratio < 1.0:
            return last_mag / (1.0 - ratio)
    return last_mag


def eval_univariate(
    params: MLParams, lam: LambdaTriple, r: float, ctrl: SeriesControl | None = None
) -> EvalResult:
    """The time-domain form r^(delta-1) E(l1 r^alpha, l2 r^beta, l3 r^gamma).

    Requires r > 0, or r = 0 with delta >= 1 (where the limit is 0 for
    delta > 1 and 1/Gamma(1) = 1 for delta = 1).
    """
    if r < 0.0:
        raise DomainError(f"univariate form requires r >= 0, got {r}")
    if r == 0.0:
        if params.delta > 1.0:
            return EvalResult(0.0, 0.0, 0, True)
        if params.delta == 1.0:
            return EvalResult(1.0, 0.0, 0, True)
        raise DomainError("r = 0 requires delta >= 1")
    u = lam.lambda1 * r**params.alpha
    v = lam.lambda2 * r**params.beta
    w = lam.lambda3 * r**params.gamma
    res = eval_trivariate(params, u, v, w, ctrl)
    scale = r ** (params.delta - 1.0)
    return EvalResult(res.value * scale, res.abs_error_estimate * scale, res.shells_used, res.converged)


def eval_univariate_grid(
    params: MLParams,
    lam: LambdaTriple,
    rs: np.ndarray,
    ctrl: SeriesControl | None = None,
) -> tuple[np.ndarray, EvalResult]:
    """Vectorized univariate form over a batch of nonnegative abscissae.

    The shell budget is fixed by an adaptive evaluation at max(rs) (where the
    truncation tail is largest); the frozen coefficient table is then powered
    against all points at once.  Returns the values plus the diagnostic
    result at max(rs).
    """
    ctrl = ctrl or SeriesControl()
    rs = np.asarray(rs, dtype=float)
    if np.any(rs < 0.0):
        raise DomainError("univariate form requires r >= 0")
    out = np.empty(rs.shape, dtype=float)
    zero = rs == 0.0
    if zero.any():
        if params.delta > 1.0:
            out[zero] = 0.0
        elif params.delta == 1.0:
            out[zero] = 1.0
        else:
            raise DomainError("r = 0 requires delta >= 1")
    live = ~zero
    if not live.any():
        return out, EvalResult(out[0] if out.size else 0.0, 0.0, 0, True)

    rmax = float(rs[live].max())
    probe = eval_univariate(params, lam, rmax, ctrl)
    qmax = max(probe.shells_used - 1, 0)

    exps, logc, signs = _univariate_coeffs(params, lam, qmax)
    logr = np.log(rs[live])
    # value(r) = sum_j signs_j exp(logc_j + exps_j * log r)
    with np.errstate(over="ignore", invalid="ignore"):
        mat = np.exp(logc[:, None] + exps[:, None] * logr[None, :])
    vals = signs @ mat if signs.ndim == 1 else (signs * mat).sum(axis=0)
    if not np.all(np.isfinite(vals)):
        raise SeriesOverflowError("univariate grid evaluation exceeds the double range")
    out[live] = vals
    return out, probe


def _univariate_coeffs(params: MLParams, lam: LambdaTriple, qmax: int):
    """Exponents e, log|c| and signs of the univariate power series

    r^(delta-1) E(...) = sum_j c_j r^(e_j),  truncated at shell qmax.
    Index directions with a zero lambda are pruned.
    """
    poch_signs, poch_logs = log_pochhammer_table(params.eta, qmax + 1)
    logfact = _logfact(qmax + 1)
    lams = lam.as_tuple()
    loglam = [(-math.inf if x == 0.0 else math.log(abs(x))) for x in lams]
    sglam = [(-1.0 if x < 0.0 else 1.0) for x in lams]

    all_e, all_logc, all_sign = [], [], []
    for q in range(qmax + 1):
        if poch_signs[q] == 0.0:
            break
        l, p = _shell_lp(q)
        k = q - l - p
        keep = np.ones(l.size, dtype=bool)
        if lams[0] == 0.0:
            keep &= l == 0
        if lams[1] == 0.0:
            keep &= p == 0
        if lams[2] == 0.0:
            keep &= k == 0
        l, p, k = l[keep], p[keep], k[keep]
        if l.size == 0:
            continue
        garg = l * params.alpha + p * params.beta + k * params.gamma + params.delta
        rg_sign, rg_log = signed_log_rgamma(garg)
        logc = poch_logs[q] + rg_log - logfact[l] - logfact[p] - logfact[k]
        if lams[0] != 0.0:
            logc = logc + l * loglam[0]
        if lams[1] != 0.0:
            logc = logc + p * loglam[1]
        if lams[2] != 0.0:
            logc = logc + k * loglam[2]
        sign = poch_signs[q] * rg_sign
        if sglam[0] < 0.0:
            sign = sign * np.where(l % 2 == 1, -1.0, 1.0)
        if sglam[1] < 0.0:
            sign = sign * np.where(p % 2 == 1, -1.0, 1.0)
        if sglam[2] < 0.0:
            sign = sign * np.where(k % 2 == 1, -1.0, 1.0)
        all_e.append(garg - 1.0)  # exponent of r, delta-1 folded in
        all_logc.append(logc)
        all_sign.append(sign)
    if not all_e:
        return np.zeros(1), np.full(1, -np.inf), np.zeros(1)
    return np.concatenate(all_e), np.concatenate(all_logc), np.concatenate(all_sign)


def eval_prabhakar(
    alpha: float, delta: float, eta: float, s, ctrl: SeriesControl | None = None
) -> EvalResult:
    """Three-parameter Mittag-Leffler function sum_k (eta)_k s^k / (Gamma(k alpha + delta) k!).

    Deliberately an independent single-series loop (not a reduction of the
    trivariate engine) so the two paths can cross-check each other.
    """
    if not alpha > 0.0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    ctrl = ctrl or SeriesControl()
    complex_in = isinstance(s, complex) and s.imag != 0.0
    zs, log_s, ph_s, sg_s = _arg_parts(s)

    partial = 0.0 + 0.0j if complex_in else 0.0
    quiet = 0
    last_mag = 0.0
    last_mags: list[float] = []
    for k in range(ctrl.max_shell + 1):
        p_sign, p_log = log_pochhammer(eta, k)
        if p_sign == 0.0:
            return EvalResult(partial, 0.0, k + 1, True)
        if zs and k > 0:
            return EvalResult(partial, 0.0, k + 1, True)
        rg_sign, rg_log = signed_log_rgamma(np.array([k * alpha + delta]))
        logmag = p_log + float(rg_log[0]) - math.lgamma(k + 1.0)
        if not zs:
            logmag += k * log_s
        if logmag > _EXP_MAX:
            raise SeriesOverflowError(f"term {k} exceeds the double range")
        sign = p_sign * float(rg_sign[0]) * (sg_s if (k % 2 and sg_s < 0) else 1.0)
        if complex_in:
            term = sign * math.exp(logmag) * complex(math.cos(k * ph_s), math.sin(k * ph_s))
        else:
            term = sign * math.exp(logmag)
        partial += term
        mag = last_mag = abs(term)
        if mag > 0.0:
            last_mags = (last_mags + [mag])[-2:]
        if mag <= ctrl.rel_tol * max(abs(partial), 1.0):
            quiet += 1
            if quiet >= ctrl.consecutive_quiet_shells:
                est = _tail_estimate(last_mag, last_mags)
                if est <= ctrl.rel_tol * max(abs(partial), 1.0):
                    return EvalResult(partial, est, k + 1, True)
                quiet -= 1
        else:
            quiet = 0
    return EvalResult(partial, _tail_estimate(last_mag, last_mags), ctrl.max_shell + 1, False)


def eval_fox_wright_1psi1(
    lam_num: tuple[float, float],
    mu_den: tuple[float, float],
    s,
    ctrl: SeriesControl | None = None,
) -> EvalResult:
    """The one-over-one Wright series sum_k Gamma(l0 + a0 k) s^k / (Gamma(m0 + b0 k) k!).

    Requires the convergence condition b0 - a0 > -1.
    """
    l0, a0 = lam_num
    m0, b0 = mu_den
    if not b0 - a0 > -1.0:
        raise DomainError(f"needs b - a > -1 for convergence, got {b0 - a0}")
    ctrl = ctrl or SeriesControl()
    complex_in = isinstance(s, complex) and s.imag != 0.0
    zs, log_s, ph_s, sg_s = _arg_parts(s)

    partial = 0.0 + 0.0j if complex_in else 0.0
    quiet = 0
    last_mag = 0.0
    last_mags: list[float] = []
    for k in range(ctrl.max_shell + 1):
        narg = l0 + a0 * k
        if narg <= 0.0 and narg == math.floor(narg):
            raise DomainError(f"numerator gamma pole at term {k} (argument {narg})")
        n_sign = 1.0 if narg > 0.0 else math.copysign(1.0, float(sinpi(narg)))
        n_log = math.lgamma(narg)
        if zs and k > 0:
            return EvalResult(partial, 0.0, k + 1, True)
        rg_sign, rg_log = signed_log_rgamma(np.array([m0 + b0 * k]))
        logmag = n_log + float(rg_log[0]) - math.lgamma(k + 1.0)
        if not zs:
            logmag += k * log_s
        if logmag > _EXP_MAX:
            raise SeriesOverflowError(f"term {k} exceeds the double range")
        sign = n_sign * float(rg_sign[0]) * (sg_s if (k % 2 and sg_s < 0) else 1.0)
        if complex_in:
            term = sign * math.exp(logmag) * complex(math.cos(k * ph_s), math.sin(k * ph_s))
        else:
            term = sign * math.exp(logmag)
        partial += term
        mag = last_mag = abs(term)
        if mag > 0.0:
            last_mags = (last_mags + [mag])[-2:]
        if mag <= ctrl.rel_tol * max(abs(partial), 1.0):
            quiet += 1
            if quiet >= ctrl.consecutive_quiet_shells:
                est = _tail_estimate(last_mag, last_mags)
                if est <= ctrl.rel_tol * max(abs(partial), 1.0):
                    return EvalResult(partial, est, k + 1, True)
                quiet -= 1
        else:
            quiet = 0
    return EvalResult(partial, _tail_estimate(last_mag, last_mags), ctrl.max_shell + 1, False)
