"""Monte-Carlo trials, throughput estimates and CSV parameter sweeps."""

import csv
import io
import logging
import math
from dataclasses import dataclass

import numpy as np

from . import baselines, protocol
from .channel import ChannelConfig, trial_seed
from .errors import ConfigError, MaxRoundsExceeded
from .model import COUNTING, MODES, PAYLOAD

log = logging.getLogger(__name__)

INDEX_ARQ = "index-arq"
SR = "sr"
METZNER = "metzner"
IDEAL_FEC = "ideal-fec"
PROTOCOLS = (INDEX_ARQ, SR, METZNER)

CSV_COLUMNS = (
    "protocol", "m", "n", "epsilon", "trials", "seed",
    "throughput_mean", "throughput_stderr", "mean_N", "aborted_trials",
)

_COUNTING_ENGINES = {
    INDEX_ARQ: protocol.run_counting,
    SR: baselines.sr_run_counting,
    METZNER: baselines.metzner_run_counting,
}
_STEPWISE_ENGINES = {
    INDEX_ARQ: protocol.run_stepwise,
    SR: baselines.sr_run_stepwise,
    METZNER: baselines.metzner_run_stepwise,
}


@dataclass(frozen=True)
class TrialResult:
    protocol: str
    N: int
    n: int
    completed: bool = True

    @property
    def throughput(self):
        return self.n / self.N

    @property
    def per_phase(self):
        return self.n, self.N - self.n


@dataclass(frozen=True)
class ThroughputEstimate:
    protocol: str
    m: int
    n: int
    epsilon: float
    seed: int
    trials: int
    mean: float
    stderr: float
    mean_N: float
    aborted: int = 0


def validate(protocol_name, m, n, epsilon, mode=COUNTING):
    if protocol_name not in PROTOCOLS:
        raise ConfigError(f"unknown protocol {protocol_name!r}; expected one of {PROTOCOLS}")
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}; expected one of {MODES}")
    if int(n) != n or n < 1:
        raise ConfigError(f"n must be a positive integer, got {n!r}")
    ChannelConfig(m=m, epsilon=epsilon)


def run_trial(protocol_name, m, n, epsilon, seed, mode=COUNTING, payload_len=64, max_rounds=None):
    """Run one protocol trial to completion; deterministic in ``seed``.

    Payload mode carries real bytes and raises ``IntegrityError`` if any
    receiver ends up with a different sequence. Raises
    ``MaxRoundsExceeded`` past the transmission cap.
    """
    validate(protocol_name, m, n, epsilon, mode)
    if mode == PAYLOAD:
        N = _STEPWISE_ENGINES[protocol_name](m, n, epsilon, seed, mode=PAYLOAD,
                                             payload_len=payload_len, max_rounds=max_rounds)[0]
    else:
        N = _COUNTING_ENGINES[protocol_name](m, n, epsilon, seed, max_rounds=max_rounds)
    return TrialResult(protocol=protocol_name, N=N, n=n)


def estimate_throughput(protocol_name, m, n, epsilon, trials=100, master_seed=0, mode=COUNTING,
                        payload_len=64, max_rounds=None, allow_aborts=False):
    """Mean and standard error of ``n/N`` over seeded trials.

    Trial ``i`` runs with ``trial_seed(master_seed, i)``. With
    ``allow_aborts`` a trial hitting the transmission cap is counted in
    ``aborted`` and left out of the mean; otherwise the error propagates.
    """
    if trials < 1:
        raise ConfigError(f"trials must be at least 1, got {trials!r}")
    validate(protocol_name, m, n, epsilon, mode)
    taus = []
    Ns = []
    aborted = 0
    for i in range(trials):
        try:
            r = run_trial(protocol_name, m, n, epsilon, trial_seed(master_seed, i), mode,
                          payload_len, max_rounds)
        except MaxRoundsExceeded:
            if not allow_aborts:
                raise
            aborted += 1
            continue
        taus.append(r.throughput)
        Ns.append(r.N)
    if not taus:
        return ThroughputEstimate(protocol_name, m, n, epsilon, master_seed, trials,
                                  math.nan, math.nan, math.nan, aborted)
    taus = np.array(taus)
    k = len(taus)
    stderr = float(taus.std(ddof=1) / math.sqrt(k)) if k > 1 else 0.0
    return ThroughputEstimate(protocol_name, m, n, epsilon, master_seed, trials,
                              float(taus.mean()), stderr, float(np.mean(Ns)), aborted)


def parse_epsilons(text):
    """``"0.1"``, ``"0,0.05,0.1"`` or an inclusive ``"a:b:step"`` range."""
    text = str(text).strip()
    try:
        if ":" in text:
            a, b, step = (float(v) for v in text.split(":"))
            if step <= 0 or b < a:
                raise ConfigError(f"invalid epsilon range {text!r}")
            k = int(math.floor((b - a) / step + 1e-9))
            return [round(a + i * step, 12) for i in range(k + 1)]
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse epsilon {text!r}: {exc}") from None


def _fmt(x):
    return repr(float(x))


def _row(est):
    return {
        "protocol": est.protocol, "m": est.m, "n": est.n, "epsilon": _fmt(est.epsilon),
        "trials": est.trials, "seed": est.seed, "throughput_mean": _fmt(est.mean),
        "throughput_stderr": _fmt(est.stderr), "mean_N": _fmt(est.mean_N),
        "aborted_trials": est.aborted,
    }


def _bound_row(m, n, epsilon, seed):
    return {
        "protocol": IDEAL_FEC, "m": m, "n": n, "epsilon": _fmt(epsilon), "trials": 0,
        "seed": seed, "throughput_mean": _fmt(baselines.ideal_fec_bound(epsilon)),
        "throughput_stderr": _fmt(0.0), "mean_N": "", "aborted_trials": 0,
    }


def sweep(protocols, m, n_values, epsilons, trials=100, master_seed=0, mode=COUNTING,
          payload_len=64, max_rounds_factor=50, allow_aborts=False, out=None):
    """Estimate every protocol at every ``(n, epsilon)`` point.

    Either ``n_values`` or ``epsilons`` is the swept axis (both are lists).
    Writes one CSV row per (protocol, point) plus an ``ideal-fec`` row per
    point to ``out`` (path or text stream) when given, and returns the
    estimates. Nothing is written if validation fails.
    """
    protocols = list(protocols)
    if not protocols:
        raise ConfigError("empty protocol list")
    for p in protocols:
        validate(p, m, 1, 0.0, mode)
    n_values = [int(v) for v in n_values]
    epsilons = [float(e) for e in epsilons]
    if not n_values or not epsilons:
        raise ConfigError("empty sweep axis")
    for axis in (n_values, epsilons):
        if axis != sorted(axis):
            raise ConfigError(f"sweep values must be ascending, got {axis}")
    if len(n_values) > 1 and len(epsilons) > 1:
        raise ConfigError("sweep either n or epsilon, not both")
    for n in n_values:
        for e in epsilons:
            ChannelConfig(m=m, epsilon=e, max_rounds=max_rounds_factor * n).rounds_for(n)

    rows = []
    estimates = []
    for n in n_values:
        for e in epsilons:
            for p in protocols:
                log.info("%s m=%d n=%d epsilon=%g trials=%d", p, m, n, e, trials)
                est = estimate_throughput(p, m, n, e, trials, master_seed, mode, payload_len,
                                          max_rounds_factor * n, allow_aborts)
                estimates.append(est)
                rows.append(_row(est))
            rows.append(_bound_row(m, n, e, master_seed))
    if out is not None:
        write_csv(rows, out)
    return estimates


def write_csv(rows, out):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    if hasattr(out, "write"):
        out.write(buf.getvalue())
    else:
        with open(out, "w", newline="") as fh:
            fh.write(buf.getvalue())


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))
