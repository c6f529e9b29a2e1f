"""Expected-sample analytics and the sampling-method comparison report.

Collecting every minimal cut set by repeated sampling is a coupon-collector
process restricted to the interesting coupons.  With uniform exploration
(every basic event at p = 0.5) the closed forms are

    E[X_mc]  = 2^n_be * H(n_mcs)
    E[X_qaa] = (n_mcs / p) * H(n_mcs)

where H is the harmonic number and p the per-draw probability of hitting a
minimal cut set.  The empirical experiment below draws from the actual
sampling distribution until all minimal cut sets are seen, which both
cross-checks the closed forms and exposes any non-uniformity among the
minimal cut sets' individual probabilities (the closed forms assume they
are equally likely; that holds exactly in the uniform regime).
"""

from dataclasses import dataclass

import numpy as np

from .ft_classical import config_to_int, enumerate_mcs
from .ft_model import FaultTree
from .qaa_engine import amplified_state, be_pattern_distribution
from .qsim import DEFAULT_MAX_QUBITS

_DRAW_CHUNK = 256


@dataclass(frozen=True)
class CollectionStats:
    """Empirical samples-to-collect-all statistics over independent trials."""

    mean_samples: float
    stderr: float
    trials: int
    mcs_probability: float
    per_mcs_probability: tuple[float, ...]


@dataclass(frozen=True)
class MethodResult:
    method: str
    j: int | None
    success_probability: float
    expected_samples: float
    expected_samples_rounded: int
    empirical_mean: float | None = None
    empirical_stderr: float | None = None


@dataclass(frozen=True)
class ComparisonReport:
    n_be: int
    n_mcs: int
    cut_set_count: int
    p_mc: float
    monte_carlo: MethodResult
    naive: MethodResult
    proposed: MethodResult
    ratio: float

    @property
    def methods(self) -> tuple[MethodResult, MethodResult, MethodResult]:
        return (self.monte_carlo, self.naive, self.proposed)

    def to_csv(self) -> str:
        lines = [
            "method,j,success_probability,expected_samples,expected_samples_rounded,"
            "empirical_mean,empirical_stderr"
        ]
        for m in self.methods:
            j = "" if m.j is None else str(m.j)
            mean = "" if m.empirical_mean is None else repr(m.empirical_mean)
            err = "" if m.empirical_stderr is None else repr(m.empirical_stderr)
            lines.append(
                f"{m.method},{j},{m.success_probability!r},{m.expected_samples!r},"
                f"{m.expected_samples_rounded},{mean},{err}"
            )
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        def cell(m: MethodResult) -> list[str]:
            title = m.method.replace("_", " ")
            if m.j is not None:
                title += f" (j={m.j})"
            rows = [title, f"E[X] = {m.expected_samples_rounded}", f"p = {m.success_probability:.6g}"]
            if m.empirical_mean is not None:
                rows.append(f"measured = {m.empirical_mean:.1f} +- {m.empirical_stderr:.1f}")
            return rows

        columns = [cell(m) for m in self.methods]
        depth = max(len(c) for c in columns)
        for c in columns:
            c.extend([""] * (depth - len(c)))
        widths = [max(len(row) for row in c) + 3 for c in columns]
        header = (
            f"configs=2^{self.n_be}  cut_sets={self.cut_set_count}  "
            f"mcs={self.n_mcs}  p_mc={self.p_mc:.6g}  ratio={self.ratio:.4g}"
        )
        body = "\n".join(
            "".join(col[r].ljust(w) for col, w in zip(columns, widths)).rstrip()
            for r in range(depth)
        )
        return header + "\n\n" + body + "\n"


def harmonic(n: int) -> float:
    """n-th harmonic number, 1 + 1/2 + ... + 1/n."""
    if n < 1:
        raise ValueError("harmonic number needs n >= 1")
    return sum(1.0 / k for k in range(1, n + 1))


def expected_samples_mc(n_be: int, n_mcs: int) -> float:
    """Expected draws for plain uniform sampling to see every minimal cut set."""
    if n_mcs < 1:
        raise ValueError("no minimal cut sets to collect")
    if n_mcs > (1 << n_be):
        raise ValueError("more minimal cut sets than configurations")
    return float(1 << n_be) * harmonic(n_mcs)


def expected_samples_qaa(n_mcs: int, p_qaa: float) -> float:
    """Expected draws when each sample is a minimal cut set with probability
    ``p_qaa`` (uniform among the minimal cut sets)."""
    if n_mcs < 1:
        raise ValueError("no minimal cut sets to collect")
    if not 0.0 < p_qaa <= 1.0:
        raise ValueError("p_qaa must be in (0, 1]")
    return (n_mcs / p_qaa) * harmonic(n_mcs)


def improvement_ratio(n_be: int, n_mcs: int, p_qaa: float) -> float:
    """Expected-sample ratio of uniform sampling over the amplified sampler;
    algebraically equal to expected_samples_mc / expected_samples_qaa."""
    return p_qaa * float(1 << n_be) / n_mcs


def coupon_collection_experiment(
    tree: FaultTree,
    sampler: str,
    trials: int,
    seed: int,
    j: int | None = None,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> CollectionStats:
    """Mean draws until every minimal cut set has been seen at least once.

    ``sampler`` is ``monte_carlo``, ``naive`` or ``proposed``; the latter two
    need the iteration count ``j``.  All samplers operate in the uniform
    exploration regime (p = 0.5 per basic event) that the closed forms
    assume.  Trials use independently derived seeds, so they could run in
    parallel; results depend only on (tree, sampler, trials, seed, j).
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    enumeration = enumerate_mcs(tree)
    if not enumeration.mcs:
        raise ValueError("tree has no minimal cut sets to collect")
    patterns = np.array(sorted(config_to_int(c) for c in enumeration.mcs), dtype=np.int64)

    if sampler == "monte_carlo":
        distribution = np.full(enumeration.config_count, 1.0 / enumeration.config_count)
    elif sampler in ("naive", "proposed"):
        if j is None:
            raise ValueError(f"sampler {sampler!r} needs an iteration count j")
        state, _ = amplified_state(tree, sampler, j, max_qubits=max_qubits)
        distribution = be_pattern_distribution(state, tree.n_be)
    else:
        raise ValueError(f"unknown sampler {sampler!r}")

    cumulative = np.cumsum(distribution)
    counts = np.empty(trials, dtype=np.int64)
    for t, child_seed in enumerate(np.random.SeedSequence(seed).spawn(trials)):
        counts[t] = _collect_all(cumulative, patterns, np.random.default_rng(child_seed))

    per_mcs = tuple(float(distribution[p]) for p in patterns)
    stderr = float(counts.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return CollectionStats(
        mean_samples=float(counts.mean()),
        stderr=stderr,
        trials=trials,
        mcs_probability=float(sum(per_mcs)),
        per_mcs_probability=per_mcs,
    )


def comparison_report(
    n_be: int,
    n_mcs: int,
    cut_set_count: int,
    j_naive: int,
    p_naive: float,
    j_proposed: int,
    p_proposed: float,
    collections: dict[str, CollectionStats] | None = None,
) -> ComparisonReport:
    """Assemble the three-method report from measured success probabilities."""
    p_mc = n_mcs / float(1 << n_be)
    collections = collections or {}

    def result(method: str, jj: int | None, p: float, expected: float) -> MethodResult:
        stats = collections.get(method)
        return MethodResult(
            method=method,
            j=jj,
            success_probability=p,
            expected_samples=expected,
            expected_samples_rounded=int(round(expected)),
            empirical_mean=None if stats is None else stats.mean_samples,
            empirical_stderr=None if stats is None else stats.stderr,
        )

    return ComparisonReport(
        n_be=n_be,
        n_mcs=n_mcs,
        cut_set_count=cut_set_count,
        p_mc=p_mc,
        monte_carlo=result("monte_carlo", None, p_mc, expected_samples_mc(n_be, n_mcs)),
        naive=result("naive", j_naive, p_naive, expected_samples_qaa(n_mcs, p_naive)),
        proposed=result(
            "proposed", j_proposed, p_proposed, expected_samples_qaa(n_mcs, p_proposed)
        ),
        ratio=improvement_ratio(n_be, n_mcs, p_proposed),
    )


def _collect_all(cumulative: np.ndarray, patterns: np.ndarray, rng) -> int:
    need = set(int(p) for p in patterns)
    count = 0
    while need:
        draws = np.searchsorted(cumulative, rng.random(_DRAW_CHUNK) * cumulative[-1], side="right")
        for d in draws:
            count += 1
            need.discard(int(d))
            if not need:
                break
    return count
