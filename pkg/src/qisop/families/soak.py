"""Randomised search for shapes with a small quotient.

Sample ``i`` of a run with seed ``s`` is drawn from its own generator,
seeded by child ``i`` of ``numpy.random.SeedSequence(s)``. Samples are
therefore independent of the number of samples and of the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .. import DomainError, NumericError
from ..fraenkel import NearBallError, SearchConfig, functional
from ..geometry import region_to_json
from .mask import REFERENCE_MASK, mask_construct
from .random_shapes import bumpy_disk, random_mask, random_nonconnected, random_oval, two_disks
from .report import ConfigurationError
from .stadium import stadium, stadium_optimize

__all__ = ["SoakReport", "soak_random", "sample_shape", "RANDOM_KINDS", "ALL_KINDS", "MASK_VALUE", "MASK_CONSTANT"]

# Conjectured optimal quotient and constant.
MASK_VALUE = 0.3931397
MASK_CONSTANT = 2.5437
ANOMALY_TOL = 1e-3

RANDOM_KINDS = ("bumpy_disk", "oval", "mask", "two_disks", "nonconnected")
ALL_KINDS = RANDOM_KINDS + ("reference_mask", "optimal_stadium")


@lru_cache(maxsize=1)
def _optimal_stadium_aspect():
    return stadium_optimize()[0]


def _params_dict(p):
    if isinstance(p, dict):
        return p
    return {k: getattr(p, k) for k in p.__dataclass_fields__}


def sample_shape(rng, kinds=RANDOM_KINDS):
    """Draw one shape; returns ``(kind, region, params)``."""
    kind = kinds[int(rng.integers(len(kinds)))] if len(kinds) > 1 else kinds[0]
    if kind == "bumpy_disk":
        region, params = bumpy_disk(rng)
    elif kind == "oval":
        region, params = random_oval(rng)
    elif kind == "mask":
        region, params = random_mask(rng)
    elif kind == "two_disks":
        region, params = two_disks(rng)
    elif kind == "nonconnected":
        region, params = random_nonconnected(rng)
    elif kind == "reference_mask":
        region, params = mask_construct(REFERENCE_MASK), REFERENCE_MASK
    elif kind == "optimal_stadium":
        t = _optimal_stadium_aspect()
        region, params = stadium(t), {"t": t}
    else:
        raise ConfigurationError(f"unknown shape kind {kind!r}")
    return kind, region, _params_dict(params)


def _run_sample(seed, index, kinds, config):
    # identical to SeedSequence(seed).spawn(n)[index] for any n > index
    child = np.random.SeedSequence(seed, spawn_key=(index,))
    rng = np.random.default_rng(child)
    kind, region, params = sample_shape(rng, kinds)
    out = {"index": index, "kind": kind, "params": params}
    try:
        res = functional(region, config)
    except NearBallError as exc:
        out.update(status="near_ball", message=str(exc))
        return out
    except (DomainError, NumericError) as exc:
        out.update(status="error", message=str(exc))
        return out
    out.update(status="ok", delta=res.delta, lambda_=res.lambda_, value=res.value)
    out["shape"] = region_to_json(region)
    return out


@dataclass(frozen=True)
class SoakReport:
    n: int
    seed: int
    kinds: tuple
    min_value: float
    min_sample: dict
    anomalies: tuple
    constant_violations: tuple
    skipped: tuple
    samples: tuple = field(repr=False)

    @property
    def passed(self):
        return not self.anomalies and not self.constant_violations

    def to_dict(self, include_samples=False):
        out = {
            "family": "soak",
            "n": self.n,
            "seed": self.seed,
            "kinds": list(self.kinds),
            "min_value": self.min_value,
            "worst_margin": None if self.min_value is None else self.min_value - (MASK_VALUE - ANOMALY_TOL),
            "min_sample": self.min_sample,
            "failures": list(self.anomalies) + list(self.constant_violations),
            "skipped": len(self.skipped),
            "passed": self.passed,
        }
        if include_samples:
            out["samples"] = [{k: v for k, v in s.items() if k != "shape"} for s in self.samples]
        return out


def soak_random(n, seed, kinds=RANDOM_KINDS, config=None, workers=None):
    """Compute the quotient of ``n`` seeded random shapes.

    A value below ``0.3931397 - 1e-3`` is an anomaly, and so is a sample
    violating ``lambda**2 <= 2.5437 delta``. Near-ball samples (asymmetry
    below the floor of :func:`~qisop.fraenkel.functional`) are skipped.
    """
    n = int(n)
    if n < 1:
        raise ConfigurationError("n must be at least 1")
    kinds = tuple(kinds)
    for k in kinds:
        if k not in ALL_KINDS:
            raise ConfigurationError(f"unknown shape kind {k!r}")
    cfg = config or SearchConfig()
    args = [(seed, i, kinds, cfg) for i in range(n)]
    if workers and workers > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            samples = list(ex.map(_run_sample, *zip(*args), chunksize=max(1, n // (4 * workers))))
    else:
        samples = [_run_sample(*a) for a in args]
    ok = [s for s in samples if s["status"] == "ok"]
    skipped = tuple(s for s in samples if s["status"] != "ok")
    anomalies = tuple(
        {"index": s["index"], "kind": s["kind"], "value": s["value"]}
        for s in ok
        if s["value"] < MASK_VALUE - ANOMALY_TOL
    )
    violations = tuple(
        {"index": s["index"], "kind": s["kind"], "lambda": s["lambda_"], "delta": s["delta"]}
        for s in ok
        if s["lambda_"] ** 2 > MASK_CONSTANT * s["delta"]
    )
    best = min(ok, key=lambda s: s["value"]) if ok else None
    return SoakReport(
        n=n,
        seed=seed,
        kinds=kinds,
        min_value=best["value"] if best else None,
        min_sample=best,
        anomalies=anomalies,
        constant_violations=violations,
        skipped=skipped,
        samples=tuple(samples),
    )
