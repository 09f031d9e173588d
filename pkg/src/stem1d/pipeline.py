"""The detection pipeline: smooth, list local maxima, test their heights."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .candidates import CandidateSet
from .grid import SampledSequence
from .kernels import Kernel, convolve
from .multitest import DetectionReport, Procedure, run_procedure
from .noise import NoiseMoments
from .palm import PalmParams, candidate_pvalues


def find_local_maxima(seq: SampledSequence, margin: int | None = None) -> CandidateSet:
    """Strict local maxima of the sequence, away from the margins.

    Sample i qualifies when values[i] exceeds both neighbours, so plateau
    samples are never maxima.  Only indices with
    ``margin <= i < len - margin`` are returned; neighbours just inside a
    margin still participate in the comparisons.  ``margin`` defaults to
    the sequence's own validity margin.
    """
    if margin is None:
        margin = seq.margin
    margin = int(margin)
    if margin < 0:
        raise ValueError("margin must be non-negative")
    v = seq.values
    idx = np.flatnonzero((v[1:-1] > v[:-2]) & (v[1:-1] > v[2:])) + 1
    idx = idx[(idx >= margin) & (idx < v.size - margin)]
    return CandidateSet(idx, seq.time_at(idx), v[idx])


@dataclass(frozen=True, eq=False)
class StemResult:
    """Everything produced by one detection run."""

    report: DetectionReport
    smoothed: SampledSequence
    candidates: CandidateSet


def stem_detect(
    raw: SampledSequence,
    kernel: Kernel,
    moments: NoiseMoments,
    procedure: Procedure = Procedure.BONFERRONI,
    alpha: float = 0.05,
) -> StemResult:
    """Smooth ``raw``, test the heights of its local maxima.

    ``moments`` must describe the noise *after* smoothing by ``kernel``.
    The smoothed sequence's boundary margin (half the kernel support) is
    excluded from the candidate search.
    """
    smoothed = convolve(raw, kernel)
    candidates = candidate_pvalues(
        find_local_maxima(smoothed), PalmParams(moments)
    )
    report = run_procedure(candidates, alpha, PalmParams(moments), procedure)
    return StemResult(report=report, smoothed=smoothed, candidates=candidates)


@dataclass(frozen=True, eq=False)
class BandwidthSelection:
    """Result of scanning a bandwidth grid for the most discoveries."""

    chosen_index: int
    result: StemResult
    rejection_counts: tuple[int, ...]


def auto_bandwidth(
    raw: SampledSequence,
    kernels: Sequence[Kernel],
    moments_per_kernel: Sequence[NoiseMoments],
    procedure: Procedure = Procedure.BONFERRONI,
    alpha: float = 0.05,
) -> BandwidthSelection:
    """Run detection at every kernel and keep the one with most rejections.

    Ties go to the smallest bandwidth.  The returned report is exactly
    the one computed at the chosen kernel, so the selection step does not
    alter any p-value.
    """
    if len(kernels) == 0:
        raise ValueError("need at least one kernel")
    if len(kernels) != len(moments_per_kernel):
        raise ValueError("kernels and moments lists must align")
    results = [
        stem_detect(raw, kernel, moments, procedure, alpha)
        for kernel, moments in zip(kernels, moments_per_kernel)
    ]
    counts = tuple(res.report.num_rejected for res in results)
    best = 0
    for i in range(1, len(results)):
        better = counts[i] > counts[best]
        tie_smaller = (
            counts[i] == counts[best]
            and kernels[i].bandwidth < kernels[best].bandwidth
        )
        if better or tie_smaller:
            best = i
    return BandwidthSelection(
        chosen_index=best, result=results[best], rejection_counts=counts
    )
