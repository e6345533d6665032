"""
Bending sweep: bend a group over a grid of angles and export the results.

Files written to the output directory:
    bend_sweep.csv              one row per grid point
    bend_sweep.json             the same rows plus run metadata
    limitset_eta_<idx>.csv      limit-set point cloud per grid point
"""

import json
import logging
import math
import os
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from .algebra import ImaginaryDirection, unit_rotation
from .errors import NotLoxodromicError
from .groups import GroupData, LimitSetSampler, bend, collar_check, fixed_points, marker_invariant, translation_length
from .hermitian import BallPoint
from .models import real_circle_offset

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
SWEEP_COLUMNS = [
    "eta", "eta_i", "eta_j", "eta_k",
    "marker_invariant", "min_cygan_offset", "max_cygan_offset",
    "collar_ok", "max_form_residual", "samples", "skipped",
]


def largest_collar(eps: float) -> float:
    """Largest collar radius delta with sinh(eps/4) sinh(delta/2) <= 1/2."""
    return 2.0 * math.asinh(1.0 / (2.0 * math.sinh(eps / 4.0)))


def limit_cloud_frame(samples: Sequence) -> pd.DataFrame:
    """(word, point) pairs -> one row per point with quaternion components and offset."""
    rows = []
    for word, p in samples:
        row: Dict = {"word": " ".join(label if e > 0 else label.upper() for label, e in word)}
        for idx, q in enumerate(p.coords, start=1):
            row.update({f"p{idx}_w": q.w, f"p{idx}_x": q.x, f"p{idx}_y": q.y, f"p{idx}_z": q.z})
        row["cygan_offset"] = real_circle_offset(p)
        rows.append(row)
    return pd.DataFrame(rows)


class BendSweep:
    """
    Bending sweep over eta values along one imaginary axis.

    Every grid point uses the same sampler seed, so the word sequence is
    identical across rows.
    """

    def __init__(self, group: GroupData, axis: ImaginaryDirection, etas: Sequence[float],
                 word_length: int = 6, limit_count: int = 64, seed: int = 7,
                 collar_delta: float = math.log(63.0)):
        self.group = group
        self.axis = axis
        self.etas = [float(e) for e in etas]
        self.word_length = word_length
        self.limit_count = limit_count
        self.seed = seed
        self.collar_delta = collar_delta
        self.clouds: List[pd.DataFrame] = []
        self.stats = {
            'rows': 0,
            'samples': 0,
            'skipped_elliptic': 0,
        }

    def _reference(self) -> Optional[BallPoint]:
        try:
            return fixed_points(self.group.gamma1[0])[0]
        except NotLoxodromicError:
            logger.warning("First Gamma_1 generator is not loxodromic; marker uses the bent group's own point")
            return None

    def run(self) -> pd.DataFrame:
        eps = translation_length(self.group.axis)
        collar_ok = collar_check(eps, self.collar_delta)
        reference = self._reference()
        rows = []
        self.clouds = []
        for eta in self.etas:
            bent = bend(self.group, unit_rotation(self.axis, eta))
            sampler = LimitSetSampler(bent, self.word_length, self.seed)
            samples = sampler.sample(self.limit_count)
            cloud = limit_cloud_frame(samples)
            self.clouds.append(cloud)
            offsets = cloud["cygan_offset"] if len(cloud) else pd.Series([math.nan])
            vec = eta * np.asarray(self.axis.vector, dtype=float)
            rows.append({
                "eta": eta,
                "eta_i": vec[0], "eta_j": vec[1], "eta_k": vec[2],
                "marker_invariant": marker_invariant(bent, reference),
                "min_cygan_offset": float(offsets.min()),
                "max_cygan_offset": float(offsets.max()),
                "collar_ok": bool(collar_ok),
                "max_form_residual": bent.max_residual(),
                "samples": sampler.stats['samples'],
                "skipped": sampler.stats['skipped_elliptic'],
            })
            self.stats['rows'] += 1
            self.stats['samples'] += sampler.stats['samples']
            self.stats['skipped_elliptic'] += sampler.stats['skipped_elliptic']
            logger.debug(f"eta = {eta:.6g}: marker {rows[-1]['marker_invariant']:.12g}")
        logger.info(f"Bending sweep finished: {self.stats['rows']} rows, {self.stats['samples']} limit samples")
        return pd.DataFrame(rows, columns=SWEEP_COLUMNS)

    def write(self, frame: pd.DataFrame, out_dir: str, metadata: Optional[Dict] = None) -> Dict[str, str]:
        """Write CSV, JSON and point clouds; returns the written paths by kind."""
        os.makedirs(out_dir, exist_ok=True)
        paths = {
            'csv': os.path.join(out_dir, "bend_sweep.csv"),
            'json': os.path.join(out_dir, "bend_sweep.json"),
        }
        frame.to_csv(paths['csv'], index=False, float_format=FLOAT_FORMAT)
        meta = dict(metadata or {})
        meta.update({
            'seed': self.seed,
            'word_length': self.word_length,
            'limit_count': self.limit_count,
            'axis': list(self.axis.vector),
            'collar_delta': self.collar_delta,
            'largest_collar': largest_collar(translation_length(self.group.axis)),
            'kind': self.group.kind,
        })
        with open(paths['json'], 'w') as f:
            json.dump({'metadata': meta, 'rows': json.loads(frame.to_json(orient="records", double_precision=15))},
                      f, indent=2)
        for idx, cloud in enumerate(self.clouds):
            path = os.path.join(out_dir, f"limitset_eta_{idx:03d}.csv")
            cloud.to_csv(path, index=False, float_format=FLOAT_FORMAT)
            paths[f'cloud_{idx:03d}'] = path
        logger.info(f"Wrote {len(paths)} files to {out_dir}")
        return paths
