"""Shared plumbing for graph-side and sphere-side sweeps."""

import logging
from typing import List

from ..graphs.graph import RegularGraph, random_regular, read_graph
from ..sphere.observables import SphereFunction
from ..sphere.rotations import RotationSet, default_rotation_set, rotation_set_from_matrices
from ..utils.artifacts import parse_rotation_rows, read_rotation_file
from ..utils.config import ExperimentConfig, GlobalSettings, RotationConfig
from .experiment import Experiment, Point

logger = logging.getLogger(__name__)


def rotation_set_from_config(rc: RotationConfig) -> RotationSet:
    """
    Build the generators named by a rotation config.

    Raises:
        FileNotFoundError: If the rotation file is missing
        ValueError: If a matrix is malformed or not a rotation
    """
    if rc.file is not None:
        return rotation_set_from_matrices(read_rotation_file(rc.file))
    if rc.matrices is not None:
        return rotation_set_from_matrices(parse_rotation_rows(rc.matrices))
    return default_rotation_set()


class GraphExperiment(Experiment):
    """Sweeps over random regular graphs (k, instance) or over graph files."""

    def points(self) -> List[Point]:
        if self.config.graph_files:
            return [{"file": i} for i in range(len(self.config.graph_files))]
        return [
            {"k": k, "instance": i}
            for k in sorted(set(self.config.k_values))
            for i in range(self.config.instances)
        ]

    def load_graph(self, point: Point) -> RegularGraph:
        if "file" in point:
            path = self.config.graph_files[point["file"]]
            g = read_graph(path)
            if g.q != self.config.q:
                logger.warning(f"{path}: graph has q={g.q}, config says q={self.config.q}; using q={g.q}")
            return g
        seed = int(self.point_seed(point).generate_state(1)[0])
        return random_regular(point["k"], self.config.q, seed=seed)

    def point_label(self, point: Point, g: RegularGraph) -> dict:
        """Leading CSV columns identifying the graph."""
        if "file" in point:
            return {"file": point["file"], "k": g.k}
        return {"k": point["k"], "instance": point["instance"]}


class SphereExperiment(Experiment):
    """Sweeps over harmonic degrees s for one rotation set."""

    def __init__(self, config: ExperimentConfig, settings: GlobalSettings):
        super().__init__(config, settings)
        self.rots: RotationSet = rotation_set_from_config(config.rotations)

    def points(self) -> List[Point]:
        return [{"s": s} for s in sorted(set(self.config.s_values))]

    def observables(self) -> List[SphereFunction]:
        """
        Observables shared by every s.

        Random observables are seeded by their index alone so the same
        function is followed across degrees.
        """
        oc = self.config.observable
        if oc.kind == "harmonic":
            return [SphereFunction.harmonic(oc.degree, oc.order)]
        if oc.kind == "coefficients":
            coeffs = {(c.l, c.m): complex(c.re, c.im) for c in oc.coefficients}
            return [SphereFunction(coefficients=coeffs)]
        return [
            SphereFunction.random_band(oc.band, self.point_rng({"observable": c}))
            for c in range(oc.count)
        ]
