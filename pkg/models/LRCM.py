"""
   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
"""

import logging

from ComponentDetectorBase import ComponentDetector
from lrcm import constants
from lrcm.core import build_laplacian
from lrcm.detection import detect
from lrcm.errors import VerificationError
from lrcm.verify import components_bfs, spectral_report

LOGGER = logging.getLogger(__name__)

class LRCM(ComponentDetector):
    """Connected components from the zeros of the lower row sums of the RCM-ordered Laplacian."""

    def __init__(self, verify=False, spectral_max_n=128, tolerance=constants.ZERO_TOLERANCE,
                 jacobi_tol=constants.JACOBI_TOLERANCE, max_sweeps=constants.JACOBI_MAX_SWEEPS):
        self.verify = verify
        self.spectral_max_n = spectral_max_n
        self.tolerance = tolerance
        self.jacobi_tol = jacobi_tol
        self.max_sweeps = max_sweeps

    def detect(self, graph):
        result = detect(graph)
        LOGGER.debug("%s: %d components", self.__class__.__name__, result.partition.k)
        if self.verify:
            self._check(graph, result.partition)
        return result

    def _check(self, graph, partition):
        expected = components_bfs(graph)
        if partition != expected:
            raise VerificationError(f"L-RCM found {partition.k} components, BFS found {expected.k}")
        if graph.n <= self.spectral_max_n:
            zeros = spectral_report(build_laplacian(graph), self.tolerance, self.spectral_max_n,
                                    self.jacobi_tol, self.max_sweeps).zero_multiplicity
            if zeros != partition.k:
                raise VerificationError(f"L-RCM found {partition.k} components, the Laplacian "
                                        f"has {zeros} zero eigenvalues")
        LOGGER.info("verified %d components against the oracles", partition.k)

    def list_hyperparameters():
        hparams = []
        hparams.append(ComponentDetector.createHyperparameter('verify', 'bool', 'False', 'cross-check every result against the BFS oracle'))
        hparams.append(ComponentDetector.createHyperparameter('spectral_max_n', 'int', '128', 'largest graph also checked against the Laplacian zero multiplicity'))
        hparams.append(ComponentDetector.createHyperparameter('tolerance', 'float', '1e-8', 'relative threshold below which an eigenvalue counts as zero'))
        hparams.append(ComponentDetector.createHyperparameter('jacobi_tol', 'float', '1e-12', 'Jacobi stops once the off-diagonal norm falls below this fraction of its initial value'))
        hparams.append(ComponentDetector.createHyperparameter('max_sweeps', 'int', '60', 'upper bound on Jacobi sweeps'))
        return hparams
