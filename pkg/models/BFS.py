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

import numpy as np

from ComponentDetectorBase import ComponentDetector
from lrcm.core import Permutation
from lrcm.detection import CutVector, DetectionResult, Partition
from lrcm.verify import component_labels

LOGGER = logging.getLogger(__name__)

class BFS(ComponentDetector):
    """
    Breadth-first search components. The permutation groups the nodes by
    component (components by smallest member, members ascending) and the cuts
    close each group.
    """

    def detect(self, graph):
        label, count = component_labels(graph)
        permutation = Permutation.from_forward(np.argsort(label, kind='stable'))
        cuts = CutVector(np.cumsum(np.bincount(label, minlength=count)))
        LOGGER.debug("%s: %d components", self.__class__.__name__, count)
        return DetectionResult(Partition.from_cuts(permutation, cuts), permutation, cuts)

    def list_hyperparameters():
        return []
