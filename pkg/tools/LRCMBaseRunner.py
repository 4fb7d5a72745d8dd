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

import importlib.util
import logging
import os
from pathlib import Path
import sys

root_dir = Path(__file__).resolve().parent.parent
detector_dir = root_dir.joinpath('models')
if str(detector_dir) not in sys.path:
  sys.path.append(str(detector_dir))

from lrcm.bench import fit_power_law, run_block_experiment, run_scaling_experiment
from lrcm.core import bandwidth, build_laplacian, permute_symmetric
from lrcm.errors import DegenerateFitError, InputError
from lrcm.ordering import rcm_order

logger = logging.getLogger(__name__)

class LRCMRunner():

  def _load_module(self, detector_class, detector_path):
    if not os.path.isfile(detector_path):
      raise InputError(f"no detector module at {detector_path}")
    module_dir = os.path.dirname(os.path.abspath(detector_path))
    if module_dir not in sys.path:
      sys.path.append(module_dir)
    spec = importlib.util.spec_from_file_location(detector_class, detector_path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod

  def _detector_path(self, detector_class, detector_path=None):
    return detector_path or str(detector_dir.joinpath(detector_class + '.py'))

  def _detect(self, detector_class, detector_path, graph, kwargs={}):
    mod = self._load_module(detector_class, self._detector_path(detector_class, detector_path))
    if not hasattr(mod, detector_class):
      raise InputError(f"{detector_path} defines no detector {detector_class}")
    detector = getattr(mod, detector_class)(**kwargs)
    return detector.detect(graph)

  def _order(self, graph):
    laplacian = build_laplacian(graph)
    permutation = rcm_order(graph)
    lhat = permute_symmetric(laplacian, permutation)
    return permutation, bandwidth(laplacian), bandwidth(lhat)

  def _hyperparams(self, detector_class, detector_path=None):
    mod = self._load_module(detector_class, self._detector_path(detector_class, detector_path))
    detector_type = getattr(mod, detector_class)
    return detector_type.list_hyperparameters()

  def _bench_blocks(self, blocks, seed):
    return run_block_experiment(blocks.n_target, blocks.p_range, blocks.reps, seed,
                                edge_factor=blocks.edge_factor, normalize_p=blocks.normalize_p)

  def _bench_scale(self, scale, seed):
    points = run_scaling_experiment(scale.n_list, scale.sparsity, scale.reps, seed)
    try:
      fit = fit_power_law(points, x=scale.fit_against)
    except DegenerateFitError as e:
      logger.warning(f"no power-law fit: {e}")
      fit = None
    return points, fit
