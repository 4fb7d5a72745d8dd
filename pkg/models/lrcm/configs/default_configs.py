import ml_collections

from lrcm import constants


def get_default_configs():
  config = ml_collections.ConfigDict()

  config.seed = 7

  # dense spectral oracle
  config.spectral = spectral = ml_collections.ConfigDict()
  spectral.tolerance = constants.ZERO_TOLERANCE
  spectral.jacobi_tol = constants.JACOBI_TOLERANCE
  spectral.max_sweeps = constants.JACOBI_MAX_SWEEPS

  # --verify
  config.verify = verify = ml_collections.ConfigDict()
  verify.spectral_max_n = 128

  config.bench = bench = ml_collections.ConfigDict()

  # constant n, 2^p blocks of the same size
  bench.blocks = blocks = ml_collections.ConfigDict()
  blocks.n_target = 2 ** 16
  blocks.p_range = list(range(5, 14))
  blocks.reps = 10
  blocks.edge_factor = 2.0
  blocks.normalize_p = ml_collections.config_dict.placeholder(int)

  # two blocks, n increasing
  bench.scale = scale = ml_collections.ConfigDict()
  scale.n_list = [2 ** e for e in range(10, 15)]
  scale.sparsity = 0.005
  scale.reps = 5
  scale.fit_against = 'n'

  return config
