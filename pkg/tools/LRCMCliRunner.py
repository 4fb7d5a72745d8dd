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

import json
import logging
import os
import sys
import time

from LRCMBaseRunner import LRCMRunner

from lrcm import constants
from lrcm.bench import (min_sparsity, scaling_summary, write_block_csv, write_scaling_csv,
                        write_summary_json)
from lrcm.configs.default_configs import get_default_configs
from lrcm.errors import BenchConfigError, InputError, LRCMError
from lrcm.formats import InputSpec

logger = logging.getLogger(__name__)

class LRCMCliRunner(LRCMRunner):

  def components(self, input_spec, detector_class='LRCM', detector_path=None, verify=False,
                 config=None):
    config = config or get_default_configs()
    graph = input_spec.load()
    kwargs = self._detector_kwargs(detector_class, detector_path, verify, config)
    result = super()._detect(detector_class, detector_path, graph, kwargs)
    return {"n": graph.n, "m": graph.m, "k": result.partition.k,
            "components": result.partition.tolist(),
            "rcm": result.permutation.labels(),
            "cut": result.cuts.tolist()}

  def order(self, input_spec):
    graph = input_spec.load()
    permutation, before, after = super()._order(graph)
    return {"rcm": permutation.labels(), "bandwidth_before": before, "bandwidth_after": after}

  def list_hyperparameters(self, detector_class, detector_path=None):
    hyperparams_info = super()._hyperparams(detector_class, detector_path)
    return json.dumps(hyperparams_info)

  def bench_blocks(self, config):
    return super()._bench_blocks(config.bench.blocks, config.seed)

  def bench_scale(self, config):
    return super()._bench_scale(config.bench.scale, config.seed)

  def _detector_kwargs(self, detector_class, detector_path, verify, config):
    if not verify:
      return {}
    accepted = {h['name'] for h in super()._hyperparams(detector_class, detector_path)}
    if 'verify' not in accepted:
      logger.warning(f"{detector_class} has no verification; --verify is ignored")
      return {}
    kwargs = {'verify': True, 'spectral_max_n': config.verify.spectral_max_n,
              'tolerance': config.spectral.tolerance, 'jacobi_tol': config.spectral.jacobi_tol,
              'max_sweeps': config.spectral.max_sweeps}
    return {k: v for k, v in kwargs.items() if k in accepted}

import argparse

def parse_int_list(text):
  """'5..13' is an inclusive range, '64,128' a list; both may be combined: '1,4..6'."""
  values = []
  for part in text.split(','):
    part = part.strip()
    try:
      if '..' in part:
        lo, hi = part.split('..')
        values.extend(range(int(lo), int(hi) + 1))
      else:
        values.append(int(part))
    except ValueError:
      raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from None
  if not values:
    raise argparse.ArgumentTypeError(f"empty integer list: {text!r}")
  return values

def write_output(text, output_file):
  if output_file in (None, '', '-'):
    sys.stdout.write(text + '\n')
  else:
    with open(output_file, 'w') as f:
      f.write(text + '\n')

def format_components(payload, output_format):
  if output_format == constants.OUTPUT_TEXT:
    return '\n'.join(' '.join(str(v) for v in c) for c in payload['components'])
  return json.dumps(payload)

def format_order(payload, output_format):
  if output_format == constants.OUTPUT_TEXT:
    return '\n'.join([' '.join(str(v) for v in payload['rcm']),
                      f"bandwidth_before {payload['bandwidth_before']}",
                      f"bandwidth_after {payload['bandwidth_after']}"])
  return json.dumps(payload)

def bench_config(args):
  config = get_default_configs()
  if args.seed is not None:
    config.seed = args.seed
  blocks, scale = config.bench.blocks, config.bench.scale
  if args.mode == 'blocks':
    if args.n is not None:
      if len(args.n) != 1:
        raise BenchConfigError(f"--mode blocks takes a single --n, got {args.n}")
      blocks.n_target = args.n[0]
    if args.p is not None:
      blocks.p_range = args.p
    if args.reps is not None:
      blocks.reps = args.reps
    if args.edge_factor is not None:
      blocks.edge_factor = args.edge_factor
    if args.normalize_p is not None:
      blocks.normalize_p = args.normalize_p
  else:
    if args.n is not None:
      scale.n_list = args.n
    if args.reps is not None:
      scale.reps = args.reps
    if args.fit_against is not None:
      scale.fit_against = args.fit_against
    if args.sparsity is not None:
      scale.sparsity = args.sparsity
    else:
      # the default density cannot connect the smallest graphs of a short smoke run
      floor = max((min_sparsity(n) for n in scale.n_list if n >= 4), default=0.0)
      if scale.sparsity < floor:
        logger.warning(f"raising the default sparsity {scale.sparsity} to {floor:.6g} "
                       f"so that n={min(scale.n_list)} can be connected")
        scale.sparsity = floor
  return config

def setup_logging(log_level, log_dir):
  handlers = [logging.StreamHandler()]
  if log_dir:
    os.makedirs(log_dir, exist_ok=True)
    logfile_format = log_dir + "/lrcm_cli_{}.log".format(time.strftime("%Y%m%d"))
    handlers.append(logging.FileHandler(logfile_format))
  logging.basicConfig(
      level=log_level,
      format="%(asctime)s [%(levelname)-5.5s]  %(message)s",
      handlers=handlers)

def main():
  common_parser = argparse.ArgumentParser(add_help=False)
  common_parser.add_argument('--output', type=str, default=None, help='(str) output file, stdout if omitted')
  common_parser.add_argument('--log_level', type=int, default=logging.WARNING)
  common_parser.add_argument('--log_dir', type=str, default='')

  input_parser = argparse.ArgumentParser(add_help=False)
  input_parser.add_argument('input_file', type=str, help="(str) path to the graph file, '-' for stdin")
  input_parser.add_argument('--input-format', dest='input_format', default=constants.AUTO,
                            choices=[constants.AUTO, constants.EDGE_LIST, constants.MATRIX_MARKET],
                            help='(str) graph file format, by extension if auto')
  input_parser.add_argument('--base', type=int, default=1, choices=[0, 1], help='(int) first node label of an edge list')
  input_parser.add_argument('--sanitize', action='store_true', help='drop self-loops and merge duplicate edges')
  input_parser.add_argument('--format', default=constants.OUTPUT_JSON,
                            choices=[constants.OUTPUT_JSON, constants.OUTPUT_TEXT], help='(str) output format')

  root_parser = argparse.ArgumentParser(description='L-RCM connected component detection')
  subparsers = root_parser.add_subparsers(dest='cmd')
  parser_components = subparsers.add_parser('components', parents=[input_parser, common_parser],
                                            help='detect connected components')
  parser_components.add_argument('--verify', action='store_true', help='cross-check against the BFS and spectral oracles')
  parser_components.add_argument('--detector', type=str, default='LRCM', help='(str) detector class name')
  parser_components.add_argument('--detector_path', type=str, default=None, help='(str) path to the detector module')

  subparsers.add_parser('order', parents=[input_parser, common_parser],
                        help='RCM ordering and bandwidth before/after')

  parser_bench = subparsers.add_parser('bench', parents=[common_parser], help='run a benchmark')
  parser_bench.add_argument('--mode', choices=['blocks', 'scale'], required=True)
  parser_bench.add_argument('--n', type=parse_int_list, default=None, help='(int list) node count(s)')
  parser_bench.add_argument('--p', type=parse_int_list, default=None, help='(int list) block count exponents, e.g. 5..13')
  parser_bench.add_argument('--reps', type=int, default=None, help='(int) timed repetitions')
  parser_bench.add_argument('--seed', type=int, default=None, help='(int) random seed')
  parser_bench.add_argument('--sparsity', type=float, default=None, help='(float) nnz(A) / n^2 in scale mode')
  parser_bench.add_argument('--edge-factor', dest='edge_factor', type=float, default=None, help='(float) edges per node inside a block')
  parser_bench.add_argument('--normalize-p', dest='normalize_p', type=int, default=None, help='(int) block count exponent used to normalize')
  parser_bench.add_argument('--fit-against', dest='fit_against', choices=['n', 'work'], default=None)
  parser_bench.add_argument('--summary', type=str, default=None, help='(str) path to the .json summary')

  parser_list = subparsers.add_parser('list', parents=[common_parser], help='list detector hyperparameters')
  parser_list.add_argument('--detector', type=str, default='LRCM', help='(str) detector class name')
  parser_list.add_argument('--detector_path', type=str, default=None, help='(str) path to the detector module')

  args = root_parser.parse_args()
  if args.cmd is None:
    root_parser.print_help()
    sys.exit(constants.EXIT_INPUT_ERROR)
  setup_logging(args.log_level, args.log_dir)

  runner = LRCMCliRunner()
  try:
    if args.cmd in ('components', 'order'):
      input_spec = InputSpec(args.input_file, args.input_format, args.base, args.sanitize)
      if args.cmd == 'components':
        payload = runner.components(input_spec, args.detector, args.detector_path, args.verify)
        write_output(format_components(payload, args.format), args.output)
      else:
        payload = runner.order(input_spec)
        write_output(format_order(payload, args.format), args.output)
    elif args.cmd == 'bench':
      config = bench_config(args)
      if args.mode == 'blocks':
        rows = runner.bench_blocks(config)
        write_block_csv(rows, args.output or sys.stdout)
        if args.summary:
          write_summary_json(args.summary, {"rows": [r.to_row() for r in rows],
                                            "normalized": [r.normalized for r in rows]})
      else:
        points, fit = runner.bench_scale(config)
        write_scaling_csv(points, args.output or sys.stdout)
        if fit is not None:
          stream = sys.stdout if args.output else sys.stderr
          stream.write(f"beta={fit.exponent:.4f} a={fit.coefficient:.6g} residual={fit.residual:.4g}\n")
          if args.summary:
            write_summary_json(args.summary, scaling_summary(points, fit, config.bench.scale.fit_against))
    elif args.cmd == 'list':
      write_output(runner.list_hyperparameters(args.detector, args.detector_path), args.output)
  except (InputError, BenchConfigError) as e:
    logger.error(str(e))
    sys.exit(constants.EXIT_INPUT_ERROR)
  except LRCMError as e:
    logger.error(str(e))
    sys.exit(constants.EXIT_CONTRACT_ERROR)
  sys.exit(constants.EXIT_OK)

if __name__ == "__main__":
  main()
