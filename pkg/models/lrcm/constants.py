EDGE_LIST = "edgelist"
MATRIX_MARKET = "mtx"
AUTO = "auto"

OUTPUT_JSON = "json"
OUTPUT_TEXT = "text"

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_CONTRACT_ERROR = 3

ZERO_TOLERANCE = 1e-8
JACOBI_TOLERANCE = 1e-12
JACOBI_MAX_SWEEPS = 60
SPECTRAL_MAX_DIM = 256
BRUTEFORCE_MAX_DIM = 20

BLOCK_CSV_COLUMNS = ["p", "k", "n", "m", "qmax", "t_laplacian_ms", "t_rcm_ms",
                     "t_permute_ms", "t_sumfind_ms", "t_total_ms"]
SCALING_CSV_COLUMNS = ["n", "m", "sparsity", "reps", "t_total_ms"]
