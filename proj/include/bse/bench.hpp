#pragma once

// Benchmark harness: flop model, matrix-pair file I/O, and the three
// experiment drivers (accuracy sweep, Sigma-orthogonality sweep, runtime
// sweep). Experiments emit CSV text with a fixed, documented schema;
// floating-point cells use 17 significant digits.

#include "bse/types.hpp"

#include <string>
#include <vector>

namespace bse::bench {

struct BenchConfig {
  std::vector<Index> sizes;
  std::vector<double> kappas;
  std::vector<Method> methods;
  int repeats = 1;
  std::uint64_t seed = 0;
  std::string output_path;  // empty: caller decides where the CSV goes
};

/// Exact rational flop coefficient (multiplier of n^3) per method.
struct FlopModel {
  Method method;
  std::int64_t coeff_num;
  std::int64_t coeff_den;
};

FlopModel flop_model(Method method);

/// coefficient * n^3, lower-order terms neglected. Exact totals:
/// 86/3 (Sqrt), 40/3 (Chol), 74/3 (CholSvd).
double flop_estimate(Method method, Index n);

/// Reads two Matrix Market files and validates them as a form-I pair
/// (Hermitian tolerance 1e-10, matching shapes).
BseMatrixI load_matrix_pair(const std::string& path_a, const std::string& path_b);

/// Writes the blocks as `array complex hermitian` files; bit-exact on reload.
void save_matrix_pair(const BseMatrixI& h, const std::string& path_a,
                      const std::string& path_b);

/// Relative error of the smallest computed eigenvalue on the conditioned
/// family, per (kappa, method) cell; sizes uses the first entry.
/// Columns: method,n,kappa,rel_err_min_eig,runtime_s,seed,status
std::string run_accuracy_experiment(const BenchConfig& cfg);

/// Sigma-orthogonality deviation of the computed eigenvector matrix, per
/// (kappa, method) cell on the conditioned family.
/// Columns: method,n,kappa,sigma_dev,seed,status
std::string run_sigma_experiment(const BenchConfig& cfg);

/// Median wall time over cfg.repeats solver calls on a random definite
/// instance per size. Timing wraps the solver call only.
/// Columns: method,n,median_runtime_s,repeats,status
std::string run_runtime_experiment(const BenchConfig& cfg);

/// Pinned experiment configurations: "table2", "fig3", "fig2".
BenchConfig preset(const std::string& name);

}  // namespace bse::bench
