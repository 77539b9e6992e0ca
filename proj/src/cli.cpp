#include "bse/cli.hpp"

#include "bse/bench.hpp"
#include "bse/gen.hpp"
#include "bse/mm_io.hpp"
#include "bse/solvers.hpp"
#include "bse/types.hpp"
#include "bse/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace bse::cli {

namespace {

int exit_code_for(const Error& e) {
  if (dynamic_cast<const DimensionMismatch*>(&e)) return 3;
  if (dynamic_cast<const NotHermitian*>(&e)) return 4;
  if (dynamic_cast<const NotDefinite*>(&e)) return 5;
  if (dynamic_cast<const NotPositiveDefinite*>(&e)) return 6;
  if (dynamic_cast<const ConvergenceFailure*>(&e)) return 7;
  if (dynamic_cast<const SingularFactor*>(&e)) return 8;
  if (dynamic_cast<const NonPositiveScale*>(&e)) return 9;
  if (dynamic_cast<const OddDimension*>(&e)) return 10;
  if (dynamic_cast<const LengthMismatch*>(&e)) return 11;
  if (dynamic_cast<const InvalidSpec*>(&e)) return 12;
  if (dynamic_cast<const ParseError*>(&e)) return 13;
  if (dynamic_cast<const IoError*>(&e)) return 14;
  return 1;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

constexpr const char* kFooter = R"(File formats:
  Matrices are Matrix Market files (dense `array` or sparse `coordinate`,
  real or complex, general/symmetric/hermitian). Values are written with 17
  significant digits, so save -> load round trips are bit-exact.

Exit codes:
  0 success                  7 ConvergenceFailure
  2 usage error              8 SingularFactor
  3 DimensionMismatch        9 NonPositiveScale
  4 NotHermitian            10 OddDimension
  5 NotDefinite             11 LengthMismatch
  6 NotPositiveDefinite     12 InvalidSpec
                            13 ParseError
                            14 IoError
On failure a machine-readable line `error: <Kind>: <detail>` is printed to
standard error.)";

struct GenerateArgs {
  Index n = 0;
  double kappa = 0.0;
  std::uint64_t seed = 0;
  bool random_definite = false;
  double shift_margin = 1.0;
  std::string path_a;
  std::string path_b;
};

struct SolveArgs {
  std::string method;
  std::string path_a;
  std::string path_b;
  bool negative = false;
  std::string out_values = "eigenvalues.mtx";
  std::string out_vectors = "eigenvectors.mtx";
};

struct VerifyArgs {
  std::string path_a;
  std::string path_b;
  std::string values;
  std::string vectors;
  double tol = 1e-12;
};

struct BenchArgs {
  std::string preset;
  std::string experiment;
  std::vector<Index> sizes;
  std::vector<double> kappas;
  std::vector<std::string> methods;
  int repeats = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out;
  std::string config;
};

int do_generate(const GenerateArgs& args) {
  BseMatrixI h = args.random_definite
                     ? generate_random_definite(args.n, args.seed, args.shift_margin)
                     : generate_conditioned({args.n, args.kappa, args.seed});
  bench::save_matrix_pair(h, args.path_a, args.path_b);
  std::cout << "wrote " << args.path_a << " and " << args.path_b << " (n = " << h.n()
            << ")\n";
  return 0;
}

int do_solve(const SolveArgs& args) {
  const BseMatrixI h = bench::load_matrix_pair(args.path_a, args.path_b);
  const Method method = method_from_name(args.method);
  const SpectralResult r = solve(method, h);

  RealVector values = r.lambda;
  Matrix vectors = r.v;
  if (args.negative) {
    const SpectralResult neg = negative_spectrum(h, r);
    values.conservativeResize(2 * r.lambda.size());
    values.tail(r.lambda.size()) = neg.lambda;
    vectors.conservativeResize(Eigen::NoChange, 2 * r.v.cols());
    vectors.rightCols(r.v.cols()) = neg.v;
  }
  mm::write_real(args.out_values, values);
  mm::write_complex(args.out_vectors, vectors);

  std::cout << "method: " << method_name(method) << "\n";
  std::cout << "n: " << h.n() << "\n";
  std::cout << "eigenvalues (ascending):";
  const Index shown = std::min<Index>(r.lambda.size(), 8);
  for (Index i = 0; i < shown; ++i) std::cout << " " << fmt(r.lambda(i));
  if (shown < r.lambda.size()) std::cout << " ...";
  std::cout << "\n";

  const SpectralResult full{values, vectors, method, {}};
  std::cout << "max residual: " << fmt(residual(h, full).maxCoeff()) << "\n";
  std::cout << "sigma_dev: " << fmt(sigma_orthogonality_error(r.v)) << "\n";
  if (!r.near_singular.empty()) {
    std::cout << "near-singular eigenvalues clamped: " << r.near_singular.size() << "\n";
  }
  std::cout << "wrote " << args.out_values << " and " << args.out_vectors << "\n";
  return 0;
}

int do_verify(const VerifyArgs& args) {
  const BseMatrixI h = bench::load_matrix_pair(args.path_a, args.path_b);
  const Matrix full = realize_full(h);
  std::cout << "check_form1: " << (check_form1(full, args.tol) ? "pass" : "fail") << "\n";
  std::cout << "check_form2: " << (check_form2(full, args.tol) ? "pass" : "fail") << "\n";

  if (!args.values.empty() && !args.vectors.empty()) {
    const RealMatrix values = mm::read_real(args.values);
    const Matrix vectors = mm::read_complex(args.vectors);
    SpectralResult r;
    r.lambda = values.col(0);
    r.v = vectors;
    const RealVector res = residual(h, r);
    std::cout << "columns: " << vectors.cols() << "\n";
    std::cout << "max residual: " << fmt(res.maxCoeff()) << "\n";
    std::cout << "sigma_dev: " << fmt(sigma_orthogonality_error(vectors)) << "\n";
  }
  return 0;
}

int do_bench(const BenchArgs& args) {
  bench::BenchConfig cfg;
  std::string experiment = args.experiment;
  if (!args.preset.empty()) {
    cfg = bench::preset(args.preset);
    if (experiment.empty()) {
      experiment = args.preset == "table2"  ? "accuracy"
                   : args.preset == "fig3"  ? "sigma"
                                            : "runtime";
    }
  }
  if (!args.config.empty()) {
    std::ifstream in(args.config);
    if (!in) throw IoError("cannot open config file " + args.config);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(args.config + ": " + e.what(), 0);
    }
    if (j.contains("experiment")) experiment = j["experiment"].get<std::string>();
    if (j.contains("sizes")) cfg.sizes = j["sizes"].get<std::vector<Index>>();
    if (j.contains("kappas")) cfg.kappas = j["kappas"].get<std::vector<double>>();
    if (j.contains("methods")) {
      cfg.methods.clear();
      for (const auto& name : j["methods"]) {
        cfg.methods.push_back(method_from_name(name.get<std::string>()));
      }
    }
    if (j.contains("repeats")) cfg.repeats = j["repeats"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) cfg.output_path = j["out"].get<std::string>();
  }
  if (!args.sizes.empty()) cfg.sizes = args.sizes;
  if (!args.kappas.empty()) cfg.kappas = args.kappas;
  if (!args.methods.empty()) {
    cfg.methods.clear();
    for (const auto& name : args.methods) cfg.methods.push_back(method_from_name(name));
  }
  if (args.repeats > 0) cfg.repeats = args.repeats;
  if (args.seed_given) cfg.seed = args.seed;
  if (!args.out.empty()) cfg.output_path = args.out;

  std::string csv;
  if (experiment == "accuracy") {
    csv = bench::run_accuracy_experiment(cfg);
  } else if (experiment == "sigma") {
    csv = bench::run_sigma_experiment(cfg);
  } else if (experiment == "runtime") {
    csv = bench::run_runtime_experiment(cfg);
  } else if (experiment.empty()) {
    throw InvalidSpec("bench: the config file names no experiment");
  } else {
    throw InvalidSpec("unknown experiment '" + experiment + "'");
  }

  if (cfg.output_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(cfg.output_path);
    if (!out) throw IoError("cannot open " + cfg.output_path + " for writing");
    out << csv;
    std::cout << "wrote " << cfg.output_path << "\n";
  }
  return 0;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Dense structured eigensolvers and benchmarks for BSE matrices of form I"};
  app.footer(kFooter);
  app.require_subcommand(1);

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand(
      "generate", "Generate a synthetic matrix pair and write it as Matrix Market files");
  gen_cmd->add_option("--n", gen_args.n, "Half dimension")->required();
  gen_cmd->add_option("--kappa", gen_args.kappa,
                      "Target condition number of the conditioned family (>= 3)");
  gen_cmd->add_option("--seed", gen_args.seed, "RNG seed")->envname("BSE_SEED");
  gen_cmd->add_flag("--random-definite", gen_args.random_definite,
                    "Random definite family instead of the conditioned one");
  gen_cmd->add_option("--shift-margin", gen_args.shift_margin,
                      "Definiteness margin of the random family");
  gen_cmd->add_option("--a", gen_args.path_a, "Output path for block A")->required();
  gen_cmd->add_option("--b", gen_args.path_b, "Output path for block B")->required();

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve for the positive spectrum");
  solve_cmd
      ->add_option("--method", solve_args.method,
                   "One of sqrt, chol, chol-svd, reference")
      ->required()
      ->check(CLI::IsMember({"sqrt", "chol", "chol-svd", "reference"}));
  solve_cmd->add_option("--a", solve_args.path_a, "Block A file")->required();
  solve_cmd->add_option("--b", solve_args.path_b, "Block B file")->required();
  solve_cmd->add_flag("--negative", solve_args.negative,
                      "Also emit the mirrored negative spectrum");
  solve_cmd->add_option("--out-values", solve_args.out_values, "Eigenvalue output file");
  solve_cmd->add_option("--out-vectors", solve_args.out_vectors,
                        "Eigenvector output file");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand(
      "verify", "Run structure predicates and diagnostics on matrix/result files");
  verify_cmd->add_option("--a", verify_args.path_a, "Block A file")->required();
  verify_cmd->add_option("--b", verify_args.path_b, "Block B file")->required();
  verify_cmd->add_option("--values", verify_args.values, "Eigenvalue file to check");
  verify_cmd->add_option("--vectors", verify_args.vectors, "Eigenvector file to check");
  verify_cmd->add_option("--tol", verify_args.tol, "Relative predicate tolerance");

  BenchArgs bench_args;
  auto* bench_cmd =
      app.add_subcommand("bench", "Run an experiment sweep and emit CSV");
  bench_cmd->add_option("--preset", bench_args.preset, "table2, fig3 or fig2")
      ->check(CLI::IsMember({"table2", "fig3", "fig2"}));
  bench_cmd
      ->add_option("--experiment", bench_args.experiment,
                   "accuracy, sigma or runtime (inferred from --preset)")
      ->check(CLI::IsMember({"accuracy", "sigma", "runtime"}));
  bench_cmd->add_option("--sizes", bench_args.sizes, "Half dimensions");
  bench_cmd->add_option("--kappas", bench_args.kappas, "Condition numbers");
  bench_cmd->add_option("--methods", bench_args.methods, "Solver subset")
      ->check(CLI::IsMember({"sqrt", "chol", "chol-svd", "reference"}));
  bench_cmd->add_option("--repeats", bench_args.repeats, "Timed repeats per cell");
  auto* seed_opt =
      bench_cmd->add_option("--seed", bench_args.seed, "RNG seed")->envname("BSE_SEED");
  bench_cmd->add_option("--out", bench_args.out, "CSV output path (default: stdout)");
  bench_cmd->add_option("--config", bench_args.config, "JSON config file");

  gen_cmd->callback([&] {
    if (!gen_args.random_definite && gen_cmd->count("--kappa") == 0) {
      throw CLI::RequiredError("--kappa (unless --random-definite)");
    }
  });
  bench_cmd->callback([&] {
    if (bench_args.preset.empty() && bench_args.experiment.empty() &&
        bench_args.config.empty()) {
      throw CLI::RequiredError("--preset, --experiment or --config");
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen_cmd->parsed()) return do_generate(gen_args);
    if (solve_cmd->parsed()) return do_solve(solve_args);
    if (verify_cmd->parsed()) return do_verify(verify_args);
    if (bench_cmd->parsed()) {
      // count() also reflects a value picked up from BSE_SEED
      bench_args.seed_given = seed_opt->count() > 0;
      return do_bench(bench_args);
    }
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << error_kind(e) << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bse::cli
