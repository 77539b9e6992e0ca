#include "bse/bench.hpp"

#include "bse/gen.hpp"
#include "bse/mm_io.hpp"
#include "bse/solvers.hpp"
#include "bse/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

namespace bse::bench {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

void validate(const BenchConfig& cfg, bool needs_kappas) {
  if (cfg.sizes.empty()) throw InvalidSpec("bench config: sizes must be non-empty");
  if (needs_kappas && cfg.kappas.empty()) {
    throw InvalidSpec("bench config: kappas must be non-empty");
  }
  if (cfg.methods.empty()) throw InvalidSpec("bench config: methods must be non-empty");
  if (cfg.repeats < 1) throw InvalidSpec("bench config: repeats must be >= 1");
}

}  // namespace

FlopModel flop_model(Method method) {
  switch (method) {
    case Method::Sqrt: return {method, 86, 3};
    case Method::Chol: return {method, 40, 3};
    case Method::CholSvd: return {method, 74, 3};
    // Hermitian-definite pencil solve on the full 2n problem: 14*(2n)^3.
    case Method::Reference: return {method, 112, 1};
  }
  throw InvalidSpec("unknown method");
}

double flop_estimate(Method method, Index n) {
  if (n < 1) throw InvalidSpec("flop_estimate: n must be >= 1");
  const FlopModel model = flop_model(method);
  if (n > 200000) {  // num * n^3 would overflow int64; exactness is gone anyway
    const double cube = static_cast<double>(n) * n * n;
    return static_cast<double>(model.coeff_num) * cube /
           static_cast<double>(model.coeff_den);
  }
  const std::int64_t cube = static_cast<std::int64_t>(n) * n * n;
  return static_cast<double>(model.coeff_num * cube) / static_cast<double>(model.coeff_den);
}

BseMatrixI load_matrix_pair(const std::string& path_a, const std::string& path_b) {
  const Matrix a = mm::read_complex(path_a);
  const Matrix b = mm::read_complex(path_b);
  return from_blocks(a, b, 1e-10);
}

void save_matrix_pair(const BseMatrixI& h, const std::string& path_a,
                      const std::string& path_b) {
  mm::write_complex(path_a, h.a(), mm::Symmetry::Hermitian);
  mm::write_complex(path_b, h.b(), mm::Symmetry::Hermitian);
}

std::string run_accuracy_experiment(const BenchConfig& cfg) {
  validate(cfg, true);
  const Index n = cfg.sizes.front();
  const double exact_min = std::sqrt(3.0) / 2.0;

  std::ostringstream csv;
  csv << "method,n,kappa,rel_err_min_eig,runtime_s,seed,status\n";
  for (const double kappa : cfg.kappas) {
    std::optional<BseMatrixI> h;
    std::string gen_status;
    try {
      h.emplace(generate_conditioned({n, kappa, cfg.seed}));
    } catch (const Error& e) {
      gen_status = error_kind(e);
    }
    for (const Method method : cfg.methods) {
      csv << method_name(method) << "," << n << "," << fmt(kappa) << ",";
      if (!h) {
        csv << "nan,nan," << cfg.seed << "," << gen_status << "\n";
        continue;
      }
      try {
        const double t0 = now_seconds();
        const SpectralResult r = solve(method, *h);
        const double t1 = now_seconds();
        const double rel_err = std::abs(r.lambda(0) - exact_min) / exact_min;
        csv << fmt(rel_err) << "," << fmt(t1 - t0) << "," << cfg.seed << ",ok\n";
      } catch (const Error& e) {
        csv << "nan,nan," << cfg.seed << "," << error_kind(e) << "\n";
      }
    }
  }
  return csv.str();
}

std::string run_sigma_experiment(const BenchConfig& cfg) {
  validate(cfg, true);
  const Index n = cfg.sizes.front();

  std::ostringstream csv;
  csv << "method,n,kappa,sigma_dev,seed,status\n";
  for (const double kappa : cfg.kappas) {
    std::optional<BseMatrixI> h;
    std::string gen_status;
    try {
      h.emplace(generate_conditioned({n, kappa, cfg.seed}));
    } catch (const Error& e) {
      gen_status = error_kind(e);
    }
    for (const Method method : cfg.methods) {
      csv << method_name(method) << "," << n << "," << fmt(kappa) << ",";
      if (!h) {
        csv << "nan," << cfg.seed << "," << gen_status << "\n";
        continue;
      }
      try {
        const SpectralResult r = solve(method, *h);
        csv << fmt(sigma_orthogonality_error(r.v)) << "," << cfg.seed << ",ok\n";
      } catch (const Error& e) {
        csv << "nan," << cfg.seed << "," << error_kind(e) << "\n";
      }
    }
  }
  return csv.str();
}

std::string run_runtime_experiment(const BenchConfig& cfg) {
  validate(cfg, false);

  std::ostringstream csv;
  csv << "method,n,median_runtime_s,repeats,status\n";
  for (const Index n : cfg.sizes) {
    std::optional<BseMatrixI> h;
    std::string gen_status;
    try {
      h.emplace(generate_random_definite(n, splitmix64_at(cfg.seed, static_cast<std::uint64_t>(n))));
    } catch (const Error& e) {
      gen_status = error_kind(e);
    }
    for (const Method method : cfg.methods) {
      csv << method_name(method) << "," << n << ",";
      if (!h) {
        csv << "nan," << cfg.repeats << "," << gen_status << "\n";
        continue;
      }
      try {
        std::vector<double> times(cfg.repeats);
        for (int rep = 0; rep < cfg.repeats; ++rep) {
          const double t0 = now_seconds();
          const SpectralResult r = solve(method, *h);
          const double t1 = now_seconds();
          (void)r;
          times[rep] = t1 - t0;
        }
        std::sort(times.begin(), times.end());
        const std::size_t mid = times.size() / 2;
        const double median = times.size() % 2 == 1
                                  ? times[mid]
                                  : 0.5 * (times[mid - 1] + times[mid]);
        csv << fmt(median) << "," << cfg.repeats << ",ok\n";
      } catch (const Error& e) {
        csv << "nan," << cfg.repeats << "," << error_kind(e) << "\n";
      }
    }
  }
  return csv.str();
}

BenchConfig preset(const std::string& name) {
  BenchConfig cfg;
  cfg.seed = 1;
  if (name == "table2") {
    cfg.sizes = {200};
    cfg.kappas = {10.0, 1e3, 1e6, 1e9};
    cfg.methods = {Method::Sqrt, Method::Chol, Method::CholSvd, Method::Reference};
    cfg.repeats = 1;
    return cfg;
  }
  if (name == "fig3") {
    cfg.sizes = {200};
    cfg.kappas.clear();
    for (int dec = 0; dec <= 10; ++dec) cfg.kappas.push_back(std::pow(10.0, dec));
    cfg.methods = {Method::Sqrt, Method::Chol, Method::CholSvd, Method::Reference};
    cfg.repeats = 1;
    return cfg;
  }
  if (name == "fig2") {
    cfg.sizes = {10, 50, 100, 200, 500, 1000};
    cfg.methods = {Method::Sqrt, Method::Chol, Method::CholSvd};
    cfg.repeats = 3;
    return cfg;
  }
  throw InvalidSpec("unknown preset '" + name + "' (expected table2, fig3 or fig2)");
}

}  // namespace bse::bench
