// Command-line front end: compute, validate, noise, bounds, bench.
//
// Exit codes: 0 success, 1 validation failure, 2 bad arguments,
// 3 I/O failure, 4 engine failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wigrot/analysis.hpp"
#include "wigrot/coeffs.hpp"
#include "wigrot/fft_engine.hpp"
#include "wigrot/io.hpp"
#include "wigrot/oracle.hpp"
#include "wigrot/recursion.hpp"
#include "wigrot/triangle.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitEngine = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// small parsing helpers

double strict_stod(const std::string& text, const std::string& whole) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size())
      throw UsageError("cannot parse angle '" + whole + "'");
    return v;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("cannot parse angle '" + whole + "'");
  }
}

// Angles accept plain floating-point literals plus the spelled-out
// quarter-turn family used throughout the docs: "pi", "pi/2", "pi/4",
// "3pi/4", "2pi/3", ...  (an optional factor, "pi", an optional divisor).
double parse_angle(const std::string& text) {
  const std::size_t p = text.find("pi");
  double value;
  if (p == std::string::npos) {
    value = strict_stod(text, text);
  } else {
    const std::string head = text.substr(0, p);
    const std::string tail = text.substr(p + 2);
    value = kPi;
    if (!head.empty() && head != "+") {
      if (head == "-") {
        value = -value;
      } else {
        value *= strict_stod(head, text);
      }
    }
    if (!tail.empty()) {
      if (tail[0] != '/') throw UsageError("cannot parse angle '" + text + "'");
      value /= strict_stod(tail.substr(1), text);
    }
  }
  if (!std::isfinite(value))
    throw UsageError("angle '" + text + "' is not finite");
  return value;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_angle_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split_list(text)) out.push_back(parse_angle(item));
  if (out.empty()) throw UsageError("empty angle list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& item : split_list(text)) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("cannot parse integer '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// angle reduction at the tool boundary

struct ReducedAngle {
  double beta = 0.0;       // in [0, pi], what the engines run at
  bool negate_odd = false; // entries with odd m + m' change sign
  bool changed = false;    // the request was outside [0, pi]
  double input = 0.0;
};

ReducedAngle reduce_request_angle(double beta) {
  ReducedAngle r;
  r.input = beta;
  if (beta >= 0.0 && beta <= kPi) {
    r.beta = beta;
    return r;
  }
  const wigrot::BetaReduction b = wigrot::reduce_beta(beta);
  r.beta = b.beta;
  r.negate_odd = b.negate_odd;
  r.changed = true;
  return r;
}

// The parity flip (-1)^{m'+m} commutes with every storage symmetry, so it
// can be applied to the stored wedge in place.
void apply_parity_flip(wigrot::CoeffTriangle& t) {
  const int n = t.degree();
  for (int mp = -n; mp <= n; ++mp)
    for (int m = std::abs(mp); m <= n; ++m)
      if ((mp + m) & 1) t.at(mp, m) = -t.at(mp, m);
}

// ---------------------------------------------------------------------------
// compute

struct ComputeOptions {
  int n = 0;
  int p = 0;
  bool has_n = false;
  bool has_p = false;
  std::string degrees_list;
  std::string beta_text = "0";
  std::string algo = "recursive";
  std::string format = "csv";
  std::string out_path;
  bool dense = false;
  bool d_matrix = false;
};

wigrot::CoeffTriangle compute_one(const std::string& algo, int n, double beta) {
  if (algo == "recursive") return wigrot::compute_subspace(n, beta);
  if (algo == "fft-basic") return wigrot::compute_subspace_fft_basic(n, beta);
  if (algo == "fft-modified") return wigrot::compute_subspace_fft_modified(n, beta);
  throw UsageError("unknown algorithm '" + algo + "'");
}

int run_compute(const ComputeOptions& opt) {
  // exactly one degree selector
  const int selectors = (opt.has_n ? 1 : 0) + (opt.has_p ? 1 : 0) +
                        (opt.degrees_list.empty() ? 0 : 1);
  if (selectors != 1)
    throw UsageError("pass exactly one of --n, --p, --degrees");
  if (opt.d_matrix && opt.format != "csv")
    throw UsageError("--d-matrix output is defined for --format csv only");

  std::vector<int> degrees;
  if (opt.has_n) {
    if (opt.n < 0) throw UsageError("--n must be nonnegative");
    degrees.push_back(opt.n);
  } else if (opt.has_p) {
    if (opt.p <= 0) throw UsageError("--p must be positive");
    for (int n = 0; n < opt.p; ++n) degrees.push_back(n);
  } else {
    degrees = parse_int_list(opt.degrees_list);
    for (int n : degrees)
      if (n < 0) throw UsageError("degrees must be nonnegative");
  }

  const ReducedAngle angle = reduce_request_angle(parse_angle(opt.beta_text));

  std::vector<wigrot::CoeffTriangle> tables;
  tables.reserve(degrees.size());
  for (int n : degrees) {
    wigrot::CoeffTriangle t = compute_one(opt.algo, n, angle.beta);
    if (angle.negate_odd) apply_parity_flip(t);
    tables.push_back(std::move(t));
  }

  std::ostringstream body;
  if (opt.format == "csv") {
    if (opt.d_matrix) {
      std::vector<wigrot::io::CsvRow> rows;
      for (const wigrot::CoeffTriangle& t : tables) {
        const int n = t.degree();
        if (opt.dense) {
          for (int mp = -n; mp <= n; ++mp)
            for (int m = -n; m <= n; ++m)
              rows.push_back({n, mp, m,
                              wigrot::wigner_d_from_h(mp, m, t.get(mp, m))});
        } else {
          for (int m = 0; m <= n; ++m)
            for (int mp = -m; mp <= m; ++mp)
              rows.push_back({n, mp, m,
                              wigrot::wigner_d_from_h(mp, m, t.get(mp, m))});
        }
      }
      wigrot::io::write_csv_rows(body, rows);
    } else {
      wigrot::io::write_csv(body, tables, opt.dense);
    }
  } else if (opt.format == "json") {
    wigrot::io::TableMetadata md;
    md.algo = opt.algo;
    md.beta = angle.beta;
    if (angle.changed) {
      md.has_input_beta = true;
      md.beta_input = angle.input;
    }
    wigrot::io::write_json(body, tables, md, opt.dense);
  } else if (opt.format == "bin") {
    wigrot::io::write_binary(body, tables, opt.dense);
  } else {
    throw UsageError("unknown format '" + opt.format + "'");
  }

  if (opt.out_path.empty()) {
    std::cout << body.str();
    if (!std::cout) {
      std::cerr << "wigrot: write to stdout failed\n";
      return kExitIo;
    }
  } else {
    std::ofstream f(opt.out_path, std::ios::binary);
    if (!f) {
      std::cerr << "wigrot: cannot open '" << opt.out_path << "'\n";
      return kExitIo;
    }
    f << body.str();
    f.flush();
    if (!f) {
      std::cerr << "wigrot: write to '" << opt.out_path << "' failed\n";
      return kExitIo;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// validate

struct ValidateOptions {
  int n_max = 64;
  std::string beta_list = "0,pi/4,pi/2,3pi/4,pi";
  std::string checks = "unitarity,symmetry,oracle,flip,cross,bounds";
};

std::vector<int> degree_grid(int n_max) {
  std::vector<int> grid;
  for (int n = 0; n <= std::min(8, n_max); ++n) grid.push_back(n);
  for (int n = 12; n <= n_max; n = (n * 3) / 2)
    grid.push_back(n);
  if (!grid.empty() && grid.back() != n_max && n_max > 8) grid.push_back(n_max);
  return grid;
}

double unitarity_threshold(int n) {
  if (n <= 64) return 1e-12;
  if (n <= 1024) return 1e-10;
  return 1e-9;
}

int run_validate(const ValidateOptions& opt) {
  if (opt.n_max < 0) throw UsageError("--n-max must be nonnegative");
  const std::vector<double> betas = parse_angle_list(opt.beta_list);
  const std::vector<std::string> checks = split_list(opt.checks);
  if (checks.empty()) throw UsageError("empty check list");
  for (const std::string& c : checks)
    if (c != "unitarity" && c != "symmetry" && c != "oracle" && c != "flip" &&
        c != "cross" && c != "bounds")
      throw UsageError("unknown check '" + c + "'");

  const std::vector<int> grid = degree_grid(opt.n_max);
  bool all_ok = true;
  auto report = [&all_ok](const std::string& check, double beta, int n,
                          double measured, double threshold) {
    const bool ok = measured <= threshold;
    all_ok = all_ok && ok;
    std::printf("%-9s beta=%-10.6g n=%-5d measured=%-12.3e limit=%-8.1e %s\n",
                check.c_str(), beta, n, measured, threshold,
                ok ? "PASS" : "FAIL");
  };

  for (const std::string& check : checks) {
    for (double beta_raw : betas) {
      const ReducedAngle angle = reduce_request_angle(beta_raw);
      const double beta = angle.beta;

      if (check == "unitarity") {
        for (int n : grid) {
          const wigrot::CoeffTriangle t = wigrot::compute_subspace(n, beta);
          report(check, beta, n, wigrot::unitarity_error(t),
                 unitarity_threshold(n));
        }
      } else if (check == "symmetry") {
        // supplementary-angle identity relating independent subspaces
        for (int n : grid) {
          const wigrot::CoeffTriangle a = wigrot::compute_subspace(n, beta);
          const wigrot::CoeffTriangle b =
              wigrot::compute_subspace(n, kPi - beta);
          double worst = 0.0;
          const int step = std::max(1, n / 16);
          for (int m = 0; m <= n; m += step)
            for (int mp = -m; mp <= m; mp += step) {
              const double sgn = ((n - m + mp) % 2 == 0) ? 1.0 : -1.0;
              worst = std::max(worst,
                               std::abs(b.get(mp, m) - sgn * a.get(-mp, m)));
            }
          report(check, beta, n, worst, 1e-10);
        }
        // the identity pattern at beta = 0 (checked once per degree)
        if (beta == betas.front()) {
          for (int n : grid) {
            const wigrot::CoeffTriangle t = wigrot::compute_subspace(n, 0.0);
            double worst = 0.0;
            for (int mp = -n; mp <= n; ++mp)
              for (int m = -n; m <= n; ++m) {
                const double want = (mp == m) ? ((mp & 1) ? -1.0 : 1.0) : 0.0;
                worst = std::max(worst, std::abs(t.get(mp, m) - want));
              }
            report("identity", 0.0, n, worst, 1e-13);
          }
        }
      } else if (check == "oracle") {
        for (int n : grid) {
          if (!wigrot::h_direct_reliable(n)) continue;
          const wigrot::CoeffTriangle t = wigrot::compute_subspace(n, beta);
          double worst = 0.0;
          for (int m = 0; m <= n; ++m)
            for (int mp = -m; mp <= m; ++mp)
              worst = std::max(worst, std::abs(t.get(mp, m) -
                                               wigrot::h_direct(n, mp, m, beta)));
          report(check, beta, n, worst, 1e-12);
        }
      } else if (check == "flip") {
        for (int n : grid) {
          const wigrot::CoeffTriangle src =
              wigrot::compute_subspace(n, kPi / 2);
          const wigrot::CoeffTriangle dst = wigrot::flip_reconstruct(src, beta);
          const wigrot::CoeffTriangle ref = wigrot::compute_subspace(n, beta);
          report(check, beta, n, wigrot::cross_error(dst, ref), 1e-10);
        }
      } else if (check == "cross") {
        for (int n : grid) {
          const wigrot::CoeffTriangle rec = wigrot::compute_subspace(n, beta);
          const wigrot::CoeffTriangle fb =
              wigrot::compute_subspace_fft_basic(n, beta);
          const wigrot::CoeffTriangle fm =
              wigrot::compute_subspace_fft_modified(n, beta);
          report("cross-b", beta, n, wigrot::cross_error(rec, fb), 1e-7);
          report("cross-m", beta, n, wigrot::cross_error(rec, fm), 1e-7);
        }
      } else if (check == "bounds") {
        for (int n : grid) {
          const wigrot::CoeffTriangle t = wigrot::compute_subspace(n, beta);
          double excess = 0.0;
          for (int m = 0; m <= n; ++m)
            for (int mp = -m; mp <= m; ++mp)
              excess = std::max(excess,
                                std::abs(t.get(mp, m)) -
                                    wigrot::magnitude_bound(n, mp, m, beta));
          report(check, beta, n, excess, 1e-12);
        }
      }
    }
  }
  std::printf("validate: %s\n", all_ok ? "ALL PASS" : "FAILURES PRESENT");
  return all_ok ? 0 : kExitValidation;
}

// ---------------------------------------------------------------------------
// noise

struct NoiseOptions {
  std::string n_list = "4,8,16,32,64";
  std::string model = "uniform";
  int trials = 10;
  std::uint64_t seed = 0;
  bool dump_grid = false;
};

int run_noise(const NoiseOptions& opt) {
  wigrot::NoiseModel model;
  if (opt.model == "uniform") {
    model.kind = wigrot::NoiseModel::Kind::uniform;
  } else if (opt.model == "coherent") {
    model.kind = wigrot::NoiseModel::Kind::coherent;
  } else {
    throw UsageError("unknown noise model '" + opt.model + "'");
  }
  model.seed = opt.seed;
  model.trials = opt.trials;

  const std::vector<int> degrees = parse_int_list(opt.n_list);
  std::vector<std::pair<double, double>> points;
  for (int n : degrees) {
    const double amp = wigrot::noise_amplification(n, model);
    points.emplace_back(n, amp);
    std::printf("n=%-6d model=%s trials=%d seed=%llu amplification=%s\n", n,
                opt.model.c_str(), model.trials,
                static_cast<unsigned long long>(model.seed),
                format_value(amp).c_str());
    if (opt.dump_grid) {
      const wigrot::CoeffTriangle r = wigrot::noise_realization(n, model, 0);
      std::ostringstream os;
      wigrot::io::write_csv(os, {r}, false);
      std::fputs(os.str().c_str(), stdout);
    }
  }
  if (points.size() >= 2) {
    std::printf("exponent=%s\n",
                format_value(wigrot::fit_power_law(points)).c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsOptions {
  int n = 64;
  std::string beta_text = "pi/4";
  int grid = 41;
};

const char* region_name(wigrot::EllipseRegion r) {
  switch (r) {
    case wigrot::EllipseRegion::inside: return "inside";
    case wigrot::EllipseRegion::boundary: return "boundary";
    default: return "outside";
  }
}

int run_bounds(const BoundsOptions& opt) {
  if (opt.n < 1) throw UsageError("--n must be positive");
  if (opt.grid < 3 || opt.grid % 2 == 0)
    throw UsageError("--grid must be an odd count >= 3 (so the center is a node)");
  const ReducedAngle angle = reduce_request_angle(parse_angle(opt.beta_text));
  const double beta = angle.beta;

  wigrot::CoeffTriangle t = wigrot::compute_subspace(opt.n, beta);
  if (angle.negate_odd) apply_parity_flip(t);

  std::ostringstream body;
  body << "mu_prime,mu,log10_h,lambda,region\n";
  for (int i = 0; i < opt.grid; ++i) {
    const double mu_prime = -1.0 + 2.0 * i / (opt.grid - 1);
    const int mp = static_cast<int>(std::lround(mu_prime * opt.n));
    for (int j = 0; j < opt.grid; ++j) {
      const double mu = -1.0 + 2.0 * j / (opt.grid - 1);
      const int m = static_cast<int>(std::lround(mu * opt.n));
      const double h = t.get(mp, m);
      const double lg = std::log10(std::abs(h));
      const double lam = wigrot::lambda_exponent(mu, mu_prime, beta);
      body << format_value(mu_prime) << ',' << format_value(mu) << ','
           << format_value(lg) << ',' << format_value(lam) << ','
           << region_name(wigrot::ellipse_contains(mu, mu_prime, beta)) << '\n';
    }
  }
  std::fputs(body.str().c_str(), stdout);
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  std::string n_list = "64,128,256";
  std::string algos = "recursive,fft-basic,fft-modified";
  int repeat = 3;
};

int run_bench(const BenchOptions& opt) {
  const std::vector<int> degrees = parse_int_list(opt.n_list);
  const std::vector<std::string> algos = split_list(opt.algos);
  if (algos.empty()) throw UsageError("empty algorithm list");

  struct Series {
    std::string algo;
    std::vector<wigrot::ExperimentRecord> recs;
  };
  std::vector<Series> series;
  for (const std::string& algo : algos) {
    wigrot::EngineKind kind;
    if (algo == "recursive") kind = wigrot::EngineKind::recursion;
    else if (algo == "fft-basic") kind = wigrot::EngineKind::fft_basic;
    else if (algo == "fft-modified") kind = wigrot::EngineKind::fft_modified;
    else throw UsageError("unknown algorithm '" + algo + "'");
    series.push_back({algo, wigrot::benchmark(kind, degrees, kPi / 3, opt.repeat)});
  }

  std::printf("algo,n,median_seconds\n");
  for (const Series& s : series)
    for (const wigrot::ExperimentRecord& r : s.recs)
      std::printf("%s,%d,%s\n", s.algo.c_str(), r.n,
                  format_value(r.wall_seconds).c_str());
  // pairwise ratios at the shared degrees
  for (std::size_t a = 0; a < series.size(); ++a)
    for (std::size_t b = a + 1; b < series.size(); ++b)
      for (std::size_t k = 0; k < degrees.size(); ++k) {
        const double ra = series[a].recs[k].wall_seconds;
        const double rb = series[b].recs[k].wall_seconds;
        if (rb > 0.0)
          std::printf("ratio %s/%s n=%d %.3f\n", series[a].algo.c_str(),
                      series[b].algo.c_str(), degrees[k], ra / rb);
      }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotation-coefficient tables for spherical harmonic expansions"};
  app.require_subcommand(1);

  ComputeOptions copt;
  CLI::App* compute = app.add_subcommand(
      "compute", "Compute coefficient subspaces and write them out");
  CLI::Option* opt_n = compute->add_option("--n", copt.n, "single degree n");
  CLI::Option* opt_p = compute->add_option("--p", copt.p, "all degrees 0..p-1");
  compute->add_option("--degrees", copt.degrees_list,
                      "comma-separated list of degrees");
  compute->add_option("--beta", copt.beta_text,
                      "rotation angle (accepts forms like 0.7, pi/4, 3pi/4)");
  compute->add_option("--algo", copt.algo,
                      "recursive | fft-basic | fft-modified");
  compute->add_option("--format", copt.format, "csv | json | bin");
  compute->add_option("--out", copt.out_path, "output file (default stdout)");
  compute->add_flag("--dense", copt.dense,
                    "emit the full (2n+1)^2 matrix instead of the stored wedge");
  compute->add_flag("--d-matrix", copt.d_matrix,
                    "emit Wigner d entries instead of raw coefficients (csv)");

  ValidateOptions vopt;
  CLI::App* validate = app.add_subcommand(
      "validate", "Run invariant checks and report PASS/FAIL per case");
  validate->add_option("--n-max", vopt.n_max, "largest degree to test");
  validate->add_option("--beta-list", vopt.beta_list,
                       "comma-separated angles (default 0,pi/4,pi/2,3pi/4,pi)");
  validate->add_option("--checks", vopt.checks,
                       "subset of unitarity,symmetry,oracle,flip,cross,bounds");

  NoiseOptions nopt;
  CLI::App* noise = app.add_subcommand(
      "noise", "Measure seed-noise amplification through the sweeps");
  noise->add_option("--n-list", nopt.n_list, "degrees to test");
  noise->add_option("--model", nopt.model, "uniform | coherent");
  noise->add_option("--trials", nopt.trials, "trials per degree");
  noise->add_option("--seed", nopt.seed, "RNG seed");
  noise->add_flag("--dump-grid", nopt.dump_grid,
                  "also dump the trial-0 propagated field per degree");

  BoundsOptions bopt;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Tabulate decay diagnostics over the order lattice");
  bounds->add_option("--n", bopt.n, "degree");
  bounds->add_option("--beta", bopt.beta_text, "rotation angle");
  bounds->add_option("--grid", bopt.grid, "odd lattice size per axis");

  BenchOptions xopt;
  CLI::App* bench = app.add_subcommand(
      "bench", "Time the engines and print medians plus pairwise ratios");
  bench->add_option("--n-list", xopt.n_list, "degrees to time");
  bench->add_option("--algos", xopt.algos, "engines to time");
  bench->add_option("--repeat", xopt.repeat, "repetitions per point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  copt.has_n = opt_n->count() > 0;
  copt.has_p = opt_p->count() > 0;

  try {
    if (*compute) return run_compute(copt);
    if (*validate) return run_validate(vopt);
    if (*noise) return run_noise(nopt);
    if (*bounds) return run_bounds(bopt);
    if (*bench) return run_bench(xopt);
  } catch (const UsageError& e) {
    std::cerr << "wigrot: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "wigrot: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "wigrot: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "wigrot: " << e.what() << "\n";
    return kExitEngine;
  }
  return 0;
}
