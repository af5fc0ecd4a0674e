#include "svpqa/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "svpqa/symmetry.hpp"

namespace svpqa {

namespace {
[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCategory::experiments, what); }
}  // namespace

bool ExperimentConfig::operator==(const ExperimentConfig& other) const {
  const bool same_gram = gram.has_value() == other.gram.has_value() &&
                         (!gram || (gram->rows() == other.gram->rows() && gram->cols() == other.gram->cols() &&
                                    *gram == *other.gram));
  return modes == other.modes && b1 == other.b1 && b2 == other.b2 && theta == other.theta && same_gram &&
         k == other.k && bx_ratio == other.bx_ratio && bx1 == other.bx1 && bx_lo == other.bx_lo &&
         bx_hi == other.bx_hi && T == other.T && T_grid == other.T_grid && gs_T_grid == other.gs_T_grid &&
         theta_grid == other.theta_grid && steps == other.steps && n_points == other.n_points &&
         levels == other.levels && out == other.out;
}

GramMatrix ExperimentConfig::gram_matrix() const {
  if (gram) return GramMatrix(*gram);
  if (!b1 || !b2 || !theta) fail("lattice needs either gram or all of b1, b2, theta");
  return gram_from_basis(LatticeBasis::polar(*b1, *b2, *theta));
}

GramMatrix ExperimentConfig::gram_at(Real angle) const {
  if (!b1 || !b2) fail("angle sweeps need a polar lattice (b1 and b2)");
  return gram_from_basis(LatticeBasis::polar(*b1, *b2, angle));
}

std::vector<Real> default_theta_grid() {
  std::vector<Real> grid(25);
  for (int i = 0; i < 25; ++i) grid[i] = M_PI / 18 + i * (16.0 * M_PI / 18) / 24;
  return grid;
}

std::vector<Real> ExperimentConfig::thetas() const { return theta_grid.empty() ? default_theta_grid() : theta_grid; }

int worker_count() {
  if (const char* env = std::getenv("SVPQA_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

OptimizeResult optimize_bx1(const std::function<Real(Real)>& failure_at, Real lo, Real hi) {
  if (!(lo > 0.0) || !(hi > lo)) fail("bx1 search range needs 0 < lo < hi");
  const int intervals = std::max(1, static_cast<int>(std::lround((hi - lo) / kBxGridStep)));
  std::vector<Real> grid(intervals + 1);
  for (int i = 0; i <= intervals; ++i) grid[i] = (i == intervals) ? hi : lo + i * (hi - lo) / intervals;

  std::vector<Real> values(grid.size());
  parallel_for(static_cast<int>(grid.size()), [&](int i) { values[i] = failure_at(grid[i]); });
  const auto best_it = std::min_element(values.begin(), values.end());
  const std::size_t best = static_cast<std::size_t>(best_it - values.begin());
  OptimizeResult result{grid[best], values[best]};

  // Golden-section search over the two grid cells around the best point.
  Real a = grid[best == 0 ? 0 : best - 1];
  Real b = grid[best + 1 == grid.size() ? best : best + 1];
  const Real inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  Real c = b - inv_phi * (b - a);
  Real d = a + inv_phi * (b - a);
  Real fc = failure_at(c);
  Real fd = failure_at(d);
  while (b - a >= kBxTolerance) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = failure_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = failure_at(d);
    }
  }
  const Real x = fc < fd ? c : d;
  const Real fx = std::min(fc, fd);
  if (fx < result.failure) result = {x, fx};
  return result;
}

std::function<Real(Real)> anneal_objective(Mode mode, const GramMatrix& gram, int k, Real ratio, Real T, int steps) {
  return [=](Real bx1) {
    return anneal({mode, gram, k, FieldProfile::from_ratio(gram.dimension(), bx1, ratio), T, steps}).failure_prob;
  };
}

namespace {

void describe_lattice(const GramMatrix& gram, Real& b1, Real& b2, Real& theta) {
  if (gram.dimension() != 2) {
    b1 = b2 = theta = std::nan("");
    return;
  }
  b1 = std::sqrt(gram(0, 0));
  b2 = std::sqrt(gram(1, 1));
  theta = std::acos(std::clamp(gram(0, 1) / (b1 * b2), -1.0, 1.0));
}

}  // namespace

PointRun evaluate_point(const ExperimentConfig& config, Mode mode, const GramMatrix& gram, Real T) {
  const Real ratio = config.field_ratio(mode);
  if (mode != Mode::gs && !(ratio < 1.0)) fail("modes ex and sc need bx_ratio < 1");
  const int search_steps = config.steps.search_steps(T);
  const Real bx1 = config.bx1 ? *config.bx1
                              : optimize_bx1(anneal_objective(mode, gram, config.k, ratio, T, search_steps),
                                             config.bx_lo, config.bx_hi)
                                    .bx1;
  const FieldProfile profile = FieldProfile::from_ratio(gram.dimension(), bx1, ratio);
  AnnealInputs inputs{mode, gram, config.k, profile, T, search_steps};

  SweepRecord record{};
  record.mode = mode;
  record.k = config.k;
  record.T = T;
  record.bx1 = bx1;
  record.bx2 = gram.dimension() > 1 ? profile[1] : std::nan("");
  describe_lattice(gram, record.b1, record.b2, record.theta);

  const bool converge = config.steps.kind == StepsPolicy::Kind::converge;
  ConvergedOutcome evaluated = converge ? converge_steps(inputs, config.steps.rel_tol)
                                        : ConvergedOutcome{anneal(inputs), inputs.steps, 0.0};
  record.steps = evaluated.steps_used;
  record.failure_prob = evaluated.outcome.failure_prob;
  record.success_prob = evaluated.outcome.success_prob;
  const RegisterShape shape(gram.dimension(), config.k);
  record.blocked = blocked(gram, shape, profile, initial_state(mode, profile, shape)).blocked;
  return PointRun{record, std::move(evaluated.outcome)};
}

SweepRecord run_point(const ExperimentConfig& config, Mode mode, const GramMatrix& gram, Real T) {
  return evaluate_point(config, mode, gram, T).record;
}

void sort_records(std::vector<SweepRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
    if (a.mode != b.mode) return a.mode < b.mode;
    if (a.theta != b.theta) return a.theta < b.theta;
    return a.T < b.T;
  });
}

namespace {

void require_modes(const ExperimentConfig& config) {
  if (config.modes.empty()) fail("no modes selected");
}

void require_increasing(const std::vector<Real>& grid, const char* name) {
  if (grid.empty()) fail(std::string(name) + " must be nonempty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) fail(std::string(name) + " must be strictly increasing");
}

}  // namespace

std::vector<SweepRecord> sweep_T(const ExperimentConfig& config) {
  require_modes(config);
  require_increasing(config.T_grid, "T_grid");
  const GramMatrix gram = config.gram_matrix();
  std::vector<SweepRecord> records;
  for (Mode mode : config.modes)
    for (Real T : config.T_grid) records.push_back(run_point(config, mode, gram, T));
  sort_records(records);
  return records;
}

std::vector<SweepRecord> sweep_theta(const ExperimentConfig& config) {
  require_modes(config);
  const std::vector<Real> thetas = config.thetas();
  require_increasing(thetas, "theta_grid");
  if (!(thetas.front() > 0.0 && thetas.back() < M_PI)) fail("theta_grid must lie inside (0, pi)");
  require_increasing(config.gs_T_grid, "gs_T_grid");

  std::vector<SweepRecord> records;
  for (Mode mode : config.modes) {
    for (Real theta : thetas) {
      const GramMatrix gram = config.gram_at(theta);
      if (mode != Mode::gs) {
        records.push_back(run_point(config, mode, gram, config.T));
        continue;
      }
      std::optional<SweepRecord> best;
      for (Real T : config.gs_T_grid) {
        SweepRecord r = run_point(config, mode, gram, T);
        if (!best || r.failure_prob < best->failure_prob) best = r;
      }
      records.push_back(*best);
    }
  }
  sort_records(records);
  return records;
}

SpectrumRun run_spectrum(const ExperimentConfig& config) {
  if (!(config.bx_ratio < 1.0)) fail("spectrum uses the excited-search profile and needs bx_ratio < 1");
  const GramMatrix gram = config.gram_matrix();
  const Real bx1 = config.bx1 ? *config.bx1
                              : optimize_bx1(anneal_objective(Mode::ex, gram, config.k, config.bx_ratio, config.T,
                                                              config.steps.search_steps(config.T)),
                                             config.bx_lo, config.bx_hi)
                                    .bx1;
  const RegisterShape shape(gram.dimension(), config.k);
  const FieldProfile profile = FieldProfile::from_ratio(gram.dimension(), bx1, config.bx_ratio);
  SpectrumRun run{trace_spectrum(driver_hamiltonian(profile, shape), problem_hamiltonian(gram, shape),
                                 config.n_points, std::min<int>(config.levels, static_cast<int>(shape.dim()))),
                  bx1, gram.dimension() > 1 ? profile[1] : std::nan("")};
  return run;
}

std::string format_real(Real value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << kSweepHeader << "\n";
  for (const SweepRecord& r : records) {
    os << to_string(r.mode) << ',' << format_real(r.theta) << ',' << format_real(r.b1) << ',' << format_real(r.b2)
       << ',' << r.k << ',' << format_real(r.T) << ',' << format_real(r.bx1) << ',' << format_real(r.bx2) << ','
       << r.steps << ',' << format_real(r.failure_prob) << ',' << format_real(r.success_prob) << ','
       << (r.blocked ? "true" : "false") << "\n";
  }
}

void write_spectrum_csv(std::ostream& os, const SpectrumTrace& trace) {
  os << "s";
  for (int l = 0; l < trace.level_count(); ++l) os << ",e" << l;
  os << "\n";
  for (std::size_t p = 0; p < trace.s_grid.size(); ++p) {
    os << format_real(trace.s_grid[p]);
    for (int l = 0; l < trace.level_count(); ++l) os << ',' << format_real(trace.levels(p, l));
    os << "\n";
  }
}

void write_populations_csv(std::ostream& os, const Populations& populations) {
  for (int i = 1; i <= populations.shape.sites(); ++i) os << 'm' << i << ',';
  os << "probability\n";
  for (Eigen::Index idx = 0; idx < populations.shape.dim(); ++idx) {
    const CoeffVector m = populations.shape.magnetizations(idx);
    for (Eigen::Index i = 0; i < m.size(); ++i) os << m[i] << ',';
    os << format_real(populations.probabilities[idx]) << "\n";
  }
}

}  // namespace svpqa
