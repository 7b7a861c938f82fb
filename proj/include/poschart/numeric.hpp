#pragma once

#include <cmath>
#include <complex>
#include <thread>

#include "poschart/chart.hpp"

namespace poschart {

/// Moment-map data: the chart together with strictly positive weights s.
struct MomentSpec {
  PositiveChart chart;
  RatVec s;

  MomentSpec(PositiveChart c, RatVec weights) : chart(std::move(c)), s(std::move(weights)) {
    if (int(s.size()) != chart.k) throw InputError("weight count must match section count");
    for (const Rat& w : s)
      if (w <= 0) throw InputError("moment weights must be strictly positive");
  }
};

/// One monomial contribution of the moment map: section i, source exponent
/// m, homogenized exponent eta = F^t m + a_i, coefficient c_{i,m}.
struct MomentTerm {
  int section;
  IntVec m;
  IntVec eta;
  Rat coeff;
};

inline std::vector<MomentTerm> moment_map_terms(const PositiveChart& chart) {
  std::vector<MomentTerm> terms;
  for (int i = 0; i < chart.k; ++i) {
    for (const auto& [m, c] : chart.sections[i].f.terms) {
      MomentTerm t;
      t.section = i;
      t.m = m;
      t.eta.assign(chart.n, Int(0));
      for (int j = 0; j < chart.n; ++j) {
        t.eta[j] = chart.sections[i].support[j];
        for (int r = 0; r < chart.d; ++r) t.eta[j] += chart.F(r, j) * m[r];
      }
      t.coeff = c;
      terms.push_back(std::move(t));
    }
  }
  return terms;
}

namespace detail {

inline Rat rat_monomial(const RatVec& y, const IntVec& e) {
  Rat val(1);
  for (size_t j = 0; j < y.size(); ++j) {
    if (e[j] == 0) continue;
    if (y[j] == 0) throw PoleError("monomial evaluated at a zero coordinate");
    Int a = abs(e[j]);
    Rat p(1);
    for (Int q = 0; q < a; ++q) p *= y[j];
    val *= (e[j] > 0) ? p : Rat(1) / p;
  }
  return val;
}

inline std::complex<double> cx_monomial(const std::vector<std::complex<double>>& y,
                                        const IntVec& e) {
  std::complex<double> val = 1.0;
  for (size_t j = 0; j < y.size(); ++j) {
    if (e[j] == 0) continue;
    val *= std::pow(y[j], e[j].convert_to<double>());
  }
  return val;
}

}  // namespace detail

/// mu_{Y,s} evaluated on a point of Y (given by its Cox coordinates).
inline RatVec moment_eval_y(const MomentSpec& spec, const RatVec& y) {
  const PositiveChart& chart = spec.chart;
  RatVec x(chart.n);
  for (const MomentTerm& t : moment_map_terms(chart)) {
    Rat weight = spec.s[t.section] * t.coeff * detail::rat_monomial(y, t.eta);
    for (int j = 0; j < chart.n; ++j) x[j] += weight * Rat(t.eta[j]);
  }
  return x;
}

inline std::vector<std::complex<double>> moment_eval_y(
    const PositiveChart& chart, const std::vector<double>& s,
    const std::vector<std::complex<double>>& y) {
  std::vector<std::complex<double>> x(chart.n, 0.0);
  for (const MomentTerm& t : moment_map_terms(chart)) {
    std::complex<double> weight =
        s[t.section] * t.coeff.convert_to<double>() * detail::cx_monomial(y, t.eta);
    for (int j = 0; j < chart.n; ++j) x[j] += weight * t.eta[j].convert_to<double>();
  }
  return x;
}

/// mu_{Y,s}(phi(t)), exactly over Q. Throws PoleAt when a section vanishes.
inline RatVec moment_eval(const MomentSpec& spec, const RatVec& t) {
  return moment_eval_y(spec, phi_eval(spec.chart, t));
}

/// The same point through the reduced route M^t (sum_i s_i mu_i(t); s).
inline RatVec moment_eval_via_t(const MomentSpec& spec, const RatVec& t) {
  const PositiveChart& chart = spec.chart;
  RatVec inner(chart.d);
  for (int i = 0; i < chart.k; ++i) {
    Rat f = chart.sections[i].f.eval(t);
    if (f == 0) throw PoleError("section " + std::to_string(i + 1) + " vanishes at t");
    for (const auto& [m, c] : chart.sections[i].f.terms) {
      Rat w = spec.s[i] * c * detail::rat_monomial(t, m) / f;
      for (int r = 0; r < chart.d; ++r) inner[r] += w * Rat(m[r]);
    }
  }
  RatVec x(chart.n);
  for (int j = 0; j < chart.n; ++j) {
    for (int r = 0; r < chart.d; ++r) x[j] += Rat(chart.M(r, j)) * inner[r];
    for (int i = 0; i < chart.k; ++i) x[j] += Rat(chart.M(chart.d + i, j)) * spec.s[i];
  }
  return x;
}

/// Exact membership of the moment image in the plane K^t x = s, with
/// strict interior positivity for positive t.
inline bool moment_plane_check(const MomentSpec& spec, const RatVec& t) {
  const PositiveChart& chart = spec.chart;
  RatVec x = moment_eval(spec, t);
  for (int l = 0; l < chart.k; ++l) {
    Rat acc;
    for (int j = 0; j < chart.n; ++j) acc += Rat(chart.K(j, l)) * x[j];
    if (acc != spec.s[l]) return false;
  }
  bool positive_t = true;
  for (const Rat& q : t)
    if (q <= 0) positive_t = false;
  if (positive_t)
    for (const Rat& xi : x)
      if (xi <= 0) return false;
  return true;
}

/// Critical-point problem for the monomial y^x on the chart torus.
struct ScatteringProblem {
  PositiveChart chart;
  RatVec x;
  std::optional<long> expected_count;

  RatVec induced_s() const {
    RatVec s(chart.k);
    for (int l = 0; l < chart.k; ++l)
      for (int j = 0; j < chart.n; ++j) s[l] += Rat(chart.K(j, l)) * x[j];
    return s;
  }
};

struct ScatteringConfig {
  int starts = 200;
  int max_iter = 100;
  double tol = 1e-10;
  double cluster_tol = 1e-8;
  double torus_tol = 1e-8;
  uint64_t seed = 0;
  int jobs = 1;
  int min_found = 1;
};

struct ScatteringSolution {
  std::vector<std::complex<double>> t;
  std::vector<std::complex<double>> y;
  double residual = 0.0;  // max-norm of x - mu_{Y,s}(y)
};

struct ScatteringResult {
  std::vector<ScatteringSolution> solutions;
  long count = 0;
};

namespace detail {

struct SectionEval {
  // per term: double coefficient and integer exponents
  std::vector<std::pair<double, std::vector<long>>> terms;
};

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// deterministic standard normal pairs from a per-start generator
class Gaussian {
 public:
  explicit Gaussian(uint64_t seed) : state_(seed) {}
  double next() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

 private:
  double uniform() {
    state_ = splitmix64(state_ ^ 0x2545f4914f6cdd1dULL);
    // (0, 1]: never zero, so log is safe
    return (double(state_ >> 11) + 1.0) / 9007199254740993.0;
  }
  uint64_t state_;
  double spare_ = 0.0;
  bool have_ = false;
};

// complex linear solve by partial-pivot elimination
inline bool solve_complex(std::vector<std::vector<std::complex<double>>> a,
                          std::vector<std::complex<double>>& b) {
  int n = int(a.size());
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
    if (std::abs(a[pivot][c]) < 1e-14) return false;
    std::swap(a[c], a[pivot]);
    std::swap(b[c], b[pivot]);
    for (int r = c + 1; r < n; ++r) {
      std::complex<double> f = a[r][c] / a[c][c];
      for (int q = c; q < n; ++q) a[r][q] -= f * a[c][q];
      b[r] -= f * b[c];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    for (int q = r + 1; q < n; ++q) b[r] -= a[r][q] * b[q];
    b[r] /= a[r][r];
  }
  return true;
}

}  // namespace detail

/// Multistart Newton on the d reduced critical-point equations
///   sum_i s_i mu_i(t) = B^t x   with   s = K^t x.
/// Converged points are filtered by the full residual after mapping
/// t -> y = phi(t), clustered, and cross-checked over two seed batches.
inline ScatteringResult scattering_solve(const ScatteringProblem& problem,
                                         const ScatteringConfig& config = ScatteringConfig{}) {
  const PositiveChart& chart = problem.chart;
  int d = chart.d, k = chart.k;
  RatVec s_exact = problem.induced_s();
  for (int l = 0; l < k; ++l)
    if (s_exact[l] == 0)
      throw DegenerateExponentError("induced multiplier s_" + std::to_string(l + 1) +
                                    " vanishes; x is not generic");
  std::vector<double> s(k);
  for (int l = 0; l < k; ++l) s[l] = s_exact[l].convert_to<double>();
  std::vector<double> target(d, 0.0);  // B^t x
  for (int r = 0; r < d; ++r) {
    Rat acc;
    for (int j = 0; j < chart.n; ++j) acc += Rat(chart.B(j, r)) * problem.x[j];
    target[r] = acc.convert_to<double>();
  }
  std::vector<double> xd(chart.n);
  for (int j = 0; j < chart.n; ++j) xd[j] = problem.x[j].convert_to<double>();

  // per-section term data in doubles
  std::vector<detail::SectionEval> secs(k);
  for (int i = 0; i < k; ++i)
    for (const auto& [m, c] : chart.sections[i].f.terms) {
      std::vector<long> e(d);
      for (int r = 0; r < d; ++r) e[r] = m[r].convert_to<long>();
      secs[i].terms.emplace_back(c.convert_to<double>(), e);
    }

  using CVec = std::vector<std::complex<double>>;
  auto residual_full = [&](const CVec& y) {
    CVec mu = moment_eval_y(chart, s, y);
    double res = 0.0;
    for (int j = 0; j < chart.n; ++j) res = std::max(res, std::abs(mu[j] - xd[j]));
    return res;
  };

  // residual of the reduced system; nullopt at a pole
  auto eval_g = [&](const CVec& t, std::vector<CVec>* jac_out) -> std::optional<CVec> {
    CVec g(d, 0.0);
    for (int r = 0; r < d; ++r) g[r] = -target[r];
    if (jac_out) jac_out->assign(d, CVec(d, 0.0));
    for (int i = 0; i < k; ++i) {
      std::complex<double> f = 0.0;
      CVec fgrad(d, 0.0);                       // df/dt_q
      CVec num(d, 0.0);                         // N_r = sum c t^m m_r
      std::vector<CVec> dnum(d, CVec(d, 0.0));  // dN_r/dt_q
      for (const auto& [c, e] : secs[i].terms) {
        std::complex<double> mono = c;
        for (int r = 0; r < d; ++r)
          if (e[r] != 0) mono *= std::pow(t[r], double(e[r]));
        f += mono;
        for (int r = 0; r < d; ++r) {
          if (e[r] == 0) continue;
          num[r] += mono * double(e[r]);
          if (jac_out)
            for (int q = 0; q < d; ++q)
              if (e[q] != 0) dnum[r][q] += mono * double(e[r]) * double(e[q]) / t[q];
        }
        if (jac_out)
          for (int q = 0; q < d; ++q)
            if (e[q] != 0) fgrad[q] += mono * double(e[q]) / t[q];
      }
      if (std::abs(f) < 1e-250) return std::nullopt;
      for (int r = 0; r < d; ++r) {
        g[r] += s[i] * num[r] / f;
        if (jac_out)
          for (int q = 0; q < d; ++q)
            (*jac_out)[r][q] += s[i] * (dnum[r][q] / f - num[r] * fgrad[q] / (f * f));
      }
    }
    return g;
  };
  auto max_norm = [](const CVec& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
  };

  auto run_start = [&](uint64_t start_seed, int index) -> std::optional<CVec> {
    detail::Gaussian gauss(start_seed);
    // exp of complex Gaussians; radial spread cycles so that both small and
    // large starts appear, the phase spread pi covers the whole circle
    double radial = 0.5 * double(1 << (index % 3));
    CVec t(d);
    for (int r = 0; r < d; ++r)
      t[r] = std::exp(std::complex<double>(radial * gauss.next(), M_PI * gauss.next()));
    std::vector<CVec> jac;
    for (int iter = 0; iter < config.max_iter; ++iter) {
      auto g = eval_g(t, &jac);
      if (!g) return std::nullopt;
      double gnorm = max_norm(*g);
      CVec step = *g;
      for (auto& v : step) v = -v;
      if (!detail::solve_complex(jac, step)) return std::nullopt;
      // backtracking: accept the first damping that decreases the residual
      double lambda = 1.0;
      CVec next;
      double next_norm = 0.0;
      bool accepted = false;
      for (int bt = 0; bt < 24; ++bt, lambda *= 0.5) {
        CVec trial(d);
        for (int r = 0; r < d; ++r) trial[r] = t[r] + lambda * step[r];
        bool sane = true;
        for (int r = 0; r < d; ++r) {
          double a = std::abs(trial[r]);
          if (!std::isfinite(a) || a > 1e14 || a < 1e-14) sane = false;
        }
        if (!sane) continue;
        auto gt = eval_g(trial, nullptr);
        if (!gt) continue;
        double norm = max_norm(*gt);
        if (norm < gnorm * (1.0 - 0.25 * lambda) || norm < config.tol) {
          next = std::move(trial);
          next_norm = norm;
          accepted = true;
          break;
        }
      }
      if (!accepted) return std::nullopt;
      double snorm = 0.0, tnorm = 0.0;
      for (int r = 0; r < d; ++r) {
        snorm = std::max(snorm, lambda * std::abs(step[r]));
        tnorm = std::max(tnorm, std::abs(next[r]));
      }
      t = std::move(next);
      if (next_norm <= config.tol && snorm <= 1e-12 * (1.0 + tnorm)) return t;
    }
    return std::nullopt;
  };

  auto phi_complex = [&](const CVec& t) {
    CVec fv(k);
    for (int i = 0; i < k; ++i) fv[i] = chart.sections[i].f.eval(t);
    CVec y(chart.n);
    for (int j = 0; j < chart.n; ++j) {
      std::complex<double> val = 1.0;
      for (int r = 0; r < d; ++r) {
        Int e = chart.phi[j].t_exponent[r];
        if (e != 0) val *= std::pow(t[r], e.convert_to<double>());
      }
      for (int l = 0; l < k; ++l) {
        Int p = chart.phi[j].f_powers[l];
        if (p != 0) val *= std::pow(fv[l], -p.convert_to<double>());
      }
      y[j] = val;
    }
    return y;
  };

  auto run_batch = [&](uint64_t batch_tag, int starts) {
    std::vector<std::optional<CVec>> raw(starts);
    auto worker = [&](int lo, int hi) {
      for (int i = lo; i < hi; ++i)
        raw[i] = run_start(detail::splitmix64(config.seed ^ batch_tag) + uint64_t(i), i);
    };
    int jobs = std::max(1, config.jobs);
    if (jobs == 1) {
      worker(0, starts);
    } else {
      std::vector<std::thread> pool;
      int chunk = (starts + jobs - 1) / jobs;
      for (int w = 0; w < jobs; ++w) {
        int lo = w * chunk, hi = std::min(starts, (w + 1) * chunk);
        if (lo < hi) pool.emplace_back(worker, lo, hi);
      }
      for (auto& th : pool) th.join();
    }
    // filter and cluster deterministically
    std::vector<ScatteringSolution> sols;
    for (const auto& cand : raw) {
      if (!cand) continue;
      CVec y = phi_complex(*cand);
      bool torus = true;
      for (const auto& v : y)
        if (std::abs(v) < config.torus_tol) torus = false;
      if (!torus) continue;
      double res = residual_full(y);
      if (res > config.tol) continue;
      ScatteringSolution sol;
      sol.t = *cand;
      sol.y = y;
      sol.residual = res;
      sols.push_back(std::move(sol));
    }
    std::sort(sols.begin(), sols.end(), [](const ScatteringSolution& a, const ScatteringSolution& b) {
      for (size_t r = 0; r < a.t.size(); ++r) {
        if (a.t[r].real() != b.t[r].real()) return a.t[r].real() < b.t[r].real();
        if (a.t[r].imag() != b.t[r].imag()) return a.t[r].imag() < b.t[r].imag();
      }
      return false;
    });
    std::vector<ScatteringSolution> clusters;
    for (const auto& sol : sols) {
      bool fresh = true;
      for (const auto& rep : clusters) {
        double dist = 0.0, scale = 0.0;
        for (size_t r = 0; r < sol.t.size(); ++r) {
          dist = std::max(dist, std::abs(sol.t[r] - rep.t[r]));
          scale = std::max(scale, std::abs(rep.t[r]));
        }
        if (dist <= config.cluster_tol * (1.0 + scale)) {
          fresh = false;
          break;
        }
      }
      if (fresh) clusters.push_back(sol);
    }
    return clusters;
  };

  auto batches_match = [&](const std::vector<ScatteringSolution>& a,
                           const std::vector<ScatteringSolution>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& sol : a) {
      bool matched = false;
      for (const auto& other : b) {
        double dist = 0.0, scale = 0.0;
        for (size_t r = 0; r < sol.t.size(); ++r) {
          dist = std::max(dist, std::abs(sol.t[r] - other.t[r]));
          scale = std::max(scale, std::abs(sol.t[r]));
        }
        if (dist <= 100 * config.cluster_tol * (1.0 + scale)) {
          matched = true;
          break;
        }
      }
      if (!matched) return false;
    }
    return true;
  };

  // The cluster count must agree between the two seed batches and between
  // two consecutive start levels; otherwise escalate the start count.
  long prev_count = -1;
  int starts = config.starts;
  for (int attempt = 0; attempt < 4; ++attempt, starts *= 4) {
    auto batch_a = run_batch(0x5ca77e71ULL + uint64_t(attempt), starts);
    auto batch_b = run_batch(0xba7c4b2dULL + uint64_t(attempt) * 1315423911ULL, starts);
    if (!batches_match(batch_a, batch_b)) {
      prev_count = -1;
      continue;
    }
    long count = long(batch_a.size());
    if (prev_count == count) {
      if (count < config.min_found)
        throw NoConvergenceError("found " + std::to_string(count) +
                                 " clusters, expected at least " +
                                 std::to_string(config.min_found));
      ScatteringResult result;
      result.solutions = std::move(batch_a);
      result.count = count;
      return result;
    }
    prev_count = count;
  }
  throw NoConvergenceError("cluster counts did not stabilize across seed batches");
}

}  // namespace poschart
