#include "eeio/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "eeio/numeric.hpp"
#include "eeio/random.hpp"

namespace eeio {

SpectralEstimate spectral_radius(const Matrix& a, double tol, std::size_t max_iter) {
  SpectralEstimate out;
  const Eigen::Index n = a.rows();
  if (n == 0 || a.isZero(0.0)) {
    out.converged = true;
    return out;
  }
  // Perron root never exceeds either induced norm.
  const double bound = std::min(a.cwiseAbs().colwise().sum().maxCoeff(),
                                a.cwiseAbs().rowwise().sum().maxCoeff());

  Vector x = Vector::Ones(n);
  double previous = std::numeric_limits<double>::quiet_NaN();
  double estimate = bound;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    out.iterations = it;
    const Vector y = a * x;
    // x > 0 always (shifted iteration), so the Collatz-Wielandt ratios
    // bracket the Perron root.
    const Vector ratios = y.cwiseQuotient(x);
    const double lower = ratios.minCoeff();
    const double upper = ratios.maxCoeff();
    estimate = y.maxCoeff();  // ||A x||_inf with ||x||_inf = 1
    if (upper - lower <= tol * upper) {
      estimate = 0.5 * (upper + lower);
      out.converged = true;
      break;
    }
    if (std::abs(estimate - previous) <= tol * estimate) {
      out.converged = true;
      break;
    }
    previous = estimate;
    x += y;
    x /= x.maxCoeff();
  }
  out.rho = std::min(estimate, bound);
  return out;
}

SpectralEstimate spectral_radius(const CoefficientMatrix& a, double tol, std::size_t max_iter) {
  return spectral_radius(a.values(), tol, max_iter);
}

namespace {

constexpr double kDiverged = -1.0;

// Sup-norm distance of (I - B)^-1 from the baseline, or kDiverged.
double deviation(const Matrix& b, const Matrix& baseline_inverse) {
  if (b.colwise().sum().maxCoeff() >= 1.0 &&
      spectral_radius(b).rho >= kDivergenceThreshold) {
    return kDiverged;
  }
  try {
    const LeontiefSolver solver(b);
    return inf_norm(solver.inverse() - baseline_inverse);
  } catch (const SingularSystemError&) {
    return kDiverged;
  }
}

}  // namespace

PerturbationReport perturb_inverse(const CoefficientMatrix& a, double epsilon,
                                   std::size_t samples, std::uint64_t seed, unsigned threads) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::DomainError, "epsilon must be positive and finite");
  }
  const Matrix& base = a.values();
  const SpectralEstimate rho = spectral_radius(base);
  if (rho.rho >= kDivergenceThreshold) throw DivergentError(rho.rho);
  const Matrix baseline_inverse = LeontiefSolver(base).inverse();

  PerturbationReport report;
  report.epsilon = epsilon;
  report.seed = seed;
  report.baseline_norm = inf_norm(baseline_inverse);

  std::vector<double> deviations(samples, 0.0);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      Rng rng(seed, k);
      Matrix b = base;
      for (Eigen::Index i = 0; i < b.rows(); ++i) {
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
          b(i, j) = std::max(0.0, b(i, j) + rng.uniform(-epsilon, epsilon));
        }
      }
      deviations[k] = deviation(b, baseline_inverse);
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(samples, 1));
  if (workers == 1) {
    run_range(0, samples);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (samples + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(samples, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  if (base.rows() == 1) {
    const double a11 = base(0, 0);
    for (double probe : {std::max(0.0, a11 - epsilon), a11 + epsilon}) {
      deviations.push_back(deviation(Matrix::Constant(1, 1, probe), baseline_inverse));
    }
  }

  report.samples = deviations.size();
  for (double d : deviations) {
    if (d == kDiverged) {
      ++report.diverged_count;
    } else {
      report.max_deviation = std::max(report.max_deviation, d);
    }
  }
  report.amplification = report.max_deviation / epsilon;
  return report;
}

std::vector<std::pair<double, double>> amplification_curve(const std::vector<double>& a_values,
                                                           double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::DomainError, "epsilon must be positive");
  std::vector<std::pair<double, double>> curve;
  curve.reserve(a_values.size());
  for (double a : a_values) {
    if (!(a + epsilon < 1.0)) {
      throw Error(ErrorCode::DomainError,
                  "a + epsilon must stay below 1 (a = " + std::to_string(a) + ")");
    }
    curve.emplace_back(a, 1.0 / ((1.0 - a) * (1.0 - a - epsilon)));
  }
  return curve;
}

}  // namespace eeio
