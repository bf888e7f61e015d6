#include "uniquemax/pattern_search.hpp"

#include <cmath>

#include "uniquemax/point.hpp"

namespace uniquemax {

std::vector<std::vector<double>> tangent_basis(std::span<const double> u) {
  const std::size_t n = u.size();
  // Householder reflection H with H e_0 = -sign(u_0) u; its remaining
  // columns are orthonormal and orthogonal to u.
  std::vector<double> v(u.begin(), u.end());
  const double s = u[0] >= 0.0 ? 1.0 : -1.0;
  v[0] += s;
  double vv = 0.0;
  for (double c : v) vv += c * c;
  std::vector<std::vector<double>> basis;
  basis.reserve(n - 1);
  for (std::size_t col = 1; col < n; ++col) {
    std::vector<double> h(n);
    for (std::size_t row = 0; row < n; ++row) {
      h[row] = (row == col ? 1.0 : 0.0) - 2.0 * v[row] * v[col] / vv;
    }
    basis.push_back(std::move(h));
  }
  return basis;
}

PatternSearchResult pattern_search_max(const Objective& f, std::vector<double> start,
                                       double start_value, const PatternSearchOptions& options) {
  PatternSearchResult res{std::move(start), start_value, 0};
  const std::size_t n = res.x.size();
  double radial = options.radial_step;
  double tangential = options.tangential_step;
  double cartesian = options.cartesian_step;
  std::vector<double> cand(n);

  auto try_candidate = [&](double step) {
    const double v = f(cand);
    ++res.evaluations;
    if (v > res.value + options.sufficient_increase * step * step) {
      res.value = v;
      res.x = cand;
      return true;
    }
    return false;
  };
  auto exhausted = [&] { return res.evaluations >= options.budget; };

  while (!exhausted()) {
    bool active = false;
    const double r = norm(res.x);

    if (options.radial && r > 0.0 && radial >= options.min_step) {
      active = true;
      bool improved = false;
      for (double sign : {1.0, -1.0}) {
        if (exhausted()) break;
        const double scale = std::exp(sign * radial);
        for (std::size_t k = 0; k < n; ++k) cand[k] = res.x[k] * scale;
        if (try_candidate(radial)) {
          improved = true;
          break;
        }
      }
      if (!improved) radial *= 0.5;
    }

    if (options.tangential && n >= 2 && r > 0.0 && tangential >= options.min_step &&
        !exhausted()) {
      active = true;
      const double rr = norm(res.x);
      std::vector<double> u(n);
      for (std::size_t k = 0; k < n; ++k) u[k] = res.x[k] / rr;
      const auto basis = tangent_basis(u);
      const double c = std::cos(tangential);
      const double s = std::sin(tangential);
      bool improved = false;
      for (const auto& t : basis) {
        for (double sign : {1.0, -1.0}) {
          if (exhausted()) break;
          for (std::size_t k = 0; k < n; ++k) cand[k] = rr * (c * u[k] + sign * s * t[k]);
          if (try_candidate(tangential)) {
            improved = true;
            break;
          }
        }
        if (improved || exhausted()) break;
      }
      if (!improved) tangential *= 0.5;
    }

    if (norm(res.x) < options.cartesian_radius && cartesian >= options.min_step &&
        !exhausted()) {
      active = true;
      bool improved = false;
      for (std::size_t axis = 0; axis < n && !improved; ++axis) {
        for (double sign : {1.0, -1.0}) {
          if (exhausted()) break;
          cand = res.x;
          cand[axis] += sign * cartesian;
          if (try_candidate(cartesian)) {
            improved = true;
            break;
          }
        }
      }
      if (!improved) cartesian *= 0.5;
    }

    if (!active) break;
  }
  return res;
}

}  // namespace uniquemax
