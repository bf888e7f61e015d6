#pragma once

#include <functional>
#include <span>
#include <vector>

namespace uniquemax {

using Objective = std::function<double(std::span<const double>)>;

/// Contracting pattern search in polar form around the origin: radial polls
/// scale x by exp(+-step), tangential polls rotate x by +-step radians
/// toward an orthonormal basis of the tangent space of the sphere through
/// x, and Cartesian polls (used only while |x| < cartesian_radius) move
/// along +-e_i. Each group keeps its own step and halves it after a poll round
/// without improvement. A poll is accepted when it improves the value by more than
/// sufficient_increase * step^2.
struct PatternSearchOptions {
  int budget = 200;
  double radial_step = 0.1;
  double tangential_step = 0.1;
  double cartesian_step = 0.1;
  double cartesian_radius = 0.0;
  double min_step = 1e-13;
  double sufficient_increase = 0.0;
  bool radial = true;
  bool tangential = true;
};

struct PatternSearchResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};

/// Maximizes f starting from `start`, whose value is `start_value`.
PatternSearchResult pattern_search_max(const Objective& f, std::vector<double> start,
                                       double start_value, const PatternSearchOptions& options);

/// Orthonormal basis of the orthogonal complement of the unit vector u.
std::vector<std::vector<double>> tangent_basis(std::span<const double> u);

}  // namespace uniquemax
