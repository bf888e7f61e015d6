#include "uniquemax/serialize.hpp"

#include <cstdio>
#include <string>
#include <type_traits>
#include <variant>

#include "uniquemax/error.hpp"

namespace uniquemax {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw Error(ErrorKind::kInvalidArgument, "expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) {
    throw Error(ErrorKind::kInvalidArgument, std::string("missing field '") + key + "'");
  }
  return *it;
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::kInvalidArgument, std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
std::optional<T> get_optional(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return get<T>(j, key);
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "combination must be a nonempty array of rows");
  }
  std::vector<std::vector<double>> rows;
  try {
    rows = j.get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::kInvalidArgument, "combination must contain numeric rows");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) {
      throw Error(ErrorKind::kInvalidArgument, "combination rows differ in length");
    }
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
    }
  }
  return m;
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "violation-found") return Verdict::kViolationFound;
  if (s == "inconclusive") return Verdict::kInconclusive;
  throw Error(ErrorKind::kInvalidArgument, "unknown verdict '" + s + "'");
}

}  // namespace

Json to_json(const Point& p) { return p.values(); }
Json to_json(const CoefVector& a) { return a.values(); }

Json to_json(const BasisFunction& f) {
  return std::visit(
      Overloaded{
          [](const ProjectionInversion& p) -> Json {
            return {{"family", "projection_inversion"}, {"index", p.axis + 1}};
          },
          [](const GaussianBump& g) -> Json {
            return {{"family", "gaussian"},
                    {"center", g.center.values()},
                    {"width", g.width},
                    {"sign", g.sign}};
          },
          [](const SampleTable& t) -> Json {
            return {{"family", "sample_table"},
                    {"lower", t.lower},
                    {"upper", t.upper},
                    {"shape", t.shape},
                    {"values", t.values}};
          },
          [](const BallRestriction& r) -> Json {
            return {{"family", "ball_restriction"},
                    {"radius", r.radius},
                    {"inner", to_json(*r.inner)}};
          },
      },
      f.family());
}

Json to_json(const Subspace& s) {
  Json basis = Json::array();
  for (const BasisFunction& f : s.atoms()) basis.push_back(to_json(f));
  Json j = {{"ambient_dim", s.ambient_dim()}, {"basis", std::move(basis)}};
  if (!s.is_plain()) j["combination"] = matrix_to_json(s.combination());
  return j;
}

Json to_json(const AnalyticMaxResult& r) {
  return {{"argmax", to_json(r.argmax)}, {"value", r.value}, {"coef_norm", r.coef_norm}};
}

Json to_json(const MaxCertificate& c) {
  return {{"argmax", to_json(c.argmax)},
          {"value", c.value},
          {"margin", c.margin},
          {"cluster_radius", c.cluster_radius},
          {"cluster_count", c.cluster_count},
          {"grid_resolution", c.grid_resolution},
          {"refined", c.refined},
          {"at_infinity", c.at_infinity},
          {"grid_value", c.grid_value},
          {"unique", c.unique()}};
}

Json to_json(const MinResult& r) {
  return {{"argmin", to_json(r.argmin)}, {"value", r.value}, {"at_infinity", r.at_infinity}};
}

Json to_json(const SignBounds& b) {
  return {{"sup_min", b.sup_min}, {"inf_max", b.inf_max}, {"probes", b.probes},
          {"seed", b.seed}};
}

Json to_json(const NormEquivalence& e) {
  return {{"c1", e.c1}, {"c2", e.c2}, {"probes", e.probes}, {"seed", e.seed}};
}

Json to_json(const TailRadius& t) {
  return {{"N", t.threshold},
          {"A", t.radius},
          {"far_field_max", t.far_field_max},
          {"far_field_samples", t.far_field_samples},
          {"far_field_probes", t.far_field_probes}};
}

Json to_json(const ViolationWitness& w) {
  return {{"coefs", to_json(w.coefs)}, {"peak1", to_json(w.peak1)},
          {"peak2", to_json(w.peak2)}, {"value1", w.value1},
          {"value2", w.value2},        {"separation", w.separation},
          {"gap", w.gap}};
}

Json to_json(const ExperimentReport& r) {
  Json j = {{"ambient_dim", r.ambient_dim},
            {"candidate_dim", r.candidate_dim},
            {"family", r.family},
            {"seed", r.seed},
            {"budget", r.budget},
            {"tol_gap", r.tol_gap},
            {"resolution", r.resolution},
            {"extracted_dim", r.extracted_dim},
            {"search",
             {{"probes", r.search.probes},
              {"evaluations", r.search.evaluations},
              {"best_gap", r.search.best_gap}}},
            {"verdict", to_string(r.verdict)}};
  j["bounds"] = r.bounds ? to_json(*r.bounds) : Json(nullptr);
  j["norm_equivalence"] = r.norm_equivalence ? to_json(*r.norm_equivalence) : Json(nullptr);
  j["tail"] = r.tail ? to_json(*r.tail) : Json(nullptr);
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return j;
}

Json to_json(const ExtractionResult& r) {
  return {{"input_dim", r.kernel.cols()},
          {"output_dim", r.kernel.rows()},
          {"coefficients", matrix_to_json(r.kernel)},
          {"phi", std::vector<double>(r.phi.data(), r.phi.data() + r.phi.size())},
          {"phase", to_string(r.phase)},
          {"cone_members", r.cone_members},
          {"probes", r.probes},
          {"probe_failures", r.probe_failures},
          {"seed", r.seed},
          {"subspace", to_json(r.subspace)}};
}

Point point_from_json(const Json& j) {
  try {
    return Point(j.get<std::vector<double>>());
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::kInvalidArgument, "point must be an array of numbers");
  }
}

CoefVector coefs_from_json(const Json& j) {
  try {
    return CoefVector(j.get<std::vector<double>>());
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::kInvalidArgument, "coefficients must be an array of numbers");
  }
}

BasisFunction basis_from_json(const Json& j, std::size_t ambient_dim) {
  const std::string family = get<std::string>(j, "family");
  BasisFunction f = [&] {
    if (family == "projection_inversion") {
      const auto index = get<long long>(j, "index");
      if (index < 1 || static_cast<std::size_t>(index) > ambient_dim) {
        throw Error(ErrorKind::kInvalidArgument,
                    "projection index " + std::to_string(index) + " outside [1, " +
                        std::to_string(ambient_dim) + "]");
      }
      return BasisFunction::projection_inversion(ambient_dim, static_cast<std::size_t>(index - 1));
    }
    if (family == "gaussian") {
      const auto sign = get_optional<int>(j, "sign").value_or(1);
      return BasisFunction::gaussian(point_from_json(field(j, "center")), get<double>(j, "width"),
                                     sign);
    }
    if (family == "sample_table") {
      return BasisFunction::sample_table(
          get<std::vector<double>>(j, "lower"), get<std::vector<double>>(j, "upper"),
          get<std::vector<std::size_t>>(j, "shape"), get<std::vector<double>>(j, "values"));
    }
    if (family == "ball_restriction") {
      return BasisFunction::restricted(basis_from_json(field(j, "inner"), ambient_dim),
                                       get<double>(j, "radius"));
    }
    throw Error(ErrorKind::kInvalidArgument, "unknown basis family '" + family + "'");
  }();
  if (f.ambient_dim() != ambient_dim) {
    throw Error(ErrorKind::kDimensionMismatch,
                "basis function of dimension " + std::to_string(f.ambient_dim()) +
                    " in a subspace of ambient dimension " + std::to_string(ambient_dim));
  }
  return f;
}

Subspace subspace_from_json(const Json& j) {
  const auto n = get<long long>(j, "ambient_dim");
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "ambient_dim must be positive");
  const Json& basis = field(j, "basis");
  if (!basis.is_array() || basis.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "basis must be a nonempty array");
  }
  std::vector<BasisFunction> atoms;
  for (const Json& b : basis) atoms.push_back(basis_from_json(b, static_cast<std::size_t>(n)));
  const auto it = j.find("combination");
  if (it == j.end() || it->is_null()) return Subspace(std::move(atoms));
  Eigen::MatrixXd comb = matrix_from_json(*it);
  if (static_cast<std::size_t>(comb.cols()) != atoms.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "combination rows must have one entry per atom");
  }
  return Subspace(std::move(atoms), std::move(comb));
}

AnalyticMaxResult analytic_max_from_json(const Json& j) {
  AnalyticMaxResult r;
  r.argmax = point_from_json(field(j, "argmax"));
  r.value = get<double>(j, "value");
  r.coef_norm = get<double>(j, "coef_norm");
  return r;
}

MaxCertificate certificate_from_json(const Json& j) {
  MaxCertificate c;
  c.argmax = point_from_json(field(j, "argmax"));
  c.value = get<double>(j, "value");
  c.margin = get<double>(j, "margin");
  c.cluster_radius = get<double>(j, "cluster_radius");
  c.cluster_count = get<int>(j, "cluster_count");
  c.grid_resolution = get<int>(j, "grid_resolution");
  c.refined = get<bool>(j, "refined");
  c.at_infinity = get<bool>(j, "at_infinity");
  c.grid_value = get<double>(j, "grid_value");
  return c;
}

MinResult min_result_from_json(const Json& j) {
  MinResult r;
  r.argmin = point_from_json(field(j, "argmin"));
  r.value = get<double>(j, "value");
  r.at_infinity = get<bool>(j, "at_infinity");
  return r;
}

SignBounds sign_bounds_from_json(const Json& j) {
  return {get<double>(j, "sup_min"), get<double>(j, "inf_max"), get<int>(j, "probes"),
          get<std::uint64_t>(j, "seed")};
}

NormEquivalence norm_equivalence_from_json(const Json& j) {
  return {get<double>(j, "c1"), get<double>(j, "c2"), get<int>(j, "probes"),
          get<std::uint64_t>(j, "seed")};
}

TailRadius tail_radius_from_json(const Json& j) {
  return {get<double>(j, "N"), get<double>(j, "A"), get<double>(j, "far_field_max"),
          get<int>(j, "far_field_samples"), get<int>(j, "far_field_probes")};
}

ViolationWitness witness_from_json(const Json& j) {
  ViolationWitness w;
  w.coefs = coefs_from_json(field(j, "coefs"));
  w.peak1 = point_from_json(field(j, "peak1"));
  w.peak2 = point_from_json(field(j, "peak2"));
  w.value1 = get<double>(j, "value1");
  w.value2 = get<double>(j, "value2");
  w.separation = get<double>(j, "separation");
  w.gap = get<double>(j, "gap");
  return w;
}

ExperimentReport report_from_json(const Json& j) {
  ExperimentReport r;
  r.ambient_dim = get<std::size_t>(j, "ambient_dim");
  r.candidate_dim = get<std::size_t>(j, "candidate_dim");
  r.family = get<std::string>(j, "family");
  r.seed = get<std::uint64_t>(j, "seed");
  r.budget = get<int>(j, "budget");
  r.tol_gap = get<double>(j, "tol_gap");
  r.resolution = get<int>(j, "resolution");
  r.extracted_dim = get<std::size_t>(j, "extracted_dim");
  const Json& search = field(j, "search");
  r.search.probes = get<int>(search, "probes");
  r.search.evaluations = get<int>(search, "evaluations");
  r.search.best_gap = get<double>(search, "best_gap");
  r.verdict = verdict_from_string(get<std::string>(j, "verdict"));
  if (const auto b = j.find("bounds"); b != j.end() && !b->is_null()) {
    r.bounds = sign_bounds_from_json(*b);
  }
  if (const auto e = j.find("norm_equivalence"); e != j.end() && !e->is_null()) {
    r.norm_equivalence = norm_equivalence_from_json(*e);
  }
  if (const auto t = j.find("tail"); t != j.end() && !t->is_null()) {
    r.tail = tail_radius_from_json(*t);
  }
  if (const auto w = j.find("witness"); w != j.end() && !w->is_null()) {
    r.witness = witness_from_json(*w);
  }
  return r;
}

std::string grid_to_csv(const TwoChartGrid& grid) {
  std::string out;
  for (std::size_t k = 0; k < grid.dim(); ++k) {
    out += (k ? ",x_" : "x_") + std::to_string(k + 1);
  }
  out += '\n';
  char buf[40];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto p = grid.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", p[k]);
      if (k) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace uniquemax
