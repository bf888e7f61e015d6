// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "generators.hpp"
#include "uniquemax/alternating.hpp"
#include "uniquemax/certifier.hpp"
#include "uniquemax/error.hpp"
#include "uniquemax/falsifier.hpp"
#include "uniquemax/families.hpp"
#include "uniquemax/serialize.hpp"
#include "uniquemax/witness.hpp"

using namespace uniquemax;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  Json artifacts = Json::array();
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double gaussian_lipschitz(const Subspace& s, const CoefVector& a) {
  double L = 0.0;
  for (std::size_t j = 0; j < s.atom_count(); ++j) {
    const auto& b = std::get<GaussianBump>(s.atoms()[j].family());
    L += std::abs(a[j]) * std::sqrt(2.0) * std::exp(-0.5) / b.width;
  }
  return L;
}

Outcome witness_certified() {
  Outcome o;
  double worst_dx = 0.0, worst_dv = 0.0;
  int multi = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    const TwoChartGrid g = build_grid(n, 33);
    const SampledSubspace sampled(witness_basis(n), g);
    testgen::Rng rng(100 + n);
    for (int t = 0; t < 100; ++t) {
      const CoefVector a = testgen::coefs(rng, n);
      const MaxCertificate c = certify_max(sampled, a);
      const double an = a.norm();
      double dx = 0.0;
      for (std::size_t i = 0; i < n; ++i) dx += std::pow(c.argmax[i] - a[i] / an, 2);
      worst_dx = std::max(worst_dx, std::sqrt(dx));
      worst_dv = std::max(worst_dv, std::abs(c.value - an) / an);
      multi += c.cluster_count != 1;
      o.artifacts.push_back(to_json(c));
    }
  }
  o.pass = multi == 0 && worst_dx <= 1e-6 && worst_dv <= 1e-9;
  o.detail = fmt("non-unique=%g max|dx|=%.3g max rel dv=%.3g", multi, worst_dx, worst_dv);
  return o;
}

Outcome witness_decay() {
  Outcome o;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 5; ++n) {
    testgen::Rng rng(200 + n);
    const Subspace s = witness_basis(n);
    for (int t = 0; t < 10; ++t) {
      const CoefVector a = testgen::coefs(rng, n);
      const Element e = s.combine(a);
      const double an = a.norm();
      for (double R : {1.0, 2.0, 4.0, 8.0}) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = R * a[i] / an;
        double sup = std::abs(e(x));
        for (int k = 1; k < 1000; ++k) {
          auto u = testgen::unit_vector(rng, n);
          for (double& c : u) c *= R;
          sup = std::max(sup, std::abs(e(u)));
        }
        const double rel = std::abs(sup - an / R) / (an / R);
        worst = std::max(worst, rel);
        o.artifacts.push_back(Json::array({R, sup}));
      }
    }
  }
  o.pass = worst <= 1e-9;
  o.detail = fmt("max rel deviation=%.3g", worst);
  return o;
}

Outcome brute_force_agreement() {
  Outcome o;
  testgen::Rng rng(300);
  double worst_ratio = 0.0;
  int checked = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    const std::size_t m = static_cast<std::size_t>(rng.integer(2, 4));
    const Subspace s = testgen::gaussian_subspace(rng, n, m);
    const CoefVector a = testgen::coefs(rng, m);
    const TwoChartGrid g = build_grid(n, 33);
    const MaxCertificate c = certify_max(s, a, g);
    o.artifacts.push_back(to_json(c));
    const double w = 4.0;
    const int samples = static_cast<int>(std::ceil(2.0 * w / g.cell_size())) + 1;
    const auto [x, v] = brute_force_argmax(s, a, w, samples);
    // A maximum at infinity means the element is nonpositive; the box maximum
    // is then bounded by the same Lipschitz-cell term around zero.
    const double reference = c.at_infinity ? std::max(v, 0.0) : v;
    const double bound = 2.0 * gaussian_lipschitz(s, a) * g.cell_diameter();
    worst_ratio = std::max(worst_ratio, std::abs(c.value - reference) / bound);
    ++checked;
  }
  o.pass = worst_ratio <= 1.0;
  o.detail = fmt("elements=%g max |diff|/bound=%.3g", checked, worst_ratio);
  return o;
}

// Criteria 4 and 5 share the extraction outputs.
struct Extracted {
  std::vector<Subspace> inputs;
  std::vector<ExtractionResult> results;
};

Extracted run_extractions(const TwoChartGrid& g) {
  Extracted e;
  for (std::uint64_t k = 0; k < 20; ++k) {
    testgen::Rng rng(400 + k);
    const std::size_t m = 2 + k % 5;
    e.inputs.push_back(testgen::gaussian_subspace(rng, 2, m));
    e.results.push_back(extract_alternating(e.inputs.back(), g, k));
  }
  return e;
}

Outcome extraction_alternates(const Extracted& e, const TwoChartGrid& g) {
  Outcome o;
  int wrong_dim = 0, failures = 0;
  for (std::size_t k = 0; k < e.results.size(); ++k) {
    const ExtractionResult& r = e.results[k];
    const std::size_t m = e.inputs[k].dimension();
    wrong_dim += r.subspace.dimension() != m - 1;
    failures += r.probe_failures;
    // Independent probes, evaluated pointwise on the grid.
    testgen::Rng rng(450 + k);
    for (int t = 0; t < 1000; ++t) {
      const Element el = r.subspace.combine(testgen::coefs(rng, m - 1));
      bool neg = false, pos = false;
      for (std::size_t i = 0; i < g.size() && !(neg && pos); ++i) {
        const double v = el(g.point(i));
        neg = neg || v < 0.0;
        pos = pos || v > 0.0;
      }
      failures += !(neg && pos);
    }
    o.artifacts.push_back(to_json(r.subspace));
  }
  o.pass = wrong_dim == 0 && failures == 0;
  o.detail = fmt("subspaces=%g wrong dim=%g non-alternating probes=%g",
                 static_cast<double>(e.results.size()), wrong_dim, failures);
  return o;
}

Outcome bounds_and_tail(const Extracted& e, const TwoChartGrid& g) {
  Outcome o;
  int bad = 0;
  std::string first_error;
  for (std::size_t k = 0; k < e.results.size(); ++k) {
    const Subspace& s = e.results[k].subspace;
    try {
      const SignBounds b = sign_bounds(s, g, 200, k);
      const NormEquivalence eq = estimate_norm_equivalence(s, g, 200, k);
      const TailRadius t = tail_radius(s, b, eq);
      const Subspace restricted = restrict_to_ball(s, t.radius, g);
      const bool ok = b.sup_min < 0.0 && b.inf_max > 0.0 && t.far_field_samples == 1000 &&
                      t.far_field_probes == 100 && t.far_field_max <= t.threshold &&
                      gram_report(restricted, g).rank == s.dimension();
      bad += !ok;
      o.artifacts.push_back({{"bounds", to_json(b)}, {"tail", to_json(t)}});
    } catch (const Error& err) {
      ++bad;
      if (first_error.empty()) first_error = err.what();
    }
  }
  o.pass = bad == 0;
  o.detail = fmt("subspaces=%g failed=%g", static_cast<double>(e.results.size()), bad);
  if (!first_error.empty()) o.detail += " first error: " + first_error;
  return o;
}

Outcome falsifier_family(Family family, std::size_t n, std::size_t dim) {
  Outcome o;
  const TwoChartGrid g = build_grid(n, 33);
  int found = 0, loose = 0;
  double worst_gap = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Subspace s = make_candidate(family, n, dim, seed);
    FalsifyOptions opts;
    opts.seed = seed;
    opts.budget = 10000;
    opts.tol_gap = 1e-3;
    opts.family = to_string(family);
    const ExperimentReport r = falsify(s, g, opts);
    o.artifacts.push_back(to_json(r));
    bool good = false;
    if (r.verdict == Verdict::kViolationFound && r.witness && r.witness->gap <= 1e-3) {
      good = reverify(s, *r.witness, n, 33, opts.tol_gap, 3.0 * g.cell_diameter()).passed;
    }
    if (good) {
      ++found;
    } else {
      worst_gap = std::max(worst_gap, r.search.best_gap);
      loose += r.search.best_gap > 1e-2;
    }
  }
  o.pass = found >= 4 && loose == 0;
  o.detail = fmt("verified violations=%g/5 worst other gap=%.3g", found, worst_gap);
  return o;
}

Outcome scale_equivariance() {
  Outcome o;
  testgen::Rng rng(900);
  int argmax_mismatch = 0;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    const Subspace s = t % 4 == 0 ? witness_basis(n)
                                  : testgen::gaussian_subspace(rng, n, rng.integer(2, 4));
    const CoefVector a = testgen::coefs(rng, s.dimension());
    const double lambda = std::exp(rng.uniform(-6.0, 6.0));
    const TwoChartGrid g = build_grid(n, n == 3 ? 17 : 33);
    const MaxCertificate c1 = certify_max(s, a, g);
    const MaxCertificate c2 = certify_max(s, a.scaled(lambda), g);
    argmax_mismatch += !(c1.argmax == c2.argmax);
    const double scale = std::abs(lambda * c1.value);
    if (scale > 0.0) worst = std::max(worst, std::abs(c2.value - lambda * c1.value) / scale);
    else worst = std::max(worst, std::abs(c2.value));
  }
  o.pass = argmax_mismatch == 0 && worst <= 1e-12;
  o.detail = fmt("argmax mismatches=%g max rel value error=%.3g", argmax_mismatch, worst);
  return o;
}

std::vector<Outcome> first_seven() {
  std::vector<Outcome> out;
  const auto timed = [&](const std::function<Outcome()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.detail += fmt(" (%.1fs)", dt);
    out.push_back(std::move(o));
  };
  timed(witness_certified);
  timed(witness_decay);
  timed(brute_force_agreement);
  const TwoChartGrid g2 = build_grid(2, 33);
  Extracted e;
  try {
    e = run_extractions(g2);
  } catch (const std::exception& err) {
    const std::string msg = std::string("extraction error: ") + err.what();
    for (int k = 0; k < 2; ++k) out.push_back({false, msg, Json::array()});
  }
  if (out.size() == 3) {
    timed([&] { return extraction_alternates(e, g2); });
    timed([&] { return bounds_and_tail(e, g2); });
  }
  timed([] { return falsifier_family(Family::kGaussians, 1, 3); });
  timed([] { return falsifier_family(Family::kWitnessGaussians, 2, 4); });
  return out;
}

}  // namespace

int main() {
  bool all = true;
  const auto report = [&](int k, const Outcome& o) {
    std::printf("criterion %d: %s  %s\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  };

  const std::vector<Outcome> first = first_seven();
  for (std::size_t k = 0; k < first.size(); ++k) report(static_cast<int>(k) + 1, first[k]);

  const std::vector<Outcome> second = first_seven();
  Outcome rerun;
  int differing = 0;
  for (std::size_t k = 0; k < first.size(); ++k) {
    differing += first[k].artifacts.dump() != second[k].artifacts.dump();
  }
  rerun.pass = differing == 0;
  rerun.detail = fmt("criteria with differing output bytes=%g", differing);
  report(8, rerun);

  report(9, scale_equivariance());
  return all ? 0 : 1;
}
