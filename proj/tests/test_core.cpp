#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "oracle/exact.hpp"
#include "thiele/core.hpp"
#include "thiele/newman.hpp"
#include "util.hpp"

using namespace thiele;
namespace ex = thiele::oracle;

TEST_CASE("SampleSet rejects invalid data") {
  CHECK_THROWS_AS(SampleSet({}, {}), InvalidInput);
  CHECK_THROWS_AS(SampleSet({0.0, 1.0}, {1.0}), InvalidInput);
  CHECK_THROWS_AS(SampleSet({0.0, 1.0, 0.0}, {1.0, 2.0, 3.0}), InvalidInput);
  CHECK_THROWS_AS(SampleSet({0.0, 1.0}, {1.0, std::nan("")}), InvalidInput);
  CHECK_THROWS_AS(SampleSet({0.0, 1.0}, {1.0, HUGE_VAL}), InvalidInput);
  CHECK_NOTHROW(SampleSet({0.0, std::nextafter(0.0, 1.0)}, {1.0, 1.0}));
}

TEST_CASE("ThieleModel invariants") {
  CHECK_THROWS_AS(ThieleModel({}, {}), InvalidInput);
  CHECK_THROWS_AS(ThieleModel({0.0}, {1.0, 2.0}), InvalidInput);
  CHECK_THROWS_AS(ThieleModel({0.0, 0.0}, {1.0, 2.0}), InvalidInput);
  CHECK_THROWS_AS(ThieleModel({0.0, 1.0}, {1.0, HUGE_VAL}), InvalidInput);
  CHECK_THROWS_AS(ThieleModel({0.0, 1.0}, {1.0, 0.0}), InvalidInput);
  CHECK_NOTHROW(ThieleModel({0.0}, {0.0}));
  CHECK_NOTHROW(ThieleModel({0.0, 1.0, 2.0}, {1.0, 0.0, 3.0}));
}

TEST_CASE("select_first_point") {
  CHECK(select_first_point(SampleSet({-1, 0, 1}, {1, 0, 1})) == 1);
  CHECK(select_first_point(SampleSet({1, 2}, {3, 3})) == 0);
  CHECK(select_first_point(SampleSet({1, 2, 3}, {-0.5, 0.5, -0.25})) == 2);
  const SampleSet nm = newman::newman_points(5);
  CHECK(nm.xs()[select_first_point(nm)] == 0.0);
}

TEST_CASE("fit_adaptive on 1/(1+x) at three points") {
  const SampleSet data({0, 1, 2}, {1.0, 1.0 / 2, 1.0 / 3});
  const auto [model, report] = fit_adaptive(data);

  const auto oracle = ex::greedy_fit(ex::exact(data.xs()), ex::exact(data.fs()));
  REQUIRE(model.order() == oracle.coeffs.size() - 1);
  CHECK(model.order() == 2);
  CHECK(model.nodes().front() == 2.0);
  for (std::size_t i = 0; i < oracle.coeffs.size(); ++i) {
    CHECK(model.nodes()[i] == oracle.nodes[i].get_d());
    CHECK(model.coeffs()[i] == doctest::Approx(oracle.coeffs[i].get_d()).epsilon(1e-14));
  }
  CHECK(std::abs(eval_cfrac(model, 4.0) - 0.2) / 0.2 <= 1e-12);
  CHECK_FALSE(report.stopped_early);
  CHECK(report.steps_taken == 2);
  REQUIRE(report.node_errors.size() == 3);
  for (double e : report.node_errors) CHECK(e <= 1e-15);
}

TEST_CASE("fit_adaptive on constant data stops at order 0") {
  const SampleSet data({-2, -1, 0.5, 3}, {4.25, 4.25, 4.25, 4.25});
  const auto [model, report] = fit_adaptive(data);
  CHECK(model.order() == 0);
  CHECK(model.nodes() == std::vector<double>{-2});
  CHECK(model.coeffs() == std::vector<double>{4.25});
  CHECK(report.stopped_early);
  CHECK(report.steps_taken == 0);
}

TEST_CASE("fit_adaptive on a line stops at order 1") {
  std::vector<double> xs, fs;
  for (int i = 0; i <= 10; ++i) {
    xs.push_back(-1.0 + 0.2 * i);
    fs.push_back(2.0 * xs.back() + 1.0);
  }
  const auto [model, report] = fit_adaptive(SampleSet(xs, fs));
  CHECK(model.order() == 1);
  CHECK(report.stopped_early);
  CHECK(*std::max_element(report.node_errors.begin(), report.node_errors.end()) < 1e-13);
}

TEST_CASE("fit_adaptive uses every Newman point") {
  for (int n = 5; n <= 50; ++n) {
    CAPTURE(n);
    const auto [model, report] = fit_adaptive(newman::newman_points(n));
    CHECK(model.order() == static_cast<std::size_t>(2 * n));
    CHECK_FALSE(report.stopped_early);
  }
}

TEST_CASE("fit_adaptive honours max_order") {
  const auto [model, report] = fit_adaptive(newman::newman_points(6), FitConfig{5e-15, 4});
  CHECK(model.order() == 4);
  CHECK_FALSE(report.stopped_early);
  CHECK_FALSE(report.diagnostics.empty());
}

TEST_CASE("fit_adaptive rejects a non-positive tolerance") {
  const SampleSet data({0, 1}, {0, 1});
  CHECK_THROWS_AS(fit_adaptive(data, FitConfig{0.0, {}}), InvalidInput);
  CHECK_THROWS_AS(fit_adaptive(data, FitConfig{-1.0, {}}), InvalidInput);
}

TEST_CASE("fit_fixed_order matches hand-computed inverse differences") {
  const SampleSet data({0, 1, 2}, {1.0, 1.0 / 2, 1.0 / 3});
  const ThieleModel model = fit_fixed_order(data);
  const auto exact = ex::inverse_differences(ex::exact(data.xs()), ex::exact(data.fs()));
  REQUIRE(exact);
  // phi_1[0,1] = -2, phi_1[0,2] = -3, phi_2[0,1,2] = -1 with exact data;
  // the doubles 1/3 and 1/2 shift these by rounding only.
  CHECK(model.nodes() == std::vector<double>{0, 1, 2});
  CHECK(model.coeffs()[0] == 1.0);
  CHECK(model.coeffs()[1] == -2.0);
  CHECK(model.coeffs()[2] == doctest::Approx(-1.0).epsilon(1e-15));
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(model.coeffs()[i] == doctest::Approx((*exact)[i].get_d()).epsilon(1e-15));
}

TEST_CASE("fit_fixed_order breaks down on Newman points") {
  for (int n = 1; n <= 12; ++n) {
    CAPTURE(n);
    CHECK_THROWS_AS(fit_fixed_order(newman::newman_points(n)), BreakdownError);
  }
}

TEST_CASE("fit_fixed_order breaks down on equal successive values") {
  try {
    fit_fixed_order(SampleSet({0, 1, 2}, {3, 3, 5}));
    FAIL("expected breakdown");
  } catch (const BreakdownError& e) {
    CHECK(e.step() == 1);
    CHECK(std::string(e.what()).find("denominator of zero was produced") != std::string::npos);
  }
}

TEST_CASE("fit_fixed_order breaks down on three collinear points") {
  CHECK_THROWS_AS(fit_fixed_order(SampleSet({0, 1, 2, 3}, {0, 1, 2, 7})), BreakdownError);
}

TEST_CASE("eval_cfrac") {
  const ThieleModel m({0, 1, 2}, {1, -2, -1});
  // 1 + 2 / (-2 + 1 / (-1)) = 1/3
  const auto exact = ex::eval({0, 1, 2}, {1, -2, -1}, 2);
  REQUIRE(exact);
  CHECK(*exact == ex::Rational(1, 3));
  CHECK(eval_cfrac(m, 2.0) == doctest::Approx(1.0 / 3).epsilon(1e-15));

  const ThieleModel c({0.75}, {-3.5});
  CHECK(eval_cfrac(c, 0.75) == -3.5);
  CHECK(eval_cfrac(c, 100.0) == -3.5);
}

TEST_CASE("eval_cfrac reproduces |x| at the Newman n=6 nodes") {
  const SampleSet data = newman::newman_points(6);
  const auto [model, report] = fit_adaptive(data);
  for (std::size_t i = 0; i < data.size(); ++i)
    CHECK(std::abs(eval_cfrac(model, data.xs()[i]) - std::abs(data.xs()[i])) <= 1e-10);
}

TEST_CASE("eval_cfrac_batch") {
  const ThieleModel m({0, 1, 2}, {1, -2, -1});
  CHECK(eval_cfrac_batch(m, {}).empty());
  const std::vector<double> one{0.3};
  CHECK(eval_cfrac_batch(m, one) == std::vector<double>{eval_cfrac(m, 0.3)});
  const std::vector<double> xs{-0.7, 0.25, 3.5};
  const auto ys = eval_cfrac_batch(m, xs);
  REQUIRE(ys.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(std::bit_cast<std::uint64_t>(ys[i]) == std::bit_cast<std::uint64_t>(eval_cfrac(m, xs[i])));
}

namespace {

void check_fit_properties(const SampleSet& data, const FitConfig& cfg,
                          bool allow_unattainable = false) {
  const auto [model, report] = fit_adaptive(data, cfg);
  const auto& z = model.nodes();
  const auto& a = model.coeffs();

  // finiteness
  for (double c : a) REQUIRE(std::isfinite(c));
  // order bound
  CHECK(model.order() <= data.size() - 1);
  // interpolation at selected nodes
  for (double node : z) {
    const auto it = std::find(data.xs().begin(), data.xs().end(), node);
    REQUIRE(it != data.xs().end());
    const double f = data.fs()[static_cast<std::size_t>(it - data.xs().begin())];
    const double v = eval_cfrac(model, node);
    if (std::isnan(v) && allow_unattainable) {
      // 0/0 at a node: numerator and denominator share the factor (x - node)
      // and the datum is unattainable. The exact greedy fit must agree.
      const auto exf = ex::greedy_fit(ex::exact(data.xs()), ex::exact(data.fs()));
      REQUIRE(exf.coeffs.size() == a.size());
      CHECK_FALSE(ex::eval(exf.nodes, exf.coeffs, ex::Rational(node)).has_value());
      continue;
    }
    CHECK(std::abs(v - f) <= 1e-10 * std::max(1.0, std::abs(f)));
  }

  // greedy step validity: the point added at step k was missed by C_{k-1}
  // by at least the stopping threshold of that step
  for (std::size_t k = 1; k <= model.order(); ++k) {
    double scale = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i)
      if (std::find(z.begin(), z.begin() + static_cast<long>(k), data.xs()[i]) ==
          z.begin() + static_cast<long>(k))
        scale = std::max(scale, std::abs(data.fs()[i]));
    const double threshold = scale > 0 ? cfg.tol * scale : cfg.tol;
    const auto it = std::find(data.xs().begin(), data.xs().end(), z[k]);
    const double f = data.fs()[static_cast<std::size_t>(it - data.xs().begin())];
    const double e = std::abs(test_util::raw_eval(z, a, k, z[k]) - f);
    CHECK((std::isnan(e) || e >= threshold));
    CHECK(threshold > 0);
  }

  // stopping soundness
  if (report.stopped_early) {
    double scale = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (std::find(z.begin(), z.end(), data.xs()[i]) != z.end()) continue;
      scale = std::max(scale, std::abs(data.fs()[i]));
      worst = std::max(worst, report.node_errors[i]);
    }
    CHECK(worst < (scale > 0 ? cfg.tol * scale : cfg.tol));
  }

  // determinism
  const auto again = fit_adaptive(data, cfg);
  CHECK(again.model == model);
}

}  // namespace

TEST_CASE("fit_adaptive properties over random rational data") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    CAPTURE(trial);
    const auto data = test_util::random_rational_samples(rng, 3 + trial % 12);
    check_fit_properties(data, FitConfig{});
  }
}

TEST_CASE("fit_adaptive properties over random piecewise data") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    CAPTURE(trial);
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 25);
    const double kink = u(rng);
    const double s1 = 3 * u(rng), s2 = 3 * u(rng), c = u(rng);
    std::vector<double> xs = test_util::distinct_uniform(rng, n, -1.0, 1.0);
    std::vector<double> fs;
    for (double x : xs) fs.push_back(x < kink ? c + s1 * (x - kink) : c + s2 * (x - kink));
    check_fit_properties(SampleSet(xs, fs), FitConfig{});
  }
}

TEST_CASE("fit_adaptive properties with integer-valued data and ties") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> small(-3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    CAPTURE(trial);
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
    std::vector<double> xs, fs;
    for (std::size_t i = 0; i < n; ++i) {
      xs.push_back(static_cast<double>(i) - 4.0);
      fs.push_back(small(rng));
    }
    check_fit_properties(SampleSet(xs, fs), FitConfig{}, true);
  }
}

namespace {

bool has_diagnostic(const FitReport& r, std::string_view needle) {
  return std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
                     [&](const std::string& d) { return d.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("fit_adaptive rejects a zero final inverse difference") {
  // Two zeros at x = 1, 2 cannot be matched by a degree-(1,1) fraction that
  // also passes through (0, 1); the only remaining step would end in a_2 = 0.
  const auto [model, report] = fit_adaptive(SampleSet({0, 1, 2}, {1, 0, 0}));
  CHECK(model.order() == 1);
  CHECK(model.nodes() == std::vector<double>{1, 0});
  CHECK(model.coeffs() == std::vector<double>{0, -1});
  CHECK_FALSE(report.stopped_early);
  CHECK(has_diagnostic(report, "zero final inverse difference"));
  CHECK(has_diagnostic(report, "no admissible candidate"));
}

TEST_CASE("fit_adaptive skips a candidate whose inverse difference rounds to infinity") {
  // Collinear data: with a tiny tolerance the rounding error of C_1 at
  // x = -0.667... qualifies it, while its inverse difference divides by an
  // exact zero.
  const SampleSet data({0.40944992437746475, -0.66772875937185516, -0.77483994031695957,
                        0.18259243540078685},
                       {0.039593576723641749, -0.47151495913016467, -0.52233794671089995,
                        -0.068047616689840579});
  const auto [model, report] = fit_adaptive(data, FitConfig{1e-30, {}});
  CHECK(has_diagnostic(report, "non-finite inverse difference"));
  for (double c : model.coeffs()) CHECK(std::isfinite(c));
  CHECK(std::find(model.nodes().begin(), model.nodes().end(), -0.66772875937185516) ==
        model.nodes().end());
}
