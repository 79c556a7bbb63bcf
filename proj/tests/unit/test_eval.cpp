#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "stancekit/eval.hpp"
#include "../support/testkit.hpp"

using namespace stancekit;
using namespace stancekit::eval;
using S = Stance;

TEST_CASE("strict and soft hand example") {
  const std::vector<S> gold{S::Agree, S::Neutral, S::Disagree, S::Agree};
  const std::vector<S> pred{S::Neutral, S::Neutral, S::Disagree, S::Agree};
  const auto strict = strict_f1(gold, pred);
  CHECK(strict[S::Agree].tp == 1);
  CHECK(strict[S::Agree].fp == 0);
  CHECK(strict[S::Agree].fn == 1);
  CHECK(strict[S::Agree].f1 == 2.0 / 3.0);
  const auto soft = soft_f1(gold, {true, false, false, false}, pred);
  CHECK(soft[S::Agree].f1 == 1.0);
  CHECK(soft[S::Neutral].f1 == 1.0);
  const auto same = soft_f1(gold, {false, false, false, false}, pred);
  CHECK(same.to_json()["classes"] == strict.to_json()["classes"]);
}

TEST_CASE("perfect and empty classes") {
  const std::vector<S> g{S::Agree, S::Agree, S::Neutral};
  const auto r = strict_f1(g, g);
  CHECK(r[S::Agree].f1 == 1.0);
  CHECK(r[S::Neutral].f1 == 1.0);
  CHECK(r[S::Disagree].f1 == 0.0);
  CHECK(r[S::Disagree].empty);
  CHECK(r.accuracy == 1.0);
  CHECK_THROWS_AS(strict_f1(g, std::vector<S>{S::Agree}), std::invalid_argument);
}

TEST_CASE("random reports: confusion rows and soft >= strict") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> c(0, 2);
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < 500; ++k) {
    std::vector<S> g, p;
    std::vector<bool> td;
    for (int i = 0; i < 25; ++i) {
      g.push_back(static_cast<S>(c(rng)));
      p.push_back(static_cast<S>(c(rng)));
      td.push_back(g.back() != S::Neutral && coin(rng));
    }
    const auto a = strict_f1(g, p), b = soft_f1(g, td, p);
    for (auto s : kAllStances) {
      std::size_t row = 0;
      for (auto x : a.confusion[stance_index(s)]) row += x;
      CHECK(row == static_cast<std::size_t>(std::count(g.begin(), g.end(), s)));
      const auto& cs = a[s];
      const double f = cs.precision + cs.recall == 0 ? 0 : 2 * cs.precision * cs.recall / (cs.precision + cs.recall);
      CHECK(cs.f1 == doctest::Approx(f));
    }
    CHECK(b[S::Agree].f1 >= a[S::Agree].f1);
    CHECK(b[S::Disagree].f1 >= a[S::Disagree].f1);
  }
}

TEST_CASE("accuracy") {
  const std::vector<int> a{1, 2, 3, 4}, b{1, 2, 0, 0}, c{0, 0, 0, 0};
  CHECK(accuracy<int>(a, a) == 1.0);
  CHECK(accuracy<int>(a, b) == 0.5);
  CHECK(accuracy<int>(a, c) == 0.0);
}

TEST_CASE("chi-square") {
  CHECK(chi2_statistic(10, 0, 10, 20) == doctest::Approx(40.0 / 3.0).epsilon(1e-12));
  CHECK(chi2_statistic(2, 4, 3, 6) == 0.0);
  CHECK(chi2_statistic(5, 5, 0, 0) == 0.0);

  const std::vector<features::FeatureVector> units{{{"a", 1}}, {{"a", 1}}, {{"b", 1}}, {{"b", 1}, {"c", 1}}};
  const std::vector<std::string> cls{"agree", "agree", "disagree", "disagree"};
  const auto ranked = chi2_rank(units, cls, "agree");
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].feature == "a");
  CHECK(ranked[0].direction == '+');
  CHECK(ranked[1].feature == "b");
  CHECK(ranked[1].direction == '-');
  std::ostringstream out;
  write_chi2_tsv(ranked, out);
  CHECK(out.str().starts_with("a\t4.000000\tagree+\n"));
}

TEST_CASE("paired t-test") {
  const std::vector<double> a{0.5, 0.6, 0.7};
  const auto same = paired_t_test(a, a);
  CHECK(same.p == 1.0);
  CHECK_FALSE(same.degenerate);
  const std::vector<double> b{1.5, 1.6, 1.7};
  const auto deg = paired_t_test(b, a);
  CHECK(deg.degenerate);
  CHECK(deg.p == 0.0);
  CHECK_THROWS_AS(paired_t_test(std::vector<double>{1.0}, std::vector<double>{2.0}), std::invalid_argument);

  std::mt19937_64 rng(12);
  std::normal_distribution<double> n(0, 1);
  for (int k = 0; k < 30; ++k) {
    std::vector<double> x, y;
    const std::size_t m = 3 + static_cast<std::size_t>(k % 8);
    for (std::size_t i = 0; i < m; ++i) {
      x.push_back(n(rng));
      y.push_back(n(rng) + 0.3);
    }
    const auto r = paired_t_test(x, y);
    const double oracle = 2 * (1 - testkit::t_cdf_quadrature(std::abs(r.t), static_cast<double>(r.df)));
    CHECK(std::abs(r.p - oracle) < 1e-6);
  }
  for (double t : {-3.0, -0.4, 0.0, 1.1, 5.0})
    CHECK(std::abs(student_t_cdf(t, 4) - testkit::t_cdf_quadrature(t, 4)) < 1e-9);
  CHECK(incomplete_beta(2, 3, 0.0) == 0.0);
  CHECK(incomplete_beta(2, 3, 1.0) == 1.0);
  // I_x(1, 1) = x.
  CHECK(incomplete_beta(1, 1, 0.3) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("mean and sample sd") {
  const std::vector<double> xs{1, 2, 3, 4};
  const auto m = mean_sd(xs);
  CHECK(m.mean == 2.5);
  CHECK(m.sd == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(mean_sd(std::vector<double>{7}).sd == 0.0);
}
