#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "desal/domain.hpp"
#include "desal/scenario.hpp"

using namespace desal;

namespace {
MarketSeries bell_forecast(int T = 24) {
  MarketSeries m;
  for (int t = 0; t < T; ++t) {
    m.buy_price.push_back(0.05 + 0.04 * std::sin(0.26 * t));
    m.sell_price.push_back(0.5 * m.buy_price.back());
    const double x = (t - 12.0) / 4.0;
    m.pv_forecast.push_back(900.0 * std::exp(-x * x));
    m.water_demand.push_back(58.0);
  }
  return m;
}

// Spearman rank correlation of two samples.
double rank_corr(const std::vector<double>& a, const std::vector<double>& b) {
  const int n = static_cast<int>(a.size());
  auto ranks = [&](const std::vector<double>& v) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int i, int j) { return v[i] < v[j]; });
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[idx[i]] = i;
    return r;
  };
  const auto ra = ranks(a), rb = ranks(b);
  const double mean = (n - 1) / 2.0;
  double num = 0, da = 0, db = 0;
  for (int i = 0; i < n; ++i) {
    num += (ra[i] - mean) * (rb[i] - mean);
    da += (ra[i] - mean) * (ra[i] - mean);
    db += (rb[i] - mean) * (rb[i] - mean);
  }
  return num / std::sqrt(da * db);
}
}  // namespace

TEST_CASE("generation is deterministic under a fixed seed") {
  const auto m = bell_forecast();
  DeviationRanges rg;
  CorrelationSpec corr;
  const auto a = generate_scenarios(m, 1000.0, 0.5, rg, corr, 50, 42);
  const auto b = generate_scenarios(m, 1000.0, 0.5, rg, corr, 50, 42);
  const auto c = generate_scenarios(m, 1000.0, 0.5, rg, corr, 50, 43);
  REQUIRE(a.size() == 50);
  CHECK(a[7].pv == b[7].pv);
  CHECK(a[7].buy_price == b[7].buy_price);
  CHECK(a[7].pv != c[7].pv);
}

TEST_CASE("marginal clamps and the sell-price ratio hold") {
  const auto m = bell_forecast();
  DeviationRanges rg;
  rg.pv_fraction = 0.5;
  rg.price_fraction = 0.5;
  const auto sc = generate_scenarios(m, 1000.0, 0.5, rg, {}, 200, 1);
  for (const auto& s : sc)
    for (int t = 0; t < 24; ++t) {
      CHECK(s.pv[t] >= 0.0);
      CHECK(s.pv[t] <= 1000.0);
      CHECK(s.buy_price[t] >= 0.0);
      CHECK(s.sell_price[t] == doctest::Approx(0.5 * s.buy_price[t]));
    }
}

TEST_CASE("empirical rank correlations match the spec within 0.05 at n=2000") {
  const auto m = bell_forecast();
  CorrelationSpec corr;
  corr.pv_decay = 0.8;
  corr.price_decay = 0.7;
  corr.pv_price = -0.4;
  DeviationRanges rg;
  const auto sc = generate_scenarios(m, 1000.0, 0.5, rg, corr, 2000, 7);
  const int t = 12;  // midday: PV deviations unclamped on both sides
  std::vector<double> pv_t, pv_t1, pr_t, pr_t1;
  for (const auto& s : sc) {
    pv_t.push_back(s.pv[t]);
    pv_t1.push_back(s.pv[t + 1]);
    pr_t.push_back(s.buy_price[t]);
    pr_t1.push_back(s.buy_price[t + 1]);
  }
  CHECK(std::abs(rank_corr(pv_t, pv_t1) - corr.pv_decay) < 0.05);
  CHECK(std::abs(rank_corr(pr_t, pr_t1) - corr.price_decay) < 0.05);
  CHECK(std::abs(rank_corr(pv_t, pr_t) - corr.pv_price) < 0.05);
}

TEST_CASE("invalid correlation specs are rejected") {
  CorrelationSpec bad;
  bad.pv_price = 1.5;
  CHECK_THROWS_AS(bad.validate(), DataError);
}

TEST_CASE("k-medoids reduction returns input members with unit total weight") {
  const auto m = bell_forecast();
  const auto sc = generate_scenarios(m, 1000.0, 0.5, {}, {}, 200, 11);
  const auto red = reduce_scenarios(sc, 10, 11);
  REQUIRE(red.size() == 10);
  double wsum = 0;
  for (const auto& r : red) {
    wsum += r.probability;
    CHECK(r.probability > 0.0);
    const bool member =
        std::any_of(sc.begin(), sc.end(), [&](const Scenario& s) {
          return s.pv == r.pv && s.buy_price == r.buy_price;
        });
    CHECK(member);
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reduction is deterministic and keeps distinct medoids") {
  const auto m = bell_forecast();
  const auto sc = generate_scenarios(m, 1000.0, 0.5, {}, {}, 300, 5);
  const auto a = reduce_scenarios(sc, 8, 9);
  const auto b = reduce_scenarios(sc, 8, 9);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].pv == b[i].pv);
    CHECK(a[i].probability == b[i].probability);
  }
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j) CHECK(a[i].pv != a[j].pv);
}

TEST_CASE("scenario JSON round trip preserves values and weights") {
  const auto m = bell_forecast();
  auto sc = generate_scenarios(m, 1000.0, 0.5, {}, {}, 20, 3);
  const auto red = reduce_scenarios(sc, 5, 3);
  const auto text = scenarios_to_json(red);
  const auto back = scenarios_from_json(text);
  REQUIRE(back.size() == red.size());
  for (size_t i = 0; i < red.size(); ++i) {
    CHECK(back[i].probability == doctest::Approx(red[i].probability));
    for (int t = 0; t < 24; ++t) {
      CHECK(back[i].pv[t] == doctest::Approx(red[i].pv[t]));
      CHECK(back[i].buy_price[t] == doctest::Approx(red[i].buy_price[t]));
    }
  }
}
