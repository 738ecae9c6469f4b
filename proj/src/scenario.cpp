#include "desal/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "json.hpp"

namespace desal {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Inverse standard-normal CDF via Newton iterations on the CDF; accurate to
// machine precision over the range reached here (|z| <= ~4).
double normal_quantile(double p) {
  p = std::clamp(p, 1e-12, 1.0 - 1e-12);
  double x = 0.0;
  for (int it = 0; it < 60; ++it) {
    const double err = normal_cdf(x) - p;
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    const double step = err / std::max(pdf, 1e-300);
    x -= std::clamp(step, -1.0, 1.0);
    if (std::abs(err) < 1e-15) break;
  }
  return x;
}

// Quantile of the standard normal truncated to [-2, 2].
double truncated_quantile(double u) {
  const double lo = normal_cdf(-2.0), hi = normal_cdf(2.0);
  return normal_quantile(lo + u * (hi - lo));
}

}  // namespace

void CorrelationSpec::validate() const {
  if (pv_decay < 0 || pv_decay >= 1 || price_decay < 0 || price_decay >= 1 ||
      std::abs(pv_price) >= 1)
    throw DataError(
        "scenario correlation: implied correlation matrix is not positive "
        "definite (need decays in [0,1) and |pv_price| < 1)");
}

std::vector<Scenario> generate_scenarios(const MarketSeries& forecast,
                                         double pv_rating, double sell_ratio,
                                         const DeviationRanges& ranges,
                                         const CorrelationSpec& corr, int n,
                                         uint64_t seed) {
  if (n < 1) throw DataError("generate_scenarios: need at least one scenario");
  corr.validate();
  const int T = static_cast<int>(forecast.pv_forecast.size());
  if (static_cast<int>(forecast.buy_price.size()) != T)
    throw DataError("generate_scenarios: series length mismatch");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double a = corr.pv_decay, b = corr.price_decay, rho = corr.pv_price;
  const double cross = std::sqrt(1.0 - rho * rho);

  std::vector<Scenario> out;
  out.reserve(n);
  for (int s = 0; s < n; ++s) {
    Scenario sc;
    sc.probability = 1.0 / n;
    sc.pv.resize(T);
    sc.buy_price.resize(T);
    sc.sell_price.resize(T);

    // Latent Gaussian AR(1) pair with cross-correlated innovations; unit
    // marginal variance is preserved by the sqrt(1 - decay^2) loading.
    double z_pv = 0, z_pr = 0;
    for (int t = 0; t < T; ++t) {
      const double e1 = gauss(rng);
      const double e2 = rho * e1 + cross * gauss(rng);
      if (t == 0) {
        z_pv = e1;
        z_pr = e2;
      } else {
        z_pv = a * z_pv + std::sqrt(1.0 - a * a) * e1;
        z_pr = b * z_pr + std::sqrt(1.0 - b * b) * e2;
      }
      // Truncated-normal marginals: deviation range read as +/- 2 sigma.
      const double q_pv = truncated_quantile(normal_cdf(z_pv));
      const double q_pr = truncated_quantile(normal_cdf(z_pr));
      const double pv = forecast.pv_forecast[t] *
                        (1.0 + ranges.pv_fraction * q_pv / 2.0);
      const double price = forecast.buy_price[t] *
                           (1.0 + ranges.price_fraction * q_pr / 2.0);
      sc.pv[t] = std::clamp(pv, 0.0, pv_rating);
      sc.buy_price[t] = std::max(price, 0.0);
      sc.sell_price[t] = sell_ratio * sc.buy_price[t];
    }
    out.push_back(std::move(sc));
  }
  return out;
}

std::vector<Scenario> reduce_scenarios(const std::vector<Scenario>& scenarios,
                                       int k, uint64_t seed) {
  (void)seed;  // PAM build/swap below is fully deterministic
  const int n = static_cast<int>(scenarios.size());
  if (k <= 0) throw DataError("reduce_scenarios: k must be positive");
  if (k > n) throw DataError("reduce_scenarios: k exceeds the scenario count");
  const int T = static_cast<int>(scenarios.front().pv.size());
  const int D = 2 * T;

  // Per-dimension z-score normalization of the concatenated trajectories.
  std::vector<std::vector<double>> pts(n, std::vector<double>(D));
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < T; ++t) {
      pts[i][t] = scenarios[i].pv[t];
      pts[i][T + t] = scenarios[i].buy_price[t];
    }
  }
  for (int d = 0; d < D; ++d) {
    double mean = 0;
    for (int i = 0; i < n; ++i) mean += pts[i][d];
    mean /= n;
    double var = 0;
    for (int i = 0; i < n; ++i) var += (pts[i][d] - mean) * (pts[i][d] - mean);
    const double sd = std::sqrt(var / std::max(1, n - 1));
    for (int i = 0; i < n; ++i)
      pts[i][d] = sd > 1e-12 ? (pts[i][d] - mean) / sd : 0.0;
  }

  std::vector<std::vector<float>> dist(n, std::vector<float>(n, 0.0f));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double s = 0;
      for (int d = 0; d < D; ++d) {
        const double diff = pts[i][d] - pts[j][d];
        s += diff * diff;
      }
      dist[i][j] = dist[j][i] = static_cast<float>(std::sqrt(s));
    }

  // PAM BUILD: greedily add the medoid with the largest cost reduction.
  std::vector<int> medoids;
  std::vector<double> d_near(n, 0.0);
  {
    int best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int c = 0; c < n; ++c) {
      double cost = 0;
      for (int i = 0; i < n; ++i) cost += dist[c][i];
      if (cost < best_cost) {
        best_cost = cost;
        best = c;
      }
    }
    medoids.push_back(best);
    for (int i = 0; i < n; ++i) d_near[i] = dist[best][i];
  }
  while (static_cast<int>(medoids.size()) < k) {
    int best = -1;
    double best_gain = -1;
    for (int c = 0; c < n; ++c) {
      if (std::find(medoids.begin(), medoids.end(), c) != medoids.end())
        continue;
      double gain = 0;
      for (int i = 0; i < n; ++i)
        gain += std::max(0.0, d_near[i] - dist[c][i]);
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    medoids.push_back(best);
    for (int i = 0; i < n; ++i)
      d_near[i] = std::min(d_near[i], static_cast<double>(dist[best][i]));
  }

  // PAM SWAP until no single exchange lowers the total distance.
  auto total_cost = [&](const std::vector<int>& med) {
    double cost = 0;
    for (int i = 0; i < n; ++i) {
      double dmin = std::numeric_limits<double>::infinity();
      for (int c : med) dmin = std::min(dmin, static_cast<double>(dist[c][i]));
      cost += dmin;
    }
    return cost;
  };
  double cost = total_cost(medoids);
  bool improved = true;
  while (improved) {
    improved = false;
    for (size_t mi = 0; mi < medoids.size() && !improved; ++mi) {
      for (int c = 0; c < n && !improved; ++c) {
        if (std::find(medoids.begin(), medoids.end(), c) != medoids.end())
          continue;
        std::vector<int> cand = medoids;
        cand[mi] = c;
        const double cand_cost = total_cost(cand);
        if (cand_cost < cost - 1e-12) {
          medoids = std::move(cand);
          cost = cand_cost;
          improved = true;
        }
      }
    }
  }
  std::sort(medoids.begin(), medoids.end());

  // Assignment shares become the probabilities, renormalized exactly.
  std::vector<double> weight(medoids.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    int best = 0;
    for (size_t c = 1; c < medoids.size(); ++c)
      if (dist[medoids[c]][i] < dist[medoids[best]][i]) best = static_cast<int>(c);
    weight[best] += scenarios[i].probability;
  }
  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);

  std::vector<Scenario> out;
  for (size_t c = 0; c < medoids.size(); ++c) {
    Scenario sc = scenarios[medoids[c]];
    sc.probability = weight[c] / total;
    out.push_back(std::move(sc));
  }
  return out;
}

std::string scenarios_to_json(const std::vector<Scenario>& scenarios) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& sc : scenarios)
    j.push_back({{"probability", sc.probability},
                 {"pv", sc.pv},
                 {"buy_price", sc.buy_price},
                 {"sell_price", sc.sell_price}});
  return j.dump(2) + "\n";
}

std::vector<Scenario> scenarios_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("scenarios: invalid JSON: ") + e.what());
  }
  if (!j.is_array()) throw DataError("scenarios: document must be an array");
  std::vector<Scenario> out;
  for (const auto& e : j) {
    Scenario sc;
    try {
      sc.probability = e.at("probability").get<double>();
      sc.pv = e.at("pv").get<std::vector<double>>();
      sc.buy_price = e.at("buy_price").get<std::vector<double>>();
      sc.sell_price = e.at("sell_price").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& ex) {
      throw DataError(std::string("scenarios: malformed entry: ") + ex.what());
    }
    out.push_back(std::move(sc));
  }
  return out;
}

}  // namespace desal
