#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "desal/domain.hpp"
#include "desal/grid.hpp"

using namespace desal;

namespace {
const std::string kFixture = DESAL_FIXTURE_DIR;

NetworkModel fixture_network() {
  return load_network(kFixture + "/network.csv", 0, 5, 12.66, 1000.0);
}

std::vector<NodeLoad> fixture_peaks(const NetworkModel& net) {
  return load_peak_loads(kFixture + "/peak_load.csv", net.n_nodes);
}
}  // namespace

TEST_CASE("33-bus fixture loads and validates as a radial feeder") {
  const auto net = fixture_network();
  CHECK(net.n_nodes == 33);
  CHECK(net.lines.size() == 32);
  net.validate();
}

TEST_CASE("superposition holds to 1e-9") {
  const auto net = fixture_network();
  const auto peaks = fixture_peaks(net);
  std::vector<NodeLoad> single(net.n_nodes);
  single[20].p = 150.0;
  single[20].q = 60.0;

  const auto fa = lindistflow_solve(net, peaks);
  const auto fb = lindistflow_solve(net, single);
  std::vector<NodeLoad> sum(net.n_nodes);
  for (int j = 0; j < net.n_nodes; ++j) {
    sum[j].p = peaks[j].p + single[j].p;
    sum[j].q = peaks[j].q + single[j].q;
  }
  const auto fs = lindistflow_solve(net, sum);
  for (size_t li = 0; li < net.lines.size(); ++li) {
    CHECK(std::abs(fs.line_p[li] - fa.line_p[li] - fb.line_p[li]) <= 1e-9);
    CHECK(std::abs(fs.line_q[li] - fa.line_q[li] - fb.line_q[li]) <= 1e-9);
  }
  for (int j = 0; j < net.n_nodes; ++j) {
    const double da = net.v_sq_sub - fa.v_sq[j];
    const double db = net.v_sq_sub - fb.v_sq[j];
    const double ds = net.v_sq_sub - fs.v_sq[j];
    CHECK(std::abs(ds - da - db) <= 1e-9);
  }
}

TEST_CASE("voltage drop telescopes along the feeding path to 1e-9") {
  const auto net = fixture_network();
  const auto flow = lindistflow_solve(net, fixture_peaks(net));
  const auto parent = net.parent_line();
  for (int j = 0; j < net.n_nodes; ++j) {
    // Sum the per-line drops from j back to the substation.
    double v = net.v_sq_sub;
    int node = j;
    while (parent[node] >= 0) {
      const auto& l = net.lines[parent[node]];
      const int up = (l.to == node) ? l.from : l.to;
      const double sign = (l.to == node) ? 1.0 : -1.0;
      v -= 2.0 * (l.r * sign * flow.line_p[parent[node]] / net.s_base_kva +
                  l.x * sign * flow.line_q[parent[node]] / net.s_base_kva);
      node = up;
    }
    // v now accumulated from substation down; compare directly.
    CHECK(std::abs(v - flow.v_sq[j]) <= 1e-9);
  }
}

TEST_CASE("nominal loading keeps every voltage within limits") {
  const auto net = fixture_network();
  const auto flow = lindistflow_solve(net, fixture_peaks(net));
  CHECK(check_network_limits(flow, net).empty());
  // Independent matrix-form oracle: v_j = v_sub - 2 * sum over shared path
  // of (r R + x X) load sensitivities.
  const auto parent = net.parent_line();
  auto path_lines = [&](int j) {
    std::vector<int> ls;
    while (parent[j] >= 0) {
      ls.push_back(parent[j]);
      const auto& l = net.lines[parent[j]];
      j = (l.to == j) ? l.from : l.to;
    }
    return ls;
  };
  const auto peaks = fixture_peaks(net);
  for (int j = 0; j < net.n_nodes; ++j) {
    double v = net.v_sq_sub;
    const auto pj = path_lines(j);
    for (int k = 0; k < net.n_nodes; ++k) {
      if (peaks[k].p == 0 && peaks[k].q == 0) continue;
      const auto pk = path_lines(k);
      double r_sh = 0, x_sh = 0;
      for (int lj : pj)
        for (int lk : pk)
          if (lj == lk) {
            r_sh += net.lines[lj].r;
            x_sh += net.lines[lj].x;
          }
      v -= 2.0 * (r_sh * peaks[k].p + x_sh * peaks[k].q) / net.s_base_kva;
    }
    CHECK(std::abs(v - flow.v_sq[j]) <= 1e-9);
  }
}

TEST_CASE("octagonal limit checker vs direct-inequality oracle, 10k points") {
  NetworkModel net;
  net.n_nodes = 2;
  net.lines.push_back({0, 1, 0.01, 0.01, 0.2});  // 200 kVA on 1000 kVA base
  net.substation = 0;
  net.v_sq_min = 0.0;
  net.v_sq_max = 10.0;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-400.0, 400.0);
  const double s = 200.0;
  const double oct = std::sqrt(2.0) * s;
  int flagged = 0;
  for (int i = 0; i < 10000; ++i) {
    PowerFlow flow;
    flow.line_p = {u(rng)};
    flow.line_q = {u(rng)};
    flow.v_sq = {1.0, 1.0};
    const double p = flow.line_p[0], q = flow.line_q[0];
    const bool oracle_ok = std::abs(p) <= s && std::abs(q) <= s &&
                           std::abs(p + q) <= oct && std::abs(p - q) <= oct;
    const bool checker_ok = check_network_limits(flow, net, 0.0).empty();
    CHECK(checker_ok == oracle_ok);
    flagged += !oracle_ok;
  }
  CHECK(flagged > 0);  // the sample actually exercises both outcomes
}

TEST_CASE("pv_check enforces forecast, rating, and inverter octagon") {
  CHECK(pv_check(500.0, 100.0, 800.0, 1000.0).empty());
  CHECK(!pv_check(900.0, 0.0, 800.0, 1000.0).empty());   // above forecast
  CHECK(!pv_check(-1.0, 0.0, 800.0, 1000.0).empty());    // negative
  CHECK(!pv_check(0.0, 1100.0, 800.0, 1000.0).empty());  // q above rating
  // Octagon cut: p + q > sqrt(2) * rating with both under their box caps.
  CHECK(!pv_check(780.0, 780.0, 800.0, 1000.0).empty());
}

TEST_CASE("malformed topology is rejected") {
  NetworkModel net;
  net.n_nodes = 3;
  net.lines.push_back({0, 1, 0.01, 0.01, 1.0});
  // Disconnected node 2.
  CHECK_THROWS_AS(net.validate(), ConfigError);
}
