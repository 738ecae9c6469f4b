#include "desal/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>

namespace desal {

void NetworkModel::validate() const {
  if (n_nodes < 1) throw ConfigError("network: empty");
  if (static_cast<int>(lines.size()) != n_nodes - 1)
    throw ConfigError("network: not radial (|lines| != |nodes| - 1)");
  for (const auto& l : lines) {
    if (l.from < 0 || l.from >= n_nodes || l.to < 0 || l.to >= n_nodes)
      throw ConfigError("network: line endpoint out of range");
    if (l.s_max <= 0) throw ConfigError("network: non-positive line rating");
  }
  if (substation < 0 || substation >= n_nodes)
    throw ConfigError("network: substation node out of range");
  if (hdp_node < 0 || hdp_node >= n_nodes)
    throw ConfigError("network: hdp node out of range");
  (void)bfs_order();  // throws on disconnected topology
}

std::vector<int> NetworkModel::bfs_order() const {
  std::vector<std::vector<int>> adj(n_nodes);
  for (size_t i = 0; i < lines.size(); ++i) {
    adj[lines[i].from].push_back(static_cast<int>(i));
    adj[lines[i].to].push_back(static_cast<int>(i));
  }
  std::vector<int> order;
  std::vector<bool> seen(n_nodes, false);
  std::queue<int> q;
  q.push(substation);
  seen[substation] = true;
  while (!q.empty()) {
    const int j = q.front();
    q.pop();
    order.push_back(j);
    for (int li : adj[j]) {
      const int other = lines[li].from == j ? lines[li].to : lines[li].from;
      if (!seen[other]) {
        seen[other] = true;
        q.push(other);
      }
    }
  }
  if (static_cast<int>(order.size()) != n_nodes)
    throw ConfigError("network: disconnected node");
  return order;
}

std::vector<int> NetworkModel::parent_line() const {
  std::vector<std::vector<int>> adj(n_nodes);
  for (size_t i = 0; i < lines.size(); ++i) {
    adj[lines[i].from].push_back(static_cast<int>(i));
    adj[lines[i].to].push_back(static_cast<int>(i));
  }
  std::vector<int> parent(n_nodes, -1);
  std::vector<bool> seen(n_nodes, false);
  std::queue<int> q;
  q.push(substation);
  seen[substation] = true;
  while (!q.empty()) {
    const int j = q.front();
    q.pop();
    for (int li : adj[j]) {
      const int other = lines[li].from == j ? lines[li].to : lines[li].from;
      if (!seen[other]) {
        seen[other] = true;
        parent[other] = li;
        q.push(other);
      }
    }
  }
  return parent;
}

NetworkModel load_network(const std::string& path, int substation, int hdp_node,
                          double v_base_kv, double s_base_kva) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open network file: " + path);
  const double z_base = v_base_kv * v_base_kv * 1000.0 / s_base_kva;  // ohm

  NetworkModel net;
  net.substation = substation;
  net.hdp_node = hdp_node;
  net.v_base_kv = v_base_kv;
  net.s_base_kva = s_base_kva;

  int max_node = 0;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok[5];
    for (int i = 0; i < 5; ++i)
      if (!std::getline(ls, tok[i], ','))
        throw DataError(path + ": malformed row '" + line + "'");
    if (first) {
      first = false;
      try {
        (void)std::stoi(tok[0]);
      } catch (const std::exception&) {
        continue;  // header
      }
    }
    Line l;
    l.from = std::stoi(tok[0]);
    l.to = std::stoi(tok[1]);
    l.r = std::stod(tok[2]) / z_base;
    l.x = std::stod(tok[3]) / z_base;
    l.s_max = std::stod(tok[4]) / s_base_kva;
    max_node = std::max({max_node, l.from, l.to});
    net.lines.push_back(l);
  }
  net.n_nodes = max_node + 1;
  net.validate();
  return net;
}

std::vector<NodeLoad> load_peak_loads(const std::string& path, int n_nodes) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open peak load file: " + path);
  std::vector<NodeLoad> loads(n_nodes);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tok[3];
    for (int i = 0; i < 3; ++i)
      if (!std::getline(ls, tok[i], ','))
        throw DataError(path + ": malformed row '" + line + "'");
    if (first) {
      first = false;
      try {
        (void)std::stoi(tok[0]);
      } catch (const std::exception&) {
        continue;
      }
    }
    const int node = std::stoi(tok[0]);
    if (node < 0 || node >= n_nodes)
      throw DataError(path + ": node out of range in row '" + line + "'");
    loads[node].p += std::stod(tok[1]);
    loads[node].q += std::stod(tok[2]);
  }
  return loads;
}

std::vector<Violation> pv_check(double p, double q, double forecast,
                                double rating, double tol) {
  std::vector<Violation> v;
  auto bad = [&](const std::string& what, double value, double bound) {
    v.push_back({what, value, bound});
  };
  if (p < -tol) bad("negative PV active power", p, 0);
  if (p > forecast + tol) bad("PV active power above forecast", p, forecast);
  if (q < -tol) bad("negative PV reactive power", q, 0);
  if (q > rating + tol) bad("PV reactive power above rating", q, rating);
  const double lim = std::sqrt(2.0) * rating;
  if (q > -p + lim + tol) bad("PV inverter octagon violated (upper)", q, -p + lim);
  if (q < p - lim - tol) bad("PV inverter octagon violated (lower)", q, p - lim);
  return v;
}

PowerFlow lindistflow_solve(const NetworkModel& net,
                            const std::vector<NodeLoad>& injections) {
  if (static_cast<int>(injections.size()) != net.n_nodes)
    throw DataError("lindistflow_solve: injection size mismatch");
  const auto order = net.bfs_order();
  const auto parent = net.parent_line();

  PowerFlow flow;
  flow.line_p.assign(net.lines.size(), 0.0);
  flow.line_q.assign(net.lines.size(), 0.0);
  flow.v_sq.assign(net.n_nodes, net.v_sq_sub);

  // Lossless aggregation: each feeding line carries its subtree's load.
  std::vector<double> acc_p(net.n_nodes, 0.0), acc_q(net.n_nodes, 0.0);
  for (int j = 0; j < net.n_nodes; ++j) {
    acc_p[j] = injections[j].p;
    acc_q[j] = injections[j].q;
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int j = *it;
    if (parent[j] < 0) continue;
    const auto& pl = net.lines[parent[j]];
    const int up = (pl.to == j) ? pl.from : pl.to;
    const double sign = (pl.to == j) ? 1.0 : -1.0;
    flow.line_p[parent[j]] = sign * acc_p[j];
    flow.line_q[parent[j]] = sign * acc_q[j];
    acc_p[up] += acc_p[j];
    acc_q[up] += acc_q[j];
  }

  // Voltage drop along each parent line, parents before children.
  for (int j : order) {
    if (parent[j] < 0) continue;
    const auto& l = net.lines[parent[j]];
    const int up = (l.to == j) ? l.from : l.to;
    const double sign = (l.to == j) ? 1.0 : -1.0;
    const double p_pu = sign * flow.line_p[parent[j]] / net.s_base_kva;
    const double q_pu = sign * flow.line_q[parent[j]] / net.s_base_kva;
    flow.v_sq[j] = flow.v_sq[up] - 2.0 * (l.r * p_pu + l.x * q_pu);
  }
  return flow;
}

std::vector<Violation> check_network_limits(const PowerFlow& flow,
                                            const NetworkModel& net,
                                            double tol) {
  std::vector<Violation> v;
  auto bad = [&](const std::string& what, double value, double bound) {
    v.push_back({what, value, bound});
  };
  for (size_t li = 0; li < net.lines.size(); ++li) {
    const double s_max_kva = net.lines[li].s_max * net.s_base_kva;
    const double p = flow.line_p[li], q = flow.line_q[li];
    const std::string at = " on line " + std::to_string(li);
    if (std::abs(p) > s_max_kva + tol) bad("active line flow above rating" + at, p, s_max_kva);
    if (std::abs(q) > s_max_kva + tol) bad("reactive line flow above rating" + at, q, s_max_kva);
    const double oct = std::sqrt(2.0) * s_max_kva;
    if (q > p + oct + tol || q < p - oct - tol ||
        q > -p + oct + tol || q < -p - oct - tol)
      bad("octagonal line limit violated" + at, q, oct);
  }
  for (int j = 0; j < net.n_nodes; ++j) {
    if (flow.v_sq[j] < net.v_sq_min - tol)
      bad("voltage below minimum at node " + std::to_string(j), flow.v_sq[j], net.v_sq_min);
    if (flow.v_sq[j] > net.v_sq_max + tol)
      bad("voltage above maximum at node " + std::to_string(j), flow.v_sq[j], net.v_sq_max);
  }
  return v;
}

}  // namespace desal
