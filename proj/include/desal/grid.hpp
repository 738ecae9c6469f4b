#pragma once

#include <string>
#include <vector>

#include "desal/domain.hpp"
#include "desal/pump.hpp"

// Co-located PV envelope and LinDistFlow radial network model.
//
// Internally everything is per-unit on (v_base_kv, s_base_kva); the CSV
// interfaces carry ohms and kW/kvar.

namespace desal {

struct Line {
  int from = 0;
  int to = 0;
  double r = 0;      // pu
  double x = 0;      // pu
  double s_max = 0;  // pu apparent limit
};

struct NetworkModel {
  int n_nodes = 0;
  std::vector<Line> lines;  // radial: n_nodes - 1 lines
  int substation = 0;
  int hdp_node = 0;
  double v_sq_sub = 1.0;   // pu^2
  double v_sq_min = 0.9025;  // 0.95^2
  double v_sq_max = 1.1025;  // 1.05^2
  double v_base_kv = 12.66;
  double s_base_kva = 1000.0;

  void validate() const;  // throws on non-radial / disconnected topology
  // Parent-oriented traversal order (children after parents).
  std::vector<int> bfs_order() const;
  std::vector<int> parent_line() const;  // line index feeding each node, -1 at substation
};

NetworkModel load_network(const std::string& path, int substation, int hdp_node,
                          double v_base_kv, double s_base_kva);

struct NodeLoad {
  double p = 0;  // kW
  double q = 0;  // kvar
};

// node -> peak load; scaled by an hourly profile to form the base load.
std::vector<NodeLoad> load_peak_loads(const std::string& path, int n_nodes);

struct PvConfig {
  double rating = 1000.0;  // kW
};

std::vector<Violation> pv_check(double p, double q, double forecast,
                                double rating, double tol = 1e-6);

struct PowerFlow {
  std::vector<double> line_p;  // kW, oriented from->to
  std::vector<double> line_q;  // kvar
  std::vector<double> v_sq;    // pu^2
};

// Lossless radial sweep: line flows aggregate downstream injections,
// voltages drop along the unique path from the substation.
// injections[j] is the net load drawn at node j (kW/kvar).
PowerFlow lindistflow_solve(const NetworkModel& net,
                            const std::vector<NodeLoad>& injections);

std::vector<Violation> check_network_limits(const PowerFlow& flow,
                                            const NetworkModel& net,
                                            double tol = 1e-6);

}  // namespace desal
