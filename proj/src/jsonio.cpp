#include "bandopt/jsonio.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace bandopt {

namespace {

using nlohmann::json;

void append_number(std::string& out, double v) {
  if (std::isnan(v)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  out += buf;
  // Keep the token a valid JSON number (inf is not).
  if (out.ends_with("-inf")) {
    out.resize(out.size() - 4);
    out += "-1e308";
  } else if (out.ends_with("inf")) {
    out.resize(out.size() - 3);
    out += "1e308";
  }
}

void dump_rec(const json& node, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (node.type()) {
    case json::value_t::object: {
      if (node.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = node.begin(); it != node.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (node.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& el : node) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump_rec(el, out, indent, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::number_float:
      append_number(out, node.get<double>());
      return;
    default:
      out += node.dump();
      return;
  }
}

}  // namespace

std::string dump_json12(const json& doc, int indent) {
  std::string out;
  dump_rec(doc, out, indent, 0);
  return out;
}

json to_json(const Solution& sol) {
  json band{{"d", sol.policy.d},
            {"D", sol.policy.D},
            {"U", sol.policy.U},
            {"u", sol.policy.u},
            {"alpha", sol.policy.alpha}};
  json residuals = json::object();
  for (const auto& [name, value] : sol.residuals) residuals[name] = value;
  return json{{"band", band},
              {"gamma", sol.gamma},
              {"A_star", sol.A_star},
              {"B_star", sol.B_star},
              {"x1", sol.x1},
              {"x2", sol.x2},
              {"B_bar", sol.B_bar},
              {"B1", sol.B1},
              {"B2", sol.B2},
              {"residuals", residuals},
              {"reflected", sol.reflected}};
}

json to_json(const VerifyReport& rep) {
  return json{{"poisson_min", rep.poisson_min},
              {"lbK_max", rep.lbK_max},
              {"lbL_max", rep.lbL_max},
              {"fprime_bound", rep.fprime_bound},
              {"pass", rep.pass},
              {"tol", rep.tol},
              {"grid", json{{"lo", rep.grid_lo},
                            {"hi", rep.grid_hi},
                            {"points", rep.grid_points},
                            {"kink_offset_applied", rep.kink_offset_applied}}},
              {"poisson_min_fd", rep.poisson_min_fd}};
}

json to_json(const SimResult& res) {
  return json{{"ac_mean", res.ac_mean},   {"ac_stderr", res.ac_stderr},
              {"n_up", res.n_up},         {"n_down", res.n_down},
              {"y1_rate", res.y1_rate},   {"y2_rate", res.y2_rate}};
}

json evaluation_to_json(const Evaluation& ev) {
  json coeffs = json::object();
  for (const auto& [name, value] : ev.coefficients) coeffs[name] = value;
  return json{{"gamma", ev.gamma},
              {"Vprime_m", ev.Vprime_m},
              {"m", ev.m},
              {"coefficients", coeffs}};
}

}  // namespace bandopt
