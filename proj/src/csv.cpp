#include "ecochain/csv.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

namespace ecochain {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string emit_csv(const Trajectory& traj) {
  if (traj.states.empty()) throw ValidationError("cannot write an empty trajectory");
  std::string out = "t,P,S,I,V\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out += format_number(traj.times[i]);
    for (Eigen::Index k = 0; k < 4; ++k) {
      out += ',';
      out += format_number(traj.states[i][k]);
    }
    out += '\n';
  }
  return out;
}

namespace {

void append_row(std::string& out, const BranchRow& row, std::string_view crossing) {
  out += format_number(row.value);
  out += ',' + format_number(row.rho.rho1);
  out += ',' + format_number(row.rho.rho2);
  for (const auto& e : row.entries) {
    out += e.feasible ? ",1," : ",0,";
    out += e.kind ? std::string(kind_name(*e.kind)) : std::string("infeasible");
  }
  out += ',';
  out += crossing;
  out += '\n';
}

}  // namespace

std::string emit_csv(const BranchTable& table) {
  if (table.rows.empty()) throw ValidationError("cannot write an empty branch table");
  std::string out = "param,rho1,rho2";
  for (const auto& e : table.rows.front().entries) {
    const auto label = std::string(label_name(e.label));
    out += ',' + label + "_feasible," + label + "_class";
  }
  out += ",crossing\n";

  std::size_t c = 0;
  for (const auto& row : table.rows) {
    while (c < table.crossings.size() && table.crossings[c].value < row.value) {
      append_row(out, table.crossings[c].row, table.crossings[c].threshold);
      ++c;
    }
    append_row(out, row, "none");
  }
  for (; c < table.crossings.size(); ++c) append_row(out, table.crossings[c].row, table.crossings[c].threshold);
  return out;
}

TrajectoryTable parse_trajectory_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "t,P,S,I,V") throw ValidationError("trajectory CSV header must be t,P,S,I,V");
  TrajectoryTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<double, 5> values{};
    std::size_t field = 0;
    std::size_t start = 0;
    while (true) {
      const auto end = line.find(',', start);
      const std::string cell = line.substr(start, end == std::string::npos ? std::string::npos : end - start);
      if (field >= values.size()) throw ValidationError("too many fields on line " + std::to_string(line_no));
      try {
        std::size_t used = 0;
        values[field] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ValidationError("bad number \"" + cell + "\" on line " + std::to_string(line_no));
      }
      ++field;
      if (end == std::string::npos) break;
      start = end + 1;
    }
    if (field != values.size()) throw ValidationError("expected 5 fields on line " + std::to_string(line_no));
    table.times.push_back(values[0]);
    table.states.emplace_back(values[1], values[2], values[3], values[4]);
  }
  return table;
}

}  // namespace ecochain
