#include "mpw/common.hpp"
#include "mpw/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace mpw::cli {

namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_json(const ScenarioResult& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.inputs) j["inputs"][k] = v;
  j["outputs"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.outputs) {
    std::visit([&](const auto& x) { j["outputs"][k] = x; }, v);
  }
  j["pass"] = r.pass ? nlohmann::ordered_json(*r.pass) : nlohmann::ordered_json(nullptr);
  j["runtime_ms"] = r.runtime_ms;
  return j.dump(2) + "\n";
}

std::string to_csv(const ScenarioResult& r) {
  std::vector<std::pair<std::string, const std::vector<double>*>> columns;
  for (const auto& [k, v] : r.outputs) {
    if (const auto* a = std::get_if<std::vector<double>>(&v)) columns.emplace_back(k, a);
  }
  std::ostringstream out;
  if (columns.empty()) {
    bool first = true;
    for (const auto& [k, v] : r.outputs) {
      out << (first ? "" : ",") << csv_cell(k);
      first = false;
    }
    out << "\n";
    first = true;
    for (const auto& [k, v] : r.outputs) {
      out << (first ? "" : ",");
      first = false;
      if (const auto* d = std::get_if<double>(&v)) {
        out << number(*d);
      } else {
        out << csv_cell(std::get<std::string>(v));
      }
    }
    out << "\n";
    return out.str();
  }
  std::size_t rows = 0;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out << (c ? "," : "") << csv_cell(columns[c].first);
    rows = std::max(rows, columns[c].second->size());
  }
  out << "\n";
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) out << ",";
      if (i < columns[c].second->size()) out << number((*columns[c].second)[i]);
    }
    out << "\n";
  }
  return out.str();
}

void emit(const ScenarioResult& r, Format format, const std::string& path) {
  const std::string text = format == Format::json ? to_json(r) : to_csv(r);
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    require(static_cast<bool>(std::cout), ErrorKind::io, "failed to write to standard output");
    return;
  }
  std::ofstream file(path, std::ios::binary);
  require(file.is_open(), ErrorKind::io, "cannot open output file: " + path);
  file << text;
  file.close();
  require(!file.fail(), ErrorKind::io, "failed to write output file: " + path);
}

}  // namespace mpw::cli
