#include "output.hpp"

#include <cmath>
#include <cstdio>

namespace silico::cli {
namespace {

void write(std::string& out, const nlohmann::json& v, int indent, int level) {
  const bool pretty = indent >= 0;
  const auto newline = [&](int lvl) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * lvl), ' ');
  };
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        out += nlohmann::json(it.key()).dump();
        out += pretty ? ": " : ":";
        write(out, it.value(), indent, level + 1);
      }
      newline(level);
      out += '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        write(out, item, indent, level + 1);
      }
      newline(level);
      out += ']';
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += number17(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string number17(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump17(const nlohmann::json& value, int indent) {
  std::string out;
  write(out, value, indent, 0);
  return out;
}

std::string csv_document(const nlohmann::json& config,
                         const std::vector<std::string>& header,
                         const std::vector<std::vector<double>>& rows) {
  std::string out = "# config: " + dump17(config, -1) + "\n";
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j) out += ',';
    out += header[j];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      const double v = row[j];
      out += std::isfinite(v) ? number17(v) : (std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf"));
    }
    out += '\n';
  }
  return out;
}

}  // namespace silico::cli
