#include "json_out.hpp"

#include <cmath>
#include <cstdio>

namespace toric::cli {

namespace {

void write(const nlohmann::ordered_json& value, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (value.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + nlohmann::ordered_json(key).dump() + ": ";
        write(item, depth + 1, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(value[i], depth + 1, out);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float:
      out += format_number(value.get<double>());
      return;
    default:
      out += value.dump();
      return;
  }
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return "null";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string to_json_text(const nlohmann::ordered_json& value) {
  std::string out;
  write(value, 0, out);
  out += "\n";
  return out;
}

}  // namespace toric::cli
