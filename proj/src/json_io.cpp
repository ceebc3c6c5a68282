#include "oblong/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace oblong {

std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

void dump_rec(const nlohmann::ordered_json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad_in;
        out += nlohmann::ordered_json(it.key()).dump();  // escaped key
        out += ": ";
        dump_rec(it.value(), out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        dump_rec(j[i], out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? fmt_g17(x) : "null";
      return;
    }
    default:
      out += j.dump();  // strings (escaped), integers, booleans, null
      return;
  }
}

}  // namespace

std::string dump_json17(const nlohmann::ordered_json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  out += "\n";
  return out;
}

}  // namespace oblong
