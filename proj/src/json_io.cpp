#include "wickchaos/json_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace wickchaos {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_value(std::ostream& os, const nlohmann::json& value, int indent, int depth) {
  const std::string pad(static_cast<size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<size_t>(indent * depth), ' ');
  switch (value.type()) {
    case nlohmann::json::value_t::object: {
      if (value.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << nlohmann::json(it.key()).dump() << ": ";
        write_value(os, it.value(), indent, depth + 1);
      }
      os << '\n' << close_pad << '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (value.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& item : value) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        write_value(os, item, indent, depth + 1);
      }
      os << '\n' << close_pad << ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double d = value.get<double>();
      if (!std::isfinite(d))
        throw std::invalid_argument("write_json: non-finite number in report");
      os << format_double(d);
      return;
    }
    default:
      os << value.dump();
      return;
  }
}

}  // namespace

void write_json(std::ostream& os, const nlohmann::json& value, int indent) {
  write_value(os, value, indent, 0);
  os << '\n';
}

std::string json_to_string(const nlohmann::json& value, int indent) {
  std::ostringstream os;
  write_json(os, value, indent);
  return os.str();
}

}  // namespace wickchaos
