#include "json_format.hpp"

#include <cmath>
#include <cstdio>

#include "interlace/errors.hpp"

namespace interlace::cli {

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out.push_back('"');
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out.push_back(ch);
        }
    }
  }
  out.push_back('"');
}

void write(std::string& out, const nlohmann::ordered_json& j, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  const std::string pad_in(2 * static_cast<std::size_t>(depth + 1), ' ');
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::null:
      out += "null";
      break;
    case nlohmann::ordered_json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case nlohmann::ordered_json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case nlohmann::ordered_json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case nlohmann::ordered_json::value_t::number_float:
      out += format_number(j.get<double>());
      break;
    case nlohmann::ordered_json::value_t::string:
      append_escaped(out, j.get<std::string>());
      break;
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      // Scalar-only arrays stay on one line; they read better for vectors.
      bool scalars = true;
      for (const auto& item : j) scalars = scalars && !item.is_structured();
      out.push_back('[');
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += scalars ? ", " : ",";
        if (!scalars) {
          out.push_back('\n');
          out += pad_in;
        }
        write(out, item, depth + 1);
        first = false;
      }
      if (!scalars) {
        out.push_back('\n');
        out += pad;
      }
      out.push_back(']');
      break;
    }
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out.push_back(',');
        out.push_back('\n');
        out += pad_in;
        append_escaped(out, it.key());
        out += ": ";
        write(out, it.value(), depth + 1);
        first = false;
      }
      out.push_back('\n');
      out += pad;
      out.push_back('}');
      break;
    }
    default:
      fail(ErrorCode::invalid_argument, "unsupported JSON value in output document");
  }
}

}  // namespace

std::string format_number(double x) {
  if (!std::isfinite(x))
    fail(ErrorCode::invalid_argument, "non-finite number in output document");
  if (x == 0.0) return "0";  // collapse negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_deterministic(const nlohmann::ordered_json& doc) {
  std::string out;
  write(out, doc, 0);
  out.push_back('\n');
  return out;
}

}  // namespace interlace::cli
