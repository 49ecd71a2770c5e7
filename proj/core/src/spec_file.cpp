#include "floquet3/spec_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace floquet3 {

namespace {

using nlohmann::json;

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

double number_at(const json& obj, const char* key, const std::string& where,
                 bool required = true) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw SpecParseError(where + ": missing \"" + key + "\"");
    return 0.0;
  }
  if (!it->is_number()) {
    throw SpecParseError(where + ": \"" + key + "\" must be a number");
  }
  return it->get<double>();
}

std::vector<FourierMode> parse_modes(const json& arr, const std::string& key) {
  if (!arr.is_array()) throw SpecParseError("\"" + key + "\" must be a list");
  std::vector<FourierMode> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& m = arr[i];
    const std::string where = key + "[" + std::to_string(i) + "]";
    if (!m.is_object()) throw SpecParseError(where + ": expected {n, re, im}");
    for (const auto& [k, v] : m.items()) {
      if (k != "n" && k != "re" && k != "im") {
        throw SpecParseError(where + ": unknown key \"" + k + "\"");
      }
    }
    auto n_it = m.find("n");
    if (n_it == m.end() || !n_it->is_number_integer()) {
      throw SpecParseError(where + ": \"n\" must be an integer");
    }
    FourierMode mode;
    mode.n = n_it->get<int>();
    mode.value = cplx(number_at(m, "re", where), number_at(m, "im", where, false));
    out.push_back(mode);
  }
  return out;
}

std::vector<double> parse_reals(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SpecParseError(std::string("piecewise: missing \"") + key + "\"");
  if (!it->is_array()) throw SpecParseError(std::string("piecewise: \"") + key + "\" must be a list");
  std::vector<double> out;
  for (const auto& v : *it) {
    if (!v.is_number()) {
      throw SpecParseError(std::string("piecewise: \"") + key + "\" must hold numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

CoefficientDescription parse_coefficient_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SpecParseError(e.what(), line_of(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!doc.is_object()) throw SpecParseError("top level must be an object", 1);

  CoefficientDescription out;
  for (const auto& [key, value] : doc.items()) {
    if (key == "p_modes") {
      out.p_modes = parse_modes(value, key);
    } else if (key == "q_modes") {
      out.q_modes = parse_modes(value, key);
    } else if (key == "piecewise") {
      if (!value.is_object()) throw SpecParseError("\"piecewise\" must be an object");
      for (const auto& [k, v] : value.items()) {
        if (k != "breakpoints" && k != "p_values" && k != "q_values") {
          throw SpecParseError("piecewise: unknown key \"" + k + "\"");
        }
      }
      PiecewiseProfile pw;
      pw.breakpoints = parse_reals(value, "breakpoints");
      pw.p_values = parse_reals(value, "p_values");
      pw.q_values = parse_reals(value, "q_values");
      out.piecewise = std::move(pw);
    } else if (key == "description") {
      continue;
    } else {
      throw SpecParseError("unknown key \"" + key + "\"");
    }
  }
  if (!out.piecewise && !doc.contains("p_modes") && !doc.contains("q_modes")) {
    throw SpecParseError("spec needs \"p_modes\"/\"q_modes\" or \"piecewise\"");
  }
  return out;
}

CoefficientDescription load_coefficient_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecParseError("cannot open spec file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_coefficient_spec(buf.str());
}

PeriodicCoefficients load_coefficients(const std::filesystem::path& path) {
  return make_coefficients(load_coefficient_spec(path));
}

}  // namespace floquet3
