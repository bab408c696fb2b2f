#include "config_text.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace xsim {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string json_scalar_to_string(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v.get<double>());
    return buf;
  }
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) {
      if (!out.empty()) out += ",";
      out += json_scalar_to_string(e);
    }
    return out;
  }
  throw std::invalid_argument("config: unsupported JSON value type");
}

KeyValueMap from_json(const nlohmann::json& j) {
  const nlohmann::json& obj = j.contains("config") ? j.at("config") : j;
  if (!obj.is_object()) throw std::invalid_argument("config: JSON root must be an object");
  KeyValueMap kv;
  for (auto it = obj.begin(); it != obj.end(); ++it)
    kv[it.key()] = json_scalar_to_string(it.value());
  return kv;
}

} // namespace

KeyValueMap parse_config_text(const std::string& text) {
  // JSON documents start with '{'
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return from_json(nlohmann::json::parse(text));
    break;
  }
  KeyValueMap kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not of the form key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config: empty key on line " + std::to_string(lineno));
    kv[key] = value;
  }
  return kv;
}

KeyValueMap parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

double get_double(const KeyValueMap& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw std::invalid_argument("config: missing key '" + key + "'");
  try {
    size_t pos =0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("config: key '" + key + "' is not a number");
  }
}

double get_double_or(const KeyValueMap& kv, const std::string& key, double fallback) {
  return kv.count(key) ? get_double(kv, key) : fallback;
}

long long get_int_or(const KeyValueMap& kv, const std::string& key, long long fallback) {
  if (!kv.count(key)) return fallback;
  const double v = get_double(kv, key);
  const long long i = static_cast<long long>(v);
  if (static_cast<double>(i) != v)
    throw std::invalid_argument("config: key '" + key + "' must be an integer");
  return i;
}

std::string get_string_or(const KeyValueMap& kv, const std::string& key,
                          const std::string& fallback) {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(value);
  while (std::getline(in, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<double> get_double_list(const KeyValueMap& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw std::invalid_argument("config: missing key '" + key + "'");
  std::vector<double> out;
  for (const std::string& s : split_list(it->second)) {
    try {
      out.push_back(std::stod(s));
    } catch (...) {
      throw std::invalid_argument("config: key '" + key + "' has a non-numeric element");
    }
  }
  if (out.empty()) throw std::invalid_argument("config: key '" + key + "' is an empty list");
  return out;
}

std::vector<std::string> get_string_list(const KeyValueMap& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw std::invalid_argument("config: missing key '" + key + "'");
  return split_list(it->second);
}

} // namespace xsim
