#pragma once

#include <map>
#include <string>
#include <vector>

// Flat key = value configuration documents. Plain text uses one `key = value`
// per line with `#` comments; JSON input (a manifest or a hand-written object)
// is accepted too, so a run can be reproduced straight from its manifest.

namespace xsim {

using KeyValueMap = std::map<std::string, std::string>;

KeyValueMap parse_config_text(const std::string& text);
KeyValueMap parse_config_file(const std::string& path);

// typed access; throws std::invalid_argument naming the key on failure
double get_double(const KeyValueMap& kv, const std::string& key);
double get_double_or(const KeyValueMap& kv, const std::string& key, double fallback);
long long get_int_or(const KeyValueMap& kv, const std::string& key, long long fallback);
std::string get_string_or(const KeyValueMap& kv, const std::string& key,
                          const std::string& fallback);
std::vector<double> get_double_list(const KeyValueMap& kv, const std::string& key);
std::vector<std::string> get_string_list(const KeyValueMap& kv, const std::string& key);

std::vector<std::string> split_list(const std::string& value);

} // namespace xsim
