// Copyright 2026 The detlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "detlab/toml.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "detlab/errors.hpp"

namespace detlab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("toml: line " + std::to_string(line) + ": " + msg);
}

void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

std::string parse_string(const std::string& s, std::size_t& i, int line) {
  // Opening quote already seen.
  std::string out;
  ++i;
  while (i < s.size() && s[i] != '"') {
    if (s[i] == '\\') {
      ++i;
      if (i >= s.size()) fail(line, "dangling escape");
      switch (s[i]) {
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        default: fail(line, "unsupported escape");
      }
    } else {
      out.push_back(s[i]);
    }
    ++i;
  }
  if (i >= s.size()) fail(line, "unterminated string");
  ++i;
  return out;
}

json parse_value(const std::string& s, std::size_t& i, int line);

json parse_array(const std::string& s, std::size_t& i, int line) {
  json arr = json::array();
  ++i;  // consume '['
  skip_ws(s, i);
  if (i < s.size() && s[i] == ']') {
    ++i;
    return arr;
  }
  while (true) {
    skip_ws(s, i);
    arr.push_back(parse_value(s, i, line));
    skip_ws(s, i);
    if (i < s.size() && s[i] == ',') {
      ++i;
      continue;
    }
    if (i < s.size() && s[i] == ']') {
      ++i;
      return arr;
    }
    fail(line, "expected ',' or ']' in array");
  }
}

json parse_value(const std::string& s, std::size_t& i, int line) {
  skip_ws(s, i);
  if (i >= s.size()) fail(line, "missing value");
  const char c = s[i];
  if (c == '"') return json(parse_string(s, i, line));
  if (c == '[') return parse_array(s, i, line);
  // bare token: number or boolean
  std::size_t start = i;
  while (i < s.size() && s[i] != ',' && s[i] != ']' && s[i] != '#' && s[i] != ' ' &&
         s[i] != '\t')
    ++i;
  std::string tok = s.substr(start, i - start);
  if (tok == "true") return json(true);
  if (tok == "false") return json(false);
  // Integer first, double otherwise.
  {
    char* end = nullptr;
    const long long v = std::strtoll(tok.c_str(), &end, 10);
    if (end != nullptr && *end == '\0') return json(v);
  }
  {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != nullptr && *end == '\0') return json(v);
  }
  fail(line, "cannot parse value '" + tok + "'");
}

json* descend(json& root, const std::string& dotted, int line, bool create) {
  json* cur = &root;
  std::size_t start = 0;
  while (start <= dotted.size()) {
    const std::size_t dotpos = dotted.find('.', start);
    const std::string part =
        dotted.substr(start, dotpos == std::string::npos ? std::string::npos : dotpos - start);
    if (part.empty()) fail(line, "empty table-name component");
    if (!cur->contains(part)) {
      if (!create) fail(line, "unknown table '" + part + "'");
      (*cur)[part] = json::object();
    }
    cur = &(*cur)[part];
    if (!cur->is_object()) fail(line, "'" + part + "' is not a table");
    if (dotpos == std::string::npos) break;
    start = dotpos + 1;
  }
  return cur;
}

}  // namespace

json toml_parse(const std::string& text) {
  json root = json::object();
  json* table = &root;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::size_t i = 0;
    skip_ws(raw, i);
    if (i >= raw.size() || raw[i] == '#') continue;
    if (raw[i] == '[') {
      const std::size_t close = raw.find(']', i);
      if (close == std::string::npos) fail(line, "unterminated table header");
      const std::string name = raw.substr(i + 1, close - i - 1);
      table = descend(root, name, line, true);
      i = close + 1;
      skip_ws(raw, i);
      if (i < raw.size() && raw[i] != '#') fail(line, "trailing characters after table header");
      continue;
    }
    // key = value
    std::size_t kstart = i;
    if (raw[i] == '"') {
      fail(line, "quoted keys are not supported");
    }
    while (i < raw.size() && is_bare_key_char(raw[i])) ++i;
    const std::string key = raw.substr(kstart, i - kstart);
    if (key.empty()) fail(line, "expected key");
    skip_ws(raw, i);
    if (i >= raw.size() || raw[i] != '=') fail(line, "expected '=' after key '" + key + "'");
    ++i;
    json value = parse_value(raw, i, line);
    skip_ws(raw, i);
    if (i < raw.size() && raw[i] != '#') fail(line, "trailing characters after value");
    if (key.find('.') != std::string::npos) fail(line, "dotted keys are not supported");
    if (table->contains(key)) fail(line, "duplicate key '" + key + "'");
    (*table)[key] = std::move(value);
  }
  return root;
}

}  // namespace detlab
