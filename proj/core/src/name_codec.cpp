// Copyright 2026 The r2sim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "r2sim/name_codec.hpp"

#include <algorithm>

namespace r2sim {

const char*
to_string(NameErrc code)
{
  switch (code) {
  case NameErrc::MissingR2Prefix: return "MissingR2Prefix";
  case NameErrc::MissingSeparator: return "MissingSeparator";
  case NameErrc::EmptyDataName: return "EmptyDataName";
  case NameErrc::MalformedParams: return "MalformedParams";
  case NameErrc::MalformedName: return "MalformedName";
  case NameErrc::InvalidComponent: return "InvalidComponent";
  case NameErrc::AlreadyTraced: return "AlreadyTraced";
  }
  return "Unknown";
}

namespace {

[[noreturn]] void
fail(NameErrc code, std::string_view detail)
{
  throw NameError(code, std::string(to_string(code)) + ": " + std::string(detail));
}

bool
is_text_char(char c) noexcept
{
  return c >= 0x20 && c <= 0x7e && c != '/';
}

// characters with structural meaning inside the parameter component
bool
is_param_char(char c) noexcept
{
  return is_text_char(c) && c != ',' && c != '=' && c != '{' && c != '}';
}

} // namespace

NameComponent::NameComponent(std::string value)
  : m_value(std::move(value))
{
  if (!is_valid(m_value)) {
    fail(NameErrc::InvalidComponent, "component must be non-empty printable text without '/'");
  }
}

bool
NameComponent::is_valid(std::string_view value) noexcept
{
  return !value.empty() && std::all_of(value.begin(), value.end(), is_text_char);
}

std::vector<NameComponent>
split_name(std::string_view text)
{
  if (text.empty() || text.front() != '/') {
    fail(NameErrc::MalformedName, "name must start with '/'");
  }
  std::vector<NameComponent> out;
  std::size_t pos = 1;
  while (pos <= text.size()) {
    std::size_t next = text.find('/', pos);
    if (next == std::string_view::npos) {
      next = text.size();
    }
    std::string_view piece = text.substr(pos, next - pos);
    if (piece.empty()) {
      fail(NameErrc::MalformedName, "empty component");
    }
    if (!NameComponent::is_valid(piece)) {
      fail(NameErrc::InvalidComponent, "non-printable character in component");
    }
    out.emplace_back(std::string(piece));
    pos = next + 1;
  }
  return out;
}

std::string
join_name(const std::vector<NameComponent>& components)
{
  std::string out;
  for (const auto& c : components) {
    out += '/';
    out += c.str();
  }
  return out.empty() ? std::string("/") : out;
}

bool
is_prefix_of(std::string_view prefix, std::string_view name)
{
  if (prefix == "/") {
    return true;
  }
  if (name.size() < prefix.size() || name.substr(0, prefix.size()) != prefix) {
    return false;
  }
  return name.size() == prefix.size() || name[prefix.size()] == '/';
}

bool
is_r2_name(std::string_view text) noexcept
{
  return text.size() >= 3 && text.substr(0, 3) == "/r2" && (text.size() == 3 || text[3] == '/');
}

std::string
encode_params(const ParamMap& params)
{
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : params) {
    if (!first) {
      out += ',';
    }
    first = false;
    out += k;
    out += '=';
    out += v;
  }
  out += '}';
  return out;
}

ParamMap
decode_params(std::string_view component)
{
  if (component.size() < 2 || component.front() != '{' || component.back() != '}') {
    fail(NameErrc::MalformedParams, "parameters must be wrapped in braces");
  }
  ParamMap params;
  std::string_view body = component.substr(1, component.size() - 2);
  if (body.empty()) {
    return params;
  }
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    if (comma == std::string_view::npos) {
      comma = body.size();
    }
    std::string_view pair = body.substr(pos, comma - pos);
    std::size_t eq = pair.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      fail(NameErrc::MalformedParams, "expected key=value");
    }
    std::string_view key = pair.substr(0, eq);
    std::string_view value = pair.substr(eq + 1);
    if (!std::all_of(key.begin(), key.end(), is_param_char) ||
        !std::all_of(value.begin(), value.end(), is_param_char)) {
      fail(NameErrc::MalformedParams, "illegal character in parameter");
    }
    if (!params.emplace(std::string(key), std::string(value)).second) {
      fail(NameErrc::MalformedParams, "duplicate parameter key");
    }
    pos = comma + 1;
  }
  return params;
}

R2Name
parse_r2_name(std::string_view text)
{
  auto comps = split_name(text);
  if (comps.empty() || comps.front().str() != kR2Prefix) {
    fail(NameErrc::MissingR2Prefix, "first component must be r2");
  }
  auto sep = std::find_if(comps.begin() + 1, comps.end(),
                          [] (const NameComponent& c) { return c.str() == kSeparator; });
  if (sep == comps.end()) {
    fail(NameErrc::MissingSeparator, "no sep component");
  }
  if (sep == comps.begin() + 1) {
    fail(NameErrc::EmptyDataName, "no data components before sep");
  }
  if (std::any_of(sep + 1, comps.end(),
                  [] (const NameComponent& c) { return c.str() == kSeparator; })) {
    fail(NameErrc::MalformedName, "more than one sep component");
  }
  auto tail = static_cast<std::size_t>(comps.end() - (sep + 1));
  if (tail < 2) {
    fail(NameErrc::MalformedParams, "function name and parameter component required");
  }
  if (tail > 3) {
    fail(NameErrc::MalformedName, "unexpected components after parameters");
  }

  R2Name out;
  out.data_name.assign(comps.begin() + 1, sep);
  out.function_name = *(sep + 1);
  out.params = decode_params((sep + 2)->str());
  if (tail == 3) {
    out.trace_id = *(sep + 3);
  }
  return out;
}

std::string
build_r2_name(const R2Name& name)
{
  if (name.data_name.empty()) {
    fail(NameErrc::EmptyDataName, "no data components");
  }
  auto isSep = [] (const NameComponent& c) { return c.str() == kSeparator; };
  if (std::any_of(name.data_name.begin(), name.data_name.end(), isSep) || isSep(name.function_name)) {
    fail(NameErrc::MalformedName, "sep is reserved");
  }
  for (const auto& [k, v] : name.params) {
    if (k.empty() || !std::all_of(k.begin(), k.end(), is_param_char) ||
        !std::all_of(v.begin(), v.end(), is_param_char)) {
      fail(NameErrc::MalformedParams, "illegal parameter text");
    }
  }

  std::string out = "/r2";
  out += join_name(name.data_name);
  out += "/sep/";
  out += name.function_name.str();
  out += '/';
  out += encode_params(name.params);
  if (name.trace_id) {
    out += '/';
    out += name.trace_id->str();
  }
  return out;
}

std::string
extract_data_name(const R2Name& name)
{
  return join_name(name.data_name);
}

R2Name
append_trace_id(const R2Name& name, const NameComponent& id)
{
  if (name.trace_id) {
    fail(NameErrc::AlreadyTraced, "name already carries a trace id");
  }
  R2Name out = name;
  out.trace_id = id;
  return out;
}

R2Name
strip_trace_id(const R2Name& name)
{
  R2Name out = name;
  out.trace_id.reset();
  return out;
}

} // namespace r2sim
