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

#ifndef R2SIM_NAME_CODEC_HPP
#define R2SIM_NAME_CODEC_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace r2sim {

/**
 * Textual R2 name grammar:
 *
 *   /r2/<data-component>+/sep/<function>/{k1=v1,k2=v2}[/<trace-id>]
 *
 * Components are printable ASCII (0x20-0x7e) without '/'. The parameter
 * component is always present (`{}` when empty) and keys are serialized in
 * lexicographic order, so two equal R2Names always produce identical text.
 */
inline constexpr std::string_view kR2Prefix = "r2";
inline constexpr std::string_view kSeparator = "sep";

enum class NameErrc {
  MissingR2Prefix,
  MissingSeparator,
  EmptyDataName,
  MalformedParams,
  MalformedName,
  InvalidComponent,
  AlreadyTraced,
};

const char* to_string(NameErrc code);

class NameError : public std::runtime_error
{
public:
  NameError(NameErrc code, const std::string& what)
    : std::runtime_error(what)
    , m_code(code)
  {}

  NameErrc code() const noexcept { return m_code; }

private:
  NameErrc m_code;
};

/// A single non-empty, separator-free name component.
class NameComponent
{
public:
  /// Throws NameError(InvalidComponent) when `value` violates the invariants.
  explicit NameComponent(std::string value);

  static bool is_valid(std::string_view value) noexcept;

  const std::string& str() const noexcept { return m_value; }

  friend auto operator<=>(const NameComponent&, const NameComponent&) = default;

private:
  std::string m_value;
};

using ParamMap = std::map<std::string, std::string>;

struct R2Name
{
  std::vector<NameComponent> data_name;
  NameComponent function_name{"f"};
  ParamMap params;
  std::optional<NameComponent> trace_id;

  friend bool operator==(const R2Name&, const R2Name&) = default;
};

/// Splits `/a/b/c` into components. Rejects empty components and missing leading '/'.
std::vector<NameComponent> split_name(std::string_view text);

/// Joins components back into `/a/b/c`.
std::string join_name(const std::vector<NameComponent>& components);

/// True iff `prefix` is a component-wise prefix of `name` (both plain names).
bool is_prefix_of(std::string_view prefix, std::string_view name);

/// True when the text starts with the `/r2/` marker component.
bool is_r2_name(std::string_view text) noexcept;

R2Name parse_r2_name(std::string_view text);

std::string build_r2_name(const R2Name& name);

/// The plain data name used for FIB lookup; the trace suffix is ignored.
std::string extract_data_name(const R2Name& name);

/// Returns a copy carrying `id` as trace suffix. Throws AlreadyTraced.
R2Name append_trace_id(const R2Name& name, const NameComponent& id);

/// Copy with the trace suffix removed (identity when untraced).
R2Name strip_trace_id(const R2Name& name);

std::string encode_params(const ParamMap& params);
ParamMap decode_params(std::string_view component);

} // namespace r2sim

#endif // R2SIM_NAME_CODEC_HPP
