#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "gammalg/deciders.hpp"
#include "gammalg/fiber_rep.hpp"
#include "gammalg/star_algebra.hpp"

namespace gammalg {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";

/// Exactly one variant payload; InvalidSpec otherwise.
SubshiftSpec parse_spec(const Json& j);
SubshiftSpec load_spec(const std::filesystem::path& path);
Json spec_to_json(const SubshiftSpec& spec);

Json dfa_to_json(const Dfa& d);
Dfa dfa_from_json(const Json& j, int letters);

Json point_to_json(const Alphabet& alpha, const UPPoint& p);
/// "T,P" with T possibly empty.
UPPoint parse_point(const Alphabet& alpha, const std::string& text);

/// {"sum":[...]}; tails are "S", "F(w)" or an inline prefix automaton.
Element parse_element(const Algebra& alg, const Json& j);
Json element_to_json(const Algebra& alg, const Element& e);

/// Text grammar: + - *, postfix ^*, adjoint/adj/P/Q/phi_hat(...), t_w,
/// t_{w}, one, v, m, p_j, numbers, i. Throws ParseError.
Element parse_expression(const Algebra& alg, const std::string& text);

/// JSON when the text starts with '{', otherwise the text grammar.
Element parse_element_source(const Algebra& alg, const std::string& text);

Json scalar_to_json(Scalar c);

struct RunConfig {
  double tolerance = 1e-9;
  double drop_eps = kDropEps;
  std::size_t class_cap = 65536;
  std::size_t witness_len_cap = 0;
  std::uint64_t seed = 0xC0FFEE;
  std::optional<std::filesystem::path> out;

  /// Applies GAMMALG_SEED when set.
  void apply_environment();
  void validate() const;
  Json to_json() const;
};

/// FNV-1a over the compact dump of the spec.
std::string spec_hash(const Json& spec);

Json info_report(const FollowerAutomaton& aut, const SubshiftSpec& spec);
Json verdict_to_json(const Alphabet& alpha, const Verdict& v);

/// Wraps a command body with provenance fields.
Json make_report(const std::string& command, const Json& spec, const RunConfig& cfg, Json body);
Json make_error_report(const std::string& command, const RunConfig& cfg, std::string_view kind, const std::string& message);

/// Writes to a temporary sibling and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace gammalg
