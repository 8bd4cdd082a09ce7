#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gammalg/error.hpp"
#include "gammalg/io.hpp"

namespace gammalg {

struct CommandResult {
  Json report;
  int exit_code = 0;
  std::string summary;
};

/// 2 InvalidSpec, 3 EmptyShift, 4 ParseError, 12 NotApplicable, 5 otherwise.
int exit_code_for(ErrorKind kind);

/// An existing file is read, anything else is taken as inline text.
std::string read_source(const std::string& arg);

CommandResult run_info(const std::string& spec_path, const RunConfig& cfg);
CommandResult run_check_simple(const std::string& spec_path, AlgebraKind kind, const RunConfig& cfg);
/// op: "", mul, adjoint, P, Q, phi_hat, gauge:z, eval:xT,xP,k,yT,yP, supnorm.
CommandResult run_algebra(const std::string& spec_path, const std::vector<std::string>& exprs, const std::string& op, const RunConfig& cfg);
CommandResult run_fiber(const std::string& spec_path, const std::string& point, std::size_t level, const std::string& expr, const RunConfig& cfg);
CommandResult run_norm(const std::string& spec_path, const std::string& expr, std::optional<std::size_t> level, std::size_t samples,
                       const std::optional<std::string>& point, const RunConfig& cfg);

}  // namespace gammalg
