#pragma once

// Text and JSON renderings of the front-end commands.

#include <string>

#include "nishida/verify.hpp"

namespace nishida {

struct CommandResult {
    /// 0 ok, 1 verification failed.
    int status = 0;
    std::string output;
};

HopfPresentation parse_algebra(const std::string& s);

CommandResult cmd_coproduct(const SessionConfig& cfg, const std::string& algebra, int gen);
CommandResult cmd_antipode(const SessionConfig& cfg, const std::string& algebra, int gen);
CommandResult cmd_qstruct(const SessionConfig& cfg, const std::string& algebra, int gen);
/// D-structure table for the configured law and quadratic with its residual report.
CommandResult cmd_dstruct(const SessionConfig& cfg);
/// Coaction on the free ring basis through (maxdeg, maxweight).
CommandResult cmd_coaction(const SessionConfig& cfg, Side side, int maxdeg, int maxweight);
/// Square check matrix; always JSON lines.
CommandResult cmd_nishida_check(const SessionConfig& cfg, Side side, int maxdeg, int maxweight);
CommandResult cmd_fgl_dump(const SessionConfig& cfg);
CommandResult cmd_charnum_beta(const SessionConfig& cfg, const std::string& manifold, Variant variant);
CommandResult cmd_charnum_thm4(const SessionConfig& cfg);
CommandResult cmd_verify(const SessionConfig& cfg, const std::string& suite);

Side parse_side(const std::string& s);
Variant parse_variant(const std::string& s);

}  // namespace nishida
