#pragma once

#include "kdsg/report.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kdsg {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::optional<std::string> field;          // --field, beats the file
    std::optional<std::string> default_field;  // KDSG_DEFAULT_FIELD, loses to the file
    int hmax = 12, dmax = 16;
    int ceiling_hmax = 48, ceiling_dmax = 64;  // for --escalate
    std::string report = "text";
    bool escalate = false;
    bool formal = false;  // regrade off-diagonal Ext algebras by total degree
    int threads = 1;
    std::optional<std::string> algebra, morphism, other_morphism, square;
    std::optional<std::string> module;  // k, regular or Q
};

const std::vector<std::string>& commands();

// Throws UsageError on bad flags; --help and --version are reported through
// the return value so the caller can print them.
struct ParsedArgs {
    std::optional<RunConfig> config;
    std::optional<std::string> message;
    int exit_code = 0;
};
ParsedArgs parse_args(int argc, const char* const* argv);

// One pass at the configured bounds.  UsageError, ParseError and
// PreconditionFailed on unusable input; computation errors become rows.
Report execute(const RunConfig& cfg);

// execute, escalating bounds when asked, then prints the report.  Returns
// the exit status: 0 computed, 1 Fail rows, 2 usage or parse error,
// 3 UnknownUpToBound-dominated.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kdsg
