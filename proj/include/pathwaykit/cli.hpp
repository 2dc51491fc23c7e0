#pragma once

// Batch front end: argv -> RunConfig -> one module call -> CSV, decimal or SVG.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pathwaykit::cli {

enum class Subcommand { ml, pathway, ratecalc, kratzel, melconv, anova, corr, qform, volume, phyllo };

/// Exit code 2. The message names the offending flag or token.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Subcommand subcommand = Subcommand::ml;
    // Flag name without dashes -> raw value; flags without values map to "".
    std::map<std::string, std::string> params;
    std::optional<std::uint64_t> seed;
    std::string output;  // empty: standard output
};

/// Validates argv (without the program name): known subcommand and flags,
/// required flags present, numeric values well formed. Flags are checked in
/// command-line order, so the first offender is the one reported.
/// --help throws nothing and returns nullopt after printing help to `out`.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

/// Runs a validated config. Output goes to config.output (written only after
/// the computation succeeds) or to `out`. Returns 0, 1 (domain, convergence,
/// consistency, degenerate or data error; message on `err`) or 2 (usage).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-code mapping; the body of main().
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Seed used when neither --seed nor PATHWAY_TOOLKIT_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 1;

/// --seed, else PATHWAY_TOOLKIT_SEED, else kDefaultSeed. A malformed
/// environment value is a UsageError.
std::uint64_t resolve_seed(const RunConfig& config);

}  // namespace pathwaykit::cli
