#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "levyx_cli/config.hpp"
#include "levyx_cli/table.hpp"

namespace levyx::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericError = 3, kTableRegression = 4 };

/// Command-specific inputs that are not part of the config file.
struct CommandOptions {
    std::string table;            // price: reference table to check against
    double tol_u = 5e-4, tol_iv = 2e-3;
    bool greeks = false;          // price: add delta and gamma columns
    bool bound = false;           // density: add envelope columns
    std::vector<double> prices;   // iv: prices to invert
    double x = 0.0;               // bound: start point (NaN means x0)
    int repeats = 5;              // compare: timing repetitions
};

struct CommandResult {
    explicit CommandResult(Table t) : table(std::move(t)) {}
    Table table;
    int status = kOk;
    std::vector<std::string> warnings;
};

CommandResult cmd_price(const Settings& s, const CommandOptions& o);
CommandResult cmd_density(const Settings& s, const CommandOptions& o);
CommandResult cmd_iv(const Settings& s, const CommandOptions& o);
CommandResult cmd_bond(const Settings& s, const CommandOptions& o);
CommandResult cmd_bound(const Settings& s, const CommandOptions& o);
CommandResult cmd_mc(const Settings& s, const CommandOptions& o);
CommandResult cmd_compare(const Settings& s, const CommandOptions& o);

/// Exit code for a library error kind.
int exit_code_for(ErrorKind kind);

/// Full command line (without the program name); returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Run fn(0..n-1) on up to LEVYX_THREADS workers; the first exception (by
/// index) is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace levyx::cli
