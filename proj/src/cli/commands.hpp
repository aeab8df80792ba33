// Subcommand registration shared by the CLI translation units.
#pragma once

#include "nrlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <ostream>

namespace nrlab::cli {

struct Context {
    std::ostream* out = nullptr;
    std::ostream* err = nullptr;
    /// Set by the chosen subcommand's callback; returns the exit code.
    std::function<int()> action;
};

void add_flow_commands(CLI::App& app, Context& ctx);
void add_misc_commands(CLI::App& app, Context& ctx);

/// Pretty JSON followed by a newline.
inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace nrlab::cli
