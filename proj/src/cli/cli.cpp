/**
 * @file cli.cpp
 * @brief Argument parsing, config files and dispatch.
 */
#include "nrlab/cli.hpp"

#include "commands.hpp"
#include "nrlab/euler_sim.hpp"
#include "nrlab/io.hpp"
#include "nrlab/recurrence_lab.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace nrlab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
    });
}

}  // namespace

std::vector<std::string> apply_config_file(const std::vector<std::string>& args, const FlagFilter& accepts) {
    std::vector<std::string> rest;
    std::string path;
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--config") {
            if (k + 1 >= args.size()) throw std::invalid_argument("--config needs a file name");
            path = args[++k];
        } else if (args[k].rfind("--config=", 0) == 0) {
            path = args[k].substr(9);
        } else {
            rest.push_back(args[k]);
        }
    }
    if (path.empty()) return rest;

    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception& e) {
        throw std::invalid_argument("cannot read config file " + path + ": " + e.what());
    }
    std::vector<std::pair<std::string, std::string>> entries;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty key");
        std::replace(key.begin(), key.end(), '_', '-');
        const std::string flag = "--" + key;
        entries.emplace_back(flag, value);
    }
    // Insert after the subcommand: the first argument after the program name that
    // is not an option.
    auto sub = std::find_if(rest.begin() + std::min<std::size_t>(1, rest.size()), rest.end(),
                            [](const std::string& a) { return a.empty() || a[0] != '-'; });
    const std::string sub_name = sub == rest.end() ? std::string{} : *sub;
    std::vector<std::string> injected;
    for (const auto& [flag, value] : entries) {
        if (has_flag(rest, flag)) continue;
        if (accepts && !accepts(sub_name, flag)) continue;
        injected.push_back(flag + "=" + value);
    }
    if (sub == rest.end()) {
        rest.insert(rest.end(), injected.begin(), injected.end());
    } else {
        rest.insert(sub + 1, injected.begin(), injected.end());
    }
    return rest;
}

GridSpec parse_grid(const std::string& text) {
    const auto x = text.find('x');
    GridSpec g;
    try {
        if (x == std::string::npos) throw std::invalid_argument("");
        std::size_t p1 = 0, p2 = 0;
        g.n_r = std::stoi(text.substr(0, x), &p1);
        g.n_theta = std::stoi(text.substr(x + 1), &p2);
        if (p1 != x || p2 != text.size() - x - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("--grid: expected NRxNTHETA such as 64x256, got '" + text + "'");
    }
    PolarGrid(g.n_r, g.n_theta);  // validates
    return g;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv, argv + argc);
    CLI::App app{"Numerical lab for non-recurrence of 2D Euler flow on the annulus 1 <= |x| <= 2", "nrlab"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");
    std::string config_path;
    app.add_option("--config", config_path, "Flat key=value file; command-line flags override it");
    app.footer("Exit codes: 0 success or verdicts pass, 1 verdict fail or runtime failure, 2 usage error.");

    cli::Context ctx;
    ctx.out = &out;
    ctx.err = &err;
    cli::add_flow_commands(app, ctx);
    cli::add_misc_commands(app, ctx);

    // A config file may be shared between subcommands: keys the chosen
    // subcommand does not define are skipped, keys no subcommand defines are errors.
    auto defines = [&app](const std::string& sub, const std::string& flag) {
        const CLI::App* s = sub.empty() ? nullptr : app.get_subcommand_no_throw(sub);
        return s != nullptr && s->get_option_no_throw(flag) != nullptr;
    };
    auto accepts = [&](const std::string& sub, const std::string& flag) {
        if (defines(sub, flag)) return true;
        for (const CLI::App* s : std::as_const(app).get_subcommands([](const CLI::App*) { return true; })) {
            if (s->get_option_no_throw(flag) != nullptr) return false;
        }
        throw std::invalid_argument("config key '" + flag.substr(2) + "' is not an option of any subcommand");
    };
    try {
        args = apply_config_file(args, accepts);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::vector<const char*> cargv;
    for (const std::string& a : args) cargv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        const auto subs = app.get_subcommands();
        err << "error: " << e.what() << "\n\n" << (subs.empty() ? app.help() : subs.front()->help());
        return kExitUsage;
    }

    try {
        return ctx.action ? ctx.action() : kExitUsage;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CFLViolation& e) {
        err << "configuration error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "configuration error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "run failed: " << e.what() << "\n";
        return kExitVerdictFail;
    }
}

}  // namespace nrlab
