/**
 * @file commands_flow.cpp
 * @brief solve-velocity, simulate, track-line, nonrecurrence, convergence-study.
 */
#include "commands.hpp"

#include "nrlab/biot_savart.hpp"
#include "nrlab/euler_sim.hpp"
#include "nrlab/io.hpp"
#include "nrlab/lagrangian.hpp"
#include "nrlab/random_fields.hpp"
#include "nrlab/recurrence_lab.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <sstream>

namespace nrlab::cli {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

JumpConvention parse_convention(const std::string& s) {
    if (s == "flipped") return JumpConvention::FlippedInner;
    if (s == "verbatim") return JumpConvention::Verbatim;
    throw std::invalid_argument("--convention must be 'flipped' or 'verbatim'");
}

struct FieldOpts {
    std::string field;
    std::string input;
    std::uint64_t seed = 1;
    double epsilon = 0.1;
};

void add_field_options(CLI::App* c, FieldOpts& o, const std::string& default_field) {
    o.field = default_field;
    c->add_option("--field", o.field,
                  "Vorticity: xi, uniform, zero, bump, radial (cos 4r), random, or file (with --input)")
        ->capture_default_str()
        ->check(CLI::IsMember({"xi", "uniform", "zero", "bump", "radial", "random", "file"}));
    c->add_option("--input", o.input, "ScalarField CSV (r,theta,value) for --field file");
    c->add_option("--seed", o.seed, "Seed for --field random")->capture_default_str();
    c->add_option("--epsilon", o.epsilon, "epsilon for --field xi (amplitude 2.5 epsilon)")->capture_default_str();
}

ScalarField make_field(const FieldOpts& o, const PolarGrid& g) {
    if (o.field == "file") {
        if (o.input.empty()) throw std::invalid_argument("--field file needs --input");
        ScalarField f = ScalarField::from_csv(read_file(o.input));
        if (!(f.grid() == g)) {
            throw std::invalid_argument("--input grid " + std::to_string(f.grid().n_r()) + "x" +
                                        std::to_string(f.grid().n_theta()) + " does not match --grid");
        }
        return f;
    }
    if (o.field == "xi") return build_xi(XiSpec::with_epsilon(o.epsilon), g);
    if (o.field == "uniform") return ScalarField::from_function(g, [](double, double) { return 1.0; });
    if (o.field == "zero") return ScalarField::zeros(g);
    if (o.field == "bump") return bump_field(g);
    if (o.field == "radial") return ScalarField::from_function(g, [](double r, double) { return std::cos(4.0 * r); });
    return random_band_limited(g, o.seed);
}

ordered_json field_params(const FieldOpts& o) {
    ordered_json j;
    j["field"] = o.field;
    if (o.field == "file") j["input"] = o.input;
    if (o.field == "random") j["seed"] = o.seed;
    if (o.field == "xi") j["epsilon"] = o.epsilon;
    return j;
}

std::vector<Vec2> read_points(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::getline(in, line);
    if (line.rfind("x,y", 0) != 0) throw std::invalid_argument(path + ": expected header 'x,y'");
    std::vector<Vec2> pts;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        Vec2 p;
        if (std::sscanf(line.c_str(), "%lf,%lf", &p.x, &p.y) != 2)
            throw std::invalid_argument(path + ": bad row '" + line + "'");
        pts.push_back(p);
    }
    return pts;
}

std::string fmt(const char* f, double v) {
    char b[64];
    std::snprintf(b, sizeof b, f, v);
    return b;
}

// ---------------------------------------------------------------- solve-velocity

void add_solve_velocity(CLI::App& app, Context& ctx) {
    struct Opts {
        std::string grid = "64x256";
        FieldOpts field;
        double sigma1 = 0.0;
        std::string points;
        std::string out = "velocity.csv";
        std::string density_out;
        std::string convention = "flipped";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* c = app.add_subcommand("solve-velocity", "Reconstruct v^ + v~ + grad phi from a vorticity field");
    c->add_option("--grid", o->grid, "Polar grid NRxNTHETA")->capture_default_str();
    add_field_options(c, o->field, "bump");
    c->add_option("--sigma1", o->sigma1, "Circulation on the inner circle")->capture_default_str();
    c->add_option("--points", o->points, "CSV of target points (header x,y); default 16 radii x 16 angles");
    c->add_option("--out", o->out, "VelocitySamples CSV")->capture_default_str();
    c->add_option("--density-out", o->density_out, "BoundaryDensity CSV (circle,theta,f)");
    c->add_option("--convention", o->convention, "Inner-circle jump term: flipped or verbatim")->capture_default_str();
    c->callback([o, &ctx] {
        ctx.action = [o, &ctx] {
            const GridSpec gs = parse_grid(o->grid);
            const PolarGrid g(gs.n_r, gs.n_theta);
            const ScalarField omega = make_field(o->field, g);
            std::vector<Vec2> pts;
            if (!o->points.empty()) {
                pts = read_points(o->points);
            } else {
                for (int a = 0; a < 16; ++a)
                    for (int b = 0; b < 16; ++b) pts.push_back(from_polar(1.0 + a / 15.0, kTwoPi * b / 16.0));
                pts[15 * 16].x = 2.0;  // exact outer-circle node
            }
            const VelocitySolver solver(g, parse_convention(o->convention));
            const VelocitySamples s = solver.solve(omega, Circulation{o->sigma1}, pts);
            write_file_atomic(o->out, s.to_csv());
            const BoundaryDensity f = solver.solve_density(omega);
            if (!o->density_out.empty()) write_file_atomic(o->density_out, f.to_csv());

            // Boundary checks on the boundary nodes.
            std::vector<Vec2> bn;
            for (int j = 0; j < g.n_theta(); ++j) bn.push_back(g.node(0, j));
            for (int j = 0; j < g.n_theta(); ++j) bn.push_back(g.node(g.n_r() - 1, j));
            const VelocitySamples b = solver.solve(omega, Circulation{o->sigma1}, bn);
            double flux = 0.0, circ = 0.0;
            for (std::size_t k = 0; k < bn.size(); ++k) {
                const Vec2 n = (1.0 / norm(bn[k])) * bn[k];
                flux = std::max(flux, std::abs(dot(b.total[k], n)));
                if (k < static_cast<std::size_t>(g.n_theta())) circ += dot(b.total[k], perp(n)) * g.dtheta();
            }
            double sup = 0.0;
            for (const Vec2& v : s.total) sup = std::max(sup, norm(v));

            ordered_json j;
            j["params"] = {{"grid", o->grid}, {"sigma1", o->sigma1}, {"convention", o->convention},
                           {"points", o->points.empty() ? "default" : o->points}, {"out", o->out}};
            j["params"]["field"] = field_params(o->field);
            j["n_points"] = pts.size();
            j["c0_omega"] = c0_norm(omega);
            j["sup_total_at_points"] = sup;
            j["boundary_normal_residual"] = flux;
            j["inner_circulation"] = circ;
            j["moment_residual"] = f.residual;
            j["moment_sup"] = f.sup();
            *ctx.out << dump(j);
            return kExitOk;
        };
    });
}

// ---------------------------------------------------------------- simulate

struct SimOpts {
    std::string grid = "64x256";
    double dt = 2e-3;
    double t_end = 1.0;
    double sigma1 = kTwoPi;
    double output_every = 0.1;
    std::string convention = "flipped";
    bool unbounded = false;
};

void add_sim_options(CLI::App* c, SimOpts& o) {
    c->add_option("--grid", o.grid, "Polar grid NRxNTHETA")->capture_default_str();
    c->add_option("--dt", o.dt, "Time step")->capture_default_str();
    c->add_option("--t-end", o.t_end, "Final time")->capture_default_str();
    c->add_option("--sigma1", o.sigma1, "Circulation on the inner circle")->capture_default_str();
    c->add_option("--output-every", o.output_every, "Output cadence")->capture_default_str();
    c->add_option("--convention", o.convention, "Inner-circle jump term: flipped or verbatim")->capture_default_str();
    c->add_flag("--unbounded", o.unbounded, "Plain bicubic feet (no clipping to the range of omega)");
}

SimConfig sim_config(const SimOpts& o) {
    const GridSpec gs = parse_grid(o.grid);
    SimConfig c;
    c.n_r = gs.n_r;
    c.n_theta = gs.n_theta;
    c.dt = o.dt;
    c.t_end = o.t_end;
    c.sigma1 = o.sigma1;
    c.output_every = o.output_every;
    c.convention = parse_convention(o.convention);
    c.bounded = !o.unbounded;
    c.validate();
    return c;
}

ordered_json sim_params(const SimOpts& o) {
    return {{"grid", o.grid}, {"dt", o.dt}, {"t_end", o.t_end}, {"sigma1", o.sigma1},
            {"output_every", o.output_every}, {"convention", o.convention}, {"bounded", !o.unbounded}};
}

void add_simulate(CLI::App& app, Context& ctx) {
    struct Opts {
        SimOpts sim;
        FieldOpts field;
        std::string out_dir = "snapshots";
        double snapshot_every = 1.0;
    };
    auto o = std::make_shared<Opts>();
    CLI::App* c = app.add_subcommand("simulate", "Run the vorticity transport and write snapshots");
    add_sim_options(c, o->sim);
    add_field_options(c, o->field, "xi");
    c->add_option("--out-dir", o->out_dir, "Directory for snapshot CSV/JSON and summary.json")->capture_default_str();
    c->add_option("--snapshot-every", o->snapshot_every, "Cadence of snapshot files")->capture_default_str();
    c->callback([o, &ctx] {
        ctx.action = [o, &ctx] {
            const SimConfig cfg = sim_config(o->sim);
            if (!(o->snapshot_every > 0.0)) throw std::invalid_argument("--snapshot-every must be positive");
            const ScalarField omega0 = make_field(o->field, cfg.grid());
            const long every = std::max(1L, std::lround(o->snapshot_every / cfg.dt));
            const long n_last = static_cast<long>(time_levels(cfg.dt, cfg.t_end).size()) - 1;
            long n = 0;
            int written = 0;
            ordered_json series = ordered_json::array();
            const auto snaps = run(cfg, omega0, [&](const SimState& s, const GridVelocity&, bool is_output) {
                if (n % every == 0 || n == n_last) {
                    char name[64];
                    std::snprintf(name, sizeof name, "snapshot_%06ld.csv", n);
                    write_snapshot(fs::path(o->out_dir) / name, s);
                    ++written;
                }
                if (is_output) {
                    series.push_back({{"t", s.t}, {"energy", s.diag.energy}, {"enstrophy", s.diag.enstrophy},
                                      {"omega_min", s.diag.omega_min}, {"omega_max", s.diag.omega_max},
                                      {"circulation", s.diag.circulation}, {"sup_v", s.diag.sup_v},
                                      {"projected_feet", s.diag.projected_feet}});
                }
                ++n;
            });
            ordered_json j;
            j["params"] = sim_params(o->sim);
            j["params"]["init"] = field_params(o->field);
            j["params"]["snapshot_every"] = o->snapshot_every;
            j["series"] = std::move(series);
            if (snaps.size() >= 2) {
                const ConservationReport r = conservation_report(snaps);
                j["conservation"] = {{"energy_drift", r.energy_drift},
                                     {"enstrophy_drift", r.enstrophy_drift},
                                     {"range_violation", r.range_violation},
                                     {"range_violation_rel", r.range_violation_rel}};
            }
            j["snapshots_written"] = written;
            write_file_atomic(fs::path(o->out_dir) / "summary.json", dump(j));
            *ctx.out << "wrote " << written << " snapshots to " << o->out_dir << "\n";
            return kExitOk;
        };
    });
}

// ---------------------------------------------------------------- track-line

void add_track_line(CLI::App& app, Context& ctx) {
    struct Opts {
        SimOpts sim;
        std::string velocity = "rotation";
        double epsilon = 0.1;
        double threshold = 0.02;
        std::size_t markers = 51;
        std::string out = "line.csv";
    };
    auto o = std::make_shared<Opts>();
    o->sim.t_end = kRegimeTime;
    CLI::App* c = app.add_subcommand("track-line", "Advect the material line l = {x2 = 0, x1 > 0}");
    add_sim_options(c, o->sim);
    c->add_option("--velocity", o->velocity, "rotation (sigma1/2pi u*), zero, or flow (coupled run from xi)")
        ->capture_default_str()
        ->check(CLI::IsMember({"rotation", "zero", "flow"}));
    c->add_option("--epsilon", o->epsilon, "epsilon of xi for --velocity flow")->capture_default_str();
    c->add_option("--threshold", o->threshold, "Refinement gap threshold")->capture_default_str();
    c->add_option("--markers", o->markers, "Initial marker count")->capture_default_str();
    c->add_option("--out", o->out, "MaterialLine CSV (t,marker_index,x,y,theta_unwrapped)")->capture_default_str();
    c->callback([o, &ctx] {
        ctx.action = [o, &ctx] {
            const SimConfig cfg = sim_config(o->sim);
            std::string csv = kMaterialLineCsvHeader;
            double winding = 0.0;
            std::size_t count = 0;
            if (o->velocity == "flow") {
                ExperimentConfig ec;
                ec.xi = XiSpec::with_epsilon(o->epsilon);
                ec.sim = cfg;
                ec.line_markers = o->markers;
                ec.line_threshold = o->threshold;
                ExperimentHooks hooks;
                hooks.on_output = [&](const SimState& s, const MaterialLine& l) {
                    csv += l.csv_rows(s.t);
                    winding = winding_separation(l);
                    count = l.markers.size();
                };
                nonrecurrence_experiment(ec, ScalarField::zeros(cfg.grid()), hooks);
            } else {
                std::unique_ptr<VelocityField> u;
                if (o->velocity == "rotation") {
                    u = std::make_unique<RotationVelocity>(cfg.sigma1);
                } else {
                    u = std::make_unique<ZeroVelocity>();
                }
                MaterialLine line = MaterialLine::initial(o->markers, o->threshold);
                const std::vector<double> levels = time_levels(cfg.output_every, cfg.t_end);
                csv += line.csv_rows(0.0);
                for (std::size_t k = 1; k < levels.size(); ++k) {
                    line.advance(*u, levels[k - 1], levels[k], cfg.dt);
                    line.refine();
                    csv += line.csv_rows(levels[k]);
                }
                winding = winding_separation(line);
                count = line.markers.size();
            }
            write_file_atomic(o->out, csv);
            ordered_json j;
            j["params"] = sim_params(o->sim);
            j["params"]["velocity"] = o->velocity;
            j["params"]["threshold"] = o->threshold;
            j["params"]["markers"] = o->markers;
            j["winding_separation"] = winding;
            j["final_markers"] = count;
            *ctx.out << dump(j);
            return kExitOk;
        };
    });
}

// ---------------------------------------------------------------- nonrecurrence

void add_nonrecurrence(CLI::App& app, Context& ctx) {
    struct Opts {
        SimOpts sim;
        double epsilon = 0.1;
        double margin = 0.0;
        double perturb_c1 = 0.0;
        std::uint64_t seed = 1;
        double patch_until = 0.0;
        std::string out = "report.json";
        std::string svg_dir;
        double svg_every = 2.0;
    };
    auto o = std::make_shared<Opts>();
    o->sim.t_end = 25.1;
    CLI::App* c = app.add_subcommand("nonrecurrence", "Run the non-recurrence experiment and report the verdicts");
    add_sim_options(c, o->sim);
    c->add_option("--epsilon", o->epsilon, "epsilon (xi amplitude 2.5 epsilon)")->capture_default_str();
    c->add_option("--margin", o->margin, "Verdicts (a) and (c) apply for t > 8pi/3 + margin")->capture_default_str();
    c->add_option("--perturb-c1", o->perturb_c1, "C1 norm of a seeded smooth perturbation (< epsilon)")
        ->capture_default_str();
    c->add_option("--seed", o->seed, "Perturbation seed")->capture_default_str();
    c->add_option("--patch-until", o->patch_until, "Advect the test patch until this time (0: off)")
        ->capture_default_str();
    c->add_option("--out", o->out, "Report JSON")->capture_default_str();
    c->add_option("--svg-dir", o->svg_dir, "Write annulus snapshots with l_t here");
    c->add_option("--svg-every", o->svg_every, "SVG cadence")->capture_default_str();
    c->callback([o, &ctx] {
        ctx.action = [o, &ctx] {
            ExperimentConfig ec;
            ec.sim = sim_config(o->sim);
            ec.xi = XiSpec::with_epsilon(o->epsilon);
            ec.distance_margin = o->margin;
            ec.patch_until = o->patch_until;
            const ScalarField p = random_perturbation(ec.sim.grid(), o->seed, o->perturb_c1);
            ExperimentHooks hooks;
            double next_svg = 0.0;
            if (!o->svg_dir.empty()) {
                hooks.on_output = [&](const SimState& s, const MaterialLine& l) {
                    if (s.t + 1e-9 < next_svg && s.t < ec.sim.t_end) return;
                    char name[64];
                    std::snprintf(name, sizeof name, "annulus_t%08.3f.svg", s.t);
                    const auto pts = l.points();
                    write_file_atomic(fs::path(o->svg_dir) / name, annulus_svg(s.omega, pts, s.t));
                    next_svg += o->svg_every;
                };
            }
            const ExperimentReport rep = nonrecurrence_experiment(ec, p, hooks);
            auto j = ordered_json::parse(report_json(rep));
            j["params"]["perturb_c1"] = o->perturb_c1;
            j["params"]["seed"] = o->seed;
            j["params"]["bounded"] = !o->sim.unbounded;
            write_file_atomic(o->out, dump(j));
            const Verdicts& v = rep.verdicts;
            *ctx.out << "distance " << (v.distance ? "PASS" : "FAIL") << ", winding " << (v.winding ? "PASS" : "FAIL")
                     << ", intersect_mminus " << (v.intersect_mminus ? "PASS" : "FAIL") << ", v_bound "
                     << (v.v_bound ? "PASS" : "FAIL") << "\n";
            for (const std::string& w : rep.warnings) *ctx.err << "warning: " << w << "\n";
            return v.all() ? kExitOk : kExitVerdictFail;
        };
    });
}

// ---------------------------------------------------------------- convergence-study

void add_convergence_study(CLI::App& app, Context& ctx) {
    struct Opts {
        std::vector<std::string> grids{"32x128", "64x256", "128x512"};
        int fields = 20;
        std::uint64_t seed = 1;
        double tolerance = 0.05;
        std::string out = "convergence.json";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* c = app.add_subcommand(
        "convergence-study", "Velocity ratio sup|v| / sup|omega| over seeded random fields across grid refinements");
    c->add_option("--grids", o->grids, "Grids, coarse to fine")->delimiter(',')->capture_default_str();
    c->add_option("--fields", o->fields, "Number of seeded random fields")->capture_default_str();
    c->add_option("--seed", o->seed, "First seed (fields use seed, seed + 1, ...)")->capture_default_str();
    c->add_option("--tolerance", o->tolerance, "Allowed relative change between the two finest grids")
        ->capture_default_str();
    c->add_option("--out", o->out, "Study JSON")->capture_default_str();
    c->callback([o, &ctx] {
        ctx.action = [o, &ctx] {
            if (o->grids.size() < 2) throw std::invalid_argument("--grids needs at least two grids");
            if (o->fields < 1) throw std::invalid_argument("--fields must be >= 1");
            std::vector<std::vector<double>> ratios;
            ordered_json levels = ordered_json::array();
            for (const std::string& gname : o->grids) {
                const GridSpec gs = parse_grid(gname);
                const PolarGrid g(gs.n_r, gs.n_theta);
                const VelocitySolver solver(g);
                std::vector<double> r;
                for (int f = 0; f < o->fields; ++f) {
                    const ScalarField w = random_band_limited(g, o->seed + f);
                    r.push_back(solver.solve_grid(w, Circulation{0.0}).sup_v() / c0_norm(w));
                }
                // Uniform-vorticity oracle on the grid nodes.
                const ScalarField one = ScalarField::from_function(g, [](double, double) { return 1.0; });
                const GridVelocity gv = solver.solve_grid(one, Circulation{0.0});
                double oracle = 0.0;
                for (int i = 1; i < g.n_r(); ++i) {
                    const double u = uniform_annulus_speed(g.r(i));
                    oracle = std::max(oracle, std::abs(gv.v_theta[g.index(i, 0)] - u) / u);
                }
                levels.push_back({{"grid", gname},
                                  {"ratio_max", *std::max_element(r.begin(), r.end())},
                                  {"ratio_min", *std::min_element(r.begin(), r.end())},
                                  {"ratios", r},
                                  {"uniform_oracle_rel_error", oracle}});
                ratios.push_back(std::move(r));
            }
            const auto& a = ratios[ratios.size() - 2];
            const auto& b = ratios.back();
            double worst = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(b[k] / a[k] - 1.0));
            const bool pass = worst < o->tolerance;
            ordered_json j;
            j["params"] = {{"grids", o->grids}, {"fields", o->fields}, {"seed", o->seed}, {"tolerance", o->tolerance}};
            j["levels"] = std::move(levels);
            j["finest_pair_max_relative_change"] = worst;
            j["verdict"] = pass;
            write_file_atomic(o->out, dump(j));
            *ctx.out << "max relative change between the two finest grids: " << fmt("%.4g", worst) << " -> "
                     << (pass ? "PASS" : "FAIL") << "\n";
            return pass ? kExitOk : kExitVerdictFail;
        };
    });
}

}  // namespace

void add_flow_commands(CLI::App& app, Context& ctx) {
    add_solve_velocity(app, ctx);
    add_simulate(app, ctx);
    add_track_line(app, ctx);
    add_nonrecurrence(app, ctx);
    add_convergence_study(app, ctx);
}

}  // namespace nrlab::cli
