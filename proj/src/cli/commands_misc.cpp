/**
 * @file commands_misc.cpp
 * @brief pendulum, recurrence-demo, besov-norm.
 */
#include "commands.hpp"

#include "nrlab/besov.hpp"
#include "nrlab/io.hpp"
#include "nrlab/measure_recurrence.hpp"
#include "nrlab/pendulum.hpp"

#include <memory>

namespace nrlab::cli {

namespace {

using nlohmann::ordered_json;

void add_pendulum(CLI::App& app, Context& ctx) {
    struct Opts {
        double x0 = 1.0;
        double y0 = 0.0;
        double dt = 1e-3;
        double t_max = 20.0;
        long stride = 10;
        std::string out;
        std::string portrait;
        bool recurrence = false;
        double delta = 0.1;
        std::string metric = "unwrapped";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* c = app.add_subcommand("pendulum", "Integrate x'' = -sin x with kick-drift-kick Verlet");
    c->add_option("--x0", o->x0, "Initial angle")->capture_default_str();
    c->add_option("--y0", o->y0, "Initial angular velocity")->capture_default_str();
    c->add_option("--dt", o->dt, "Time step (0 < dt <= 0.1)")->capture_default_str();
    c->add_option("--t-max", o->t_max, "Integration time")->capture_default_str();
    c->add_option("--stride", o->stride, "Write every stride-th step")->capture_default_str();
    c->add_option("--out", o->out, "Trajectory CSV (t,x,y,energy)");
    c->add_option("--portrait", o->portrait, "Phase-portrait SVG");
    c->add_flag("--recurrence", o->recurrence, "Search for the first return to the delta-ball around the start");
    c->add_option("--delta", o->delta, "Return radius")->capture_default_str();
    c->add_option("--metric", o->metric, "Distance for the return: unwrapped (real line) or wrapped (x mod 2pi)")
        ->capture_default_str()
        ->check(CLI::IsMember({"wrapped", "unwrapped"}));
    c->callback([o, &ctx] {
        ctx.action = [o, &ctx] {
            if (!(o->dt > 0.0 && o->dt <= 0.1)) throw std::invalid_argument("--dt must lie in (0, 0.1]");
            if (!(o->t_max >= 0.0)) throw std::invalid_argument("--t-max must be non-negative");
            if (o->stride < 1) throw std::invalid_argument("--stride must be >= 1");
            const PendulumState s0{o->x0, o->y0, 0.0};
            ordered_json j;
            j["params"] = {{"x0", o->x0}, {"y0", o->y0}, {"dt", o->dt}, {"t_max", o->t_max}};
            j["energy"] = pendulum_energy(s0);
            j["orbit"] = orbit_class_name(classify_orbit(s0));
            j["max_energy_drift"] = max_energy_drift(s0, o->dt, o->t_max);
            if (o->recurrence) {
                if (!(o->delta > 0.0)) throw std::invalid_argument("--delta must be positive");
                const auto metric =
                    o->metric == "wrapped" ? RecurrenceMetric::Wrapped : RecurrenceMetric::Unwrapped;
                const RecurrenceResult r = recurrence_time(s0, o->delta, o->t_max, o->dt, metric);
                j["params"]["delta"] = o->delta;
                j["params"]["metric"] = o->metric;
                if (r.time) {
                    j["recurrence"] = *r.time;
                } else {
                    j["recurrence"] = "not_found";
                }
                j["closest_approach"] = r.closest;
                j["final_x"] = r.final_state.x;
            }
            if (!o->out.empty())
                write_file_atomic(o->out, trajectory_csv(pendulum_trajectory(s0, o->dt, o->t_max, o->stride)));
            if (!o->portrait.empty()) write_file_atomic(o->portrait, phase_portrait_svg());
            *ctx.out << dump(j);
            return kExitOk;
        };
    });
}

void add_recurrence_demo(CLI::App& app, Context& ctx) {
    struct Opts {
        std::size_t n = 1000;
        std::uint64_t seed = 42;
        std::string set = "0..99";
        std::size_t n_max = 20;
        std::string out = "stats.csv";
    };
    auto o = std::make_shared<Opts>();
    CLI::App* c = app.add_subcommand("recurrence-demo",
                                     "Poincare recurrence on a random bijection of {0..n-1} with counting measure");
    c->add_option("--n", o->n, "Number of points")->capture_default_str();
    c->add_option("--seed", o->seed, "Permutation seed")->capture_default_str();
    c->add_option("--set", o->set, "E as 'a..b' (inclusive) or a comma list")->capture_default_str();
    c->add_option("--n-max", o->n_max, "Check A_0 .. A_n for n up to this")->capture_default_str();
    c->add_option("--out", o->out, "Return-time CSV (x,return_time,cycle_length)")->capture_default_str();
    c->callback([o, &ctx] {
        ctx.action = [o, &ctx] {
            if (o->n == 0) throw std::invalid_argument("--n must be positive");
            const FiniteSystem sys = FiniteSystem::random(o->n, o->seed);
            const std::vector<std::size_t> e = parse_point_set(o->set);
            for (std::size_t x : e)
                if (x >= o->n) throw std::invalid_argument("--set contains " + std::to_string(x) + " >= n");
            const auto stats = recurrence_statistics(sys, e);
            std::string csv = "x,return_time,cycle_length\n";
            for (const auto& [x, rt] : stats)
                csv += std::to_string(x) + "," + std::to_string(rt) + "," + std::to_string(sys.cycle_length(x)) + "\n";
            write_file_atomic(o->out, csv);

            const AnSetReport rep = an_set_check(sys, e, o->n_max);
            ordered_json j;
            j["params"] = {{"n", o->n}, {"seed", o->seed}, {"set", o->set}, {"n_max", o->n_max}};
            j["cycles"] = sys.cycle_lengths().size();
            std::size_t worst = 0;
            for (const auto& s : stats) worst = std::max(worst, s.second);
            j["max_return_time"] = worst;
            ordered_json m = ordered_json::array();
            for (const Measure& mu : rep.measures) m.push_back(mu.str());
            j["measures"] = std::move(m);
            j["e_subset_a0"] = rep.e_subset_a0;
            j["nested"] = rep.nested;
            j["equal_measure"] = rep.equal_measure;
            j["exceptional"] = rep.exceptional;
            j["verdict"] = rep.ok();
            *ctx.out << dump(j);
            return rep.ok() ? kExitOk : kExitVerdictFail;
        };
    });
}

void add_besov_norm(CLI::App& app, Context& ctx) {
    struct Opts {
        std::string input;
        double s = 1.0;
        double eps = 0.0;
        std::string out;
    };
    auto o = std::make_shared<Opts>();
    CLI::App* c = app.add_subcommand("besov-norm", "Besov norm (sup over dyadic Fourier shells) of a field on the 2-torus");
    c->add_option("--input", o->input, "TorusField CSV (x1,x2,value)")->required();
    c->add_option("--s", o->s, "Smoothness index")->capture_default_str();
    c->add_option("--eps", o->eps, "If > 0, also check the embeddings H^s in B_s in H^(s-eps)")
        ->capture_default_str();
    c->add_option("--out", o->out, "Write the JSON here as well");
    c->callback([o, &ctx] {
        ctx.action = [o, &ctx] {
            if (o->eps < 0.0) throw std::invalid_argument("--eps must be non-negative");
            const TorusField w = TorusField::from_csv(read_file(o->input));
            const BesovResult b = besov_analysis(w, o->s);
            ordered_json j;
            j["params"] = {{"input", o->input}, {"s", o->s}, {"eps", o->eps}, {"n", w.n()}};
            j["besov"] = b.besov;
            j["sobolev_s"] = sobolev_norm(w, o->s);
            ordered_json shells = ordered_json::array();
            for (const ShellEntry& e : b.per_shell)
                shells.push_back({{"k", e.k}, {"energy", e.energy}, {"weighted", e.weighted}});
            j["per_shell"] = std::move(shells);
            j["unresolved_energy"] = b.unresolved_energy;
            j["mean_energy"] = b.mean_energy;
            bool ok = true;
            if (o->eps > 0.0) {
                const EmbeddingReport r = embedding_check(w, o->s, o->eps);
                j["sobolev_s_minus_eps"] = r.sobolev_s_minus_eps;
                j["embedding"] = {{"sobolev_s_minus_eps_shells", r.sobolev_s_minus_eps_shells},
                                  {"constant", r.constant},
                                  {"lower_holds", r.lower_holds},
                                  {"upper_holds", r.upper_holds}};
                ok = r.upper_holds && (o->s < 0.0 || r.lower_holds);
            }
            const std::string text = dump(j);
            if (!o->out.empty()) write_file_atomic(o->out, text);
            *ctx.out << text;
            return ok ? kExitOk : kExitVerdictFail;
        };
    });
}

}  // namespace

void add_misc_commands(CLI::App& app, Context& ctx) {
    add_pendulum(app, ctx);
    add_recurrence_demo(app, ctx);
    add_besov_norm(app, ctx);
}

}  // namespace nrlab::cli
