#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "delayctl/acceptance.hpp"
#include "delayctl/consensus.hpp"
#include "delayctl/controllers.hpp"
#include "delayctl/dde_sim.hpp"
#include "delayctl/errors.hpp"
#include "delayctl/io.hpp"
#include "delayctl/spectrum.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitAssumption = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitUsage = 64;
constexpr int kExitMissingInput = 66;

using namespace delayctl;

struct Options {
    std::string system_path;
    std::string network_path;
    double gamma = 0.0;
    std::string gamma_range;  // lo:hi:n
    std::string kind = "tppf";
    double horizon = 50.0;
    double step = 0.0;  // 0 = pick the default
    double mu = -1.0;   // negative = use the network bound
    std::string out_dir = ".";
    int workers = 0;
    bool per_agent = false;
};

int default_workers() {
    if (const char* env = std::getenv("DELAY_HORIZON_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 0;  // let the runtime decide
}

void require_file(const std::string& path, const std::string& what) {
    if (path.empty()) throw ValidationError(what + " path is required");
    if (!std::filesystem::exists(path)) throw IoError(what + " file not found: " + path);
}

std::filesystem::path out_file(const Options& opt, const std::string& name) {
    std::filesystem::create_directories(opt.out_dir);
    return std::filesystem::path(opt.out_dir) / name;
}

double default_step(const DelaySystem& sys) {
    double tau_min = std::numeric_limits<double>::infinity();
    for (const InputChannel& ch : sys.channels())
        if (ch.tau > 0) tau_min = std::min(tau_min, ch.tau);
    if (!std::isfinite(tau_min)) return 0.01;
    return std::min(tau_min / 20.0, 0.01);
}

Vector default_initial_state(int n) {
    // deterministic, recorded in the run metadata
    Vector x0(n);
    for (int i = 0; i < n; ++i) x0(i) = (i % 2 == 0) ? 1.0 : -0.5;
    return x0;
}

void parse_gamma_range(const std::string& text, double& lo, double& hi, int& points) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ValidationError("--gamma-range expects lo:hi:n");
    try {
        lo = std::stod(text.substr(0, c1));
        hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        points = std::stoi(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ValidationError("--gamma-range expects numeric lo:hi:n");
    }
}

std::string report_json(const AssumptionReport& rep) {
    std::ostringstream out;
    out << "{\n  \"reduced_B\": " << io::fmt(rep.reduced_B) << ",\n  \"total_tau\": "
        << io::fmt(rep.total_tau) << ",\n  \"stabilizable\": " << (rep.stabilizable ? "true" : "false")
        << ",\n  \"controllable\": " << (rep.controllable ? "true" : "false")
        << ",\n  \"spectrum_on_axis\": " << (rep.spectrum_on_axis ? "true" : "false")
        << ",\n  \"max_real_part\": " << io::fmt(rep.max_real_part) << ",\n  \"eigenvalues_of_A\": [";
    for (size_t i = 0; i < rep.eigenvalues_of_A.size(); ++i)
        out << (i ? ", " : "") << "[" << io::fmt(rep.eigenvalues_of_A[i].real()) << ", "
            << io::fmt(rep.eigenvalues_of_A[i].imag()) << "]";
    out << "]\n}\n";
    return out.str();
}

int cmd_check(const Options& opt) {
    require_file(opt.system_path, "--system");
    const io::LoadedSystem loaded = io::load_system(opt.system_path);
    const AssumptionReport rep = check_assumptions(loaded.system);
    std::cout << report_json(rep);
    if (!(rep.stabilizable && rep.controllable && rep.spectrum_on_axis)) return kExitAssumption;
    return kExitOk;
}

int cmd_design(const Options& opt) {
    require_file(opt.system_path, "--system");
    if (!(opt.gamma > 0)) throw ValidationError("--gamma must be positive");
    const io::LoadedSystem loaded = io::load_system(opt.system_path);
    const DelaySystem& sys = loaded.system;

    const AssumptionReport rep = check_assumptions(sys);
    if (!(rep.controllable && rep.spectrum_on_axis)) {
        std::cerr << "design assumptions violated:\n" << report_json(rep);
        return kExitAssumption;
    }

    const ParametricGain g = gain(sys.A(), rep.reduced_B, opt.gamma);
    const double tau = total_delay(sys);
    io::GainArtifacts art;
    art.gamma = opt.gamma;
    art.F = g.F;
    art.K_tpf = tpf_gain(sys, g).K;
    art.K_tppf = tppf_gain(sys, g).K;
    art.W = g.W;
    art.P = g.P;
    const Matrix M = sys.A() + 0.5 * opt.gamma * Matrix::Identity(sys.state_dim(), sys.state_dim());
    art.residual_lyapunov =
        (g.W * M.transpose() + M * g.W - rep.reduced_B * rep.reduced_B.transpose()).norm();
    art.residual_are = (sys.A().transpose() * g.P + g.P * sys.A() -
                        g.P * rep.reduced_B * rep.reduced_B.transpose() * g.P + opt.gamma * g.P)
                           .norm();
    art.residual_commutation = commutation_residual(g, sys.A(), tau);
    art.trace_gap = std::abs((rep.reduced_B.transpose() * g.P * rep.reduced_B).trace() -
                             sys.state_dim() * opt.gamma) /
                    (sys.state_dim() * opt.gamma);
    io::save_gain(art, out_file(opt, "gain.json").string());
    std::cout << "wrote " << out_file(opt, "gain.json").string() << "\n";
    return kExitOk;
}

StaticGain::Kind parse_static_kind(const std::string& kind) {
    if (kind == "tpf") return StaticGain::Kind::TPF;
    if (kind == "tppf") return StaticGain::Kind::TPPF;
    throw ValidationError("--kind must be tpf or tppf for this command");
}

int cmd_sweep(const Options& opt) {
    require_file(opt.system_path, "--system");
    if (opt.gamma_range.empty()) throw ValidationError("--gamma-range is required");
    double lo = 0, hi = 0;
    int points = 0;
    parse_gamma_range(opt.gamma_range, lo, hi, points);
    const io::LoadedSystem loaded = io::load_system(opt.system_path);

    std::vector<std::string> kinds;
    if (opt.kind == "both") {
        kinds = {"tpf", "tppf"};
    } else {
        kinds = {opt.kind};
    }
    for (const std::string& kind : kinds) {
        const spectrum::SweepResult result =
            spectrum::sweep(loaded.system, parse_static_kind(kind), lo, hi, points, opt.workers);
        io::save_sweep_csv(result, out_file(opt, "sweep_" + kind + ".csv").string());
        io::save_sweep_summary(result, out_file(opt, "summary_" + kind + ".json").string());
        std::cout << kind << ": gamma_sup=" << io::fmt(result.gamma_sup)
                  << " gamma_opt=" << io::fmt(result.gamma_opt)
                  << " lambda_max_min=" << io::fmt(result.lambda_max_min)
                  << (result.stable_interval_found ? "" : "  [no stable gamma in range]") << "\n";
    }
    return kExitOk;
}

int cmd_simulate(const Options& opt) {
    require_file(opt.system_path, "--system");
    if (!(opt.gamma > 0)) throw ValidationError("--gamma must be positive");
    const io::LoadedSystem loaded = io::load_system(opt.system_path);
    const DelaySystem& sys = loaded.system;
    const Matrix B = reduced_input_matrix(sys);
    const ParametricGain g = gain(sys.A(), B, opt.gamma);

    const double h = opt.step > 0 ? opt.step : default_step(sys);
    const Vector x0 = default_initial_state(sys.state_dim());
    const double tau = total_delay(sys);
    const double span = std::max({sys.max_delay(), tau, h});

    Trajectory traj;
    if (opt.kind == "tpf" || opt.kind == "tppf") {
        const StaticGain sg =
            opt.kind == "tpf" ? tpf_gain(sys, g) : tppf_gain(sys, g);
        const History init = History::constant(x0, -span - h, 0.0);
        traj = simulate(assemble_closed_loop(sys, sg.K), init, opt.horizon, h);
        traj.inputs.reserve(traj.states.size());
        for (const Vector& x : traj.states) traj.inputs.push_back(sg.K * x);
    } else if (opt.kind == "ppf" || opt.kind == "mr") {
        const auto kind = opt.kind == "ppf" ? HistoryController::Kind::PPF
                                            : HistoryController::Kind::ModelReduction;
        const HistoryController hc(kind, sys, g, h);
        const History init_state = History::constant(x0, -span - h, 0.0);
        const History init_input =
            History::constant(Vector::Zero(sys.input_dim()), -span - h, 0.0);
        traj = simulate_dynamic(sys, hc, init_state, init_input, opt.horizon, h);
    } else {
        throw ValidationError("--kind must be one of tpf|tppf|ppf|mr");
    }
    io::save_trajectory_csv(traj, out_file(opt, "trajectory.csv").string());

    std::ostringstream meta;
    meta << "{\n  \"kind\": \"" << opt.kind << "\",\n  \"gamma\": " << io::fmt(opt.gamma)
         << ",\n  \"step\": " << io::fmt(h) << ",\n  \"horizon\": " << io::fmt(opt.horizon)
         << ",\n  \"initial_state\": [";
    for (int i = 0; i < x0.size(); ++i) meta << (i ? ", " : "") << io::fmt(x0(i));
    meta << "],\n  \"initial_history\": \"constant, inputs zero in the past\"";
    const double t1 = traj.times.back();
    const double t0 = t1 / 3.0;
    meta << ",\n  \"decay_fit_window\": [" << io::fmt(t0) << ", " << io::fmt(t1) << "]"
         << ",\n  \"decay_fit\": " << io::fmt(decay_rate(traj, t0, t1)) << "\n}\n";
    std::ofstream(out_file(opt, "meta.json")) << meta.str();
    std::cout << "wrote " << out_file(opt, "trajectory.csv").string() << "\n";
    return kExitOk;
}

int cmd_consensus(const Options& opt) {
    require_file(opt.system_path, "--system");
    require_file(opt.network_path, "--network");
    if (!(opt.gamma > 0)) throw ValidationError("--gamma must be positive");
    const io::LoadedSystem loaded = io::load_system(opt.system_path);
    const consensus::DirectedNetwork net =
        consensus::build_network(io::load_network_adjacency(opt.network_path));
    if (!net.spanning_tree)
        throw AssumptionError("consensus: the network has no directed spanning tree");
    const double mu = opt.mu >= 0 ? opt.mu : consensus::mu_bound(net);

    const double h = opt.step > 0 ? opt.step : default_step(loaded.system);
    const int n = loaded.system.state_dim();
    std::mt19937 rng(0x2024u);  // fixed seed, recorded below
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<Vector> x0(net.N);
    for (auto& v : x0) {
        v = Vector(n);
        for (int i = 0; i < n; ++i) v(i) = unit(rng);
    }
    const consensus::ConsensusRun run =
        consensus::simulate_network(loaded.system, net, opt.gamma, mu, x0, opt.horizon, h);
    io::save_consensus_csv(run, out_file(opt, "consensus.csv").string());
    if (opt.per_agent)
        for (int i = 0; i < net.N; ++i)
            io::save_trajectory_csv(run.agents[i],
                                    out_file(opt, "agent_" + std::to_string(i + 1) + ".csv").string());

    const consensus::GrowthFit fit = [&]() -> consensus::GrowthFit {
        try {
            return consensus::reference_growth_check(run, loaded.system);
        } catch (const Error&) {
            return consensus::GrowthFit{};
        }
    }();
    std::ostringstream meta;
    meta << "{\n  \"gamma\": " << io::fmt(opt.gamma) << ",\n  \"mu\": " << io::fmt(mu)
         << ",\n  \"mu_bound\": " << io::fmt(consensus::mu_bound(net))
         << ",\n  \"seed\": 8228,\n  \"step\": " << io::fmt(h)
         << ",\n  \"horizon\": " << io::fmt(opt.horizon)
         << ",\n  \"disagreement_ratio\": "
         << io::fmt(run.disagreement.back() / run.disagreement.front())
         << ",\n  \"reference_growth\": {\"n_star\": " << fit.n_star
         << ", \"k\": " << io::fmt(fit.k) << ", \"holds\": " << (fit.holds ? "true" : "false")
         << "}\n}\n";
    std::ofstream(out_file(opt, "consensus_meta.json")) << meta.str();
    std::cout << "wrote " << out_file(opt, "consensus.csv").string() << "\n";
    return kExitOk;
}

int cmd_verify(const Options& opt) {
    const std::vector<acceptance::CriterionResult> results = acceptance::run_all(opt.workers);
    std::ostringstream report;
    report << "{\n  \"criteria\": [";
    bool first = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS" : "FAIL") << (r.counts ? "  " : "* ") << "criterion "
                  << r.id << ": " << r.name << "\n      " << r.detail << "\n";
        report << (first ? "\n" : ",\n") << "    {\"id\": \"" << r.id << "\", \"passed\": "
               << (r.passed ? "true" : "false") << ", \"counts\": " << (r.counts ? "true" : "false")
               << ", \"detail\": \"" << r.detail << "\"}";
        first = false;
    }
    const bool ok = acceptance::all_passed(results);
    report << "\n  ],\n  \"all_passed\": " << (ok ? "true" : "false") << "\n}\n";
    if (!opt.out_dir.empty()) std::ofstream(out_file(opt, "verify.json")) << report.str();
    std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << "\n";
    return ok ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"design and analysis toolkit for multi-delay input-delay compensation"};
    app.require_subcommand(1);

    Options opt;
    opt.workers = default_workers();

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--system", opt.system_path, "system definition JSON");
        sub->add_option("--network", opt.network_path, "network adjacency JSON");
        sub->add_option("--gamma", opt.gamma, "design parameter gamma");
        sub->add_option("--gamma-range", opt.gamma_range, "sweep grid lo:hi:n");
        sub->add_option("--kind", opt.kind, "controller kind: tpf|tppf|ppf|mr (sweep: tpf|tppf|both)");
        sub->add_option("--horizon", opt.horizon, "simulation horizon");
        sub->add_option("--step", opt.step, "integration step (0 = default)");
        sub->add_option("--mu", opt.mu, "consensus coupling gain (default: network bound)");
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--workers", opt.workers, "worker threads for sweeps");
        sub->add_flag("--per-agent", opt.per_agent, "emit per-agent trajectory CSVs");
    };

    CLI::App* design = app.add_subcommand("design", "solve the parametric design and write gains");
    CLI::App* check = app.add_subcommand("check", "report the model assumptions for a system");
    CLI::App* sweep = app.add_subcommand("sweep", "spectral-abscissa sweep over gamma");
    CLI::App* simulate = app.add_subcommand("simulate", "closed-loop time-domain simulation");
    CLI::App* consensus_cmd = app.add_subcommand("consensus", "multi-agent consensus run");
    CLI::App* verify = app.add_subcommand("verify", "run the built-in verification suite");
    for (CLI::App* sub : {design, check, sweep, simulate, consensus_cmd, verify}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError&) {
        std::cerr << "usage error; see --help\n";
        return kExitUsage;
    }

    try {
        if (design->parsed()) return cmd_design(opt);
        if (check->parsed()) return cmd_check(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
        if (simulate->parsed()) return cmd_simulate(opt);
        if (consensus_cmd->parsed()) return cmd_consensus(opt);
        if (verify->parsed()) return cmd_verify(opt);
    } catch (const IoError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitMissingInput;
    } catch (const AssumptionError& e) {
        std::cerr << "assumption failure: " << e.what() << "\n";
        return kExitAssumption;
    } catch (const ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DimensionError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const HistoryError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
