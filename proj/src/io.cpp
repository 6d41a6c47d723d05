#include "delayctl/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "delayctl/errors.hpp"

namespace delayctl::io {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt(const Matrix& M) {
    std::ostringstream out;
    out << "[";
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        out << (i ? ", [" : "[");
        for (Eigen::Index j = 0; j < M.cols(); ++j) out << (j ? ", " : "") << fmt(M(i, j));
        out << "]";
    }
    out << "]";
    return out.str();
}

namespace {

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    return j;
}

Matrix matrix_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty() || !j.front().is_array())
        throw IoError(what + ": expected an array of arrays");
    const size_t rows = j.size();
    const size_t cols = j.front().size();
    Matrix M(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw IoError(what + ": ragged rows");
        for (size_t c = 0; c < cols; ++c) {
            if (!j[i][c].is_number()) throw IoError(what + ": non-numeric entry");
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = j[i][c].get<double>();
        }
    }
    return M;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

}  // namespace

LoadedSystem load_system(const std::string& path) {
    const json j = parse_file(path);
    if (!j.contains("A") || !j.contains("channels"))
        throw IoError(path + ": system file needs keys \"A\" and \"channels\"");
    const Matrix A = matrix_from_json(j["A"], path + ":A");

    struct Raw {
        Matrix B;
        double tau;
        int index;
    };
    std::vector<Raw> raw;
    int idx = 0;
    for (const json& cj : j["channels"]) {
        if (!cj.contains("B") || !cj.contains("tau"))
            throw IoError(path + ": each channel needs \"B\" and \"tau\"");
        raw.push_back({matrix_from_json(cj["B"], path + ":channel B"), cj["tau"].get<double>(), idx++});
    }
    std::stable_sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.tau < b.tau; });

    std::vector<InputChannel> channels;
    std::vector<int> permutation;
    for (Raw& r : raw) {
        channels.push_back({std::move(r.B), r.tau});
        permutation.push_back(r.index);
    }
    return LoadedSystem{DelaySystem(A, std::move(channels)), std::move(permutation)};
}

void save_system(const DelaySystem& sys, const std::string& path) {
    std::ostringstream out;
    out << "{\n  \"A\": " << fmt(sys.A()) << ",\n  \"channels\": [";
    for (size_t i = 0; i < sys.channels().size(); ++i) {
        const InputChannel& ch = sys.channels()[i];
        out << (i ? ",\n    {" : "\n    {") << "\"B\": " << fmt(ch.B)
            << ", \"tau\": " << fmt(ch.tau) << "}";
    }
    out << "\n  ]\n}\n";
    write_text(path, out.str());
}

Matrix load_network_adjacency(const std::string& path) {
    const json j = parse_file(path);
    if (!j.contains("alpha")) throw IoError(path + ": network file needs key \"alpha\"");
    return matrix_from_json(j["alpha"], path + ":alpha");
}

void save_network_adjacency(const Matrix& alpha, const std::string& path) {
    write_text(path, "{\n  \"alpha\": " + fmt(alpha) + "\n}\n");
}

void save_gain(const GainArtifacts& g, const std::string& path) {
    std::ostringstream out;
    out << "{\n"
        << "  \"gamma\": " << fmt(g.gamma) << ",\n"
        << "  \"F\": " << fmt(g.F) << ",\n"
        << "  \"K_TPF\": " << fmt(g.K_tpf) << ",\n"
        << "  \"K_TPPF\": " << fmt(g.K_tppf) << ",\n"
        << "  \"W\": " << fmt(g.W) << ",\n"
        << "  \"P\": " << fmt(g.P) << ",\n"
        << "  \"residuals\": {\n"
        << "    \"are\": " << fmt(g.residual_are) << ",\n"
        << "    \"lyapunov\": " << fmt(g.residual_lyapunov) << ",\n"
        << "    \"commutation\": " << fmt(g.residual_commutation) << ",\n"
        << "    \"trace_gap\": " << fmt(g.trace_gap) << "\n"
        << "  }\n}\n";
    write_text(path, out.str());
}

GainArtifacts load_gain(const std::string& path) {
    const json j = parse_file(path);
    GainArtifacts g;
    g.gamma = j.at("gamma").get<double>();
    g.F = matrix_from_json(j.at("F"), path + ":F");
    g.K_tpf = matrix_from_json(j.at("K_TPF"), path + ":K_TPF");
    g.K_tppf = matrix_from_json(j.at("K_TPPF"), path + ":K_TPPF");
    g.W = matrix_from_json(j.at("W"), path + ":W");
    g.P = matrix_from_json(j.at("P"), path + ":P");
    g.residual_are = j.at("residuals").at("are").get<double>();
    g.residual_lyapunov = j.at("residuals").at("lyapunov").get<double>();
    g.residual_commutation = j.at("residuals").at("commutation").get<double>();
    g.trace_gap = j.at("residuals").at("trace_gap").get<double>();
    return g;
}

void save_sweep_csv(const spectrum::SweepResult& r, const std::string& path) {
    std::ostringstream out;
    out << "gamma,lambda_max\n";
    for (size_t i = 0; i < r.gammas.size(); ++i)
        out << fmt(r.gammas[i]) << "," << fmt(r.lambdas[i]) << "\n";
    write_text(path, out.str());
}

void save_sweep_summary(const spectrum::SweepResult& r, const std::string& path) {
    std::ostringstream out;
    out << "{\n"
        << "  \"gamma_sup\": " << fmt(r.gamma_sup) << ",\n"
        << "  \"gamma_opt\": " << fmt(r.gamma_opt) << ",\n"
        << "  \"lambda_max_min\": " << fmt(r.lambda_max_min) << ",\n"
        << "  \"N_used\": " << r.order_used << ",\n"
        << "  \"stable_interval_found\": " << (r.stable_interval_found ? "true" : "false")
        << "\n}\n";
    write_text(path, out.str());
}

spectrum::SweepResult load_sweep_summary(const std::string& path) {
    const json j = parse_file(path);
    spectrum::SweepResult r;
    r.gamma_sup = j.at("gamma_sup").get<double>();
    r.gamma_opt = j.at("gamma_opt").get<double>();
    r.lambda_max_min = j.at("lambda_max_min").get<double>();
    r.order_used = j.at("N_used").get<int>();
    r.stable_interval_found = j.at("stable_interval_found").get<bool>();
    return r;
}

void save_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ostringstream out;
    out << "t";
    const int n = traj.states.empty() ? 0 : static_cast<int>(traj.states.front().size());
    const int m = traj.inputs.empty() ? 0 : static_cast<int>(traj.inputs.front().size());
    for (int i = 1; i <= n; ++i) out << ",x" << i;
    for (int i = 1; i <= m; ++i) out << ",u" << i;
    out << "\n";
    for (size_t s = 0; s < traj.times.size(); ++s) {
        out << fmt(traj.times[s]);
        for (int i = 0; i < n; ++i) out << "," << fmt(traj.states[s](i));
        if (m > 0)
            for (int i = 0; i < m; ++i) out << "," << fmt(traj.inputs[s](i));
        out << "\n";
    }
    write_text(path, out.str());
}

void save_consensus_csv(const consensus::ConsensusRun& run, const std::string& path) {
    std::ostringstream out;
    out << "t,d,|x1|\n";
    for (size_t s = 0; s < run.times.size(); ++s)
        out << fmt(run.times[s]) << "," << fmt(run.disagreement[s]) << ","
            << fmt(run.reference_norm[s]) << "\n";
    write_text(path, out.str());
}

}  // namespace delayctl::io
