#include "auvctl/metrics.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "auvctl/angles.hpp"
#include "auvctl/errors.hpp"

namespace auvctl {

using json = nlohmann::json;

double rmse(const std::vector<double>& signal, const std::vector<double>& reference) {
    if (signal.size() != reference.size() || signal.empty()) {
        throw ConfigError("rmse: sequences must be non-empty and equally long");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < signal.size(); ++i) {
        const double e = signal[i] - reference[i];
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(signal.size()));
}

double rmse_angle_deg(const std::vector<double>& signal,
                      const std::vector<double>& reference) {
    if (signal.size() != reference.size() || signal.empty()) {
        throw ConfigError("rmse: sequences must be non-empty and equally long");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < signal.size(); ++i) {
        const double e = rad2deg(ssa(signal[i] - reference[i]));
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(signal.size()));
}

namespace {

ChannelMetrics angle_channel(const TrajectoryLog& log, int eta_idx,
                             double LogRow::* ref) {
    ChannelMetrics c;
    double acc = 0.0;
    for (const auto& r : log.rows) {
        const double e = rad2deg(ssa(r.eta(eta_idx) - r.*ref));
        acc += e * e;
        c.max_abs_err = std::max(c.max_abs_err, std::abs(e));
    }
    c.rmse = std::sqrt(acc / static_cast<double>(log.rows.size()));
    return c;
}

json channel_json(const std::optional<ChannelMetrics>& c) {
    if (!c) return nullptr;
    json j;
    j["rmse"] = c->rmse;
    j["max_abs_err"] = c->max_abs_err;
    return j;
}

std::optional<ChannelMetrics> channel_from(const json& j, const std::string& key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    ChannelMetrics c;
    c.rmse = j.at(key).at("rmse").get<double>();
    c.max_abs_err = j.at(key).at("max_abs_err").get<double>();
    return c;
}

} // namespace

MetricsReport compute_metrics(const TrajectoryLog& log, bool include_z) {
    if (log.rows.empty()) throw ConfigError("compute_metrics: empty log");
    MetricsReport m;
    m.ticks = static_cast<long>(log.rows.size());
    m.duration_s = log.rows.back().t;
    m.psi_deg = angle_channel(log, 5, &LogRow::psi_d);
    m.theta_deg = angle_channel(log, 4, &LogRow::theta_d);
    if (include_z) {
        ChannelMetrics c;
        double acc = 0.0;
        for (const auto& r : log.rows) {
            const double e = r.eta(2) - r.z_d;
            acc += e * e;
            c.max_abs_err = std::max(c.max_abs_err, std::abs(e));
        }
        c.rmse = std::sqrt(acc / static_cast<double>(log.rows.size()));
        m.z_m = c;
    }
    return m;
}

std::string MetricsReport::to_json() const {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["scenario"] = scenario;
    j["controller"] = controller;
    j["mode"] = mode;
    j["seed"] = seed;
    j["ticks"] = ticks;
    j["duration_s"] = duration_s;
    j["psi_deg"] = channel_json(psi_deg);
    j["z_m"] = channel_json(z_m);
    j["theta_deg"] = channel_json(theta_deg);
    json solver;
    solver["solves"] = solver_solves;
    solver["failures"] = solver_failures;
    solver["iterations"] = solver_iterations;
    j["solver"] = solver;
    return j.dump(2) + "\n";
}

MetricsReport MetricsReport::from_json_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("metrics file not found: " + file.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("metrics file " + file.string() + ": " + e.what());
    }
    MetricsReport m;
    if (j.value("schema_version", 0) != kSchemaVersion) {
        throw ConfigError("metrics file " + file.string() + ": unsupported schema version");
    }
    m.scenario = j.value("scenario", "");
    m.controller = j.value("controller", "");
    m.mode = j.value("mode", "");
    m.seed = j.value("seed", 0ull);
    m.ticks = j.value("ticks", 0l);
    m.duration_s = j.value("duration_s", 0.0);
    m.psi_deg = channel_from(j, "psi_deg");
    m.z_m = channel_from(j, "z_m");
    m.theta_deg = channel_from(j, "theta_deg");
    if (j.contains("solver")) {
        m.solver_solves = j.at("solver").value("solves", 0l);
        m.solver_failures = j.at("solver").value("failures", 0l);
        m.solver_iterations = j.at("solver").value("iterations", 0l);
    }
    return m;
}

void MetricsReport::write_json(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw ConfigError("cannot open for writing: " + file.string());
    out << to_json();
}

std::vector<CompareRow> compare(const MetricsReport& a, const MetricsReport& b) {
    auto row = [](const std::string& name, const std::optional<ChannelMetrics>& ca,
                  const std::optional<ChannelMetrics>& cb) {
        CompareRow r;
        r.channel = name;
        if (ca) r.a = ca->rmse;
        if (cb) r.b = cb->rmse;
        if (!ca || !cb) {
            r.winner = "n/a";
        } else if (ca->rmse == cb->rmse) {
            r.winner = "tie";
        } else {
            r.winner = ca->rmse < cb->rmse ? "a" : "b";
        }
        return r;
    };
    return {row("psi_rmse_deg", a.psi_deg, b.psi_deg), row("z_rmse_m", a.z_m, b.z_m),
            row("theta_rmse_deg", a.theta_deg, b.theta_deg)};
}

std::string format_compare_table(const MetricsReport& a, const MetricsReport& b) {
    std::ostringstream os;
    const std::string na = a.scenario + "/" + a.controller;
    const std::string nb = b.scenario + "/" + b.controller;
    os << std::left << std::setw(16) << "channel" << std::setw(24) << na
       << std::setw(24) << nb << "winner\n";
    for (const auto& r : compare(a, b)) {
        os << std::left << std::setw(16) << r.channel;
        auto cell = [&](const std::optional<double>& v) {
            std::ostringstream c;
            if (v) c << std::setprecision(6) << *v;
            else c << "n/a";
            return c.str();
        };
        os << std::setw(24) << cell(r.a) << std::setw(24) << cell(r.b) << r.winner << "\n";
    }
    return os.str();
}

} // namespace auvctl
