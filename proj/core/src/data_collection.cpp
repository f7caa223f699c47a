#include "auvctl/data_collection.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "auvctl/errors.hpp"
#include "auvctl/sim_engine.hpp"

namespace auvctl {

double steady_surge_speed(const VehicleParams& params, const DerivedHydro& derived,
                          double n_p) {
    ControlInput ctrl;
    ctrl.n_p = n_p;
    const OceanCurrent no_current;
    auto surge_accel = [&](double u) {
        VehicleState s;
        s.nu(0) = u;
        return state_derivative(s, ctrl, no_current, params, derived)(6);
    };
    double lo = 0.0, hi = 10.0;
    if (surge_accel(lo) <= 0.0) return 0.0;
    while (surge_accel(hi) > 0.0 && hi < 50.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        (surge_accel(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

VehicleState trimmed_state(const VehicleParams& params, const DerivedHydro& derived,
                           double n_p) {
    VehicleState s;
    s.nu(0) = steady_surge_speed(params, derived, n_p);
    return s;
}

} // namespace

Dataset collect_inner(const VehicleParams& params, const DerivedHydro& derived,
                      InnerChannel channel, const ExcitationConfig& exc,
                      const CollectionConfig& cfg) {
    exc.validate(cfg.limits.delta_max, cfg.f_inner);
    const double h = 1.0 / cfg.f_inner;
    const auto ticks = static_cast<long>(std::llround(exc.duration * cfg.f_inner));

    PrbsSignal prbs(exc);
    VehicleState state = trimmed_state(params, derived, cfg.n_p);
    const OceanCurrent no_current;

    Dataset data;
    data.h = h;
    data.u.resize(ticks, 1);
    data.y.resize(ticks, 1);

    for (long k = 0; k < ticks; ++k) {
        const double t = h * static_cast<double>(k);
        const double delta =
            clamp_abs(chirp(t, exc) + prbs.value(t), cfg.limits.delta_max);
        ControlInput ctrl;
        ctrl.n_p = cfg.n_p;
        double y = 0.0;
        if (channel == InnerChannel::RudderYaw) {
            ctrl.delta_r = delta;
            y = state.eta(5);
        } else {
            ctrl.delta_s = delta;
            y = state.eta(4);
        }
        // angle channels are persisted in degrees
        data.u(k, 0) = rad2deg(delta);
        data.y(k, 0) = rad2deg(y);

        try {
            state = integrate_step(state, ctrl, no_current, h, params, derived,
                                   cfg.limits, t);
        } catch (const SimDivergedError&) {
            throw ConfigError("collect_inner: simulation diverged; reduce the excitation amplitude");
        }
        if (diverged(state)) {
            throw ConfigError("collect_inner: divergence guard tripped; reduce the excitation amplitude");
        }
    }
    return data;
}

Dataset collect_outer(const VehicleParams& params, const DerivedHydro& derived,
                      DeepcController& inner_theta, const ExcitationConfig& exc,
                      const CollectionConfig& cfg) {
    exc.validate(cfg.limits.theta_d_max, cfg.f_outer);
    const double h = 1.0 / cfg.f_inner;
    const int r_f = static_cast<int>(std::llround(cfg.f_inner / cfg.f_outer));
    const auto ticks = static_cast<long>(std::llround(exc.duration * cfg.f_inner));
    const auto outer_samples = ticks / r_f;

    PrbsSignal prbs(exc);
    auto theta_d_at = [&](double t) {
        return clamp_abs(chirp(t, exc) + prbs.value(t), cfg.limits.theta_d_max);
    };

    VehicleState state = trimmed_state(params, derived, cfg.n_p);
    const OceanCurrent no_current;
    const int n_fut = inner_theta.config().T_fut;

    Dataset data;
    data.h = 1.0 / cfg.f_outer;
    data.u.resize(outer_samples, 1);
    data.y.resize(outer_samples, 1);

    long recorded = 0;
    for (long k = 0; k < ticks; ++k) {
        const double t = h * static_cast<double>(k);
        if (k % r_f == 0 && recorded < outer_samples) {
            data.u(recorded, 0) = rad2deg(state.eta(4)); // realized theta (deg)
            data.y(recorded, 0) = state.eta(2);          // heave position (m)
            ++recorded;
        }

        // inner references: the excitation's true future samples (deg)
        Eigen::VectorXd refs(n_fut);
        for (int i = 0; i < n_fut; ++i) {
            refs(i) = rad2deg(theta_d_at(t + h * static_cast<double>(i + 1)));
        }
        const auto step =
            inner_theta.step(Eigen::VectorXd::Constant(1, rad2deg(state.eta(4))), refs);

        ControlInput ctrl;
        ctrl.n_p = cfg.n_p;
        ctrl.delta_s = deg2rad(step.u(0));
        try {
            state = integrate_step(state, ctrl, no_current, h, params, derived,
                                   cfg.limits, t);
        } catch (const SimDivergedError&) {
            throw ConfigError("collect_outer: simulation diverged; reduce the excitation amplitude");
        }
        if (diverged(state)) {
            throw ConfigError("collect_outer: divergence guard tripped; reduce the excitation amplitude");
        }
    }
    data.u.conservativeResize(recorded, 1);
    data.y.conservativeResize(recorded, 1);
    return data;
}

namespace {

using json = nlohmann::json;

ExcitationConfig parse_excitation(const json& j, const std::string& where,
                                  std::uint64_t default_seed) {
    ExcitationConfig e;
    auto get = [&](const char* key, double def) {
        if (!j.contains(key)) return def;
        if (!j.at(key).is_number()) {
            throw ConfigError("collect config: " + where + "." + key + " must be a number");
        }
        return j.at(key).get<double>();
    };
    e.amplitude = deg2rad(get("amplitude_deg", 15.0));
    e.f0 = get("f0", 0.01);
    e.f1 = get("f1", 0.5);
    e.duration = get("duration_s", 300.0);
    e.prbs_amplitude = deg2rad(get("prbs_amplitude_deg", 3.0));
    e.prbs_bit_period = get("prbs_bit_period_s", 1.0);
    e.seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : default_seed;
    return e;
}

DeePCConfig parse_inner_theta(const json& j) {
    DeePCConfig c;
    c.T_fut = j.at("T_fut").get<int>();
    c.T_ini = j.at("T_ini").get<int>();
    c.T_d = j.at("T_d").get<int>();
    c.lambda_ini = j.at("lambda_ini").get<double>();
    c.lambda_g = j.at("lambda_g").get<double>();
    c.Q_scalar = j.at("Q").get<double>();
    c.R_scalar = j.at("R").get<double>();
    const std::string kind = j.value("kind", "page");
    c.kind = kind == "hankel" ? DataMatrixKind::Hankel : DataMatrixKind::Page;
    c.validate();
    return c;
}

json excitation_json(const ExcitationConfig& e) {
    json j;
    j["amplitude_deg"] = rad2deg(e.amplitude);
    j["f0"] = e.f0;
    j["f1"] = e.f1;
    j["duration_s"] = e.duration;
    j["prbs_amplitude_deg"] = rad2deg(e.prbs_amplitude);
    j["prbs_bit_period_s"] = e.prbs_bit_period;
    j["seed"] = e.seed;
    return j;
}

void write_sidecar(const std::filesystem::path& dataset_file, const std::string& channel,
                   const ExcitationConfig& exc, const CollectionConfig& cfg) {
    json j;
    j["channel"] = channel;
    j["excitation"] = excitation_json(exc);
    j["f_inner"] = cfg.f_inner;
    j["f_outer"] = cfg.f_outer;
    j["n_p_rpm"] = cfg.n_p;
    std::filesystem::path meta = dataset_file;
    meta += ".meta.json";
    std::ofstream out(meta, std::ios::binary);
    if (!out) throw ConfigError("cannot open for writing: " + meta.string());
    out << j.dump(2) << "\n";
}

} // namespace

CollectionPlan load_collection_plan(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("collect config not found: " + file.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("collect config " + file.string() + ": " + e.what());
    }

    CollectionPlan plan;
    if (!j.contains("params_file")) {
        throw ConfigError("collect config: missing 'params_file'");
    }
    std::filesystem::path pf = j.at("params_file").get<std::string>();
    plan.params_file = pf.is_absolute() ? pf : file.parent_path() / pf;
    plan.cfg.f_inner = j.value("f_inner", 20.0);
    plan.cfg.f_outer = j.value("f_outer", 2.0);
    plan.cfg.n_p = j.value("n_p_rpm", 1000.0);
    plan.seed = j.value("seed", 1ull);

    if (!j.contains("channels") || !j.at("channels").is_object()) {
        throw ConfigError("collect config: missing 'channels' object");
    }
    const auto& ch = j.at("channels");
    auto parse_channel = [&](const char* name) -> std::optional<ChannelPlan> {
        if (!ch.contains(name)) return std::nullopt;
        const auto& c = ch.at(name);
        ChannelPlan p;
        p.exc = parse_excitation(c.value("excitation", json::object()),
                                 std::string("channels.") + name, plan.seed);
        p.output = c.value("output", std::string("deepc_") + name + ".csv");
        return p;
    };
    plan.psi = parse_channel("psi");
    plan.theta = parse_channel("theta");
    plan.z = parse_channel("z");
    if (plan.z) {
        if (!ch.at("z").contains("inner_theta")) {
            throw ConfigError("collect config: channels.z needs an 'inner_theta' block");
        }
        plan.inner_theta_cfg = parse_inner_theta(ch.at("z").at("inner_theta"));
        if (!plan.theta) {
            throw ConfigError("collect config: the z channel requires the theta channel");
        }
    }
    return plan;
}

std::vector<std::filesystem::path> run_collection(const CollectionPlan& plan,
                                                  const std::filesystem::path& out_dir) {
    const VehicleParams params = load_params(plan.params_file);
    const DerivedHydro derived = derive_hydro(params);
    std::filesystem::create_directories(out_dir);

    std::vector<std::filesystem::path> written;
    Dataset theta_ds;
    bool have_theta = false;

    if (plan.psi) {
        const Dataset ds = collect_inner(params, derived, InnerChannel::RudderYaw,
                                         plan.psi->exc, plan.cfg);
        const auto path = out_dir / plan.psi->output;
        ds.write_csv(path);
        write_sidecar(path, "psi", plan.psi->exc, plan.cfg);
        written.push_back(path);
    }
    if (plan.theta) {
        theta_ds = collect_inner(params, derived, InnerChannel::SternPitch,
                                 plan.theta->exc, plan.cfg);
        have_theta = true;
        const auto path = out_dir / plan.theta->output;
        theta_ds.write_csv(path);
        write_sidecar(path, "theta", plan.theta->exc, plan.cfg);
        written.push_back(path);
    }
    if (plan.z) {
        if (!have_theta || !plan.inner_theta_cfg) {
            throw ConfigError("run_collection: z channel requires theta data and inner_theta config");
        }
        DeePCConfig inner_cfg = *plan.inner_theta_cfg;
        inner_cfg.u_min = -rad2deg(plan.cfg.limits.delta_max);
        inner_cfg.u_max = rad2deg(plan.cfg.limits.delta_max);
        inner_cfg.y_min = -rad2deg(plan.cfg.limits.theta_d_max);
        inner_cfg.y_max = rad2deg(plan.cfg.limits.theta_d_max);
        PartitionSpec ps;
        ps.T_ini = inner_cfg.T_ini;
        ps.N = inner_cfg.T_fut;
        ps.kind = inner_cfg.kind;
        ps.max_cols = inner_cfg.T_d;
        DeepcController inner(partition(theta_ds.u, theta_ds.y, ps), inner_cfg);

        const Dataset ds = collect_outer(params, derived, inner, plan.z->exc, plan.cfg);
        const auto path = out_dir / plan.z->output;
        ds.write_csv(path);
        write_sidecar(path, "z", plan.z->exc, plan.cfg);
        written.push_back(path);
    }
    return written;
}

} // namespace auvctl
