#include "auvctl/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "auvctl/angles.hpp"
#include "auvctl/errors.hpp"

namespace auvctl {

using json = nlohmann::json;

double ReferenceSpec::psi_ref(double t) const {
    double r = t >= step_time_s ? deg2rad(psi_step_deg) : 0.0;
    if (sinusoid && t >= sinusoid_onset_s) {
        r += deg2rad(psi_amp_deg) * std::sin(2.0 * kPi * (t - sinusoid_onset_s) / psi_period_s);
    }
    return r;
}

double ReferenceSpec::z_ref(double t) const {
    double r = t >= step_time_s ? z_step_m : 0.0;
    if (sinusoid && t >= sinusoid_onset_s) {
        r += z_amp_m * std::sin(2.0 * kPi * (t - sinusoid_onset_s) / z_period_s);
    }
    return r;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError("scenario: field '" + path + "': " + msg);
}

void check_keys(const json& j, const std::string& path, const std::set<std::string>& known) {
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key)) fail(path.empty() ? key : path + "." + key, "unknown key");
    }
}

double num(const json& j, const std::string& path, const std::string& key,
           std::optional<double> def = std::nullopt) {
    if (!j.contains(key)) {
        if (def) return *def;
        fail(path + key, "missing required number");
    }
    if (!j.at(key).is_number()) fail(path + key, "must be a number");
    const double v = j.at(key).get<double>();
    if (!std::isfinite(v)) fail(path + key, "must be finite");
    return v;
}

std::string str(const json& j, const std::string& path, const std::string& key,
                std::optional<std::string> def = std::nullopt) {
    if (!j.contains(key)) {
        if (def) return *def;
        fail(path + key, "missing required string");
    }
    if (!j.at(key).is_string()) fail(path + key, "must be a string");
    return j.at(key).get<std::string>();
}

DeepcChannelSpec parse_deepc_channel(const json& j, const std::string& path,
                                     const std::filesystem::path& base_dir) {
    check_keys(j, path,
               {"T_fut", "T_ini", "T_d", "lambda_ini", "lambda_g", "Q", "R", "kind",
                "dataset", "u_min_deg", "u_max_deg", "y_min_deg", "y_max_deg"});
    DeepcChannelSpec c;
    c.cfg.T_fut = static_cast<int>(num(j, path + ".", "T_fut"));
    c.cfg.T_ini = static_cast<int>(num(j, path + ".", "T_ini"));
    c.cfg.T_d = static_cast<int>(num(j, path + ".", "T_d"));
    c.cfg.lambda_ini = num(j, path + ".", "lambda_ini");
    c.cfg.lambda_g = num(j, path + ".", "lambda_g");
    c.cfg.Q_scalar = num(j, path + ".", "Q");
    c.cfg.R_scalar = num(j, path + ".", "R");
    const std::string kind = str(j, path + ".", "kind", "page");
    if (kind == "page") c.cfg.kind = DataMatrixKind::Page;
    else if (kind == "hankel") c.cfg.kind = DataMatrixKind::Hankel;
    else fail(path + ".kind", "must be 'page' or 'hankel'");
    // DeePC angle channels operate in degrees; boxes are stored as given
    if (j.contains("u_min_deg")) c.cfg.u_min = num(j, path + ".", "u_min_deg");
    if (j.contains("u_max_deg")) c.cfg.u_max = num(j, path + ".", "u_max_deg");
    if (j.contains("y_min_deg")) c.cfg.y_min = num(j, path + ".", "y_min_deg");
    if (j.contains("y_max_deg")) c.cfg.y_max = num(j, path + ".", "y_max_deg");
    c.cfg.validate();
    std::filesystem::path ds = str(j, path + ".", "dataset");
    c.dataset = ds.is_absolute() ? ds : base_dir / ds;
    return c;
}

} // namespace

Scenario parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("scenario: top level must be a JSON object");
    check_keys(j, "",
               {"name", "controller", "mode", "duration_s", "seed", "rates", "vehicle",
                "initial_speed", "current", "references", "filters", "guidance",
                "waypoints", "pid", "deepc"});

    Scenario s;
    s.base_dir = base_dir;
    s.name = str(j, "", "name");
    const std::string ctrl = str(j, "", "controller");
    if (ctrl == "deepc") s.controller = ControllerKind::Deepc;
    else if (ctrl == "pid") s.controller = ControllerKind::Pid;
    else fail("controller", "must be 'deepc' or 'pid'");
    const std::string mode = str(j, "", "mode");
    if (mode == "setpoint") s.mode = ScenarioMode::Setpoint;
    else if (mode == "path") s.mode = ScenarioMode::Path;
    else fail("mode", "must be 'setpoint' or 'path'");
    s.duration_s = num(j, "", "duration_s");
    if (s.duration_s < 0.0) fail("duration_s", "must be >= 0");
    s.seed = static_cast<std::uint64_t>(num(j, "", "seed", 0.0));

    if (j.contains("rates")) {
        const auto& r = j.at("rates");
        check_keys(r, "rates", {"f_inner", "f_outer"});
        s.f_inner = num(r, "rates.", "f_inner", 20.0);
        s.f_outer = num(r, "rates.", "f_outer", 2.0);
    }
    if (s.f_inner <= 0.0 || s.f_outer <= 0.0) fail("rates", "must be positive");
    const double ratio = s.f_inner / s.f_outer;
    if (std::abs(ratio - std::round(ratio)) > 1e-9) {
        fail("rates", "f_inner must be an integer multiple of f_outer");
    }

    if (!j.contains("vehicle")) fail("vehicle", "missing required object");
    const auto& v = j.at("vehicle");
    check_keys(v, "vehicle", {"params_file", "n_p_rpm"});
    std::filesystem::path pf = str(v, "vehicle.", "params_file");
    s.params_file = pf.is_absolute() ? pf : base_dir / pf;
    s.n_p = num(v, "vehicle.", "n_p_rpm", 1000.0);
    if (s.n_p < 0.0) fail("vehicle.n_p_rpm", "must be >= 0");

    s.initial_speed = num(j, "", "initial_speed", -1.0);

    if (j.contains("current")) {
        const auto& c = j.at("current");
        check_keys(c, "current",
                   {"V_c", "beta_c_deg", "W_c", "sigma_V", "sigma_beta_deg", "sigma_W"});
        s.current.V_c = num(c, "current.", "V_c", 0.0);
        s.current.beta_c_deg = num(c, "current.", "beta_c_deg", 0.0);
        s.current.W_c = num(c, "current.", "W_c", 0.0);
        s.current.sigma_V = num(c, "current.", "sigma_V", 0.0);
        s.current.sigma_beta_deg = num(c, "current.", "sigma_beta_deg", 0.0);
        s.current.sigma_W = num(c, "current.", "sigma_W", 0.0);
        if (s.current.V_c < 0.0) fail("current.V_c", "must be >= 0");
    }

    if (j.contains("references")) {
        const auto& r = j.at("references");
        check_keys(r, "references",
                   {"step_time_s", "psi_step_deg", "z_step_m", "sinusoid"});
        s.references.step_time_s = num(r, "references.", "step_time_s", 10.0);
        s.references.psi_step_deg = num(r, "references.", "psi_step_deg", 0.0);
        s.references.z_step_m = num(r, "references.", "z_step_m", 0.0);
        if (r.contains("sinusoid")) {
            const auto& sn = r.at("sinusoid");
            check_keys(sn, "references.sinusoid",
                       {"enable", "onset_s", "psi_amp_deg", "psi_period_s", "z_amp_m",
                        "z_period_s"});
            if (sn.contains("enable") && !sn.at("enable").is_boolean()) {
                fail("references.sinusoid.enable", "must be a boolean");
            }
            s.references.sinusoid = sn.value("enable", false);
            s.references.sinusoid_onset_s = num(sn, "references.sinusoid.", "onset_s", 100.0);
            s.references.psi_amp_deg = num(sn, "references.sinusoid.", "psi_amp_deg", 10.0);
            s.references.psi_period_s = num(sn, "references.sinusoid.", "psi_period_s", 60.0);
            s.references.z_amp_m = num(sn, "references.sinusoid.", "z_amp_m", 3.0);
            s.references.z_period_s = num(sn, "references.sinusoid.", "z_period_s", 120.0);
        }
    }

    if (j.contains("filters")) {
        const auto& f = j.at("filters");
        check_keys(f, "filters", {"wn_psi", "wn_z"});
        s.wn_psi = num(f, "filters.", "wn_psi", 0.5);
        s.wn_z = num(f, "filters.", "wn_z", 0.1);
    }

    if (j.contains("guidance")) {
        const auto& g = j.at("guidance");
        check_keys(g, "guidance",
                   {"Delta_h", "Delta_v", "gamma_h", "gamma_v", "R_switch", "observer_wn"});
        s.guidance.Delta_h = num(g, "guidance.", "Delta_h", 5.0);
        s.guidance.Delta_v = num(g, "guidance.", "Delta_v", 5.0);
        s.guidance.gamma_h = num(g, "guidance.", "gamma_h", 0.006);
        s.guidance.gamma_v = num(g, "guidance.", "gamma_v", 0.006);
        s.guidance.R_switch = num(g, "guidance.", "R_switch", 2.0 * s.guidance.Delta_h);
        s.guidance.observer_wn = num(g, "guidance.", "observer_wn", 1.0);
    }

    if (j.contains("waypoints")) {
        const auto& w = j.at("waypoints");
        if (!w.is_array()) fail("waypoints", "must be an array of [x,y,z] triples");
        for (std::size_t i = 0; i < w.size(); ++i) {
            const auto& wp = w[i];
            if (!wp.is_array() || wp.size() != 3) {
                fail("waypoints[" + std::to_string(i) + "]", "must be an [x,y,z] triple");
            }
            s.waypoints.emplace_back(wp[0].get<double>(), wp[1].get<double>(),
                                     wp[2].get<double>());
        }
    }

    if (j.contains("pid")) {
        const auto& p = j.at("pid");
        check_keys(p, "pid",
                   {"Kp_psi", "Ki_psi", "Kd_psi", "Kp_theta", "Ki_theta", "Kd_theta",
                    "Kp_z", "Ki_z"});
        s.pid_psi = {num(p, "pid.", "Kp_psi", 7.5), num(p, "pid.", "Ki_psi", 0.75),
                     num(p, "pid.", "Kd_psi", 15.0)};
        s.pid_theta = {num(p, "pid.", "Kp_theta", 5.0), num(p, "pid.", "Ki_theta", 0.3),
                       num(p, "pid.", "Kd_theta", 2.0)};
        s.pid_z = {num(p, "pid.", "Kp_z", 0.1), num(p, "pid.", "Ki_z", 1e-3), 0.0};
    }

    if (j.contains("deepc")) {
        const auto& d = j.at("deepc");
        check_keys(d, "deepc", {"psi", "theta", "z", "theta_d_hold"});
        if (d.contains("theta_d_hold")) {
            s.theta_d_hold = str(d, "deepc.", "theta_d_hold", "interp");
            if (s.theta_d_hold != "interp" && s.theta_d_hold != "zoh") {
                fail("deepc.theta_d_hold", "must be 'interp' or 'zoh'");
            }
        }
        if (d.contains("psi")) s.deepc_psi = parse_deepc_channel(d.at("psi"), "deepc.psi", base_dir);
        if (d.contains("theta")) s.deepc_theta = parse_deepc_channel(d.at("theta"), "deepc.theta", base_dir);
        if (d.contains("z")) s.deepc_z = parse_deepc_channel(d.at("z"), "deepc.z", base_dir);
    }

    // cross-field requirements
    if (s.controller == ControllerKind::Deepc) {
        if (!s.deepc_psi) fail("deepc.psi", "required for controller 'deepc'");
        if (!s.deepc_theta) fail("deepc.theta", "required for controller 'deepc'");
        if (s.mode == ScenarioMode::Setpoint && !s.deepc_z) {
            fail("deepc.z", "required for setpoint depth control with 'deepc'");
        }
    }
    if (s.mode == ScenarioMode::Path) {
        if (s.waypoints.size() < 2) fail("waypoints", "path mode needs >= 2 waypoints");
        for (std::size_t i = 1; i < s.waypoints.size(); ++i) {
            if ((s.waypoints[i] - s.waypoints[i - 1]).norm() < 1e-9) {
                fail("waypoints[" + std::to_string(i) + "]", "coincides with its predecessor");
            }
        }
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("scenario file not found: " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), file.parent_path());
}

} // namespace auvctl
