#include "auvctl/vehicle_params.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "auvctl/angles.hpp"
#include "auvctl/errors.hpp"

namespace auvctl {

using json = nlohmann::json;

double CoefficientTable::eval(double alpha_rad) const {
    const double a = rad2deg(alpha_rad);
    if (alpha_deg.empty()) return 0.0;
    if (a <= alpha_deg.front()) return value.front();
    if (a >= alpha_deg.back()) return value.back();
    for (std::size_t i = 1; i < alpha_deg.size(); ++i) {
        if (a <= alpha_deg[i]) {
            const double t = (a - alpha_deg[i - 1]) / (alpha_deg[i] - alpha_deg[i - 1]);
            return value[i - 1] + t * (value[i] - value[i - 1]);
        }
    }
    return value.back();
}

namespace {

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("parameter file: missing field '" + key + "'");
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError("parameter file: field '" + key + "' must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError("parameter file: field '" + key + "' is not finite");
    return x;
}

std::vector<double> require_array(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("parameter file: missing field '" + key + "'");
    const auto& v = j.at(key);
    if (!v.is_array()) throw ConfigError("parameter file: field '" + key + "' must be an array");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number() || !std::isfinite(e.get<double>()))
            throw ConfigError("parameter file: field '" + key + "' has a non-finite entry");
        out.push_back(e.get<double>());
    }
    return out;
}

const std::set<std::string> kKnownKeys = {
    "m", "L_AUV", "D_AUV", "rho", "g0", "r_bG", "r44",
    "T1", "T2", "T3", "T4", "T5", "T6",
    "A_r", "A_s", "C_L_delta_r", "C_L_delta_s", "x_r", "x_s",
    "alpha_X", "beta_X", "alpha_K", "beta_K",
    "S", "C_d_2D",
    "C_L_alpha_deg", "C_L_values", "C_D_alpha_deg", "C_D_values",
    "crossflow_pairing", "munk_moment",
};

} // namespace

VehicleParams load_params(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("parameter file not found: " + file.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("parameter file " + file.string() + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError("parameter file must be a JSON object");

    for (const auto& [key, _] : j.items()) {
        if (!kKnownKeys.count(key))
            throw ConfigError("parameter file: unknown key '" + key + "'");
    }

    VehicleParams p;
    p.m = require_number(j, "m");
    if (p.m <= 0.0) throw ConfigError("parameter file: mass must be positive");
    p.L_AUV = require_number(j, "L_AUV");
    p.D_AUV = require_number(j, "D_AUV");
    if (!(p.L_AUV > p.D_AUV && p.D_AUV > 0.0))
        throw ConfigError("parameter file: need L_AUV > D_AUV > 0");
    p.rho = require_number(j, "rho");
    if (p.rho <= 0.0) throw ConfigError("parameter file: rho must be positive");
    p.g0 = require_number(j, "g0");

    const auto rg = require_array(j, "r_bG");
    if (rg.size() != 3) throw ConfigError("parameter file: r_bG must have 3 entries");
    p.r_bG = Eigen::Vector3d(rg[0], rg[1], rg[2]);

    p.r44 = require_number(j, "r44");
    p.T1 = require_number(j, "T1");
    p.T2 = require_number(j, "T2");
    p.T3 = require_number(j, "T3");
    p.T4 = require_number(j, "T4");
    p.T5 = require_number(j, "T5");
    p.T6 = require_number(j, "T6");
    for (double t : {p.T1, p.T2, p.T3, p.T4, p.T5, p.T6}) {
        if (t <= 0.0) throw ConfigError("parameter file: damping time constants T1..T6 must be positive");
    }

    p.A_r = require_number(j, "A_r");
    p.A_s = require_number(j, "A_s");
    p.C_L_delta_r = require_number(j, "C_L_delta_r");
    p.C_L_delta_s = require_number(j, "C_L_delta_s");
    p.x_r = require_number(j, "x_r");
    p.x_s = require_number(j, "x_s");
    p.alpha_X = require_number(j, "alpha_X");
    p.beta_X = require_number(j, "beta_X");
    p.alpha_K = require_number(j, "alpha_K");
    p.beta_K = require_number(j, "beta_K");
    p.S = require_number(j, "S");
    p.C_d_2D = require_number(j, "C_d_2D");

    p.C_L.alpha_deg = require_array(j, "C_L_alpha_deg");
    p.C_L.value = require_array(j, "C_L_values");
    p.C_D.alpha_deg = require_array(j, "C_D_alpha_deg");
    p.C_D.value = require_array(j, "C_D_values");
    for (const auto* t : {&p.C_L, &p.C_D}) {
        if (t->alpha_deg.size() != t->value.size() || t->alpha_deg.size() < 2)
            throw ConfigError("parameter file: coefficient tables need >= 2 matched entries");
        for (std::size_t i = 1; i < t->alpha_deg.size(); ++i) {
            if (t->alpha_deg[i] <= t->alpha_deg[i - 1])
                throw ConfigError("parameter file: coefficient table angles must be strictly increasing");
        }
    }

    if (j.contains("munk_moment")) {
        const std::string s = j.at("munk_moment").get<std::string>();
        if (s == "on") p.munk_moment = true;
        else if (s == "off") p.munk_moment = false;
        else throw ConfigError("parameter file: munk_moment must be 'on' or 'off'");
    }

    if (j.contains("crossflow_pairing")) {
        const std::string s = j.at("crossflow_pairing").get<std::string>();
        if (s == "standard") p.crossflow_pairing = CrossflowPairing::Standard;
        else if (s == "paper") p.crossflow_pairing = CrossflowPairing::Paper;
        else throw ConfigError("parameter file: crossflow_pairing must be 'standard' or 'paper'");
    }

    return p;
}

std::string save_params(const VehicleParams& p) {
    // std::map-backed json keeps keys sorted -> canonical ordering
    json j;
    j["m"] = p.m;
    j["L_AUV"] = p.L_AUV;
    j["D_AUV"] = p.D_AUV;
    j["rho"] = p.rho;
    j["g0"] = p.g0;
    j["r_bG"] = {p.r_bG.x(), p.r_bG.y(), p.r_bG.z()};
    j["r44"] = p.r44;
    j["T1"] = p.T1;
    j["T2"] = p.T2;
    j["T3"] = p.T3;
    j["T4"] = p.T4;
    j["T5"] = p.T5;
    j["T6"] = p.T6;
    j["A_r"] = p.A_r;
    j["A_s"] = p.A_s;
    j["C_L_delta_r"] = p.C_L_delta_r;
    j["C_L_delta_s"] = p.C_L_delta_s;
    j["x_r"] = p.x_r;
    j["x_s"] = p.x_s;
    j["alpha_X"] = p.alpha_X;
    j["beta_X"] = p.beta_X;
    j["alpha_K"] = p.alpha_K;
    j["beta_K"] = p.beta_K;
    j["S"] = p.S;
    j["C_d_2D"] = p.C_d_2D;
    j["C_L_alpha_deg"] = p.C_L.alpha_deg;
    j["C_L_values"] = p.C_L.value;
    j["C_D_alpha_deg"] = p.C_D.alpha_deg;
    j["C_D_values"] = p.C_D.value;
    j["crossflow_pairing"] = p.crossflow_pairing == CrossflowPairing::Standard ? "standard" : "paper";
    j["munk_moment"] = p.munk_moment ? "on" : "off";
    return j.dump(2) + "\n";
}

void save_params(const VehicleParams& p, const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw ConfigError("cannot open for writing: " + file.string());
    out << save_params(p);
}

} // namespace auvctl
