#include "auvctl/scenario_runner.hpp"

#include <cmath>

#include "auvctl/cascade.hpp"
#include "auvctl/csv_io.hpp"
#include "auvctl/data_collection.hpp"
#include "auvctl/errors.hpp"
#include "auvctl/palos.hpp"
#include "auvctl/reference_filter.hpp"

namespace auvctl {

namespace {

DataBlocks blocks_from_spec(const DeepcChannelSpec& spec) {
    const Dataset ds = Dataset::read_csv(spec.dataset);
    PartitionSpec ps;
    ps.T_ini = spec.cfg.T_ini;
    ps.N = spec.cfg.T_fut;
    ps.kind = spec.cfg.kind;
    ps.max_cols = spec.cfg.T_d;
    return partition(ds.u, ds.y, ps);
}

struct SolverTally {
    long solves = 0;
    long failures = 0;
    long iterations = 0;

    void add(const DeepcController::Totals& t) {
        solves += t.solves;
        failures += t.failures;
        iterations += t.iterations;
    }
};

} // namespace

RunResult run_scenario(const Scenario& sc) {
    const VehicleParams params = load_params(sc.params_file);
    const DerivedHydro derived = derive_hydro(params);

    const double h = 1.0 / sc.f_inner;
    const int r_f = static_cast<int>(std::llround(sc.f_inner / sc.f_outer));
    const auto ticks = static_cast<long>(std::llround(sc.duration_s * sc.f_inner));
    const ControlLimits limits;

    VehicleState state;
    state.nu(0) = sc.initial_speed >= 0.0 ? sc.initial_speed
                                          : steady_surge_speed(params, derived, sc.n_p);

    OceanCurrent nominal;
    nominal.V_c = sc.current.V_c;
    nominal.beta_c = deg2rad(sc.current.beta_c_deg);
    nominal.W_c = sc.current.W_c;
    const bool perturbed = sc.current.sigma_V > 0.0 || sc.current.sigma_beta_deg > 0.0 ||
                           sc.current.sigma_W > 0.0;
    std::mt19937_64 rng(sc.seed);

    // reference shaping (setpoint mode)
    ReferenceFilter psi_filter(sc.wn_psi);
    ReferenceFilter z_filter(sc.wn_z);

    // guidance (path mode)
    GuidanceState gs;
    if (sc.mode == ScenarioMode::Path) {
        gs.path.waypoints = sc.waypoints;
        gs.path.validate();
        gs.alos.Delta_h = sc.guidance.Delta_h;
        gs.alos.Delta_v = sc.guidance.Delta_v;
        gs.alos.gamma_h = sc.guidance.gamma_h;
        gs.alos.gamma_v = sc.guidance.gamma_v;
        gs.alos.validate();
        gs.obs_psi = LosObserver(sc.guidance.observer_wn);
        gs.obs_theta = LosObserver(sc.guidance.observer_wn);
        gs.r_switch = sc.guidance.R_switch;
        // start on the first segment heading
        state.eta.head<3>() = sc.waypoints.front();
        const PathAngles a0 =
            path_angles(path_tangent(sc.waypoints[0], sc.waypoints[1]));
        state.eta(5) = a0.pi_h;
    }

    // controllers
    std::unique_ptr<DeepcController> psi_ctrl;
    std::unique_ptr<DeepcController> theta_ctrl; // path mode inner pitch DeePC
    std::unique_ptr<CascadeController> cascade;  // setpoint depth cascade
    IntegratorState pid_psi_state;
    DepthCascadeState pid_depth_state;
    IntegratorState pid_pitch_state; // path mode inner pitch PID

    // DeePC channels operate in degrees (angles) and meters (depth)
    const double delta_max_deg = rad2deg(limits.delta_max);
    const double theta_max_deg = rad2deg(limits.theta_d_max);
    int t_fut_psi = 0, t_fut_guid = 0;
    if (sc.controller == ControllerKind::Deepc) {
        DeePCConfig psi_cfg = sc.deepc_psi->cfg;
        psi_cfg.u_min = -delta_max_deg;
        psi_cfg.u_max = delta_max_deg;
        psi_ctrl = std::make_unique<DeepcController>(blocks_from_spec(*sc.deepc_psi),
                                                     psi_cfg);
        t_fut_psi = psi_cfg.T_fut;

        DeePCConfig th_cfg = sc.deepc_theta->cfg;
        th_cfg.u_min = -delta_max_deg;
        th_cfg.u_max = delta_max_deg;
        th_cfg.y_min = -theta_max_deg;
        th_cfg.y_max = theta_max_deg;
        if (sc.mode == ScenarioMode::Setpoint) {
            DeePCConfig z_cfg = sc.deepc_z->cfg;
            z_cfg.u_min = -theta_max_deg;
            z_cfg.u_max = theta_max_deg;
            CascadeConfig cc;
            cc.outer = z_cfg;
            cc.inner = th_cfg;
            cc.r_f = r_f;
            cc.hold = sc.theta_d_hold == "zoh" ? ThetaDHold::Zoh : ThetaDHold::Interp;
            cascade = std::make_unique<CascadeController>(blocks_from_spec(*sc.deepc_z),
                                                          blocks_from_spec(*sc.deepc_theta),
                                                          cc);
        } else {
            theta_ctrl = std::make_unique<DeepcController>(
                blocks_from_spec(*sc.deepc_theta), th_cfg);
            t_fut_guid = std::max(psi_cfg.T_fut, th_cfg.T_fut);
        }
    }

    TrajectoryLog log;
    log.h = h;
    log.rows.reserve(static_cast<std::size_t>(ticks) + 1);

    ControlInput last_ctrl;
    last_ctrl.n_p = sc.n_p;
    double last_psi_d = state.eta(5), last_theta_d = 0.0, last_z_d = 0.0;
    bool last_ok = true;

    for (long k = 0; k < ticks; ++k) {
        const double t = h * static_cast<double>(k);
        const double psi = state.eta(5);
        const double theta = state.eta(4);
        const double z = state.eta(2);
        const double r_rate = state.nu(5);
        const double q_rate = state.nu(4);

        ControlInput ctrl;
        ctrl.n_p = sc.n_p;
        double psi_d = last_psi_d, theta_d = last_theta_d, z_d = last_z_d;
        bool ok = true;

        if (sc.mode == ScenarioMode::Setpoint) {
            const double psi_ref = sc.references.psi_ref(t);
            const double z_ref = sc.references.z_ref(t);

            if (sc.controller == ControllerKind::Deepc) {
                const auto psi_refs_v = psi_filter.predict(psi_ref, t_fut_psi, h);
                Eigen::VectorXd psi_refs(t_fut_psi);
                for (int i = 0; i < t_fut_psi; ++i) psi_refs(i) = rad2deg(psi_refs_v[i]);
                const auto ps =
                    psi_ctrl->step(Eigen::VectorXd::Constant(1, rad2deg(psi)), psi_refs);
                ctrl.delta_r = deg2rad(ps.u(0));
                ok = ok && ps.solver_ok;

                const auto cs = cascade->step(z, rad2deg(theta), [&](int n) {
                    const auto zs = z_filter.predict(z_ref, n, h * r_f);
                    return Eigen::Map<const Eigen::VectorXd>(zs.data(), n).eval();
                });
                ctrl.delta_s = deg2rad(cs.delta_s);
                theta_d = deg2rad(cs.theta_d);
                ok = ok && cs.inner_ok && cs.outer_ok;
            }
            psi_d = psi_filter.step(psi_ref, h);
            z_d = z_filter.step(z_ref, h);
            if (sc.controller == ControllerKind::Pid) {
                ctrl.delta_r = pid_heading(psi, psi_d, r_rate, pid_psi_state,
                                           sc.pid_psi, h, limits.delta_max);
                const auto dc = cascaded_depth(z, z_d, theta, q_rate, pid_depth_state,
                                               {sc.pid_z, sc.pid_theta}, h,
                                               limits.delta_max, limits.theta_d_max);
                ctrl.delta_s = dc.delta_s;
                theta_d = dc.theta_d;
            }
        } else { // path following
            const Eigen::Vector3d p = state.eta.head<3>();
            if (sc.controller == ControllerKind::Deepc) {
                const PalosReferences refs = palos_references(state, gs, t_fut_guid, h, 1);
                Eigen::VectorXd psi_refs(sc.deepc_psi->cfg.T_fut);
                for (int i = 0; i < psi_refs.size(); ++i) {
                    // keep the reference continuous in the unwrapped psi domain
                    psi_refs(i) =
                        rad2deg(psi + ssa(refs.psi_d[static_cast<std::size_t>(i)] - psi));
                }
                Eigen::VectorXd th_refs(sc.deepc_theta->cfg.T_fut);
                for (int i = 0; i < th_refs.size(); ++i) {
                    th_refs(i) = rad2deg(refs.theta_d[static_cast<std::size_t>(i)]);
                }
                const auto ps =
                    psi_ctrl->step(Eigen::VectorXd::Constant(1, rad2deg(psi)), psi_refs);
                ctrl.delta_r = deg2rad(ps.u(0));
                const auto ts = theta_ctrl->step(
                    Eigen::VectorXd::Constant(1, rad2deg(theta)), th_refs);
                ctrl.delta_s = deg2rad(ts.u(0));
                ok = ps.solver_ok && ts.solver_ok;
            }
            const GuidanceOutput go = guidance_step(gs, p, h);
            psi_d = go.psi_d;
            theta_d = go.theta_d;
            z_d = std::numeric_limits<double>::quiet_NaN();
            if (sc.controller == ControllerKind::Pid) {
                ctrl.delta_r = pid_heading(psi, go.psi_d, r_rate, pid_psi_state,
                                           sc.pid_psi, h, limits.delta_max);
                const double e_th = ssa(theta - go.theta_d);
                const double it = pid_pitch_state.advance(e_th, h);
                ctrl.delta_s = clamp_abs(sc.pid_theta.Kp * e_th + sc.pid_theta.Kd * q_rate +
                                             sc.pid_theta.Ki * it,
                                         limits.delta_max);
            }
        }

        const ControlInput sat = saturate(ctrl, limits);
        LogRow row;
        row.t = t;
        row.eta = state.eta;
        row.nu = state.nu;
        row.ctrl = sat;
        row.psi_d = psi_d;
        row.theta_d = theta_d;
        row.z_d = z_d;
        row.beta_c_hat = gs.alos.beta_hat;
        row.alpha_c_hat = gs.alos.alpha_hat;
        row.solver_ok = ok;
        log.rows.push_back(row);

        last_ctrl = sat;
        last_psi_d = psi_d;
        last_theta_d = theta_d;
        last_z_d = z_d;
        last_ok = ok;

        const OceanCurrent cur =
            perturbed ? perturb_current(nominal, sc.current.sigma_V,
                                        deg2rad(sc.current.sigma_beta_deg),
                                        sc.current.sigma_W, rng)
                      : nominal;
        state = integrate_step(state, sat, cur, h, params, derived, limits, t);
        if (diverged(state)) {
            throw SimDivergedError("divergence guard tripped", t + h);
        }
    }

    // terminal sample
    LogRow row;
    row.t = h * static_cast<double>(ticks);
    row.eta = state.eta;
    row.nu = state.nu;
    row.ctrl = last_ctrl;
    row.psi_d = ticks > 0 ? last_psi_d : state.eta(5);
    row.theta_d = last_theta_d;
    row.z_d = sc.mode == ScenarioMode::Path ? std::numeric_limits<double>::quiet_NaN()
                                            : last_z_d;
    row.beta_c_hat = gs.alos.beta_hat;
    row.alpha_c_hat = gs.alos.alpha_hat;
    row.solver_ok = last_ok;
    log.rows.push_back(row);

    RunResult out;
    out.log = std::move(log);
    out.metrics = compute_metrics(out.log, sc.mode == ScenarioMode::Setpoint);
    out.metrics.scenario = sc.name;
    out.metrics.controller = sc.controller == ControllerKind::Deepc ? "deepc" : "pid";
    out.metrics.mode = sc.mode == ScenarioMode::Setpoint ? "setpoint" : "path";
    out.metrics.seed = sc.seed;

    SolverTally tally;
    if (psi_ctrl) tally.add(psi_ctrl->totals());
    if (theta_ctrl) tally.add(theta_ctrl->totals());
    if (cascade) {
        tally.add(cascade->outer().totals());
        tally.add(cascade->inner().totals());
    }
    out.metrics.solver_solves = tally.solves;
    out.metrics.solver_failures = tally.failures;
    out.metrics.solver_iterations = tally.iterations;
    return out;
}

RunResult run_scenario(const std::filesystem::path& config_file) {
    return run_scenario(load_scenario(config_file));
}

void write_outputs(const RunResult& result, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::string base = result.metrics.scenario + "_" + result.metrics.controller;
    result.log.write_csv(out_dir / (base + "_trajectory.csv"));
    result.metrics.write_json(out_dir / (base + "_metrics.json"));
}

} // namespace auvctl
