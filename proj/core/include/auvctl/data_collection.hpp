#pragma once

#include "auvctl/csv_io.hpp"
#include "auvctl/deepc_controller.hpp"
#include "auvctl/excitation.hpp"
#include "auvctl/hydrodynamics.hpp"
#include "auvctl/integrator.hpp"

namespace auvctl {

enum class InnerChannel {
    RudderYaw,  // excite delta_r, record psi
    SternPitch, // excite delta_s, record theta
};

struct CollectionConfig {
    double f_inner = 20.0;
    double f_outer = 2.0;
    double n_p = 1000.0; // propeller speed held fixed during collection (rpm)
    ControlLimits limits;
};

/// Surge speed at which thrust balances drag for the given propeller
/// setting; used as the collection/scenario trim state.
double steady_surge_speed(const VehicleParams& params, const DerivedHydro& derived,
                          double n_p);

/// Open-loop excitation of one fin channel at the inner rate; returns the
/// aligned (input, output) sequences. Throws on divergence with a hint to
/// lower the excitation amplitude. The result must pass the persistency
/// check before use.
Dataset collect_inner(const VehicleParams& params, const DerivedHydro& derived,
                      InnerChannel channel, const ExcitationConfig& exc,
                      const CollectionConfig& cfg);

/// Two-stage outer-loop collection: the theta DeePC controller tracks a
/// theta_d chirp+PRBS shaped at the outer rate while (theta, z) pairs are
/// recorded every r_f-th inner tick (perfect-control assumption: realized
/// theta is the outer-loop input).
Dataset collect_outer(const VehicleParams& params, const DerivedHydro& derived,
                      DeepcController& inner_theta, const ExcitationConfig& exc,
                      const CollectionConfig& cfg);

struct ChannelPlan {
    ExcitationConfig exc;
    std::string output; // CSV file name relative to the output directory
};

/// Declarative description of a full data-collection run (psi/theta inner
/// channels plus the two-stage outer z channel).
struct CollectionPlan {
    std::filesystem::path params_file;
    CollectionConfig cfg;
    std::optional<ChannelPlan> psi;
    std::optional<ChannelPlan> theta;
    std::optional<ChannelPlan> z;
    std::optional<DeePCConfig> inner_theta_cfg; // required when z is present
    std::uint64_t seed = 1;
};

CollectionPlan load_collection_plan(const std::filesystem::path& file);

/// Execute a plan and persist datasets plus JSON sidecars recording the
/// generating configuration. Returns the written dataset paths.
std::vector<std::filesystem::path> run_collection(const CollectionPlan& plan,
                                                  const std::filesystem::path& out_dir);

} // namespace auvctl
