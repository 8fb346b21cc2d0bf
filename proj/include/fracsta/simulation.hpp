#ifndef FRACSTA_SIMULATION_HPP
#define FRACSTA_SIMULATION_HPP

#include "fracsta/evolver.hpp"
#include "fracsta/lambda_system.hpp"
#include "fracsta/protocol.hpp"
#include "fracsta/tripod_system.hpp"

#include <vector>

namespace fracsta {

/// Dimensionless drive parameters shared by both systems (T = 1).
/// `alpha` is read by the Lambda system, `beta` and `chi` by the tripod.
struct DriveParams {
    double omega0_T = 2.0;
    double tau_over_T = 0.7;
    double delta_T = 0.2 * std::numbers::pi;
    double alpha = std::numbers::pi / 4;
    double beta = std::acos(1.0 / std::sqrt(3.0));
    double chi = std::numbers::pi / 4;

    LambdaDriveConfig<double> lambda() const { return {omega0_T, tau_over_T, 1.0, alpha, delta_T}; }
    TripodDriveConfig<double> tripod() const
    {
        return {omega0_T, tau_over_T, 1.0, beta, chi, delta_T};
    }
    void validate(SystemKind system) const;
};

/// Level-count-agnostic view of one propagation.
struct RunResult {
    SystemKind system = SystemKind::Lambda;
    Protocol protocol = Protocol::FSta;
    bool open_system = false;
    std::vector<double> times;
    std::vector<std::vector<double>> populations; ///< one row per grid point
    Diagnostics diagnostics;

    const std::vector<double>& final_populations() const { return populations.back(); }
    double max_population(int state) const;
};

/// Propagates |1> (or |1><1| when `open_system`) from grid.t_start to grid.t_end.
RunResult simulate(SystemKind system, Protocol protocol, const DriveParams& drive,
                   const DecayConfig& decay, bool open_system, const TimeGrid& grid = {});

} // namespace fracsta

#endif // FRACSTA_SIMULATION_HPP
