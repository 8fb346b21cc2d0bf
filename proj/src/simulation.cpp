#include "fracsta/simulation.hpp"

#include <algorithm>

namespace fracsta {

void DriveParams::validate(SystemKind system) const
{
    if (system == SystemKind::Lambda)
        lambda().validate();
    else
        tripod().validate();
}

double RunResult::max_population(int state) const
{
    double m = 0;
    for (const auto& row : populations)
        m = std::max(m, row.at(static_cast<std::size_t>(state)));
    return m;
}

namespace {

template <typename Traj>
RunResult to_result(const Traj& traj, SystemKind system, Protocol protocol, bool open_system)
{
    RunResult r;
    r.system = system;
    r.protocol = protocol;
    r.open_system = open_system;
    r.times = traj.times;
    r.populations.reserve(traj.populations.size());
    for (const auto& p : traj.populations)
        r.populations.push_back(to_std_vector(p));
    r.diagnostics = traj.diagnostics;
    return r;
}

template <int N, typename HamiltonianFn>
RunResult run(const HamiltonianFn& hamiltonian, SystemKind system, Protocol protocol,
              const DecayConfig& decay, bool open_system, const TimeGrid& grid)
{
    const auto ground = StateVector<double, N>::basis(0);
    if (open_system) {
        const auto traj = propagate_density(hamiltonian, DensityMatrix<double, N>::pure(ground),
                                            decay, grid);
        return to_result(traj, system, protocol, true);
    }
    return to_result(propagate_state(hamiltonian, ground, grid), system, protocol, false);
}

} // namespace

RunResult simulate(SystemKind system, Protocol protocol, const DriveParams& drive,
                   const DecayConfig& decay, bool open_system, const TimeGrid& grid)
{
    drive.validate(system);
    grid.validate();
    if (system == SystemKind::Lambda) {
        const LambdaModel<double> model{drive.lambda(), protocol};
        auto h = [&model](double t) { return lambda_hamiltonian(model, t); };
        return run<3>(h, system, protocol, decay, open_system, grid);
    }
    const TripodModel<double> model{drive.tripod(), protocol};
    auto h = [&model](double t) { return tripod_hamiltonian(model, t); };
    return run<4>(h, system, protocol, decay, open_system, grid);
}

} // namespace fracsta
