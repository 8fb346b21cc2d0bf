#ifndef FRACSTA_SWEEP_HPP
#define FRACSTA_SWEEP_HPP

#include "fracsta/simulation.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fracsta {

enum class SweptParameter { Omega0, Tau, Alpha, Beta, Chi, Gamma };

enum class ProtocolSelection { FStirap, FSta, Both };

std::string_view to_string(SweptParameter p);
std::string_view to_string(ProtocolSelection p);
std::optional<SweptParameter> parse_swept_parameter(std::string_view name);
std::optional<ProtocolSelection> parse_protocol_selection(std::string_view name);

/// Protocols to run, f-STA first.
std::vector<Protocol> expand(ProtocolSelection selection);

/// One-dimensional scan over a drive or decay parameter.
struct SweepSpec {
    SystemKind system = SystemKind::Lambda;
    ProtocolSelection protocol = ProtocolSelection::Both;
    SweptParameter swept = SweptParameter::Alpha;
    double min = 0.0;
    double max = 1.0;
    int n_points = 2;
    DriveParams fixed;
    DecayConfig decay;
    bool open_system = false; ///< forced on when sweeping gamma
    TimeGrid grid;
    unsigned threads = 1;

    void validate() const;
    std::vector<double> values() const;
    bool uses_density() const { return open_system || swept == SweptParameter::Gamma || decay.gamma > 0; }
    /// Drive and decay with the swept parameter set to `value`.
    std::pair<DriveParams, DecayConfig> point(double value) const;
};

struct ProtocolFinals {
    Protocol protocol;
    std::vector<std::vector<double>> finals; ///< one population tuple per swept value
};

struct SweepResult {
    std::vector<double> swept_values;
    std::vector<ProtocolFinals> runs;
    std::optional<std::vector<std::vector<double>>> theory;
    double max_drift = 0; ///< worst norm/trace drift over every propagation

    const ProtocolFinals& finals(Protocol p) const;
};

/// A propagation failure at one sweep point.
class SweepPointError : public AccuracyError {
public:
    SweepPointError(std::size_t index, double value, const std::string& what)
        : AccuracyError("sweep point " + std::to_string(index) + " (value "
                        + std::to_string(value) + "): " + what),
          index_(index), value_(value)
    {
    }
    std::size_t index() const { return index_; }
    double value() const { return value_; }

private:
    std::size_t index_;
    double value_;
};

/// Runs every grid point for every selected protocol. Points may execute on
/// spec.threads workers; results are assembled by index, so the output does
/// not depend on the worker count.
SweepResult run_sweep(const SweepSpec& spec);

/// Analytic dark-state populations for fraction-angle sweeps:
/// Lambda (cos^2 a, 0, sin^2 a); tripod (cos^2 b, 0, sin^2 b cos^2 c, sin^2 b sin^2 c).
std::vector<std::vector<double>> theory_curve(const SweepSpec& spec);

bool has_theory(SweptParameter p);

} // namespace fracsta

#endif // FRACSTA_SWEEP_HPP
