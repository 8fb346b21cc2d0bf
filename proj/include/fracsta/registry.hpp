#ifndef FRACSTA_REGISTRY_HPP
#define FRACSTA_REGISTRY_HPP

#include "fracsta/sweep.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fracsta {

/// One expected outcome attached to a figure. `check` selects the rule:
///   final           trajectory finals equal `values` within `tolerance`
///   max_population  max over time of P_state <= value + tolerance
///   final_below     final P_state < value
///   constant        sweep finals P_state within tolerance of value (inside `range`)
///   theory          sweep finals match the analytic curve within tolerance (inside `range`)
///   crossing        first swept value with P_state >= threshold lies in value +- tolerance
///   plateau         P_state within value +- tolerance for swept values inside `range`
///   oscillation     half peak-to-peak of P_state inside `range` below tolerance,
///                   centred within tolerance of value
///   exceeds         max over the sweep of P_state > value
///   increasing      P_state strictly increasing over `range` (decreasing likewise)
///   largest         P_state is the largest population at swept value `at`
/// States are one-based, as in |1>..|4>.
struct Expectation {
    Protocol protocol = Protocol::FSta;
    std::string check;
    std::vector<double> values;
    int state = 0;
    double value = 0;
    double threshold = 0;
    double tolerance = 0;
    double at = 0;
    std::optional<std::pair<double, double>> range;
    std::string source; ///< "published", "exact" or "derived"
    std::string note;
};

struct FigureRegistryEntry {
    enum class Kind { Trajectory, Sweep };

    std::string id;
    std::string title;
    Kind kind = Kind::Trajectory;
    SystemKind system = SystemKind::Lambda;
    ProtocolSelection protocol = ProtocolSelection::FSta;
    DriveParams drive;
    std::string caption;
    double gamma = 0;
    bool open_system = false;
    std::optional<SweptParameter> swept;
    double sweep_min = 0, sweep_max = 0;
    int sweep_points = 0;
    std::string note;
    std::vector<Expectation> expectations;

    /// Sweep specification for sweep entries (grid and threads as given).
    SweepSpec sweep_spec(const TimeGrid& grid = {}, unsigned threads = 1) const;
};

/// Immutable table of published parameter sets, loaded from JSON.
class FigureRegistry {
public:
    static FigureRegistry from_json(std::string_view text);
    /// The registry compiled into the library from data/figures.json.
    static const FigureRegistry& builtin();

    /// Throws ConfigError naming every valid id when `id` is unknown.
    const FigureRegistryEntry& lookup(std::string_view id) const;
    bool contains(std::string_view id) const;
    std::vector<std::string> ids() const;
    const std::vector<FigureRegistryEntry>& entries() const { return entries_; }
    int version() const { return version_; }

private:
    std::vector<FigureRegistryEntry> entries_;
    int version_ = 0;
};

inline const FigureRegistryEntry& registry_lookup(std::string_view id)
{
    return FigureRegistry::builtin().lookup(id);
}

} // namespace fracsta

#endif // FRACSTA_REGISTRY_HPP
