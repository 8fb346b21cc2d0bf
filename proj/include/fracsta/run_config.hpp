#ifndef FRACSTA_RUN_CONFIG_HPP
#define FRACSTA_RUN_CONFIG_HPP

#include "fracsta/sweep.hpp"

#include <istream>
#include <optional>
#include <string>
#include <string_view>

namespace fracsta {

enum class OutputFormat { Csv, Json };

/// Everything one CLI run needs. Parameters are the dimensionless products
/// Omega0*T, tau/T, Delta*T and gamma = Gamma*T.
struct RunConfig {
    SystemKind system = SystemKind::Lambda;
    ProtocolSelection protocol = ProtocolSelection::FSta;
    DriveParams drive;
    DecayConfig decay;
    bool open_system = false;
    TimeGrid grid;
    std::string output_path;
    OutputFormat format = OutputFormat::Csv;

    bool uses_density() const { return open_system || decay.gamma > 0 || decay.per_channel.has_value(); }
    bool operator==(const RunConfig&) const;
};

/// Parses and validates a JSON config document. Errors are ConfigError with
/// the offending field named in the message.
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::string& path);

/// Compact single-line JSON; parse_run_config(to_json(c)) == c.
std::string to_json(const RunConfig& config);

/// Recovers the config echoed as a "# config: {...}" metadata line.
std::optional<RunConfig> config_from_metadata(std::istream& in);

} // namespace fracsta

#endif // FRACSTA_RUN_CONFIG_HPP
