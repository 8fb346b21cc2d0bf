#ifndef FRACSTA_OUTPUT_HPP
#define FRACSTA_OUTPUT_HPP

#include "fracsta/run_config.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace fracsta {

/// 12 significant digits, '.' separator, independent of the global locale.
std::string format_number(double v);

/// Header `t_over_T,P1,P2,P3[,P4]`, one row per grid point.
void write_trajectory_csv(std::ostream& out, const RunResult& run);
void write_trajectory_json(std::ostream& out, const RunResult& run);

/// `#`-prefixed lines describing a sweep: fixed parameters, solver settings,
/// version, unit conventions and the echoed config (when given).
std::vector<std::string> sweep_metadata(const SweepSpec& spec, const RunConfig* config = nullptr,
                                        const std::string& extra_note = {});

/// Header `swept_value,P1_final,..[,P4_final][,theory_P1,..]`. When both
/// protocols ran, f-STA fills `P*_final` and f-STIRAP adds `P*_final_fstirap`.
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const SweepResult& result,
                     const std::vector<std::string>& metadata);
void write_sweep_json(std::ostream& out, const SweepSpec& spec, const SweepResult& result,
                      const std::vector<std::string>& metadata);

const char* version_string();

} // namespace fracsta

#endif // FRACSTA_OUTPUT_HPP
