#include "fracsta/output.hpp"

#include <json.hpp>

#include <charconv>

#ifndef FRACSTA_VERSION
#define FRACSTA_VERSION "0.0.0"
#endif

namespace fracsta {

using nlohmann::json;

const char* version_string() { return FRACSTA_VERSION; }

std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

namespace {

std::size_t levels(const RunResult& run) { return static_cast<std::size_t>(dimension(run.system)); }

json population_table(const std::vector<std::vector<double>>& rows)
{
    json t = json::array();
    for (const auto& r : rows)
        t.push_back(r);
    return t;
}

} // namespace

void write_trajectory_csv(std::ostream& out, const RunResult& run)
{
    out << "t_over_T";
    for (std::size_t k = 1; k <= levels(run); ++k)
        out << ",P" << k;
    out << '\n';
    for (std::size_t i = 0; i < run.times.size(); ++i) {
        out << format_number(run.times[i]);
        for (double p : run.populations[i])
            out << ',' << format_number(p);
        out << '\n';
    }
}

void write_trajectory_json(std::ostream& out, const RunResult& run)
{
    json j;
    j["system"] = std::string(to_string(run.system));
    j["protocol"] = std::string(to_string(run.protocol));
    j["open_system"] = run.open_system;
    j["times"] = run.times;
    j["populations"] = population_table(run.populations);
    j["final_populations"] = run.final_populations();
    j["diagnostics"] = {{"max_norm_drift", run.diagnostics.max_norm_drift},
                        {"max_hermiticity_defect", run.diagnostics.max_hermiticity_defect},
                        {"min_population", run.diagnostics.min_population},
                        {"refined_intervals", run.diagnostics.refined_intervals},
                        {"warnings", run.diagnostics.warnings}};
    out << j.dump(1) << '\n';
}

std::vector<std::string> sweep_metadata(const SweepSpec& spec, const RunConfig* config,
                                        const std::string& extra_note)
{
    const auto& d = spec.fixed;
    std::vector<std::string> m;
    m.push_back("# fracsta " + std::string(version_string()) + " sweep");
    m.push_back("# system: " + std::string(to_string(spec.system)));
    m.push_back("# protocol: " + std::string(to_string(spec.protocol)));
    m.push_back("# swept: " + std::string(to_string(spec.swept)) + " from " + format_number(spec.min)
                + " to " + format_number(spec.max) + " in " + std::to_string(spec.n_points) + " points");
    std::string fixed = "# fixed: omega0_T=" + format_number(d.omega0_T)
                        + " tau_over_T=" + format_number(d.tau_over_T)
                        + " delta_T=" + format_number(d.delta_T);
    if (spec.system == SystemKind::Lambda)
        fixed += " alpha=" + format_number(d.alpha);
    else
        fixed += " beta=" + format_number(d.beta) + " chi=" + format_number(d.chi);
    fixed += " gamma=" + format_number(spec.decay.gamma);
    m.push_back(fixed);
    m.push_back("# solver: fixed-step rk4, t_over_T in [" + format_number(spec.grid.t_start) + ", "
                + format_number(spec.grid.t_end) + "], n_steps=" + std::to_string(spec.grid.n_steps)
                + ", intervals bisected while ||H|| dt > " + format_number(spec.grid.refine_phase)
                + (spec.uses_density() ? ", lindblad master equation" : ", schrodinger equation"));
    m.push_back("# units: hbar=1, times in T; omega0_T, delta_T and gamma are Omega0*T, Delta*T and "
                "Gamma*T (a detuning quoted as 0.2*pi is read as Delta*T = 0.2*pi)");
    if (spec.protocol == ProtocolSelection::Both)
        m.push_back("# columns: P*_final are f-sta, P*_final_fstirap are f-stirap");
    if (!extra_note.empty())
        m.push_back("# note: " + extra_note);
    if (config)
        m.push_back("# config: " + to_json(*config));
    return m;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const SweepResult& result,
                     const std::vector<std::string>& metadata)
{
    for (const auto& line : metadata)
        out << line << '\n';
    const int n = dimension(spec.system);
    out << "swept_value";
    for (std::size_t r = 0; r < result.runs.size(); ++r)
        for (int k = 1; k <= n; ++k)
            out << ",P" << k << "_final" << (r == 0 ? "" : "_fstirap");
    if (result.theory)
        for (int k = 1; k <= n; ++k)
            out << ",theory_P" << k;
    out << '\n';

    for (std::size_t i = 0; i < result.swept_values.size(); ++i) {
        out << format_number(result.swept_values[i]);
        for (const auto& run : result.runs)
            for (double p : run.finals[i])
                out << ',' << format_number(p);
        if (result.theory)
            for (double p : (*result.theory)[i])
                out << ',' << format_number(p);
        out << '\n';
    }
}

void write_sweep_json(std::ostream& out, const SweepSpec& spec, const SweepResult& result,
                      const std::vector<std::string>& metadata)
{
    json j;
    j["metadata"] = metadata;
    j["system"] = std::string(to_string(spec.system));
    j["swept"] = std::string(to_string(spec.swept));
    j["swept_values"] = result.swept_values;
    json runs = json::object();
    for (const auto& r : result.runs)
        runs[std::string(to_string(r.protocol))] = population_table(r.finals);
    j["finals"] = runs;
    if (result.theory)
        j["theory"] = population_table(*result.theory);
    out << j.dump(1) << '\n';
}

} // namespace fracsta
