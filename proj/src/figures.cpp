#include "fracsta/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace fracsta {

FigureOutput reproduce_figure(std::string_view figure_id, const TimeGrid& grid, unsigned threads)
{
    const FigureRegistryEntry& entry = registry_lookup(figure_id);
    FigureOutput out;
    out.entry = &entry;
    if (entry.kind == FigureRegistryEntry::Kind::Sweep) {
        out.data = run_sweep(entry.sweep_spec(grid, threads));
    } else {
        const Protocol protocol = expand(entry.protocol).front();
        DecayConfig decay;
        decay.gamma = entry.gamma;
        out.data = simulate(entry.system, protocol, entry.drive, decay,
                            entry.open_system || entry.gamma > 0, grid);
    }
    return out;
}

namespace {

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

bool in_range(const Expectation& e, double x)
{
    return !e.range || (x >= e.range->first && x <= e.range->second);
}

std::size_t state_index(const Expectation& e, std::size_t dim)
{
    if (e.state < 1 || static_cast<std::size_t>(e.state) > dim)
        throw ConfigError("expectation '" + e.check + "' refers to state "
                          + std::to_string(e.state) + " outside 1.." + std::to_string(dim));
    return static_cast<std::size_t>(e.state - 1);
}

ExpectationOutcome check_trajectory(const Expectation& e, const RunResult& r)
{
    ExpectationOutcome o{&e, false, {}};
    const auto& fin = r.final_populations();
    if (e.check == "final") {
        if (e.values.size() != fin.size())
            throw ConfigError("expectation 'final' has the wrong number of values");
        double worst = 0;
        for (std::size_t i = 0; i < fin.size(); ++i)
            worst = std::max(worst, std::abs(fin[i] - e.values[i]));
        o.passed = worst <= e.tolerance;
        o.detail = "max |P - expected| = " + fmt(worst);
    } else if (e.check == "max_population") {
        const double m = r.max_population(static_cast<int>(state_index(e, fin.size())));
        o.passed = m <= e.value + e.tolerance;
        o.detail = "max_t P" + std::to_string(e.state) + " = " + fmt(m);
    } else if (e.check == "final_below") {
        const double p = fin[state_index(e, fin.size())];
        o.passed = p < e.value;
        o.detail = "final P" + std::to_string(e.state) + " = " + fmt(p);
    } else {
        throw ConfigError("expectation '" + e.check + "' does not apply to a trajectory");
    }
    return o;
}

ExpectationOutcome check_sweep(const Expectation& e, const SweepResult& s)
{
    ExpectationOutcome o{&e, false, {}};
    const auto& finals = s.finals(e.protocol).finals;
    const auto& x = s.swept_values;
    const std::size_t dim = finals.front().size();

    if (e.check == "theory") {
        if (!s.theory)
            throw ConfigError("expectation 'theory' needs a fraction-angle sweep");
        double worst = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!in_range(e, x[i]))
                continue;
            for (std::size_t k = 0; k < dim; ++k)
                worst = std::max(worst, std::abs(finals[i][k] - (*s.theory)[i][k]));
        }
        o.passed = worst <= e.tolerance;
        o.detail = "max |P - theory| = " + fmt(worst);
        return o;
    }

    const std::size_t k = state_index(e, dim);
    if (e.check == "constant" || e.check == "plateau") {
        double worst = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (in_range(e, x[i]))
                worst = std::max(worst, std::abs(finals[i][k] - e.value));
        o.passed = worst <= e.tolerance;
        o.detail = "max |P" + std::to_string(e.state) + " - " + fmt(e.value) + "| = " + fmt(worst);
    } else if (e.check == "oscillation") {
        double lo = 2, hi = -1;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (in_range(e, x[i])) {
                lo = std::min(lo, finals[i][k]);
                hi = std::max(hi, finals[i][k]);
            }
        const double amplitude = (hi - lo) / 2, centre = (hi + lo) / 2;
        o.passed = amplitude < e.tolerance && std::abs(centre - e.value) <= e.tolerance;
        o.detail = "P" + std::to_string(e.state) + " oscillates about " + fmt(centre)
                   + " with amplitude " + fmt(amplitude);
    } else if (e.check == "crossing") {
        double crossing = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t i = 0; i < x.size(); ++i)
            if (in_range(e, x[i]) && finals[i][k] >= e.threshold) {
                crossing = x[i];
                break;
            }
        o.passed = !std::isnan(crossing) && std::abs(crossing - e.value) <= e.tolerance;
        o.detail = std::isnan(crossing) ? "P" + std::to_string(e.state) + " never reaches "
                                              + fmt(e.threshold)
                                        : "first crossing at " + fmt(crossing);
    } else if (e.check == "exceeds") {
        double m = -1;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (in_range(e, x[i]))
                m = std::max(m, finals[i][k]);
        o.passed = m > e.value;
        o.detail = "max P" + std::to_string(e.state) + " = " + fmt(m);
    } else if (e.check == "increasing" || e.check == "decreasing") {
        const bool up = e.check == "increasing";
        bool ok = true;
        double prev = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!in_range(e, x[i]))
                continue;
            if (!std::isnan(prev) && (up ? !(finals[i][k] > prev) : !(finals[i][k] < prev)))
                ok = false;
            prev = finals[i][k];
        }
        o.passed = ok;
        o.detail = std::string(ok ? "strictly " : "not strictly ") + e.check;
    } else if (e.check == "largest") {
        auto it = std::min_element(x.begin(), x.end(), [&](double a, double b) {
            return std::abs(a - e.at) < std::abs(b - e.at);
        });
        const auto& row = finals[static_cast<std::size_t>(it - x.begin())];
        const auto top = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
        o.passed = top == k;
        o.detail = "largest population at " + fmt(*it) + " is P" + std::to_string(top + 1) + " = "
                   + fmt(row[top]);
    } else {
        throw ConfigError("expectation '" + e.check + "' does not apply to a sweep");
    }
    return o;
}

} // namespace

std::vector<ExpectationOutcome> evaluate_expectations(const FigureOutput& output)
{
    std::vector<ExpectationOutcome> out;
    for (const auto& e : output.entry->expectations)
        out.push_back(output.is_sweep() ? check_sweep(e, output.sweep())
                                        : check_trajectory(e, output.trajectory()));
    return out;
}

} // namespace fracsta
