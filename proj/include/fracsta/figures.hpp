#ifndef FRACSTA_FIGURES_HPP
#define FRACSTA_FIGURES_HPP

#include "fracsta/registry.hpp"

#include <string>
#include <variant>
#include <vector>

namespace fracsta {

struct FigureOutput {
    const FigureRegistryEntry* entry = nullptr;
    std::variant<RunResult, SweepResult> data;

    bool is_sweep() const { return std::holds_alternative<SweepResult>(data); }
    const RunResult& trajectory() const { return std::get<RunResult>(data); }
    const SweepResult& sweep() const { return std::get<SweepResult>(data); }
};

/// Runs the published parameter set registered under `figure_id`.
FigureOutput reproduce_figure(std::string_view figure_id, const TimeGrid& grid = {},
                              unsigned threads = 1);

struct ExpectationOutcome {
    const Expectation* expectation = nullptr;
    bool passed = false;
    std::string detail; ///< observed value(s), human readable
};

/// Checks every expectation of the entry against a reproduced figure.
std::vector<ExpectationOutcome> evaluate_expectations(const FigureOutput& output);

} // namespace fracsta

#endif // FRACSTA_FIGURES_HPP
