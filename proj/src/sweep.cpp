#include "fracsta/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace fracsta {

std::string_view to_string(SweptParameter p)
{
    switch (p) {
    case SweptParameter::Omega0: return "omega0";
    case SweptParameter::Tau: return "tau";
    case SweptParameter::Alpha: return "alpha";
    case SweptParameter::Beta: return "beta";
    case SweptParameter::Chi: return "chi";
    case SweptParameter::Gamma: return "gamma";
    }
    return "?";
}

std::string_view to_string(ProtocolSelection p)
{
    switch (p) {
    case ProtocolSelection::FStirap: return "f-stirap";
    case ProtocolSelection::FSta: return "f-sta";
    case ProtocolSelection::Both: return "both";
    }
    return "?";
}

std::optional<SweptParameter> parse_swept_parameter(std::string_view name)
{
    for (auto p : {SweptParameter::Omega0, SweptParameter::Tau, SweptParameter::Alpha,
                   SweptParameter::Beta, SweptParameter::Chi, SweptParameter::Gamma})
        if (to_string(p) == name)
            return p;
    return std::nullopt;
}

std::optional<ProtocolSelection> parse_protocol_selection(std::string_view name)
{
    for (auto p : {ProtocolSelection::FStirap, ProtocolSelection::FSta, ProtocolSelection::Both})
        if (to_string(p) == name)
            return p;
    return std::nullopt;
}

std::vector<Protocol> expand(ProtocolSelection selection)
{
    switch (selection) {
    case ProtocolSelection::FSta: return {Protocol::FSta};
    case ProtocolSelection::FStirap: return {Protocol::FStirap};
    case ProtocolSelection::Both: break;
    }
    return {Protocol::FSta, Protocol::FStirap};
}

bool has_theory(SweptParameter p)
{
    return p == SweptParameter::Alpha || p == SweptParameter::Beta || p == SweptParameter::Chi;
}

void SweepSpec::validate() const
{
    const bool lambda = system == SystemKind::Lambda;
    if (swept == SweptParameter::Alpha && !lambda)
        throw ConfigError("sweep: alpha is only defined for the lambda system");
    if ((swept == SweptParameter::Beta || swept == SweptParameter::Chi) && lambda)
        throw ConfigError("sweep: " + std::string(to_string(swept))
                          + " is only defined for the tripod system");
    if (n_points < 2)
        throw ConfigError("sweep: n_points must be >= 2");
    if (!std::isfinite(min) || !std::isfinite(max) || !(min < max))
        throw ConfigError("sweep: requires finite min < max");
    if (threads == 0)
        throw ConfigError("sweep: threads must be >= 1");
    grid.validate();
    // Both ends of the axis must give a valid configuration.
    for (double v : {min, max}) {
        const auto [drive, decay] = point(v);
        drive.validate(system);
        decay.rates(dimension(system));
    }
}

std::vector<double> SweepSpec::values() const
{
    std::vector<double> out(static_cast<std::size_t>(n_points));
    const double step = (max - min) / (n_points - 1);
    for (int i = 0; i < n_points; ++i)
        out[static_cast<std::size_t>(i)] = i + 1 == n_points ? max : min + i * step;
    return out;
}

std::pair<DriveParams, DecayConfig> SweepSpec::point(double value) const
{
    DriveParams drive = fixed;
    DecayConfig dec = decay;
    switch (swept) {
    case SweptParameter::Omega0: drive.omega0_T = value; break;
    case SweptParameter::Tau: drive.tau_over_T = value; break;
    case SweptParameter::Alpha: drive.alpha = value; break;
    case SweptParameter::Beta: drive.beta = value; break;
    case SweptParameter::Chi: drive.chi = value; break;
    case SweptParameter::Gamma:
        dec.gamma = value;
        dec.per_channel.reset();
        break;
    }
    return {drive, dec};
}

const ProtocolFinals& SweepResult::finals(Protocol p) const
{
    for (const auto& r : runs)
        if (r.protocol == p)
            return r;
    throw ConfigError("sweep result has no run for protocol " + std::string(to_string(p)));
}

SweepResult run_sweep(const SweepSpec& spec)
{
    spec.validate();
    const std::vector<double> values = spec.values();
    const std::vector<Protocol> protocols = expand(spec.protocol);
    const std::size_t n = values.size();
    const std::size_t jobs = n * protocols.size();

    std::vector<std::vector<double>> finals(jobs);
    std::vector<double> drifts(jobs, 0.0);
    std::vector<std::exception_ptr> errors(jobs);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t job = next++; job < jobs; job = next++) {
            const std::size_t point = job % n;
            const Protocol protocol = protocols[job / n];
            try {
                const auto [drive, decay] = spec.point(values[point]);
                const RunResult r =
                    simulate(spec.system, protocol, drive, decay, spec.uses_density(), spec.grid);
                finals[job] = r.final_populations();
                drifts[job] = r.diagnostics.max_norm_drift;
            } catch (...) {
                errors[job] = std::current_exception();
            }
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(jobs)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }

    // Report the failure with the lowest index so the error is deterministic too.
    for (std::size_t job = 0; job < jobs; ++job) {
        if (!errors[job])
            continue;
        const std::size_t point = job % n;
        try {
            std::rethrow_exception(errors[job]);
        } catch (const std::exception& e) {
            throw SweepPointError(point, values[point], e.what());
        }
    }

    SweepResult result;
    result.swept_values = values;
    for (std::size_t k = 0; k < protocols.size(); ++k) {
        ProtocolFinals pf{protocols[k], {}};
        pf.finals.assign(finals.begin() + static_cast<std::ptrdiff_t>(k * n),
                         finals.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
        result.runs.push_back(std::move(pf));
    }
    result.max_drift = drifts.empty() ? 0.0 : *std::max_element(drifts.begin(), drifts.end());
    if (has_theory(spec.swept))
        result.theory = theory_curve(spec);
    return result;
}

std::vector<std::vector<double>> theory_curve(const SweepSpec& spec)
{
    if (!has_theory(spec.swept))
        throw ConfigError("theory_curve: no analytic curve for swept parameter "
                          + std::string(to_string(spec.swept)));
    std::vector<std::vector<double>> out;
    for (double v : spec.values()) {
        const DriveParams d = spec.point(v).first;
        if (spec.system == SystemKind::Lambda) {
            const double c = std::cos(d.alpha), s = std::sin(d.alpha);
            out.push_back({c * c, 0.0, s * s});
        } else {
            const double cb = std::cos(d.beta), sb = std::sin(d.beta);
            const double cc = std::cos(d.chi), sc = std::sin(d.chi);
            out.push_back({cb * cb, 0.0, sb * sb * cc * cc, sb * sb * sc * sc});
        }
    }
    return out;
}

} // namespace fracsta
