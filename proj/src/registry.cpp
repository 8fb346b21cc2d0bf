#include "fracsta/registry.hpp"

#include "figures_json.hpp"

#include <json.hpp>

#include <algorithm>

namespace fracsta {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const std::string& where)
{
    if (!j.contains(key))
        throw ConfigError("figure registry: " + where + " is missing '" + key + "'");
    return j.at(key);
}

Protocol parse_protocol(const std::string& s, const std::string& where)
{
    if (s == "f-sta")
        return Protocol::FSta;
    if (s == "f-stirap")
        return Protocol::FStirap;
    throw ConfigError("figure registry: " + where + " has unknown protocol '" + s + "'");
}

Expectation parse_expectation(const json& j, const std::string& where)
{
    Expectation e;
    e.protocol = parse_protocol(require(j, "protocol", where).get<std::string>(), where);
    e.check = require(j, "check", where).get<std::string>();
    e.values = j.value("values", std::vector<double>{});
    e.state = j.value("state", 0);
    e.value = j.value("value", 0.0);
    e.threshold = j.value("threshold", 0.0);
    e.tolerance = j.value("tolerance", 0.0);
    e.at = j.value("at", 0.0);
    if (j.contains("range")) {
        const auto r = j.at("range").get<std::vector<double>>();
        if (r.size() != 2)
            throw ConfigError("figure registry: " + where + " range needs two numbers");
        e.range = std::pair{r[0], r[1]};
    }
    e.source = require(j, "source", where).get<std::string>();
    if (e.source != "published" && e.source != "exact" && e.source != "derived")
        throw ConfigError("figure registry: " + where + " has unknown source '" + e.source + "'");
    e.note = j.value("note", std::string{});
    return e;
}

FigureRegistryEntry parse_entry(const json& j)
{
    FigureRegistryEntry e;
    e.id = require(j, "id", "entry").get<std::string>();
    const std::string where = "entry '" + e.id + "'";
    e.title = j.value("title", std::string{});

    const auto kind = require(j, "kind", where).get<std::string>();
    if (kind == "trajectory")
        e.kind = FigureRegistryEntry::Kind::Trajectory;
    else if (kind == "sweep")
        e.kind = FigureRegistryEntry::Kind::Sweep;
    else
        throw ConfigError("figure registry: " + where + " has unknown kind '" + kind + "'");

    const auto system = require(j, "system", where).get<std::string>();
    if (system != "lambda" && system != "tripod")
        throw ConfigError("figure registry: " + where + " has unknown system '" + system + "'");
    e.system = system == "lambda" ? SystemKind::Lambda : SystemKind::Tripod;

    const auto protocol = parse_protocol_selection(require(j, "protocol", where).get<std::string>());
    if (!protocol)
        throw ConfigError("figure registry: " + where + " has an unknown protocol");
    e.protocol = *protocol;
    if (e.kind == FigureRegistryEntry::Kind::Trajectory && e.protocol == ProtocolSelection::Both)
        throw ConfigError("figure registry: trajectory " + where + " needs a single protocol");

    const json& drive = require(j, "drive", where);
    e.drive.omega0_T = require(drive, "omega0_T", where).get<double>();
    e.drive.tau_over_T = require(drive, "tau_over_T", where).get<double>();
    e.drive.delta_T = require(drive, "delta_T", where).get<double>();
    e.drive.alpha = drive.value("alpha", e.drive.alpha);
    e.drive.beta = drive.value("beta", e.drive.beta);
    e.drive.chi = drive.value("chi", e.drive.chi);
    e.caption = drive.value("caption", std::string{});
    e.drive.validate(e.system);

    e.gamma = j.value("gamma", 0.0);
    e.open_system = j.value("open_system", false);
    e.note = j.value("note", std::string{});

    if (e.kind == FigureRegistryEntry::Kind::Sweep) {
        const json& sweep = require(j, "sweep", where);
        e.swept = parse_swept_parameter(require(sweep, "param", where).get<std::string>());
        if (!e.swept)
            throw ConfigError("figure registry: " + where + " sweeps an unknown parameter");
        e.sweep_min = require(sweep, "min", where).get<double>();
        e.sweep_max = require(sweep, "max", where).get<double>();
        e.sweep_points = require(sweep, "points", where).get<int>();
        e.sweep_spec().validate();
    }

    for (const auto& x : j.value("expect", json::array()))
        e.expectations.push_back(parse_expectation(x, where));
    return e;
}

} // namespace

SweepSpec FigureRegistryEntry::sweep_spec(const TimeGrid& grid, unsigned threads) const
{
    if (!swept)
        throw ConfigError("figure '" + id + "' is not a sweep");
    SweepSpec s;
    s.system = system;
    s.protocol = protocol;
    s.swept = *swept;
    s.min = sweep_min;
    s.max = sweep_max;
    s.n_points = sweep_points;
    s.fixed = drive;
    s.decay.gamma = gamma;
    s.open_system = open_system;
    s.grid = grid;
    s.threads = threads;
    return s;
}

FigureRegistry FigureRegistry::from_json(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("figure registry: ") + e.what());
    }
    FigureRegistry reg;
    try {
        if (require(doc, "format", "document").get<std::string>() != "fracsta-figure-registry")
            throw ConfigError("figure registry: unexpected 'format' (want fracsta-figure-registry)");
        reg.version_ = require(doc, "version", "document").get<int>();
        for (const auto& f : require(doc, "figures", "document"))
            reg.entries_.push_back(parse_entry(f));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("figure registry: ") + e.what());
    }
    for (std::size_t i = 0; i < reg.entries_.size(); ++i)
        for (std::size_t k = 0; k < i; ++k)
            if (reg.entries_[i].id == reg.entries_[k].id)
                throw ConfigError("figure registry: duplicate id '" + reg.entries_[i].id + "'");
    return reg;
}

const FigureRegistry& FigureRegistry::builtin()
{
    static const FigureRegistry reg = from_json(detail::figures_json);
    return reg;
}

bool FigureRegistry::contains(std::string_view id) const
{
    return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.id == id; });
}

const FigureRegistryEntry& FigureRegistry::lookup(std::string_view id) const
{
    for (const auto& e : entries_)
        if (e.id == id)
            return e;
    std::string known;
    for (const auto& e : entries_)
        known += (known.empty() ? "" : ", ") + e.id;
    throw ConfigError("unknown figure id '" + std::string(id) + "'; valid ids: " + known);
}

std::vector<std::string> FigureRegistry::ids() const
{
    std::vector<std::string> out;
    for (const auto& e : entries_)
        out.push_back(e.id);
    return out;
}

} // namespace fracsta
