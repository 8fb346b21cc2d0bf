#include "fracsta/run_config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace fracsta {

using nlohmann::json;

namespace {

const std::set<std::string> known_fields = {
    "system",   "protocol",  "omega0_T",       "tau_over_T",   "delta_T",
    "alpha",    "beta",      "chi",            "gamma",        "decay_rates",
    "open_system", "t_start_over_T", "t_end_over_T", "n_steps", "output"};

[[noreturn]] void field_error(const std::string& field, const std::string& what)
{
    throw ConfigError("config field '" + field + "': " + what);
}

double number(const json& doc, const char* field, double fallback)
{
    if (!doc.contains(field))
        return fallback;
    const json& v = doc.at(field);
    if (!v.is_number())
        field_error(field, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x))
        field_error(field, "must be finite");
    return x;
}

std::string text(const json& doc, const char* field)
{
    if (!doc.contains(field))
        field_error(field, "is required");
    if (!doc.at(field).is_string())
        field_error(field, "expected a string");
    return doc.at(field).get<std::string>();
}

void check_angle(const char* field, double v)
{
    if (v < 0 || v > std::numbers::pi)
        field_error(field, "must lie in [0, pi]");
}

} // namespace

bool RunConfig::operator==(const RunConfig& o) const
{
    const auto& a = drive;
    const auto& b = o.drive;
    return system == o.system && protocol == o.protocol && a.omega0_T == b.omega0_T
           && a.tau_over_T == b.tau_over_T && a.delta_T == b.delta_T && a.alpha == b.alpha
           && a.beta == b.beta && a.chi == b.chi && decay.gamma == o.decay.gamma
           && decay.per_channel == o.decay.per_channel && open_system == o.open_system
           && grid.t_start == o.grid.t_start && grid.t_end == o.grid.t_end
           && grid.n_steps == o.grid.n_steps && output_path == o.output_path && format == o.format;
}

RunConfig parse_run_config(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config must be a JSON object");
    for (const auto& [key, _] : doc.items())
        if (!known_fields.contains(key))
            field_error(key, "unknown field");

    RunConfig c;
    const std::string system = text(doc, "system");
    if (system == "lambda")
        c.system = SystemKind::Lambda;
    else if (system == "tripod")
        c.system = SystemKind::Tripod;
    else
        field_error("system", "expected \"lambda\" or \"tripod\", got \"" + system + "\"");

    const auto protocol = parse_protocol_selection(text(doc, "protocol"));
    if (!protocol)
        field_error("protocol", "expected \"f-sta\", \"f-stirap\" or \"both\"");
    c.protocol = *protocol;

    auto& d = c.drive;
    d.omega0_T = number(doc, "omega0_T", d.omega0_T);
    if (!(d.omega0_T > 0))
        field_error("omega0_T", "must be > 0");
    d.tau_over_T = number(doc, "tau_over_T", d.tau_over_T);
    if (d.tau_over_T < 0)
        field_error("tau_over_T", "must be >= 0");
    d.delta_T = number(doc, "delta_T", d.delta_T);

    if (c.system == SystemKind::Lambda) {
        for (const char* f : {"beta", "chi"})
            if (doc.contains(f))
                field_error(f, "does not apply to the lambda system");
        d.alpha = number(doc, "alpha", d.alpha);
        check_angle("alpha", d.alpha);
    } else {
        if (doc.contains("alpha"))
            field_error("alpha", "does not apply to the tripod system");
        d.beta = number(doc, "beta", d.beta);
        check_angle("beta", d.beta);
        d.chi = number(doc, "chi", d.chi);
        check_angle("chi", d.chi);
    }

    c.decay.gamma = number(doc, "gamma", 0.0);
    if (c.decay.gamma < 0)
        field_error("gamma", "must be >= 0");
    if (doc.contains("decay_rates")) {
        const json& r = doc.at("decay_rates");
        if (!r.is_array())
            field_error("decay_rates", "expected an array of numbers");
        std::vector<double> rates;
        for (const auto& x : r) {
            if (!x.is_number() || !std::isfinite(x.get<double>()) || x.get<double>() < 0)
                field_error("decay_rates", "entries must be finite numbers >= 0");
            rates.push_back(x.get<double>());
        }
        if (rates.size() != static_cast<std::size_t>(dimension(c.system) - 1))
            field_error("decay_rates", "expected " + std::to_string(dimension(c.system) - 1)
                                           + " channels for the " + std::string(to_string(c.system))
                                           + " system");
        c.decay.per_channel = rates;
    }
    if (doc.contains("open_system")) {
        if (!doc.at("open_system").is_boolean())
            field_error("open_system", "expected true or false");
        c.open_system = doc.at("open_system").get<bool>();
    }

    c.grid.t_start = number(doc, "t_start_over_T", c.grid.t_start);
    c.grid.t_end = number(doc, "t_end_over_T", c.grid.t_end);
    if (!(c.grid.t_start < c.grid.t_end))
        field_error("t_end_over_T", "must be greater than t_start_over_T");
    if (doc.contains("n_steps")) {
        const json& n = doc.at("n_steps");
        if (!n.is_number_integer())
            field_error("n_steps", "expected an integer");
        c.grid.n_steps = n.get<int>();
        if (c.grid.n_steps < 1)
            field_error("n_steps", "must be positive");
    }

    if (doc.contains("output")) {
        const json& out = doc.at("output");
        if (!out.is_object())
            field_error("output", "expected an object with 'path' and 'format'");
        for (const auto& [key, _] : out.items())
            if (key != "path" && key != "format")
                field_error("output." + key, "unknown field");
        if (out.contains("path")) {
            if (!out.at("path").is_string())
                field_error("output.path", "expected a string");
            c.output_path = out.at("path").get<std::string>();
        }
        if (out.contains("format")) {
            const auto f = out.at("format").is_string() ? out.at("format").get<std::string>() : "";
            if (f == "csv")
                c.format = OutputFormat::Csv;
            else if (f == "json")
                c.format = OutputFormat::Json;
            else
                field_error("output.format", "expected \"csv\" or \"json\"");
        }
    }
    return c;
}

RunConfig load_run_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

std::string to_json(const RunConfig& c)
{
    json j;
    j["system"] = std::string(to_string(c.system));
    j["protocol"] = std::string(to_string(c.protocol));
    j["omega0_T"] = c.drive.omega0_T;
    j["tau_over_T"] = c.drive.tau_over_T;
    j["delta_T"] = c.drive.delta_T;
    if (c.system == SystemKind::Lambda) {
        j["alpha"] = c.drive.alpha;
    } else {
        j["beta"] = c.drive.beta;
        j["chi"] = c.drive.chi;
    }
    j["gamma"] = c.decay.gamma;
    if (c.decay.per_channel)
        j["decay_rates"] = *c.decay.per_channel;
    j["open_system"] = c.open_system;
    j["t_start_over_T"] = c.grid.t_start;
    j["t_end_over_T"] = c.grid.t_end;
    j["n_steps"] = c.grid.n_steps;
    j["output"] = {{"path", c.output_path}, {"format", c.format == OutputFormat::Csv ? "csv" : "json"}};
    return j.dump();
}

std::optional<RunConfig> config_from_metadata(std::istream& in)
{
    constexpr std::string_view prefix = "# config: ";
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(prefix, 0) == 0)
            return parse_run_config(std::string_view(line).substr(prefix.size()));
        if (!line.empty() && line[0] != '#')
            break;
    }
    return std::nullopt;
}

} // namespace fracsta
