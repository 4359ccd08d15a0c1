#include "pcm/config.hpp"

#include "pcm/errors.hpp"

#include <json.hpp>

#include <fstream>

namespace pcm {

namespace {

using nlohmann::json;

void check_hours(const CsvTable& t, int horizon) {
    const auto col = t.column("hour");
    if (t.rows.size() != static_cast<std::size_t>(horizon))
        throw InputError(t.source + ": " + std::to_string(t.rows.size()) + " data rows, horizon is " +
                         std::to_string(horizon));
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        if (t.number(r, col) != static_cast<double>(r + 1))
            throw InputError(t.source + ":" + std::to_string(t.lines[r]) + ": expected hour " +
                             std::to_string(r + 1) + ", found '" + t.rows[r][col] + "'");
}

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        throw InputError(where + ": missing '" + key + "'");
    return j.at(key);
}

double number(const json& j, const char* key, const std::string& where) {
    const json& v = field(j, key, where);
    if (!v.is_number())
        throw InputError(where + ": '" + key + "' must be a number");
    return v.get<double>();
}

// A scalar broadcast over the horizon, or one value per hour.
std::vector<double> per_hour(const json& j, const char* key, int horizon, const std::string& where) {
    const json& v = field(j, key, where);
    if (v.is_number())
        return std::vector<double>(static_cast<std::size_t>(horizon), v.get<double>());
    if (!v.is_array() || v.size() != static_cast<std::size_t>(horizon))
        throw InputError(where + ": '" + key + "' must be a number or an array of " +
                         std::to_string(horizon) + " numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number())
            throw InputError(where + ": '" + key + "' has a non-numeric entry");
        out.push_back(e.get<double>());
    }
    return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

}  // namespace

EbmPrices read_regulation_csv(const std::filesystem::path& path, int horizon) {
    const CsvTable t = read_csv(path);
    check_hours(t, horizon);
    const auto up = t.column("up_price");
    const auto down = t.column("down_price");
    EbmPrices out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out.up.push_back(t.number(r, up));
        out.down.push_back(t.number(r, down));
    }
    return out;
}

void write_regulation_csv(const std::filesystem::path& path, const EbmPrices& prices) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError(path.string() + ": cannot write");
    CsvWriter w(out);
    w.row({"hour", "up_price", "down_price"});
    for (std::size_t t = 0; t < prices.up.size(); ++t) {
        w.cell(static_cast<int>(t + 1)).cell(prices.up[t]).cell(prices.down[t]);
        w.end_row();
    }
}

std::vector<std::vector<double>> read_profile_csv(const std::filesystem::path& path, int horizon,
                                                  const std::vector<int>& ids) {
    const CsvTable t = read_csv(path);
    check_hours(t, horizon);
    std::vector<std::vector<double>> out;
    for (int id : ids) {
        const auto col = t.column(std::to_string(id));
        std::vector<double> series;
        for (std::size_t r = 0; r < t.rows.size(); ++r)
            series.push_back(t.number(r, col));
        out.push_back(std::move(series));
    }
    return out;
}

LoadedConfig load_config(const std::filesystem::path& path,
                         const std::filesystem::path& regulation_override) {
    std::ifstream in(path);
    if (!in)
        throw InputError(path.string() + ": cannot open");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
    const std::string where = path.string();
    const auto base = path.parent_path();

    LoadedConfig cfg;
    cfg.paths.config = path;
    MarketInstance& inst = cfg.instance;

    const json& gen = field(j, "generator", where);
    inst.gen = {number(gen, "a", where + ": generator"), number(gen, "b", where + ": generator"),
                number(gen, "c", where + ": generator")};

    const json& horizon = field(j, "horizon", where);
    if (!horizon.is_number_integer() || horizon.get<int>() < 1)
        throw InputError(where + ": 'horizon' must be a positive integer");
    inst.horizon = horizon.get<int>();

    const json& pros = field(j, "prosumers", where);
    if (!pros.is_array() || pros.empty())
        throw InputError(where + ": 'prosumers' must be a non-empty array");
    std::vector<int> ids;
    for (std::size_t i = 0; i < pros.size(); ++i) {
        const std::string pw = where + ": prosumers[" + std::to_string(i) + "]";
        const json& p = pros[i];
        const json& id = field(p, "id", pw);
        if (!id.is_number_integer())
            throw InputError(pw + ": 'id' must be an integer");
        ProsumerProfile prof;
        prof.id = id.get<int>();
        prof.q = number(p, "q", pw);
        prof.wind.capacity = number(p, "capacity", pw);
        prof.wind.spread = number(p, "spread", pw);
        for (int other : ids)
            if (other == prof.id)
                throw InputError(pw + ": duplicate id " + std::to_string(prof.id));
        ids.push_back(prof.id);
        inst.prosumers.push_back(std::move(prof));
    }

    auto csv_path = [&](const char* key) {
        const json& v = field(j, key, where);
        if (!v.is_string())
            throw InputError(where + ": '" + key + "' must be a path string");
        return resolve(base, v.get<std::string>());
    };
    cfg.paths.demand_csv = csv_path("demand_csv");
    cfg.paths.wind_mean_csv = csv_path("wind_mean_csv");
    cfg.paths.regulation_csv = regulation_override.empty() ? csv_path("regulation_csv") : regulation_override;

    const auto demand = read_profile_csv(cfg.paths.demand_csv, inst.horizon, ids);
    const auto wind = read_profile_csv(cfg.paths.wind_mean_csv, inst.horizon, ids);
    for (std::size_t i = 0; i < inst.prosumers.size(); ++i) {
        inst.prosumers[i].demand = demand[i];
        inst.prosumers[i].wind.mean_profile = wind[i];
    }
    inst.ebm = read_regulation_csv(cfg.paths.regulation_csv, inst.horizon);

    const json& c = field(j, "constraints", where);
    const std::string cw = where + ": constraints";
    inst.ea.r_wp_floor = per_hour(c, "r_wp_floor", inst.horizon, cw);
    inst.ea.r_ls_floor = per_hour(c, "r_ls_floor", inst.horizon, cw);
    inst.ea.ramp_up = per_hour(c, "ramp_up", inst.horizon, cw);
    inst.ea.ramp_down = per_hour(c, "ramp_down", inst.horizon, cw);
    inst.ea.x_prev_init = number(c, "x_prev_init", cw);

    const auto report = validate(inst);
    if (!report.ok())
        throw InputError(where + ": invalid instance:\n" + report.to_string());
    return cfg;
}

}  // namespace pcm
