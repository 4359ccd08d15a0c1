#include "pcm/config.hpp"
#include "pcm/csv.hpp"
#include "pcm/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

using namespace pcm;
namespace fs = std::filesystem;

namespace {

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path(PCM_TEST_TMP) / "csv_config" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("csv parsing") {
    const auto t = parse_csv("# comment\nhour, up_price ,down_price\n\n1,30.5,-2\n2,31,4e1\n", "mem");
    CHECK(t.header == std::vector<std::string>{"hour", "up_price", "down_price"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.lines == std::vector<int>{4, 5});
    CHECK(t.number(0, t.column("down_price")) == -2.0);
    CHECK(t.number(1, 2) == 40.0);
    CHECK(t.has_column("hour"));
    CHECK_FALSE(t.has_column("x"));
}

TEST_CASE("csv errors carry the line number") {
    CHECK(error_of([] { parse_csv("", "empty.csv"); }) == "empty.csv: empty file");
    CHECK(error_of([] { parse_csv("# only a comment\n", "c.csv"); }) == "c.csv: empty file");
    CHECK(error_of([] { parse_csv("a,b\n1,2\n3\n", "r.csv"); }).find("r.csv:3:") == 0);
    const auto t = parse_csv("a,b\n1,2\n3,x\n", "n.csv");
    CHECK(error_of([&] { t.number(1, 1); }).find("n.csv:3: column 'b'") == 0);
    CHECK(error_of([&] { t.column("zz"); }).find("missing column 'zz'") != std::string::npos);
    CHECK(error_of([] { parse_csv("a,b\n", "h.csv"); }).find("no data rows") != std::string::npos);
    CHECK_THROWS_AS(read_csv("/nonexistent/file.csv"), InputError);
}

TEST_CASE("doubles round-trip through text") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng) / (1 + i);
        std::ostringstream os;
        CsvWriter w(os);
        w.cell("v").end_row();
        w.cell(v).end_row();
        const auto t = parse_csv(os.str(), "rt");
        CHECK(t.number(0, 0) == v);
    }
    CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("shipped config loads") {
    const auto cfg = load_config(fs::path(PCM_DATA_DIR) / "community.json");
    const auto& inst = cfg.instance;
    CHECK(inst.horizon == 24);
    REQUIRE(inst.size() == 4);
    CHECK(inst.gen.a == 0.2);
    CHECK(inst.gen.b == 0.5);
    CHECK(inst.prosumers[3].q == 0.7);
    CHECK(inst.ea.ramp_down[7] == -10.0);
    CHECK(inst.ebm.up.size() == 24);
    CHECK(cfg.paths.regulation_csv == fs::path(PCM_DATA_DIR) / "regulation.csv");
}

TEST_CASE("config errors") {
    const auto dir = scratch("errors");
    const fs::path data(PCM_DATA_DIR);
    auto config_with = [&](const std::string& demand, const std::string& extra = "") {
        std::string j = R"({"generator": {"a": 0.2, "b": 0.5, "c": 1}, "horizon": 24,
          "prosumers": [{"id": 1, "q": 0.5, "capacity": 10, "spread": 20},
                        {"id": 2, "q": 0.5, "capacity": 10, "spread": 20},
                        {"id": 3, "q": 0.5, "capacity": 10, "spread": 20},
                        {"id": 4, "q": 0.5, "capacity": 10, "spread": 20}],
          "demand_csv": ")" + demand + R"(",
          "wind_mean_csv": ")" + (data / "wind_mean.csv").string() + R"(",
          "regulation_csv": ")" + (data / "regulation.csv").string() + R"(",
          "constraints": {"r_wp_floor": 10, "r_ls_floor": 10, "ramp_up": 10,
                          "ramp_down": -10, "x_prev_init": 0)" + extra + "}}";
        write(dir / "c.json", j);
        return dir / "c.json";
    };

    CHECK_NOTHROW(load_config(config_with((data / "demand.csv").string())));

    write(dir / "empty.csv", "");
    CHECK(error_of([&] { load_config(config_with("empty.csv")); }).find("empty file") != std::string::npos);

    write(dir / "short.csv", "hour,1,2,3,4\n1,1,1,1,1\n");
    CHECK(error_of([&] { load_config(config_with("short.csv")); }).find("horizon is 24") != std::string::npos);

    std::ifstream in(data / "demand.csv");
    std::stringstream text;
    text << in.rdbuf();
    std::string bad = text.str();
    bad.replace(bad.find("\n3,") + 1, 1, "9");
    write(dir / "order.csv", bad);
    CHECK(error_of([&] { load_config(config_with("order.csv")); }).find("order.csv:4: expected hour 3") !=
          std::string::npos);

    write(dir / "broken.json", "{\"generator\": ");
    CHECK(error_of([&] { load_config(dir / "broken.json"); }).find("broken.json") != std::string::npos);

    const auto b_high = config_with((data / "demand.csv").string());
    std::string j;
    {
        std::ifstream f(b_high);
        std::stringstream s;
        s << f.rdbuf();
        j = s.str();
    }
    j.replace(j.find("\"b\": 0.5"), 8, "\"b\": 12.0");
    write(dir / "b.json", j);
    CHECK(error_of([&] { load_config(dir / "b.json"); }).find("price-floor assumption") != std::string::npos);
}

TEST_CASE("regulation csv round trip") {
    const auto dir = scratch("regulation");
    EbmPrices p{{30.25, 41.0, -3.5}, {12.0, -7.125, 0.0}};
    write_regulation_csv(dir / "r.csv", p);
    const auto back = read_regulation_csv(dir / "r.csv", 3);
    CHECK(back.up == p.up);
    CHECK(back.down == p.down);
}
