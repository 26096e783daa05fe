#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unistd.h>

#include "json.hpp"
#include "trapcert/cli_io/config.hpp"
#include "trapcert/cli_io/emit.hpp"
#include "trapcert/cli_io/report.hpp"
#include "trapcert/cli_io/run.hpp"
#include "trapcert/errors.hpp"

using namespace trapcert;
using namespace trapcert::cli_io;
namespace fs = std::filesystem;

namespace {

const char* kFigure = R"({
  "dimension": 2,
  "schedule": {
    "k": {"family": "paper-default", "c": 2},
    "a": {"family": "power", "A": 1e-4, "p": 0.25},
    "d": {"family": "shifted-power", "D": 2, "s": 6, "q": 1.2}
  },
  "layout": "layered",
  "layers": 30,
  "outputs": {"json": "g.json", "svg": "g.svg", "csv": "c.csv"}
})";

struct Sandbox {
  fs::path dir;
  Sandbox() {
    dir = fs::temp_directory_path() / ("trapcert_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return dir / name;
  }
  std::string read(const std::string& name) const {
    std::ifstream in(dir / name, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "trapcert");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig c = parse_config(kFigure);
  CHECK(c.dimension == 2);
  CHECK(c.truncation == 30);
  CHECK(c.layout == Layout::Layered);
  CHECK(c.outputs.json == "g.json");
  CHECK_FALSE(c.outputs.report);
  CHECK(c.schedule().wavenumber(1) == Schedule::figure_default().wavenumber(1));

  CHECK_THROWS_AS(parse_config(R"({"dimension": 2, "colour": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"schedule": {"k": {"family": "paper-default", "C": 2}}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"outputs": {"pdf": "x"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"schedule": {"k": {"family": "cubic"}}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"layout": "stacked", "layers": 3})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"layers": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"dimension": 2.5})"), ConfigError);
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"sweep": {"emit": "some"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"schedule": {"d": {"family": "shifted-power", "D": 2, "s": 6, "q": 1}}})").schedule(),
                  ConfigError);

  const RunConfig s = parse_config(R"({"sweep": {"dimensions": [3], "mMax": 4, "emit": "all"}})");
  REQUIRE(s.sweep);
  CHECK(s.sweep->emit == SweepEmit::All);
  CHECK(s.sweep->spec.m_max == 4);
  CHECK(parse_config(echo_config(c)).truncation == 30);
}

TEST_CASE("build, certify and plot") {
  Sandbox box;
  const fs::path cfg = box.write("fig.cfg", kFigure);

  const Result b = cli({"build", "--config", cfg.string(), "--out", box.dir.string()});
  CHECK(b.code == 0);
  const auto j = nlohmann::json::parse(box.read("g.json"));
  CHECK(j["summary"]["boxCount"] == 1413);
  CHECK(j["boxes"].size() == 1413);
  CHECK(j["boxes"][0]["translation"] == nlohmann::json::array({0.0, 0.0}));
  const std::string first_json = box.read("g.json");
  REQUIRE(cli({"build", "--config", cfg.string(), "--out", box.dir.string()}).code == 0);
  CHECK(box.read("g.json") == first_json);

  REQUIRE(cli({"plot", "--config", cfg.string(), "--out", box.dir.string()}).code == 0);
  const std::string svg = box.read("g.svg");
  CHECK(count(svg, "<path ") == 1413);
  REQUIRE(cli({"plot", "--config", cfg.string(), "--out", box.dir.string()}).code == 0);
  CHECK(box.read("g.svg") == svg);

  const Result c = cli({"certify", "--config", cfg.string(), "--layers", "5", "--out", box.dir.string()});
  CHECK(c.code == 0);
  std::istringstream csv(box.read("c.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "j,k,a,eps,infsup_ub,cprime_lb,c_lb,margin");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(std::stod(line.substr(line.rfind(',') + 1)) > 0.0);
  }
  CHECK(rows == 26);

  for (const auto& e : fs::directory_iterator(box.dir)) CHECK(e.path().extension() != ".tmp");
}

TEST_CASE("plan and stacked runs") {
  Sandbox box;
  const fs::path fig = box.write("fig.cfg", kFigure);
  const Result p = cli({"plan", "--config", fig.string(), "--layers", "3"});
  CHECK(p.code == 0);
  CHECK(count(p.out, "\n") == 4);

  const fs::path st = box.write("st.cfg", R"({
    "schedule": {"k": {"family": "table", "values": [4.442882938158366]},
                 "d": {"family": "table", "values": [1.0]}},
    "layout": "stacked", "boxCount": 1, "outputs": {"json": "s.json"}})");
  REQUIRE(cli({"build", "--config", st.string(), "--out", box.dir.string()}).code == 0);
  const auto j = nlohmann::json::parse(box.read("s.json"));
  CHECK(j["boxes"].size() == 1);
  CHECK(j["boxes"][0]["translation"] == nlohmann::json::array({0.0, 0.0}));
  CHECK(cli({"build", "--config", st.string(), "--layers", "2", "--out", box.dir.string()}).code == 2);
}

TEST_CASE("verify-dtn") {
  Sandbox box;
  const fs::path cfg = box.write("d.cfg", R"({"sweep": {"dimensions": [2, 3], "mMax": 5, "rhoPoints": 40, "emit": "all"},
                                              "outputs": {"dtn": "d.csv"}})");
  const Result r = cli({"verify-dtn", "--config", cfg.string(), "--out", box.dir.string()});
  CHECK(r.code == 0);
  const std::string csv = box.read("d.csv");
  CHECK(csv.rfind(sweep_csv_header(), 0) == 0);
  CHECK(count(csv, "\n") == 1 + (2 + 3) * 6 * 40 + 1);
  CHECK(csv.find("summary,records=1200,violations=0") != std::string::npos);
}

TEST_CASE("exit codes") {
  Sandbox box;
  const fs::path cfg = box.write("fig.cfg", kFigure);
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"build"}).code == 2);
  CHECK(cli({"build", "--config", (box.dir / "missing.cfg").string()}).code == 2);
  CHECK(cli({"build", "--config", cfg.string(), "--bogus"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"build", "--config", cfg.string(), "--precision", "200"}).code == 2);
  CHECK(cli({"plot", "--config", cfg.string(), "--dimension", "3", "--out", box.dir.string()}).code == 2);
  CHECK(cli({"build", "--config", cfg.string(), "--layers", "0"}).code == 2);
  const fs::path bad = box.write("bad.cfg", R"({"dimension": 2, "extra": true})");
  const Result r = cli({"build", "--config", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("extra") != std::string::npos);
  const fs::path weak = box.write("weak.cfg", R"({"schedule": {"k": {"family": "table", "values": [1, 2, 3, 4]}}, "layers": 2})");
  CHECK(cli({"build", "--config", weak.string(), "--out", box.dir.string()}).code == 1);
}

TEST_CASE("svg opening") {
  Geometry g;
  BoxSpec b;
  b.j = 1;
  b.layer = 1;
  b.side = 1.0;
  b.translation = {0.0, 0.0};
  b.gap = 0.5;
  g.boxes = {b};
  g.summary.box_count = 1;
  g.summary.horizontal_extent = 1.0;
  g.summary.height = {0.0, 0.0};
  const std::string svg = geometry_svg(g);
  CHECK(svg.find("M0.500000,0.000000 L1.000000,0.000000 L1.000000,-1.000000 L0.000000,-1.000000 L0.000000,0.000000") !=
        std::string::npos);
  CHECK(count(svg, "<path ") == 1);
}

TEST_CASE("reports") {
  CHECK(render_report(RunReport{}).find("no stages executed") != std::string::npos);

  const Geometry g = build_layered(Schedule::figure_default(), 4);
  auto boxes = g.boxes;
  boxes[3].gap = 0.0;
  RunReport r;
  r.geometry = g.summary;
  r.connectivity = connectivity_certificate(boxes, g.summary);
  const std::string text = render_report(r);
  CHECK(text.find("fact 1 positive openings: FAIL") != std::string::npos);
  CHECK(text.find("Overall: FAIL") != std::string::npos);

  Sandbox box;
  const fs::path cfg = box.write("fig.cfg", kFigure);
  const Result full = cli({"report", "--config", cfg.string(), "--layers", "8", "--out", box.dir.string()});
  CHECK(full.code == 0);
  CHECK(full.out.find("Disjointness: PASS") != std::string::npos);
  CHECK(full.out.find("Connectivity: PASS") != std::string::npos);
  CHECK(full.out.find("Certification: PASS") != std::string::npos);
  CHECK(full.out.find("Overall: PASS") != std::string::npos);
  CHECK(box.read("report.txt") == full.out.substr(full.out.find("trapcert run report")));
}

TEST_CASE("number formatting") {
  CHECK(shortest(0.1) == "0.1");
  CHECK(shortest(1.0) == "1.0");
  CHECK(sci17(1.0) == "1.0000000000000000e+00");
}
