#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "plic/generators.hpp"
#include "plic/io.hpp"
#include "plic/snake.hpp"
#include "plic/svg.hpp"
#include "support.hpp"

using namespace plic;
using namespace plic::testing;
using io::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

InverseSystemPrefix sample_system(const std::string& name) {
  return io::system_from_json(io::read_json_file(std::string(PLIC_SAMPLES_DIR) + "/" + name));
}

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(PLIC_CLI) + " " + args + " 2>/dev/null";
  Run r{-1, ""};
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 256> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const char* name) { return std::string(PLIC_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Io, MapRoundTrip) {
  auto rng = gen::case_rng(7001, 0);
  for (int i = 0; i < 20; ++i) {
    PLMap f = gen::random_map(rng);
    EXPECT_EQ(io::map_from_json(json::parse(io::to_json(f).dump())), f);
  }
  auto j = io::to_json(z1());
  EXPECT_EQ(j["domain"], "[0,1]");
  EXPECT_EQ(j["breakpoints"][2]["y"], "-3/4");
}

TEST(Io, SystemRoundTrip) {
  InverseSystemPrefix sys = sample_system("system_zigzag12.json");
  ASSERT_EQ(sys.length(), 12u);
  EXPECT_EQ(sys.at(7), zigzag());
  EXPECT_EQ(io::system_from_json(io::to_json(sys)).maps, sys.maps);
}

TEST(Io, ParseErrorsNameTheirPosition) {
  auto bad = json::parse(R"({"domain":"[-1,1]","breakpoints":[{"x":"-1","y":"0"},{"x":"0","y":0},{"x":"1","y":"1"}]})");
  try {
    io::map_from_json(bad);
    FAIL() << "expected ParseError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("breakpoints[1].y"), std::string::npos) << e.what();
  }
  EXPECT_PLIC_ERROR(io::map_from_json(json::parse(R"({"domain":"[0,2]","breakpoints":[]})")), ErrorKind::ParseError);
  EXPECT_PLIC_ERROR(io::parse_grid("0, ,1"), ErrorKind::ParseError);
  EXPECT_PLIC_ERROR(io::read_json_file("/nonexistent/plic.json"), ErrorKind::ParseError);
  EXPECT_EQ(io::parse_grid(" 1/2,-1 ,0"), grid({"-1", "0", "1/2"}));
}

TEST(Plot, DeterministicAndScaled) {
  PlotSpec spec;
  spec.maps.push_back({PLMap::identity(), {}});
  spec.grids.push_back(grid({"0", "1/2"}));
  std::string a = plot_map(spec), b = plot_map(spec);
  EXPECT_EQ(a, b);
  // the diagonal runs from the lower-left to the upper-right corner of the frame
  EXPECT_NE(a.find("points=\"20.000000,380.000000 380.000000,20.000000\""), std::string::npos) << a;
  EXPECT_EQ(a.rfind("</svg>\n"), a.size() - 7);
}

TEST(Snake, IdentitiesStayStraight) {
  SnakeSpec spec;
  spec.system.maps.assign(3, PLMap::identity());
  spec.depth = 4;
  auto r = snake_embedding(spec);
  EXPECT_TRUE(r.simple);
  EXPECT_TRUE(r.nested);
  EXPECT_TRUE(r.access_clear);
  EXPECT_EQ(r.marked.y, Rational(0));
  for (std::size_t i = 0; i + 1 < r.tube_widths.size(); ++i) EXPECT_LT(r.tube_widths[i + 1], r.tube_widths[i]);
}

TEST(Snake, PositiveSystemDepthThree) {
  SnakeSpec spec;
  spec.system = sample_system("system_positive3.json");
  spec.depth = 3;
  spec.reflect_left = true;
  auto r = snake_embedding(spec);
  EXPECT_TRUE(r.simple);
  EXPECT_TRUE(geom::is_simple(r.polyline));
  EXPECT_TRUE(r.access_clear);
  ASSERT_TRUE(r.kappa.has_value());
  EXPECT_EQ(r.svg, snake_embedding(spec).svg);
}

TEST(Snake, GoldenSvg) {
  SnakeSpec spec;
  spec.system = sample_system("system_positive3.json");
  spec.depth = 3;
  spec.reflect_left = true;
  EXPECT_EQ(snake_embedding(spec).svg, slurp(std::string(PLIC_GOLDEN_DIR) + "/snake_depth3.svg"));
}

TEST(Snake, Preconditions) {
  SnakeSpec spec;
  spec.system.maps.assign(2, zigzag());
  spec.depth = 3;
  spec.reflect_left = true;
  EXPECT_PLIC_ERROR(snake_embedding(spec), ErrorKind::MixedOrientations);
  spec.depth = 7;
  EXPECT_PLIC_ERROR(snake_embedding(spec), ErrorKind::PreconditionViolated);
  spec.depth = 3;
  spec.reflect_left = false;
  spec.tube_widths = {R("1"), R("1")};
  EXPECT_PLIC_ERROR(snake_embedding(spec), ErrorKind::LengthMismatch);
  spec.tube_widths = {R("1"), R("1/2"), R("1/4")};
  EXPECT_PLIC_ERROR(snake_embedding(spec), ErrorKind::PreconditionViolated);
}

TEST(Geometry, Simplicity) {
  std::vector<Point> zig{{R("0"), R("0")}, {R("1"), R("1")}, {R("2"), R("0")}};
  EXPECT_TRUE(geom::is_simple(zig));
  zig.push_back({R("1"), R("-1")});
  zig.push_back({R("1"), R("2")});
  EXPECT_FALSE(geom::is_simple(zig));
}

TEST(Cli, EvalPrintsARational) {
  auto r = cli("eval --map " + sample("z1.json") + " --x 3/8");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "-1/8\n");
  EXPECT_EQ(cli("eval --map " + sample("identity.json") + " --x 1/3").out, "1/3\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("").code, 1);
  EXPECT_EQ(cli("eval --map " + sample("z1.json")).code, 1);
  EXPECT_EQ(cli("eval --map /nonexistent.json --x 0").code, 1);
  EXPECT_EQ(cli("truncate --map " + sample("z1.json") + " --grid -9/10 --out /dev/null").code, 2);
  EXPECT_EQ(cli("eval --map " + sample("z1.json") + " --x 5/4").code, 2);
}

TEST(Cli, ReportsCarrySchema) {
  auto r = cli("factor --map " + sample("zigzag_mixed.json"));
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["schema"], "plic/1");
  EXPECT_EQ(io::map_from_json(j["t"]), zigzag());
}

TEST(Cli, PropTest) {
  auto r = cli("prop-test --seed 7 --cases 200");
  EXPECT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["schema"], "plic/1");
  EXPECT_EQ(j["pass"], true);
}
