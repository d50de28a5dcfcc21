#include "gsp/config.hpp"
#include "gsp/generators.hpp"
#include "gsp/io.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

using namespace gsp;

TEST_CASE("edge list round trip") {
  std::istringstream in("# comment\n1 2 0.5\n\n2 3 1.5  # trailing\n");
  const Graph g = io::parse_edge_list(in);
  CHECK(g.order() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.adjacency()(0, 1) == 0.5);
  CHECK(g.adjacency()(2, 1) == 1.5);

  std::ostringstream out;
  io::write_edge_list(out, g);
  std::istringstream back(out.str());
  CHECK(io::parse_edge_list(back, 3).adjacency() == g.adjacency());

  std::istringstream padded("1 2 1\n");
  CHECK(io::parse_edge_list(padded, 5).order() == 5);
}

TEST_CASE("edge list errors") {
  for (const char* bad : {"1 2\n", "0 1 1\n", "1 2 1 9\n", "a b c\n"}) {
    std::istringstream in(bad);
    CHECK_THROWS_AS(io::parse_edge_list(in), ConfigError);
  }
  std::istringstream far("1 7 1\n");
  CHECK_THROWS_AS(io::parse_edge_list(far, 3), ConfigError);
  CHECK_THROWS_AS(io::read_edge_list("/nonexistent/graph.txt"), ConfigError);
}

TEST_CASE("signal files") {
  std::istringstream in("vertex,value\n2,-1.5\n1,0.25\n3,1e-3\n");
  const Vector x = io::parse_signal(in, 3);
  CHECK(x(0) == 0.25);
  CHECK(x(1) == -1.5);
  CHECK(x(2) == 1e-3);
  std::ostringstream out;
  io::write_signal(out, x);
  std::istringstream back(out.str());
  CHECK(io::parse_signal(back, 3) == x);

  for (const char* bad : {"v,x\n1,1\n", "vertex,value\n1,1\n1,2\n", "vertex,value\n1,1\n", "vertex,value\n4,1\n2,1\n3,1\n",
                          "vertex,value\n1;1\n"}) {
    std::istringstream b(bad);
    CHECK_THROWS_AS(io::parse_signal(b, 3), ConfigError);
  }
}

TEST_CASE("numbers round-trip through their shortest form") {
  CHECK(io::format_number(0.1) == "0.1");
  CHECK(io::format_number(3.0) == "3");
  for (double v : {1.0 / 3.0, 1e-300, -2.5e17, std::numbers::pi}) CHECK(std::stod(io::format_number(v)) == v);
}

TEST_CASE("csv writer") {
  io::Table t{{"a", "b"}, {}};
  t.add({"1", "2"});
  CHECK_THROWS_AS(t.add({"3"}), DimensionError);
  std::ostringstream out;
  io::write_csv(out, {"first", "second"}, t);
  CHECK(out.str() == "# first\n# second\na,b\n1,2\n");
}

TEST_CASE("svg writer emits one polyline per series") {
  std::ostringstream out;
  io::write_svg(out, "t", "x", "y", {{"s1", {1, 2, 3}, {1, 10, 100}}, {"s2", {1, 2}, {5, 5}}}, true);
  const std::string s = out.str();
  CHECK(s.find("<svg") == 0);
  size_t count = 0;
  for (size_t at = s.find("<polyline"); at != std::string::npos; at = s.find("<polyline", at + 1)) ++count;
  CHECK(count == 2);
}

TEST_CASE("config parsing and typed getters") {
  std::istringstream in("# settings\nseed = 42\nmu=0.05 # step\nsamples = 3:9:3, 12\nflag = true\nname = er:10:0.3\n");
  Config c = Config::parse(in);
  c.set_assignment("mu=0.1");
  CHECK(c.get_seed("seed", 1) == 42);
  CHECK(c.get_double("mu", 0.0) == 0.1);
  CHECK(c.get_ints("samples", "") == std::vector<std::int64_t>{3, 6, 9, 12});
  CHECK(c.get_bool("flag", false));
  CHECK(c.get_string("name", "") == "er:10:0.3");
  CHECK(c.get_double("gamma", 0.25) == 0.25);
  CHECK_NOTHROW(c.reject_unused());
  CHECK(c.provenance() == "flag=true gamma=0.25 mu=0.1 name=er:10:0.3 samples=3:9:3, 12 seed=42");
}

TEST_CASE("config errors name the field") {
  std::istringstream no_eq("seed 4\n");
  CHECK_THROWS_AS(Config::parse(no_eq), ConfigError);
  Config c;
  c.set("mu", "fast");
  CHECK_THROWS_WITH_AS(c.get_double("mu", 0.1), doctest::Contains("'mu'"), ConfigError);
  c.set("n", "3.5");
  CHECK_THROWS_AS(c.get_int("n", 1), ConfigError);
  c.set("b", "maybe");
  CHECK_THROWS_AS(c.get_bool("b", false), ConfigError);
  c.set("seed", "-4");
  CHECK_THROWS_AS(c.get_seed("seed", 1), ConfigError);
  c.set("extra", "1");
  CHECK_THROWS_WITH_AS(c.reject_unused(), doctest::Contains("'extra'"), ConfigError);
  CHECK_THROWS_AS(c.set_assignment("novalue"), ConfigError);
  CHECK_THROWS_AS(Config::from_file("/nonexistent/run.cfg"), ConfigError);
}
