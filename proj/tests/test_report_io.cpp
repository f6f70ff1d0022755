#include "report_io.hpp"

#include <doctest.h>

#include <cstring>
#include <limits>
#include <random>

using namespace ncg;

namespace {
bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }
}  // namespace

TEST_CASE("doubles survive a json round trip bit for bit") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1, 1);
  io::json arr = io::json::array();
  std::vector<double> xs = {0.1, 1.0 / 3.0, -1.5, 0.125, 1e-300, 6.02214076e23,
                            std::numeric_limits<double>::denorm_min(), 2.0, -0.0};
  for (int i = 0; i < 200; ++i) xs.push_back(u(rng) * std::pow(10.0, int(u(rng) * 30)));
  for (double x : xs) arr.push_back(x);
  io::json back = io::json::parse(io::dump(arr));
  REQUIRE(back.size() == xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(back[i].is_number_float());
    CHECK(same_bits(back[i].get<double>(), xs[i]));
  }
}

TEST_CASE("integral-valued doubles stay floats, integers stay integers") {
  CHECK(io::format_double(2.0) == "2.0");
  CHECK(io::format_double(0.125) == "0.125");
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  io::json j = {{"n", 3}, {"x", 3.0}};
  io::json back = io::json::parse(io::dump(j));
  CHECK(back["n"].is_number_integer());
  CHECK(back["x"].is_number_float());
}

TEST_CASE("object keys are sorted and the dump is deterministic") {
  io::json j;
  j["zeta"] = 1;
  j["alpha"] = {{"b", 2}, {"a", 1}};
  j["mid"] = io::json::array({1.5, "s"});
  std::string s = io::dump(j);
  CHECK(s.find("\"alpha\"") < s.find("\"mid\""));
  CHECK(s.find("\"mid\"") < s.find("\"zeta\""));
  CHECK(s.find("\"a\"") < s.find("\"b\""));
  CHECK(s == io::dump(io::json::parse(s)));
}

TEST_CASE("check tables in text and csv") {
  ModelReport rep;
  rep.small("x^2 = 0", 1e-13, 1e-10);
  rep.near("scalar", -1.5, -1.5, 1e-9);
  rep.flag("rank, with comma", false, "6");
  CHECK_FALSE(rep.pass());
  std::string t = io::checks_text(rep);
  CHECK(t.find("PASS x^2 = 0") != std::string::npos);
  CHECK(t.find("FAIL rank, with comma") != std::string::npos);
  std::string c = io::checks_csv(rep);
  CHECK(c.rfind("check,passed,value,expected,tol\n", 0) == 0);
  CHECK(c.find("\"rank, with comma\",0,") != std::string::npos);
  io::json cj = io::checks_json(rep);
  CHECK(cj.size() == 3);
  CHECK(cj[2]["passed"] == false);
}

TEST_CASE("degree table") {
  std::vector<long> pi{1, 2, 3}, junk{0, 0, 1}, canon{1, 2, 2}, ranks{1, 2}, betti{1};
  std::string s = io::degree_csv(pi, junk, canon, ranks, betti);
  CHECK(s == "degree,pi_dim,junk_dim,form_dim,module_rank,betti\n0,1,0,1,1,1\n1,2,0,2,2,\n2,3,1,2,,\n");
}
