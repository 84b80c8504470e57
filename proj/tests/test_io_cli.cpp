// Copyright 2026 The oscitool Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "oscitool/errors.hpp"
#include "oscitool/io.hpp"
#include "oscitool/oscillator.hpp"
#include <unistd.h>

using namespace osc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "oscitool");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("oscitool_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_input(const std::string& name, const Json& j) {
  const fs::path p = scratch() / name;
  write_json(p, j);
  return p.string();
}

HermiteCoeffs sample_coeffs() {
  HermiteCoeffs c(2, 3);
  c.set(MultiIndex{0, 0}, 1.0);
  c.set(MultiIndex{2, 1}, Complex(0.25, -0.5));
  return c;
}

}  // namespace

TEST_CASE("coefficient JSON round trip is exact") {
  const HermiteCoeffs c = sample_coeffs();
  const HermiteCoeffs back = coeffs_from_json(Json::parse(to_json(c).dump()));
  CHECK(back.dim() == 2);
  CHECK(back.trunc() == 3);
  CHECK(back.values() == c.values());
}

TEST_CASE("malformed coefficient JSON names the field") {
  Json j = to_json(sample_coeffs());
  j["entries"][1]["alpha"] = Json::array({1, -1});
  CHECK_THROWS_WITH_AS(coeffs_from_json(j), doctest::Contains("$.entries[1].alpha"), DomainError);
  j = to_json(sample_coeffs());
  j.erase("trunc");
  CHECK_THROWS_WITH_AS(coeffs_from_json(j), doctest::Contains("trunc"), DomainError);
}

TEST_CASE("grid and STFT JSON round trip") {
  const GridFunction g = synthesize(sample_coeffs(), default_hermite_grid(2, 3));
  const GridFunction gb = grid_from_json(to_json(g));
  CHECK(gb.values == g.values);
  CHECK(gb.axes[1].nodes == g.axes[1].nodes);
  const StftMatrix s = stft_matrix(HermiteCoeffs::unit(1, 1, MultiIndex{1}), Lattice::symmetric(1, 5, 2.0));
  const StftMatrix sb = stft_from_json(to_json(s));
  CHECK(sb.values == s.values);
  CHECK(sb.lattice.nodes == s.lattice.nodes);
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kExitUsage);
  CHECK(invoke({"frft", "--rho", "0.5"}).code == cli::kExitUsage);
  CHECK(invoke({"classify", "--in", (scratch() / "missing.json").string()}).code == cli::kExitUsage);
  const Run r = invoke({"norm", "--in", write_input("c.json", to_json(sample_coeffs())), "--p", "two"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("--p") != std::string::npos);
  CHECK(invoke({"--help"}).code == cli::kExitPass);
}

TEST_CASE("frft verb on both routes") {
  const std::string in = write_input("h.json", to_json(HermiteCoeffs::unit(1, 4, MultiIndex{3})));
  Run r = invoke({"frft", "--in", in, "--rho", "1"});
  REQUIRE(r.code == cli::kExitPass);
  const HermiteCoeffs f = coeffs_from_json(Json::parse(r.out));
  CHECK(f[3] == Complex(0.0, 1.0));
  r = invoke({"frft", "--in", in, "--rho", "0.5", "--route", "kernel"});
  REQUIRE(r.code == cli::kExitPass);
  CHECK(grid_from_json(Json::parse(r.out)).values.size() == 96);
  CHECK(invoke({"frft", "--in", in, "--rho", "0.5+0.2i", "--route", "kernel"}).code == cli::kExitUsage);
  CHECK(invoke({"frft", "--in", in, "--rho", "0.5+0.2i"}).code == cli::kExitPass);
}

TEST_CASE("complex arguments parse in every spelling") {
  const std::string in = write_input("h0.json", to_json(HermiteCoeffs::unit(1, 2, MultiIndex{1})));
  for (const char* z : {"i", "-i", "2i", "1+i", "1-2.5i", "1e-1+1e-1i", "3"}) {
    CHECK(invoke({"propagate", "--in", in, "--zeta", z}).code == cli::kExitPass);
  }
  CHECK(invoke({"propagate", "--in", in, "--zeta", "1+"}).code == cli::kExitUsage);
}

TEST_CASE("classify and norm verbs") {
  const std::string in = write_input("w.json", to_json(witness_sequence(WitnessKind::kSchwartzLog2, 1, 120)));
  Run r = invoke({"classify", "--in", in});
  REQUIRE(r.code == cli::kExitPass);
  CHECK(Json::parse(r.out)["tag"] == "Schwartz");
  const std::string h0 = write_input("g.json", to_json(HermiteCoeffs::unit(1, 2, MultiIndex{0})));
  r = invoke({"norm", "--in", h0, "--p", "inf", "--q", "inf", "--space", "W"});
  REQUIRE(r.code == cli::kExitPass);
  CHECK(Json::parse(r.out)["norm"].get<double>() == doctest::Approx(0.3989422804014327));
  CHECK(invoke({"norm", "--in", h0, "--weight", "radial-poly:2"}).code == cli::kExitPass);
  CHECK(invoke({"norm", "--in", h0, "--weight", "exp:2"}).code == cli::kExitUsage);
}

TEST_CASE("evolve and duhamel write CSV") {
  const std::string in = write_input("e.json", to_json(HermiteCoeffs::unit(1, 3, MultiIndex{2})));
  Run r = invoke({"evolve", "--in", in, "--T", "1", "--steps", "4", "--space", "l2"});
  REQUIRE(r.code == cli::kExitPass);
  CHECK(r.out.rfind("t,norm\n0,1\n", 0) == 0);
  setenv("OSCITOOL_OUT_DIR", scratch().c_str(), 1);
  r = invoke({"duhamel", "--in", in, "--variant", "s1", "--steps", "16", "--out", "sub/d.csv", "--check"});
  unsetenv("OSCITOOL_OUT_DIR");
  CHECK(r.code == cli::kExitPass);
  CHECK(fs::exists(scratch() / "sub" / "d.csv"));
  CHECK(r.err.find("refinement gap") != std::string::npos);
}

TEST_CASE("strichartz verb gates exponents") {
  Run r = invoke({"strichartz", "--estimate", "duhamel", "--p", "inf", "--q", "1"});
  CHECK(r.code == cli::kExitCheckFailed);
  CHECK(Json::parse(r.out)["violation"].get<std::string>().find("d(1/q - 1/p) < 1") != std::string::npos);
  r = invoke({"strichartz", "--estimate", "duhamel", "--p", "4", "--q", "2", "--p0", "2", "--r0", "4", "--steps", "16", "--points", "33"});
  REQUIRE(r.code == cli::kExitPass);
  const Json j = Json::parse(r.out);
  CHECK(j["admissible"] == true);
  CHECK(j["ratio"].get<double>() > 0.0);
  CHECK(invoke({"strichartz", "--estimate", "other"}).code == cli::kExitUsage);
}

TEST_CASE("verify subcommands") {
  CHECK(invoke({"verify", "identity", "--rho", "0.3+0.1i", "--c", "1-i", "--N", "20", "--dim", "2"}).code == cli::kExitPass);
  CHECK(invoke({"verify", "minkowski", "--p", "4", "--q", "2", "--rho", "0.4", "--points", "41"}).code == cli::kExitPass);
  CHECK(invoke({"verify", "minkowski", "--p", "2", "--q", "4", "--rho", "0.4"}).code == cli::kExitUsage);
  const std::string in = write_input("v.json", to_json(HermiteCoeffs::unit(1, 4, MultiIndex{2})));
  CHECK(invoke({"verify", "isometry", "--in", in, "--t", "0.4", "--r", "2", "--w0", "poly:1"}).code == cli::kExitPass);
  const Run r = invoke({"verify", "frft-estimate", "--in", in, "--p", "4", "--q", "2", "--sweep", "0.1,0.3,0.5", "--points", "41"});
  REQUIRE(r.code == cli::kExitPass);
  CHECK(r.out.rfind("rho,lhs,rhs,ratio,fitted_slope\n", 0) == 0);
  // an expectation the data cannot meet fails the check
  CHECK(invoke({"verify", "frft-estimate", "--in", in, "--p", "4", "--q", "2", "--sweep", "0.1,0.3,0.5", "--points", "41",
             "--expect-slope", "5", "--slope-tol", "0.1"})
            .code == cli::kExitCheckFailed);
}

TEST_CASE("run verb replays a config") {
  const std::string good = write_input("cfg.json", Json{{"verb", "verify identity"}, {"args", {{"rho", "0.25"}, {"N", 10}}}});
  CHECK(invoke({"run", "--config", good}).code == cli::kExitPass);
  const std::string bad = write_input("bad.json", Json{{"verb", "verify identity"}, {"args", {{"rho", {{"x", 1}}}}}});
  const Run r = invoke({"run", "--config", bad});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("$.args.rho") != std::string::npos);
  const std::string extra = write_input("extra.json", Json{{"verb", "stft"}, {"bogus", 1}});
  CHECK(invoke({"run", "--config", extra}).err.find("$.bogus") != std::string::npos);
}

TEST_CASE("output is deterministic") {
  const std::string in = write_input("d.json", to_json(sample_coeffs()));
  CHECK(invoke({"frft", "--in", in, "--rho", "0.3,0.7"}).out == invoke({"frft", "--in", in, "--rho", "0.3,0.7"}).out);
}
