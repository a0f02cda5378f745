#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "unruh/analytic.hpp"
#include "unruh/errors.hpp"
#include "unruh/fock_oracle.hpp"
#include "unruh/harness.hpp"

using namespace unruh;

namespace {

std::vector<FixtureRecord> load(const std::string& name) {
  std::ifstream in(std::string(UNRUH_FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  return read_fixtures(in);
}

std::string csv_of(const SweepRequest& req) {
  std::ostringstream os;
  write_sweep_csv(os, run_sweep(req).rows);
  return os.str();
}

}  // namespace

TEST_CASE("axis names round trip") {
  for (SweepAxis a : {SweepAxis::R, SweepAxis::CoshR, SweepAxis::Omega}) CHECK(parse_axis(axis_name(a)) == a);
  CHECK_THROWS_AS(parse_axis("tanh"), DomainError);
}

TEST_CASE("sweep grids ascend in r on every axis") {
  SweepRequest req;
  req.lo = 0.05;
  req.hi = 2.0;
  req.steps = 9;
  for (SweepAxis a : {SweepAxis::R, SweepAxis::CoshR, SweepAxis::Omega}) {
    req.axis = a;
    if (a == SweepAxis::CoshR) req.lo = 1.0;
    const std::vector<double> g = sweep_grid(req);
    REQUIRE(g.size() == 9);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  }
}

TEST_CASE("degenerate or out-of-domain grids are rejected") {
  SweepRequest req;
  req.lo = 1.0;
  req.hi = 1.0;
  req.steps = 2;
  CHECK_THROWS_AS(sweep_grid(req), DomainError);
  req.hi = 2.0;
  req.steps = 1;
  CHECK_THROWS_AS(sweep_grid(req), DomainError);
  req.steps = 5;
  req.lo = -0.5;
  CHECK_THROWS_AS(sweep_grid(req), DomainError);
  req.lo = 0.5;
  req.axis = SweepAxis::CoshR;
  CHECK_THROWS_AS(sweep_grid(req), DomainError);
  req.axis = SweepAxis::Omega;
  req.lo = 0.0;
  CHECK_THROWS_AS(sweep_grid(req), DomainError);
  req.axis = SweepAxis::R;
  req.lo = 0.0;
  req.tol = 0.0;
  CHECK_THROWS_AS(sweep_grid(req), DomainError);
}

TEST_CASE("sweep CSV layout") {
  SweepRequest req;
  req.lo = 0.0;
  req.hi = 1.0;
  req.steps = 3;
  const std::string csv = csv_of(req);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == kSweepCsvHeader);
  std::getline(in, line);
  CHECK(line.rfind("0,,1,2,0,1,1.5,2,", 0) == 0);
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);

  req.axis = SweepAxis::Omega;
  req.lo = 0.5;
  req.hi = 1.0;
  const SweepResult res = run_sweep(req);
  REQUIRE(res.rows.front().omega.has_value());
  CHECK(*res.rows.front().omega == 1.0);
}

TEST_CASE("failed points become diagnostic rows") {
  SweepRecord ok;
  ok.r = 0.5;
  SweepRecord bad;
  bad.r = 1.0;
  bad.failure = "term cap";
  std::ostringstream os;
  write_sweep_csv(os, {ok, bad});
  CHECK(os.str().find("\n#convergence-failure,r=1,\"term cap\"\n") != std::string::npos);
  SweepResult res{{ok, bad}};
  CHECK_FALSE(res.ok());
}

TEST_CASE("a tiny term cap fails sweep points instead of throwing") {
  SweepRequest req;
  req.lo = 0.0;
  req.hi = 3.0;
  req.steps = 4;
  req.limits.max_terms = 20;
  const SweepResult res = run_sweep(req);
  CHECK_FALSE(res.ok());
  CHECK_FALSE(res.rows.front().failure.has_value());
  CHECK(res.rows.back().failure.has_value());
}

TEST_CASE("property: every emitted row honors the tolerance") {
  SweepRequest req;
  req.lo = 0.0;
  req.hi = 12.0;
  req.steps = 25;
  for (double tol : {1e-6, 1e-10}) {
    req.tol = tol;
    const SweepResult res = run_sweep(req);
    REQUIRE(res.ok());
    for (const SweepRecord& row : res.rows) CHECK(row.est_error <= tol);
  }
}

TEST_CASE("sweeps are deterministic across thread counts") {
  SweepRequest req;
  req.lo = 0.0;
  req.hi = 8.0;
  req.steps = 17;
  req.threads = 1;
  const std::string one = csv_of(req);
  req.threads = 4;
  CHECK(csv_of(req) == one);
  CHECK(csv_of(req) == one);
}

TEST_CASE("fixture format round trip") {
  FixtureRecord f;
  f.r = 0.1;
  f.n_max = 400;
  f.tol = 1e-10;
  f.log_negativity = 0.98574044243621006;
  f.mutual_information = 1.9585544398924972;
  f.entropy_joint = 0.11298758610155663;
  f.entropy_rob = 1.0715420259940538;
  f.sigma = 1.485296282167536;
  const std::string line = format_fixture(f);
  CHECK(line ==
        "{\"r\": 0.10000000000000001, \"n_max\": 400, \"tol\": 1e-10, \"N\": 0.98574044243621006, "
        "\"I\": 1.9585544398924972, \"S_AR\": 0.11298758610155663, \"S_RI\": 1.0715420259940538, "
        "\"sigma\": 1.485296282167536}");
  const FixtureRecord back = parse_fixture(line);
  CHECK(back.r == f.r);
  CHECK(back.n_max == f.n_max);
  CHECK(back.log_negativity == f.log_negativity);
  CHECK(back.sigma == f.sigma);
}

TEST_CASE("fixture parser rejects malformed records") {
  CHECK_THROWS_AS(parse_fixture("not json"), StructureError);
  CHECK_THROWS_AS(parse_fixture("{\"r\": 1}"), StructureError);
  CHECK_THROWS_AS(parse_fixture("{\"n_max\": 1, \"r\": 1, \"tol\": 1, \"N\": 1, \"I\": 1, \"S_AR\": 1, "
                                "\"S_RI\": 1, \"sigma\": 1}"),
                  StructureError);
  CHECK_THROWS_AS(parse_fixture("{\"r\": 1, \"n_max\": 1, \"tol\": 1, \"N\": \"x\", \"I\": 1, \"S_AR\": 1, "
                                "\"S_RI\": 1, \"sigma\": 1}"),
                  StructureError);
}

TEST_CASE("golden sweep over r in [0, 3]") {
  const std::vector<FixtureRecord> gold = load("sweep_r_0_3.jsonl");
  REQUIRE(gold.size() == 31);
  SweepRequest req;
  req.lo = 0.0;
  req.hi = 3.0;
  req.steps = 31;
  const SweepResult res = run_sweep(req);
  REQUIRE(res.rows.size() == gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const SweepRecord& row = res.rows[i];
    INFO("r = " << gold[i].r);
    CHECK(row.r == doctest::Approx(gold[i].r).epsilon(1e-15));
    CHECK(std::abs(row.log_negativity - gold[i].log_negativity) <= 1e-10);
    CHECK(std::abs(row.mutual_information - gold[i].mutual_information) <= 1e-10);
    CHECK(std::abs(row.entropy_joint - gold[i].entropy_joint) <= 1e-10);
    CHECK(std::abs(row.entropy_rob - gold[i].entropy_rob) <= 1e-10);
    CHECK(std::abs(row.sigma - gold[i].sigma) <= 1e-10);
  }
}

TEST_CASE("golden sweep over cosh r in [1, 10]") {
  const std::vector<FixtureRecord> gold = load("sweep_cosh_1_10.jsonl");
  REQUIRE(gold.size() == 10);
  SweepRequest req;
  req.lo = 1.0;
  req.hi = 10.0;
  req.steps = 10;
  req.axis = SweepAxis::CoshR;
  const SweepResult res = run_sweep(req);
  for (std::size_t i = 0; i < gold.size(); ++i) {
    INFO("r = " << gold[i].r);
    CHECK(res.rows[i].r == doctest::Approx(gold[i].r).epsilon(1e-14));
    CHECK(std::abs(res.rows[i].mutual_information - gold[i].mutual_information) <= 1e-10);
    CHECK(std::abs(res.rows[i].log_negativity - gold[i].log_negativity) <= 1e-10);
  }
}

TEST_CASE("golden oracle record at r = 1, n_max = 400") {
  const std::vector<FixtureRecord> gold = load("oracle_r1_n400.jsonl");
  REQUIRE(gold.size() == 1);
  const MeasureBundle b = measures_numeric(SqueezingParameter::from_r(1.0), 400);
  const FixtureRecord got = fixture_from_bundle(b, gold[0].tol);
  CHECK(got.n_max == 400);
  CHECK(std::abs(got.log_negativity - gold[0].log_negativity) <= 1e-13);
  CHECK(std::abs(got.mutual_information - gold[0].mutual_information) <= 1e-13);
  CHECK(std::abs(got.entropy_joint - gold[0].entropy_joint) <= 1e-13);
  CHECK(std::abs(got.entropy_rob - gold[0].entropy_rob) <= 1e-13);
  CHECK(std::abs(got.sigma - gold[0].sigma) <= 1e-13);
}

TEST_CASE("verification: default run passes, coarse cutoff fails with a diagnostic") {
  const VerificationReport good = run_verification(VerifyRequest{});
  CHECK(good.pass());

  VerifyRequest coarse;
  coarse.r_values = {2.0};
  coarse.n_max = 3;
  const VerificationReport bad = run_verification(coarse);
  CHECK_FALSE(bad.pass());
  REQUIRE(!bad.rows.empty());
  CHECK(bad.rows.front().quantity == "truncation");
  CHECK_FALSE(bad.rows.front().pass);

  VerifyRequest zero;
  zero.r_values = {0.0};
  const VerificationReport z = run_verification(zero);
  CHECK(z.pass());

  VerifyRequest negative;
  negative.r_values = {-1.0};
  CHECK_FALSE(run_verification(negative).pass());

  std::ostringstream os;
  write_report(os, bad);
  CHECK(os.str().find("verdict: FAIL") != std::string::npos);
}

TEST_CASE("bundle listing names every field") {
  const auto sp = SqueezingParameter::from_r(0.0);
  std::ostringstream os;
  write_bundle(os, measures_analytic(sp, 1e-10), sp);
  for (const char* key : {"log_negativity", "sigma", "entropy_joint", "entropy_rob", "entropy_alice",
                          "mutual_information", "cosh_r", "omega", "+/-"}) {
    CHECK(os.str().find(key) != std::string::npos);
  }
}
