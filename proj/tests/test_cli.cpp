#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "octlab/checks.hpp"

using namespace octlab;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunConfig base_config(int n, SignSelect sign) {
  RunConfig cfg;
  cfg.n = n;
  cfg.sign = sign;
  cfg.field = {FieldKind::Rationals, 0, false};
  cfg.trials = 3;
  cfg.tuples = 30;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  RunConfig cfg = base_config(2, SignSelect::Both);
  CHECK_NOTHROW(cfg.validate());
  cfg.n = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.n = 9;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = base_config(2, SignSelect::Both);
  cfg.deltas = {Scalar(1), Scalar(1)};
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = base_config(2, SignSelect::Both);
  cfg.field = {FieldKind::PrimeField, 4, false};
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("cache files are byte-identical across rebuilds") {
  RunConfig cfg = base_config(2, SignSelect::Both);
  cfg.cache_dir = ".";
  auto paths = cmd_build(cfg);
  REQUIRE(paths.size() == 2);
  std::string first = slurp(paths[0]);
  CHECK(first.find("octlab-cache 1") == 0);
  CHECK(first.find("dim 10") != std::string::npos);
  auto paths2 = cmd_build(cfg);
  CHECK(slurp(paths2[0]) == first);

  // reload reproduces the table
  StructureAlgebra loaded = load_cache(paths[0]);
  StructureAlgebra fresh = build_herm_plus(2, field_rationals());
  REQUIRE(loaded.dim() == fresh.dim());
  CHECK(loaded.labels() == fresh.labels());
  for (int i = 0; i < fresh.dim(); ++i)
    for (int j = 0; j < fresh.dim(); ++j) {
      const auto& a = loaded.table(i, j);
      const auto& b = fresh.table(i, j);
      REQUIRE(a.size() == b.size());
      for (std::size_t t = 0; t < a.size(); ++t) {
        CHECK(a[t].first == b[t].first);
        CHECK(cmp(a[t].second, b[t].second) == 0);
      }
    }
  for (const auto& p : paths) std::remove(p.c_str());

  // minus n = 1 cache carries dim 7
  RunConfig cfg1 = base_config(1, SignSelect::Minus);
  cfg1.cache_dir = ".";
  auto p1 = cmd_build(cfg1);
  CHECK(slurp(p1[0]).find("dim 7") != std::string::npos);
  std::remove(p1[0].c_str());
}

TEST_CASE("check runner and report schema") {
  RunConfig cfg = base_config(2, SignSelect::Both);
  Report rep = cmd_check(cfg, {"dims", "products"});
  CHECK(rep.all_pass());
  REQUIRE(rep.records.size() >= 3);
  std::string js = rep.to_json();
  CHECK(js.find("\"version\"") != std::string::npos);
  CHECK(js.find("\"config\"") != std::string::npos);
  CHECK(js.find("\"records\"") != std::string::npos);
  CHECK(js.find("\"anchor\"") != std::string::npos);
  CHECK(js.find("\"expected\"") != std::string::npos);
  CHECK(js.find("\"computed\"") != std::string::npos);
  CHECK(js.find("\"verdict\"") != std::string::npos);
  CHECK(js.find("\"certification\"") != std::string::npos);
  CHECK(js.find("\"ms\"") != std::string::npos);
  CHECK(js.find("\"seed\": 1729") != std::string::npos);
  CHECK_THROWS_AS(cmd_check(cfg, {"nonsense"}), Error);
}

TEST_CASE("checks pass at n = 2 over the rationals") {
  RunConfig cfg = base_config(2, SignSelect::Both);
  for (const char* name : {"simplicity", "centroid", "lemmas", "identities", "scan"}) {
    Report rep = cmd_check(cfg, {name});
    INFO(name);
    CHECK(rep.all_pass());
  }
}

TEST_CASE("worker count does not change results") {
  RunConfig cfg = base_config(2, SignSelect::Plus);
  Report seq = cmd_check(cfg, {"dims", "scan"});
  cfg.workers = 2;
  Report par = cmd_check(cfg, {"dims", "scan"});
  REQUIRE(seq.records.size() == par.records.size());
  for (std::size_t i = 0; i < seq.records.size(); ++i) {
    CHECK(seq.records[i].id == par.records[i].id);
    CHECK(seq.records[i].computed == par.records[i].computed);
    CHECK(seq.records[i].pass == par.records[i].pass);
  }
  set_solver_workers(1);
}

TEST_CASE("full suite on the smallest order") {
  RunConfig cfg = base_config(1, SignSelect::Both);
  Report rep = cmd_check(cfg, {"full-suite"});
  CHECK(rep.all_pass());
  // every record carries a claim anchor or the derived tag
  for (const auto& r : rep.records) CHECK(!r.anchor.empty());
}
