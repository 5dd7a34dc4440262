#include "doctest.h"

#include <sstream>

#include "json.hpp"

#include "courantlab/cli.hpp"
#include "courantlab/models.hpp"
#include "courantlab/suites.hpp"

using namespace clab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string dump(const std::vector<SuiteResult>& results) {
  std::string out;
  for (const auto& s : results) {
    out += s.name + (s.applicable ? "" : " n/a") + "\n";
    for (const auto& r : s.reports) {
      out += "  " + r.name() + " " + std::to_string(r.checks()) + " " + std::to_string(r.failure_count()) + "\n";
      for (const auto& f : r.failures()) out += "    " + f.identity + " | " + f.inputs + " | " + f.witness + "\n";
    }
  }
  return out;
}

}  // namespace

TEST_CASE("derived seeds depend on every input") {
  CHECK(derive_seed(7, "a", 0) == derive_seed(7, "a", 0));
  CHECK(derive_seed(7, "a", 0) != derive_seed(7, "a", 1));
  CHECK(derive_seed(7, "a", 0) != derive_seed(7, "b", 0));
  CHECK(derive_seed(7, "a", 0) != derive_seed(8, "a", 0));
}

TEST_CASE("parallel and serial sweeps give identical reports") {
  for (const auto& name : {"gt1", "aff1"}) {
    const auto model = builtin_model(name);
    const auto parallel = run_suites(model, "all", {7, true});
    const auto serial = run_suites(model, "all", {7, false});
    CHECK(dump(parallel) == dump(serial));
    for (const auto& s : parallel) {
      CAPTURE(s.name);
      CHECK(s.passed());
    }
  }
  CHECK_THROWS_AS(run_suite(builtin_model("so3"), "nope"), std::invalid_argument);
}

TEST_CASE("double-only suites are not applicable to plain structures") {
  const auto r = run_suite(builtin_model("so3"), "torsion-sum");
  CHECK_FALSE(r.applicable);
  CHECK(r.passed());
}

TEST_CASE("constructed cps instances") {
  for (const auto& name : {"aff1", "sl2", "tr2"}) {
    const DoubleFrame frame(builtin_model(name).sig);
    const auto instances = cps_instances(frame, 1, 20);
    CHECK(instances.size() == 20);
    bool saw_minus_one = false, saw_zero = false, saw_one = false;
    for (const auto& inst : instances) {
      const auto r = block_cps(frame, inst.block);
      CAPTURE(inst.kind);
      REQUIRE(r.cps());
      CHECK(*r.lambda == inst.lambda);
      saw_minus_one = saw_minus_one || inst.lambda == -1;
      saw_zero = saw_zero || inst.lambda == 0;
      saw_one = saw_one || inst.lambda == 1;
    }
    CHECK(saw_zero);
    CHECK(saw_one);
    if (frame.rank() % 2 == 0) CHECK(saw_minus_one);
  }
}

TEST_CASE("commuting tensors") {
  const auto model = builtin_model("tr2");
  const DoubleFrame frame(model.sig);
  const auto q1 = GradedPoly::q(model.sig, 0);
  auto n = zero_functions(model.sig, 2, 2);
  n(0, 0) = n(1, 1) = q1;
  CHECK(commuting_bivectors(frame, n).size() == 1);
  CHECK(commuting_forms(frame, n).size() == 1);
  for (const auto& pi : commuting_bivectors(frame, *model.endomorphism("PW").block)) {
    CHECK(is_antisymmetric(pi));
  }
}

TEST_CASE("cli: validate and classify") {
  const auto ok = run({"validate", "so3"});
  CHECK(ok.code == kExitPass);
  CHECK(run({"validate", "models/so3.model"}).code == kExitPass);

  const auto c = run({"classify", "so3.model", "N0", "--json"});
  REQUIRE(c.code == kExitPass);
  const auto j = nlohmann::json::parse(c.out);
  CHECK(j["skew"] == true);
  CHECK(j["cps"]["lambda"] == "0");
  CHECK(j["nijenhuis"] == true);
  CHECK(j["deforming"] == true);
  CHECK(j["deforming_factor"] == "0");
}

TEST_CASE("cli: failing structure exits 1 with the witness") {
  const auto r = run({"validate", "failing", "--json"});
  CHECK(r.code == kExitMathFailure);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["master_equation"]["witness"] == "2 t2 t3 t5 t6");
  const auto v = run({"verify", "failing", "--suite", "all", "--seed", "7", "--json"});
  CHECK(v.code == kExitMathFailure);
  CHECK(v.out.find("2 t2 t3 t5 t6") != std::string::npos);
}

TEST_CASE("cli: input errors exit 2") {
  CHECK(run({}).code == kExitInputError);
  CHECK(run({"validate", "no-such-model"}).code == kExitInputError);
  CHECK(run({"bracket", "so3", "t1", "t9"}).code == kExitInputError);
  CHECK(run({"bracket", "so3", "t1", "0.5 t2"}).code == kExitInputError);
  CHECK(run({"dorfman", "so3", "t1 t2", "t3"}).code == kExitInputError);
  CHECK(run({"classify", "so3", "nope"}).code == kExitInputError);
  CHECK(run({"double", "so3"}).code == kExitInputError);
  CHECK(run({"pn", "tr2", "omega", "PW"}).code == kExitInputError);
  CHECK(run({"verify", "so3", "--suite", "nope"}).code == kExitInputError);
  CHECK(run({"--help"}).code == kExitPass);
}

TEST_CASE("cli: computations") {
  const auto b = run({"bracket", "gt1", "q1", "p1", "--json"});
  CHECK(nlohmann::json::parse(b.out)["result"] == "1");
  const auto d = run({"dorfman", "aff1", "e1", "e2", "--json"});
  CHECK(nlohmann::json::parse(d.out)["dorfman"] == "e2");
  CHECK(run({"classify", "so3", "Id"}).code == kExitMathFailure);
  CHECK(run({"torsion", "aff1", "F", "--courant"}).code == kExitPass);
  CHECK(run({"deform", "so3", "R"}).code == kExitPass);
  CHECK(run({"double", "sl2"}).code == kExitPass);
  CHECK(run({"pn", "tr2", "pi", "PW"}).code == kExitPass);
  CHECK(run({"omegan", "tr2", "omega", "PW"}).code == kExitPass);
  const auto irr = nlohmann::json::parse(run({"irreducible", "gt1", "--max-degree", "2", "--json"}).out);
  CHECK(irr["verdict_text"] == "IrreducibleUpToDegree(2)");
  const auto lie = nlohmann::json::parse(run({"irreducible", "abelian_double", "--lie-algebroid", "--json"}).out);
  CHECK(lie["verdict"] == "ReducibleWitness");
}

TEST_CASE("cli: verify output is deterministic") {
  const auto a = run({"verify", "gt1", "--suite", "all", "--seed", "7", "--json"});
  const auto b = run({"verify", "gt1", "--suite", "all", "--seed", "7", "--json"});
  const auto c = run({"verify", "gt1", "--suite", "all", "--seed", "7", "--json", "--serial"});
  CHECK(a.code == kExitPass);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  const auto other = run({"verify", "gt1", "--suite", "all", "--seed", "8", "--json"});
  CHECK(other.code == kExitPass);
}
