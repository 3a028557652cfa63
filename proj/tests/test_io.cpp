#include "doctest.h"
#include "k3kit/verify.hpp"

using namespace k3;

TEST_CASE("integers and rationals round-trip through JSON") {
  const Int big("123456789012345678901234567890");
  CHECK(int_json(big).is_string());
  CHECK(int_from_json(int_json(big)) == big);
  CHECK(int_json(Int(-7)).is_number_integer());
  CHECK(rat_from_pair(rat_pair(frac(-6, 8))) == frac(-3, 4));
  CHECK(rat_from_pair(Json::parse(R"(["10", 4])")) == frac(5, 2));
  CHECK_THROWS(rat_from_pair(Json::parse("[1, 0]")));
  CHECK_THROWS(rat_from_pair(Json::parse("[1]")));
  CHECK_THROWS(int_from_json(Json::parse(R"("12x")")));
}

TEST_CASE("lattice JSON") {
  const Lattice a = parse_lattice("U+U(2)+E8(2)");
  const Lattice b = lattice_from_json(to_json(a));
  CHECK(b.gram() == a.gram());
  CHECK(b.name() == a.name());
  CHECK(lattice_from_json(Json("A1+")).gram() == named::A1_plus().gram());
  CHECK(lattice_from_json(Json::parse(R"({"gram": [[0, 1], [1, 0]]})")).gram() == named::U().gram());
  CHECK_THROWS(lattice_from_json(Json::parse(R"({"gram": [[0, 1], [2, 0]]})")));
  CHECK_THROWS(lattice_from_json(Json::parse(R"({"gram": [[0, 1]]})")));
  CHECK_THROWS(lattice_from_json(Json("Q7")));
}

TEST_CASE("series JSON") {
  const auto s = eta_quotient({{1, -8}, {2, 8}, {4, -8}}, 5);
  const Json j = to_json(s);
  CHECK(j["denom"].is_number_integer());
  CHECK(series_from_json(j) == s);
  CHECK(series_from_json(Json::parse(j.dump())) == s);
  const auto t = series_from_json(Json::parse(R"({"denom": 4, "order": 8, "terms": [{"num": -1, "re": [3, 2], "im": [0, 1]}]})"));
  CHECK(t.coeff(frac(-1, 4)) == GaussianRational(frac(3, 2)));
  CHECK(t.order() == 2);
  CHECK_THROWS(series_from_json(Json::parse(R"({"denom": 1, "order": 2, "terms": [{"num": 3, "re": [1, 1]}]})")));
  CHECK_THROWS(series_from_json(Json::parse(R"({"denom": 1, "terms": []})")));
}

TEST_CASE("vector-valued form JSON") {
  const Lattice lam = find_lambda(20, 2, 0)->lattice;
  const auto F = build_F_lambda(lam, 3);
  const Json j = to_json(F);
  CHECK(j["weight"] == Json::parse("[-8, 1]"));
  CHECK(j["components"].size() == F.size());
  const auto back = vvf_from_json(Json::parse(j.dump()));
  CHECK(back.weight() == F.weight());
  for (Coset g = 0; g < F.size(); ++g) CHECK(back[g] == F[g]);
  CHECK(principal_part(back) == principal_part(F));

  Json missing = j;
  missing["components"].erase(missing["components"].begin());
  CHECK_THROWS(vvf_from_json(missing));
}

TEST_CASE("report JSON") {
  const Node n{21, 1, 1};
  const auto d = FormalDivisor(n, 32, 32793, -1);
  const Json j = to_json(d);
  CHECK(j["D+"] == "32793");
  CHECK(j["node"]["g"] == 10);
  const auto rep = weight_balance_check(Node{14, 4, 1});
  const Json r = to_json(rep);
  CHECK(r["pass"] == true);
  CHECK(r["path"] == "chi8");
  CHECK(to_json(table1().front())["name"].is_string());
}

TEST_CASE("verification suites") {
  const auto table = run_suite("table");
  CHECK(table.ok());
  CHECK(table.cases.size() == 5);

  VerifyOptions two;
  two.jobs = 2;
  const auto bal1 = run_suite("balance");
  const auto bal2 = run_suite("balance", two);
  REQUIRE(bal1.cases.size() == bal2.cases.size());
  for (std::size_t i = 0; i < bal1.cases.size(); ++i) {
    CHECK(bal1.cases[i].name == bal2.cases[i].name);
    CHECK(bal1.cases[i].status == bal2.cases[i].status);
  }
  // A failing case is never reported as a pass.
  CHECK(bal1.count(Status::fail) == 5);
  CHECK_FALSE(bal1.ok());
  const Json j = to_json(bal1);
  CHECK(j["fail"] == 5);
  CHECK(j["ok"] == false);

  CHECK(run_suite("theta").ok());
  CHECK_THROWS(run_suite("nonsense"));
  CHECK_THROWS(theta_identity("jacobi", 2, 1, 1));
  CHECK_FALSE(theta_identity("symmetric", 2, 0, 1).pass);
}
