#pragma once

#include "k3kit/json_io.hpp"
#include "k3kit/theta.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace k3 {

enum class Status { pass, fail, inconclusive };
std::string to_string(Status s);

struct CaseResult {
  std::string name;
  Status status = Status::fail;
  std::string detail;
  double residual = 0;
  double seconds = 0;
};

struct VerificationReport {
  std::string suite;
  std::vector<CaseResult> cases;
  double seconds = 0;
  std::size_t count(Status s) const;
  bool ok() const { return count(Status::fail) == 0; }
};

struct VerifyOptions {
  int jobs = 1;
  std::uint64_t seed = 1;
  long order = 8;     // principal-part window
  double tol = 1e-6;  // modularity residual
};

// table, principal, lift, balance, modularity, theta; "all" runs them in that order.
const std::vector<std::string>& suite_names();
VerificationReport run_suite(const std::string& suite, const VerifyOptions& opts = {});
Json to_json(const VerificationReport& r);

// Number of tabulated classes per (g, delta), indexed [g][delta].
const std::vector<std::array<int, 2>>& table1_bins();

// Randomized theta identity: jacobi (g = 1), symmetric (g <= 3), factorization (g = 2, 3),
// petersson (g = 1, 2). max_rel_err is compared against the pinned bound for that identity.
struct IdentityResult {
  std::string identity;
  int g = 0, trials = 0;
  double max_rel_err = 0, bound = 0;
  bool pass = false;
};
IdentityResult theta_identity(const std::string& identity, int g, int trials, std::uint64_t seed,
                              Precision p = Precision::standard);
Json to_json(const IdentityResult& r);

}  // namespace k3
