#include <cstdio>
#include <string>
#include <vector>

#include "mlat/verify.hpp"

using namespace mlat;

namespace {

struct Criterion {
  int id;
  std::string check;
  double max_seconds;  // 0: no time limit
};

const std::vector<Criterion> kCriteria{
    {1, "index_formula", 2.0},        {2, "reflection_characters", 5.0}, {3, "involution_identity", 0},
    {4, "fm_orientation", 0},         {5, "elliptic_constraints", 0},    {6, "dual_certificate", 0},
    {7, "nikulin_gluing", 0},         {8, "pair_normalization", 60.0},   {9, "similitude", 0},
    {10, "v_perp_structure", 0},
};

}  // namespace

int main() {
  const VerifyConfig config;
  const std::vector<CheckResult> results = run_checks(config);
  int failures = 0;
  for (const Criterion& c : kCriteria) {
    const CheckResult* r = nullptr;
    for (const auto& x : results)
      if (x.name == c.check) r = &x;
    std::string why;
    if (!r)
      why = "missing";
    else if (r->status != CheckStatus::Pass)
      why = to_string(r->status) + " " + r->witness.dump();
    else if (c.max_seconds > 0 && r->seconds >= c.max_seconds)
      why = "took " + std::to_string(r->seconds) + " s, limit " + std::to_string(c.max_seconds) + " s";
    const bool ok = why.empty();
    if (!ok) ++failures;
    std::printf("%s criterion %d %s (%.3f s)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.check.c_str(), r ? r->seconds : 0.0,
                ok ? "" : ": ", why.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(kCriteria.size()) - failures, kCriteria.size());
  return failures == 0 ? 0 : 1;
}
