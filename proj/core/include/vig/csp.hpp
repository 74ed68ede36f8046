#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vig {

// Finite-domain integer variable; the domain is a contiguous range, which
// is all the interval-boundary encoding ever needs.
struct CspVar {
  std::int64_t min = 0;
  std::int64_t max = 0;
  std::string name;  // diagnostics only
};

struct CspProblem {
  std::vector<CspVar> vars;

  struct Le {  // vars[a] <= vars[b]
    std::uint32_t a = 0;
    std::uint32_t b = 0;
  };
  struct Sum {  // Σ vars[ys] − Σ vars[xs] = total
    std::vector<std::uint32_t> ys;
    std::vector<std::uint32_t> xs;
    std::int64_t total = 0;
  };
  std::vector<Le> les;
  std::vector<Sum> sums;

  std::uint32_t add_var(std::int64_t min, std::int64_t max, std::string name) {
    vars.push_back(CspVar{min, max, std::move(name)});
    return static_cast<std::uint32_t>(vars.size() - 1);
  }
};

struct CspSolution {
  std::vector<std::int64_t> values;  // by variable index
};

// Bounds-consistency propagation plus backtracking search: the unassigned
// variable with the smallest domain is branched first (ties by index),
// values ascending — fully deterministic.  Returns nullopt for UNSAT;
// throws ResourceError when the search-node budget runs out.
std::optional<CspSolution> csp_solve(const CspProblem& problem,
                                     std::uint64_t node_budget = 1'000'000);

// Independent verifier: checks the assignment against every domain and
// constraint without reusing any solver machinery.
bool csp_verify(const CspProblem& problem, const CspSolution& solution);

}  // namespace vig
