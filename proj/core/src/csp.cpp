#include "vig/csp.hpp"

#include <algorithm>

#include "vig/error.hpp"

namespace vig {
namespace {

struct Range {
  std::int64_t min, max;
};

// Fixpoint bounds propagation; false when some domain empties.
bool propagate(const CspProblem& problem, std::vector<Range>& doms) {
  bool changed = true;
  while (changed) {
    changed = false;
    auto tighten = [&](std::uint32_t v, std::int64_t lo, std::int64_t hi) {
      Range& r = doms[v];
      if (lo > r.min) {
        r.min = lo;
        changed = true;
      }
      if (hi < r.max) {
        r.max = hi;
        changed = true;
      }
      return r.min <= r.max;
    };

    for (const CspProblem::Le& le : problem.les) {
      if (!tighten(le.b, doms[le.a].min, doms[le.b].max)) return false;
      if (!tighten(le.a, doms[le.a].min, doms[le.b].max)) return false;
    }

    for (const CspProblem::Sum& sum : problem.sums) {
      // Σys − Σxs = total.  Each variable is bounded by solving for it
      // against the extreme values of all others.
      std::int64_t min_y = 0, max_y = 0, min_x = 0, max_x = 0;
      for (std::uint32_t v : sum.ys) {
        min_y += doms[v].min;
        max_y += doms[v].max;
      }
      for (std::uint32_t v : sum.xs) {
        min_x += doms[v].min;
        max_x += doms[v].max;
      }
      for (std::uint32_t v : sum.ys) {
        std::int64_t lo = sum.total + min_x - (max_y - doms[v].max);
        std::int64_t hi = sum.total + max_x - (min_y - doms[v].min);
        if (!tighten(v, lo, hi)) return false;
      }
      for (std::uint32_t v : sum.xs) {
        std::int64_t lo = min_y - (max_x - doms[v].max) - sum.total;
        std::int64_t hi = max_y - (min_x - doms[v].min) - sum.total;
        if (!tighten(v, lo, hi)) return false;
      }
    }
  }
  return true;
}

std::optional<CspSolution> search(const CspProblem& problem, std::vector<Range> doms,
                                  std::uint64_t& budget) {
  if (!propagate(problem, doms)) return std::nullopt;

  std::uint32_t pick = UINT32_MAX;
  std::int64_t pick_width = 0;
  for (std::uint32_t v = 0; v < doms.size(); ++v) {
    std::int64_t width = doms[v].max - doms[v].min;
    if (width > 0 && (pick == UINT32_MAX || width < pick_width)) {
      pick = v;
      pick_width = width;
    }
  }
  if (pick == UINT32_MAX) {
    CspSolution solution;
    solution.values.reserve(doms.size());
    for (const Range& r : doms) solution.values.push_back(r.min);
    return solution;
  }

  for (std::int64_t value = doms[pick].min; value <= doms[pick].max; ++value) {
    if (budget == 0) throw ResourceError("constraint search budget exhausted");
    --budget;
    std::vector<Range> child = doms;
    child[pick] = Range{value, value};
    if (auto solution = search(problem, std::move(child), budget)) return solution;
  }
  return std::nullopt;
}

}  // namespace

std::optional<CspSolution> csp_solve(const CspProblem& problem, std::uint64_t node_budget) {
  std::vector<Range> doms;
  doms.reserve(problem.vars.size());
  for (const CspVar& v : problem.vars) {
    if (v.min > v.max) return std::nullopt;
    doms.push_back(Range{v.min, v.max});
  }
  std::uint64_t budget = node_budget;
  return search(problem, std::move(doms), budget);
}

bool csp_verify(const CspProblem& problem, const CspSolution& solution) {
  if (solution.values.size() != problem.vars.size()) return false;
  for (std::size_t v = 0; v < problem.vars.size(); ++v) {
    if (solution.values[v] < problem.vars[v].min || solution.values[v] > problem.vars[v].max)
      return false;
  }
  for (const CspProblem::Le& le : problem.les) {
    if (solution.values[le.a] > solution.values[le.b]) return false;
  }
  for (const CspProblem::Sum& sum : problem.sums) {
    std::int64_t acc = 0;
    for (std::uint32_t v : sum.ys) acc += solution.values[v];
    for (std::uint32_t v : sum.xs) acc -= solution.values[v];
    if (acc != sum.total) return false;
  }
  return true;
}

}  // namespace vig
