#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tqf/qform.hpp"

namespace tqf {

// Node budget for lattice enumeration. Exceeding it throws; results are
// complete or absent, never truncated.
struct EnumBudget {
    i64 limit = 1'000'000'000;
    i64 used = 0;

    void charge() {
        if (++used > limit) throw BudgetExceededError();
    }
};

// Quadratic polynomial target: counts/lists x with x^t N x + 2 x^t z = a.
struct ShiftedTarget {
    QuadForm inner_form;
    Vec shift;
};

struct ThetaSeries {
    QuadForm form;
    i64 upper = 0;
    std::vector<i64> counts;  // counts[k] = r(k, form), k = 0..upper
};

// r(k, f): number of integer vectors of norm exactly k.
i64 rep_count(const QuadForm& f, i64 k, EnumBudget* budget = nullptr);

// All vectors of norm k (closed under negation).
std::vector<Vec> rep_list(const QuadForm& f, i64 k, EnumBudget* budget = nullptr);

// One enumeration pass filling r(0..upper, f).
ThetaSeries theta_series(const QuadForm& f, i64 upper, EnumBudget* budget = nullptr);

// Exact count of integer solutions of x^t N x + 2 x^t z = a. Negative a is
// legal; the polynomial's minimum can be negative.
i64 shifted_rep_count(const ShiftedTarget& t, i64 a, EnumBudget* budget = nullptr);

std::vector<Vec> shifted_rep_list(const ShiftedTarget& t, i64 a, EnumBudget* budget = nullptr);

// All (x, Q(x)) with 0 < Q(x) <= bound, one per antipodal pair.
std::vector<std::pair<Vec, i64>> short_vectors(const QuadForm& f, i64 bound,
                                               EnumBudget* budget = nullptr);

// Visits every x with x^t N x + 2 x^t z <= bound exactly once (no antipodal
// folding). Callback receives the vector and its polynomial value.
void enumerate_below(const QuadForm& f, const Vec& shift, i64 bound,
                     const std::function<void(const Vec&, i64)>& fn,
                     EnumBudget* budget = nullptr);

}  // namespace tqf
