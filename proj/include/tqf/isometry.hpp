#pragma once

#include <optional>

#include "tqf/enumerate.hpp"
#include "tqf/qform.hpp"

namespace tqf {

struct ReducedForm {
    QuadForm form;
    UnimodularMap transform;  // transform^t * original * transform = form.gram
};

// Exact LLL reduction of the Gram matrix (delta = 99/100, rational
// arithmetic). Canonical presentation for caching and search pruning.
ReducedForm reduce_form(const QuadForm& f);

// Isometry witness T with T^t M_f T = M_g, or nullopt after exhaustive
// search over short-vector images of the reduced forms.
std::optional<UnimodularMap> is_isometric(const QuadForm& f, const QuadForm& g,
                                          EnumBudget* budget = nullptr);

// Order of the integral isometry group o(f).
i64 aut_order(const QuadForm& f, EnumBudget* budget = nullptr);

}  // namespace tqf
