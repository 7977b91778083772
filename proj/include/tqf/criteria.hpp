#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tqf/bell.hpp"
#include "tqf/congruence.hpp"

namespace tqf {

struct Factorization {
    i64 n = 1;
    std::vector<std::pair<i64, i64>> factors;  // (prime, exponent)
};

Factorization factorize(i64 n);

struct Progression {
    i64 modulus = 1;
    i64 residue = 0;
    i64 value(i64 n) const { return add64(mul64(modulus, n), residue); }
};

// One built-in congruence-counting instance: the form, the residue condition,
// the progression it is tested on, and the asserted structure around it.
struct PaperInstance {
    std::string label;
    QuadForm form;
    CongruenceCondition cond;
    std::optional<QuadForm> extended_target;  // isometry class of the extended Gram
    Progression prog;
    std::optional<Progression> positivity_prog;
    std::optional<i64> printed_index;  // coset index d where the source states it
    bool has_vanishing_rule = false;
};

const std::vector<PaperInstance>& paper_instances();
const PaperInstance& paper_instance(const std::string& label);

// Arithmetic side of the vanishing criterion for one instance label:
// k = scale * (square with restricted prime divisors). Throws
// WrongProgression when k is outside the instance's progression.
bool vanishing_predicate(const std::string& label, i64 k);

// Exhaustive comparison count==0 vs predicate for n = 1..n_max, plus the
// companion positivity claims where the instance carries one.
CheckReport check_vanishing_iff(const std::string& label, i64 n_max, EnumBudget* budget = nullptr);

// Closed-form cases: value of the congruence count as a three-squares (or
// <1,1,2>) count plus a square-class correction.
std::vector<std::string> closed_form_cases();
// Instance the case counts, and the progression member it evaluates at n.
const std::string& closed_form_instance(const std::string& label);
i64 closed_form_target(const std::string& label, i64 n);
// Argument and base form (1 -> <1,1,1>, 2 -> <1,1,2>) of the case's r_j term.
i64 closed_form_base_arg(const std::string& label, i64 n);
int closed_form_base_index(const std::string& label);
// The value itself; must be a nonnegative integer.
i64 closed_form_value(const std::string& label, i64 n, EnumBudget* budget = nullptr);
i64 closed_form_value_with_base(const std::string& label, i64 n, i64 base_count);

// The multiplicative count identities tying each instance to its companion
// single-spinor-class form, checked for n = 1..n_max, plus the isometry
// assertions on the extended Grams (checked once).
CheckReport factor_identities_check(i64 n_max, EnumBudget* budget = nullptr);

// Printed bases, coset indices and extended-form isometry classes of the
// built-in instances; transcription errors surface here.
CheckReport instance_structure_check(EnumBudget* budget = nullptr);

// counts[a] = congruence count of a by f under cond, for all 0 <= a <= amax,
// from a single enumeration pass.
std::vector<i64> congruence_count_table(const QuadForm& f, const CongruenceCondition& cond,
                                        i64 amax, EnumBudget* budget = nullptr);

}  // namespace tqf
