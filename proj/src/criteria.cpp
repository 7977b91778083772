#include "tqf/criteria.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "tqf/isometry.hpp"
#include "tqf/normal_form.hpp"

namespace tqf {

Factorization factorize(i64 n) {
    if (n < 1) throw NonPositiveError("factorize needs n >= 1");
    Factorization f;
    f.n = n;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        i64 e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
    }
    if (n > 1) f.factors.emplace_back(n, 1);
    return f;
}

namespace {

const QuadForm& k_form(int i) {
    static const std::array<QuadForm, 3> k = {
        make_form(Mat(3, 3, {9, 4, 2, 4, 16, 8, 2, 8, 36})),
        make_form(Mat(3, 3, {4, 0, 2, 0, 8, 0, 2, 0, 17})),
        make_form(Mat(3, 3, {9, 0, 0, 0, 16, 8, 0, 8, 112})),
    };
    return k[static_cast<size_t>(i - 1)];
}

// Vanishing rule: k = square_scale * M^2 with every prime divisor of M
// congruent to an allowed residue.
struct VanishingRule {
    i64 square_scale;
    i64 prime_modulus;
    std::vector<i64> allowed;
};

const std::map<std::string, VanishingRule>& vanishing_rules() {
    static const std::map<std::string, VanishingRule> rules = {
        {"cor34i", {1, 4, {1}}},   {"cor34ii", {1, 8, {1, 3}}}, {"cor34iii", {1, 3, {1}}},
        {"cor36i", {1, 4, {1}}},   {"cor36ii", {1, 4, {1}}},    {"cor36iii", {2, 4, {1}}},
    };
    return rules;
}

std::vector<PaperInstance> build_instances() {
    Mat id3 = Mat::identity(3);
    std::vector<PaperInstance> v;

    v.push_back({"cor34i", diagonal_form({1, 1, 1}),
                 make_condition(id3, {1, 2, 2}, {4, 8, 8}), k_form(1),
                 Progression{8, 1}, std::nullopt, 4, true});

    v.push_back({"cor34ii", diagonal_form({1, 1, 2}),
                 make_condition(id3, {1, 4, 0}, {4, 16, 2}), std::nullopt,
                 Progression{8, 1}, std::nullopt, std::nullopt, true});

    // The cor34ii count rewritten over <1,16,8>: one quarter of this
    // instance's counts; its extended Gram is the one isometric to K_2.
    v.push_back({"cor34ii-sub", diagonal_form({1, 16, 8}),
                 make_condition(id3, {1, 1, 0}, {2, 2, 1}), k_form(2),
                 Progression{8, 1}, std::nullopt, 2, false});

    v.push_back({"cor34iii", diagonal_form({1, 4, 12}),
                 make_condition(Mat(3, 3, {1, 0, 0, 0, 1, -1, 0, 1, 1}), {3, 0, 2}, {12, 6, 6}),
                 k_form(3), Progression{24, 1}, std::nullopt, 12, true});

    v.push_back({"cor36i", diagonal_form({1, 1, 1}),
                 make_condition(id3, {1, 0, 2}, {2, 2, 4}), spinor_pair(2).partner,
                 Progression{8, 1}, Progression{8, 5}, 2, true});

    v.push_back({"cor36ii", diagonal_form({1, 1, 1}),
                 make_condition(id3, {1, 2, 2}, {2, 4, 4}), spinor_pair(4).partner,
                 Progression{8, 1}, std::nullopt, 2, true});

    v.push_back({"cor36iii", diagonal_form({1, 1, 2}),
                 make_condition(id3, {1, 1, 2}, {2, 2, 4}), scale_form(spinor_pair(1).partner, 2),
                 Progression{16, 2}, Progression{16, 10}, 2, true});

    return v;
}

}  // namespace

const std::vector<PaperInstance>& paper_instances() {
    static const std::vector<PaperInstance> v = build_instances();
    return v;
}

const PaperInstance& paper_instance(const std::string& label) {
    for (const auto& inst : paper_instances())
        if (inst.label == label) return inst;
    throw NonPositiveError("unknown instance label: " + label);
}

bool vanishing_predicate(const std::string& label, i64 k) {
    const PaperInstance& inst = paper_instance(label);
    if (!inst.has_vanishing_rule) throw NonPositiveError("instance has no vanishing rule: " + label);
    if (k < inst.prog.residue || floor_mod(k - inst.prog.residue, inst.prog.modulus) != 0)
        throw WrongProgressionError("k=" + std::to_string(k) + " is not in the progression of " + label);
    const VanishingRule& rule = vanishing_rules().at(label);
    if (k % rule.square_scale != 0) return false;
    i64 q = k / rule.square_scale;
    if (!is_square(q)) return false;
    i64 root = narrow64(isqrt(q));
    for (auto [p, e] : factorize(root).factors) {
        bool ok = false;
        for (i64 r : rule.allowed) ok = ok || (p % rule.prime_modulus == r);
        if (!ok) return false;
    }
    return true;
}

std::vector<i64> congruence_count_table(const QuadForm& f, const CongruenceCondition& cond,
                                        i64 amax, EnumBudget* budget) {
    if (amax < 0) throw NonPositiveError("table bound must be nonnegative");
    std::vector<i64> table(static_cast<size_t>(amax) + 1, 0);
    enumerate_below(f, Vec(f.dim(), 0), amax,
                    [&](const Vec& x, i64 q) {
                        if (satisfies(cond, x)) ++table[static_cast<size_t>(q)];
                    },
                    budget);
    return table;
}

CheckReport check_vanishing_iff(const std::string& label, i64 n_max, EnumBudget* budget) {
    CheckReport rep;
    if (n_max < 1) return rep;
    const PaperInstance& inst = paper_instance(label);
    i64 amax = inst.prog.value(n_max);
    if (inst.positivity_prog) amax = std::max(amax, inst.positivity_prog->value(n_max));
    std::vector<i64> counts = congruence_count_table(inst.form, inst.cond, amax, budget);
    for (i64 n = 1; n <= n_max; ++n) {
        i64 a = inst.prog.value(n);
        bool vanished = counts[static_cast<size_t>(a)] == 0;
        if (vanished != vanishing_predicate(label, a)) {
            rep.ok = false;
            rep.counterexample = n;
            rep.detail = label + ": count and criterion disagree at n=" + std::to_string(n) +
                         " (a=" + std::to_string(a) + ", count=" +
                         std::to_string(counts[static_cast<size_t>(a)]) + ")";
            return rep;
        }
        if (inst.positivity_prog) {
            i64 a2 = inst.positivity_prog->value(n);
            if (counts[static_cast<size_t>(a2)] <= 0) {
                rep.ok = false;
                rep.counterexample = n;
                rep.detail = label + ": positivity fails at n=" + std::to_string(n) +
                             " (a=" + std::to_string(a2) + ")";
                return rep;
            }
        }
    }
    return rep;
}

namespace {

struct ClosedFormCase {
    std::string label;
    std::string instance;
    Progression target;     // value counted by the instance
    Progression base;       // argument of the r_j term
    int base_index;         // 1 -> <1,1,1>, 2 -> <1,1,2>
    Rat base_coef;
    Rat corr_coef;          // coefficient of the sqrt correction (0 if none)
    bool alternate_sign;    // extra (-1)^n factor
};

const std::vector<ClosedFormCase>& cases() {
    static const std::vector<ClosedFormCase> v = {
        {"remark35", "cor34ii", {8, 1}, {8, 1}, 2, Rat(1, 16), Rat(1, 4), true},
        {"cor37i-a", "cor36i", {8, 1}, {8, 1}, 1, Rat(1, 6), Rat(1), false},
        {"cor37i-b", "cor36i", {8, 5}, {8, 5}, 1, Rat(1, 6), Rat(0), false},
        {"cor37ii", "cor36ii", {8, 1}, {8, 1}, 1, Rat(1, 6), Rat(1), false},
        {"cor37iii-a", "cor36iii", {16, 2}, {8, 1}, 1, Rat(1, 3), Rat(2), false},
        {"cor37iii-b", "cor36iii", {16, 10}, {8, 5}, 1, Rat(1, 3), Rat(0), false},
    };
    return v;
}

const ClosedFormCase& case_for(const std::string& label) {
    for (const auto& c : cases())
        if (c.label == label) return c;
    throw NonPositiveError("unknown closed-form case: " + label);
}

}  // namespace

std::vector<std::string> closed_form_cases() {
    std::vector<std::string> out;
    for (const auto& c : cases()) out.push_back(c.label);
    return out;
}

const std::string& closed_form_instance(const std::string& label) {
    return case_for(label).instance;
}

i64 closed_form_target(const std::string& label, i64 n) {
    return case_for(label).target.value(n);
}

i64 closed_form_base_arg(const std::string& label, i64 n) {
    return case_for(label).base.value(n);
}

int closed_form_base_index(const std::string& label) {
    return case_for(label).base_index;
}

i64 closed_form_value_with_base(const std::string& label, i64 n, i64 base_count) {
    const ClosedFormCase& c = case_for(label);
    if (n < 0) throw NonPositiveError("closed form needs n >= 0");
    i64 k = c.base.value(n);
    Rat value = c.base_coef * Rat(base_count);
    if (c.corr_coef != Rat(0) && is_square(k)) {
        i64 root = narrow64(isqrt(k));
        i64 sign = ((root - 1) / 2) % 2 == 0 ? 1 : -1;
        if (c.alternate_sign && n % 2 != 0) sign = -sign;
        value = value - c.corr_coef * Rat(sign) * Rat(root);
    }
    if (!value.is_integer() || value < Rat(0))
        throw NonIntegerResultError("closed form " + label + " gave " + value.str() +
                                    " at n=" + std::to_string(n));
    return value.as_int();
}

i64 closed_form_value(const std::string& label, i64 n, EnumBudget* budget) {
    const ClosedFormCase& c = case_for(label);
    static const QuadForm sum3 = diagonal_form({1, 1, 1});
    static const QuadForm sum2d = diagonal_form({1, 1, 2});
    i64 base = rep_count(c.base_index == 2 ? sum2d : sum3, closed_form_base_arg(label, n), budget);
    return closed_form_value_with_base(label, n, base);
}

CheckReport factor_identities_check(i64 n_max, EnumBudget* budget) {
    CheckReport rep;
    if (n_max < 1) return rep;
    auto fail = [&](i64 n, const std::string& msg) {
        rep.ok = false;
        rep.counterexample = n;
        rep.detail = msg + " at n=" + std::to_string(n);
    };

    struct Identity {
        std::string inst;      // congruence side
        i64 inst_factor;       // multiplier on the congruence count
        const QuadForm* companion;
        Progression count_at;  // argument of the congruence count
        Progression comp_at;   // argument of the companion plain count
    };
    static const QuadForm l1p = spinor_pair(1).partner;
    const std::vector<Identity> identities = {
        {"cor34i", 2, &k_form(1), {8, 1}, {8, 1}},
        {"cor34ii", 4, &k_form(2), {8, 1}, {8, 1}},
        {"cor34iii", 4, &k_form(3), {24, 1}, {24, 1}},
        {"cor36iii", 1, &l1p, {16, 2}, {8, 1}},
    };

    for (const auto& idn : identities) {
        const PaperInstance& inst = paper_instance(idn.inst);
        std::vector<i64> counts =
            congruence_count_table(inst.form, inst.cond, idn.count_at.value(n_max), budget);
        ThetaSeries comp = theta_series(*idn.companion, idn.comp_at.value(n_max), budget);
        for (i64 n = 1; n <= n_max; ++n) {
            i64 lhs = mul64(idn.inst_factor, counts[static_cast<size_t>(idn.count_at.value(n))]);
            i64 rhs = comp.counts[static_cast<size_t>(idn.comp_at.value(n))];
            if (lhs != rhs) {
                fail(n, idn.inst + ": count identity against companion form fails");
                return rep;
            }
        }
    }

    // Rewriting step: the cor34ii counts are one quarter of the cor34ii-sub counts.
    {
        const PaperInstance& a = paper_instance("cor34ii");
        const PaperInstance& b = paper_instance("cor34ii-sub");
        i64 cap = std::min<i64>(n_max, 500);
        std::vector<i64> ca = congruence_count_table(a.form, a.cond, 8 * cap + 1, budget);
        std::vector<i64> cb = congruence_count_table(b.form, b.cond, 8 * cap + 1, budget);
        for (i64 n = 1; n <= cap; ++n) {
            i64 k = 8 * n + 1;
            if (4 * ca[static_cast<size_t>(k)] != cb[static_cast<size_t>(k)]) {
                fail(n, "cor34ii: quarter identity against the <1,16,8> rewrite fails");
                return rep;
            }
        }
    }
    return rep;
}

CheckReport instance_structure_check(EnumBudget* budget) {
    CheckReport rep;
    auto fail = [&](const std::string& msg) {
        if (rep.ok) {
            rep.ok = false;
            rep.detail = msg;
        }
    };

    // Printed bases and Grams.
    {
        const PaperInstance& inst = paper_instance("cor34i");
        CongruenceLattices lat = congruence_lattices(inst.cond);
        if (lat.kernel_basis != Mat::diag({4, 8, 8})) fail("cor34i: kernel basis");
        if (gram_restrict(inst.form, lat.kernel_basis) != diagonal_form({16, 64, 64}))
            fail("cor34i: kernel Gram");
        Mat printed = hnf(Mat::from_cols({{1, 2, 2}, {4, 0, 0}, {0, 8, 0}})).hnf;
        if (lat.extended_basis != printed) fail("cor34i: extended basis");
    }
    {
        const PaperInstance& inst = paper_instance("cor34iii");
        CongruenceLattices lat = congruence_lattices(inst.cond);
        Mat printed_kernel = hnf(Mat::from_cols({{12, 0, 0}, {0, 3, -3}, {0, 3, 3}})).hnf;
        if (lat.kernel_basis != printed_kernel) fail("cor34iii: kernel basis");
        Mat printed_ext = hnf(Mat::from_cols({{3, 0, 0}, {0, 3, -3}, {0, 1, 1}})).hnf;
        if (lat.extended_basis != printed_ext) fail("cor34iii: extended basis");
        QuadForm printed_gram = make_form(Mat(3, 3, {144, 0, 0, 0, 144, -72, 0, -72, 144}));
        if (!is_isometric(gram_restrict(inst.form, lat.kernel_basis), printed_gram, budget))
            fail("cor34iii: kernel Gram class");
    }
    {
        const PaperInstance& inst = paper_instance("cor34ii-sub");
        CongruenceLattices lat = congruence_lattices(inst.cond);
        if (gram_restrict(inst.form, lat.kernel_basis) != diagonal_form({4, 64, 8}))
            fail("cor34ii-sub: kernel Gram");
    }
    {
        const PaperInstance& inst = paper_instance("cor36i");
        CongruenceLattices lat = congruence_lattices(inst.cond);
        if (gram_restrict(inst.form, lat.kernel_basis) != diagonal_form({4, 4, 16}))
            fail("cor36i: kernel Gram");
    }

    // Coset indices and extended-form isometry classes.
    for (const auto& inst : paper_instances()) {
        CongruenceLattices lat = congruence_lattices(inst.cond);
        if (inst.printed_index && lat.index_d != *inst.printed_index)
            fail(inst.label + ": coset index " + std::to_string(lat.index_d) +
                 " != " + std::to_string(*inst.printed_index));
        i128 dk = det(lat.kernel_basis), de = det(lat.extended_basis);
        if (abs_val(dk) != mul128(lat.index_d, abs_val(de)))
            fail(inst.label + ": determinant/index relation");
        if (inst.extended_target) {
            QuadForm ext = gram_restrict(inst.form, lat.extended_basis);
            if (!is_isometric(ext, *inst.extended_target, budget))
                fail(inst.label + ": extended Gram is not in the asserted class");
        }
    }

    // The second companion form is the third pair's partner, entry for entry.
    if (k_form(2) != spinor_pair(3).partner) fail("companion K2 differs from the pair-3 partner");

    return rep;
}

}  // namespace tqf
