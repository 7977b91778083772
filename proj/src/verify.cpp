#include "tqf/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "tqf/bell.hpp"
#include "tqf/congruence.hpp"
#include "tqf/criteria.hpp"
#include "tqf/isometry.hpp"
#include "tqf/normal_form.hpp"
#include "tqf/theta_cache.hpp"
#include "tqf/watson.hpp"

namespace tqf {

namespace {

constexpr std::uint64_t kSeed = 20260809;

// Shared in-memory theta store so suites run in one process reuse passes.
ThetaCache& shared_cache() {
    static ThetaCache cache;
    return cache;
}

SuiteResult pass(const std::string& name) { return SuiteResult{name, true, ""}; }

SuiteResult fail(const std::string& name, const std::string& detail) {
    return SuiteResult{name, false, detail};
}

const std::vector<QuadForm>& builtin_forms() {
    static const std::vector<QuadForm> forms = [] {
        std::vector<QuadForm> v;
        for (int i = 1; i <= 4; ++i) {
            v.push_back(spinor_pair(i).lattice);
            v.push_back(spinor_pair(i).partner);
        }
        v.push_back(diagonal_form({1, 1, 1}));
        v.push_back(diagonal_form({1, 1, 2}));
        v.push_back(diagonal_form({1, 4, 12}));
        v.push_back(diagonal_form({1, 16, 8}));
        v.push_back(make_form(Mat(3, 3, {9, 4, 2, 4, 16, 8, 2, 8, 36})));
        v.push_back(make_form(Mat(3, 3, {9, 0, 0, 0, 16, 8, 0, 8, 112})));
        return v;
    }();
    return forms;
}

// --- criterion suites -------------------------------------------------------

SuiteResult suite_theorem24(i64 kmax, EnumBudget* budget) {
    ThetaSeries base3 = shared_cache().get(diagonal_form({1, 1, 1}), kmax, budget);
    ThetaSeries base2 = shared_cache().get(diagonal_form({1, 1, 2}), kmax, budget);
    for (int i = 1; i <= 4; ++i) {
        ThetaSeries t = shared_cache().get(spinor_pair(i).lattice, kmax, budget);
        const ThetaSeries& base = (i == 3) ? base2 : base3;
        for (i64 k = 1; k <= kmax; ++k) {
            i64 formula = r_closed_form(i, k, base.counts[static_cast<size_t>(k)]);
            if (formula != t.counts[static_cast<size_t>(k)])
                return fail("theorem24", "pair " + std::to_string(i) + ", k=" + std::to_string(k) +
                                             ": formula " + std::to_string(formula) + " != count " +
                                             std::to_string(t.counts[static_cast<size_t>(k)]));
        }
    }
    return pass("theorem24");
}

SuiteResult suite_table1(i64 kmax, EnumBudget* budget) {
    ThetaSeries base3 = shared_cache().get(diagonal_form({1, 1, 1}), kmax, budget);
    ThetaSeries base2 = shared_cache().get(diagonal_form({1, 1, 2}), kmax, budget);
    for (int i = 1; i <= 4; ++i) {
        ThetaSeries tl = shared_cache().get(spinor_pair(i).lattice, kmax, budget);
        ThetaSeries tp = shared_cache().get(spinor_pair(i).partner, kmax, budget);
        const ThetaSeries& base = (i == 3) ? base2 : base3;
        for (i64 k = 1; k <= kmax; ++k) {
            TwoAdicSplit sp = two_adic_split(k);
            Rat mean = Rat(tl.counts[static_cast<size_t>(k)] + tp.counts[static_cast<size_t>(k)], 2);
            Rat predicted = c_table(i, sp.a, sp.alpha_res) * Rat(base.counts[static_cast<size_t>(k)]);
            if (mean != predicted)
                return fail("table1", "pair " + std::to_string(i) + ", k=" + std::to_string(k) +
                                          ": class mean " + mean.str() + " != " + predicted.str());
            // Zero rows kill both classes off the (0,1) branch.
            if (!(sp.a == 0 && sp.alpha_res == 1) &&
                c_table(i, sp.a, sp.alpha_res) == Rat(0) &&
                tl.counts[static_cast<size_t>(k)] != 0)
                return fail("table1", "pair " + std::to_string(i) + ", k=" + std::to_string(k) +
                                          ": zero row but nonzero count");
        }
    }
    return pass("table1");
}

SuiteResult suite_spinordiff(i64 kmax, EnumBudget* budget) {
    ThetaSeries tl = shared_cache().get(spinor_pair(3).lattice, kmax, budget);
    ThetaSeries tp = shared_cache().get(spinor_pair(3).partner, kmax, budget);
    for (i64 k = 1; k <= kmax; ++k) {
        i64 diff = tl.counts[static_cast<size_t>(k)] - tp.counts[static_cast<size_t>(k)];
        if (diff != spinor_difference(3, k))
            return fail("spinordiff", "k=" + std::to_string(k) + ": difference " +
                                          std::to_string(diff) + " != formula " +
                                          std::to_string(spinor_difference(3, k)));
    }
    return pass("spinordiff");
}

SuiteResult suite_halving(i64 kmax, EnumBudget* budget) {
    CheckReport rep = halving_identities_check(kmax, budget);
    return rep.ok ? pass("halving") : fail("halving", rep.detail);
}

// Random positive definite Gram: A^t A + diag(1..3), entries of A in [-2, 2].
QuadForm random_pd_form(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<i64> entry(-2, 2);
    std::uniform_int_distribution<i64> bump(1, 3);
    for (;;) {
        Mat a(n, n);
        for (auto& e : a.a) e = entry(rng);
        Mat g = mul(transpose(a), a);
        for (int i = 0; i < n; ++i) g(i, i) = add64(g(i, i), bump(rng));
        try {
            return make_form(g);
        } catch (const NotPositiveDefiniteError&) {
            continue;  // cannot happen, but keep the loop honest
        }
    }
}

SuiteResult suite_bijection(i64 instances, EnumBudget* budget) {
    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<int> dim_pick(1, 3);
    std::uniform_int_distribution<i64> b_entry(-3, 3);
    std::uniform_int_distribution<i64> w_entry(-4, 4);
    std::uniform_int_distribution<i64> a_pick(0, 200);
    const i64 moduli_choices[6] = {1, 2, 3, 4, 6, 8};
    std::uniform_int_distribution<int> s_pick(0, 5);
    std::uniform_int_distribution<i64> kmult(-2, 2);

    for (i64 t = 0; t < instances; ++t) {
        int n = dim_pick(rng);
        QuadForm f = random_pd_form(rng, n);
        Mat b(n, n);
        for (auto& e : b.a) e = b_entry(rng);
        Vec w(n), s(n);
        for (auto& e : w) e = w_entry(rng);
        for (auto& e : s) e = moduli_choices[s_pick(rng)];
        CongruenceCondition cond = make_condition(b, w, s);
        i64 a = a_pick(rng);

        i64 direct = congruence_rep_count(f, a, cond, budget);
        auto y = find_residue(cond);
        if (!y) {
            if (direct != 0)
                return fail("bijection", "t=" + std::to_string(t) + ": empty condition with count");
            continue;
        }
        ShiftedImage img = to_shifted(f, a, cond, *y);
        i64 via = shifted_rep_count(img.target, img.b, budget);
        if (via != direct)
            return fail("bijection", "t=" + std::to_string(t) + ": forward counts " +
                                         std::to_string(direct) + " vs " + std::to_string(via));

        // Counts must not depend on the residue choice.
        Vec y2 = *y;
        for (int j = 0; j < n; ++j)
            y2 = add(y2, mul_scalar(img.lattices.kernel_basis.col(j), kmult(rng)));
        ShiftedImage img2 = to_shifted(f, a, cond, y2);
        if (shifted_rep_count(img2.target, img2.b, budget) != direct)
            return fail("bijection", "t=" + std::to_string(t) + ": count depends on residue choice");
    }

    // The built-in instances, across their progressions.
    for (const auto& inst : paper_instances()) {
        for (i64 n = 1; n <= 5; ++n) {
            i64 a = inst.prog.value(n);
            ShiftedImage img = to_shifted(inst.form, a, inst.cond);
            if (shifted_rep_count(img.target, img.b, budget) !=
                congruence_rep_count(inst.form, a, inst.cond, budget))
                return fail("bijection", inst.label + ": forward count mismatch at n=" + std::to_string(n));
        }
    }

    // Converse: recover a congruence count from a shifted target.
    std::uniform_int_distribution<i64> z_entry(-5, 5);
    std::uniform_int_distribution<i64> a2_pick(-50, 200);
    for (i64 t = 0; t < (instances + 1) / 2; ++t) {
        int n = dim_pick(rng);
        ShiftedTarget target{random_pd_form(rng, n), Vec(n)};
        for (auto& e : target.shift) e = z_entry(rng);
        i64 a = a2_pick(rng);
        i64 direct = shifted_rep_count(target, a, budget);
        CongruencePreimage pre = from_shifted(target, a);
        if (congruence_rep_count(pre.form, pre.a, pre.cond, budget) != direct)
            return fail("bijection", "converse t=" + std::to_string(t) + ": count mismatch");
    }

    // Pointwise round trip on an instance with visible solutions.
    {
        const PaperInstance& inst = paper_instance("cor34i");
        i64 a = 9;
        ShiftedImage img = to_shifted(inst.form, a, inst.cond);
        const Mat& u = img.lattices.kernel_basis;
        const Vec& y = img.lattices.residue_y;
        std::vector<Vec> images;
        for (const Vec& x : rep_list(inst.form, a, budget)) {
            if (!satisfies(inst.cond, x)) continue;
            std::vector<Rat> c = solve_rational(u, sub(x, y));
            Vec v(c.size());
            for (size_t j = 0; j < c.size(); ++j) v[j] = c[j].as_int();
            if (add(mul(u, v), y) != x)
                return fail("bijection", "round trip is not the identity");
            images.push_back(v);
        }
        std::vector<Vec> shifted = shifted_rep_list(img.target, img.b, budget);
        std::sort(images.begin(), images.end());
        std::sort(shifted.begin(), shifted.end());
        if (images != shifted) return fail("bijection", "solution sets do not correspond");
    }

    return pass("bijection");
}

SuiteResult suite_instances(i64, EnumBudget* budget) {
    CheckReport structure = instance_structure_check(budget);
    if (!structure.ok) return fail("instances", structure.detail);
    CheckReport factors = factor_identities_check(200, budget);
    if (!factors.ok) return fail("instances", factors.detail);
    return pass("instances");
}

SuiteResult run_vanishing_group(const std::string& name, const std::vector<std::string>& labels,
                                i64 n_max, EnumBudget* budget) {
    for (const auto& label : labels) {
        CheckReport rep = check_vanishing_iff(label, n_max, budget);
        if (!rep.ok) return fail(name, rep.detail);
    }
    return pass(name);
}

SuiteResult suite_cor34(i64 n_max, EnumBudget* budget) {
    return run_vanishing_group("cor34", {"cor34i", "cor34ii", "cor34iii"}, n_max, budget);
}

SuiteResult suite_cor36(i64 n_max, EnumBudget* budget) {
    return run_vanishing_group("cor36", {"cor36i", "cor36ii", "cor36iii"}, n_max, budget);
}

SuiteResult suite_closedforms(i64 n_max, EnumBudget* budget) {
    for (const std::string& label : closed_form_cases()) {
        const PaperInstance& inst = paper_instance(closed_form_instance(label));
        i64 amax = closed_form_target(label, n_max);
        std::vector<i64> counts = congruence_count_table(inst.form, inst.cond, amax, budget);
        int base_index = closed_form_base_index(label);
        QuadForm base_form = base_index == 2 ? diagonal_form({1, 1, 2}) : diagonal_form({1, 1, 1});
        ThetaSeries base = shared_cache().get(base_form, closed_form_base_arg(label, n_max), budget);
        for (i64 n = 0; n <= n_max; ++n) {
            i64 expected = closed_form_value_with_base(
                label, n, base.counts[static_cast<size_t>(closed_form_base_arg(label, n))]);
            i64 actual = counts[static_cast<size_t>(closed_form_target(label, n))];
            if (expected != actual)
                return fail("closedforms", label + ": n=" + std::to_string(n) + " formula " +
                                               std::to_string(expected) + " != count " +
                                               std::to_string(actual));
        }
    }
    return pass("closedforms");
}

SuiteResult suite_lattice(i64, EnumBudget* budget) {
    if (aut_order(diagonal_form({1, 1, 1}), budget) != 48)
        return fail("lattice", "isometry group of <1,1,1> has wrong order");
    if (aut_order(spinor_pair(3).lattice, budget) != 8 ||
        aut_order(spinor_pair(3).partner, budget) != 8)
        return fail("lattice", "pair-3 isometry group orders are not both 8");

    // Odd primes away from the determinant fix the form.
    std::mt19937_64 rng(kSeed + 1);
    const i64 primes[5] = {3, 5, 7, 11, 13};
    std::uniform_int_distribution<int> p_pick(0, 4);
    for (int t = 0; t < 50; ++t) {
        QuadForm f = random_pd_form(rng, 3);
        i64 p = primes[p_pick(rng)];
        if (det(f.gram) % p == 0) { --t; continue; }
        WatsonStep step = watson_transform(f, p);
        if (!is_isometric(step.output, f, budget))
            return fail("lattice", "transform at p=" + std::to_string(p) +
                                       " moved a p-unimodular form: " + to_string(f));
        if (step.scale_divisor != p * p)
            return fail("lattice", "unexpected scale divisor at unimodular prime");
    }

    // The long diagonal chain lands in the two-lattice bottleneck.
    {
        QuadForm start = diagonal_form({1, 2, 131072});  // 2^17
        auto chain = watson_chain(start, 2, 30, RescaleMode::PowerOfP, budget);
        QuadForm stop1 = diagonal_form({1, 1, 32});
        QuadForm stop2 = diagonal_form({1, 2, 32});
        bool hit = false;
        for (const auto& step : chain)
            hit = hit || is_isometric(step.output, stop1, budget) ||
                  is_isometric(step.output, stop2, budget);
        if (!hit) return fail("lattice", "chain from <1,2,2^17> missed both bottleneck forms");
    }

    // Normal-form reconstruction identities.
    std::uniform_int_distribution<int> dims(1, 6);
    std::uniform_int_distribution<i64> entries(-50, 50);
    for (int t = 0; t < 500; ++t) {
        int m = dims(rng), n = dims(rng);
        Mat a(m, n);
        for (auto& e : a.a) e = entries(rng);
        SnfResult s = snf(a);
        if (mul(mul(s.u, a), s.v) != s.d) return fail("lattice", "smith reconstruction failed");
        i128 du = det(s.u), dv = det(s.v);
        if ((du != 1 && du != -1) || (dv != 1 && dv != -1))
            return fail("lattice", "smith transforms are not unimodular");
        i64 prev = 0;
        for (int i = 0; i < std::min(m, n); ++i) {
            i64 d = s.d(i, i);
            if (d < 0 || (prev != 0 && d != 0 && d % prev != 0) || (prev == 0 && i > 0 && d != 0))
                return fail("lattice", "invariant factor chain violated");
            prev = d == 0 ? prev : d;
        }
        HnfResult h = hnf(a);
        if (mul(a, h.transform) != h.hnf) return fail("lattice", "hermite reconstruction failed");
        i128 dt = det(h.transform);
        if (dt != 1 && dt != -1) return fail("lattice", "hermite transform is not unimodular");
    }
    return pass("lattice");
}

// One box scan per form: the k-level boxes are nested, so scanning the
// outermost box and bucketing by value reproduces every per-k scan.
std::vector<i64> naive_box_histogram(const QuadForm& f, i64 kmax) {
    int n = f.dim();
    Mat adj = adjugate(f.gram);
    i128 d = det(f.gram);
    std::vector<i64> bound(n);
    for (int i = 0; i < n; ++i)
        bound[i] = narrow64(isqrt(mul128(kmax, adj(i, i)) / d));
    std::vector<i64> buckets(static_cast<size_t>(kmax) + 1, 0);
    Vec x(n, 0);
    std::function<void(int)> walk = [&](int i) {
        if (i == n) {
            i64 q = evaluate(f, x);
            if (q <= kmax) ++buckets[static_cast<size_t>(q)];
            return;
        }
        for (i64 v = -bound[i]; v <= bound[i]; ++v) {
            x[i] = v;
            walk(i + 1);
        }
    };
    walk(0);
    return buckets;
}

SuiteResult suite_oracle(i64 kmax, EnumBudget* budget) {
    for (const QuadForm& f : builtin_forms()) {
        std::vector<i64> slow = naive_box_histogram(f, kmax);
        for (i64 k = 0; k <= kmax; ++k) {
            i64 fast = rep_count(f, k, budget);
            if (fast != slow[static_cast<size_t>(k)])
                return fail("oracle", to_string(f) + " at k=" + std::to_string(k) + ": " +
                                          std::to_string(fast) + " != box scan " +
                                          std::to_string(slow[static_cast<size_t>(k)]));
        }
    }
    return pass("oracle");
}

struct SuiteEntry {
    SuiteSpec spec;
    std::function<SuiteResult(i64, EnumBudget*)> fn;
};

const std::vector<SuiteEntry>& registry() {
    static const std::vector<SuiteEntry> entries = {
        {{"theorem24", "closed representation formulas for the four pairs", 10000}, suite_theorem24},
        {{"table1", "genus class-means against the constant table", 10000}, suite_table1},
        {{"spinordiff", "class difference formula for the third pair", 10000}, suite_spinordiff},
        {{"halving", "the two <1,1,2> / <1,1,1> halving identities", 5000}, suite_halving},
        {{"bijection", "congruence counts vs shifted-polynomial counts", 200}, suite_bijection},
        {{"instances", "printed bases, indices, extended-form classes", 0}, suite_instances},
        {{"cor34", "vanishing criteria, first instance family", 2000}, suite_cor34},
        {{"cor36", "vanishing criteria, second instance family", 2000}, suite_cor36},
        {{"closedforms", "congruence-count closed forms", 2000}, suite_closedforms},
        {{"lattice", "isometry groups, transform chains, normal forms", 0}, suite_lattice},
        {{"oracle", "pruned enumeration against the naive box scan", 200}, suite_oracle},
    };
    return entries;
}

}  // namespace

const std::vector<SuiteSpec>& verify_suites() {
    static const std::vector<SuiteSpec> specs = [] {
        std::vector<SuiteSpec> v;
        for (const auto& e : registry()) v.push_back(e.spec);
        return v;
    }();
    return specs;
}

bool is_verify_suite(const std::string& name) {
    for (const auto& e : registry())
        if (e.spec.name == name) return true;
    return false;
}

SuiteResult run_suite(const std::string& name, std::optional<i64> max_override,
                      EnumBudget* budget) {
    for (const auto& e : registry()) {
        if (e.spec.name != name) continue;
        i64 max_n = max_override.value_or(e.spec.default_max);
        return e.fn(max_n, budget);
    }
    throw NonPositiveError("unknown verify suite: " + name);
}

i64 naive_box_count(const QuadForm& f, i64 k) {
    if (k < 0) return 0;
    int n = f.dim();
    Mat adj = adjugate(f.gram);
    i128 d = det(f.gram);
    std::vector<i64> bound(n);
    for (int i = 0; i < n; ++i)
        bound[i] = narrow64(isqrt(mul128(k, adj(i, i)) / d));
    Vec x(n, 0);
    i64 count = 0;
    std::function<void(int)> walk = [&](int i) {
        if (i == n) {
            if (evaluate(f, x) == k) ++count;
            return;
        }
        for (i64 v = -bound[i]; v <= bound[i]; ++v) {
            x[i] = v;
            walk(i + 1);
        }
    };
    walk(0);
    return count;
}

}  // namespace tqf
