// Command-line surface: exact representation counts, theta series with a
// file-backed cache, the closed formulas with their enumeration oracle,
// transform chains, and the named verification suites.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tqf/bell.hpp"
#include "tqf/congruence.hpp"
#include "tqf/criteria.hpp"
#include "tqf/isometry.hpp"
#include "tqf/theta_cache.hpp"
#include "tqf/verify.hpp"
#include "tqf/watson.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitIo = 4;

tqf::Vec parse_int_list(const std::string& s, char sep) {
    tqf::Vec out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
        size_t pos = 0;
        long long v = std::stoll(item, &pos);
        if (pos != item.size()) throw tqf::NonPositiveError("bad integer list: " + s);
        out.push_back(v);
    }
    if (out.empty()) throw tqf::NonPositiveError("empty integer list");
    return out;
}

tqf::QuadForm parse_form(const std::string& diag, const std::string& gram) {
    if (diag.empty() == gram.empty())
        throw tqf::NonPositiveError("give exactly one of --diag or --gram");
    if (!diag.empty()) return tqf::diagonal_form(parse_int_list(diag, ','));
    std::vector<tqf::Vec> rows;
    std::string row;
    std::istringstream is(gram);
    while (std::getline(is, row, ';')) rows.push_back(parse_int_list(row, ','));
    return tqf::make_form(tqf::Mat::from_rows(rows));
}

tqf::EnumBudget budget_from_env() {
    tqf::EnumBudget b;
    if (const char* env = std::getenv("TQF_BUDGET")) {
        long long v = std::stoll(env);
        if (v < 1) throw tqf::NonPositiveError("TQF_BUDGET must be positive");
        b.limit = v;
    }
    return b;
}

std::optional<std::string> cache_dir_from(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("TQF_CACHE_DIR")) return std::string(env);
    return std::nullopt;
}

void emit(bool as_json, const json& query, const json& result, const json& oracle,
          const json& match, const std::string& text) {
    if (as_json) {
        json doc;
        doc["query"] = query;
        doc["result"] = result;
        doc["oracle"] = oracle;
        doc["match"] = match;
        std::cout << doc.dump() << "\n";
    } else {
        std::cout << text << "\n";
    }
}

struct Options {
    std::string diag, gram, format = "text", cache_dir, suite, rescale = "ppower";
    long long k = 0, upper = 0, i = 1, p = 2, steps = 1;
    std::optional<long long> max;
    bool json_out() const { return format == "json"; }
};

int cmd_count(const Options& opt) {
    tqf::EnumBudget budget = budget_from_env();
    tqf::QuadForm f = parse_form(opt.diag, opt.gram);
    tqf::i64 r = tqf::rep_count(f, opt.k, &budget);
    emit(opt.json_out(),
         json{{"cmd", "count"}, {"gram", tqf::to_string(f)}, {"k", opt.k}},
         r, nullptr, nullptr, std::to_string(r));
    return kExitOk;
}

int cmd_theta(const Options& opt) {
    tqf::EnumBudget budget = budget_from_env();
    tqf::QuadForm f = parse_form(opt.diag, opt.gram);
    auto dir = cache_dir_from(opt.cache_dir);
    tqf::ThetaSeries t;
    if (dir) {
        tqf::ThetaCache cache{std::filesystem::path(*dir)};
        t = cache.get(f, opt.upper, &budget);
    } else {
        t = tqf::theta_series(f, opt.upper, &budget);
    }
    std::ostringstream os;
    for (size_t i = 0; i < t.counts.size(); ++i) {
        if (i) os << ' ';
        os << t.counts[i];
    }
    emit(opt.json_out(),
         json{{"cmd", "theta"}, {"gram", tqf::to_string(f)}, {"upper", opt.upper}},
         t.counts, nullptr, nullptr, os.str());
    return kExitOk;
}

int cmd_bell(const Options& opt) {
    tqf::EnumBudget budget = budget_from_env();
    if (opt.i < 1 || opt.i > 4) throw tqf::NonPositiveError("--i must be in 1..4");
    tqf::i64 formula = tqf::r_closed_form(static_cast<int>(opt.i), opt.k);
    tqf::i64 oracle = tqf::rep_count(tqf::spinor_pair(static_cast<int>(opt.i)).lattice, opt.k, &budget);
    bool match = formula == oracle;
    std::ostringstream os;
    os << "formula=" << formula << " oracle=" << oracle << " match=" << (match ? "true" : "false");
    emit(opt.json_out(), json{{"cmd", "bell"}, {"i", opt.i}, {"k", opt.k}},
         formula, oracle, match, os.str());
    return match ? kExitOk : kExitCounterexample;
}

int cmd_watson(const Options& opt) {
    tqf::EnumBudget budget = budget_from_env();
    tqf::QuadForm f = parse_form(opt.diag, opt.gram);
    tqf::RescaleMode mode;
    if (opt.rescale == "ppower") {
        mode = tqf::RescaleMode::PowerOfP;
    } else if (opt.rescale == "gcd") {
        mode = tqf::RescaleMode::GlobalGcd;
    } else {
        throw tqf::NonPositiveError("--rescale must be ppower or gcd");
    }
    auto chain = tqf::watson_chain(f, opt.p, opt.steps, mode, &budget);
    bool fixed = !chain.empty() && chain.back().output == chain.back().input;
    if (!chain.empty() && !fixed) {
        auto w = tqf::is_isometric(chain.back().output, chain.back().input, &budget);
        fixed = w.has_value();
    }
    std::ostringstream os;
    json steps = json::array();
    for (size_t i = 0; i < chain.size(); ++i) {
        const auto& st = chain[i];
        os << "step=" << (i + 1) << " gram=" << tqf::to_string(st.output)
           << " scale_divisor=" << st.scale_divisor << "\n";
        steps.push_back(json{{"gram", tqf::to_string(st.output)},
                             {"scale_divisor", st.scale_divisor}});
    }
    os << "fixed_point=" << (fixed ? "true" : "false");
    emit(opt.json_out(),
         json{{"cmd", "watson"}, {"gram", tqf::to_string(f)}, {"p", opt.p}, {"steps", opt.steps}},
         json{{"steps", steps}, {"fixed_point", fixed}}, nullptr, nullptr, os.str());
    return kExitOk;
}

int cmd_verify(const Options& opt) {
    tqf::EnumBudget budget = budget_from_env();
    if (!tqf::is_verify_suite(opt.suite)) {
        std::cerr << "unknown suite: " << opt.suite << "\nknown suites:";
        for (const auto& s : tqf::verify_suites()) std::cerr << ' ' << s.name;
        std::cerr << "\n";
        return kExitUsage;
    }
    std::optional<tqf::i64> max_n;
    if (opt.max) max_n = *opt.max;
    tqf::SuiteResult res = tqf::run_suite(opt.suite, max_n, &budget);
    std::string text = res.pass ? "PASS" : ("FAIL " + res.detail);
    emit(opt.json_out(), json{{"cmd", "verify"}, {"suite", opt.suite}},
         json{{"status", res.pass ? "PASS" : "FAIL"}, {"detail", res.detail}}, nullptr, res.pass,
         text);
    return res.pass ? kExitOk : kExitCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for ternary quadratic form representation counts"};
    app.require_subcommand(1);
    Options opt;

    auto add_form_flags = [&](CLI::App* sub) {
        sub->add_option("--diag", opt.diag, "diagonal entries a,b,c");
        sub->add_option("--gram", opt.gram, "gram rows r1;r2;r3, entries comma-separated");
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* count = app.add_subcommand("count", "representation count r(k, f)");
    add_form_flags(count);
    count->add_option("--k", opt.k, "value to represent")->required();
    add_format(count);

    CLI::App* theta = app.add_subcommand("theta", "theta series 0..upper, cached");
    add_form_flags(theta);
    theta->add_option("--upper", opt.upper, "series cutoff")->required();
    theta->add_option("--cache-dir", opt.cache_dir, "cache directory (or TQF_CACHE_DIR)");
    add_format(theta);

    CLI::App* bell = app.add_subcommand("bell", "closed formula vs enumeration for pair i");
    bell->add_option("--i", opt.i, "pair index 1..4")->required();
    bell->add_option("--k", opt.k, "value to represent")->required();
    add_format(bell);

    CLI::App* watson = app.add_subcommand("watson", "transform chain at a prime");
    add_form_flags(watson);
    watson->add_option("--p", opt.p, "prime")->required();
    watson->add_option("--steps", opt.steps, "maximum chain length")->required();
    watson->add_option("--rescale", opt.rescale, "ppower (default) or gcd");
    add_format(watson);

    CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
    verify->add_option("--suite", opt.suite, "suite name")->required();
    long long max_flag = -1;
    verify->add_option("--max", max_flag, "range override");
    add_format(verify);

    try {
        app.parse(argc, argv);
        if (max_flag >= 0) opt.max = max_flag;
        if (count->parsed()) return cmd_count(opt);
        if (theta->parsed()) return cmd_theta(opt);
        if (bell->parsed()) return cmd_bell(opt);
        if (watson->parsed()) return cmd_watson(opt);
        if (verify->parsed()) return cmd_verify(opt);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const tqf::BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const tqf::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
