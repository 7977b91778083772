#include "tqf/theta_cache.hpp"

#include <fstream>
#include <sstream>

namespace tqf {

namespace {

std::uint64_t fnv64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

}  // namespace

std::string theta_cache_key(const QuadForm& f, i64 upper) {
    std::ostringstream os;
    os << "dim " << f.dim() << "; gram";
    for (int i = 0; i < f.dim(); ++i)
        for (int j = 0; j < f.dim(); ++j) os << ' ' << f.gram(i, j);
    os << "; upper " << upper;
    return os.str();
}

std::string theta_file_contents(const ThetaSeries& t) {
    std::ostringstream os;
    os << theta_cache_key(t.form, t.upper) << '\n';
    for (i64 k = 0; k <= t.upper; ++k) os << k << ' ' << t.counts[static_cast<size_t>(k)] << '\n';
    return os.str();
}

std::optional<ThetaSeries> parse_theta_file(const std::string& contents) {
    std::istringstream is(contents);
    std::string header;
    if (!std::getline(is, header)) return std::nullopt;

    int dim = 0;
    i64 upper = 0;
    // Header is three "; "-separated groups: dim, gram, upper.
    auto parts_of = [](const std::string& s) {
        std::vector<std::string> parts;
        size_t pos = 0;
        while (pos < s.size()) {
            size_t next = s.find("; ", pos);
            if (next == std::string::npos) {
                parts.push_back(s.substr(pos));
                break;
            }
            parts.push_back(s.substr(pos, next - pos));
            pos = next + 2;
        }
        return parts;
    };
    auto parts = parts_of(header);
    if (parts.size() != 3) return std::nullopt;
    if (parts[0].rfind("dim ", 0) != 0 || parts[1].rfind("gram ", 0) != 0 ||
        parts[2].rfind("upper ", 0) != 0)
        return std::nullopt;
    try {
        dim = std::stoi(parts[0].substr(4));
        upper = std::stoll(parts[2].substr(6));
    } catch (...) {
        return std::nullopt;
    }
    if (dim <= 0 || upper < 0) return std::nullopt;

    Mat gram(dim, dim);
    {
        std::istringstream gs(parts[1].substr(5));
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (!(gs >> gram(i, j))) return std::nullopt;
        i64 extra;
        if (gs >> extra) return std::nullopt;
    }

    ThetaSeries t;
    try {
        t.form = make_form(gram);
    } catch (const Error&) {
        return std::nullopt;
    }
    t.upper = upper;
    t.counts.assign(static_cast<size_t>(upper) + 1, 0);
    for (i64 k = 0; k <= upper; ++k) {
        i64 idx, cnt;
        if (!(is >> idx >> cnt) || idx != k || cnt < 0) return std::nullopt;
        t.counts[static_cast<size_t>(k)] = cnt;
    }
    return t;
}

std::filesystem::path ThetaCache::file_for(const std::string& key) const {
    return *dir_ / ("theta-" + hex64(fnv64(key)) + ".txt");
}

ThetaSeries ThetaCache::get(const QuadForm& f, i64 upper, EnumBudget* budget) {
    const std::string key = theta_cache_key(f, upper);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = mem_.find(key);
        if (it != mem_.end()) return it->second;
    }

    if (dir_) {
        std::error_code ec;
        std::filesystem::create_directories(*dir_, ec);
        std::ifstream in(file_for(key));
        if (in) {
            std::stringstream buf;
            buf << in.rdbuf();
            auto parsed = parse_theta_file(buf.str());
            // Header must match the key exactly (hash collisions are recomputed).
            if (parsed && theta_cache_key(parsed->form, parsed->upper) == key) {
                std::lock_guard<std::mutex> lock(mu_);
                return mem_.emplace(key, *parsed).first->second;
            }
        }
    }

    ThetaSeries computed = theta_series(f, upper, budget);

    if (dir_) {
        auto path = file_for(key);
        auto tmp = path;
        tmp += ".tmp";
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw IoError("cannot write theta cache file " + tmp.string());
        out << theta_file_contents(computed);
        out.close();
        if (!out) throw IoError("short write to theta cache file " + tmp.string());
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec) throw IoError("cannot move theta cache file into place: " + ec.message());
    }

    std::lock_guard<std::mutex> lock(mu_);
    return mem_.emplace(key, std::move(computed)).first->second;
}

}  // namespace tqf
