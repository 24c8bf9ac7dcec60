#include "hypdelta/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace hypdelta {

ThetaConfig RunConfig::theta_config() const {
    ThetaConfig t;
    t.abs_tol = theta_tol;
    t.precision_bits = precision_bits;
    return t;
}

QuadConfig RunConfig::quad_config() const {
    QuadConfig q;
    q.method = method;
    q.budget = budget;
    q.rel_tol = quad_tol;
    q.seed = seed;
    return q;
}

Json cx_to_json(cx v) { return Json::array({v.real(), v.imag()}); }

Json mat_to_json(const MatC& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(cx_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json vec_to_json(const VecC& v) {
    Json row = Json::array();
    for (int i = 0; i < v.size(); ++i) row.push_back(cx_to_json(v(i)));
    return row;
}

namespace {
cx cx_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw CurveError("complex values must be [re, im] pairs");
    return cx(j[0].get<double>(), j[1].get<double>());
}
}  // namespace

CurveSpec curve_from_json(const Json& j) {
    BuildOptions opt;
    if (j.contains("separability_eps_rel")) opt.separability_eps_rel = j["separability_eps_rel"].get<double>();
    if (j.contains("ordering")) opt.ordering = j["ordering"].get<std::vector<int>>();

    CurveSpec c = [&] {
        if (j.contains("roots")) {
            std::vector<cx> roots;
            for (const auto& e : j["roots"]) roots.push_back(cx_from_json(e));
            return build_curve_from_roots(roots, opt);
        }
        if (j.contains("coefficients")) {
            std::vector<cx> coeffs;
            for (const auto& e : j["coefficients"]) coeffs.push_back(cx_from_json(e));
            return build_curve_from_coefficients(coeffs, opt);
        }
        throw CurveError("curve file needs \"roots\" or \"coefficients\"");
    }();
    if (j.contains("genus") && j["genus"].get<int>() != c.genus())
        throw CurveError("declared genus does not match the polynomial degree");
    return c;
}

CurveSpec curve_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CurveError("cannot open curve file: " + path);
    Json j;
    in >> j;
    return curve_from_json(j);
}

Json curve_to_json(const CurveSpec& c) {
    Json j;
    j["genus"] = c.genus();
    Json roots = Json::array();
    for (cx r : c.roots()) roots.push_back(cx_to_json(r));
    j["roots"] = roots;
    Json coeffs = Json::array();
    for (cx l : c.coefficients()) coeffs.push_back(cx_to_json(l));
    j["lambda"] = coeffs;
    j["ordering"] = c.ordering();
    j["ordering_kind"] = c.ordering_kind();
    j["origin"] = c.origin();
    j["discriminant"] = cx_to_json(c.discriminant());
    return j;
}

Json periods_to_json(const PeriodData& p) {
    Json j;
    j["mu"] = mat_to_json(p.mu);
    j["mu_prime"] = mat_to_json(p.mu_prime);
    j["tau"] = mat_to_json(p.tau);
    j["det_mu"] = cx_to_json(p.det_mu);
    j["det_im_tau"] = p.det_Y;
    j["lambda_min_im_tau"] = p.lambda_min;
    j["tau_symmetry_residual"] = p.tau_symmetry_residual;
    j["hodge_norm"] = p.hodge_norm();
    return j;
}

bool InvariantReport::all_pass() const {
    for (const auto& r : residuals)
        if (!r.pass) return false;
    return true;
}

Json InvariantReport::to_json() const {
    Json j;
    j["schema_version"] = 1;
    j["config"] = config_echo;
    j["curve"] = curve;
    if (!periods.is_null()) j["periods"] = periods;
    if (!invariants.is_null()) j["invariants"] = invariants;
    Json res = Json::array();
    for (const auto& r : residuals) {
        Json e;
        e["name"] = r.name;
        e["value"] = r.value;
        e["tolerance"] = r.tolerance;
        e["pass"] = r.pass;
        if (r.error_estimate > 0.0) e["error_estimate"] = r.error_estimate;
        res.push_back(e);
    }
    j["residuals"] = res;
    if (!diagnostics.is_null()) j["diagnostics"] = diagnostics;
    return j;
}

namespace {
// FNV-1a, enough for content addressing of cache entries
std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}
}  // namespace

std::string periods_cache_key(const CurveSpec& c, const ContourQuadConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "hypdelta-periods-v1|g=" << c.genus() << "|";
    for (cx r : c.roots()) os << r.real() << "," << r.imag() << ";";
    os << "|";
    for (int p : c.ordering()) os << p << ",";
    os << "|" << cfg.cheb_start << "," << cfg.cheb_max << "," << cfg.rel_tol << "," << cfg.tau_symmetry_tol;
    std::ostringstream key;
    key << std::hex << fnv1a(os.str());
    return key.str();
}

std::optional<std::pair<MatC, MatC>> load_periods_cache(const std::string& dir, const std::string& key,
                                                        std::string* warning) {
    namespace fs = std::filesystem;
    fs::path p = fs::path(dir) / ("periods_" + key + ".json");
    if (!fs::exists(p)) return std::nullopt;
    try {
        std::ifstream in(p);
        Json j;
        in >> j;
        if (j.at("key").get<std::string>() != key) throw std::runtime_error("key mismatch");
        auto read_mat = [](const Json& m) {
            int rows = static_cast<int>(m.size());
            int cols = rows ? static_cast<int>(m[0].size()) : 0;
            MatC out(rows, cols);
            for (int i = 0; i < rows; ++i)
                for (int jj = 0; jj < cols; ++jj)
                    out(i, jj) = cx(m[i][jj][0].get<double>(), m[i][jj][1].get<double>());
            return out;
        };
        return std::make_pair(read_mat(j.at("mu")), read_mat(j.at("mu_prime")));
    } catch (const std::exception& e) {
        if (warning) *warning = std::string("corrupt cache entry ignored: ") + e.what();
        return std::nullopt;
    }
}

void store_periods_cache(const std::string& dir, const std::string& key, const PeriodData& data) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    Json j;
    j["key"] = key;
    j["mu"] = mat_to_json(data.mu);
    j["mu_prime"] = mat_to_json(data.mu_prime);
    std::ofstream out(fs::path(dir) / ("periods_" + key + ".json"));
    out << j.dump(1) << "\n";
}

}  // namespace hypdelta
