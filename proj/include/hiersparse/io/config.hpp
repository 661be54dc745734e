#pragma once
#include <hiersparse/em/problem.hpp>
#include <hiersparse/io/csv.hpp>
#include <hiersparse/sim/curves.hpp>
#include <hiersparse/sim/presets.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace hiersparse::io {

using Json = nlohmann::json;

/// Semantically invalid configuration; the message names the offending JSON path.
class ConfigInputError : public Error {
public:
    ConfigInputError(const std::string& file, const std::string& pointer, const std::string& what)
        : Error(file + ": " + (pointer.empty() ? std::string("/") : pointer) + ": " + what)
    {
    }
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte)
{
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

/// Typed access into a JSON object, tracking the path for diagnostics.
class Node {
public:
    Node(const Json& j, std::string file, std::string pointer = "")
        : j_(&j), file_(std::move(file)), ptr_(std::move(pointer))
    {
    }

    const Json& json() const { return *j_; }
    const std::string& pointer() const { return ptr_; }

    [[noreturn]] void fail(const std::string& what) const { throw ConfigInputError(file_, ptr_, what); }

    bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

    Node at(const std::string& key) const
    {
        if (!j_->is_object()) fail("expected an object");
        auto it = j_->find(key);
        if (it == j_->end()) fail("missing key '" + key + "'");
        return Node(*it, file_, ptr_ + "/" + key);
    }

    Node at(std::size_t k) const
    {
        if (!j_->is_array() || k >= j_->size()) fail("index " + std::to_string(k) + " out of range");
        return Node((*j_)[k], file_, ptr_ + "/" + std::to_string(k));
    }

    std::size_t size() const
    {
        if (!j_->is_array()) fail("expected an array");
        return j_->size();
    }

    double number() const
    {
        if (!j_->is_number()) fail("expected a number");
        return j_->get<double>();
    }

    double number(const std::string& key, double fallback) const { return has(key) ? at(key).number() : fallback; }

    long long integer() const
    {
        if (!j_->is_number_integer() && !j_->is_number_unsigned()) fail("expected an integer");
        return j_->get<long long>();
    }

    long long integer(const std::string& key, long long fallback) const
    {
        return has(key) ? at(key).integer() : fallback;
    }

    std::uint64_t unsigned_integer() const
    {
        if (!j_->is_number_unsigned() && !(j_->is_number_integer() && j_->get<long long>() >= 0))
            fail("expected a nonnegative integer");
        return j_->get<std::uint64_t>();
    }

    bool boolean(const std::string& key, bool fallback) const
    {
        if (!has(key)) return fallback;
        const Node n = at(key);
        if (!n.json().is_boolean()) n.fail("expected true or false");
        return n.json().get<bool>();
    }

    std::string string() const
    {
        if (!j_->is_string()) fail("expected a string");
        return j_->get<std::string>();
    }

    std::string string(const std::string& key, const std::string& fallback) const
    {
        return has(key) ? at(key).string() : fallback;
    }

    std::vector<double> numbers() const
    {
        std::vector<double> out;
        for (std::size_t k = 0; k < size(); ++k) out.push_back(at(k).number());
        return out;
    }

    /// Runs `f`, re-throwing toolkit errors as diagnostics anchored at this node.
    template <class F>
    auto guard(F&& f) const -> decltype(f())
    {
        try {
            return f();
        } catch (const ConfigInputError&) {
            throw;
        } catch (const InputError&) {
            throw;
        } catch (const Error& e) {
            fail(e.what());
        }
    }

private:
    const Json* j_;
    std::string file_;
    std::string ptr_;
};

} // namespace detail

/// Parses JSON text, reporting syntax errors as path:line:column.
inline Json parse_json(const std::string& text, const std::string& path)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        auto [line, col] = detail::line_column(text, byte);
        std::string what = e.what();
        if (auto p = what.find("; last read"); p != std::string::npos) what = what.substr(p + 2);
        else if (auto q = what.find("] "); q != std::string::npos) what = what.substr(q + 2);
        throw InputError(path, line, col, "invalid JSON: " + what);
    }
}

inline Json read_json(const std::string& path) { return parse_json(read_text_file(path), path); }

/// 64-bit FNV-1a of the bytes of `s`, as 16 lowercase hex digits.
inline std::string fnv1a_hex(const std::string& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Digest of a resolved configuration: FNV-1a over its compact, key-sorted serialization.
inline std::string config_digest(const Json& resolved) { return fnv1a_hex(resolved.dump()); }

// ---------------------------------------------------------------------------
// fit

struct FitConfig {
    std::string model = "linear";
    std::string variant = "per_coordinate";
    double a = 1.0;
    double b = 1.0;
    double q = 1.0;
    /// Raw override keys ("j" or "i,j", 1-based) with their JSON paths.
    std::vector<std::tuple<std::string, double, double, std::string>> overrides;
    std::vector<std::vector<Index>> groups;
    std::optional<NoiseModel> noise;
    bool jeffreys = false;
    bool center = true;
    StartPoint start = StartPoint::Auto;
    SolverOptions solver;
    std::string file;
    Json resolved;
};

namespace detail {

inline SolverOptions parse_solver(const Node& root)
{
    SolverOptions s;
    if (!root.has("solver")) return s;
    const Node n = root.at("solver");
    s.tol = n.number("tol", s.tol);
    if (!(s.tol > 0.0)) n.at("tol").fail("tol must be positive");
    s.max_iter = static_cast<int>(n.integer("max_iter", s.max_iter));
    if (s.max_iter < 1) n.at("max_iter").fail("max_iter must be at least 1");
    s.outer_max_iter = static_cast<int>(n.integer("outer_max_iter", s.outer_max_iter));
    if (s.outer_max_iter < 1) n.at("outer_max_iter").fail("outer_max_iter must be at least 1");
    return s;
}

inline Json solver_json(const SolverOptions& s)
{
    return Json{{"tol", s.tol}, {"max_iter", s.max_iter}, {"outer_max_iter", s.outer_max_iter}};
}

inline std::vector<std::vector<Index>> parse_groups(const Node& n)
{
    std::vector<std::vector<Index>> groups;
    for (std::size_t g = 0; g < n.size(); ++g) {
        const Node members = n.at(g);
        std::vector<Index> idx;
        for (std::size_t k = 0; k < members.size(); ++k) {
            const long long v = members.at(k).integer();
            if (v < 1) members.at(k).fail("group members are 1-based indices");
            idx.push_back(static_cast<Index>(v));
        }
        if (idx.empty()) members.fail("empty group");
        groups.push_back(std::move(idx));
    }
    return groups;
}

inline NoiseModel parse_noise(const Node& n)
{
    if (n.json().is_number()) {
        const double v = n.number();
        if (!(v > 0.0)) n.fail("noise variance must be positive");
        return NoiseModel::fixed(v);
    }
    const std::string type = n.string("type", n.has("variance") ? "fixed" : "inverse_gamma");
    if (type == "fixed") {
        const double v = n.at("variance").number();
        if (!(v > 0.0)) n.at("variance").fail("noise variance must be positive");
        return NoiseModel::fixed(v);
    }
    if (type == "inverse_gamma") {
        const double a = n.at("a").number();
        const double b = n.at("b").number();
        if (!(a > 0.0)) n.at("a").fail("a must be positive");
        if (!(b > 0.0)) n.at("b").fail("b must be positive");
        return NoiseModel::inverse_gamma(a, b);
    }
    n.at("type").fail("unknown noise type '" + type + "' (expected fixed or inverse_gamma)");
}

inline Json noise_json(const NoiseModel& m)
{
    if (m.is_fixed()) return Json{{"type", "fixed"}, {"variance", m.as_fixed().variance}};
    return Json{{"type", "inverse_gamma"}, {"a", m.as_inverse_gamma().a}, {"b", m.as_inverse_gamma().b}};
}

inline std::string default_variant(const std::string& model)
{
    if (model == "group") return "grouped";
    if (model == "shared") return "shared";
    if (model == "precision") return "matrix";
    return "per_coordinate";
}

} // namespace detail

/**
 * Fit configuration:
 *   {"model": "linear" | "logistic" | "group" | "shared" | "precision",
 *    "prior": {"variant", "a", "b", "q", "overrides": {"2": [a, b], ...}, "groups": [[1, 2], ...]},
 *    "noise": variance | {"type": "fixed", "variance"} | {"type": "inverse_gamma", "a", "b"},
 *    "jeffreys": bool, "center": bool, "start": "auto" | "zero" | "least_squares",
 *    "solver": {"tol", "max_iter", "outer_max_iter"}}
 * Override keys are 1-based coordinates (groups for grouped priors, "i,j" for matrix priors).
 */
inline FitConfig parse_fit_config(const Json& j, const std::string& file)
{
    const detail::Node root(j, file);
    if (!j.is_object()) root.fail("config must be a JSON object");
    FitConfig c;
    c.file = file;
    c.model = root.string("model", "linear");
    if (c.model != "linear" && c.model != "logistic" && c.model != "group" && c.model != "shared" &&
        c.model != "precision")
        root.at("model").fail("unknown model '" + c.model + "' (expected linear, logistic, group, shared or precision)");

    const detail::Node prior = root.at("prior");
    c.variant = prior.string("variant", detail::default_variant(c.model));
    if (c.variant != detail::default_variant(c.model))
        prior.at("variant").fail("model '" + c.model + "' needs prior variant '" + detail::default_variant(c.model) + "'");
    c.a = prior.at("a").number();
    c.b = prior.at("b").number();
    c.q = prior.number("q", 1.0);
    if (!(c.a > 0.0)) prior.at("a").fail("a must be positive");
    if (!(c.b > 0.0)) prior.at("b").fail("b must be positive");
    if (c.q != 1.0 && c.q != 2.0) prior.at("q").fail("q must be 1 or 2");
    if (prior.has("overrides")) {
        const detail::Node ov = prior.at("overrides");
        if (!ov.json().is_object()) ov.fail("overrides must map indices to [a, b]");
        for (auto it = ov.json().begin(); it != ov.json().end(); ++it) {
            const detail::Node pair = ov.at(it.key());
            if (pair.size() != 2) pair.fail("override must be [a, b]");
            const double a = pair.at(0).number();
            const double b = pair.at(1).number();
            if (!(a > 0.0)) pair.at(0).fail("a must be positive");
            if (!(b > 0.0)) pair.at(1).fail("b must be positive");
            c.overrides.emplace_back(it.key(), a, b, pair.pointer());
        }
    }
    if (prior.has("groups")) c.groups = detail::parse_groups(prior.at("groups"));
    if ((c.model == "group" || c.model == "shared") && c.groups.empty())
        prior.fail("model '" + c.model + "' needs prior.groups");

    if (root.has("noise")) {
        if (c.model == "logistic" || c.model == "precision") root.at("noise").fail("noise applies to linear models only");
        c.noise = detail::parse_noise(root.at("noise"));
    } else if (c.model != "logistic" && c.model != "precision") {
        c.noise = NoiseModel::fixed(1.0);
    }
    c.jeffreys = root.boolean("jeffreys", false);
    if (c.jeffreys && c.model != "logistic") root.at("jeffreys").fail("jeffreys applies to the logistic model only");
    c.center = root.boolean("center", true);
    const std::string start = root.string("start", "auto");
    if (start == "auto") c.start = StartPoint::Auto;
    else if (start == "zero") c.start = StartPoint::Zero;
    else if (start == "least_squares") c.start = StartPoint::LeastSquares;
    else root.at("start").fail("unknown start '" + start + "' (expected auto, zero or least_squares)");
    c.solver = detail::parse_solver(root);

    Json prior_json{{"variant", c.variant}, {"a", c.a}, {"b", c.b}, {"q", c.q}};
    Json ov = Json::object();
    for (const auto& [key, a, b, ptr] : c.overrides) ov[key] = Json::array({a, b});
    prior_json["overrides"] = ov;
    prior_json["groups"] = c.groups;
    c.resolved = Json{{"command", "fit"},     {"model", c.model},     {"prior", prior_json},
                      {"jeffreys", c.jeffreys}, {"center", c.center}, {"start", start},
                      {"solver", detail::solver_json(c.solver)}};
    if (c.noise) c.resolved["noise"] = detail::noise_json(*c.noise);
    return c;
}

namespace detail {

inline Index parse_index_key(const std::string& key, const std::string& file, const std::string& ptr, Index limit,
                             const char* what)
{
    Index v = 0;
    auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), v);
    if (ec != std::errc() || p != key.data() + key.size())
        throw ConfigInputError(file, ptr, "override key '" + key + "' is not a 1-based index");
    if (v < 1 || v > limit)
        throw ConfigInputError(file, ptr,
                               "override index " + key + " outside 1.." + std::to_string(limit) + " (" + what + ")");
    return v - 1;
}

} // namespace detail

/// Resolves a fit config against loaded data. The first CSV column is the response
/// except for the precision model, where every column is a variable.
inline FitProblem build_fit_problem(const FitConfig& c, const CsvTable& table, const std::string& data_path)
{
    const Index cols = table.values.cols();
    const Index n = table.values.rows();
    const detail::Node root(c.resolved, c.file);

    if (c.model == "precision") {
        const Index p = cols;
        HyperParams h{c.a, c.b, {}};
        for (const auto& [key, a, b, ptr] : c.overrides) {
            const auto comma = key.find(',');
            if (comma == std::string::npos)
                throw ConfigInputError(c.file, ptr, "matrix override keys look like \"i,j\"");
            const Index i = detail::parse_index_key(key.substr(0, comma), c.file, ptr, p, "matrix order");
            const Index jj = detail::parse_index_key(key.substr(comma + 1), c.file, ptr, p, "matrix order");
            h.overrides[packed_upper_index(i, jj, p)] = {a, b};
        }
        if (!(n > p + 1))
            throw InputError(data_path, 1, 1,
                             "precision model needs more than p + 1 = " + std::to_string(p + 1) + " rows, found " +
                                 std::to_string(n));
        const Matrix S = (table.values.transpose() * table.values) / static_cast<double>(n);
        FitProblem fp = root.guard([&] { return FitProblem::precision(S, n, PriorSpec::matrix(p, h)); });
        return fp;
    }

    if (cols < 2) throw InputError(data_path, 1, 1, "need a response column and at least one covariate");
    const Index p = cols - 1;
    const Vector y = table.values.col(0);
    const Matrix X = table.values.rightCols(p);

    std::optional<GroupStructure> groups;
    if (!c.groups.empty()) {
        std::vector<std::vector<Index>> zero_based = c.groups;
        for (auto& g : zero_based)
            for (auto& j : g) --j;
        groups = detail::Node(c.resolved, c.file, "/prior/groups").guard([&] {
            return GroupStructure::from_partition(zero_based, p);
        });
    }
    const Index slots = (c.model == "group" || c.model == "shared") ? groups->num_groups() : p;
    HyperParams h{c.a, c.b, {}};
    for (const auto& [key, a, b, ptr] : c.overrides)
        h.overrides[detail::parse_index_key(key, c.file, ptr, slots,
                                            slots == p ? "number of covariates" : "number of groups")] = {a, b};

    return root.guard([&]() -> FitProblem {
        FitProblem fp = [&] {
            if (c.model == "logistic") {
                Dataset d = detail::Node(c.resolved, data_path, "column 1").guard([&] { return Dataset::logistic(X, y); });
                return FitProblem::logistic(std::move(d), PriorSpec::per_coordinate(p, h, c.q), c.jeffreys);
            }
            Dataset d = Dataset::linear(X, y, c.center);
            if (c.model == "group") return FitProblem::group_linear(std::move(d), PriorSpec::grouped(*groups, h), *c.noise);
            if (c.model == "shared")
                return FitProblem::shared_linear(std::move(d), PriorSpec::shared(*groups, h, c.q), *c.noise);
            return FitProblem::linear(std::move(d), PriorSpec::per_coordinate(p, h, c.q), *c.noise);
        }();
        fp.start = c.start;
        return fp;
    });
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateConfig {
    std::string preset;
    std::vector<sim::ExperimentConfig> rows;
    Json resolved;
};

namespace detail {

inline std::string available_presets()
{
    std::string s;
    for (const auto& p : sim::presets()) s += (s.empty() ? "" : ", ") + p.name;
    return s;
}

inline Vector parse_vector(const Node& n)
{
    const std::vector<double> v = n.numbers();
    return Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()));
}

inline Matrix parse_matrix(const Node& n)
{
    const std::size_t rows = n.size();
    if (rows == 0) n.fail("matrix is empty");
    Matrix m(static_cast<Index>(rows), static_cast<Index>(n.at(0).size()));
    for (std::size_t i = 0; i < rows; ++i) {
        const Node row = n.at(i);
        if (row.size() != static_cast<std::size_t>(m.cols())) row.fail("ragged matrix row");
        for (std::size_t k = 0; k < row.size(); ++k)
            m(static_cast<Index>(i), static_cast<Index>(k)) = row.at(k).number();
    }
    return m;
}

inline sim::ExperimentConfig parse_experiment(const Node& n)
{
    sim::ExperimentConfig c;
    const std::string model = n.string("model", "linear");
    if (model == "linear") c.model = sim::ModelClass::Linear;
    else if (model == "logistic") c.model = sim::ModelClass::Logistic;
    else if (model == "group") c.model = sim::ModelClass::Group;
    else if (model == "precision") c.model = sim::ModelClass::Precision;
    else n.at("model").fail("unknown model '" + model + "'");

    if (c.model == sim::ModelClass::Precision) c.omega_true = parse_matrix(n.at("omega"));
    else c.beta_true = parse_vector(n.at("beta"));
    c.n = static_cast<Index>(n.at("n").integer());
    c.rho = n.number("rho", 0.5);
    if (n.has("noise")) {
        const Node z = n.at("noise");
        if (z.has("delta")) {
            c.noise.delta = z.at("delta").number();
            if (!(c.noise.delta >= 0.0)) z.at("delta").fail("delta must be nonnegative");
        } else {
            c.noise.random = true;
            c.noise.a = z.at("a").number();
            c.noise.b = z.at("b").number();
            if (!(c.noise.a > 0.0 && c.noise.b > 0.0)) z.fail("inverse-gamma noise parameters must be positive");
        }
    }
    const std::string method = n.string("method", "hierarchical");
    if (method == "hierarchical") {
        c.method = sim::Method::Hierarchical;
        c.hyper.a = n.at("a").number();
        c.hyper.b = n.at("b").number();
        if (!(c.hyper.a > 0.0)) n.at("a").fail("a must be positive");
        if (!(c.hyper.b > 0.0)) n.at("b").fail("b must be positive");
        if (n.has("overrides")) {
            const Node ov = n.at("overrides");
            for (auto it = ov.json().begin(); it != ov.json().end(); ++it) {
                const Node pair = ov.at(it.key());
                const Index slot = parse_index_key(it.key(), "", pair.pointer(), std::numeric_limits<Index>::max(), "");
                if (pair.size() != 2) pair.fail("override must be [a, b]");
                c.hyper.overrides[slot] = {pair.at(0).number(), pair.at(1).number()};
            }
        }
    } else if (method == "fixed_scale") {
        c.method = sim::Method::FixedScale;
        c.tau = n.at("tau").number();
        if (n.has("tau_overrides")) {
            const Node ov = n.at("tau_overrides");
            for (auto it = ov.json().begin(); it != ov.json().end(); ++it) {
                const Node t = ov.at(it.key());
                c.tau_overrides[parse_index_key(it.key(), "", t.pointer(), std::numeric_limits<Index>::max(), "")] =
                    t.number();
            }
        }
    } else {
        n.at("method").fail("unknown method '" + method + "' (expected hierarchical or fixed_scale)");
    }
    if (n.has("groups")) {
        std::vector<std::vector<Index>> g = parse_groups(n.at("groups"));
        for (auto& grp : g)
            for (auto& j : grp) --j;
        c.groups = n.at("groups").guard([&] { return GroupStructure::from_partition(g, c.beta_true.size()); });
    }
    c.jeffreys = n.boolean("jeffreys", false);
    c.setting = n.string("setting", method == "hierarchical" ? "hierarchical" : "fixed_scale");
    n.guard([&] {
        c.validate();
        return 0;
    });
    return c;
}

} // namespace detail

/**
 * Simulation configuration: {"preset": name} or {"experiments": [ {...}, ... ]},
 * plus optional "replications", "seed" and "solver". Command-line --reps and
 * --seed replace the file's values.
 */
inline SimulateConfig parse_simulate_config(const Json& j, const std::string& file, std::optional<int> reps,
                                            std::optional<std::uint64_t> seed)
{
    const detail::Node root(j, file);
    if (!j.is_object()) root.fail("config must be a JSON object");
    SimulateConfig out;
    if (root.has("preset")) {
        out.preset = root.at("preset").string();
        auto p = sim::find_preset(out.preset);
        if (!p) root.at("preset").fail("unknown preset '" + out.preset + "'; available: " + detail::available_presets());
        out.rows = p->rows;
    } else if (root.has("experiments")) {
        const detail::Node list = root.at("experiments");
        for (std::size_t k = 0; k < list.size(); ++k) out.rows.push_back(detail::parse_experiment(list.at(k)));
        if (out.rows.empty()) list.fail("no experiments");
    } else {
        root.fail("config needs 'preset' or 'experiments'");
    }

    int R = out.rows.front().replications;
    if (root.has("replications")) R = static_cast<int>(root.at("replications").integer());
    if (reps) R = *reps;
    if (R < 1) root.fail("replications must be at least 1");
    std::uint64_t S = out.rows.front().seed;
    if (root.has("seed")) S = root.at("seed").unsigned_integer();
    if (seed) S = *seed;
    const SolverOptions solver = detail::parse_solver(root);
    for (auto& r : out.rows) {
        r.replications = R;
        r.seed = S;
        r.solver = solver;
    }

    out.resolved = j;
    out.resolved["command"] = "simulate";
    out.resolved["replications"] = R;
    out.resolved["seed"] = S;
    out.resolved["solver"] = detail::solver_json(solver);
    return out;
}

// ---------------------------------------------------------------------------
// curves

struct CurvesConfig {
    std::string kind;
    sim::PenaltySettings penalty;
    std::vector<double> grid1;
    std::vector<double> grid2;
    Json resolved;
};

namespace detail {

inline std::vector<double> parse_grid(const Node& n)
{
    if (n.json().is_array()) return n.numbers();
    const double from = n.at("from").number();
    const double to = n.at("to").number();
    const double step = n.at("step").number();
    if (!(step > 0.0)) n.at("step").fail("step must be positive");
    std::vector<double> g;
    if (to < from) return g;
    const auto count = static_cast<long long>(std::floor((to - from) / step + 1e-9)) + 1;
    if (count > 10'000'000) n.fail("grid has too many points");
    for (long long k = 0; k < count; ++k) g.push_back(from + static_cast<double>(k) * step);
    return g;
}

} // namespace detail

/**
 * Curves configuration:
 *   {"kind": "threshold" | "contour", "family": "lasso" | "hal" | "har",
 *    "w": lasso weight | "tau": lasso scale, "a", "b",
 *    "grid": [values] | {"from", "to", "step"}, "grid2": optional second axis for contours}
 */
inline CurvesConfig parse_curves_config(const Json& j, const std::string& file, const std::string& kind_override = "")
{
    const detail::Node root(j, file);
    if (!j.is_object()) root.fail("config must be a JSON object");
    CurvesConfig c;
    c.kind = kind_override.empty() ? root.at("kind").string() : kind_override;
    if (c.kind != "threshold" && c.kind != "contour")
        (root.has("kind") ? root.at("kind") : root).fail("unknown curve kind '" + c.kind + "' (expected threshold or contour)");
    const std::string family = root.at("family").string();
    if (family == "lasso") {
        c.penalty.family = sim::PenaltyFamily::Lasso;
        if (root.has("tau")) {
            const double tau = root.at("tau").number();
            if (!(tau > 0.0)) root.at("tau").fail("tau must be positive");
            c.penalty.w = 1.0 / tau;
        } else {
            c.penalty.w = root.at("w").number();
            if (!(c.penalty.w >= 0.0)) root.at("w").fail("w must be nonnegative");
        }
    } else if (family == "hal" || family == "har") {
        c.penalty.family = family == "hal" ? sim::PenaltyFamily::Hal : sim::PenaltyFamily::Har;
        c.penalty.a = root.at("a").number();
        c.penalty.b = root.at("b").number();
        if (!(c.penalty.a > 0.0)) root.at("a").fail("a must be positive");
        if (!(c.penalty.b > 0.0)) root.at("b").fail("b must be positive");
    } else {
        root.at("family").fail("unknown prior family '" + family + "' (expected lasso, hal or har)");
    }
    c.grid1 = detail::parse_grid(root.at("grid"));
    c.grid2 = root.has("grid2") ? detail::parse_grid(root.at("grid2")) : c.grid1;
    if (c.grid1.empty() || (c.kind == "contour" && c.grid2.empty())) root.at("grid").fail("grid has no points");

    c.resolved = Json{{"command", "curves"}, {"kind", c.kind}, {"family", family},
                      {"w", c.penalty.w},    {"a", c.penalty.a}, {"b", c.penalty.b},
                      {"grid", c.grid1}};
    if (c.kind == "contour") c.resolved["grid2"] = c.grid2;
    return c;
}

} // namespace hiersparse::io
