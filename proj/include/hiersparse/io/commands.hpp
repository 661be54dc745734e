#pragma once
#include <hiersparse/em/fit.hpp>
#include <hiersparse/io/config.hpp>
#include <hiersparse/io/csv.hpp>
#include <hiersparse/sim/curves.hpp>
#include <hiersparse/sim/experiment.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hiersparse::io {

inline constexpr const char* toolkit_version = "0.1.0";

enum ExitCode : int { exit_ok = 0, exit_input = 1, exit_nonconvergence = 2 };

/// 17 significant digits: enough to round-trip any double.
inline std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
    return buf;
}

inline std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError(path, 0, 0, "cannot open file for writing");
    out << content;
    if (!out) throw InputError(path, 0, 0, "write failed");
}

struct RunManifest {
    std::string command;
    std::string digest;
    std::string generator = sim::CounterRng::name;
    std::uint64_t seed = 0;
    std::string version = toolkit_version;
    std::vector<std::string> outputs;
    Json config;

    std::string header() const
    {
        return "# hiersparse " + command + " " + version + "\n# digest: " + digest + "\n# generator: " + generator +
               "\n# seed: " + std::to_string(seed) + "\n";
    }

    std::string to_json() const
    {
        Json j{{"command", command}, {"config_digest", digest}, {"generator", generator}, {"seed", seed},
               {"version", version}, {"outputs", outputs},     {"config", config}};
        return j.dump(2) + "\n";
    }
};

inline RunManifest make_manifest(const std::string& command, const Json& resolved, std::uint64_t seed)
{
    RunManifest m;
    m.command = command;
    m.config = resolved;
    m.digest = config_digest(resolved);
    m.seed = seed;
    return m;
}

/// Runs `body`, turning every failure into a diagnostic on `err` and exit status 1.
template <class F>
int run_command(std::ostream& err, F&& body)
{
    try {
        return body();
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const ConfigInputError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: unexpected failure: " << e.what() << "\n";
    }
    return exit_input;
}

/**
 * Fits one model to a CSV file. Writes `out` (one row per coordinate, or per
 * upper-triangle entry for precision models), `out`.trace.csv and
 * `out`.manifest.json. Returns 0, 1 on bad input, 2 when the fit did not
 * converge (outputs are still written).
 */
inline int cmd_fit(const std::string& data_path, const std::string& config_path, const std::string& out_path,
                   std::optional<std::uint64_t> seed = std::nullopt, std::ostream& err = std::cerr)
{
    return run_command(err, [&] {
        const FitConfig cfg = parse_fit_config(read_json(config_path), config_path);
        const CsvTable table = read_csv(data_path);
        const FitProblem problem = build_fit_problem(cfg, table, data_path);
        const FitResult fit = fit_map(problem, cfg.solver);

        Json resolved = cfg.resolved;
        resolved["seed"] = seed.value_or(0);
        RunManifest m = make_manifest("fit", resolved, seed.value_or(0));
        const std::string trace_path = out_path + ".trace.csv";
        const std::string manifest_path = out_path + ".manifest.json";
        m.outputs = {out_path, trace_path};

        std::string status = "# status: " + std::string(to_string(fit.status));
        if (!fit.message.empty()) status += " (" + fit.message + ")";
        status += "\n";

        std::ostringstream coef;
        coef << m.header() << status << "index,name,estimate,weight_final,in_support\n";
        if (fit.precision) {
            const Matrix& omega = fit.precision->omega;
            const Matrix& w = fit.weights_final->matrix();
            Index k = 0;
            for (Index i = 0; i < omega.rows(); ++i)
                for (Index j = i; j < omega.cols(); ++j) {
                    const std::string name = "omega[" + table.header[static_cast<std::size_t>(i)] + "," +
                                             table.header[static_cast<std::size_t>(j)] + "]";
                    coef << ++k << "," << csv_quote(name) << "," << format_double(omega(i, j)) << ","
                         << format_double(w(i, j)) << "," << (omega(i, j) != 0.0 ? 1 : 0) << "\n";
                }
        } else {
            const Vector w = fit.weights_final->per_coordinate(
                problem.prior.has_groups() ? &problem.prior.groups() : nullptr);
            for (Index j = 0; j < fit.coef.size(); ++j)
                coef << j + 1 << "," << csv_quote(table.header[static_cast<std::size_t>(j + 1)]) << ","
                     << format_double(fit.coef(j)) << "," << format_double(w(j)) << ","
                     << (fit.coef(j) != 0.0 ? 1 : 0) << "\n";
        }

        std::ostringstream trace;
        trace << m.header() << status << "iteration,objective\n";
        for (std::size_t t = 0; t < fit.objective_trace.size(); ++t)
            trace << t << "," << format_double(fit.objective_trace[t]) << "\n";

        write_text_file(out_path, coef.str());
        write_text_file(trace_path, trace.str());
        write_text_file(manifest_path, m.to_json());
        if (!fit.converged) {
            err << "warning: " << to_string(fit.status) << (fit.message.empty() ? "" : ": " + fit.message) << "\n";
            return static_cast<int>(exit_nonconvergence);
        }
        return static_cast<int>(exit_ok);
    });
}

/**
 * Runs replicated experiments (a preset or explicit experiments) and writes
 * one summary row per setting to `out`, plus `out`.manifest.json.
 * `threads` never changes the output.
 */
inline int cmd_simulate(const std::string& config_path, const std::string& out_path,
                        std::optional<std::uint64_t> seed = std::nullopt, std::optional<int> reps = std::nullopt,
                        unsigned threads = 1, std::ostream& err = std::cerr)
{
    return run_command(err, [&] {
        const SimulateConfig cfg = parse_simulate_config(read_json(config_path), config_path, reps, seed);
        RunManifest m = make_manifest("simulate", cfg.resolved, cfg.rows.front().seed);
        const std::string manifest_path = out_path + ".manifest.json";
        m.outputs = {out_path};

        std::ostringstream out;
        out << m.header()
            << "# avg_error: mean over replications of the l2 distance to the truth "
               "(Frobenius norm over the upper triangle for precision models)\n"
            << "n,setting,avg_error,pct_correct,avg_fp,avg_fn,nonconverged,R,seed\n";
        int nonconverged = 0;
        for (const auto& row : cfg.rows) {
            const sim::MetricsSummary s = sim::run_replications(row, threads);
            nonconverged += s.nonconverged;
            out << s.n << "," << csv_quote(s.setting) << "," << format_double(s.avg_error) << ","
                << format_double(s.pct_correct) << "," << format_double(s.avg_fp) << "," << format_double(s.avg_fn)
                << "," << s.nonconverged << "," << s.replications << "," << s.seed << "\n";
        }
        write_text_file(out_path, out.str());
        write_text_file(manifest_path, m.to_json());
        if (nonconverged > 0) err << "note: " << nonconverged << " replication fit(s) did not converge\n";
        return static_cast<int>(exit_ok);
    });
}

/// Threshold-curve or penalty-contour data for one prior family.
inline int cmd_curves(const std::string& kind, const std::string& config_path, const std::string& out_path,
                      std::ostream& err = std::cerr)
{
    return run_command(err, [&] {
        const CurvesConfig cfg = parse_curves_config(read_json(config_path), config_path, kind);
        RunManifest m = make_manifest("curves", cfg.resolved, 0);
        const std::string manifest_path = out_path + ".manifest.json";
        m.outputs = {out_path};

        std::ostringstream out;
        out << m.header();
        if (cfg.kind == "threshold") {
            out << "z,beta_hat\n";
            for (const auto& pt : sim::threshold_curve(cfg.penalty, cfg.grid1))
                out << format_double(pt.z) << "," << format_double(pt.beta_hat) << "\n";
        } else {
            out << "beta1,beta2,neg_log_density\n";
            for (const auto& pt : sim::penalty_contour(cfg.penalty, cfg.grid1, cfg.grid2))
                out << format_double(pt.beta1) << "," << format_double(pt.beta2) << ","
                    << format_double(pt.neg_log_density) << "\n";
        }
        write_text_file(out_path, out.str());
        write_text_file(manifest_path, m.to_json());
        return static_cast<int>(exit_ok);
    });
}

} // namespace hiersparse::io
