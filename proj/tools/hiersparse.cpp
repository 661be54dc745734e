#include <hiersparse/io/commands.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <thread>

namespace {

// --threads wins, then HIERSPARSE_THREADS, then the hardware count. Results never depend on it.
unsigned resolve_threads(int flag)
{
    if (flag > 0) return static_cast<unsigned>(flag);
    if (const char* env = std::getenv("HIERSPARSE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
        std::cerr << "warning: ignoring HIERSPARSE_THREADS='" << env << "'\n";
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"MAP estimation with hierarchical adaptive sparsity priors"};
    app.require_subcommand(1);
    app.set_version_flag("--version", hiersparse::io::toolkit_version);

    std::string config;
    std::string data;
    std::string out;
    std::string kind;
    std::uint64_t seed = 0;
    int reps = 0;
    int threads = 0;

    auto* fit = app.add_subcommand("fit", "fit a model to a CSV file (first column is the response)");
    fit->add_option("--config", config, "JSON fit configuration")->required();
    fit->add_option("--data", data, "CSV data with a header row")->required();
    fit->add_option("--out", out, "coefficient output path")->required();
    fit->add_option("--seed", seed, "seed recorded in the outputs");

    auto* simulate = app.add_subcommand("simulate", "run replicated experiments");
    simulate->add_option("--config", config, "JSON experiment configuration or preset")->required();
    simulate->add_option("--out", out, "summary output path")->required();
    simulate->add_option("--seed", seed, "master seed (overrides the config)");
    simulate->add_option("--reps", reps, "replications (overrides the config)")->check(CLI::PositiveNumber);
    simulate->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    auto* curves = app.add_subcommand("curves", "threshold-curve or penalty-contour data");
    curves->add_option("--config", config, "JSON curve configuration")->required();
    curves->add_option("--out", out, "output path")->required();
    curves->add_option("--kind", kind, "threshold or contour (overrides the config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : hiersparse::io::exit_input;
    }

    auto opt_seed = [&](CLI::App* sub) -> std::optional<std::uint64_t> {
        if (sub->count("--seed") > 0) return seed;
        return std::nullopt;
    };

    if (*fit) return hiersparse::io::cmd_fit(data, config, out, opt_seed(fit));
    if (*simulate) {
        std::optional<int> r;
        if (simulate->count("--reps") > 0) r = reps;
        return hiersparse::io::cmd_simulate(config, out, opt_seed(simulate), r, resolve_threads(threads));
    }
    return hiersparse::io::cmd_curves(kind, config, out);
}
