#include "mzop/cli.hpp"

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>

#include "mzop/csv.hpp"
#include "mzop/ensemble.hpp"
#include "mzop/kernel.hpp"
#include "mzop/memory.hpp"
#include "mzop/model.hpp"
#include "mzop/reduced.hpp"
#include "mzop/svg.hpp"
#include "mzop/version.hpp"

namespace mzop {

namespace {

// Plain-text `key=value` config support: values are injected as `--key value`
// arguments unless the flag already appears on the command line, so explicit
// flags always win. Lines starting with '#' and blank lines are ignored.
std::vector<std::string> apply_config_file(const std::vector<std::string>& args) {
    std::string config_path;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            out.push_back(args[i]);
        }
    }
    if (config_path.empty()) return out;

    std::ifstream in(config_path);
    if (!in) throw CLI::FileError::Missing(config_path);
    auto has_flag = [&](const std::string& flag) {
        for (const auto& a : out)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    std::string line;
    std::vector<std::string> injected;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        if (key.empty() || has_flag("--" + key)) continue;
        injected.push_back("--" + key);
        injected.push_back(val);
    }
    // after the subcommand name, so the options land on it
    std::size_t at = (!out.empty() && out[0][0] != '-') ? 1 : 0;
    out.insert(out.begin() + static_cast<long>(at), injected.begin(), injected.end());
    return out;
}

struct CommonMeta {
    MetaLines lines;
    void add(const std::string& k, const std::string& v) { lines.emplace_back(k, v); }
    void add(const std::string& k, double v) { lines.emplace_back(k, fmt_g17(v)); }
    void add(const std::string& k, long v) { lines.emplace_back(k, std::to_string(v)); }
    void add(const std::string& k, std::uint64_t v) { lines.emplace_back(k, std::to_string(v)); }
};

CommonMeta base_meta(const std::string& command) {
    CommonMeta m;
    m.add("tool", std::string("mzop ") + kVersion);
    m.add("command", command);
    return m;
}

void cmd_sample(long n, double temp, std::uint64_t seed, const std::string& out) {
    CoupledOscillators4D model(temp);
    std::vector<PhasePoint> samples;
    samples.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        samples.push_back(model.sample_equilibrium(RngState{seed, static_cast<std::uint64_t>(i)}));
    CommonMeta meta = base_meta("sample");
    meta.add("n", n);
    meta.add("temp", temp);
    meta.add("seed", seed);
    write_samples_csv(out, samples, meta.lines);
}

void cmd_truth(double x1, double x2, double temp, long members, double dt, long steps,
               std::uint64_t seed, int threads, const std::string& out) {
    CoupledOscillators4D model(temp);
    EnsembleOptions opts;
    opts.n_members = members;
    opts.dt = dt;
    opts.n_steps = steps;
    opts.seed = seed;
    opts.threads = threads;
    EnsembleStats stats = ensemble_truth(model, ResolvedPoint{{x1, x2}}, opts);
    CommonMeta meta = base_meta("truth");
    meta.add("x1", x1);
    meta.add("x2", x2);
    meta.add("temp", temp);
    meta.add("members", members);
    meta.add("dt", dt);
    meta.add("steps", steps);
    meta.add("seed", seed);
    write_ensemble_csv(out, stats, meta.lines);
}

void cmd_kernel(int component, double temp, long members, double dt, long steps, long max_lag,
                std::uint64_t seed, int threads, const std::string& out) {
    CoupledOscillators4D model(temp);
    KernelOptions opts;
    opts.component = component;
    opts.n_members = members;
    opts.dt = dt;
    opts.n_steps = steps;
    opts.max_lag_steps = max_lag;
    opts.seed = seed;
    opts.threads = threads;
    KernelTable table = estimate_k0(model, opts);
    CommonMeta meta = base_meta("kernel");
    meta.add("max_lag", max_lag);
    write_kernel_table(out, table, meta.lines);
}

void cmd_reduced(ReducedKind kind, const std::string& command, double x1, double x2, double temp,
                 double dt, long steps, const std::string& out) {
    CoupledOscillators4D model(temp);
    ReducedSystem sys{kind, &model};
    Trajectory traj = solve_reduced(sys, ResolvedPoint{{x1, x2}}, dt, steps);
    CommonMeta meta = base_meta(command);
    meta.add("x1", x1);
    meta.add("x2", x2);
    meta.add("temp", temp);
    meta.add("dt", dt);
    meta.add("steps", steps);
    write_trajectory_csv(out, traj, meta.lines);
}

void cmd_predict(double x1, double x2, const std::string& kernel_path, double dt, long steps,
                 const std::string& sign, const std::string& out) {
    KernelTable table = read_kernel_table(kernel_path);
    if (dt <= 0.0) dt = table.dt;  // default to the table grid
    CoupledOscillators4D model(table.temperature);
    MemoryModel mem;
    mem.table = std::move(table);
    mem.model = &model;
    mem.sign = sign == "paper" ? SignConvention::PaperExample2
                               : SignConvention::ConsistentWithFullSystem;
    Trajectory traj = solve_memory(ResolvedPoint{{x1, x2}}, mem, dt, steps);
    CommonMeta meta = base_meta("predict");
    meta.add("x1", x1);
    meta.add("x2", x2);
    meta.add("kernel", kernel_path);
    meta.add("dt", dt);
    meta.add("steps", steps);
    meta.add("sign", sign);
    write_trajectory_csv(out, traj, meta.lines);
}

void check_grid(const std::string& name_a, double t0a, double dta, long na,
                const std::string& name_b, double t0b, double dtb, long nb) {
    if (t0a != t0b || dta != dtb || na != nb)
        throw std::runtime_error("compare: grid mismatch between " + name_a + " and " + name_b +
                                 " (t0 " + fmt_g17(t0a) + " vs " + fmt_g17(t0b) + ", dt " +
                                 fmt_g17(dta) + " vs " + fmt_g17(dtb) + ", nodes " +
                                 std::to_string(na) + " vs " + std::to_string(nb) + ")");
}

void cmd_compare(const std::string& truth_path, const std::string& galerkin_path,
                 const std::string& op1_path, const std::string& predict_path,
                 const std::string& out_csv, const std::string& out_svg) {
    EnsembleStats truth = read_ensemble_csv(truth_path);
    Trajectory galerkin = read_trajectory_csv(galerkin_path);
    Trajectory op1 = read_trajectory_csv(op1_path);
    Trajectory predict = read_trajectory_csv(predict_path);

    // Identical grids only; this command never resamples or interpolates.
    check_grid(truth_path, truth.t0, truth.dt, truth.n_nodes(), galerkin_path, galerkin.t0,
               galerkin.dt, galerkin.n_nodes());
    check_grid(truth_path, truth.t0, truth.dt, truth.n_nodes(), op1_path, op1.t0, op1.dt,
               op1.n_nodes());
    check_grid(truth_path, truth.t0, truth.dt, truth.n_nodes(), predict_path, predict.t0,
               predict.dt, predict.n_nodes());

    CommonMeta meta = base_meta("compare");
    meta.add("truth", truth_path);
    meta.add("galerkin", galerkin_path);
    meta.add("op1", op1_path);
    meta.add("predict", predict_path);

    std::ofstream out(out_csv);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_csv);
    for (const auto& [k, v] : meta.lines) out << "# " << k << "=" << v << "\n";
    out << "t,truth_y1,truth_stderr_y1,galerkin_y1,op1_y1,memory_y1\n";
    long n = truth.n_nodes();
    for (long k = 0; k < n; ++k) {
        out << fmt_g17(truth.t0 + truth.dt * static_cast<double>(k)) << ","
            << fmt_g17(truth.mean_at(k, 0)) << "," << fmt_g17(truth.stderr_at(k, 0)) << ","
            << fmt_g17(galerkin.node(k)[0]) << "," << fmt_g17(op1.node(k)[0]) << ","
            << fmt_g17(predict.node(k)[0]) << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + out_csv);
    out.close();

    std::vector<PlotSeries> series(4);
    series[0].label = "truth (ensemble mean)";
    series[0].color = "#000000";
    series[1].label = "Galerkin";
    series[1].color = "#1f77b4";
    series[2].label = "first-order OP";
    series[2].color = "#2ca02c";
    series[3].label = "memory solution";
    series[3].color = "#d62728";
    for (long k = 0; k < n; ++k) {
        double t = truth.t0 + truth.dt * static_cast<double>(k);
        series[0].x.push_back(t);
        series[0].y.push_back(truth.mean_at(k, 0));
        series[1].x.push_back(t);
        series[1].y.push_back(galerkin.node(k)[0]);
        series[2].x.push_back(t);
        series[2].y.push_back(op1.node(k)[0]);
        series[3].x.push_back(t);
        series[3].y.push_back(predict.node(k)[0]);
    }
    write_svg_plot(out_svg, series, "Resolved component y1: truth vs reduced models", "t", "y1");
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Optimal-prediction toolkit: canonical sampling, ensemble truth, "
                 "memory-kernel estimation, and reduced models for the built-in 4D system"};
    app.require_subcommand(1);

    // sample
    auto* sample = app.add_subcommand("sample", "Draw equilibrium samples to CSV");
    long s_n = 1000;
    double s_temp = 1.0;
    std::uint64_t s_seed = 12345;
    std::string s_out;
    sample->add_option("--n", s_n, "number of samples")->check(CLI::PositiveNumber);
    sample->add_option("--temp", s_temp, "temperature")->check(CLI::PositiveNumber);
    sample->add_option("--seed", s_seed, "RNG seed");
    sample->add_option("--out", s_out, "output CSV")->required();

    // truth
    auto* truth = app.add_subcommand("truth", "Ensemble mean of the full system (the 'truth')");
    double t_x1 = 1.0, t_x2 = 0.0, t_temp = 1.0, t_dt = 0.01;
    long t_members = 10000, t_steps = 1000;
    std::uint64_t t_seed = 12345;
    int t_threads = 0;
    truth->add_option("--x1", t_x1, "resolved initial x1");
    truth->add_option("--x2", t_x2, "resolved initial x2");
    truth->add_option("--temp", t_temp, "temperature")->check(CLI::PositiveNumber);
    truth->add_option("--members", t_members, "ensemble members")->check(CLI::PositiveNumber);
    truth->add_option("--dt", t_dt, "time step")->check(CLI::PositiveNumber);
    truth->add_option("--steps", t_steps, "number of steps")->check(CLI::NonNegativeNumber);
    truth->add_option("--seed", t_seed, "RNG seed");
    truth->add_option("--threads", t_threads, "worker threads (0 = auto / MZ_THREADS)")->check(CLI::NonNegativeNumber);
    std::string t_out;
    truth->add_option("--out", t_out, "output CSV")->required();

    // kernel
    auto* kernel = app.add_subcommand("kernel", "Monte-Carlo estimate of the K0 autocorrelation");
    int k_component = 1, k_threads = 0;
    double k_temp = 1.0, k_dt = 0.01;
    long k_members = 10000, k_steps = 2000, k_max_lag = 1000;
    std::uint64_t k_seed = 12345;
    std::string k_out;
    kernel->add_option("--component", k_component, "resolved component j (1-based)")->check(CLI::PositiveNumber);
    kernel->add_option("--temp", k_temp, "temperature")->check(CLI::PositiveNumber);
    kernel->add_option("--members", k_members, "ensemble members")->check(CLI::PositiveNumber);
    kernel->add_option("--dt", k_dt, "time step / lag spacing")->check(CLI::PositiveNumber);
    kernel->add_option("--steps", k_steps, "integration steps per member")->check(CLI::PositiveNumber);
    kernel->add_option("--max-lag", k_max_lag, "largest lag in steps")->check(CLI::NonNegativeNumber);
    kernel->add_option("--seed", k_seed, "RNG seed");
    kernel->add_option("--threads", k_threads, "worker threads (0 = auto / MZ_THREADS)")->check(CLI::NonNegativeNumber);
    kernel->add_option("--out", k_out, "output kernel table")->required();

    // galerkin / op1
    auto* galerkin = app.add_subcommand("galerkin", "Galerkin truncation trajectory");
    auto* op1 = app.add_subcommand("op1", "First-order optimal prediction trajectory");
    double g_x1 = 1.0, g_x2 = 0.0, g_temp = 1.0, g_dt = 0.01;
    long g_steps = 1000;
    std::string g_out, o_out;
    for (auto* sub : {galerkin, op1}) {
        sub->add_option("--x1", g_x1, "initial y1");
        sub->add_option("--x2", g_x2, "initial y2");
        sub->add_option("--temp", g_temp, "temperature")->check(CLI::PositiveNumber);
        sub->add_option("--dt", g_dt, "time step")->check(CLI::PositiveNumber);
        sub->add_option("--steps", g_steps, "number of steps")->check(CLI::NonNegativeNumber);
    }
    galerkin->add_option("--out", g_out, "output CSV")->required();
    op1->add_option("--out", o_out, "output CSV")->required();

    // predict
    auto* predict = app.add_subcommand("predict", "Solve the non-Markovian memory equation");
    double p_x1 = 1.0, p_x2 = 0.0, p_dt = 0.0;
    long p_steps = 1000;
    std::string p_kernel, p_sign = "consistent", p_out;
    predict->add_option("--x1", p_x1, "initial y1");
    predict->add_option("--x2", p_x2, "initial y2");
    predict->add_option("--kernel", p_kernel, "kernel table file")->required();
    predict->add_option("--dt", p_dt, "time step (default: kernel table dt)");
    predict->add_option("--steps", p_steps, "number of steps")->check(CLI::NonNegativeNumber);
    predict->add_option("--sign", p_sign, "dy2/dt sign convention")
        ->check(CLI::IsMember({"consistent", "paper"}));
    predict->add_option("--out", p_out, "output CSV")->required();

    // compare
    auto* compare = app.add_subcommand("compare", "Join runs on one grid and plot y1(t)");
    std::string c_truth, c_galerkin, c_op1, c_predict, c_csv, c_svg;
    compare->add_option("--truth", c_truth, "truth CSV")->required();
    compare->add_option("--galerkin", c_galerkin, "Galerkin CSV")->required();
    compare->add_option("--op1", c_op1, "first-order OP CSV")->required();
    compare->add_option("--predict", c_predict, "memory-solution CSV")->required();
    compare->add_option("--out-csv", c_csv, "joined CSV output")->required();
    compare->add_option("--out-svg", c_svg, "overlay plot output")->required();

    std::string config_dummy;
    for (auto* sub : {sample, truth, kernel, galerkin, op1, predict, compare})
        sub->add_option("--config", config_dummy,
                        "key=value file with defaults (flags override)");

    // CLI11 wants argc/argv
    std::vector<std::string> effective;
    try {
        effective = apply_config_file(args);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    std::vector<const char*> argv;
    argv.push_back("mzop");
    for (const auto& a : effective) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints usage, returns 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sample->parsed()) cmd_sample(s_n, s_temp, s_seed, s_out);
        if (truth->parsed())
            cmd_truth(t_x1, t_x2, t_temp, t_members, t_dt, t_steps, t_seed, t_threads, t_out);
        if (kernel->parsed())
            cmd_kernel(k_component, k_temp, k_members, k_dt, k_steps, k_max_lag, k_seed, k_threads,
                       k_out);
        if (galerkin->parsed())
            cmd_reduced(ReducedKind::Galerkin, "galerkin", g_x1, g_x2, g_temp, g_dt, g_steps, g_out);
        if (op1->parsed())
            cmd_reduced(ReducedKind::FirstOrderOP, "op1", g_x1, g_x2, g_temp, g_dt, g_steps, o_out);
        if (predict->parsed()) cmd_predict(p_x1, p_x2, p_kernel, p_dt, p_steps, p_sign, p_out);
        if (compare->parsed()) cmd_compare(c_truth, c_galerkin, c_op1, c_predict, c_csv, c_svg);
    } catch (const std::exception& e) {
        std::cerr << "mzop: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace mzop
