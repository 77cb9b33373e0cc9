#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "genea/distributions.hpp"
#include "genea/lengths.hpp"
#include "genea/newick.hpp"
#include "genea/parallel.hpp"
#include "genea/samplers.hpp"
#include "genea/serialize.hpp"
#include "genea/suites.hpp"

using namespace genea;

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
    if (!os) throw std::runtime_error("failed to write: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    if (csv.empty()) return out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string render(const BranchingParams& p, const AncestralProcess& ap,
                   const std::string& format, const std::vector<std::string>& labels) {
    if (format == "json") return to_json(p, ap);
    if (format == "csv") return atoms_csv(ap);
    if (format == "newick") return to_newick(ap, labels) + "\n";
    throw CLI::ValidationError("--format", "unknown format: " + format);
}

struct SampleOpts {
    double beta = 1.0, theta = 1.0;
    std::string sampler;
    std::size_t n = 10;
    double h = 0.0, eps = 0.0, z0 = 0.0;
    std::uint64_t seed = 0, stream = 0;
    std::string format = "newick";
    std::string output;
    std::string labels;
};

int cmd_sample(const SampleOpts& o, bool h_given, bool eps_given, bool z0_given) {
    const BranchingParams p{o.beta, o.theta};
    RngStream rng(o.seed, o.stream);
    AncestralProcess ap;
    if (o.sampler == "static") {
        ap = z0_given ? sample_static_conditional_z0(p, o.n, o.z0, rng).process
                      : sample_static(p, o.n, rng).process;
    } else if (o.sampler == "dynamic-v") {
        ap = sample_dynamic_v(p, o.n, rng).processes.back();
    } else if (o.sampler == "dynamic-h") {
        ap = sample_dynamic_h(p, o.n, rng).processes.back();
    } else if (o.sampler == "conditional") {
        if (!h_given) throw CLI::ValidationError("--h", "conditional sampler requires --h");
        ap = sample_conditional_tmrca(p, o.n, o.h, rng).process;
    } else if (o.sampler == "full") {
        if (!eps_given) throw CLI::ValidationError("--eps", "full sampler requires --eps");
        if (z0_given)
            sample_full_ancestral_given(p, o.eps, 0.5 * o.z0, 0.5 * o.z0, rng, ap);
        else
            ap = sample_full_ancestral(p, o.eps, rng);
    } else {
        throw CLI::ValidationError("--sampler", "unknown sampler: " + o.sampler);
    }
    write_file(o.output, render(p, ap, o.format, split_csv(o.labels)));
    std::printf("total_length %.17g\n", total_length(ap));
    std::printf("tmrca %.17g\n", tmrca(ap));
    return 0;
}

struct ValidateOpts {
    double beta = 1.0, theta = 1.0;
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t reps = 0;
    unsigned threads = 1;
    std::string output;
};

int cmd_validate(const ValidateOpts& o) {
    SuiteConfig cfg;
    cfg.params = {o.beta, o.theta};
    cfg.seed = o.seed;
    cfg.reps = o.reps;
    cfg.threads = o.threads;
    std::vector<std::string> names;
    if (o.suite == "all")
        names = suite_names();
    else
        names = {o.suite};
    bool all_passed = true;
    std::string json = "[";
    for (std::size_t i = 0; i < names.size(); ++i) {
        const ExperimentReport report = run_suite(names[i], cfg);
        print_report(std::cout, report);
        all_passed = all_passed && report.passed;
        if (i) json += ',';
        json += report_to_json(report);
    }
    json += "]\n";
    if (!o.output.empty()) write_file(o.output, json);
    return all_passed ? 0 : 1;
}

struct ScalingOpts {
    double beta = 1.0, theta = 1.0, z0 = 1.0;
    std::string n_grid = "100,1000,10000";
    std::size_t reps = 1000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string output;
};

int cmd_length_scaling(const ScalingOpts& o) {
    const BranchingParams p{o.beta, o.theta};
    std::vector<std::size_t> grid;
    for (const std::string& tok : split_csv(o.n_grid)) {
        const long v = std::stol(tok);
        if (v < 1) throw CLI::ValidationError("--n-grid", "entries must be >= 1");
        grid.push_back(static_cast<std::size_t>(v));
    }
    if (grid.empty() || o.reps == 0)
        throw CLI::ValidationError("--n-grid", "need a nonempty grid and reps >= 1");
    std::string csv = length_summary_csv_header();
    std::uint64_t stream_base = 0;
    for (std::size_t n : grid) {
        const auto rows = run_replicates(
            o.seed, stream_base, o.reps, o.threads,
            [&](std::size_t, RngStream& rng) { return coupled_lengths(p, o.z0, n, rng); });
        stream_base += o.reps;
        const double comp = compensator_lambda_asymptotic(p, o.z0, n);
        double j_sum = 0.0, c_kahan = 0.0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            LengthSummary s;
            s.raw = rows[r].lambda_n;
            s.compensator = comp;
            s.compensated = s.raw - comp;
            s.z0 = o.z0;
            s.n_or_eps = static_cast<double>(n);
            csv += length_summary_csv_row(r, s);
            const double d = rows[r].lambda_n - rows[r].l_eps;
            const double y = d * d - c_kahan;
            const double t = j_sum + y;
            c_kahan = (t - j_sum) - y;
            j_sum = t;
        }
        std::printf("n %zu coupled_second_moment %.17g\n", n,
                    j_sum / static_cast<double>(o.reps));
    }
    write_file(o.output, csv);
    return 0;
}

struct ExportOpts {
    std::string input;
    std::string format;
    std::string output;
    std::string labels;
};

int cmd_export(const ExportOpts& o) {
    BranchingParams p;
    const AncestralProcess ap = ancestral_process_from_json(read_file(o.input), &p);
    write_file(o.output, render(p, ap, o.format, split_csv(o.labels)));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact simulation of stationary branching-population genealogies"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");
    app.set_config("--config", "", "read options from a key=value file");

    SampleOpts so;
    auto* sample = app.add_subcommand("sample", "draw one genealogical tree and export it");
    sample->set_help_flag("--help", "print help");
    sample->add_option("--beta", so.beta, "time-scale parameter")->check(CLI::PositiveNumber);
    sample->add_option("--theta", so.theta, "population-size parameter")
        ->check(CLI::PositiveNumber);
    sample->add_option("--sampler", so.sampler,
                       "static | dynamic-v | dynamic-h | conditional | full")
        ->required();
    sample->add_option("--n", so.n, "number of sampled individuals");
    auto* opt_h = sample->add_option("--h", so.h, "population TMRCA (conditional sampler)")
                      ->check(CLI::PositiveNumber);
    auto* opt_eps = sample->add_option("--eps", so.eps, "depth truncation (full sampler)")
                        ->check(CLI::PositiveNumber);
    auto* opt_z0 = sample->add_option("--z0", so.z0, "fix the total population size")
                       ->check(CLI::PositiveNumber);
    sample->add_option("--seed", so.seed, "RNG seed")->required()->envname("GENEA_SEED");
    sample->add_option("--stream", so.stream, "RNG stream id");
    sample->add_option("--format", so.format, "newick | json | csv");
    sample->add_option("--output", so.output, "output file")->required();
    sample->add_option("--labels", so.labels, "comma-separated leaf labels (spine first)");

    ValidateOpts vo;
    auto* validate = app.add_subcommand("validate", "run a validation suite");
    validate->add_option("--beta", vo.beta)->check(CLI::PositiveNumber);
    validate->add_option("--theta", vo.theta)->check(CLI::PositiveNumber);
    validate->add_option("--suite", vo.suite, "suite name or 'all'")->required();
    validate->add_option("--seed", vo.seed, "RNG seed (required, no wall-clock fallback)")
        ->required();
    validate->add_option("--reps", vo.reps, "override replicate counts (0 = defaults)");
    validate->add_option("--threads", vo.threads, "replicate parallelism");
    validate->add_option("--output", vo.output, "write the JSON report here");

    ScalingOpts lo;
    auto* scaling = app.add_subcommand("length-scaling", "length-vs-n sweep with coupling decay");
    scaling->add_option("--beta", lo.beta)->check(CLI::PositiveNumber);
    scaling->add_option("--theta", lo.theta)->check(CLI::PositiveNumber);
    scaling->add_option("--z0", lo.z0, "total population size")->check(CLI::PositiveNumber);
    scaling->add_option("--n-grid", lo.n_grid, "comma-separated sample sizes");
    scaling->add_option("--reps", lo.reps, "replicates per grid point");
    scaling->add_option("--seed", lo.seed, "RNG seed")->required();
    scaling->add_option("--threads", lo.threads, "replicate parallelism");
    scaling->add_option("--output", lo.output, "CSV output file")->required();

    ExportOpts eo;
    auto* exp = app.add_subcommand("export", "convert a stored process file");
    exp->add_option("--input", eo.input, "process JSON file")->required();
    exp->add_option("--format", eo.format, "newick | json | csv")->required();
    exp->add_option("--output", eo.output, "output file")->required();
    exp->add_option("--labels", eo.labels, "comma-separated leaf labels (spine first)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sample)
            return cmd_sample(so, opt_h->count() > 0, opt_eps->count() > 0, opt_z0->count() > 0);
        if (*validate) return cmd_validate(vo);
        if (*scaling) return cmd_length_scaling(lo);
        if (*exp) return cmd_export(eo);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
