#include "pierce/cli.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "pierce/error.hpp"
#include "pierce/generators.hpp"
#include "pierce/meet_graph.hpp"
#include "pierce/svg.hpp"
#include "pierce/verify.hpp"

namespace pierce {

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void emit_json(const nlohmann::json& j, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << j.dump(2) << '\n';
    } else {
        write_json_file(path, j);
    }
}

std::vector<fs::path> expand_glob(const std::string& pattern) {
    const fs::path pat(pattern);
    const fs::path dir = pat.has_parent_path() ? pat.parent_path() : fs::path(".");
    const std::string name = pat.filename().string();
    std::vector<fs::path> out;
    if (!fs::is_directory(dir)) {
        return out;
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && ::fnmatch(name.c_str(), entry.path().filename().c_str(), 0) == 0) {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct Options {
    std::string kind;
    std::string input;
    std::string report;
    std::string output;
    std::string glob;
    std::string outdir;
    std::string strategy = "exhaustive";
    std::uint64_t seed = 1;
    std::optional<double> alpha;
    std::size_t trials = 4096;
    int p = 2;
    int n = 20;
    double delta = kGalleryDelta;
    int kmax = 6;
};

RunConfig make_config(const Options& o) {
    RunConfig c;
    c.alpha = o.alpha;
    c.trials = o.trials;
    c.seed = o.seed;
    c.strategy = o.strategy == "random" ? SearchStrategy::Kind::Random : SearchStrategy::Kind::Exhaustive;
    validate_run_config(c);
    return c;
}

int cmd_gen(const Options& o, std::ostream& out) {
    Instance inst;
    if (o.kind == "pairwise") {
        inst = gen_pairwise(o.n, o.seed);
    } else if (o.kind == "clustered") {
        inst = gen_clustered(o.p, o.n, o.seed);
    } else {
        inst = gallery7(o.delta);
    }
    emit_json(instance_to_json(inst), o.output, out);
    spdlog::info("generated {} bodies ({})", inst.bodies.size(), o.kind);
    return kExitOk;
}

TransversalReport solve_one(const Instance& inst, const RunConfig& config) {
    return run_pipeline(inst.bodies, inst.curve, inst.p, config);
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
    const RunConfig config = make_config(o);
    if (o.glob.empty()) {
        if (o.input.empty()) {
            err << "solve: an instance file or --glob is required\n";
            return kExitUsage;
        }
        const Instance inst = read_instance(o.input);
        const TransversalReport rep = solve_one(inst, config);
        emit_json(report_to_json(rep), o.output, out);
        spdlog::info("transversal of size {} (tau* = {})", rep.transversal.size(), rep.tau_star);
        return rep.flags.all() ? kExitOk : kExitFail;
    }
    if (o.outdir.empty()) {
        err << "solve --glob needs --outdir\n";
        return kExitUsage;
    }
    const auto files = expand_glob(o.glob);
    if (files.empty()) {
        err << "no files match " << o.glob << '\n';
        return kExitUsage;
    }
    fs::create_directories(o.outdir);
    std::atomic<std::size_t> next{0};
    std::atomic<int> status{kExitOk};
    std::mutex io;
    auto worker = [&] {
        for (std::size_t k = next++; k < files.size(); k = next++) {
            const fs::path& f = files[k];
            try {
                const TransversalReport rep = solve_one(read_instance(f), config);
                write_report(fs::path(o.outdir) / f.filename(), rep);
                const std::lock_guard lock(io);
                out << f.string() << ": " << rep.transversal.size() << (rep.flags.all() ? "" : " (unverified)") << '\n';
                if (!rep.flags.all()) {
                    status = kExitFail;
                }
            } catch (const std::exception& e) {
                const std::lock_guard lock(io);
                err << f.string() << ": " << e.what() << '\n';
                status = kExitFail;
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                             static_cast<unsigned>(files.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    return status;
}

int cmd_oracle(const Options& o, std::ostream& out) {
    const Instance inst = read_instance(o.input);
    const auto cands = candidate_points(inst.bodies);
    const auto best = brute_min_transversal(inst.bodies, cands, o.kmax);
    if (!best) {
        out << "none\n";
        return kExitFail;
    }
    out << best->size() << '\n';
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const Instance inst = read_instance(o.input);
    const TransversalReport rep = read_report(o.report);
    bool ok = true;
    for (const auto& line : verify_report(inst, rep)) {
        out << (line.ok ? "ok   " : "FAIL ") << line.name << "  " << line.detail << '\n';
        ok = ok && line.ok;
    }
    return ok ? kExitOk : kExitFail;
}

int cmd_plot(const Options& o, std::ostream& out) {
    const Instance inst = read_instance(o.input);
    std::string svg;
    if (o.report.empty()) {
        svg = render_svg(inst);
    } else {
        const TransversalReport rep = read_report(o.report);
        svg = render_svg(inst, rep.transversal, &rep.z);
    }
    if (o.output.empty()) {
        out << svg;
    } else {
        std::ofstream f(o.output);
        if (!(f << svg)) {
            throw PierceError(ErrorKind::Io, "cannot write " + o.output);
        }
    }
    return kExitOk;
}

int cmd_stats(const Options& o, std::ostream& out) {
    const Instance inst = read_instance(o.input);
    const WitnessList q = build_witness_list(inst.bodies, inst.curve);
    const ColorGraph g = build_meet_graph(inst.bodies, inst.curve);
    const auto n = static_cast<double>(inst.bodies.size());
    const double gamma = n >= 2 ? static_cast<double>(g.edge_count()) / (n * (n - 1) / 2.0) : 1.0;
    const double alpha = o.alpha.value_or(default_alpha(gamma));
    int spread = 0;
    int covered = 0;
    int constructive = 0;
    for (int c = 0; c < q.colors(); ++c) {
        if (is_spread_out(q, c, alpha)) {
            ++spread;
        } else if (auto cover = three_interval_cover(q, c, alpha)) {
            ++covered;
            constructive += cover->constructive ? 1 : 0;
        }
    }
    out << "bodies " << inst.bodies.size() << '\n'
        << "witnesses " << q.size() << '\n'
        << "meets " << g.edge_count() << '\n'
        << "alpha " << alpha << '\n'
        << "spread_out " << spread << '\n'
        << "three_interval " << covered << " (constructive " << constructive << ")\n";
    if (q.size() >= 4) {
        out << "mean_pierced " << expected_pierced(q).mean << '\n';
    }
    try {
        const TuranCheck t = turan_pair_check(g, inst.p);
        out << "turan " << (t.ok ? "ok" : "below") << " meets " << t.meets << " bound " << t.bound << " exact_bound "
            << t.exact_bound << '\n';
    } catch (const PierceError& e) {
        out << "turan violated: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitOk;
}

}  // namespace

void configure_logging() {
    auto logger = spdlog::get("pierce");
    if (!logger) {
        logger = spdlog::stderr_color_mt("pierce");
        spdlog::set_default_logger(logger);
    }
    const char* env = std::getenv("PIERCE_LOG_LEVEL");
    const std::string level = env != nullptr ? env : "error";
    if (level == "debug") {
        spdlog::set_level(spdlog::level::debug);
    } else if (level == "info") {
        spdlog::set_level(spdlog::level::info);
    } else {
        spdlog::set_level(spdlog::level::err);
    }
}

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    configure_logging();
    Options o;
    CLI::App app{"Transversals of convex bodies meeting on a circle", "pierce"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "Generate an instance");
    gen->add_option("kind", o.kind, "pairwise, clustered or gallery")
        ->required()
        ->check(CLI::IsMember({"pairwise", "clustered", "gallery"}));
    gen->add_option("-o,--output", o.output, "Output file (stdout if omitted)");
    gen->add_option("--seed", o.seed);
    gen->add_option("--n", o.n, "Number of bodies");
    gen->add_option("--p", o.p, "p of the (p,2) condition");
    gen->add_option("--delta", o.delta, "Gallery perturbation in radians");

    auto* solve = app.add_subcommand("solve", "Run the transversal pipeline");
    solve->add_option("instance", o.input);
    solve->add_option("-o,--output", o.output, "Report file (stdout if omitted)");
    solve->add_option("--glob", o.glob, "Solve every matching instance");
    solve->add_option("--outdir", o.outdir, "Report directory for --glob");
    solve->add_option("--seed", o.seed);
    solve->add_option("--alpha", o.alpha);
    solve->add_option("--trials", o.trials);
    solve->add_option("--strategy", o.strategy)->check(CLI::IsMember({"exhaustive", "random"}));

    auto* oracle = app.add_subcommand("oracle", "Exact minimum transversal by branch and bound");
    oracle->add_option("instance", o.input)->required();
    oracle->add_option("--kmax", o.kmax, "Largest size to try");

    auto* verify = app.add_subcommand("verify", "Recheck a report against its instance");
    verify->add_option("instance", o.input)->required();
    verify->add_option("report", o.report)->required();

    auto* plot = app.add_subcommand("plot", "Draw an instance as SVG");
    plot->add_option("instance", o.input)->required();
    plot->add_option("report", o.report);
    plot->add_option("-o,--output", o.output, "SVG file (stdout if omitted)");

    auto* stats = app.add_subcommand("stats", "Witness-list diagnostics");
    stats->add_option("instance", o.input)->required();
    stats->add_option("--alpha", o.alpha);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << app.help();
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            return cmd_gen(o, out);
        }
        if (solve->parsed()) {
            return cmd_solve(o, out, err);
        }
        if (oracle->parsed()) {
            return cmd_oracle(o, out);
        }
        if (verify->parsed()) {
            return cmd_verify(o, out);
        }
        if (plot->parsed()) {
            return cmd_plot(o, out);
        }
        return cmd_stats(o, out);
    } catch (const PierceError& e) {
        err << "error";
        if (!e.stage().empty()) {
            err << " [" << e.stage() << "]";
        }
        err << " (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return e.kind() == ErrorKind::Io || e.kind() == ErrorKind::Argument ? kExitUsage : kExitFail;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFail;
    }
}

}  // namespace pierce
