// srmq: generate, run, verify and benchmark streaming range-minimum command streams.

#include <CLI11.hpp>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "srmq/srmq.hpp"

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitInvalid = 2;

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016" PRIx64, v);
    return buf;
}

void print_report(const srmq::RunReport& r) {
    std::cerr << "engine=" << r.engine << '\n'
              << "commands=" << r.commands << '\n'
              << "values=" << r.values << '\n'
              << "queries=" << r.queries << '\n'
              << "wall_ns=" << r.wall.count() << '\n'
              << "ns_per_command=" << r.ns_per_command << '\n'
              << "peak_capacity=" << r.peak_capacity << '\n'
              << "peak_active=" << r.peak_active << '\n'
              << "digest=" << hex64(r.digest) << '\n';
    if (r.failures) std::cerr << "failures=" << r.failures << '\n';
}

/// Parses and (unless skipped) validates; prints the problem and returns
/// false on failure.
bool load_stream(const std::string& path, bool check, std::vector<srmq::Command>& out) {
    const std::string text = srmq::read_text(path);
    try {
        out = srmq::parse_stream(text);
    } catch (const srmq::parse_error& e) {
        std::cerr << "invalid stream: command " << e.ordinal() << ": MalformedToken: " << e.what() << '\n';
        return false;
    }
    if (!check) return true;
    const auto report = srmq::validate(out);
    if (!report.ok) {
        const auto& v = report.violations.front();
        std::cerr << "invalid stream: command " << v.ordinal << " (" << out[v.ordinal] << "): " << srmq::to_string(v.kind);
        if (report.violations.size() > 1) std::cerr << " (+" << report.violations.size() - 1 << " more)";
        std::cerr << '\n';
        return false;
    }
    return true;
}

srmq::SearchMode parse_search(const std::string& s) {
    return s == "exponential" ? srmq::SearchMode::exponential : srmq::SearchMode::binary;
}

struct GenerateFlags {
    std::uint64_t n = 0;
    std::uint64_t q = 0;
    double ell = 1.0;
    std::uint64_t seed = 1;
    std::uint64_t value_bound = std::uint64_t{1} << 30;
    std::string out = "-";
};

srmq::WorkloadSpec to_spec(const GenerateFlags& g) { return {g.n, g.q, g.ell, g.seed, g.value_bound}; }

int cmd_generate(const GenerateFlags& g) {
    const auto commands = srmq::generate(to_spec(g));
    srmq::write_text(g.out, srmq::serialize(commands) + "\n");
    return 0;
}

struct RunFlags {
    std::string engine;
    std::string in = "-";
    bool sink = false;
    bool lenient = false;
    std::size_t initial_capacity = srmq::CompactEngine::kDefaultInitialCapacity;
    std::string search = "binary";
};

int cmd_run(const RunFlags& f) {
    std::vector<srmq::Command> commands;
    if (!load_stream(f.in, !f.lenient, commands)) return kExitInvalid;
    auto engine = srmq::make_engine(f.engine, {f.initial_capacity, parse_search(f.search)});
    srmq::RunResult result;
    try {
        result = srmq::run_engine(engine, commands, {.collect_answers = !f.sink, .lenient = f.lenient});
    } catch (const srmq::error& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kExitMismatch;
    }
    if (!f.sink) {
        std::string out;
        for (const auto& a : result.answers) {
            out += a ? std::to_string(*a) : std::string("x");
            out += '\n';
        }
        std::cout << out;
        std::cout.flush();
    }
    print_report(result.report);
    return 0;
}

int cmd_verify(const std::string& in, std::size_t initial_capacity) {
    std::vector<srmq::Command> commands;
    if (!load_stream(in, true, commands)) return kExitInvalid;
    const auto runs = srmq::run_all_engines(commands, initial_capacity);
    const auto report = srmq::compare_answers(commands, runs);
    for (const auto& e : report.errors) std::cout << "error: " << e << '\n';
    if (report.first_divergence) {
        const auto& d = *report.first_divergence;
        std::cout << "mismatch at query " << d.query_ordinal << " (Q " << d.position << ")\n";
        for (const auto& [name, answer] : d.answers)
            std::cout << "  " << name << " = " << (answer ? std::to_string(*answer) : std::string("none")) << '\n';
    }
    if (!report.ok) return kExitMismatch;
    const std::size_t queries = runs.empty() ? 0 : runs.front().answers.size();
    std::cout << "ok: " << queries << " queries agree across " << runs.size() << " engines\n";
    return 0;
}

struct BenchFlags {
    std::string in;
    GenerateFlags gen;
    std::string engines = "vanilla,compact,realtime";
    int repeat = 1;
    std::size_t initial_capacity = srmq::CompactEngine::kDefaultInitialCapacity;
    std::string search = "binary";
};

int cmd_bench(const BenchFlags& f) {
    std::vector<srmq::Command> commands;
    double ell = 0.0;
    if (!f.in.empty()) {
        if (!load_stream(f.in, true, commands)) return kExitInvalid;
        srmq::StreamValidator v;
        std::size_t peak = 0;
        for (const auto& c : commands) {
            v.step(c);
            peak = std::max(peak, v.open_count());
        }
        ell = static_cast<double>(peak);
    } else {
        if (f.gen.n == 0) {
            std::cerr << "bench: either --in or --n/--q/--ell is required\n";
            return kExitInvalid;
        }
        commands = srmq::generate(to_spec(f.gen));
        ell = f.gen.ell;
    }

    std::vector<std::string> names;
    std::stringstream ss(f.engines == "all" ? std::string("vanilla,compact,realtime,oracle") : f.engines);
    for (std::string name; std::getline(ss, name, ',');)
        if (!name.empty()) names.push_back(name);

    std::cout << "engine,n,q,ell,ns_per_command,peak_capacity\n";
    for (const auto& name : names) {
        for (int r = 0; r < f.repeat; ++r) {
            auto engine = srmq::make_engine(name, {f.initial_capacity, parse_search(f.search)});
            const auto result = srmq::run_engine(engine, commands, {.collect_answers = false});
            const auto& rep = result.report;
            std::cout << rep.engine << ',' << rep.values << ',' << rep.queries << ',' << ell << ',' << rep.ns_per_command << ','
                      << rep.peak_capacity << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Streaming range-minimum queries over V/M/Q/C command streams"};
    app.require_subcommand(1);

    const std::vector<std::string> engine_names(std::begin(srmq::kEngineNames), std::end(srmq::kEngineNames));
    const auto search_check = CLI::IsMember({"binary", "exponential"});

    GenerateFlags gen;
    auto* generate = app.add_subcommand("generate", "write a random workload stream");
    generate->add_option("--n", gen.n, "number of values")->required()->check(CLI::PositiveNumber);
    generate->add_option("--q", gen.q, "number of queries")->required();
    generate->add_option("--ell", gen.ell, "target open-position count")->required();
    generate->add_option("--seed", gen.seed, "generator seed");
    generate->add_option("--value-bound", gen.value_bound, "values are drawn from [0, bound)");
    generate->add_option("--out", gen.out, "output file ('-' for stdout, '.gz' to compress)");

    RunFlags run;
    auto* run_cmd = app.add_subcommand("run", "answer every Query of a stream with one engine");
    run_cmd->add_option("--engine", run.engine, "engine")->required()->check(CLI::IsMember(engine_names));
    run_cmd->add_option("--in", run.in, "input file ('-' for stdin)");
    run_cmd->add_flag("--sink", run.sink, "discard answers into a write-once sink");
    run_cmd->add_flag("--lenient", run.lenient, "skip validation; report failed queries as 'x'");
    run_cmd->add_option("--initial-capacity", run.initial_capacity, "initial capacity for compact/realtime");
    run_cmd->add_option("--search", run.search, "realtime search mode")->check(search_check);

    std::string verify_in = "-";
    std::size_t verify_capacity = srmq::CompactEngine::kDefaultInitialCapacity;
    auto* verify = app.add_subcommand("verify", "run every engine and the oracle and compare answers");
    verify->add_option("--in", verify_in, "input file ('-' for stdin)");
    verify->add_option("--initial-capacity", verify_capacity, "initial capacity for compact/realtime");

    BenchFlags bench;
    auto* bench_cmd = app.add_subcommand("bench", "time engines and print CSV rows");
    bench_cmd->add_option("--in", bench.in, "input file; otherwise a workload is generated");
    bench_cmd->add_option("--n", bench.gen.n, "number of values");
    bench_cmd->add_option("--q", bench.gen.q, "number of queries");
    bench_cmd->add_option("--ell", bench.gen.ell, "target open-position count");
    bench_cmd->add_option("--seed", bench.gen.seed, "generator seed");
    bench_cmd->add_option("--engine", bench.engines, "comma-separated engines or 'all'");
    bench_cmd->add_option("--repeat", bench.repeat, "rows per engine")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--initial-capacity", bench.initial_capacity, "initial capacity for compact/realtime");
    bench_cmd->add_option("--search", bench.search, "realtime search mode")->check(search_check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*generate) return cmd_generate(gen);
        if (*run_cmd) return cmd_run(run);
        if (*verify) return cmd_verify(verify_in, verify_capacity);
        if (*bench_cmd) return cmd_bench(bench);
    } catch (const srmq::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return 0;
}
