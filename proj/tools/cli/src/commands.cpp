#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skg/bayes/network_json.hpp"
#include "skg/cli/cli.hpp"
#include "skg/compiler/compiler.hpp"
#include "skg/error.hpp"
#include "skg/lang/loader.hpp"
#include "skg/lang/profile.hpp"

namespace skg::cli {
namespace {

namespace fs = std::filesystem;

// Thrown inside command bodies once the failure has been reported.
struct Exit {
    int code;
};

[[noreturn]] void fail(std::ostream& err, int code, const std::string& message) {
    err << "error: " << message << '\n';
    throw Exit{code};
}

model::KnowledgeGraph load_graph(const std::string& path, const std::optional<std::string>& profile,
                                 std::ostream& err) {
    auto loaded = lang::load_file(path);
    switch (loaded.stage) {
        case lang::LoadStage::Ok:
            break;
        case lang::LoadStage::Io:
            fail(err, kIoOrSyntax, loaded.io_error);
        case lang::LoadStage::Syntax:
        case lang::LoadStage::Validation:
            for (const auto& d : loaded.diagnostics) err << path << ':' << lang::format(d) << '\n';
            throw Exit{loaded.stage == lang::LoadStage::Syntax ? kIoOrSyntax : kSemantic};
    }
    if (!profile) return std::move(*loaded.graph);
    return lang::apply_profile(*loaded.graph, *profile);
}

std::string read_text(const std::string& path, std::ostream& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(err, kIoOrSyntax, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out, std::ostream& err) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) fail(err, kIoOrSyntax, "cannot write '" + path + "'");
    file << text;
    file.close();
    if (!file) fail(err, kIoOrSyntax, "cannot write '" + path + "'");
}

std::vector<WindowEvidence> load_windows(const bayes::BayesianNetwork& bn, const std::string& obs_path,
                                         std::ostream& err) {
    std::istringstream in(read_text(obs_path, err));
    std::vector<std::size_t> lines;
    std::vector<sim::ObservationRecord> records;
    try {
        records = sim::read_observations_csv(in, &lines);
    } catch (const FormatError& e) {
        fail(err, kIoOrSyntax, obs_path + ": " + e.what());
    }
    try {
        return group_windows(bn, records, lines);
    } catch (const EvidenceError& e) {
        fail(err, kSemantic, obs_path + ": " + e.what());
    }
}

struct Options {
    std::string file;
    std::optional<std::string> profile;
    std::string out = "-";
    std::string obs;
    std::vector<std::string> entities;
    double threshold = 0.5;
    std::optional<std::string> virtual_path;
    bool alarm_exit = false;
    std::optional<std::string> json_path;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::string out_obs;
    std::string out_truth;
    std::size_t top = 3;
};

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
    auto loaded = lang::load_file(o.file);
    if (loaded.stage == lang::LoadStage::Io) fail(err, kIoOrSyntax, loaded.io_error);
    if (!loaded.ok()) {
        for (const auto& d : loaded.diagnostics) err << o.file << ':' << lang::format(d) << '\n';
        return loaded.stage == lang::LoadStage::Syntax ? kIoOrSyntax : kSemantic;
    }
    out << "ok: " << loaded.statement_count << " statements\n";
    return kOk;
}

int cmd_compile(const Options& o, std::ostream& out, std::ostream& err) {
    const auto kg = load_graph(o.file, o.profile, err);
    const auto bn = compiler::compile(kg);
    write_text(o.out, bayes::to_json(bn), out, err);
    if (o.out != "-") out << "wrote " << bn.size() << " nodes to " << o.out << '\n';
    return kOk;
}

int cmd_infer(const Options& o, std::ostream& out, std::ostream& err) {
    const auto kg = load_graph(o.file, o.profile, err);
    const auto bn = compiler::compile(kg);
    const auto windows = load_windows(bn, o.obs, err);

    std::map<std::string, std::vector<double>> virtual_evidence;
    if (o.virtual_path) {
        try {
            virtual_evidence = parse_virtual_evidence(bn, read_text(*o.virtual_path, err));
        } catch (const FormatError& e) {
            fail(err, kIoOrSyntax, *o.virtual_path + ": " + e.what());
        }
    }

    auto report = build_report(kg, bn, windows, virtual_evidence, o.entities, o.threshold);
    report.profile = o.profile;
    write_report_text(out, report);
    if (o.json_path) write_text(*o.json_path, report_json(report), out, err);
    return o.alarm_exit && report.any_alarm() ? kAlarm : kOk;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
    const auto kg = load_graph(o.file, o.profile, err);
    const auto data = sim::simulate_dataset(kg, o.trials, o.seed);

    std::ostringstream obs;
    std::ostringstream truth;
    sim::write_observations_csv(obs, data.observations);
    sim::write_ground_truth_csv(truth, data.truth);
    write_text(o.out_obs, obs.str(), out, err);
    write_text(o.out_truth, truth.str(), out, err);
    out << "simulated " << o.trials << " windows: " << data.observations.size() << " observation rows\n";
    return kOk;
}

int cmd_explain(const Options& o, std::ostream& out, std::ostream& err) {
    const auto kg = load_graph(o.file, o.profile, err);
    const auto bn = compiler::compile(kg);
    const auto windows = load_windows(bn, o.obs, err);
    const auto causes = cause_nodes(bn);
    if (causes.size() > bayes::kMapWidthLimit) {
        fail(err, kSemantic,
             std::to_string(causes.size()) + " cause nodes exceed the limit of " +
                 std::to_string(bayes::kMapWidthLimit));
    }

    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    const auto flags = out.flags();
    out << std::fixed << std::setprecision(6);
    for (const auto& w : windows) {
        bayes::Evidence evidence;
        for (const auto& [sensor, cls] : w.observed) evidence.hard["sensor:" + sensor] = cls;
        std::vector<bayes::Explanation> ranked;
        try {
            ranked = bayes::top_assignments(bn, evidence, causes, o.top);
        } catch (const ImpossibleEvidence& e) {
            fail(err, kSemantic, "window '" + w.window_id + "': " + e.what());
        }

        out << "window " << w.window_id << '\n';
        nlohmann::ordered_json jw;
        jw["window_id"] = w.window_id;
        jw["explanations"] = nlohmann::ordered_json::array();
        for (std::size_t rank = 0; rank < ranked.size(); ++rank) {
            const auto& ex = ranked[rank];
            out << "  #" << rank + 1 << "  p=" << ex.probability << ' ';
            std::vector<std::string> active;
            for (std::size_t i = 0; i < causes.size(); ++i) {
                if (ex.states[i] != 0) active.push_back(causes[i] + '=' + bn.node(causes[i]).states[ex.states[i]]);
            }
            if (active.empty()) out << " (nothing present)";
            for (const auto& a : active) out << ' ' << a;
            out << '\n';

            nlohmann::ordered_json je;
            je["probability"] = ex.probability;
            je["assignment"] = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < causes.size(); ++i) {
                je["assignment"][causes[i]] = bn.node(causes[i]).states[ex.states[i]];
            }
            jw["explanations"].push_back(std::move(je));
        }
        doc.push_back(std::move(jw));
    }
    out.flags(flags);
    if (o.json_path) write_text(*o.json_path, doc.dump(2) + "\n", out, err);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Signal knowledge graphs: validate, compile, infer, simulate, explain"};
    app.name("skg");
    app.require_subcommand(1);

    Options o;
    auto add_file = [&](CLI::App* sub) { sub->add_option("file", o.file, ".skg knowledge graph")->required(); };
    auto add_profile = [&](CLI::App* sub) { sub->add_option("--profile", o.profile, "apply a named profile"); };

    auto* check = app.add_subcommand("check", "validate a knowledge graph");
    add_file(check);

    auto* compile = app.add_subcommand("compile", "compile to BN JSON");
    add_file(compile);
    add_profile(compile);
    compile->add_option("--out,-o", o.out, "output path, - for stdout");

    auto* infer = app.add_subcommand("infer", "posterior report for observation windows");
    add_file(infer);
    add_profile(infer);
    infer->add_option("--obs", o.obs, "observations CSV")->required();
    infer->add_option("--entity", o.entities, "entity of interest (repeatable)")->required();
    infer->add_option("--threshold", o.threshold, "alarm threshold")->check(CLI::Range(0.0, 1.0));
    infer->add_option("--virtual", o.virtual_path, "virtual evidence JSON sidecar");
    infer->add_flag("--alarm-exit", o.alarm_exit, "exit 3 when any window alarms");
    infer->add_option("--json", o.json_path, "write the JSON report here, - for stdout");

    auto* simulate = app.add_subcommand("simulate", "sample synthetic observation windows");
    add_file(simulate);
    add_profile(simulate);
    simulate->add_option("--trials", o.trials, "number of windows")->required();
    simulate->add_option("--seed", o.seed, "SplitMix64 seed");
    simulate->add_option("--out-obs", o.out_obs, "observations CSV path")->required();
    simulate->add_option("--out-truth", o.out_truth, "ground truth CSV path")->required();

    auto* explain = app.add_subcommand("explain", "rank joint cause assignments");
    add_file(explain);
    add_profile(explain);
    explain->add_option("--obs", o.obs, "observations CSV")->required();
    explain->add_option("--top", o.top, "number of assignments")->check(CLI::PositiveNumber);
    explain->add_option("--json", o.json_path, "write the ranking as JSON, - for stdout");

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kIoOrSyntax;
    }

    try {
        if (*check) return cmd_check(o, out, err);
        if (*compile) return cmd_compile(o, out, err);
        if (*infer) return cmd_infer(o, out, err);
        if (*simulate) return cmd_simulate(o, out, err);
        if (*explain) return cmd_explain(o, out, err);
    } catch (const Exit& e) {
        return e.code;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kIoOrSyntax;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kSemantic;
    }
    return kIoOrSyntax;
}

}  // namespace skg::cli
