#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "interkernel/analysis.hpp"
#include "interkernel/denotational.hpp"
#include "interkernel/dsl.hpp"
#include "interkernel/errors.hpp"
#include "interkernel/harness.hpp"
#include "interkernel/operational.hpp"

namespace interkernel::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::vector<std::string> models;
    std::string model_file;
    std::vector<std::string> traces;
    std::string trace_file;
    std::string sig;
    std::string format = "text";
    std::size_t bound = 4;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, sep);) {
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::optional<Signature> signature_option(const Options& o) {
    if (o.sig.empty()) return std::nullopt;
    const auto slash = o.sig.find('/');
    if (slash == std::string::npos) throw UsageError("--sig expects LIFELINES/MESSAGES, e.g. a,b/m1,m2");
    return Signature(split(o.sig.substr(0, slash), ','), split(o.sig.substr(slash + 1), ','));
}

Signature merged_signature(const std::vector<Interaction>& models) {
    std::vector<std::string> lifelines, messages;
    for (const auto& m : models) {
        const Signature s = infer_signature(m);
        for (const auto& l : s.lifelines()) {
            if (std::find(lifelines.begin(), lifelines.end(), l) == lifelines.end()) lifelines.push_back(l);
        }
        for (const auto& x : s.messages()) {
            if (std::find(messages.begin(), messages.end(), x) == messages.end()) messages.push_back(x);
        }
    }
    std::sort(lifelines.begin(), lifelines.end());
    std::sort(messages.begin(), messages.end());
    return Signature(lifelines, messages);
}

std::vector<Interaction> load_models(const Options& o, const std::optional<Signature>& sig) {
    std::vector<std::string> texts = o.models;
    if (!o.model_file.empty()) {
        std::ifstream in(o.model_file);
        if (!in) throw UsageError("cannot open model file " + o.model_file);
        for (std::string line; std::getline(in, line);) {
            line = trim(line);
            if (!line.empty() && line.front() != '#') texts.push_back(line);
        }
    }
    std::vector<Interaction> models;
    for (const auto& t : texts) models.push_back(sig ? parse_interaction(t, *sig) : parse_interaction(t));
    return models;
}

Interaction load_single_model(const Options& o, const std::optional<Signature>& sig) {
    if (!o.models.empty() && !o.model_file.empty()) throw UsageError("give either --model or --model-file");
    auto models = load_models(o, sig);
    if (models.size() != 1) throw UsageError("expected exactly one model, got " + std::to_string(models.size()));
    return models.front();
}

std::vector<Trace> load_traces(const Options& o) {
    std::vector<Trace> traces;
    for (const auto& t : o.traces) traces.push_back(t == "eps" ? Trace{} : parse_trace(t));
    if (!o.trace_file.empty()) {
        auto more = read_traces_file(o.trace_file);
        traces.insert(traces.end(), more.begin(), more.end());
    }
    return traces;
}

void check_format(const Options& o) {
    if (o.format != "text" && o.format != "tsv" && o.format != "jsonl") {
        throw UsageError("--format must be text, tsv or jsonl");
    }
}

void print_traces(std::ostream& out, const TraceSet& traces, const std::string& format) {
    for (const auto& t : traces) {
        const std::string text = print_trace(t);
        if (format == "jsonl") {
            out << nlohmann::json{{"trace", text}}.dump() << '\n';
        } else if (format == "text" && t.empty()) {
            out << "<eps>\n";
        } else {
            out << text << '\n';
        }
    }
}

std::string positions_text(const std::vector<Position>& ps) {
    std::string s;
    for (const auto& p : ps) {
        if (!s.empty()) s += ' ';
        s += p.is_root() ? "eps" : p.to_string();
    }
    return s;
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::Covered: return 0;
        case Verdict::TooShort: return 1;
        case Verdict::TooLong: return 2;
        case Verdict::Out: return 3;
    }
    return 3;
}

void add_model_options(CLI::App* cmd, Options& o) {
    cmd->add_option("-m,--model", o.models, "Interaction term, e.g. \"seq(a!m,b?m)\"");
    cmd->add_option("--model-file", o.model_file, "File with one interaction per line ('#' starts a comment)");
    cmd->add_option("--sig", o.sig, "Signature LIFELINES/MESSAGES, e.g. a,b/m1,m2 (default: inferred)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Interaction semantics engine and trace analyzer"};
    app.name("interkernel");
    app.require_subcommand(1);
    app.footer(
        "analyze exit status: 0 Covered, 1 TooShort, 2 TooLong, 3 Out (worst verdict over all traces).\n"
        "Other exit codes: 64 usage error, 65 malformed input, 70 internal error.\n"
        "INTERKERNEL_SEED overrides --seed.");

    auto* parse_cmd = app.add_subcommand("parse", "Parse a model and print its canonical form");
    add_model_options(parse_cmd, o);

    std::string method = "unfold";
    bool literal_empty = false;
    auto* sem_cmd = app.add_subcommand("semantics", "Print the bounded trace semantics");
    add_model_options(sem_cmd, o);
    sem_cmd->add_option("--method", method, "unfold (denotational) or operational")
        ->check(CLI::IsMember({"unfold", "operational"}));
    sem_cmd->add_option("--bound", o.bound, "Maximum number of loop unfoldings")->capture_default_str();
    sem_cmd->add_option("--format", o.format, "text, tsv or jsonl")->capture_default_str();
    sem_cmd->add_flag("--literal-empty", literal_empty, "Use ord(0) = {} instead of {(0,0)} (unfold method only)");

    auto* front_cmd = app.add_subcommand("frontier", "Print the frontier positions");
    add_model_options(front_cmd, o);

    std::optional<std::string> step_position;
    auto* step_cmd = app.add_subcommand("step", "List the steps, or execute the one at --position");
    add_model_options(step_cmd, o);
    step_cmd->add_option("--position", step_position, "Frontier position (digits, or eps for the root)");

    std::string lifeline;
    auto* prune_cmd = app.add_subcommand("prune", "Prune a model on a lifeline");
    add_model_options(prune_cmd, o);
    prune_cmd->add_option("--lifeline", lifeline, "Lifeline to prune")->required();

    bool witness = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "Compute the verdict of traces against a model");
    add_model_options(analyze_cmd, o);
    analyze_cmd->add_option("-t,--trace", o.traces, "Dot-separated trace; eps for the empty trace");
    analyze_cmd->add_option("--trace-file", o.trace_file, "File with one trace per line");
    analyze_cmd->add_option("--format", o.format, "text, tsv or jsonl")->capture_default_str();
    analyze_cmd->add_flag("--witness", witness, "Print the witness path (text format)");

    EnumSpec espec;
    std::size_t sample = 0;
    std::size_t cap = kDefaultTraceCap;
    auto* diff_cmd = app.add_subcommand("diff", "Compare the two semantics on models or an enumeration");
    add_model_options(diff_cmd, o);
    diff_cmd->add_option("--bound", o.bound, "Maximum number of loop unfoldings")->capture_default_str();
    auto* diff_l = diff_cmd->add_option("--lifelines", espec.n_lifelines, "Enumerate over this many lifelines");
    diff_cmd->add_option("--messages", espec.n_messages, "Enumerate over this many messages")->needs(diff_l);
    diff_cmd->add_option("--depth", espec.depth, "Enumeration depth")->needs(diff_l);
    diff_cmd->add_option("--sample", sample, "Seeded sample size (0 = all enumerated terms)");
    diff_cmd->add_option("--cap", cap, "Trace-set cap per semantics")->capture_default_str();
    diff_cmd->add_option("--seed", o.seed, "Sampling seed");
    diff_cmd->add_option("--jobs", o.jobs, "Worker threads");
    diff_cmd->add_option("--format", o.format, "text, tsv or jsonl")->capture_default_str();

    bool count_only = false;
    auto* enum_cmd = app.add_subcommand("enumerate", "Enumerate interactions by depth");
    enum_cmd->add_option("--lifelines", espec.n_lifelines, "Number of lifelines")->required();
    enum_cmd->add_option("--messages", espec.n_messages, "Number of messages")->required();
    enum_cmd->add_option("--depth", espec.depth, "Maximum depth")->required();
    enum_cmd->add_flag("--count-only", count_only, "Print the number of terms of each exact depth");

    ConcordanceConfig cconf;
    std::size_t n_models = 100;
    std::string mismatch_path;
    auto* mutate_cmd = app.add_subcommand("mutate", "Check analyzer verdicts against oracle-classified mutants");
    add_model_options(mutate_cmd, o);
    auto* mut_l = mutate_cmd->add_option("--lifelines", espec.n_lifelines, "Sample models over this many lifelines");
    mutate_cmd->add_option("--messages", espec.n_messages, "Sample models over this many messages")->needs(mut_l);
    mutate_cmd->add_option("--depth", espec.depth, "Maximum model depth")->needs(mut_l);
    mutate_cmd->add_option("--models", n_models, "Number of sampled models")->capture_default_str();
    mutate_cmd->add_option("--bound", cconf.bound, "Unfoldings used to sample accepted traces")->capture_default_str();
    mutate_cmd->add_option("--samples", cconf.samples, "Accepted traces per model")->capture_default_str();
    mutate_cmd->add_option("--additions", cconf.mutants.additions, "Addition mutants per accepted trace")
        ->capture_default_str();
    mutate_cmd->add_option("--replacements", cconf.mutants.replacements, "Replacement mutants per accepted trace")
        ->capture_default_str();
    mutate_cmd->add_option("--seed", o.seed, "Sampling seed");
    mutate_cmd->add_option("--jobs", o.jobs, "Worker threads");
    mutate_cmd->add_option("--mismatches", mismatch_path, "Write the JSON-lines mismatch log here");

    std::size_t instances = 10, n_traces = 20;
    auto* bench_cmd = app.add_subcommand("bench", "Time trace analysis on every prefix (default: MQTT-style model)");
    add_model_options(bench_cmd, o);
    bench_cmd->add_option("--trace-file", o.trace_file, "Traces to analyze instead of generated ones");
    bench_cmd->add_option("--instances", instances, "Concurrent loopPar instances per trace")->capture_default_str();
    bench_cmd->add_option("--traces", n_traces, "Number of generated traces")->capture_default_str();
    bench_cmd->add_option("--seed", o.seed, "Generation seed");

    std::vector<std::string> argv_storage{"interkernel"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitUsage;
    }
    if (const char* env = std::getenv("INTERKERNEL_SEED")) {
        try {
            o.seed = std::stoull(env);
        } catch (const std::exception&) {
            err << "INTERKERNEL_SEED must be an unsigned integer\n";
            return kExitUsage;
        }
    }

    try {
        check_format(o);
        const auto sig = signature_option(o);

        if (*parse_cmd) {
            for (const auto& m : load_models(o, sig)) out << print_interaction(m) << '\n';
            return 0;
        }
        if (*sem_cmd) {
            const Interaction model = load_single_model(o, sig);
            if (literal_empty && method != "unfold") throw UsageError("--literal-empty applies to --method unfold");
            const TraceSet traces =
                method == "unfold"
                    ? sigma_u(model, o.bound, kNoTraceCap, literal_empty ? EmptyOrdering::Literal : EmptyOrdering::Repaired)
                    : sigma_o(model, o.bound);
            print_traces(out, traces, o.format);
            return 0;
        }
        if (*front_cmd) {
            out << positions_text(frontier(load_single_model(o, sig))) << '\n';
            return 0;
        }
        if (*step_cmd) {
            const Interaction model = load_single_model(o, sig);
            if (step_position) {
                const Position p = Position::parse(*step_position);
                out << print_interaction(execute(model, p)) << '\n';
            } else {
                for (const auto& s : steps(model)) {
                    out << (s.position.is_root() ? "eps" : s.position.to_string()) << '\t' << s.action.to_string()
                        << '\t' << print_interaction(s.next) << '\n';
                }
            }
            return 0;
        }
        if (*prune_cmd) {
            const PruneResult r = prune(load_single_model(o, sig), lifeline);
            out << print_interaction(r.pruned) << '\t' << (r.eliminated ? "eliminated" : "kept") << '\n';
            return 0;
        }
        if (*analyze_cmd) {
            const Interaction model = load_single_model(o, sig);
            const auto traces = load_traces(o);
            if (traces.empty()) throw UsageError("analyze needs --trace or --trace-file");
            Verdict worst = Verdict::Covered;
            for (const auto& t : traces) {
                const AnalysisReport r = sig ? analyze(model, t, *sig) : analyze(model, t);
                worst = std::min(worst, r.verdict);
                if (o.format == "jsonl") {
                    nlohmann::json j{{"trace", print_trace(t)},
                                     {"verdict", std::string(to_string(r.verdict))},
                                     {"explored_nodes", r.explored_nodes}};
                    if (r.witness) {
                        auto& w = j["witness"] = nlohmann::json::array();
                        for (const auto& step : *r.witness) {
                            w.push_back({{"position", step.position.to_string()},
                                         {"next", print_interaction(step.next)}});
                        }
                    }
                    out << j.dump() << '\n';
                } else if (o.format == "tsv") {
                    out << print_trace(t) << '\t' << to_string(r.verdict) << '\t' << r.explored_nodes << '\n';
                } else {
                    out << to_string(r.verdict) << '\n';
                    if (witness && r.witness) {
                        for (const auto& step : *r.witness) {
                            out << "  " << (step.position.is_root() ? "eps" : step.position.to_string()) << " -> "
                                << print_interaction(step.next) << '\n';
                        }
                    }
                }
            }
            return exit_code(worst);
        }
        if (*diff_cmd) {
            std::vector<Interaction> terms;
            if (*diff_l) {
                if (!o.models.empty() || !o.model_file.empty()) throw UsageError("give models or an enumeration, not both");
                const Enumerator en(espec);
                terms = sample_interactions(en, sample == 0 ? en.size() : sample, o.seed);
            } else {
                terms = load_models(o, sig);
                if (terms.empty()) throw UsageError("diff needs models or --lifelines/--messages/--depth");
            }
            const BackToBackSummary s = back_to_back(terms, o.bound, o.jobs, cap);
            for (const auto& d : s.mismatches) {
                if (o.format == "jsonl") {
                    nlohmann::json j{{"model", print_interaction(d.interaction)}, {"bound", d.bound}};
                    for (const auto& t : d.only_u) j["only_unfold"].push_back(print_trace(t));
                    for (const auto& t : d.only_o) j["only_operational"].push_back(print_trace(t));
                    out << j.dump() << '\n';
                } else {
                    out << print_interaction(d.interaction) << "\tdiffers\n";
                    for (const auto& t : d.only_u) out << "  unfold only\t" << print_trace(t) << '\n';
                    for (const auto& t : d.only_o) out << "  operational only\t" << print_trace(t) << '\n';
                }
            }
            if (o.format != "jsonl") {
                out << "checked\t" << s.checked << "\nresource_limited\t" << s.resource_limited << "\nmismatches\t"
                    << s.mismatches.size() << '\n';
            }
            return s.mismatches.empty() ? 0 : 1;
        }
        if (*enum_cmd) {
            if (count_only) {
                const auto counts = count_by_depth(espec);
                for (std::size_t k = 0; k < counts.size(); ++k) out << (k ? " " : "") << counts[k];
                out << '\n';
            } else {
                Enumerator(espec).for_each([&](const Interaction& i) {
                    out << print_interaction(i) << '\n';
                    return true;
                });
            }
            return 0;
        }
        if (*mutate_cmd) {
            std::vector<Interaction> models;
            Signature msig = Signature::generic(1, 1);
            if (*mut_l) {
                if (!o.models.empty() || !o.model_file.empty()) throw UsageError("give models or an enumeration, not both");
                const Enumerator en(espec);
                models = sample_interactions(en, n_models, o.seed);
                msig = sig ? *sig : espec.signature();
            } else {
                models = load_models(o, sig);
                if (models.empty()) throw UsageError("mutate needs models or --lifelines/--messages/--depth");
                msig = sig ? *sig : merged_signature(models);
            }
            cconf.seed = o.seed;
            cconf.jobs = o.jobs;
            const ConcordanceReport r = concordance(models, msig, cconf);
            write_concordance_tsv(out, r);
            out << "# models " << r.models << ", skipped " << r.skipped_models << ", traces " << r.traces
                << ", mismatches " << r.mismatches.size() << ", membership checked " << r.membership_checked
                << ", membership mismatches " << r.membership_mismatches.size() << '\n';
            if (!mismatch_path.empty()) {
                std::ofstream log(mismatch_path);
                if (!log) throw UsageError("cannot write " + mismatch_path);
                write_mismatches_jsonl(log, r.mismatches);
                write_mismatches_jsonl(log, r.membership_mismatches);
            }
            return r.mismatches.empty() && r.membership_mismatches.empty() ? 0 : 1;
        }
        if (*bench_cmd) {
            const bool custom = !o.models.empty() || !o.model_file.empty();
            const Interaction model = custom ? load_single_model(o, sig) : mqtt_model();
            const auto traces = o.trace_file.empty() ? generate_concurrent_traces(model, instances, n_traces, o.seed)
                                                     : read_traces_file(o.trace_file);
            write_bench_tsv(out, bench_trace_analysis(model, traces));
            return 0;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const SignatureError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const PositionOutOfRange& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const NotInFrontier& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}

}  // namespace interkernel::cli
