#include "spdiff/experiment.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "spdiff/error.hpp"
#include "spdiff/generators.hpp"
#include "spdiff/io.hpp"
#include "spdiff/properties.hpp"

namespace spdiff {

namespace {

using json = nlohmann::json;

constexpr std::string_view kSearchNote =
    "verdicts that are not refuted hold on the searched space only; they are not proofs";
constexpr std::size_t kMaxListedWinners = 64;

const std::vector<std::string> kCommands{"enumerate", "rules", "check", "table1", "diffuse", "spread", "generate"};

template <typename T>
T require(std::optional<T> value, const std::string& field, const std::string& text) {
    if (!value) throw UsageError(field + ": unknown value '" + text + "'");
    return *value;
}

bool open_case(RuleKind rule, Property property) {
    return property == Property::SPP && (rule == RuleKind::Copeland || rule == RuleKind::Dodgson);
}

json profile_json(const Profile& p, const Axis& axis) { return serialize_profile(p, axis); }

json witness_json(const Witness& w) {
    const Axis axis = Axis::canonical(w.profile.num_candidates());
    json offending = json::array();
    for (const auto& r : w.offending) offending.push_back(format_ranking(r, axis));
    return {{"profile", profile_json(w.profile, axis)}, {"reason", w.reason}, {"offending", offending}};
}

json score_json(const ScoreTrace& t, const Axis& axis) {
    json scores = json::object();
    if (t.values.size() == static_cast<std::size_t>(axis.size())) {
        for (Candidate c = 0; c < axis.size(); ++c) {
            const auto v = t.values[static_cast<std::size_t>(c)];
            if (t.denominator == 1) {
                scores[axis.name(c)] = v;
            } else {
                scores[axis.name(c)] = static_cast<double>(v) / t.denominator;
            }
        }
    } else if (!t.values.empty()) {
        scores["profile"] = t.values.front();
    }
    return {{"metric", t.metric}, {"values", scores}};
}

std::string score_text(std::int64_t v, int denominator) {
    if (denominator == 1) return std::to_string(v);
    std::ostringstream ss;
    ss << static_cast<double>(v) / denominator;
    return ss.str();
}

// Either loaded from --net or generated from graph family, n, m, p, seed.
PreferenceNetwork load_network(const ExperimentConfig& cfg) {
    if (!cfg.net_file.empty()) return parse_network(read_file(cfg.net_file));
    return generate_sp_network(*parse_graph_family(cfg.graph), cfg.n, cfg.m, cfg.p, cfg.seed);
}

ProfileFile load_profile(const ExperimentConfig& cfg) {
    if (!cfg.profile_file.empty()) return parse_profile(read_file(cfg.profile_file));
    return {Axis::canonical(cfg.m), generate_sp_profile(cfg.m, cfg.n, cfg.seed)};
}

// ---------------------------------------------------------------------------

ExperimentReport cmd_enumerate(const ExperimentConfig& cfg) {
    const Axis axis = Axis::canonical(cfg.m);
    const auto seq = enumerate_sp_rankings(axis);
    ExperimentReport rep;
    std::vector<std::string> failures;
    const std::size_t expected = std::size_t{1} << (cfg.m - 1);
    if (seq.rankings.size() != expected) failures.push_back("length differs from 2^(m-1)");
    for (std::size_t i = 0; i < seq.rankings.size(); ++i) {
        if (!is_single_peaked(seq.rankings[i], axis)) failures.push_back("ranking " + std::to_string(i) + " not single-peaked");
        for (std::size_t j = 0; j < i; ++j) {
            if (seq.rankings[i] == seq.rankings[j]) failures.push_back("ranking " + std::to_string(i) + " repeated");
        }
    }
    for (int pos = 0; pos + 1 < cfg.m; ++pos) {
        const std::size_t h = seq.thresholds[static_cast<std::size_t>(pos)];
        for (std::size_t i = 0; i < seq.rankings.size(); ++i) {
            const Ranking& r = seq.rankings[i];
            const bool left_first = r.prefers(axis.at(pos), axis.at(pos + 1));
            const bool peak_left = axis.position(r.peak()) <= pos;
            if (left_first != (i < h) || peak_left != (i < h)) {
                failures.push_back("threshold of pair " + std::to_string(pos) + " fails at ranking " + std::to_string(i));
                break;
            }
        }
    }

    json rankings = json::array();
    std::string tsv = "index\tranking\tpeak\n";
    std::ostringstream text;
    for (std::size_t i = 0; i < seq.rankings.size(); ++i) {
        const auto s = format_ranking(seq.rankings[i], axis);
        rankings.push_back(s);
        tsv += std::to_string(i + 1) + "\t" + s + "\t" + axis.name(seq.rankings[i].peak()) + "\n";
        text << std::setw(6) << i + 1 << "  " << s << "\n";
    }
    json thresholds = json::array();
    for (int pos = 0; pos + 1 < cfg.m; ++pos) {
        const auto h = seq.thresholds[static_cast<std::size_t>(pos)];
        thresholds.push_back({{"pair", {axis.name(axis.at(pos)), axis.name(axis.at(pos + 1))}}, {"h", h}});
        text << "threshold " << axis.name(axis.at(pos)) << "/" << axis.name(axis.at(pos + 1)) << ": " << h << "\n";
    }
    rep.body = {{"m", cfg.m},           {"count", seq.rankings.size()}, {"rankings", rankings},
                {"thresholds", thresholds}, {"failures", failures}};
    rep.exit_code = failures.empty() ? 0 : 1;
    for (const auto& f : failures) text << "FAILED: " << f << "\n";
    rep.text = text.str();
    rep.tables.push_back({"sequence.tsv", tsv});
    return rep;
}

ExperimentReport cmd_rules(const ExperimentConfig& cfg) {
    const auto [axis, profile] = load_profile(cfg);
    std::vector<RuleKind> rules;
    if (cfg.rule == "all") {
        rules.assign(all_rules().begin(), all_rules().end());
    } else {
        rules.push_back(*parse_rule(cfg.rule));
    }
    ExperimentReport rep;
    std::ostringstream text;
    std::string tsv = "rule\tcandidate\tscore\n";
    json results = json::array();
    text << serialize_profile(profile, axis);
    for (RuleKind rule : rules) {
        json entry = {{"rule", rule_name(rule)}};
        text << "\n" << rule_name(rule) << ":\n";
        try {
            const auto outcome = evaluate(rule, profile, &axis);
            entry["scores"] = score_json(outcome.trace(), axis);
            entry["winner_count"] = outcome.size();
            entry["single_peaked_winner"] = outcome.any_single_peaked(axis);
            const auto& t = outcome.trace();
            if (t.values.size() == static_cast<std::size_t>(axis.size())) {
                text << "  " << t.metric << ":";
                for (Candidate c = 0; c < axis.size(); ++c) {
                    const auto s = score_text(t.values[static_cast<std::size_t>(c)], t.denominator);
                    text << " " << axis.name(c) << "=" << s;
                    tsv += std::string(rule_name(rule)) + "\t" + axis.name(c) + "\t" + s + "\n";
                }
                text << "\n";
            } else if (!t.values.empty()) {
                text << "  " << t.metric << ": " << t.values.front() << "\n";
            }
            json winners = json::array();
            if (outcome.size() <= kMaxListedWinners) {
                for (const auto& r : outcome.winners()) {
                    winners.push_back(format_ranking(r, axis));
                    text << "  " << format_ranking(r, axis) << "\n";
                }
            } else {
                text << "  " << outcome.size() << " winning rankings\n";
            }
            entry["winners"] = winners;
        } catch (const std::exception& e) {
            entry["error"] = e.what();
            text << "  error: " << e.what() << "\n";
        }
        results.push_back(entry);
    }
    rep.body = {{"profile", profile_json(profile, axis)}, {"results", results}};
    rep.text = text.str();
    rep.tables.push_back({"scores.tsv", tsv});
    return rep;
}

ExperimentReport cmd_check(const ExperimentConfig& cfg) {
    const RuleKind rule = *parse_rule(cfg.rule);
    const Property property = *parse_property(cfg.property);
    const SearchSpace space{cfg.m, cfg.n, cfg.exact};
    const auto verdict = check_property(rule, property, space);

    ExperimentReport rep;
    std::ostringstream text;
    json witnesses = json::array();
    bool refuted = verdict.verdict == Verdict::Refuted;
    text << rule_name(rule) << " " << property_name(property) << " over " << verdict.profiles_checked
         << " profiles: " << verdict_name(verdict.verdict) << "\n";
    if (verdict.witness) {
        text << "  " << verdict.witness->reason << "\n"
             << serialize_profile(verdict.witness->profile, Axis::canonical(verdict.witness->profile.num_candidates()));
    }
    if (cfg.fixed_witnesses) {
        for (const auto& w : fixed_witnesses()) {
            if (w.rule != rule || w.property != property) continue;
            const auto violation = find_violation(rule, property, w.profile, Axis::canonical(w.profile.num_candidates()));
            refuted = refuted || violation.has_value();
            witnesses.push_back({{"name", w.name}, {"refutes", violation.has_value()},
                                 {"profile", profile_json(w.profile, Axis::canonical(w.profile.num_candidates()))},
                                 {"reason", violation ? violation->reason : ""}});
            text << "  fixed witness " << w.name << ": " << (violation ? "refutes (" + violation->reason + ")" : "no violation")
                 << "\n";
        }
    }
    text << "result: " << (refuted ? "refuted" : "holds-on-searched-space") << "\n" << kSearchNote << "\n";
    rep.body = {{"rule", rule_name(rule)},
                {"property", property_name(property)},
                {"space", {{"m", space.max_m}, {"n", space.max_n}, {"exact", space.exact}}},
                {"profiles_checked", verdict.profiles_checked},
                {"search_verdict", verdict_name(verdict.verdict)},
                {"witness", verdict.witness ? witness_json(*verdict.witness) : json(nullptr)},
                {"fixed_witnesses", witnesses},
                {"verdict", refuted ? "refuted" : "holds-on-searched-space"},
                {"asserted_only", table1_cell_asserted_only(rule, property)},
                {"open_case", open_case(rule, property)},
                {"note", kSearchNote}};
    rep.exit_code = refuted ? 1 : 0;
    rep.text = text.str();
    return rep;
}

ExperimentReport cmd_table1(const ExperimentConfig& cfg) {
    const SearchSpace space{cfg.m, cfg.n, cfg.exact};
    const auto report = table1_report(space, cfg.fixed_witnesses);
    ExperimentReport rep;
    std::ostringstream text;
    std::string tsv = "rule\tproperty\texpected\tsearch\tfixed_witnesses\tmark\tagrees\n";
    json rows = json::array();
    text << std::left << std::setw(14) << "rule";
    for (auto p : all_properties()) text << std::setw(6) << property_name(p);
    text << "\n";
    for (RuleKind rule : table_rules()) {
        json cells = json::object();
        text << std::setw(14) << rule_name(rule);
        for (Property property : all_properties()) {
            const auto& cell = report.cell(rule, property);
            const std::string mark = cell.refuted() ? "x" : "ok";
            text << std::setw(6) << (mark + (cell.agrees() ? "" : "!") + (cell.asserted_only ? "*" : ""));
            cells[std::string(property_name(property))] = {
                {"expected", cell.expected_holds ? "holds" : "refuted"},
                {"search_verdict", verdict_name(cell.search.verdict)},
                {"profiles_checked", cell.search.profiles_checked},
                {"witness", cell.search.witness ? witness_json(*cell.search.witness) : json(nullptr)},
                {"fixed_witnesses", cell.refuting_witnesses},
                {"failed_fixed_witnesses", cell.failed_witnesses},
                {"result", cell.refuted() ? "refuted" : "holds-on-searched-space"},
                {"agrees", cell.agrees()},
                {"asserted_only", cell.asserted_only},
                {"open_case", open_case(rule, property)},
            };
            std::string fixed;
            for (const auto& w : cell.refuting_witnesses) fixed += (fixed.empty() ? "" : ",") + w;
            tsv += std::string(rule_name(rule)) + "\t" + std::string(property_name(property)) + "\t" +
                   (cell.expected_holds ? "holds" : "refuted") + "\t" + std::string(verdict_name(cell.search.verdict)) +
                   "\t" + (fixed.empty() ? "-" : fixed) + "\t" + mark + "\t" + (cell.agrees() ? "yes" : "no") + "\n";
        }
        text << "\n";
        rows.push_back({{"rule", rule_name(rule)}, {"cells", cells}});
    }
    text << "x = refuted (search or fixed witness), ok = holds on searched space, ! = disagrees with the table, "
            "* = expected verdict has no proof or counterexample to re-check\n"
         << "space: m <= " << cfg.m << ", n <= " << cfg.n << (cfg.exact ? " (exact)" : "") << "\n"
         << kSearchNote << "\n"
         << (report.all_agree() ? "all cells agree" : "SOME CELLS DISAGREE") << "\n";
    rep.body = {{"space", {{"m", space.max_m}, {"n", space.max_n}, {"exact", space.exact}}},
                {"fixed_witnesses", cfg.fixed_witnesses},
                {"rows", rows},
                {"all_agree", report.all_agree()},
                {"note", kSearchNote}};
    rep.exit_code = report.all_agree() ? 0 : 1;
    rep.text = text.str();
    rep.tables.push_back({"table1.tsv", tsv});
    return rep;
}

ExperimentReport cmd_diffuse(const ExperimentConfig& cfg) {
    const PreferenceNetwork net = load_network(cfg);
    const RuleKind rule = *parse_rule(cfg.rule);
    Scheduler scheduler{*parse_scheduler(cfg.scheduler), cfg.seed, {}};
    for (VoterId id : cfg.sequence) {
        const auto v = net.find(id);
        if (!v) throw UsageError("sequence: unknown voter " + std::to_string(id));
        scheduler.sequence.push_back(*v);
    }
    const auto result = run(net, rule, scheduler, cfg.max_steps);
    const auto cycle = detect_update_cycle(result.trace);
    const bool asserted = net.mode() == OpinionMode::SinglePeaked && (rule == RuleKind::Kemeny || rule == RuleKind::Mmc);

    const Potentials start = compute_potentials(net);
    const Potentials end = compute_potentials(result.final_network);
    std::string tsv = "step\tvoter\tedge_kt\tpeak_distance\n0\t-\t" + std::to_string(start.edge_kt) + "\t" +
                      std::to_string(start.peak_distance) + "\n";
    for (const auto& ev : result.trace.events) {
        tsv += std::to_string(ev.step + 1) + "\t" + std::to_string(net.ids()[static_cast<std::size_t>(ev.voter)]) + "\t" +
               std::to_string(ev.potential_after.edge_kt) + "\t" + std::to_string(ev.potential_after.peak_distance) + "\n";
    }

    ExperimentReport rep;
    json body = {{"rule", rule_name(rule)},
                 {"scheduler", scheduler_name(scheduler.kind)},
                 {"seed", cfg.seed},
                 {"voters", net.num_voters()},
                 {"edges", net.graph().num_edges()},
                 {"candidates", net.axis().size()},
                 {"status", run_status_name(result.status)},
                 {"steps", result.steps},
                 {"stable", stable_state(result.final_network, rule)},
                 {"potential_start", {{"edge_kt", start.edge_kt}, {"peak_distance", start.peak_distance}}},
                 {"potential_end", {{"edge_kt", end.edge_kt}, {"peak_distance", end.peak_distance}}},
                 {"violations", result.violations},
                 {"cycle", cycle ? json{{"first_seen_step", cycle->first_seen_step}, {"repeat_step", cycle->repeat_step}}
                                 : json(nullptr)}};
    if (rule == RuleKind::Kemeny) {
        body["kemeny_step_bound"] = net.graph().num_edges() * static_cast<std::size_t>(pair_count(net.axis().size()));
    }
    rep.body = body;
    const bool failed = !result.violations.empty() || (asserted && (cycle || result.status == RunStatus::TimedOut));
    rep.exit_code = failed ? 1 : 0;

    std::ostringstream text;
    text << rule_name(rule) << " with " << scheduler_name(scheduler.kind) << " scheduler: "
         << run_status_name(result.status) << " after " << result.steps << " updates\n"
         << "edge-KT " << start.edge_kt << " -> " << end.edge_kt << ", peak distance " << start.peak_distance << " -> "
         << end.peak_distance << "\n";
    if (cycle) text << "update cycle: state after " << cycle->first_seen_step << " updates reappears after "
                    << cycle->repeat_step << "\n";
    for (const auto& v : result.violations) text << "VIOLATION: " << v << "\n";
    text << serialize_network(result.final_network);
    rep.text = text.str();
    rep.tables.push_back({"potentials.tsv", tsv});
    rep.files.emplace_back("trace.jsonl", serialize_trace(result.trace, net));
    rep.files.emplace_back("final.net", serialize_network(result.final_network));
    return rep;
}

ExperimentReport cmd_spread(const ExperimentConfig& cfg) {
    const PreferenceNetwork net = load_network(cfg);
    const RuleKind rule = *parse_rule(cfg.rule);
    const Extreme target = *parse_extreme(cfg.target);
    SpreadOptions options;
    options.order = cfg.order == "descending" ? SpreadOrder::Descending : SpreadOrder::Ascending;
    options.phase3_max_steps = cfg.max_steps;
    const auto res = greedy_spread(net, rule, target, options);

    auto ids_of = [&](const std::vector<Vertex>& vs) {
        std::vector<VoterId> out;
        for (Vertex v : vs) out.push_back(net.ids()[static_cast<std::size_t>(v)]);
        return out;
    };
    json sequence = json::array();
    std::string seq_tsv = "index\tphase\tvoter\tbefore\tafter\n";
    for (std::size_t i = 0; i < res.sequence.size(); ++i) {
        const auto& s = res.sequence[i];
        const auto id = net.ids()[static_cast<std::size_t>(s.voter)];
        const auto before = format_ranking(s.before, net.axis());
        const auto after = format_ranking(s.after, net.axis());
        sequence.push_back({{"phase", s.phase}, {"voter", id}, {"before", before}, {"after", after}});
        seq_tsv += std::to_string(i + 1) + "\t" + std::to_string(s.phase) + "\t" + std::to_string(id) + "\t" + before +
                   "\t" + after + "\n";
    }

    ExperimentReport rep;
    bool failed = !res.violations.empty() || (!res.converged && rule != RuleKind::WeakDodgson);
    json oracle = nullptr;
    std::string oracle_cell = "NA";
    if (cfg.oracle) {
        const auto o = brute_force_spread(net, rule, target, cfg.oracle_states);
        oracle = {{"max_stable_target", o.max_stable_target},
                  {"max_fully_stable_target", o.max_fully_stable_target},
                  {"states_explored", o.states_explored},
                  {"matches", o.max_stable_target == static_cast<int>(res.v_star.size())}};
        oracle_cell = std::to_string(o.max_stable_target);
        failed = failed || o.max_stable_target != static_cast<int>(res.v_star.size());
    }
    const Potentials end = compute_potentials(res.final_network);
    rep.body = {{"rule", rule_name(rule)},
                {"target", extreme_name(target)},
                {"target_ranking", format_ranking(res.target_ranking, net.axis())},
                {"order", cfg.order},
                {"voters", net.num_voters()},
                {"edges", net.graph().num_edges()},
                {"v_star", ids_of(res.v_star)},
                {"final_target_holders", ids_of(res.final_target_holders)},
                {"converged", res.converged},
                {"phase12_changes", res.phase12_changes},
                {"max_changes_per_voter", res.max_changes_per_voter},
                {"rule_evaluations", res.rule_evaluations},
                {"evaluation_ceiling", res.evaluation_ceiling},
                {"tie_break_gaps", res.tie_break_gaps},
                {"potential_end", {{"edge_kt", end.edge_kt}, {"peak_distance", end.peak_distance}}},
                {"sequence", sequence},
                {"violations", res.violations},
                {"oracle", oracle}};
    rep.exit_code = failed ? 1 : 0;

    std::ostringstream text;
    text << "target " << format_ranking(res.target_ranking, net.axis()) << " under " << rule_name(rule) << ": |V*| = "
         << res.v_star.size() << " of " << net.num_voters() << " (" << res.phase12_changes << " changes in phases 1-2, "
         << res.sequence.size() << " in total)\n";
    if (!res.converged) text << "phase 3 hit the step cap; network not stable\n";
    if (cfg.oracle) text << "oracle optimum: " << oracle_cell << "\n";
    for (const auto& v : res.violations) text << "VIOLATION: " << v << "\n";
    rep.text = text.str();
    rep.tables.push_back({"spread.tsv", "vertices\tedges\tv_star\toracle\n" + std::to_string(net.num_voters()) + "\t" +
                                            std::to_string(net.graph().num_edges()) + "\t" +
                                            std::to_string(res.v_star.size()) + "\t" + oracle_cell + "\n"});
    rep.tables.push_back({"sequence.tsv", seq_tsv});
    rep.files.emplace_back("final.net", serialize_network(res.final_network));
    return rep;
}

ExperimentReport cmd_generate(const ExperimentConfig& cfg) {
    ExperimentReport rep;
    if (cfg.kind == "profile") {
        rep.text = serialize_profile(generate_sp_profile(cfg.m, cfg.n, cfg.seed), Axis::canonical(cfg.m));
        rep.files.emplace_back("profile.txt", rep.text);
    } else {
        rep.text = serialize_network(generate_sp_network(*parse_graph_family(cfg.graph), cfg.n, cfg.m, cfg.p, cfg.seed));
        rep.files.emplace_back("network.txt", rep.text);
    }
    rep.body = {{"kind", cfg.kind}, {"content", rep.text}};
    return rep;
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

}  // namespace

json ExperimentConfig::to_json() const {
    return {{"command", command},   {"rule", rule},
            {"property", property}, {"m", m},
            {"n", n},               {"exact", exact},
            {"fixed_witnesses", fixed_witnesses},
            {"graph", graph},       {"p", p},
            {"seed", seed},         {"scheduler", scheduler},
            {"sequence", sequence}, {"max_steps", max_steps},
            {"target", target},     {"order", order},
            {"oracle", oracle},     {"oracle_states", oracle_states},
            {"kind", kind},         {"net", net_file},
            {"profile", profile_file}};
}

void validate(const ExperimentConfig& cfg) {
    if (std::find(kCommands.begin(), kCommands.end(), cfg.command) == kCommands.end()) {
        throw UsageError("command: unknown command '" + cfg.command + "'");
    }
    if (cfg.m < 1 || cfg.m > kMaxEnumerationCandidates) {
        throw UsageError("m: must lie in [1, " + std::to_string(kMaxEnumerationCandidates) + "]");
    }
    if (cfg.n < 0) throw UsageError("n: must be non-negative");
    if (!(cfg.rule == "all" && cfg.command == "rules")) require(parse_rule(cfg.rule), "rule", cfg.rule);
    require(parse_property(cfg.property), "property", cfg.property);
    require(parse_graph_family(cfg.graph), "graph", cfg.graph);
    require(parse_scheduler(cfg.scheduler), "scheduler", cfg.scheduler);
    require(parse_extreme(cfg.target), "target", cfg.target);
    if (cfg.order != "ascending" && cfg.order != "descending") throw UsageError("order: use ascending or descending");
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw UsageError("p: must lie in [0, 1]");
    if (cfg.max_steps == 0) throw UsageError("max-steps: must be positive");
    if (cfg.oracle_states == 0) throw UsageError("oracle-states: must be positive");
    if (cfg.kind != "profile" && cfg.kind != "network") throw UsageError("kind: use profile or network");
    if ((cfg.command == "check" || cfg.command == "table1") && cfg.n < 1) throw UsageError("n: must be at least 1");
    if (cfg.command == "diffuse" && cfg.scheduler == "explicit" && cfg.sequence.empty()) {
        throw UsageError("sequence: the explicit scheduler needs an activation sequence");
    }
    if (cfg.command == "spread" && !spread_rule_supported(*parse_rule(cfg.rule))) {
        throw UsageError("rule: spread supports kemeny, mmc and weak-dodgson");
    }
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    if (cfg.command == "enumerate") return cmd_enumerate(cfg);
    if (cfg.command == "rules") return cmd_rules(cfg);
    if (cfg.command == "check") return cmd_check(cfg);
    if (cfg.command == "table1") return cmd_table1(cfg);
    if (cfg.command == "diffuse") return cmd_diffuse(cfg);
    if (cfg.command == "spread") return cmd_spread(cfg);
    return cmd_generate(cfg);
}

std::string write_run_directory(const std::string& out_dir, const ExperimentConfig& cfg,
                                const ExperimentReport& report) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    fs::path dir;
    for (int i = 1;; ++i) {
        std::ostringstream name;
        name << cfg.command << "-" << std::setw(4) << std::setfill('0') << i;
        dir = fs::path(out_dir) / name.str();
        if (fs::create_directory(dir)) break;
    }
    const json doc = {{"header", {{"timestamp", timestamp()}, {"command", cfg.command}}},
                      {"config", cfg.to_json()},
                      {"exit_code", report.exit_code},
                      {"body", report.body}};
    write_file((dir / "report.json").string(), doc.dump(2) + "\n");
    for (const auto& t : report.tables) write_file((dir / t.name).string(), t.tsv);
    for (const auto& [name, content] : report.files) write_file((dir / name).string(), content);
    return dir.string();
}

}  // namespace spdiff
