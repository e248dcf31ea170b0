#include "spdiff/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "spdiff/error.hpp"

namespace spdiff {

namespace {

using json = nlohmann::json;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool valid_name(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.';
    });
}

std::vector<std::string_view> split_names(std::string_view text) {
    if (text.find_first_of("=,") != std::string_view::npos) {
        throw ParseError(0, "ties are not allowed in a ranking");
    }
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto gt = text.find('>', start);
        const auto token = trim(text.substr(start, gt == std::string_view::npos ? gt : gt - start));
        if (!valid_name(token)) throw ParseError(0, "bad candidate name '" + std::string(token) + "'");
        out.push_back(token);
        if (gt == std::string_view::npos) break;
        start = gt + 1;
    }
    return out;
}

template <typename T>
bool parse_uint(std::string_view s, T& out) {
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

// Non-blank, non-comment lines with their 1-based numbers.
std::vector<std::pair<int, std::string_view>> content_lines(std::string_view text) {
    std::vector<std::pair<int, std::string_view>> out;
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        auto line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        ++number;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) out.emplace_back(number, line);
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    return out;
}

template <typename F>
auto at_line(int line, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError& e) {
        if (e.line() != 0) throw;
        const std::string msg = e.what();
        throw ParseError(line, msg.substr(msg.find(": ") + 2));
    } catch (const DomainError& e) {
        throw ParseError(line, e.what());
    }
}

Axis parse_axis_line(const std::vector<std::pair<int, std::string_view>>& lines) {
    if (lines.empty()) throw ParseError(1, "missing 'axis:' header");
    const auto [number, line] = lines.front();
    if (!line.starts_with("axis:")) throw ParseError(number, "first line must be the 'axis:' header");
    return at_line(number, [&] {
        std::vector<std::string> names;
        for (auto token : split_names(line.substr(5))) names.emplace_back(token);
        auto sorted = names;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw ParseError(0, "duplicate candidate on the axis");
        }
        return Axis(std::move(names));
    });
}

std::string axis_line(const Axis& axis) { return "axis: " + format_ranking(axis.ascending(), axis) + "\n"; }

}  // namespace

std::string format_ranking(const Ranking& r, const Axis& axis) {
    std::string out;
    for (int i = 0; i < r.size(); ++i) {
        if (i > 0) out += " > ";
        out += axis.name(r.at(i));
    }
    return out;
}

Ranking parse_ranking(std::string_view text, const Axis& axis) {
    const auto tokens = split_names(text);
    if (static_cast<int>(tokens.size()) != axis.size()) {
        throw ParseError(0, "ranking lists " + std::to_string(tokens.size()) + " candidates, axis has " +
                                std::to_string(axis.size()));
    }
    std::vector<Candidate> order;
    for (auto token : tokens) {
        const auto c = axis.find(token);
        if (!c) throw ParseError(0, "unknown candidate '" + std::string(token) + "'");
        order.push_back(*c);
    }
    try {
        return Ranking(std::move(order));
    } catch (const DomainError&) {
        throw ParseError(0, "ranking repeats a candidate");
    }
}

ProfileFile parse_profile(std::string_view text) {
    const auto lines = content_lines(text);
    ProfileFile out{parse_axis_line(lines), Profile{}};
    out.profile = Profile(out.axis.size());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto [number, line] = lines[i];
        at_line(number, [&] {
            int count = 1;
            std::string_view body = line;
            // "COUNT x ranking"
            const auto space = line.find_first_of(" \t");
            if (space != std::string_view::npos && std::isdigit(static_cast<unsigned char>(line.front()))) {
                const auto rest = trim(line.substr(space));
                if (rest.starts_with("x ") || rest.starts_with("x\t")) {
                    if (!parse_uint(line.substr(0, space), count) || count < 1) {
                        throw ParseError(0, "bad voter count");
                    }
                    body = rest.substr(2);
                }
            }
            out.profile.add(parse_ranking(body, out.axis), count);
        });
    }
    return out;
}

std::string serialize_profile(const Profile& p, const Axis& axis) {
    if (p.num_candidates() != axis.size()) throw DomainError("serialize_profile: axis/profile size mismatch");
    std::string out = axis_line(axis);
    for (int v = 0; v < p.size();) {
        int run = 1;
        while (v + run < p.size() && p[v + run] == p[v]) ++run;
        if (run > 1) out += std::to_string(run) + " x ";
        out += format_ranking(p[v], axis) + "\n";
        v += run;
    }
    return out;
}

PreferenceNetwork parse_network(std::string_view text) {
    const auto lines = content_lines(text);
    Axis axis = parse_axis_line(lines);
    OpinionMode mode = OpinionMode::SinglePeaked;
    std::map<VoterId, std::pair<int, Ranking>> voters;
    std::vector<std::pair<int, std::pair<VoterId, VoterId>>> edges;

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto [number, line] = lines[i];
        at_line(number, [&] {
            if (line.starts_with("mode:")) {
                const auto value = trim(line.substr(5));
                if (value == "free") {
                    mode = OpinionMode::Free;
                } else if (value == "single-peaked") {
                    mode = OpinionMode::SinglePeaked;
                } else {
                    throw ParseError(0, "mode must be 'single-peaked' or 'free'");
                }
                return;
            }
            if (const auto dash = line.find("--"); dash != std::string_view::npos) {
                VoterId a = 0;
                VoterId b = 0;
                if (!parse_uint(trim(line.substr(0, dash)), a) || !parse_uint(trim(line.substr(dash + 2)), b)) {
                    throw ParseError(0, "edge lines look like 'ID -- ID'");
                }
                edges.push_back({number, {a, b}});
                return;
            }
            const auto colon = line.find(':');
            VoterId id = 0;
            if (colon == std::string_view::npos || !parse_uint(trim(line.substr(0, colon)), id)) {
                throw ParseError(0, "expected 'ID: ranking' or 'ID -- ID'");
            }
            if (voters.contains(id)) throw ParseError(0, "voter " + std::to_string(id) + " declared twice");
            voters.emplace(id, std::pair{number, parse_ranking(line.substr(colon + 1), axis)});
        });
    }

    std::vector<VoterId> ids;
    std::vector<Ranking> opinions;
    for (auto& [id, entry] : voters) {
        ids.push_back(id);
        opinions.push_back(entry.second);
    }
    Graph graph(static_cast<int>(ids.size()));
    auto index_of = [&](VoterId id, int number) {
        const auto it = std::lower_bound(ids.begin(), ids.end(), id);
        if (it == ids.end() || *it != id) throw ParseError(number, "edge mentions unknown voter " + std::to_string(id));
        return static_cast<Vertex>(it - ids.begin());
    };
    for (const auto& [number, e] : edges) {
        const Vertex u = index_of(e.first, number);
        const Vertex v = index_of(e.second, number);
        at_line(number, [&] { graph.add_edge(u, v); });
    }
    for (const auto& [id, entry] : voters) {
        if (mode == OpinionMode::SinglePeaked && !is_single_peaked(entry.second, axis)) {
            throw ParseError(entry.first, "opinion of voter " + std::to_string(id) +
                                              " is not single-peaked (use 'mode: free')");
        }
    }
    return PreferenceNetwork(std::move(axis), std::move(graph), std::move(opinions), mode, std::move(ids));
}

std::string serialize_network(const PreferenceNetwork& net) {
    std::string out = axis_line(net.axis());
    if (net.mode() == OpinionMode::Free) out += "mode: free\n";
    for (Vertex v = 0; v < net.num_voters(); ++v) {
        out += std::to_string(net.ids()[static_cast<std::size_t>(v)]) + ": " +
               format_ranking(net.opinion(v), net.axis()) + "\n";
    }
    for (const auto& [u, v] : net.graph().edges()) {
        out += std::to_string(net.ids()[static_cast<std::size_t>(u)]) + " -- " +
               std::to_string(net.ids()[static_cast<std::size_t>(v)]) + "\n";
    }
    return out;
}

std::string serialize_trace(const Trace& trace, const PreferenceNetwork& net) {
    const Axis& axis = net.axis();
    json header = {
        {"type", "header"},
        {"rule", std::string(rule_name(trace.rule))},
        {"scheduler", std::string(scheduler_name(trace.scheduler.kind))},
        {"seed", trace.scheduler.seed},
        {"axis", axis.names()},
        {"ids", net.ids()},
    };
    json sequence = json::array();
    for (Vertex v : trace.scheduler.sequence) sequence.push_back(net.ids().at(static_cast<std::size_t>(v)));
    header["sequence"] = sequence;
    json initial = json::array();
    for (const auto& r : trace.initial) initial.push_back(format_ranking(r, axis));
    header["initial"] = initial;

    std::string out = header.dump() + "\n";
    for (const auto& ev : trace.events) {
        const json record = {
            {"type", "event"},
            {"step", ev.step},
            {"voter", net.ids().at(static_cast<std::size_t>(ev.voter))},
            {"before", format_ranking(ev.before, axis)},
            {"after", format_ranking(ev.after, axis)},
            {"edge_kt_before", ev.potential_before.edge_kt},
            {"edge_kt_after", ev.potential_after.edge_kt},
            {"peak_distance_before", ev.potential_before.peak_distance},
            {"peak_distance_after", ev.potential_after.peak_distance},
        };
        out += record.dump() + "\n";
    }
    return out;
}

Trace parse_trace(std::string_view text, const PreferenceNetwork& net) {
    const auto lines = content_lines(text);
    if (lines.empty()) throw ParseError(1, "empty trace");
    const Axis& axis = net.axis();
    auto vertex_of = [&](VoterId id) {
        const auto v = net.find(id);
        if (!v) throw ParseError(0, "trace mentions unknown voter " + std::to_string(id));
        return *v;
    };

    Trace trace;
    for (const auto& [number, line] : lines) {
        at_line(number, [&] {
            json record;
            try {
                record = json::parse(line);
                const auto type = record.at("type").get<std::string>();
                if (number == lines.front().first) {
                    if (type != "header") throw ParseError(0, "first record must be the header");
                    const auto rule = parse_rule(record.at("rule").get<std::string>());
                    const auto kind = parse_scheduler(record.at("scheduler").get<std::string>());
                    if (!rule || !kind) throw ParseError(0, "unknown rule or scheduler");
                    if (record.at("axis").get<std::vector<std::string>>() != axis.names()) {
                        throw ParseError(0, "trace axis differs from the network axis");
                    }
                    if (record.at("ids").get<std::vector<VoterId>>() != net.ids()) {
                        throw ParseError(0, "trace voters differ from the network voters");
                    }
                    trace.rule = *rule;
                    trace.scheduler.kind = *kind;
                    trace.scheduler.seed = record.at("seed").get<std::uint64_t>();
                    for (const auto& id : record.at("sequence")) {
                        trace.scheduler.sequence.push_back(vertex_of(id.get<VoterId>()));
                    }
                    for (const auto& r : record.at("initial")) {
                        trace.initial.push_back(parse_ranking(r.get<std::string>(), axis));
                    }
                    if (static_cast<int>(trace.initial.size()) != net.num_voters()) {
                        throw ParseError(0, "initial state has the wrong number of voters");
                    }
                    return;
                }
                if (type != "event") throw ParseError(0, "unknown record type '" + type + "'");
                UpdateEvent ev;
                ev.step = record.at("step").get<std::size_t>();
                ev.voter = vertex_of(record.at("voter").get<VoterId>());
                ev.before = parse_ranking(record.at("before").get<std::string>(), axis);
                ev.after = parse_ranking(record.at("after").get<std::string>(), axis);
                ev.potential_before = {record.at("edge_kt_before").get<std::int64_t>(),
                                       record.at("peak_distance_before").get<std::int64_t>()};
                ev.potential_after = {record.at("edge_kt_after").get<std::int64_t>(),
                                      record.at("peak_distance_after").get<std::int64_t>()};
                trace.events.push_back(std::move(ev));
            } catch (const json::exception& e) {
                throw ParseError(0, e.what());
            }
        });
    }
    return trace;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace spdiff
