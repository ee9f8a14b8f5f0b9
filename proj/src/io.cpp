#include "pcsf/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pcsf {

namespace {

using Json = nlohmann::ordered_json;

Rat rat_from_json(const Json& j, const char* what) {
    if (j.is_string()) return rat_parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    throw ParseError(std::string("expected exact ") + what +
                     " as a string or integer, got: " + j.dump());
}

PcInstance parse_json(const std::string& content) {
    Json j;
    try {
        j = Json::parse(content);
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(std::string("json: ") + err.what());
    }
    PcInstance inst;
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw ParseError("json: missing integer field \"n\"");
    inst.graph = WeightedGraph(j["n"].get<int>());
    if (j.contains("edges"))
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 3) throw ParseError("json: edge must be [u,v,\"len\"]");
            inst.graph.add_edge(e[0].get<int>(), e[1].get<int>(), rat_from_json(e[2], "edge length"));
        }
    bool has_pairs = j.contains("pairs") && !j["pairs"].empty();
    bool has_root = j.contains("root") && !j["root"].is_null();
    if (has_pairs && has_root) throw ParseError("json: both \"pairs\" and \"root\" present");
    if (has_root) {
        inst.kind = InstanceKind::Tree;
        inst.root = j["root"].get<int>();
        inst.vertex_penalty.assign(inst.graph.vertex_count(), Rat(0));
        if (j.contains("vertex_penalties"))
            for (const auto& p : j["vertex_penalties"]) {
                if (!p.is_array() || p.size() != 2)
                    throw ParseError("json: vertex penalty must be [v,\"pi\"]");
                int v = p[0].is_string() ? std::stoi(p[0].get<std::string>()) : p[0].get<int>();
                if (v < 0 || v >= inst.graph.vertex_count())
                    throw ParseError("json: vertex penalty for unknown vertex");
                inst.vertex_penalty[v] = rat_from_json(p[1], "penalty");
            }
    } else {
        inst.kind = InstanceKind::Forest;
        if (j.contains("pairs"))
            for (const auto& p : j["pairs"]) {
                if (!p.is_array() || p.size() != 3)
                    throw ParseError("json: pair must be [s,t,\"pi\"]");
                inst.pairs.push_back(
                    TerminalPair{p[0].get<int>(), p[1].get<int>(), rat_from_json(p[2], "penalty")});
            }
    }
    if (j.contains("rotation") && !j["rotation"].is_null()) {
        Rotation rot;
        for (const auto& row : j["rotation"]) rot.push_back(row.get<std::vector<int>>());
        inst.rotation = std::move(rot);
    }
    inst.validate();
    return inst;
}

std::string serialize_json(const PcInstance& inst) {
    Json j;
    j["n"] = inst.graph.vertex_count();
    j["edges"] = Json::array();
    for (const Edge& e : inst.graph.edges()) j["edges"].push_back({e.u, e.v, rat_str(e.length)});
    if (inst.kind == InstanceKind::Forest) {
        j["pairs"] = Json::array();
        for (const auto& p : inst.pairs) j["pairs"].push_back({p.s, p.t, rat_str(p.penalty)});
    } else {
        j["root"] = inst.root;
        j["vertex_penalties"] = Json::array();
        for (int v = 0; v < inst.graph.vertex_count(); ++v)
            if (inst.vertex_penalty[v] != 0)
                j["vertex_penalties"].push_back({v, rat_str(inst.vertex_penalty[v])});
    }
    if (inst.rotation) {
        j["rotation"] = Json::array();
        for (const auto& row : *inst.rotation) j["rotation"].push_back(row);
    }
    return j.dump(2) + "\n";
}

struct StpLine {
    int number;
    std::string keyword;
    std::vector<std::string> args;
};

[[noreturn]] void stp_fail(int line, const std::string& msg) {
    std::ostringstream os;
    os << "stp line " << line << ": " << msg;
    throw ParseError(os.str());
}

PcInstance parse_stp(const std::string& content) {
    std::istringstream in(content);
    std::string raw;
    std::vector<StpLine> lines;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        std::istringstream ls(raw);
        StpLine line;
        line.number = number;
        if (!(ls >> line.keyword)) continue;
        if (line.keyword[0] == '#') continue;
        std::string tok;
        while (ls >> tok) line.args.push_back(tok);
        lines.push_back(std::move(line));
    }

    PcInstance inst;
    int declared_edges = -1;
    bool have_nodes = false;
    bool tree_mode = false;
    std::vector<std::pair<int, Rat>> term_penalties;
    int root = -1;
    std::size_t i = 0;
    auto vertex_arg = [&](const StpLine& l, std::size_t k) {
        int v = 0;
        try {
            v = std::stoi(l.args.at(k));
        } catch (...) {
            stp_fail(l.number, "expected a vertex index");
        }
        if (!have_nodes || v < 1 || v > inst.graph.vertex_count())
            stp_fail(l.number, "vertex index out of range");
        return v - 1;  // file is 1-indexed
    };
    for (; i < lines.size(); ++i) {
        const StpLine& l = lines[i];
        const std::string& kw = l.keyword;
        if (kw == "EOF") break;
        if (kw == "SECTION" || kw == "Section" || kw == "END" || kw == "End") continue;
        if (kw == "Name" || kw == "Creator" || kw == "Remark" || kw.rfind("33D", 0) == 0) continue;
        if (kw == "Nodes") {
            if (l.args.empty()) stp_fail(l.number, "Nodes needs a count");
            inst.graph = WeightedGraph(std::stoi(l.args[0]));
            have_nodes = true;
        } else if (kw == "Edges") {
            if (l.args.empty()) stp_fail(l.number, "Edges needs a count");
            declared_edges = std::stoi(l.args[0]);
        } else if (kw == "E") {
            if (l.args.size() != 3) stp_fail(l.number, "E needs: u v length");
            int u = vertex_arg(l, 0), v = vertex_arg(l, 1);
            Rat len;
            try {
                len = rat_parse(l.args[2]);
            } catch (const ParseError& err) {
                stp_fail(l.number, err.what());
            }
            inst.graph.add_edge(u, v, len);
        } else if (kw == "P") {
            if (l.args.size() != 3) stp_fail(l.number, "P needs: s t penalty");
            int s = vertex_arg(l, 0), t = vertex_arg(l, 1);
            Rat pi;
            try {
                pi = rat_parse(l.args[2]);
            } catch (const ParseError& err) {
                stp_fail(l.number, err.what());
            }
            inst.pairs.push_back(TerminalPair{s, t, pi});
        } else if (kw == "Root" || kw == "RootP") {
            if (l.args.empty()) stp_fail(l.number, "Root needs a vertex");
            root = vertex_arg(l, 0);
            tree_mode = true;
        } else if (kw == "TP") {
            if (l.args.size() != 2) stp_fail(l.number, "TP needs: v penalty");
            int v = vertex_arg(l, 0);
            Rat pi;
            try {
                pi = rat_parse(l.args[1]);
            } catch (const ParseError& err) {
                stp_fail(l.number, err.what());
            }
            term_penalties.emplace_back(v, pi);
            tree_mode = true;
        } else {
            stp_fail(l.number, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_nodes) throw ParseError("stp: missing SECTION Graph / Nodes");
    if (declared_edges >= 0 && declared_edges != inst.graph.edge_count())
        throw ParseError("stp: Edges count disagrees with E lines");
    if (tree_mode) {
        if (root < 0) throw ParseError("stp: TP lines without a Root");
        if (!inst.pairs.empty()) throw ParseError("stp: both P and TP sections present");
        inst.kind = InstanceKind::Tree;
        inst.root = root;
        inst.vertex_penalty.assign(inst.graph.vertex_count(), Rat(0));
        for (auto& [v, pi] : term_penalties) inst.vertex_penalty[v] = pi;
    } else {
        inst.kind = InstanceKind::Forest;
    }
    inst.validate();
    return inst;
}

std::string serialize_stp(const PcInstance& inst) {
    std::ostringstream os;
    os << "33D32945 STP File, STP Format Version 1.0\n\n";
    os << "SECTION Graph\n";
    os << "Nodes " << inst.graph.vertex_count() << "\n";
    os << "Edges " << inst.graph.edge_count() << "\n";
    for (const Edge& e : inst.graph.edges())
        os << "E " << e.u + 1 << " " << e.v + 1 << " " << rat_str(e.length) << "\n";
    os << "END\n\n";
    if (inst.kind == InstanceKind::Forest) {
        os << "SECTION PrizePairs\n";
        for (const auto& p : inst.pairs)
            os << "P " << p.s + 1 << " " << p.t + 1 << " " << rat_str(p.penalty) << "\n";
        os << "END\n\n";
    } else {
        os << "SECTION Terminals\n";
        os << "Root " << inst.root + 1 << "\n";
        for (int v = 0; v < inst.graph.vertex_count(); ++v)
            if (inst.vertex_penalty[v] != 0)
                os << "TP " << v + 1 << " " << rat_str(inst.vertex_penalty[v]) << "\n";
        os << "END\n\n";
    }
    os << "EOF\n";
    return os.str();
}

}  // namespace

PcInstance parse_instance(const std::string& content, FileFormat format) {
    return format == FileFormat::Json ? parse_json(content) : parse_stp(content);
}

PcInstance parse_instance(const std::string& content) {
    for (char c : content) {
        if (c == ' ' || c == '\n' || c == '\t' || c == '\r') continue;
        return c == '{' ? parse_json(content) : parse_stp(content);
    }
    throw ParseError("empty instance file");
}

std::string serialize_instance(const PcInstance& inst, FileFormat format) {
    return format == FileFormat::Json ? serialize_json(inst) : serialize_stp(inst);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << content;
}

PcInstance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

void save_instance(const PcInstance& inst, const std::string& path, FileFormat format) {
    write_file(path, serialize_instance(inst, format));
}

}  // namespace pcsf
