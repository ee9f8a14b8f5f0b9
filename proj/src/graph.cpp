#include "pcsf/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pcsf {

Rat rat_parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    std::string s = text;
    bool neg = false;
    std::size_t pos = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        pos = 1;
        if (s.size() == 1) throw ParseError("bare sign in rational literal: " + text);
    }
    auto digits_only = [](const std::string& d) {
        return !d.empty() && d.find_first_not_of("0123456789") == std::string::npos;
    };
    std::string body = s.substr(pos);
    Rat out;
    std::size_t slash = body.find('/');
    std::size_t dot = body.find('.');
    if (slash != std::string::npos) {
        std::string num = body.substr(0, slash), den = body.substr(slash + 1);
        if (!digits_only(num) || !digits_only(den)) throw ParseError("bad rational literal: " + text);
        out = Rat(mpz_class(num, 10), mpz_class(den, 10));
        if (out.get_den() == 0) throw ParseError("zero denominator: " + text);
        out.canonicalize();
    } else if (dot != std::string::npos) {
        std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (!digits_only(ip) || (!fp.empty() && !digits_only(fp)))
            throw ParseError("bad decimal literal: " + text);
        mpz_class scaled(ip + fp, 10);
        mpz_class den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        out = Rat(scaled, den);
        out.canonicalize();
    } else {
        if (!digits_only(body)) throw ParseError("bad integer literal: " + text);
        out = Rat(mpz_class(body, 10));
    }
    if (neg) out = -out;
    return out;
}

std::string rat_str(const Rat& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

int WeightedGraph::add_vertex() {
    incident_.emplace_back();
    return n_++;
}

int WeightedGraph::add_edge(int u, int v, Rat length) {
    int id = static_cast<int>(edges_.size());
    edges_.push_back(Edge{u, v, std::move(length)});
    incident_[u].push_back(id);
    if (v != u) incident_[v].push_back(id);
    return id;
}

bool WeightedGraph::has_parallel_or_loops() const {
    std::map<std::pair<int, int>, int> seen;
    for (const Edge& e : edges_) {
        if (e.u == e.v) return true;
        auto key = std::minmax(e.u, e.v);
        if (!seen.emplace(key, 1).second) return true;
    }
    return false;
}

Rat WeightedGraph::total_length(const std::vector<int>& edge_ids) const {
    Rat sum = 0;
    for (int e : edge_ids) sum += edges_[e].length;
    return sum;
}

void WeightedGraph::validate() const {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
            std::ostringstream os;
            os << "edge " << i << " has endpoint outside [0," << n_ << ")";
            throw ValidationError(os.str());
        }
        if (e.length < 0) {
            std::ostringstream os;
            os << "edge " << i << " has negative length " << rat_str(e.length);
            throw ValidationError(os.str());
        }
    }
    // Adjacency index must round-trip against the edge list.
    std::vector<std::vector<int>> expect(n_);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        expect[edges_[i].u].push_back(static_cast<int>(i));
        if (edges_[i].v != edges_[i].u) expect[edges_[i].v].push_back(static_cast<int>(i));
    }
    for (int v = 0; v < n_; ++v) {
        std::vector<int> got = incident_[v];
        std::vector<int> want = expect[v];
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        if (got != want) {
            std::ostringstream os;
            os << "adjacency index disagrees with edge list at vertex " << v;
            throw ValidationError(os.str());
        }
    }
}

WeightedGraph WeightedGraph::simplified(std::vector<int>* keep) const {
    WeightedGraph out(n_);
    if (keep) keep->clear();
    std::map<std::pair<int, int>, int> best;  // endpoints -> simplified edge id
    for (int e = 0; e < edge_count(); ++e) {
        const Edge& ed = edges_[e];
        if (ed.u == ed.v) continue;
        auto key = std::minmax(ed.u, ed.v);
        auto it = best.find(key);
        if (it == best.end()) {
            int id = out.add_edge(ed.u, ed.v, ed.length);
            best.emplace(key, id);
            if (keep) keep->push_back(e);
        } else if (ed.length < out.edge(it->second).length) {
            out.edges_[it->second].length = ed.length;
            if (keep) (*keep)[it->second] = e;
        }
    }
    return out;
}

}  // namespace pcsf
