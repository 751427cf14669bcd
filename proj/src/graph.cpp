#include "anneal/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "anneal/errors.hpp"

namespace anneal {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)), adj_(n), inc_(n) {
    if (n <= 0) throw InvalidParameter("graph needs at least one vertex");
    std::set<std::pair<int, int>> seen;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        auto [u, v] = edges_[e];
        if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidParameter("edge endpoint out of range");
        if (u == v) throw InvalidParameter("self-loops are not allowed");
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second) throw InvalidParameter("parallel edges are not allowed");
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        inc_[u].push_back(static_cast<int>(e));
        inc_[v].push_back(static_cast<int>(e));
    }
}

int Graph::max_degree() const {
    std::size_t d = 0;
    for (const auto& a : adj_) d = std::max(d, a.size());
    return static_cast<int>(d);
}

bool Graph::connected() const {
    UnionFind uf(n_);
    for (const auto& [u, v] : edges_) uf.unite(u, v);
    return uf.components() == 1;
}

Graph Graph::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open graph file: " + path);
    std::string line;
    int n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int a, b;
        if (!(ls >> a >> b)) continue;
        if (n < 0) {
            n = a;
            m = b;
        } else {
            edges.emplace_back(a, b);
        }
    }
    if (n < 0) throw ParseError("graph file missing 'n m' header: " + path);
    if (static_cast<int>(edges.size()) != m)
        throw ParseError("graph file edge count does not match header: " + path);
    return Graph(n, std::move(edges));
}

Graph Graph::path(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, std::move(edges));
}

Graph Graph::cycle(int n) {
    if (n < 3) throw InvalidParameter("cycle needs at least three vertices");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(edges));
}

Graph Graph::complete(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph(n, std::move(edges));
}

}  // namespace anneal
