#pragma once

#include <string>
#include <utility>
#include <vector>

namespace anneal {

// Simple undirected graph; vertices 0..n-1, no self-loops or parallel edges.
class Graph {
  public:
    Graph(int n, std::vector<std::pair<int, int>> edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    const std::vector<int>& incident_edges(int v) const { return inc_[v]; }
    int max_degree() const;
    bool connected() const;

    // Text format: header "n m", then one "u v" pair per line, 0-indexed.
    static Graph load(const std::string& path);

    static Graph path(int n);      // P_n
    static Graph cycle(int n);     // C_n
    static Graph complete(int n);  // K_n

  private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;  // neighbor vertices
    std::vector<std::vector<int>> inc_;  // incident edge ids
};

// Union-find over n elements; used for connected components of edge subsets.
class UnionFind {
  public:
    explicit UnionFind(int n) : parent_(n), rank_(n, 0), components_(n) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }
    int find(int v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        --components_;
        return true;
    }
    int components() const { return components_; }

  private:
    std::vector<int> parent_;
    std::vector<int> rank_;
    int components_;
};

}  // namespace anneal
