// Test-only reference implementations, deliberately naive and independent of
// the library's enumeration and optimization paths.
#pragma once

#include <cmath>
#include <functional>
#include <set>
#include <vector>

#include "softgait/rewards.hpp"

namespace oracles {

// Every vertex-simple closed walk, found by plain DFS from each start node
// over vertices >= start, so each circuit appears exactly once, rooted at
// its smallest vertex. Returns closed sequences (first == last).
inline std::set<std::vector<int>>
naive_circuits(int node_count, const std::vector<char>& adjacency) {
    std::set<std::vector<int>> found;
    const auto edge = [&](int i, int j) {
        return adjacency[i * node_count + j] != 0;
    };

    for (int start = 0; start < node_count; ++start) {
        if (edge(start, start)) found.insert({start, start});

        std::vector<int> walk{start};
        std::vector<bool> visited(node_count, false);
        visited[start] = true;

        std::function<void(int)> extend = [&](int v) {
            for (int w = start + 1; w < node_count; ++w) {
                if (w == v || !edge(v, w) || visited[w]) continue;
                walk.push_back(w);
                visited[w] = true;
                if (edge(w, start)) {
                    std::vector<int> closed = walk;
                    closed.push_back(start);
                    found.insert(closed);
                }
                extend(w);
                visited[w] = false;
                walk.pop_back();
            }
        };
        extend(start);
    }
    return found;
}

inline std::set<std::vector<int>> naive_complete_circuits(int node_count) {
    return naive_circuits(node_count,
                          std::vector<char>(node_count * node_count, 1));
}

// Direct reward sums along a closed sequence.
struct NaiveEvaluation {
    std::vector<int> closed;
    double j_x = 0, j_y = 0, j_theta = 0;
};

inline NaiveEvaluation naive_sums(const std::vector<int>& closed,
                                  const softgait::RewardMatrices& m) {
    NaiveEvaluation e;
    e.closed = closed;
    for (std::size_t t = 1; t < closed.size(); ++t) {
        e.j_x += m.t_x.at(closed[t - 1], closed[t]);
        e.j_y += m.t_y.at(closed[t - 1], closed[t]);
        e.j_theta += m.t_theta.at(closed[t - 1], closed[t]);
    }
    return e;
}

// Brute-force argmax over every circuit of the complete digraph with
// self-loops. `task` is "+x", "+theta" or "-theta". Applies the same
// tie-break contract as the library: shorter circuit, then lexicographic.
inline NaiveEvaluation brute_force_best(const softgait::RewardMatrices& m,
                                        const std::string& task) {
    const int k = m.spec.state_count();
    const auto objective = [&](const NaiveEvaluation& e) {
        if (task == "+x") return e.j_x - (std::abs(e.j_y) + std::abs(e.j_theta));
        if (task == "+theta")
            return e.j_theta - (std::abs(e.j_x) + std::abs(e.j_y));
        return -e.j_theta - (std::abs(e.j_x) + std::abs(e.j_y));
    };

    bool have_best = false;
    NaiveEvaluation best;
    double best_obj = 0;
    for (const auto& closed : naive_complete_circuits(k)) {
        NaiveEvaluation e = naive_sums(closed, m);
        const double obj = objective(e);
        const auto better = [&] {
            if (obj != best_obj) return obj > best_obj;
            if (e.closed.size() != best.closed.size())
                return e.closed.size() < best.closed.size();
            return e.closed < best.closed;
        };
        if (!have_best || better()) {
            have_best = true;
            best = e;
            best_obj = obj;
        }
    }
    return best;
}

} // namespace oracles
