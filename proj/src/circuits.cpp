#include "softgait/circuits.hpp"

#include <algorithm>
#include <list>
#include <string>

namespace softgait {

StateDigraph StateDigraph::complete(int k) {
    if (k < 1) throw InputError("digraph needs at least one node");
    StateDigraph g;
    g.node_count = k;
    g.adjacency.assign(static_cast<std::size_t>(k) * k, 1);
    return g;
}

StateDigraph StateDigraph::empty(int k) {
    if (k < 1) throw InputError("digraph needs at least one node");
    StateDigraph g;
    g.node_count = k;
    g.adjacency.assign(static_cast<std::size_t>(k) * k, 0);
    return g;
}

PeriodicGait PeriodicGait::canonical(std::vector<int> cycle) {
    if (cycle.size() < 2 || cycle.front() != cycle.back())
        throw InputError("periodic gait must close on its first state");
    cycle.pop_back();
    const auto min_it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), min_it, cycle.end());
    cycle.push_back(cycle.front());
    return PeriodicGait{std::move(cycle)};
}

std::uint64_t circuit_count_closed_form(int k, std::uint64_t limit) {
    if (k < 1) throw InputError("closed form requires K >= 1");

    const auto capacity_error = [&] {
        return CapacityError("circuit count for K=" + std::to_string(k) +
                             " exceeds limit " + std::to_string(limit));
    };

    // Sum over circuit lengths len = 1..K of C(K, len) * (len-1)!.
    std::uint64_t total = 0;
    for (int len = 1; len <= k; ++len) {
        unsigned __int128 term = 1;
        for (int i = 0; i < len; ++i) { // C(K, len), factor by factor
            term = term * static_cast<unsigned>(k - i) / (i + 1);
            // The sum has a C(K, i+1)-sized term of its own, so exceeding
            // the limit here already decides the outcome.
            if (term > limit) throw capacity_error();
        }
        for (int f = 2; f < len; ++f) {
            term *= static_cast<unsigned>(f);
            if (term > limit) throw capacity_error();
        }
        if (term > limit || total + static_cast<std::uint64_t>(term) > limit)
            throw capacity_error();
        total += static_cast<std::uint64_t>(term);
    }
    return total;
}

namespace {

// Johnson 1975 circuit enumeration on a loop-free digraph.
class JohnsonEnumerator {
public:
    JohnsonEnumerator(const StateDigraph& graph, std::uint64_t limit,
                      std::vector<PeriodicGait>& out)
        : n_(graph.node_count), graph_(graph), limit_(limit), out_(out) {}

    void run() {
        for (start_ = 0; start_ < n_; ++start_) {
            // Subgraph induced by vertices >= start_ restricted to the
            // strongly connected component of start_.
            if (!component_of_start()) continue;
            blocked_.assign(n_, false);
            block_map_.assign(n_, {});
            stack_.clear();
            circuit(start_);
        }
    }

private:
    bool component_of_start() {
        scc_id_.assign(n_, -1);
        index_.assign(n_, -1);
        low_.assign(n_, 0);
        on_stack_.assign(n_, false);
        tarjan_stack_.clear();
        next_index_ = 0;
        next_scc_ = 0;
        for (int v = start_; v < n_; ++v)
            if (index_[v] < 0) tarjan(v);
        // Keep only vertices in start_'s component.
        in_component_.assign(n_, false);
        int members = 0;
        for (int v = start_; v < n_; ++v)
            if (scc_id_[v] == scc_id_[start_]) {
                in_component_[v] = true;
                ++members;
            }
        return members > 1; // self-loops are emitted by the pre-pass
    }

    void tarjan(int v) {
        index_[v] = low_[v] = next_index_++;
        tarjan_stack_.push_back(v);
        on_stack_[v] = true;
        for (int w = start_; w < n_; ++w) {
            if (w == v || !graph_.edge(v, w)) continue;
            if (index_[w] < 0) {
                tarjan(w);
                low_[v] = std::min(low_[v], low_[w]);
            } else if (on_stack_[w]) {
                low_[v] = std::min(low_[v], index_[w]);
            }
        }
        if (low_[v] == index_[v]) {
            int w;
            do {
                w = tarjan_stack_.back();
                tarjan_stack_.pop_back();
                on_stack_[w] = false;
                scc_id_[w] = next_scc_;
            } while (w != v);
            ++next_scc_;
        }
    }

    bool circuit(int v) {
        bool found = false;
        stack_.push_back(v);
        blocked_[v] = true;
        for (int w = start_; w < n_; ++w) {
            if (w == v || !graph_.edge(v, w) || !in_component_[w]) continue;
            if (w == start_) {
                emit();
                found = true;
            } else if (!blocked_[w]) {
                if (circuit(w)) found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (int w = start_; w < n_; ++w) {
                if (w == v || !graph_.edge(v, w) || !in_component_[w]) continue;
                auto& preds = block_map_[w];
                if (std::find(preds.begin(), preds.end(), v) == preds.end())
                    preds.push_back(v);
            }
        }
        stack_.pop_back();
        return found;
    }

    void unblock(int v) {
        blocked_[v] = false;
        auto pending = std::move(block_map_[v]);
        block_map_[v].clear();
        for (int w : pending)
            if (blocked_[w]) unblock(w);
    }

    void emit() {
        if (out_.size() + 1 > limit_)
            throw CapacityError("circuit enumeration exceeds limit " +
                                std::to_string(limit_));
        std::vector<int> cycle = stack_;
        cycle.push_back(start_);
        out_.push_back(PeriodicGait{std::move(cycle)});
    }

    int n_;
    const StateDigraph& graph_;
    std::uint64_t limit_;
    std::vector<PeriodicGait>& out_;

    int start_ = 0;
    std::vector<int> stack_;
    std::vector<bool> blocked_;
    std::vector<std::vector<int>> block_map_;
    std::vector<bool> in_component_;

    std::vector<int> scc_id_, index_, low_;
    std::vector<bool> on_stack_;
    std::vector<int> tarjan_stack_;
    int next_index_ = 0, next_scc_ = 0;
};

} // namespace

std::vector<PeriodicGait> enumerate_circuits(const StateDigraph& graph,
                                             std::uint64_t limit) {
    if (graph.node_count < 1) throw InputError("digraph needs at least one node");
    if (graph.adjacency.size() !=
        static_cast<std::size_t>(graph.node_count) * graph.node_count)
        throw InputError("digraph adjacency is not K x K");
    // Complete-digraph projection bounds the circuit count of any subgraph.
    circuit_count_closed_form(graph.node_count, limit);

    std::vector<PeriodicGait> circuits;

    // Self-loop pre-pass: Johnson's formulation assumes a loop-free graph.
    for (int v = 0; v < graph.node_count; ++v)
        if (graph.edge(v, v)) circuits.push_back(PeriodicGait{{v, v}});

    JohnsonEnumerator(graph, limit, circuits).run();

    // Johnson emits each circuit starting at its smallest vertex, which is
    // already the canonical rotation.
    std::sort(circuits.begin(), circuits.end(),
              [](const PeriodicGait& a, const PeriodicGait& b) {
                  if (a.length() != b.length()) return a.length() < b.length();
                  return a.states < b.states;
              });
    return circuits;
}

} // namespace softgait
