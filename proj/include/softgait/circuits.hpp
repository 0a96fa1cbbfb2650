#pragma once

#include <cstdint>
#include <vector>

#include "softgait/errors.hpp"

namespace softgait {

inline constexpr std::uint64_t kDefaultCircuitLimit = 1'000'000;

// Directed graph over the K robot states. The default construction is the
// complete digraph with self-loops: every actuator can switch its mechanism
// independently, so every direct transition is available.
struct StateDigraph {
    int node_count = 0;
    std::vector<char> adjacency; // row-major K x K edge presence

    static StateDigraph complete(int k);
    static StateDigraph empty(int k);

    bool edge(int from, int to) const {
        return adjacency[from * node_count + to] != 0;
    }
    void set_edge(int from, int to, bool present) {
        adjacency[from * node_count + to] = present ? 1 : 0;
    }
};

// An elementary circuit: first state equals last, no other repeats, every
// consecutive pair an edge. A self-loop is the length-1 case. Canonical
// form starts at the smallest state index.
struct PeriodicGait {
    std::vector<int> states; // length L+1, states.front() == states.back()

    int length() const { return static_cast<int>(states.size()) - 1; }

    // Rotates so the circuit starts at its smallest state index.
    static PeriodicGait canonical(std::vector<int> cycle_with_closure);

    bool operator==(const PeriodicGait&) const = default;
};

// Number of elementary circuits of the complete K-node digraph with
// self-loops: sum over circuit lengths of C(K, len) * (len-1)!.
// Exact integer arithmetic; throws CapacityError beyond `limit`.
std::uint64_t circuit_count_closed_form(int k,
                                        std::uint64_t limit = kDefaultCircuitLimit);

// All elementary circuits of the digraph (Johnson's algorithm; self-loops
// emitted in a pre-pass). Output is canonical and sorted by
// (length, lexicographic states). Throws CapacityError if the complete-graph
// projection or the actual count exceeds `limit`.
std::vector<PeriodicGait>
enumerate_circuits(const StateDigraph& graph,
                   std::uint64_t limit = kDefaultCircuitLimit);

} // namespace softgait
