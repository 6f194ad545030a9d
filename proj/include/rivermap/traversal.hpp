#pragma once

// Generic culled recursion over a binary subdivision, optionally spread over
// worker threads. A policy supplies:
//
//   using Node = ...;
//   bool visible(const Node&) const;              // culling test
//   bool is_leaf(const Node&, int level) const;   // termination test
//   std::pair<Node, Node> expand(const Node&) const;
//   void emit(const Node&, CellPicker&) const;    // write leaf output
//   void for_each_edge(const Node&, Fn) const;    // river_network() only
//
// Output does not depend on the thread count.

#include "raster.hpp"

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace rivermap {

struct RenderOptions {
    int threads = 1;
};

struct RenderStats {
    std::uint64_t visited = 0;  ///< nodes that survived culling
    std::uint64_t leaves = 0;   ///< nodes that emitted output
};

struct RenderResult {
    Raster raster;
    RenderStats stats;
};

namespace detail {

template <class Policy>
void walk(const Policy& p, const typename Policy::Node& n, int level, CellPicker& picker,
          RenderStats& st) {
    if (!p.visible(n)) return;
    ++st.visited;
    if (p.is_leaf(n, level)) {
        ++st.leaves;
        p.emit(n, picker);
        return;
    }
    const auto [a, b] = p.expand(n);
    walk(p, a, level + 1, picker, st);
    walk(p, b, level + 1, picker, st);
}

template <class Policy>
void collect_frontier(const Policy& p, const typename Policy::Node& n, int level, int stop_level,
                      CellPicker& picker, RenderStats& st,
                      std::vector<typename Policy::Node>& frontier) {
    if (level == stop_level) {
        frontier.push_back(n);
        return;
    }
    if (!p.visible(n)) return;
    ++st.visited;
    if (p.is_leaf(n, level)) {
        ++st.leaves;
        p.emit(n, picker);
        return;
    }
    const auto [a, b] = p.expand(n);
    collect_frontier(p, a, level + 1, stop_level, picker, st, frontier);
    collect_frontier(p, b, level + 1, stop_level, picker, st, frontier);
}

}  // namespace detail

template <class Policy>
RenderResult traverse(const Policy& policy, const std::vector<typename Policy::Node>& roots,
                      const PixelWindow& win, const RenderOptions& opts) {
    using Node = typename Policy::Node;
    const int threads = opts.threads < 1 ? 1 : opts.threads;
    RenderStats stats;

    if (threads == 1) {
        CellPicker picker(win);
        for (const Node& r : roots) detail::walk(policy, r, 0, picker, stats);
        return {picker.finish(), stats};
    }

    CellPicker picker(win, /*locked=*/true);
    constexpr int kFrontierLevel = 8;
    std::vector<Node> frontier;
    for (const Node& r : roots)
        detail::collect_frontier(policy, r, 0, kFrontierLevel, picker, stats, frontier);

    std::atomic<std::size_t> next{0};
    std::vector<RenderStats> per_worker(static_cast<std::size_t>(threads));
    auto work = [&](std::size_t w) {
        for (std::size_t i = next++; i < frontier.size(); i = next++)
            detail::walk(policy, frontier[i], kFrontierLevel, picker, per_worker[w]);
    };
    {
        std::vector<std::jthread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(work, std::size_t(w));
    }
    for (const auto& s : per_worker) {
        stats.visited += s.visited;
        stats.leaves += s.leaves;
    }
    return {picker.finish(), stats};
}

}  // namespace rivermap
