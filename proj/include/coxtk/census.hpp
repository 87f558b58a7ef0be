// census.hpp - exhaustive labeled-graph census of thick presentation graphs
//
// Graph number i on n vertices: bit b of i fills the lower triangle of the
// adjacency matrix row-major over (j,k) with k < j, least significant bit
// first.  This indexing is load-bearing: checkpoint ranges and partial sums
// are only comparable across runs and implementations if the index-to-graph
// map is bit-exact.
//
// t(n) counts the thick graphs among all 2^C(n,2) labeled graphs; c(n)
// accumulates, per thick graph, the number of cliques with at least two
// vertices plus (n+1) for the empty clique and the singletons.
#ifndef COXTK_CENSUS_HPP
#define COXTK_CENSUS_HPP

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "coxtk/errors.hpp"

namespace coxtk {

// Reference census constants for n = 9 (a multi-day exhaustive run), used as
// regression inputs and by the probability-bound evaluators.
inline constexpr std::uint64_t census_t9 = 14853635863ull;
inline constexpr std::uint64_t census_c9 = 683846354560ull;

struct CensusResult {
    int n = 0;
    std::uint64_t t = 0;               // thick labeled graphs
    std::uint64_t c = 0;               // clique count over thick graphs (census convention)
    std::uint64_t graphs_scanned = 0;  // 2^C(n,2)
};

// Mask-based graph routines sized for the census (n <= 9, adjacency rows in
// 32-bit words).  Same fixed point as the general-purpose classifier, tuned
// for billions of tiny graphs.
namespace smallgraph {

inline bool mask_nonclique(const std::uint32_t* adj, std::uint32_t s) {
    for (std::uint32_t rest = s; rest;) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        if (s & ~adj[v] & ~(std::uint32_t{1} << v)) return true;
    }
    return false;
}

inline bool is_thick(int n, const std::uint32_t* adj, std::vector<std::uint32_t>& pool) {
    pool.clear();
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (int u = 0; u < n; ++u) {
        for (int w = u + 1; w < n; ++w) {
            if (adj[u] & (std::uint32_t{1} << w)) continue;
            std::uint32_t common = adj[u] & adj[w];
            if (std::popcount(common) < 2) continue;
            std::uint32_t block = 0;
            for (std::uint32_t rest = common; rest;) {
                int t = std::countr_zero(rest);
                rest &= rest - 1;
                if (common & ~adj[t] & ~(std::uint32_t{1} << t)) block |= std::uint32_t{1} << t;
            }
            if (!block) continue;
            block |= (std::uint32_t{1} << u) | (std::uint32_t{1} << w);
            bool merged = true;
            while (merged) {
                merged = false;
                for (std::size_t i = pool.size(); i-- > 0;) {
                    if (mask_nonclique(adj, pool[i] & block)) {
                        block |= pool[i];
                        pool[i] = pool.back();
                        pool.pop_back();
                        merged = true;
                        break;
                    }
                }
            }
            if (block == full) return true;
            for (std::size_t i = 0; i < pool.size();) {
                if ((pool[i] & ~block) == 0) {
                    pool[i] = pool.back();
                    pool.pop_back();
                } else {
                    ++i;
                }
            }
            pool.push_back(block);
        }
    }
    if (pool.empty()) return false;

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& m : pool) {
            bool more = true;
            while (more) {
                more = false;
                for (std::uint32_t outside = full & ~m; outside;) {
                    int v = std::countr_zero(outside);
                    outside &= outside - 1;
                    if (mask_nonclique(adj, adj[v] & m)) {
                        m |= std::uint32_t{1} << v;
                        more = changed = true;
                    }
                }
            }
            if (m == full) return true;
        }
        if (changed) {
            // remerge after growth
            std::vector<std::uint32_t> old;
            old.swap(pool);
            for (auto block : old) {
                bool merged = true;
                while (merged) {
                    merged = false;
                    for (std::size_t i = pool.size(); i-- > 0;) {
                        if (mask_nonclique(adj, pool[i] & block)) {
                            block |= pool[i];
                            pool[i] = pool.back();
                            pool.pop_back();
                            merged = true;
                            break;
                        }
                    }
                }
                for (std::size_t i = 0; i < pool.size();) {
                    if ((pool[i] & ~block) == 0) {
                        pool[i] = pool.back();
                        pool.pop_back();
                    } else {
                        ++i;
                    }
                }
                pool.push_back(block);
            }
        }
    }
    for (auto m : pool)
        if (m == full) return true;
    return false;
}

inline void clique_rec(const std::uint32_t* adj, std::uint32_t cand, long& count) {
    while (cand) {
        int w = std::countr_zero(cand);
        cand &= cand - 1;
        ++count;
        std::uint32_t next = cand & adj[w];  // cand holds only vertices > previous picks
        if (next) clique_rec(adj, next, count);
    }
}

inline long count_cliques_ge2(int n, const std::uint32_t* adj) {
    long count = 0;
    for (int v = 0; v + 1 < n; ++v) {
        std::uint32_t above = ~((std::uint32_t{2} << v) - 1);
        std::uint32_t cand = adj[v] & above;
        if (cand) clique_rec(adj, cand, count);
    }
    return count;
}

}  // namespace smallgraph

namespace census_detail {

struct Range {
    std::uint64_t start, end;  // [start, end)
    std::uint64_t t = 0, c = 0;
};

inline void decode(int n, std::uint64_t index, std::uint32_t* adj) {
    for (int j = 0; j < n; ++j) adj[j] = 0;
    int b = 0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < j; ++k, ++b)
            if ((index >> b) & 1) {
                adj[j] |= std::uint32_t{1} << k;
                adj[k] |= std::uint32_t{1} << j;
            }
}

// Scan [start, end), updating adjacency incrementally: consecutive indices
// differ in the trailing-bit block, two toggled edges on average.
inline void scan_range(int n, std::uint64_t start, std::uint64_t end, std::uint64_t& t_out,
                       std::uint64_t& c_out) {
    std::uint32_t adj[12];
    std::pair<int, int> pair_of_bit[66];
    {
        int b = 0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < j; ++k, ++b) pair_of_bit[b] = {j, k};
    }
    decode(n, start, adj);
    std::vector<std::uint32_t> pool;
    std::uint64_t t = 0, c = 0;
    for (std::uint64_t i = start; i < end; ++i) {
        if (smallgraph::is_thick(n, adj, pool)) {
            ++t;
            c += static_cast<std::uint64_t>(smallgraph::count_cliques_ge2(n, adj)) +
                 static_cast<std::uint64_t>(n) + 1;
        }
        if (i + 1 < end) {
            std::uint64_t flips = i ^ (i + 1);
            while (flips) {
                int b = std::countr_zero(flips);
                flips &= flips - 1;
                auto [j, k] = pair_of_bit[b];
                adj[j] ^= std::uint32_t{1} << k;
                adj[k] ^= std::uint32_t{1} << j;
            }
        }
    }
    t_out = t;
    c_out = c;
}

}  // namespace census_detail

inline constexpr std::uint64_t census_checkpoint_stride = std::uint64_t{1} << 30;

// Full census over all labeled graphs on n vertices.  Range-partitioned
// across workers; with a checkpoint path, finished ranges are appended as
// "n start end partial_t partial_c" lines and earlier lines are resumed
// from, so a killed run loses at most one stride per worker.
inline CensusResult census(int n, int workers = 1, const std::string& checkpoint_path = {},
                           std::ostream* log = nullptr,
                           std::uint64_t stride = census_checkpoint_stride) {
    if (n < 0 || n > 9)
        throw GuardExceeded("census supports 0 <= n <= 9 (n = 9 is a multi-day job)");
    if (stride == 0) throw InputError("census stride must be positive");
    int bits = n * (n - 1) / 2;
    std::uint64_t total = std::uint64_t{1} << bits;

    std::vector<census_detail::Range> done;
    if (!checkpoint_path.empty()) {
        std::ifstream in(checkpoint_path);
        std::string line;
        int line_no = 0;
        while (in && std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ss(line);
            std::string head;
            ss >> head;
            if (head == "RESULT") continue;  // ranges below already cover everything
            census_detail::Range r;
            int file_n = -1;
            std::istringstream ss2(line);
            if (!(ss2 >> file_n >> r.start >> r.end >> r.t >> r.c))
                throw CheckpointMismatch("unparsable checkpoint line " + std::to_string(line_no));
            if (file_n != n)
                throw CheckpointMismatch("checkpoint is for n=" + std::to_string(file_n) +
                                         ", requested n=" + std::to_string(n));
            if (r.start >= r.end || r.end > total)
                throw CheckpointMismatch("checkpoint range out of bounds at line " +
                                         std::to_string(line_no));
            done.push_back(r);
        }
        std::sort(done.begin(), done.end(),
                  [](const census_detail::Range& a, const census_detail::Range& b) {
                      return a.start < b.start;
                  });
        for (std::size_t i = 1; i < done.size(); ++i)
            if (done[i].start < done[i - 1].end)
                throw CheckpointMismatch("overlapping checkpoint ranges");
    }

    // work list: uncovered gaps, split by the checkpoint stride
    std::vector<census_detail::Range> work;
    std::uint64_t cursor = 0;
    auto add_gap = [&](std::uint64_t from, std::uint64_t to) {
        for (std::uint64_t s = from; s < to; s += stride)
            work.push_back({s, std::min(to, s + stride)});
    };
    for (auto& r : done) {
        add_gap(cursor, r.start);
        cursor = r.end;
    }
    add_gap(cursor, total);

    std::mutex io_mutex;
    std::ofstream checkpoint;
    if (!checkpoint_path.empty()) checkpoint.open(checkpoint_path, std::ios::app);

    std::atomic<std::size_t> next{0};
    std::atomic<std::uint64_t> t_sum{0}, c_sum{0};
    auto body = [&] {
        while (true) {
            std::size_t job = next.fetch_add(1);
            if (job >= work.size()) return;
            auto& r = work[job];
            std::uint64_t t = 0, c = 0;
            census_detail::scan_range(n, r.start, r.end, t, c);
            t_sum += t;
            c_sum += c;
            std::lock_guard<std::mutex> lock(io_mutex);
            if (checkpoint.is_open()) {
                checkpoint << n << ' ' << r.start << ' ' << r.end << ' ' << t << ' ' << c << '\n';
                checkpoint.flush();
            }
            if (log)
                (*log) << "range " << r.start << ".." << r.end << " t=" << t << " c=" << c << '\n';
        }
    };
    std::vector<std::thread> threads;
    for (int w = 1; w < std::max(1, workers); ++w) threads.emplace_back(body);
    body();
    for (auto& th : threads) th.join();

    CensusResult result;
    result.n = n;
    result.graphs_scanned = total;
    result.t = t_sum.load();
    result.c = c_sum.load();
    for (auto& r : done) {
        result.t += r.t;
        result.c += r.c;
    }
    if (checkpoint.is_open()) {
        checkpoint << "RESULT " << n << ' ' << result.t << ' ' << result.c << '\n';
        checkpoint.flush();
    }
    return result;
}

}  // namespace coxtk

#endif
