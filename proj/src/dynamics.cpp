#include "ffdyn/dynamics.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace ffdyn {

namespace {

constexpr std::uint8_t kWhite = 0, kOnPath = 1, kTail = 2, kPeriodic = 3;

// traversal over ws.next; fills ws.state with kTail/kPeriodic and appends
// cycle lengths when requested
std::uint32_t color_graph(DynWorkspace& ws, std::uint32_t n_points,
                          std::vector<std::uint32_t>* cycle_lengths) {
    ws.state.assign(n_points, kWhite);
    ws.pos.assign(n_points, 0);
    std::uint32_t periodic = 0;
    for (std::uint32_t s = 0; s < n_points; ++s) {
        if (ws.state[s] != kWhite) continue;
        ws.path.clear();
        std::uint32_t x = s;
        while (ws.state[x] == kWhite) {
            ws.state[x] = kOnPath;
            ws.pos[x] = std::uint32_t(ws.path.size());
            ws.path.push_back(x);
            x = ws.next[x];
        }
        std::size_t cycle_start = ws.path.size();  // none: ran into finished region
        if (ws.state[x] == kOnPath) {
            cycle_start = ws.pos[x];
            const std::uint32_t len = std::uint32_t(ws.path.size() - cycle_start);
            periodic += len;
            if (cycle_lengths) cycle_lengths->push_back(len);
        }
        for (std::size_t i = 0; i < ws.path.size(); ++i)
            ws.state[ws.path[i]] = i >= cycle_start ? kPeriodic : kTail;
    }
    return periodic;
}

}  // namespace

void build_graph(const RatMap& map, DynWorkspace& ws) {
    const FieldCtx& k = *map.ctx;
    const std::uint32_t n = k.q() + 1;
    ws.next.resize(n);
    for (std::uint32_t i = 0; i < n; ++i)
        ws.next[i] = eval(map, ProjPoint::from_index(i, k)).index(k);
}

std::uint32_t periodic_count_fast(const RatMap& map, DynWorkspace& ws) {
    build_graph(map, ws);
    return color_graph(ws, map.ctx->q() + 1, nullptr);
}

std::uint32_t periodic_count_from_graph(DynWorkspace& ws, std::uint32_t n_points) {
    return color_graph(ws, n_points, nullptr);
}

std::vector<ProjPoint> periodic_points(const RatMap& map) {
    DynWorkspace ws;
    build_graph(map, ws);
    color_graph(ws, map.ctx->q() + 1, nullptr);
    std::vector<ProjPoint> out;
    for (std::uint32_t i = 0; i <= map.ctx->q(); ++i)
        if (ws.state[i] == kPeriodic) out.push_back(ProjPoint::from_index(i, *map.ctx));
    return out;
}

std::vector<ProjPoint> periodic_points_via_image(const RatMap& map) {
    const FieldCtx& k = *map.ctx;
    const std::uint32_t n = k.q() + 1;
    DynWorkspace ws;
    build_graph(map, ws);
    // iterate S -> phi(S) on bit vectors until the size stabilizes; the chain
    // is decreasing, so equal sizes mean equal sets
    std::vector<bool> cur(n, true), nxt;
    std::uint32_t cur_size = n;
    for (;;) {
        nxt.assign(n, false);
        std::uint32_t nxt_size = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (!cur[i]) continue;
            const std::uint32_t img = ws.next[i];
            if (!nxt[img]) {
                nxt[img] = true;
                ++nxt_size;
            }
        }
        if (nxt_size == cur_size) break;
        cur.swap(nxt);
        cur_size = nxt_size;
    }
    std::vector<ProjPoint> out;
    for (std::uint32_t i = 0; i < n; ++i)
        if (cur[i]) out.push_back(ProjPoint::from_index(i, k));
    return out;
}

std::vector<std::uint32_t> image_sequence(const RatMap& map, std::uint32_t n_max) {
    const FieldCtx& k = *map.ctx;
    const std::uint32_t n = k.q() + 1;
    DynWorkspace ws;
    build_graph(map, ws);
    std::vector<std::uint32_t> sizes{n};
    std::vector<bool> cur(n, true), nxt;
    while (sizes.size() <= n_max) {
        nxt.assign(n, false);
        std::uint32_t nxt_size = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (!cur[i]) continue;
            const std::uint32_t img = ws.next[i];
            if (!nxt[img]) {
                nxt[img] = true;
                ++nxt_size;
            }
        }
        sizes.push_back(nxt_size);
        if (nxt_size == sizes[sizes.size() - 2]) break;  // stabilized
        cur.swap(nxt);
    }
    return sizes;
}

Rat periodic_proportion(const RatMap& map) {
    DynWorkspace ws;
    return make_rat(Int(periodic_count_fast(map, ws)), Int(map.ctx->q() + 1));
}

OrbitCensus census(const RatMap& map) {
    const FieldCtx& k = *map.ctx;
    OrbitCensus c;
    c.q_plus_1 = k.q() + 1;

    DynWorkspace ws;
    build_graph(map, ws);
    c.periodic_count = color_graph(ws, c.q_plus_1, &c.cycle_lengths);
    std::sort(c.cycle_lengths.begin(), c.cycle_lengths.end());

    c.image_sizes = image_sequence(map, c.q_plus_1);  // stabilizes within q+1 steps
    c.stabilization_index = std::uint32_t(c.image_sizes.size()) - 2;

    // internal cross-checks tying the two routes together
    if (c.image_sizes[c.stabilization_index] != c.periodic_count)
        throw std::logic_error("census: stabilized image size != periodic count");
    std::uint32_t cycle_sum = 0;
    for (auto len : c.cycle_lengths) cycle_sum += len;
    if (cycle_sum != c.periodic_count)
        throw std::logic_error("census: cycle lengths do not sum to periodic count");
    return c;
}

}  // namespace ffdyn
