#include "pointspec/miner.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

#include "pointspec/errors.hpp"

namespace pointspec {

namespace {

using Coords = std::vector<std::pair<long, long>>;

Coords normalized(Coords pts) {
    long mx = pts[0].first, my = pts[0].second;
    for (const auto& [x, y] : pts) {
        mx = std::min(mx, x);
        my = std::min(my, y);
    }
    for (auto& [x, y] : pts) {
        x -= mx;
        y -= my;
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

PointConfiguration to_config(const Coords& pts) {
    std::vector<std::vector<QuadScalar>> rows;
    rows.reserve(pts.size());
    for (const auto& [x, y] : pts)
        rows.push_back({QuadScalar::rational(BigRat(x)), QuadScalar::rational(BigRat(y))});
    return {2, 1, std::move(rows)};
}

}  // namespace

std::vector<std::pair<long, long>> lattice_canonical_form(Coords pts) {
    if (pts.empty()) return pts;
    Coords best;
    for (int t = 0; t < 8; ++t) {
        Coords img;
        img.reserve(pts.size());
        for (const auto& [x, y] : pts) {
            long a = (t & 4) ? y : x, b = (t & 4) ? x : y;
            if (t & 1) a = -a;
            if (t & 2) b = -b;
            img.emplace_back(a, b);
        }
        img = normalized(std::move(img));
        if (best.empty() || img < best) best = std::move(img);
    }
    return best;
}

MineResult mine(long width, long height, size_t n, MineKind kind, uint64_t budget,
                unsigned jobs) {
    if (width < 1 || height < 1) throw DomainError("grid sides must be positive");
    if (n < 2) throw DomainError("need at least two points per configuration");
    const size_t total = size_t(width) * size_t(height);

    MineResult result;
    if (n > total) return result;

    Coords grid;
    for (long y = 0; y < height; ++y)
        for (long x = 0; x < width; ++x) grid.emplace_back(x, y);

    // sharded enumeration: one shard per choice of the lowest point index
    std::atomic<uint64_t> spent{0};
    std::atomic<bool> exhausted{false};
    std::atomic<size_t> next_shard{0};
    const size_t shard_count = total - n + 1;
    std::vector<std::set<Coords>> shard_seen(shard_count);

    auto run_shard = [&](size_t first) {
        std::vector<size_t> idx(n);
        idx[0] = first;
        for (size_t i = 1; i < n; ++i) idx[i] = first + i;
        auto& seen = shard_seen[first];
        while (true) {
            if (spent.fetch_add(1) >= budget) {
                exhausted = true;
                return;
            }
            Coords pts;
            pts.reserve(n);
            for (size_t i : idx) pts.push_back(grid[i]);
            seen.insert(lattice_canonical_form(std::move(pts)));
            // advance to the next combination keeping idx[0] fixed
            size_t pos = n;
            while (pos > 1 && idx[pos - 1] == total - (n - pos) - 1) --pos;
            if (pos <= 1) return;
            ++idx[pos - 1];
            for (size_t i = pos; i < n; ++i) idx[i] = idx[i - 1] + 1;
        }
    };
    auto worker = [&] {
        while (true) {
            const size_t shard = next_shard.fetch_add(1);
            if (shard >= shard_count || exhausted) return;
            run_shard(shard);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::set<Coords> merged;
    for (auto& s : shard_seen) merged.merge(s);
    result.subsets_enumerated = std::min<uint64_t>(spent.load(), budget);
    result.budget_exhausted = exhausted.load();
    result.canonical_configs = merged.size();

    std::vector<PointConfiguration> configs;
    configs.reserve(merged.size());
    for (const auto& pts : merged) configs.push_back(to_config(pts));

    std::map<std::string, std::vector<size_t>> buckets;
    for (size_t i = 0; i < configs.size(); ++i) {
        std::string key;
        if (kind == MineKind::distance)
            key = distance_spectrum(configs[i]).key();
        else if (kind == MineKind::volume)
            key = volume_spectrum(configs[i]).key();
        else
            key = distance_spectrum(configs[i]).key() + "|" + volume_spectrum(configs[i]).key();
        buckets[key].push_back(i);
    }
    result.buckets = buckets.size();

    const bool rigid_classing = kind != MineKind::volume;
    for (const auto& [key, members] : buckets) {
        if (members.size() < 2) continue;
        std::vector<size_t> reps;  // first member of each orbit class, in order
        for (size_t mem : members) {
            bool fresh = true;
            for (size_t rep : reps) {
                const bool same =
                    rigid_classing
                        ? orbit_congruent(configs[rep], configs[mem]).has_value()
                        : orbit_volume_equivalent(configs[rep], configs[mem]) == Verdict::yes;
                if (same) {
                    fresh = false;
                    break;
                }
            }
            if (fresh) reps.push_back(mem);
        }
        for (size_t a = 0; a < reps.size(); ++a)
            for (size_t b = a + 1; b < reps.size(); ++b) {
                CollisionPair pair{configs[reps[a]], configs[reps[b]], key, std::nullopt};
                if (kind == MineKind::volume &&
                    orbit_volume_equivalent(pair.first, pair.second) != Verdict::no)
                    continue;  // indeterminate flat-vs-flat: no exact failure to report
                if (kind == MineKind::both)
                    pair.affine = orbit_volume_equivalent(pair.first, pair.second);
                result.pairs.push_back(std::move(pair));
            }
    }
    return result;
}

}  // namespace pointspec
