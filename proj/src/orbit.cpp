#include "pwm/orbit.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "pwm/errors.hpp"

namespace pwm {

OrbitBounds OrbitBounds::from_environment() {
    OrbitBounds b;
    if (const char* env = std::getenv("DIMGROUP_MAX_POINTS")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0)
            throw ValidationError(std::string("DIMGROUP_MAX_POINTS must be a positive integer, got '") + env + "'");
        b.max_points = static_cast<std::size_t>(v);
    }
    return b;
}

namespace {

void sort_unique(std::vector<FieldElement>& xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

std::size_t hash_set(const std::vector<FieldElement>& xs) {
    std::size_t h = xs.size();
    for (const auto& x : xs)
        h ^= x.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

struct SeedRun {
    SeedStatus status;
    std::vector<std::vector<FieldElement>> levels;
};

SeedRun run_seed(const PwmMap& map, const FieldElement& seed, const OrbitBounds& bounds) {
    SeedRun run;
    std::unordered_map<std::size_t, std::vector<std::size_t>> seen;
    std::vector<FieldElement> level{seed};
    std::size_t total = 1;
    run.status.bound = bounds.max_steps;
    for (std::size_t k = 0;; ++k) {
        auto& bucket = seen[hash_set(level)];
        for (std::size_t j : bucket) {
            if (run.levels[j] == level) {
                run.status.kind = SeedStatus::Kind::EventuallyPeriodic;
                run.status.preperiod = j;
                run.status.period = k - j;
                return run;
            }
        }
        bucket.push_back(k);
        run.levels.push_back(level);
        if (k >= bounds.max_steps || total > bounds.max_points)
            return run;
        level = tau_hat_image(map, level);
        total += level.size();
    }
}

} // namespace

std::vector<FieldElement> tau_hat_image(const PwmMap& map, const std::vector<FieldElement>& xs) {
    std::vector<FieldElement> out;
    for (const auto& x : xs)
        for (auto& y : map.tau_hat(x).values)
            out.push_back(std::move(y));
    sort_unique(out);
    return out;
}

OrbitReport forward_orbit(const PwmMap& map, const std::vector<FieldElement>& seeds, const OrbitBounds& bounds) {
    OrbitReport rep;
    rep.bounds = bounds;
    rep.seeds = seeds;
    sort_unique(rep.seeds);
    for (const auto& s : rep.seeds)
        if (s < FieldElement(0) || s > FieldElement(1))
            throw OutOfDomain("seed " + s.to_string() + " is outside [0, 1]");

    // Breadth-first closure of the whole seed set.
    std::unordered_set<FieldElement> known(rep.seeds.begin(), rep.seeds.end());
    std::vector<FieldElement> frontier = rep.seeds;
    for (std::size_t depth = 0; !frontier.empty() && depth < bounds.max_steps && known.size() <= bounds.max_points;
         ++depth) {
        std::vector<FieldElement> next;
        for (auto& y : tau_hat_image(map, frontier))
            if (known.insert(y).second)
                next.push_back(std::move(y));
        frontier = std::move(next);
    }
    rep.exhausted = frontier.empty();
    rep.points.assign(known.begin(), known.end());
    std::sort(rep.points.begin(), rep.points.end());

    const std::size_t n = rep.seeds.size();
    std::vector<SeedRun> runs(n);
    const unsigned threads = std::max(1u, std::min<unsigned>(bounds.threads, static_cast<unsigned>(n)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            runs[i] = run_seed(map, rep.seeds[i], bounds);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < n; i += threads)
                    runs[i] = run_seed(map, rep.seeds[i], bounds);
            });
        for (auto& th : pool)
            th.join();
    }
    for (auto& r : runs) {
        rep.status.push_back(r.status);
        rep.levels.push_back(std::move(r.levels));
    }
    return rep;
}

// ---------------------------------------------------------------------------

IntervalUnion::IntervalUnion(std::vector<Interval> parts) {
    std::erase_if(parts, [](const Interval& iv) { return !(iv.lo < iv.hi); });
    std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (auto& iv : parts) {
        if (!parts_.empty() && iv.lo <= parts_.back().hi) {
            parts_.back().hi = max(parts_.back().hi, iv.hi);
            continue;
        }
        parts_.push_back(std::move(iv));
    }
}

bool IntervalUnion::contains(const FieldElement& x) const {
    return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& p) { return p.contains(x); });
}

bool IntervalUnion::contains(const Interval& iv) const {
    return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& p) { return p.contains(iv); });
}

bool IntervalUnion::contains(const IntervalUnion& other) const {
    return std::all_of(other.parts_.begin(), other.parts_.end(), [&](const Interval& iv) { return contains(iv); });
}

IntervalUnion IntervalUnion::intersect(const Interval& iv) const {
    std::vector<Interval> out;
    for (const auto& p : parts_) {
        Interval x{max(p.lo, iv.lo), min(p.hi, iv.hi)};
        if (x.lo < x.hi)
            out.push_back(std::move(x));
    }
    return IntervalUnion(std::move(out));
}

std::string IntervalUnion::to_string() const {
    if (parts_.empty())
        return "{}";
    std::string s;
    for (const auto& p : parts_) {
        if (!s.empty())
            s += " u ";
        s += "[" + p.lo.to_string() + ", " + p.hi.to_string() + "]";
    }
    return s;
}

IntervalUnion image_of(const PwmMap& map, const IntervalUnion& u) {
    std::vector<Interval> out;
    for (std::size_t i = 0; i < map.num_branches(); ++i) {
        const IntervalUnion local = u.intersect(map.domain(i));
        for (const auto& piece : local.parts()) {
            FieldElement y0 = map.branches()[i](piece.lo);
            FieldElement y1 = map.branches()[i](piece.hi);
            if (y1 < y0)
                std::swap(y0, y1);
            out.push_back({std::move(y0), std::move(y1)});
        }
    }
    return IntervalUnion(std::move(out));
}

// ---------------------------------------------------------------------------

bool MarkovPartition::contains_endpoint(const FieldElement& x) const {
    return std::binary_search(endpoints.begin(), endpoints.end(), x);
}

namespace {

struct Piece {
    std::size_t branch;
    Interval domain;
};

// Pieces of [lo, hi] cut by the partition, each inside one branch.
std::vector<Piece> pieces_of(const PwmMap& map, const Interval& iv) {
    std::vector<Piece> out;
    for (std::size_t i = 0; i < map.num_branches(); ++i) {
        const Interval d = map.domain(i);
        Interval x{max(d.lo, iv.lo), min(d.hi, iv.hi)};
        if (x.lo < x.hi)
            out.push_back({i, std::move(x)});
    }
    return out;
}

Interval piece_image(const PwmMap& map, const Piece& p) {
    FieldElement y0 = map.branches()[p.branch](p.domain.lo);
    FieldElement y1 = map.branches()[p.branch](p.domain.hi);
    if (y1 < y0)
        std::swap(y0, y1);
    return {std::move(y0), std::move(y1)};
}

} // namespace

MarkovPartition validate_markov_partition(const PwmMap& map, std::vector<FieldElement> endpoints,
                                          std::size_t absorb_bound) {
    sort_unique(endpoints);
    if (endpoints.size() < 2 || endpoints.front() != FieldElement(0) || endpoints.back() != FieldElement(1))
        throw MarkovValidationFailed("Markov partition must contain 0 and 1");
    MarkovPartition mp{endpoints, 0};

    for (std::size_t j = 0; j < mp.size(); ++j) {
        const Interval e = mp.interval(j);
        const auto pieces = pieces_of(map, e);
        const bool inc = map.branches()[pieces.front().branch].increasing();
        for (std::size_t k = 0; k < pieces.size(); ++k) {
            const Branch& b = map.branches()[pieces[k].branch];
            if (b.increasing() != inc)
                throw MarkovValidationFailed("map is not monotonic on [" + e.lo.to_string() + ", " +
                                             e.hi.to_string() + "]");
            if (k > 0) {
                const FieldElement& a = pieces[k].domain.lo;
                const FieldElement left = map.branches()[pieces[k - 1].branch](a);
                const FieldElement right = b(a);
                if (inc ? right < left : right > left)
                    throw MarkovValidationFailed("map is not monotonic across " + a.to_string());
            }
        }
        std::vector<Interval> imgs;
        for (const auto& p : pieces)
            imgs.push_back(piece_image(map, p));
        const IntervalUnion merged(imgs);
        for (const auto& comp : merged.parts())
            if (!mp.contains_endpoint(comp.lo) || !mp.contains_endpoint(comp.hi))
                throw MarkovValidationFailed("image of [" + e.lo.to_string() + ", " + e.hi.to_string() +
                                             "] is not a union of partition intervals");
    }

    std::vector<FieldElement> s = map.partition();
    for (std::size_t k = 0; k <= absorb_bound; ++k) {
        if (std::all_of(s.begin(), s.end(), [&](const FieldElement& x) { return mp.contains_endpoint(x); })) {
            mp.absorbed_at = k;
            return mp;
        }
        s = tau_hat_image(map, s);
    }
    throw MarkovValidationFailed("images of the partition points never fall into the Markov endpoints (bound " +
                                 std::to_string(absorb_bound) + ")");
}

MarkovDetection detect_markov(const PwmMap& map, const OrbitBounds& bounds) {
    MarkovDetection det;
    det.bound = bounds.max_steps;
    OrbitBounds b = bounds;
    const OrbitReport rep = forward_orbit(map, map.partition(), b);
    if (!rep.exhausted)
        return det;
    det.partition = validate_markov_partition(map, rep.points, 0);
    return det;
}

// ---------------------------------------------------------------------------

std::string IdocWitness::to_string() const {
    return "(" + first.to_string() + ", " + std::to_string(first_step) + ", " + second.to_string() + ", " +
           std::to_string(second_step) + ")";
}

IdocResult idoc_check(const PwmMap& map, const std::vector<FieldElement>& points, std::size_t bound) {
    IdocResult res;
    res.bound = bound;
    struct Visit {
        std::size_t seed;
        std::size_t step;
    };
    std::unordered_map<FieldElement, Visit> seen;
    std::vector<FieldElement> cur = points;
    for (std::size_t m = 0; m <= bound; ++m) {
        for (std::size_t i = 0; i < cur.size(); ++i) {
            const FieldElement& x = cur[i];
            if (m > 0 && map.tau_hat(x).values.size() > 1) {
                res.witness = IdocWitness{IdocWitness::Kind::TwoValuedHit, points[i], m, x, 0};
                return res;
            }
            auto [it, fresh] = seen.try_emplace(x, Visit{i, m});
            if (!fresh) {
                res.witness =
                    IdocWitness{IdocWitness::Kind::Collision, points[it->second.seed], it->second.step, points[i], m};
                return res;
            }
        }
        if (m < bound)
            for (auto& x : cur)
                x = map.value(x);
    }
    return res;
}

// ---------------------------------------------------------------------------

EventualRange eventual_range(const PwmMap& map, std::size_t bound) {
    EventualRange er;
    er.bound = bound;
    er.ranges.push_back(IntervalUnion::unit());
    for (std::size_t k = 0; k < bound; ++k) {
        er.ranges.push_back(image_of(map, er.ranges.back()));
        if (er.ranges[k + 1] == er.ranges[k]) {
            er.stabilized_at = k;
            break;
        }
    }
    return er;
}

Restriction restrict_to_eventual_range(const PwmMap& map, std::size_t bound) {
    const EventualRange er = eventual_range(map, bound);
    if (!er.stabilized_at)
        throw NotEventuallySurjective("image sequence did not stabilize (bound " + std::to_string(bound) + ")");
    const auto& parts = er.eventual().parts();
    if (parts.size() != 1)
        throw RangeNotSingleInterval("eventual range " + er.eventual().to_string() + " is not a single interval");
    const std::size_t n = *er.stabilized_at;
    const FieldElement lo = parts[0].lo;
    const FieldElement hi = parts[0].hi;

    std::vector<FieldElement> cprime;
    for (const auto& a : map.partition())
        if (parts[0].contains(a))
            cprime.push_back(a);
    std::vector<FieldElement> img = map.partition();
    for (std::size_t k = 0; k < n; ++k)
        img = tau_hat_image(map, img);
    cprime.insert(cprime.end(), img.begin(), img.end());
    sort_unique(cprime);

    if (lo == FieldElement(0) && hi == FieldElement(1))
        return Restriction{map, lo, hi, n, map.partition()};

    const FieldElement len = hi - lo;
    std::vector<FieldElement> partition;
    std::vector<Branch> branches;
    for (const auto& c : cprime)
        partition.push_back((c - lo) / len);
    for (std::size_t k = 0; k + 1 < cprime.size(); ++k) {
        const FieldElement mid = (cprime[k] + cprime[k + 1]) / FieldElement(2);
        const Branch& b = map.branches()[map.branches_at(mid).front()];
        branches.push_back({b.slope, (b.slope * lo + b.intercept - lo) / len});
    }
    return Restriction{PwmMap(map.field(), std::move(partition), std::move(branches)), lo, hi, n, std::move(cprime)};
}

} // namespace pwm
