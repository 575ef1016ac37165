#include "pwm/bratteli.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "pwm/errors.hpp"
#include "pwm/orbit.hpp"

namespace pwm {

std::vector<std::vector<FieldElement>> c_n_sets(const PwmMap& map, std::size_t levels) {
    std::vector<std::vector<FieldElement>> out{{FieldElement(0), FieldElement(1)}};
    std::vector<std::vector<FieldElement>> images; // images[k-1] = image of C of order k
    std::vector<FieldElement> cur = map.partition();
    IntervalUnion range = IntervalUnion::unit();
    for (std::size_t n = 1; n <= levels; ++n) {
        while (images.size() < 2 * n) {
            cur = tau_hat_image(map, cur);
            images.push_back(cur);
        }
        range = image_of(map, range);
        std::vector<FieldElement> cn;
        for (std::size_t k = 0; k < 2 * n; ++k)
            for (const auto& x : images[k])
                if (range.contains(x))
                    cn.push_back(x);
        std::sort(cn.begin(), cn.end());
        cn.erase(std::unique(cn.begin(), cn.end()), cn.end());
        out.push_back(std::move(cn));
    }
    return out;
}

std::size_t preimage_count(const PwmMap& map, const FieldElement& x, std::size_t n) {
    std::vector<FieldElement> cur{x};
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<FieldElement> next;
        for (const auto& y : cur)
            for (std::size_t i = 0; i < map.num_branches(); ++i) {
                if (!map.image(i).contains(y))
                    continue;
                FieldElement z = map.branches()[i].inverse(y);
                if (map.domain(i).contains(z))
                    next.push_back(std::move(z));
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
    }
    return cur.size();
}

BratteliDiagram build_diagram(const PwmMap& map, std::size_t levels, std::size_t vertex_cap) {
    const auto cs = c_n_sets(map, levels);
    BratteliDiagram d;
    d.levels.push_back({{{Interval{0, 1}, Integer(1)}}, {}});
    IntervalUnion range = IntervalUnion::unit();
    for (std::size_t n = 1; n <= levels; ++n) {
        range = image_of(map, range);
        const auto& prev = d.levels.back().vertices;
        BratteliLevel lvl;
        const auto& cn = cs[n];
        for (std::size_t j = 0; j + 1 < cn.size(); ++j) {
            Interval z{cn[j], cn[j + 1]};
            if (range.contains(z))
                lvl.vertices.push_back({std::move(z), Integer(0)});
        }
        if (lvl.vertices.size() > vertex_cap)
            throw DiagramTooWide("level " + std::to_string(n) + " has " + std::to_string(lvl.vertices.size()) +
                                 " vertices (cap " + std::to_string(vertex_cap) + ")");
        for (std::size_t zi = 0; zi < lvl.vertices.size(); ++zi) {
            auto& z = lvl.vertices[zi];
            std::vector<std::size_t> sources;
            for (std::size_t i = 0; i < map.num_branches(); ++i) {
                if (!map.image(i).contains(z.interval))
                    continue;
                const Branch& b = map.branches()[i];
                const FieldElement u = b.inverse(z.interval.lo);
                const FieldElement w = b.inverse(z.interval.hi);
                const Interval pre{min(u, w), max(u, w)};
                const auto it = std::find_if(prev.begin(), prev.end(),
                                             [&](const BratteliVertex& y) { return y.interval.contains(pre); });
                if (it != prev.end()) {
                    sources.push_back(static_cast<std::size_t>(it - prev.begin()));
                    continue;
                }
                const bool outside = std::all_of(prev.begin(), prev.end(), [&](const BratteliVertex& y) {
                    return !(max(y.interval.lo, pre.lo) < min(y.interval.hi, pre.hi));
                });
                if (!outside)
                    throw ConsistencyFailure("preimage [" + pre.lo.to_string() + ", " + pre.hi.to_string() +
                                             "] straddles a vertex boundary at level " + std::to_string(n - 1));
            }
            std::sort(sources.begin(), sources.end());
            for (std::size_t s = 0; s < sources.size();) {
                std::size_t e = s;
                while (e < sources.size() && sources[e] == sources[s])
                    ++e;
                const Integer mult(static_cast<unsigned long>(e - s));
                lvl.edges.push_back({sources[s], zi, mult});
                z.k += prev[sources[s]].k * mult;
                s = e;
            }
            const std::size_t brute = preimage_count(map, z.interval.midpoint(), n);
            if (z.k != Integer(static_cast<unsigned long>(brute)))
                throw ConsistencyFailure("k(" + z.interval.lo.to_string() + ", " + z.interval.hi.to_string() +
                                         ") = " + z.k.get_str() + " but the midpoint has " + std::to_string(brute) +
                                         " preimages");
        }
        std::sort(lvl.edges.begin(), lvl.edges.end(), [](const BratteliEdge& x, const BratteliEdge& y) {
            return std::pair(x.from, x.to) < std::pair(y.from, y.to);
        });
        d.levels.push_back(std::move(lvl));
    }
    return d;
}

K0Sequence k0_sequence(const BratteliDiagram& d) {
    K0Sequence k;
    for (const auto& l : d.levels)
        k.ranks.push_back(l.vertices.size());
    for (std::size_t n = 1; n < d.levels.size(); ++n) {
        IntMatrix m(k.ranks[n - 1], k.ranks[n]);
        for (const auto& e : d.levels[n].edges)
            m(e.from, e.to) += e.mult;
        IntVector prev;
        for (const auto& v : d.levels[n - 1].vertices)
            prev.push_back(v.k);
        const IntVector next = row_times(prev, m);
        for (std::size_t j = 0; j < next.size(); ++j)
            if (next[j] != d.levels[n].vertices[j].k)
                throw ConsistencyFailure("connecting matrix does not reproduce the multiplicities at level " +
                                         std::to_string(n));
        k.connecting.push_back(std::move(m));
    }
    return k;
}

std::string to_dot(const BratteliDiagram& d) {
    std::ostringstream os;
    os << "digraph bratteli {\n  rankdir=TB;\n";
    for (std::size_t n = 0; n < d.levels.size(); ++n) {
        os << "  { rank=same;";
        for (std::size_t i = 0; i < d.levels[n].vertices.size(); ++i)
            os << " L" << n << "_" << i << ";";
        os << " }\n";
        for (std::size_t i = 0; i < d.levels[n].vertices.size(); ++i) {
            const auto& v = d.levels[n].vertices[i];
            os << "  L" << n << "_" << i << " [label=\"[" << v.interval.lo << ", " << v.interval.hi
               << "]\\nk=" << v.k << "\"];\n";
        }
    }
    for (std::size_t n = 1; n < d.levels.size(); ++n)
        for (const auto& e : d.levels[n].edges) {
            os << "  L" << n - 1 << "_" << e.from << " -> L" << n << "_" << e.to;
            if (e.mult != 1)
                os << " [label=\"" << e.mult << "\"]";
            os << ";\n";
        }
    os << "}\n";
    return os.str();
}

namespace {

nlohmann::json integer_json(const Integer& z) {
    if (z.fits_slong_p())
        return z.get_si();
    return z.get_str();
}

} // namespace

std::string to_json(const BratteliDiagram& d, int indent) {
    nlohmann::json j;
    j["version"] = 1;
    j["levels"] = nlohmann::json::array();
    for (const auto& l : d.levels) {
        nlohmann::json lj;
        lj["vertices"] = nlohmann::json::array();
        for (const auto& v : l.vertices)
            lj["vertices"].push_back(
                {{"lo", v.interval.lo.to_string()}, {"hi", v.interval.hi.to_string()}, {"k", integer_json(v.k)}});
        lj["edges"] = nlohmann::json::array();
        for (const auto& e : l.edges)
            lj["edges"].push_back({{"from", e.from}, {"to", e.to}, {"mult", integer_json(e.mult)}});
        j["levels"].push_back(std::move(lj));
    }
    return j.dump(indent) + "\n";
}

} // namespace pwm
