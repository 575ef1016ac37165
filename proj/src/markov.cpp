#include "pwm/markov.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace pwm {

IntMatrix incidence_matrix(const PwmMap& map, const MarkovPartition& mp) {
    const std::size_t q = mp.size();
    IntMatrix a(q, q);
    for (std::size_t i = 0; i < q; ++i) {
        const Interval e = mp.interval(i);
        std::vector<Interval> imgs;
        for (std::size_t b = 0; b < map.num_branches(); ++b) {
            const Interval d = map.domain(b);
            const FieldElement lo = max(d.lo, e.lo);
            const FieldElement hi = min(d.hi, e.hi);
            if (!(lo < hi))
                continue;
            FieldElement y0 = map.branches()[b](lo);
            FieldElement y1 = map.branches()[b](hi);
            if (y1 < y0)
                std::swap(y0, y1);
            imgs.push_back({y0, y1});
        }
        const IntervalUnion img(imgs);
        for (std::size_t j = 0; j < q; ++j)
            if (img.contains(mp.interval(j)))
                a(i, j) = 1;
    }
    return a;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const IntMatrix& a) {
    // Tarjan, recursive; matrices here are small.
    const std::size_t n = a.rows();
    std::vector<long> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> comps;
    long counter = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w = 0; w < n; ++w) {
            if (a(v, w) == 0)
                continue;
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::size_t> comp;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] < 0)
            visit(v);
    std::sort(comps.begin(), comps.end());
    return comps;
}

namespace {

bool has_cycle(const IntMatrix& a, const std::vector<std::size_t>& comp) {
    return comp.size() > 1 || a(comp[0], comp[0]) != 0;
}

Integer out_degree(const IntMatrix& a, std::size_t v) {
    Integer d = 0;
    for (std::size_t w = 0; w < a.cols(); ++w)
        d += a(v, w);
    return d;
}

} // namespace

bool condition_L(const IntMatrix& a) {
    for (const auto& comp : strongly_connected_components(a)) {
        if (!has_cycle(a, comp))
            continue;
        // A loop without exit is a component whose vertices all have out-degree one.
        if (std::all_of(comp.begin(), comp.end(), [&](std::size_t v) { return out_degree(a, v) == 1; }))
            return false;
    }
    return true;
}

GraphClass graph_classify(const IntMatrix& a) {
    GraphClass g;
    const std::size_t n = a.rows();
    if (n == 0)
        return g;
    g.permutation = true;
    for (std::size_t i = 0; i < n && g.permutation; ++i) {
        Integer rs = 0, cs = 0;
        for (std::size_t j = 0; j < n; ++j) {
            rs += a(i, j);
            cs += a(j, i);
        }
        g.permutation = rs == 1 && cs == 1;
    }
    const auto comps = strongly_connected_components(a);
    g.irreducible = comps.size() == 1 && has_cycle(a, comps[0]);
    if (!g.irreducible)
        return g;
    // Period: gcd over edges u -> v of depth(u) + 1 - depth(v), depths from a BFS.
    std::vector<long> depth(n, -1);
    std::vector<std::size_t> queue{0};
    depth[0] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        const std::size_t u = queue[h];
        for (std::size_t v = 0; v < n; ++v)
            if (a(u, v) != 0 && depth[v] < 0) {
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
    }
    long p = 0;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (a(u, v) != 0)
                p = std::gcd(p, std::labs(depth[u] + 1 - depth[v]));
    g.period = static_cast<std::size_t>(p);
    g.primitive = p == 1;
    return g;
}

std::string incidence_dot(const IntMatrix& a, const std::vector<std::string>& labels) {
    std::ostringstream os;
    os << "digraph incidence {\n";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        os << "  v" << i;
        if (i < labels.size())
            os << " [label=\"" << labels[i] << "\"]";
        os << ";\n";
    }
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (Integer k = 0; k < a(i, j); ++k)
                os << "  v" << i << " -> v" << j << ";\n";
    os << "}\n";
    return os.str();
}

bool tent_exactness_certificate(const PwmMap& map) {
    const FamilyTag& f = map.family();
    if (!f.slope)
        return false;
    const FieldElement& s = *f.slope;
    if (f.kind == MapFamily::Tent)
        return s == FieldElement(2) && map == make_tent(s);
    if (f.kind == MapFamily::RestrictedTent)
        return s * s > FieldElement(2) && s <= FieldElement(2) && map == make_restricted_tent(s);
    return false;
}

namespace {

bool uniformly_expanding(const PwmMap& map) {
    return std::all_of(map.branches().begin(), map.branches().end(),
                       [](const Branch& b) { return b.slope.abs() > FieldElement(1); });
}

} // namespace

DynamicsVerdict markov_verdict(const PwmMap& map, const MarkovPartition& mp) {
    DynamicsVerdict v;
    const IntMatrix a = incidence_matrix(map, mp);
    const GraphClass g = graph_classify(a);
    const bool l = condition_L(a);
    v.partition = mp;
    v.matrix = a;
    const bool exact = g.primitive && !g.permutation;
    v.exact = TriState::of(exact, exact         ? "incidence matrix primitive"
                                  : g.primitive ? "incidence matrix is a permutation"
                                                : "incidence matrix not primitive");
    const bool trans = g.irreducible && !g.permutation;
    v.transitive = TriState::of(trans, !g.irreducible   ? "incidence matrix reducible"
                                       : g.permutation ? "incidence matrix is a permutation"
                                                       : "irreducible, not a permutation");
    v.homtervals = TriState::of(!l, l ? "every loop has an exit" : "a loop without exit");
    v.conjugate_to_sft = TriState::of(l, l ? "no homtervals" : "homtervals present");
    return v;
}

DynamicsVerdict dynamics_verdict(const PwmMap& map, const OrbitBounds& bounds) {
    const MarkovDetection det = detect_markov(map, bounds);
    if (det.detected()) {
        DynamicsVerdict v = markov_verdict(map, *det.partition);
        v.bound = bounds.max_steps;
        return v;
    }
    DynamicsVerdict v;
    v.bound = bounds.max_steps;
    const std::string open = "Markov partition not detected (bound " + std::to_string(bounds.max_steps) + ")";
    v.conjugate_to_sft = TriState::unknown(open);
    if (tent_exactness_certificate(map)) {
        v.exact = TriState::yes("tent family certificate");
        v.transitive = TriState::yes("exact");
        v.homtervals = TriState::no("exact");
        return v;
    }
    v.exact = TriState::unknown(open);
    v.transitive = TriState::unknown(open);
    v.homtervals = uniformly_expanding(map) ? TriState::no("all slopes exceed 1 in modulus") : TriState::unknown(open);
    return v;
}

} // namespace pwm

namespace pwm {

bool eventually_zero(const RatMatrix& a, const RatVector& v) {
    const RatVector w = row_times(v, power(a, a.rows()));
    return std::all_of(w.begin(), w.end(), [](const Rational& x) { return sgn(x) == 0; });
}

TriState eventually_nonnegative(const RatMatrix& a, RatVector v, std::size_t bound, std::size_t* level) {
    for (std::size_t m = 0; m <= bound; ++m) {
        const bool nonneg = std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) >= 0; });
        const bool nonpos = std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) <= 0; });
        if (nonneg) {
            if (level)
                *level = m;
            return TriState::yes("nonnegative after " + std::to_string(m) + " steps");
        }
        if (nonpos && !eventually_zero(a, v)) {
            if (level)
                *level = m;
            return TriState::no("nonpositive and nonzero after " + std::to_string(m) + " steps");
        }
        if (m < bound)
            v = row_times(v, a);
    }
    return TriState::unknown("signs still mixed (bound " + std::to_string(bound) + ")");
}

} // namespace pwm
