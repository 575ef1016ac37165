#include "pwm/dimension_group.hpp"

#include <algorithm>
#include <sstream>

#include "pwm/errors.hpp"
#include "pwm/markov.hpp"

namespace pwm {

namespace {

RatVector times_power(RatVector v, const RatMatrix& a, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i)
        v = row_times(v, a);
    return v;
}

std::string rational_text(const Rational& q) { return q.get_str(); }

} // namespace

GAElement GAElement::operator-() const {
    GAElement r = *this;
    for (auto& x : r.v)
        x = -x;
    return r;
}

GAElement operator+(const GAElement& x, const GAElement& y) {
    if (x.k != y.k || x.v.size() != y.v.size())
        throw ValidationError("GAElement addition needs equal levels and sizes");
    GAElement r = x;
    for (std::size_t i = 0; i < r.v.size(); ++i)
        r.v[i] += y.v[i];
    return r;
}

GroupPresentation ga_presentation(const IntMatrix& a) {
    if (!a.square())
        throw ValidationError("incidence matrix must be square");
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (sgn(a(i, j)) < 0)
                throw ValidationError("incidence matrix must be nonnegative");
    GroupPresentation p;
    p.matrix = a;
    p.n = a.rows();
    const RatMatrix ar = a.cast<Rational>();

    RatMatrix w = rref_basis(RatMatrix::identity(p.n));
    std::size_t k = 0;
    for (;; ++k) {
        RatMatrix next = rref_basis(w * ar);
        if (next.rows() == w.rows())
            break;
        w = std::move(next);
    }
    p.stabilized_at = k;
    p.basis = rref_basis(w, &p.pivots);
    p.rank = p.basis.rows();

    const RatMatrix image = p.basis * ar;
    p.action = RatMatrix(p.rank, p.rank);
    for (std::size_t i = 0; i < p.rank; ++i)
        for (std::size_t j = 0; j < p.rank; ++j)
            p.action(i, j) = image(i, p.pivots[j]);
    if (!(p.action * p.basis == image))
        throw ConsistencyFailure("V_A is not invariant under A");

    p.order_unit = GAElement{RatVector(p.n, Rational(1)), 0};
    return p;
}

std::pair<RatVector, std::size_t> ga_coordinates(const GroupPresentation& p, const GAElement& x) {
    const RatMatrix ar = p.matrix.cast<Rational>();
    const RatVector w = times_power(x.v, ar, p.n);
    RatVector c(p.rank);
    for (std::size_t j = 0; j < p.rank; ++j)
        c[j] = w[p.pivots[j]];
    return {c, x.k + p.n};
}

bool ga_equal(const GroupPresentation& p, const GAElement& x, const GAElement& y) {
    const RatMatrix ar = p.matrix.cast<Rational>();
    return times_power(x.v, ar, y.k + p.n) == times_power(y.v, ar, x.k + p.n);
}

TriState ga_positive(const GroupPresentation& p, const GAElement& x, std::size_t bound) {
    return eventually_nonnegative(p.matrix.cast<Rational>(), x.v, bound);
}

ModuleVector markov_module_vector(const PwmMap& map, const MarkovPartition& mp, const StepFunction& f,
                                  std::size_t bound) {
    StepFunction g = f;
    for (std::size_t n = 0; n <= bound; ++n) {
        if (g.cuts_within(mp.endpoints))
            return {g.coefficients(mp.endpoints), n};
        if (n < bound)
            g = transfer_apply(map, g);
    }
    throw BoundExceeded("step function discontinuities not absorbed into the Markov partition", bound);
}

TriState is_simple(const PwmMap& map, const OrbitBounds& bounds) {
    const MarkovDetection det = detect_markov(map, bounds);
    if (det.detected()) {
        const IntMatrix a = incidence_matrix(map, *det.partition);
        const std::size_t n = a.rows();
        const IntVector reach = row_times(IntVector(n, Integer(1)), power(a, n));
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(reach[j]) > 0)
                keep.push_back(j);
        IntMatrix r(keep.size(), keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = 0; j < keep.size(); ++j)
                r(i, j) = a(keep[i], keep[j]);
        if (!condition_L(r))
            return TriState::unknown("restricted incidence graph has a loop without exit");
        const GraphClass g = graph_classify(r);
        return TriState::of(g.primitive, g.primitive ? "restricted incidence matrix primitive"
                                                     : "restricted incidence matrix not primitive");
    }
    if (tent_exactness_certificate(map))
        return TriState::yes("topologically exact by the tent family certificate");
    return TriState::unknown("Markov partition not detected (bound " + std::to_string(bounds.max_steps) + ")");
}

std::string to_string(ModuleTag t) {
    switch (t) {
    case ModuleTag::MarkovTriple:
        return "MarkovTriple";
    case ModuleTag::Cyclic:
        return "Cyclic";
    case ModuleTag::FreeRank:
        return "FreeRank";
    case ModuleTag::ExchangeForm:
        return "ExchangeForm";
    case ModuleTag::Unknown:
        break;
    }
    return "Unknown";
}

std::string ModuleClassification::summary() const {
    std::ostringstream os;
    os << to_string(tag);
    switch (tag) {
    case ModuleTag::MarkovTriple:
        os << ", rank " << presentation->rank;
        if (presentation->rank == 1)
            os << ", action ×" << rational_text(presentation->action(0, 0));
        else
            os << ", action " << presentation->action;
        break;
    case ModuleTag::Cyclic:
        os << ", generator I(0, 1)";
        if (!payload.empty())
            os << ", " << payload;
        break;
    case ModuleTag::FreeRank:
    case ModuleTag::ExchangeForm:
        os << "(" << free_rank << "), " << payload;
        break;
    case ModuleTag::Unknown:
        break;
    }
    if (conditional)
        os << ", conditional(" << bound << ")";
    return os.str();
}

bool is_unimodal(const PwmMap& map) {
    return map.num_branches() == 2 && map.is_continuous() &&
           map.branches()[0].increasing() != map.branches()[1].increasing();
}

bool is_generalized_exchange(const PwmMap& map) {
    if (!map.all_increasing())
        return false;
    std::vector<Interval> imgs;
    for (std::size_t i = 0; i < map.num_branches(); ++i)
        imgs.push_back(map.image(i));
    std::sort(imgs.begin(), imgs.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    FieldElement reach = 0;
    for (const auto& iv : imgs) {
        if (iv.lo != reach)
            return false;
        reach = iv.hi;
    }
    return reach == FieldElement(1);
}

namespace {

std::vector<FieldElement> interior_points(const PwmMap& map) {
    const auto& a = map.partition();
    return std::vector<FieldElement>(a.begin() + 1, a.end() - 1);
}

} // namespace

ModuleClassification classify_module(const PwmMap& map, std::size_t bound) {
    ModuleClassification m;
    m.bound = bound;
    const MarkovDetection det = detect_markov(map, OrbitBounds::steps(bound));
    if (det.detected()) {
        m.tag = ModuleTag::MarkovTriple;
        m.partition = det.partition;
        m.presentation = ga_presentation(incidence_matrix(map, *det.partition));
        m.certificate.push_back("finite forward orbit of the partition points");
        return m;
    }
    m.certificate.push_back("Markov partition not detected (bound " + std::to_string(bound) + ")");

    if (is_unimodal(map) && map.is_surjective()) {
        m.tag = ModuleTag::Cyclic;
        m.generators.push_back(ClopenInterval::make(0, 1));
        m.certificate.push_back("unimodal and surjective");
        // Infinite-orbit endpoint a with the other partition points mapped into C.
        const auto& c = map.partition();
        for (const FieldElement& a : {c.front(), c.back()}) {
            std::vector<FieldElement> rest;
            for (const auto& x : c)
                if (x != a)
                    rest.push_back(x);
            const auto img = tau_hat_image(map, rest);
            const bool into_c = std::all_of(img.begin(), img.end(), [&](const FieldElement& y) {
                return std::binary_search(c.begin(), c.end(), y);
            });
            if (!into_c)
                continue;
            const OrbitReport rep = forward_orbit(map, {a}, OrbitBounds::steps(bound));
            if (rep.status[0].periodic())
                continue;
            m.payload = "≅ Z[t,t^-1], L* = multiplication by t";
            m.free_rank = 1;
            m.conditional = true;
            m.certificate.push_back("orbit of " + a.to_string() + " has no cycle (bound " + std::to_string(bound) + ")");
            break;
        }
        return m;
    }

    const auto inner = interior_points(map);
    if (map.is_continuous() && map.is_surjective()) {
        const FieldElement t0 = map.value(0);
        const FieldElement t1 = map.value(1);
        const auto endpoint = [](const FieldElement& y) { return y == FieldElement(0) || y == FieldElement(1); };
        if (!endpoint(t0) && !endpoint(t1)) {
            const IdocResult idoc = idoc_check(map, inner, bound);
            if (idoc.consistent()) {
                m.tag = ModuleTag::FreeRank;
                m.free_rank = map.num_branches() - 1;
                m.conditional = true;
                m.payload = "(Z[t,t^-1])^" + std::to_string(m.free_rank);
                for (std::size_t i = 0; i + 1 < map.num_branches(); ++i)
                    m.generators.push_back(ClopenInterval::make(map.partition()[i], map.partition()[i + 1]));
                m.certificate.push_back("continuous and surjective; endpoints avoid {0, 1}");
                m.certificate.push_back("turning point orbits disjoint and infinite (bound " + std::to_string(bound) +
                                        ")");
                return m;
            }
            m.certificate.push_back("turning point orbits collide: " + idoc.witness->to_string());
        }
    }

    if (is_generalized_exchange(map)) {
        const IdocResult idoc = idoc_check(map, inner, bound);
        if (idoc.consistent()) {
            m.tag = ModuleTag::ExchangeForm;
            m.free_rank = map.num_branches() - 1;
            m.conditional = true;
            m.payload = "(Z[t,t^-1])^" + std::to_string(m.free_rank) + " ⊕ Z";
            m.certificate.push_back("increasing branches with images tiling [0, 1]");
            m.certificate.push_back("interior point orbits disjoint and infinite (bound " + std::to_string(bound) +
                                    ")");
            return m;
        }
        m.certificate.push_back("interior point orbits collide: " + idoc.witness->to_string());
    }
    return m;
}

} // namespace pwm
