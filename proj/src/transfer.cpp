#include "pwm/transfer.hpp"

#include <algorithm>
#include <map>

#include "pwm/errors.hpp"
#include "pwm/markov.hpp"

namespace pwm {

StepFunction::StepFunction(std::vector<FieldElement> cuts, std::vector<Integer> values)
    : cuts_(std::move(cuts)), values_(std::move(values)) {
    canonicalize();
}

void StepFunction::canonicalize() {
    std::vector<FieldElement> cuts;
    std::vector<Integer> values{values_[0]};
    for (std::size_t k = 0; k < cuts_.size(); ++k) {
        if (values_[k + 1] == values.back())
            continue;
        cuts.push_back(std::move(cuts_[k]));
        values.push_back(values_[k + 1]);
    }
    cuts_ = std::move(cuts);
    values_ = std::move(values);
}

StepFunction StepFunction::constant(const Integer& n) { return StepFunction({}, {n}); }

StepFunction StepFunction::indicator(const FieldElement& a, const FieldElement& b) {
    return from_terms({{a, b, Integer(1)}});
}

StepFunction StepFunction::from_terms(const std::vector<StepTerm>& terms) {
    std::map<FieldElement, Integer> delta{{FieldElement(0), Integer(0)}, {FieldElement(1), Integer(0)}};
    for (const auto& t : terms) {
        for (const auto* x : {&t.lo, &t.hi})
            if (*x < FieldElement(0) || *x > FieldElement(1))
                throw OutOfDomain("step function endpoint " + x->to_string() + " is outside [0, 1]");
        if (t.lo == t.hi || t.coefficient == 0)
            continue;
        const auto& lo = min(t.lo, t.hi);
        const auto& hi = max(t.lo, t.hi);
        delta[lo] += t.coefficient;
        delta[hi] -= t.coefficient;
    }
    std::vector<FieldElement> cuts;
    std::vector<Integer> values;
    Integer run = 0;
    for (const auto& [x, d] : delta) {
        if (x == FieldElement(1))
            break;
        run += d;
        if (x != FieldElement(0))
            cuts.push_back(x);
        values.push_back(run);
    }
    return StepFunction(std::move(cuts), std::move(values));
}

StepFunction StepFunction::from_vector(const std::vector<FieldElement>& breakpoints, const IntVector& v) {
    if (breakpoints.size() != v.size() + 1)
        throw ValidationError("vector length does not match the number of intervals");
    std::vector<StepTerm> terms;
    for (std::size_t j = 0; j < v.size(); ++j)
        terms.push_back({breakpoints[j], breakpoints[j + 1], v[j]});
    return from_terms(terms);
}

std::vector<FieldElement> StepFunction::breakpoints() const {
    std::vector<FieldElement> b{0};
    b.insert(b.end(), cuts_.begin(), cuts_.end());
    b.push_back(1);
    return b;
}

Integer StepFunction::value_at(const XPoint& p) const {
    const auto it = std::lower_bound(cuts_.begin(), cuts_.end(), p.coordinate);
    std::size_t k = static_cast<std::size_t>(it - cuts_.begin());
    if (it != cuts_.end() && *it == p.coordinate && p.side == Side::Plus)
        ++k;
    return values_[k];
}

bool StepFunction::nonnegative() const {
    return std::all_of(values_.begin(), values_.end(), [](const Integer& v) { return sgn(v) >= 0; });
}

bool StepFunction::nonpositive() const {
    return std::all_of(values_.begin(), values_.end(), [](const Integer& v) { return sgn(v) <= 0; });
}

bool StepFunction::cuts_within(const std::vector<FieldElement>& points) const {
    return std::all_of(cuts_.begin(), cuts_.end(),
                       [&](const FieldElement& x) { return std::binary_search(points.begin(), points.end(), x); });
}

IntVector StepFunction::coefficients(const std::vector<FieldElement>& b) const {
    if (!cuts_within(b))
        throw ValidationError("step function is not constant on the given intervals");
    IntVector v;
    for (std::size_t j = 0; j + 1 < b.size(); ++j)
        v.push_back(value_at(XPoint::plus(b[j])));
    return v;
}

std::vector<StepTerm> StepFunction::terms() const {
    std::vector<StepTerm> out;
    const auto b = breakpoints();
    for (std::size_t k = 0; k < values_.size(); ++k)
        if (values_[k] != 0)
            out.push_back({b[k], b[k + 1], values_[k]});
    return out;
}

std::string StepFunction::to_string() const {
    const auto ts = terms();
    if (ts.empty())
        return "0";
    std::string s;
    for (const auto& t : ts) {
        const bool neg = sgn(t.coefficient) < 0;
        const Integer mag = abs(t.coefficient);
        if (!s.empty())
            s += neg ? " - " : " + ";
        else if (neg)
            s += "-";
        if (mag != 1)
            s += mag.get_str() + "*";
        s += "I(" + t.lo.to_string() + ", " + t.hi.to_string() + ")";
    }
    return s;
}

StepFunction StepFunction::operator-() const {
    StepFunction r = *this;
    for (auto& v : r.values_)
        v = -v;
    return r;
}

StepFunction operator+(const StepFunction& f, const StepFunction& g) {
    auto terms = f.terms();
    const auto gt = g.terms();
    terms.insert(terms.end(), gt.begin(), gt.end());
    return StepFunction::from_terms(terms);
}

StepFunction operator*(const Integer& n, const StepFunction& f) {
    StepFunction r = f;
    for (auto& v : r.values_)
        v *= n;
    if (n == 0)
        return StepFunction{};
    return r;
}

StepFunction transfer_apply(const PwmMap& map, const StepFunction& f) {
    std::vector<StepTerm> out;
    for (const auto& t : f.terms()) {
        for (std::size_t i = 0; i < map.num_branches(); ++i) {
            const Interval d = map.domain(i);
            const FieldElement lo = max(t.lo, d.lo);
            const FieldElement hi = min(t.hi, d.hi);
            if (!(lo < hi))
                continue;
            const ClopenInterval img = interval_image(map, i, ClopenInterval::make(lo, hi));
            out.push_back({img.lo, img.hi, t.coefficient});
        }
    }
    return StepFunction::from_terms(out);
}

StepFunction transfer_power(const PwmMap& map, StepFunction f, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k)
        f = transfer_apply(map, f);
    return f;
}

namespace {

RatVector to_rational(const IntVector& v) { return RatVector(v.begin(), v.end()); }

std::optional<MarkovPartition> detect_for(const PwmMap& map, std::size_t bound) {
    return detect_markov(map, OrbitBounds::steps(std::max<std::size_t>(bound, 256))).partition;
}

} // namespace

Decision equivalent(const PwmMap& map, const StepFunction& f, const StepFunction& g, std::size_t bound,
                    const std::optional<MarkovPartition>& markov) {
    std::optional<RatMatrix> a;
    if (markov)
        a = incidence_matrix(map, *markov).cast<Rational>();
    StepFunction h = f - g;
    for (std::size_t k = 0; k <= bound; ++k) {
        if (h.is_zero())
            return {TriState::yes("iterates agree after " + std::to_string(k) + " steps"), k};
        if (a && h.cuts_within(markov->endpoints) && !eventually_zero(*a, to_rational(h.coefficients(markov->endpoints))))
            return {TriState::no("Markov module vectors differ after " + std::to_string(k) + " steps"), std::nullopt};
        if (k < bound)
            h = transfer_apply(map, h);
    }
    return {TriState::unknown("iterates differ up to bound " + std::to_string(bound)), std::nullopt};
}

Decision equivalent(const PwmMap& map, const StepFunction& f, const StepFunction& g, std::size_t bound) {
    return equivalent(map, f, g, bound, detect_for(map, bound));
}

Decision leq(const PwmMap& map, const StepFunction& f, const StepFunction& g, std::size_t bound,
             const std::optional<MarkovPartition>& markov) {
    std::optional<RatMatrix> a;
    if (markov)
        a = incidence_matrix(map, *markov).cast<Rational>();
    StepFunction h = g - f;
    for (std::size_t k = 0; k <= bound; ++k) {
        if (h.nonnegative())
            return {TriState::yes("difference nonnegative after " + std::to_string(k) + " steps"), k};
        if (a && h.cuts_within(markov->endpoints)) {
            std::size_t m = 0;
            TriState t = eventually_nonnegative(*a, to_rational(h.coefficients(markov->endpoints)), bound - k, &m);
            if (t.is_true())
                return {t, k + m};
            return {t, std::nullopt};
        }
        if (k < bound)
            h = transfer_apply(map, h);
    }
    return {TriState::unknown("difference not nonnegative up to bound " + std::to_string(bound)), std::nullopt};
}

Decision leq(const PwmMap& map, const StepFunction& f, const StepFunction& g, std::size_t bound) {
    return leq(map, f, g, bound, detect_for(map, bound));
}

std::vector<FieldElement> discontinuity_set(const StepFunction& f) {
    std::vector<FieldElement> out;
    if (f.values().front() != 0)
        out.push_back(0);
    out.insert(out.end(), f.cuts().begin(), f.cuts().end());
    if (f.values().back() != 0)
        out.push_back(1);
    return out;
}

std::vector<ClopenInterval> generator_intervals(const PwmMap& map, std::size_t bound) {
    if (!eventual_range(map, bound).stabilized_at)
        throw NotEventuallySurjective("image sequence did not stabilize (bound " + std::to_string(bound) + ")");
    const auto& a = map.partition();
    const auto img = tau_hat_image(map, a);
    std::vector<FieldElement> pts = a;
    pts.push_back(img.front());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<ClopenInterval> out;
    auto add = [&](ClopenInterval iv) {
        if (!iv.empty() && std::find(out.begin(), out.end(), iv) == out.end())
            out.push_back(std::move(iv));
    };
    for (std::size_t k = 0; k + 1 < pts.size(); ++k)
        add(ClopenInterval::make(pts[k], pts[k + 1]));
    for (std::size_t i = 1; i + 1 < a.size(); ++i)
        add(ClopenInterval::make(map.branches()[i - 1](a[i]), map.branches()[i](a[i])));
    return out;
}

std::vector<StepFunction> generators(const PwmMap& map, std::size_t bound) {
    std::vector<StepFunction> out;
    for (const auto& iv : generator_intervals(map, bound))
        out.push_back(StepFunction::indicator(iv.lo, iv.hi));
    return out;
}

} // namespace pwm
