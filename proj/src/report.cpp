#include "pwm/report.hpp"

#include <algorithm>
#include <sstream>

#include "pwm/bratteli.hpp"
#include "pwm/dimension_group.hpp"
#include "pwm/errors.hpp"
#include "pwm/markov.hpp"

namespace pwm {

using nlohmann::json;

namespace {

json str(const FieldElement& x) { return x.to_string(); }

json strs(const std::vector<FieldElement>& xs) {
    json a = json::array();
    for (const auto& x : xs)
        a.push_back(x.to_string());
    return a;
}

json integer(const Integer& z) {
    if (z.fits_slong_p())
        return z.get_si();
    return z.get_str();
}

json int_matrix(const IntMatrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(integer(m(i, j)));
        a.push_back(std::move(row));
    }
    return a;
}

json rat_vector(const RatVector& v) {
    json a = json::array();
    for (const auto& x : v)
        a.push_back(x.get_str());
    return a;
}

json rat_matrix(const RatMatrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        a.push_back(rat_vector(m.row(i)));
    return a;
}

json verdict(const TriState& t) { return {{"value", t.to_string()}, {"reason", t.reason}}; }

json interval_union(const IntervalUnion& u) {
    json a = json::array();
    for (const auto& p : u.parts())
        a.push_back(json::array({p.lo.to_string(), p.hi.to_string()}));
    return a;
}

json clopen_list(const std::vector<ClopenInterval>& ivs) {
    json a = json::array();
    for (const auto& iv : ivs)
        a.push_back(iv.to_string());
    return a;
}

std::optional<MarkovPartition> markov_partition_of(const MapSpec& spec, const OrbitBounds& b) {
    if (spec.markov_partition)
        return validate_markov_partition(spec.map, *spec.markov_partition);
    return detect_markov(spec.map, b).partition;
}

json presentation_json(const GroupPresentation& p) {
    json j;
    j["rank"] = p.rank;
    j["ambient_rank"] = p.n;
    j["basis"] = rat_matrix(p.basis);
    j["action"] = rat_matrix(p.action);
    j["stabilized_at"] = p.stabilized_at;
    j["characteristic_polynomial"] = rat_vector(characteristic_polynomial(p.action));
    j["order_unit"] = rat_vector(ga_coordinates(p, p.order_unit).first);
    j["order_unit_level"] = ga_coordinates(p, p.order_unit).second;
    return j;
}

json classification_json(const ModuleClassification& m) {
    json j;
    j["tag"] = to_string(m.tag);
    j["summary"] = m.summary();
    j["conditional"] = m.conditional;
    j["bound"] = m.bound;
    if (m.tag == ModuleTag::FreeRank || m.tag == ModuleTag::ExchangeForm || !m.payload.empty())
        j["free_rank"] = m.free_rank;
    j["payload"] = m.payload;
    j["generators"] = clopen_list(m.generators);
    j["certificate"] = m.certificate;
    if (m.presentation)
        j["presentation"] = presentation_json(*m.presentation);
    return j;
}

} // namespace

OrbitBounds orbit_bounds(const MapSpec& spec, const ReportOptions& opts) {
    OrbitBounds b;
    if (opts.bound)
        b.max_steps = *opts.bound;
    else if (spec.bound)
        b.max_steps = *spec.bound;
    b.max_points = opts.max_points;
    b.threads = opts.threads;
    return b;
}

std::size_t condition_bound(const MapSpec& spec, const ReportOptions& opts) {
    if (opts.bound)
        return *opts.bound;
    return spec.bound.value_or(50);
}

json map_json(const PwmMap& map) {
    json j;
    j["field"] = map.field().to_string();
    j["partition"] = strs(map.partition());
    j["branches"] = json::array();
    for (const auto& b : map.branches())
        j["branches"].push_back({{"slope", str(b.slope)}, {"intercept", str(b.intercept)}});
    j["continuous"] = map.is_continuous();
    j["surjective"] = map.is_surjective();
    j["non_maximal_points"] = strs(map.non_maximal_points());
    return j;
}

json orbit_report(const MapSpec& spec, const ReportOptions& opts) {
    const OrbitBounds b = orbit_bounds(spec, opts);
    const OrbitReport rep = forward_orbit(spec.map, spec.map.partition(), b);
    json j;
    j["bound"] = b.max_steps;
    j["exhausted"] = rep.exhausted;
    j["points"] = strs(rep.points);
    j["seeds"] = json::array();
    for (std::size_t i = 0; i < rep.seeds.size(); ++i) {
        const SeedStatus& s = rep.status[i];
        json sj;
        sj["seed"] = rep.seeds[i].to_string();
        if (s.periodic()) {
            sj["status"] = "eventually_periodic";
            sj["preperiod"] = s.preperiod;
            sj["period"] = s.period;
        } else {
            sj["status"] = "open_at_bound";
            sj["bound"] = s.bound;
        }
        json levels = json::array();
        for (const auto& l : rep.levels[i])
            levels.push_back(strs(l));
        sj["levels"] = std::move(levels);
        j["seeds"].push_back(std::move(sj));
    }
    return j;
}

json markov_report(const MapSpec& spec, const ReportOptions& opts) {
    const OrbitBounds b = orbit_bounds(spec, opts);
    json j;
    j["bound"] = b.max_steps;
    const auto mp = markov_partition_of(spec, b);
    DynamicsVerdict v;
    if (mp) {
        v = markov_verdict(spec.map, *mp);
        const GraphClass g = graph_classify(*v.matrix);
        j["detected"] = true;
        j["explicit"] = spec.markov_partition.has_value();
        j["partition"] = strs(mp->endpoints);
        j["matrix"] = int_matrix(*v.matrix);
        j["graph"] = {{"irreducible", g.irreducible},
                      {"primitive", g.primitive},
                      {"permutation", g.permutation},
                      {"period", g.period}};
        j["condition_L"] = condition_L(*v.matrix);
    } else {
        v = dynamics_verdict(spec.map, b);
        j["detected"] = false;
    }
    j["verdicts"] = {{"exact", verdict(v.exact)},
                     {"transitive", verdict(v.transitive)},
                     {"conjugate_to_sft", verdict(v.conjugate_to_sft)},
                     {"homtervals", verdict(v.homtervals)}};
    return j;
}

json transfer_report(const MapSpec& spec, const ReportOptions& opts) {
    StepFunction f = opts.terms.empty() ? StepFunction::constant(1) : StepFunction::from_terms(opts.terms);
    json j;
    j["steps"] = opts.steps;
    j["iterates"] = json::array();
    for (std::size_t k = 0; k <= opts.steps; ++k) {
        j["iterates"].push_back({{"step", k},
                                 {"function", f.to_string()},
                                 {"cuts", strs(f.cuts())},
                                 {"values", [&] {
                                      json a = json::array();
                                      for (const auto& v : f.values())
                                          a.push_back(integer(v));
                                      return a;
                                  }()},
                                 {"discontinuities", strs(discontinuity_set(f))}});
        if (k < opts.steps)
            f = transfer_apply(spec.map, f);
    }
    return j;
}

json dimgroup_report(const MapSpec& spec, const ReportOptions& opts) {
    const OrbitBounds b = orbit_bounds(spec, opts);
    const std::size_t cb = condition_bound(spec, opts);
    json j;
    const auto mp = markov_partition_of(spec, b);
    if (mp)
        j["presentation"] = presentation_json(ga_presentation(incidence_matrix(spec.map, *mp)));
    else
        j["presentation"] = nullptr;
    j["simple"] = verdict(is_simple(spec.map, b));
    const EventualRange er = eventual_range(spec.map);
    j["eventual_range"] = {{"range", interval_union(er.eventual())},
                           {"stabilized_at", er.stabilized_at ? json(*er.stabilized_at) : json(nullptr)}};
    try {
        j["generators"] = clopen_list(generator_intervals(spec.map));
    } catch (const NotEventuallySurjective&) {
        j["generators"] = nullptr;
    }
    j["classification"] = classification_json(classify_module(spec.map, cb));
    return j;
}

json classify_report(const MapSpec& spec, const ReportOptions& opts) {
    return classification_json(classify_module(spec.map, condition_bound(spec, opts)));
}

json bratteli_report(const MapSpec& spec, const ReportOptions& opts) {
    const BratteliDiagram d = build_diagram(spec.map, opts.levels);
    const K0Sequence k0 = k0_sequence(d);
    json j = json::parse(to_json(d));
    j.erase("version");
    j["c_n"] = json::array();
    for (const auto& c : c_n_sets(spec.map, opts.levels))
        j["c_n"].push_back(strs(c));
    j["connecting"] = json::array();
    for (const auto& m : k0.connecting)
        j["connecting"].push_back(int_matrix(m));
    return j;
}

json analyze_report(const MapSpec& spec, const ReportOptions& opts) {
    json j;
    j["orbit"] = orbit_report(spec, opts);
    j["markov"] = markov_report(spec, opts);
    j["dimgroup"] = dimgroup_report(spec, opts);
    return j;
}

json build_report(const std::string& command, const MapSpec& spec, const ReportOptions& opts) {
    json body;
    if (command == "analyze")
        body = analyze_report(spec, opts);
    else if (command == "orbit")
        body = orbit_report(spec, opts);
    else if (command == "markov")
        body = markov_report(spec, opts);
    else if (command == "transfer")
        body = transfer_report(spec, opts);
    else if (command == "dimgroup")
        body = dimgroup_report(spec, opts);
    else if (command == "classify")
        body = classify_report(spec, opts);
    else if (command == "bratteli")
        body = bratteli_report(spec, opts);
    else
        throw ValidationError("unknown command '" + command + "'");
    json j;
    j["version"] = report_version;
    j["command"] = command;
    j["name"] = spec.name;
    j["map"] = map_json(spec.map);
    j["result"] = std::move(body);
    return j;
}

namespace {

bool is_scalar(const json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const json& j) {
    if (j.is_string())
        return j.get<std::string>();
    if (j.is_null())
        return "none";
    return j.dump();
}

bool is_matrix(const json& j) {
    if (!j.is_array() || j.empty())
        return false;
    for (const auto& row : j) {
        if (!row.is_array() || row.empty())
            return false;
        for (const auto& x : row)
            if (!is_scalar(x))
                return false;
    }
    return true;
}

bool is_verdict(const json& j) { return j.is_object() && j.size() == 2 && j.contains("value") && j.contains("reason"); }

void render(std::ostream& os, const json& j, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    for (const auto& [key, val] : j.items()) {
        os << pad << key << ":";
        if (is_verdict(val)) {
            os << " " << scalar_text(val["value"]);
            if (!val["reason"].get<std::string>().empty())
                os << " (" << scalar_text(val["reason"]) << ")";
            os << "\n";
        } else if (is_scalar(val)) {
            os << " " << scalar_text(val) << "\n";
        } else if (is_matrix(val)) {
            os << "\n";
            for (const auto& row : val) {
                os << pad << "  ";
                bool first = true;
                for (const auto& x : row) {
                    os << (first ? "" : " ") << scalar_text(x);
                    first = false;
                }
                os << "\n";
            }
        } else if (val.is_array()) {
            const bool flat = std::all_of(val.begin(), val.end(), [](const json& x) { return is_scalar(x); });
            if (flat) {
                os << " [";
                bool first = true;
                for (const auto& x : val) {
                    os << (first ? "" : ", ") << scalar_text(x);
                    first = false;
                }
                os << "]\n";
            } else {
                os << "\n";
                for (const auto& x : val) {
                    os << pad << "  -\n";
                    if (x.is_object())
                        render(os, x, depth + 2);
                    else
                        render(os, json{{"item", x}}, depth + 2);
                }
            }
        } else {
            os << "\n";
            render(os, val, depth + 1);
        }
    }
}

} // namespace

std::string render_text(const json& report) {
    std::ostringstream os;
    render(os, report, 0);
    return os.str();
}

bool has_unknown(const json& report) {
    if (is_verdict(report))
        return report["value"] == "unknown";
    if (report.is_object()) {
        if (report.contains("tag") && report["tag"] == "Unknown")
            return true;
        for (const auto& [k, v] : report.items())
            if (has_unknown(v))
                return true;
    } else if (report.is_array()) {
        for (const auto& v : report)
            if (has_unknown(v))
                return true;
    }
    return false;
}

} // namespace pwm
