// dimgroup: invariants of piecewise monotonic interval maps.
//
// Exit codes: 0 success, 2 invalid input, 3 an Unknown verdict under --strict,
// 1 anything else.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pwm/bratteli.hpp"
#include "pwm/errors.hpp"
#include "pwm/map_spec.hpp"
#include "pwm/markov.hpp"
#include "pwm/report.hpp"

namespace {

struct Args {
    std::string preset;
    std::string example;
    std::string map_file;
    std::optional<std::size_t> bound;
    std::optional<std::size_t> levels;
    std::string format = "text";
    bool json = false;
    bool dot = false;
    bool strict = false;
    unsigned threads = 1;
    std::string output;
    std::vector<std::string> terms;
    std::size_t steps = 1;
};

pwm::StepTerm parse_term(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ','))
        parts.push_back(cur);
    if (parts.size() != 3)
        throw pwm::ValidationError("--term expects lo,hi,coef, got '" + s + "'");
    pwm::Integer coef;
    if (coef.set_str(parts[2], 10) != 0)
        throw pwm::ValidationError("--term coefficient must be an integer, got '" + parts[2] + "'");
    return {pwm::FieldElement::parse(parts[0]), pwm::FieldElement::parse(parts[1]), coef};
}

pwm::MapSpec load(const Args& a) {
    const int given = !a.preset.empty() + !a.example.empty() + !a.map_file.empty();
    if (given != 1)
        throw pwm::ValidationError("give exactly one of --preset, --example, --map");
    if (!a.preset.empty())
        return pwm::parse_preset(a.preset);
    if (!a.example.empty())
        return pwm::named_example(a.example);
    return pwm::load_map_spec(a.map_file);
}

int run(const std::string& command, const Args& a) {
    const pwm::MapSpec spec = load(a);
    pwm::ReportOptions opts;
    opts.bound = a.bound;
    opts.levels = a.levels ? *a.levels : spec.levels.value_or(8);
    opts.threads = a.threads;
    opts.max_points = pwm::OrbitBounds::from_environment().max_points;
    opts.steps = a.steps;
    for (const auto& t : a.terms)
        opts.terms.push_back(parse_term(t));

    std::string format = a.format;
    if (a.json)
        format = "json";
    if (a.dot)
        format = "dot";

    std::string out;
    bool unknown = false;
    if (format == "dot") {
        if (command == "bratteli") {
            out = pwm::to_dot(pwm::build_diagram(spec.map, opts.levels));
        } else if (command == "markov") {
            const auto b = pwm::orbit_bounds(spec, opts);
            const auto mp = spec.markov_partition ? pwm::validate_markov_partition(spec.map, *spec.markov_partition)
                                                  : pwm::detect_markov(spec.map, b).partition;
            if (!mp)
                throw pwm::BoundExceeded("no Markov partition detected", b.max_steps);
            std::vector<std::string> labels;
            for (std::size_t j = 0; j < mp->size(); ++j)
                labels.push_back("[" + mp->endpoints[j].to_string() + ", " + mp->endpoints[j + 1].to_string() + "]");
            out = pwm::incidence_dot(pwm::incidence_matrix(spec.map, *mp), labels);
        } else {
            throw pwm::ValidationError("DOT output is available for markov and bratteli only");
        }
    } else {
        const nlohmann::json report = pwm::build_report(command, spec, opts);
        unknown = pwm::has_unknown(report);
        if (format == "json")
            out = report.dump(2) + "\n";
        else if (format == "text")
            out = pwm::render_text(report);
        else
            throw pwm::ValidationError("unknown format '" + format + "' (text, json, dot)");
    }

    if (a.output.empty()) {
        std::cout << out;
    } else {
        std::ofstream f(a.output);
        if (!f)
            throw pwm::ValidationError("cannot write '" + a.output + "'");
        f << out;
    }
    return a.strict && unknown ? 3 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariants of piecewise monotonic interval maps"};
    app.require_subcommand(1);
    Args a;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"analyze", "full pipeline: orbit, Markov structure, verdicts, dimension group"},
        {"orbit", "forward orbit of the partition points"},
        {"markov", "Markov partition, incidence matrix and dynamics verdicts"},
        {"transfer", "iterate the transfer operator on a step function"},
        {"dimgroup", "dimension group presentation, simplicity and classification"},
        {"classify", "module classification"},
        {"bratteli", "leveled diagram and K0 connecting matrices"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--preset", a.preset, "tent:S, restricted_tent:S|sqrt2, interval_exchange:golden|L..:P..");
        sub->add_option("--example", a.example, "built-in example name");
        sub->add_option("--map", a.map_file, "JSON map description");
        sub->add_option("--bound", a.bound, "search bound for orbits and orbit conditions");
        sub->add_option("--levels", a.levels, "diagram levels (default 8)");
        sub->add_option("--format", a.format, "text, json or dot")->capture_default_str();
        sub->add_flag("--json", a.json, "same as --format json");
        sub->add_flag("--dot", a.dot, "same as --format dot");
        sub->add_flag("--strict", a.strict, "exit 3 when a verdict is Unknown");
        sub->add_option("--threads", a.threads, "worker threads for orbit expansion")->capture_default_str();
        sub->add_option("-o,--output", a.output, "write to file instead of stdout");
        sub->add_option("--term", a.terms, "transfer input term lo,hi,coef (repeatable)");
        sub->add_option("--steps", a.steps, "transfer iterations")->capture_default_str();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, a);
    } catch (const pwm::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pwm::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pwm::MixedFields& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
