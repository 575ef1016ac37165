#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "pwm/map_spec.hpp"
#include "pwm/report.hpp"

using namespace pwm;

namespace {

std::string golden_path(const std::string& name) { return std::string(TEST_SOURCE_DIR) + "/golden/" + name + ".json"; }

std::string render(const MapSpec& spec) {
    ReportOptions opts;
    opts.levels = 4;
    return build_report("analyze", spec, opts).dump(2) + "\n";
}

std::string without_version(const std::string& text) {
    static const std::regex version_line(R"(\n\s*"version": "[^"]*",?)");
    return std::regex_replace(text, version_line, "");
}

} // namespace

TEST_CASE("analyze reports match the golden files") {
    const bool update = std::getenv("DIMGROUP_UPDATE_GOLDEN") != nullptr;
    for (const auto& name : example_names()) {
        INFO(name);
        const std::string got = render(parse_map_spec(R"({"example": ")" + name + R"("})"));
        CHECK(got == render(named_example(name)));
        if (update) {
            std::ofstream(golden_path(name)) << got;
            continue;
        }
        std::ifstream in(golden_path(name));
        REQUIRE_MESSAGE(in.good(), "missing golden file " << golden_path(name));
        std::stringstream want;
        want << in.rdbuf();
        if (without_version(got) != without_version(want.str())) {
            const auto diff = nlohmann::json::diff(nlohmann::json::parse(want.str()), nlohmann::json::parse(got));
            FAIL_CHECK("report differs from golden file: " << diff.dump());
        }
    }
}
