// Dumps the oracle test cases as JSON for the offline convex-solver script.
// Usage: dump_oracle_cases > cases.json
#include <cstdio>
#include <vector>

#include "json.hpp"
#include "oracle_cases.hpp"

int main() {
    using nlohmann::ordered_json;
    ordered_json out = ordered_json::array();
    for (int k = 0; k < lassovar_testing::kOracleCases; ++k) {
        const auto c = lassovar_testing::oracle_case(k);
        ordered_json j;
        j["case"] = k;
        j["q_effective"] = c.layout.q_effective;
        j["p"] = c.layout.p;
        j["lambda"] = c.lambda;
        ordered_json rows = ordered_json::array();
        for (Eigen::Index r = 0; r < c.X.rows(); ++r)
            rows.push_back(std::vector<double>(c.X.row(r).begin(), c.X.row(r).end()));
        j["X"] = std::move(rows);
        j["y"] = std::vector<double>(c.y.begin(), c.y.end());
        out.push_back(std::move(j));
    }
    std::puts(out.dump().c_str());
    return 0;
}
