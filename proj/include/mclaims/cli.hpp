#ifndef MCLAIMS_CLI_HPP
#define MCLAIMS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mclaims/inversion.hpp"
#include "mclaims/model.hpp"
#include "mclaims/verify.hpp"

namespace mclaims {

inline constexpr const char* tool_version = "0.3.0";

/// Exit code for a verify run in which an exact-constant bound failed.
inline constexpr int exit_verification_failed = 1;

struct RateJob {
    std::string regime = "death-dominated";
    std::string policy = "fixed";
    double c = 1.0;
    RawParams base{0.5, 0.1, 0.04, 3, 0.9};
    std::vector<int> n_values{8, 16, 32, 64, 128};
};

/// Fully resolved settings of one run. Defaults, then the config file, then flags.
struct RunConfig {
    std::string command;
    RawParams params;
    int n = 16;
    ApproxVariant variant = ApproxVariant::GV_E;
    std::string norm = "all";         // compare: local | kolmogorov | tv | all
    std::string engine = "dp";        // exact: dp | enum | sample
    std::int64_t samples = 100000;    // exact --engine sample
    std::uint64_t seed = 1;
    std::string format = "csv";       // csv | json
    std::string out;                  // empty = stdout
    std::string dump_transform;       // approx: emit this transform on the grid instead
    std::string suite = "exact-constant";  // verify/sweep: exact-constant | constant-fit | all
    std::vector<std::string> lemmas;  // verify: explicit ids override the suite
    RateJob rates;                    // rates command
    std::vector<RateJob> sweep_rates; // extra rows for sweep
    BoxSpec box = default_box();
    CheckOptions check;
    VerifyConfig verify;
};

nlohmann::json to_json(const RunConfig& c);
/// Overlays the keys present in `j` on top of `c`.
void apply_json(const nlohmann::json& j, RunConfig& c);

/// Entry point of the `mclaims` executable; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mclaims

#endif
