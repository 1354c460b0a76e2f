#ifndef G2CM_PIPELINE_HPP
#define G2CM_PIPELINE_HPP

#include <json.hpp>

#include "g2cm/analytic.hpp"
#include "g2cm/fieldenum.hpp"
#include "g2cm/heights.hpp"

namespace g2cm {

struct PipelineConfig {
    BigInt disc_bound = 4000000;
    BigInt disc_F = 5;
    mpfr_prec_t prec = 192;
    mpfr_prec_t prec_cap = 4096;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string cache_dir;  // empty: no caching
    bool with_inequalities = true;
    bool with_analytic = true;
    bool with_heights = true;
    bool with_invariants = true;
    std::string code_version = "g2cm-1";
};

/// One field's full record. Everything exact is serialized as decimal strings;
/// balls as {mid, rad}.
nlohmann::json process_field(const EnumeratedField& ef, const PipelineConfig& cfg);

struct PipelineResult {
    std::vector<nlohmann::json> dossiers;
    nlohmann::json summary;
    int exit_code = 0;  // 0 pass, 2 undecided somewhere, 3 certified violation
};

PipelineResult run_pipeline(const PipelineConfig& cfg);

/// Serialization helpers shared with the report module.
nlohmann::json ball_json(const RealBall& b);
nlohmann::json cball_json(const ComplexBall& b);

} // namespace g2cm

#endif
