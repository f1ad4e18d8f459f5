#pragma once

// Structural and numeric analysis of one state, cross-checked per side.

#include <optional>
#include <vector>

#include "discordant/block_analysis.hpp"
#include "discordant/discord_numeric.hpp"
#include "discordant/state_json.hpp"

namespace discordant {

inline constexpr double kNumericZero = 1e-6;

enum class Agreement { Agree, Disagree, Inconclusive };
std::string_view to_string(Agreement a);

struct SideAnalysis {
    Side side = Side::A;
    StructuralVerdict structural;
    std::optional<StructuralVerdict> closed_form;
    std::optional<DiscordResult> numeric;
    Agreement agreement = Agreement::Agree;
};

struct AnalysisReport {
    std::string kind;
    int d = 0;
    double tol = kStructuralTol;
    bool numeric_heuristic = false;
    std::vector<SideAnalysis> sides;

    bool agreement() const;
};

// Numeric D is an upper bound on the true discord. With exhaustive search
// (d < 5) a numeric zero is D <= kNumericZero and must match the structural
// verdict. For heuristic d only a numeric zero against a structural nonzero
// counts as disagreement; the converse is reported as inconclusive.
Agreement compare(const StructuralVerdict& structural, const DiscordResult& numeric, int d);

// Closed-form verdicts are added for prime d: the Bell criterion for Bell
// documents and the circulant criterion for any other circulant state. A
// closed-form verdict that contradicts the general one is a disagreement.
AnalysisReport analyze_state(const StateDocument& doc, const std::vector<Side>& sides, double tol,
                             const std::optional<OptimizerConfig>& numeric);

Json to_json(const Witness& w);
Json to_json(const StructuralVerdict& v);
Json to_json(const DiscordResult& r);
Json to_json(const AnalysisReport& report);

}  // namespace discordant
