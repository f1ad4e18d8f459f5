#include "discordant/analysis.hpp"

#include <algorithm>

namespace discordant {

std::string_view to_string(Agreement a) {
    switch (a) {
        case Agreement::Agree: return "agree";
        case Agreement::Disagree: return "disagree";
        case Agreement::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

bool AnalysisReport::agreement() const {
    return std::none_of(sides.begin(), sides.end(),
                        [](const SideAnalysis& s) { return s.agreement == Agreement::Disagree; });
}

Agreement compare(const StructuralVerdict& structural, const DiscordResult& numeric, int d) {
    const bool numeric_zero = numeric.discord <= kNumericZero;
    if (numeric_zero == structural.zero_discord) return Agreement::Agree;
    if (numeric_is_heuristic(d) && structural.zero_discord) return Agreement::Inconclusive;
    return Agreement::Disagree;
}

AnalysisReport analyze_state(const StateDocument& doc, const std::vector<Side>& sides, double tol,
                             const std::optional<OptimizerConfig>& numeric) {
    AnalysisReport report;
    report.kind = doc.kind;
    report.d = doc.d;
    report.tol = tol;
    report.numeric_heuristic = numeric.has_value() && numeric_is_heuristic(doc.d);

    const bool prime = is_prime(doc.d);
    for (Side side : sides) {
        SideAnalysis s;
        s.side = side;
        s.structural = structural_discord_zero(doc.rho, doc.d, side, tol);
        if (prime && doc.bell) {
            s.closed_form = bell_zero_discord_check(*doc.bell, tol);
            s.closed_form->side = side;
        } else if (prime && doc.circulant) {
            s.closed_form = circulant_theorem_check(*doc.circulant, side, tol);
        }
        if (s.closed_form && s.closed_form->zero_discord != s.structural.zero_discord)
            s.agreement = Agreement::Disagree;
        if (numeric) {
            s.numeric = discord(doc.rho, doc.d, side, *numeric);
            const Agreement a = compare(s.structural, *s.numeric, doc.d);
            if (s.agreement == Agreement::Agree) s.agreement = a;
        }
        report.sides.push_back(std::move(s));
    }
    return report;
}

Json to_json(const Witness& w) {
    return {{"condition", w.condition},
            {"indices", Json(std::vector<int>(w.indices.begin(), w.indices.end()))},
            {"magnitude", w.magnitude}};
}

Json to_json(const StructuralVerdict& v) {
    Json j = {{"side", std::string(to_string(v.side))},
              {"zero_discord", v.zero_discord},
              {"criterion", std::string(to_string(v.criterion))}};
    j["alpha"] = v.alpha ? Json(*v.alpha) : Json(nullptr);
    j["phases"] = v.fitted_phases ? Json(v.fitted_phases->values()) : Json(nullptr);
    j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
    if (!v.pi.empty()) j["pi"] = v.pi;
    return j;
}

Json to_json(const DiscordResult& r) {
    return {{"I", r.mutual_information},
            {"C", r.classical_correlation},
            {"D", r.discord},
            {"side", std::string(to_string(r.side))},
            {"basis", complex_matrix_to_json(r.best_measurement.vectors())},
            {"starts_converged", r.starts_converged}};
}

Json to_json(const AnalysisReport& report) {
    Json sides = Json::array();
    for (const auto& s : report.sides) {
        Json j = {{"side", std::string(to_string(s.side))},
                  {"structural", to_json(s.structural)},
                  {"agreement", std::string(to_string(s.agreement))}};
        j["closed_form"] = s.closed_form ? to_json(*s.closed_form) : Json(nullptr);
        j["numeric"] = s.numeric ? to_json(*s.numeric) : Json(nullptr);
        sides.push_back(std::move(j));
    }
    return {{"kind", report.kind},
            {"d", report.d},
            {"tol", report.tol},
            {"numeric_zero_tol", kNumericZero},
            {"numeric_heuristic", report.numeric_heuristic},
            {"sides", std::move(sides)},
            {"agreement", report.agreement()}};
}

}  // namespace discordant
